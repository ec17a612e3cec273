"""Exact linear algebra over prime fields.

Vectors are plain tuples of ints in ``[0, p)``.  Subspaces are stored in
reduced row-echelon form, so two subspaces are equal as sets exactly when
their ``basis`` tuples are equal.

The batched routines at the bottom work on stacks of matrices with numpy and
are used by the exhaustive ideal oracles.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Iterator, Sequence

import numpy as np

Vector = tuple[int, ...]

MAX_MODULUS = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class ScalarField:
    """The prime field F_p."""

    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not 2 <= self.p < MAX_MODULUS:
            raise ValueError(f"modulus must be an integer in [2, 2^16), got {self.p!r}")
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    def __call__(self, x: int) -> int:
        return x % self.p

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(x, self.p - 2, self.p)

    def elements(self) -> range:
        return range(self.p)

    def vector(self, coords: Iterable[int]) -> Vector:
        return tuple(c % self.p for c in coords)

    def zero(self, dim: int) -> Vector:
        return (0,) * dim

    def unit(self, dim: int, i: int) -> Vector:
        v = [0] * dim
        v[i] = 1
        return tuple(v)

    def add(self, u: Vector, v: Vector) -> Vector:
        p = self.p
        return tuple((a + b) % p for a, b in zip(u, v))

    def sub(self, u: Vector, v: Vector) -> Vector:
        p = self.p
        return tuple((a - b) % p for a, b in zip(u, v))

    def scale(self, c: int, v: Vector) -> Vector:
        p = self.p
        return tuple((c * a) % p for a in v)

    def all_vectors(self, dim: int) -> Iterator[Vector]:
        return itertools.product(range(self.p), repeat=dim)


def _check_dim(dim: int, v: Sequence[int]) -> None:
    if len(v) != dim:
        raise ValueError(f"dimension mismatch: expected {dim}, got {len(v)}")


def _reduce(rows: list[list[int]], pivots: list[int], v: list[int], p: int) -> list[int]:
    """Reduce ``v`` against RREF ``rows`` (in place copy)."""
    v = list(v)
    for row, c in zip(rows, pivots):
        f = v[c]
        if f:
            for j in range(c, len(v)):
                if row[j]:
                    v[j] = (v[j] - f * row[j]) % p
    return v


@dataclass(frozen=True)
class Subspace:
    field: ScalarField
    ambient_dim: int
    basis: tuple[Vector, ...] = ()
    pivots: tuple[int, ...] = dc_field(default=(), compare=False)

    @classmethod
    def zero(cls, fld: ScalarField, dim: int) -> "Subspace":
        return cls(fld, dim)

    @classmethod
    def full(cls, fld: ScalarField, dim: int) -> "Subspace":
        return cls.coordinate(fld, dim, range(dim))

    @classmethod
    def coordinate(cls, fld: ScalarField, dim: int, coords: Iterable[int]) -> "Subspace":
        cs = sorted(set(coords))
        return cls(fld, dim, tuple(fld.unit(dim, c) for c in cs), tuple(cs))

    @classmethod
    def span(cls, fld: ScalarField, dim: int, vectors: Iterable[Sequence[int]]) -> "Subspace":
        S = cls.zero(fld, dim)
        for v in vectors:
            S, _ = span_insert(S, fld.vector(v))
        return S

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def p(self) -> int:
        return self.field.p

    def __contains__(self, v: Sequence[int]) -> bool:
        return contains(self, v)

    def __len__(self) -> int:
        return self.rank

    def is_full(self) -> bool:
        return self.rank == self.ambient_dim

    def is_zero(self) -> bool:
        return self.rank == 0

    def elements(self) -> Iterator[Vector]:
        """Every vector of the subspace (p**rank of them)."""
        p = self.p
        for coeffs in itertools.product(range(p), repeat=self.rank):
            v = [0] * self.ambient_dim
            for c, row in zip(coeffs, self.basis):
                if c:
                    for j, x in enumerate(row):
                        if x:
                            v[j] = (v[j] + c * x) % p
            yield tuple(v)

    def __add__(self, other: "Subspace") -> "Subspace":
        _same_space(self, other)
        S = self
        for v in other.basis:
            S, _ = span_insert(S, v)
        return S


def _same_space(S: Subspace, T: Subspace) -> None:
    if S.ambient_dim != T.ambient_dim:
        raise ValueError(f"dimension mismatch: {S.ambient_dim} vs {T.ambient_dim}")
    if S.field != T.field:
        raise ValueError(f"field mismatch: F_{S.p} vs F_{T.p}")


def span_insert(S: Subspace, v: Sequence[int]) -> tuple[Subspace, bool]:
    """Return (span(S + {v}), grew) with the result in canonical RREF."""
    _check_dim(S.ambient_dim, v)
    p = S.p
    rows = [list(r) for r in S.basis]
    pivots = list(S.pivots)
    w = _reduce(rows, pivots, [x % p for x in v], p)
    c = next((j for j, x in enumerate(w) if x), None)
    if c is None:
        return S, False
    inv = pow(w[c], p - 2, p)
    w = [(x * inv) % p for x in w]
    for row in rows:
        f = row[c]
        if f:
            for j in range(c, len(w)):
                if w[j]:
                    row[j] = (row[j] - f * w[j]) % p
    k = sum(1 for q in pivots if q < c)
    rows.insert(k, w)
    pivots.insert(k, c)
    return Subspace(S.field, S.ambient_dim, tuple(map(tuple, rows)), tuple(pivots)), True


def contains(S: Subspace, v: Sequence[int]) -> bool:
    _check_dim(S.ambient_dim, v)
    p = S.p
    w = _reduce([list(r) for r in S.basis], list(S.pivots), [x % p for x in v], p)
    return not any(w)


def nullspace(fld: ScalarField, rows: Sequence[Sequence[int]], ncols: int) -> Subspace:
    """Right kernel {x : M x = 0} of the matrix with the given rows."""
    p = fld.p
    R = Subspace.span(fld, ncols, rows)
    pivots = set(R.pivots)
    free = [j for j in range(ncols) if j not in pivots]
    vecs = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for row, c in zip(R.basis, R.pivots):
            x[c] = (-row[f]) % p
        vecs.append(x)
    return Subspace.span(fld, ncols, vecs)


def intersect(S: Subspace, T: Subspace) -> Subspace:
    _same_space(S, T)
    if S.is_zero() or T.is_zero():
        return Subspace.zero(S.field, S.ambient_dim)
    # x.B_S - y.B_T = 0  <=>  (x, y) in the left kernel of [B_S; B_T]
    p = S.p
    stacked = list(S.basis) + [tuple((-c) % p for c in r) for r in T.basis]
    cols = [[row[j] for row in stacked] for j in range(S.ambient_dim)]
    K = nullspace(S.field, cols, len(stacked))
    out = []
    for k in K.basis:
        v = [0] * S.ambient_dim
        for c, row in zip(k[: S.rank], S.basis):
            if c:
                for j, x in enumerate(row):
                    v[j] = (v[j] + c * x) % p
        out.append(v)
    return Subspace.span(S.field, S.ambient_dim, out)


def all_subspaces(fld: ScalarField, dim: int) -> list[Subspace]:
    """Every subspace of F_p^dim, by brute-force spanning (small dims only)."""
    seen: dict[tuple[Vector, ...], Subspace] = {}
    frontier = [Subspace.zero(fld, dim)]
    seen[()] = frontier[0]
    nonzero = [v for v in fld.all_vectors(dim) if any(v)]
    while frontier:
        nxt = []
        for S in frontier:
            for v in nonzero:
                T, grew = span_insert(S, v)
                if grew and T.basis not in seen:
                    seen[T.basis] = T
                    nxt.append(T)
        frontier = nxt
    return sorted(seen.values(), key=lambda S: (S.rank, S.basis))


# -- batched rank over stacks of matrices -----------------------------------


def _inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv[x] = pow(x, p - 2, p)
    return inv


def batch_rank(mats: np.ndarray, p: int) -> np.ndarray:
    """Rank over F_p of each matrix in a (B, R, C) integer stack."""
    mats = np.asarray(mats)
    if mats.ndim != 3:
        raise ValueError("expected a (batch, rows, cols) array")
    B, R, C = mats.shape
    if B == 0 or R == 0 or C == 0:
        return np.zeros(B, dtype=np.int64)
    if p == 2 and C <= 63:
        bits = np.packbits(mats if mats.dtype == bool else (mats % 2).astype(bool), axis=2, bitorder="little")
        padded = np.zeros((B, R, 8), dtype=np.uint8)
        padded[:, :, :bits.shape[2]] = bits
        return _rank_gf2_packed(padded.view("<u8")[:, :, 0], C)
    return _rank_modp(mats.astype(np.int64) % p, p)


def _rank_gf2_packed(rows: np.ndarray, ncols: int) -> np.ndarray:
    """Rows packed as uint64 bitmasks; column-by-column elimination, vectorised over the batch."""
    B, R = rows.shape
    rows = rows.copy()
    ar = np.arange(B)
    used = np.zeros((B, R), dtype=bool)
    rank = np.zeros(B, dtype=np.int64)
    one = np.uint64(1)
    for bit in range(ncols):
        hit = ((rows >> np.uint64(bit)) & one).astype(bool)
        cand = hit & ~used
        has = cand.any(axis=1)
        if not has.any():
            continue
        r = cand.argmax(axis=1)
        piv = np.where(has, rows[ar, r], np.uint64(0))
        hit[ar, r] = False
        rows ^= np.where(hit, piv[:, None], np.uint64(0))
        used[ar[has], r[has]] = True
        rank += has
    return rank


def _rank_modp(M: np.ndarray, p: int) -> np.ndarray:
    # smallest dtype holding p**2 in magnitude
    dt = np.int16 if p * p < (1 << 15) else np.int32 if p * p < (1 << 31) else np.int64
    M = (M % p).astype(dt)
    B, R, C = M.shape
    inv = _inverse_table(p).astype(dt)
    ar = np.arange(B)
    used = np.zeros((B, R), dtype=bool)
    rank = np.zeros(B, dtype=np.int64)
    for c in range(C):
        col = M[:, :, c]
        cand = (col != 0) & ~used
        has = cand.any(axis=1)
        if not has.any():
            continue
        r = cand.argmax(axis=1)
        piv = M[ar, r, c:]
        piv *= inv[piv[:, 0]][:, None]
        piv %= p
        piv[~has] = 0
        f = col.copy()
        f[ar, r] = 0
        # unused rows are zero left of c, so only columns c.. need updating
        tail = M[:, :, c:]
        tail -= f[:, :, None] * piv[:, None, :]
        tail %= p
        used[ar[has], r[has]] = True
        rank += has
    return rank
