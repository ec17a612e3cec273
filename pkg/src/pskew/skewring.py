"""The partial skew group ring K^X x_alpha G of a finite set-level partial action.

Elements are coefficient vectors over the flattened coordinates ``(t, x)``
with ``t`` in the support of the action and ``x`` in ``X_t``; the coordinate
``(t, x)`` is the basis element ``1_x delta_t``.  Products follow

    (a_t delta_t)(b_s delta_s) = alpha_t(alpha_{t^-1}(a_t) b_s) delta_{ts}

and are tabulated once on basis pairs.  Ideals are subspaces of the
coordinate space.  The exhaustive oracles enumerate every principal ideal
with numpy; :func:`ideal_generated` is the single-element worklist version.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterator, Mapping, Sequence

import numpy as np

from .exactalg import (
    ScalarField,
    Subspace,
    Vector,
    batch_rank,
    contains,
    intersect,
    nullspace,
    span_insert,
)
from .paction import AlgebraPartialAction, SetPartialAction, is_G_simple
from .report import AGREE, DISAGREE, SKIPPED, Agreement, Finding, OracleInfeasible

DEFAULT_BUDGET = 1 << 16

# upper bound on floats held by one numpy batch of sandwich products
_BATCH_FLOATS = 1 << 22


class SkewRing:
    def __init__(self, action: AlgebraPartialAction):
        self.action = action
        self.field: ScalarField = action.field
        base = action.base
        self.base: SetPartialAction = base
        self.group = base.group
        self.support = base.support
        self.coords: tuple[tuple[Any, Any], ...] = tuple(
            (t, x) for t in self.support for x in base.ordered_X(t))
        self.coord_index = {c: i for i, c in enumerate(self.coords)}
        self.dim = len(self.coords)
        self.r0_indices = tuple(i for i, (t, _) in enumerate(self.coords) if t == base.identity)

    @classmethod
    def from_action(cls, a: SetPartialAction, fld: ScalarField) -> "SkewRing":
        return cls(AlgebraPartialAction(a, fld))

    def __repr__(self) -> str:
        return f"SkewRing(|X|={len(self.base.carrier)}, N={self.dim}, F_{self.field.p})"

    # -- elements ---------------------------------------------------------

    def element(self, coeffs: Sequence[int] | Mapping[tuple, int]) -> "SkewElement":
        if isinstance(coeffs, Mapping):
            v = [0] * self.dim
            for c, val in coeffs.items():
                if c not in self.coord_index:
                    raise ValueError(f"{c!r} is not a coordinate (x must lie in X_t)")
                v[self.coord_index[c]] = val
            coeffs = v
        if len(coeffs) != self.dim:
            raise ValueError(f"expected {self.dim} coefficients, got {len(coeffs)}")
        return SkewElement(self, self.field.vector(coeffs))

    def basis_element(self, t, x) -> "SkewElement":
        return self.element({(t, x): 1})

    def basis(self) -> list["SkewElement"]:
        return [SkewElement(self, self.field.unit(self.dim, i)) for i in range(self.dim)]

    def homogeneous(self, t, f: Sequence[int]) -> "SkewElement":
        """f delta_t for a function f on X (as a vector) supported in X_t."""
        base = self.base
        dom = base.X(t)
        out = {}
        for x in base.carrier:
            c = f[base.index(x)] % self.field.p
            if c:
                if x not in dom:
                    raise ValueError(f"coefficient of delta_t must lie in D_t; nonzero at {x!r}")
                out[(t, x)] = c
        return self.element(out)

    def r0(self, f: Sequence[int]) -> "SkewElement":
        return self.homogeneous(self.base.identity, f)

    @property
    def zero(self) -> "SkewElement":
        return SkewElement(self, (0,) * self.dim)

    @property
    def one(self) -> "SkewElement":
        return self.r0((1,) * len(self.base.carrier))

    def r0_subspace(self) -> Subspace:
        return Subspace.coordinate(self.field, self.dim, self.r0_indices)

    def full_subspace(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    # -- structure constants ------------------------------------------------

    @cached_property
    def table(self) -> tuple[tuple[tuple[tuple[int, int], ...], ...], ...]:
        """table[i][j] lists (k, c) with e_i e_j = sum c e_k."""
        basis = self.basis()
        rows = []
        for a in basis:
            row = []
            for b in basis:
                prod = multiply(self, a, b).coeffs
                row.append(tuple((k, c) for k, c in enumerate(prod) if c))
            rows.append(tuple(row))
        return tuple(rows)

    def _mul_vec(self, u: Sequence[int], v: Sequence[int]) -> Vector:
        p = self.field.p
        out = [0] * self.dim
        table = self.table
        for i, a in enumerate(u):
            if not a:
                continue
            row = table[i]
            for j, b in enumerate(v):
                if b:
                    for k, c in row[j]:
                        out[k] = (out[k] + a * b * c) % p
        return tuple(out)

    def left_by_basis(self, i: int, v: Sequence[int]) -> Vector:
        p = self.field.p
        out = [0] * self.dim
        for j, b in enumerate(v):
            if b:
                for k, c in self.table[i][j]:
                    out[k] = (out[k] + b * c) % p
        return tuple(out)

    def right_by_basis(self, j: int, v: Sequence[int]) -> Vector:
        p = self.field.p
        out = [0] * self.dim
        table = self.table
        for i, a in enumerate(v):
            if a:
                for k, c in table[i][j]:
                    out[k] = (out[k] + a * c) % p
        return tuple(out)

    @cached_property
    def sandwich_matrix(self) -> np.ndarray:
        """Linear maps a -> e_i a e_j for all basis pairs, deduplicated, stacked as (N, R*N)."""
        N, p = self.dim, self.field.p
        table = self.table
        blocks: dict[bytes, np.ndarray] = {}
        for i in range(N):
            for j in range(N):
                M = np.zeros((N, N), dtype=np.int64)
                for k in range(N):
                    for l, c1 in table[i][k]:
                        for m, c2 in table[l][j]:
                            M[k, m] = (M[k, m] + c1 * c2) % p
                if M.any():
                    blocks.setdefault(M.tobytes(), M)
        if not blocks:
            return np.zeros((N, 0), dtype=np.float64)
        return np.concatenate(list(blocks.values()), axis=1).astype(np.float64)


@dataclass(frozen=True, eq=False)
class SkewElement:
    ring: SkewRing
    coeffs: Vector

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SkewElement) and other.ring is self.ring and other.coeffs == self.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "SkewElement") -> "SkewElement":
        return SkewElement(self.ring, self.ring.field.add(self.coeffs, other.coeffs))

    def __sub__(self, other: "SkewElement") -> "SkewElement":
        return SkewElement(self.ring, self.ring.field.sub(self.coeffs, other.coeffs))

    def __neg__(self) -> "SkewElement":
        return SkewElement(self.ring, self.ring.field.scale(-1, self.coeffs))

    def __rmul__(self, c: int) -> "SkewElement":
        return SkewElement(self.ring, self.ring.field.scale(c, self.coeffs))

    def __mul__(self, other):
        if isinstance(other, SkewElement):
            return SkewElement(self.ring, self.ring._mul_vec(self.coeffs, other.coeffs))
        return NotImplemented

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def support(self) -> set:
        return {self.ring.coords[i][0] for i, c in enumerate(self.coeffs) if c}

    def components(self) -> dict:
        """{t: {x: coefficient}} over the nonzero coordinates."""
        out: dict = {}
        for (t, x), c in zip(self.ring.coords, self.coeffs):
            if c:
                out.setdefault(t, {})[x] = c
        return out

    def to_json(self) -> list:
        from .report import jsonable

        return [[jsonable(t), jsonable(x), c] for (t, x), c in zip(self.ring.coords, self.coeffs) if c]

    def __repr__(self) -> str:
        terms = [f"{c}*1_{x}d_{t}" for (t, x), c in zip(self.ring.coords, self.coeffs) if c]
        return " + ".join(terms) or "0"


# -- arithmetic straight from the definition -----------------------------------


def project(R: SkewRing, a: SkewElement, g) -> Vector:
    """The g-component a_g, as a function on X (zero off X_g)."""
    out = [0] * len(R.base.carrier)
    for (t, x), c in zip(R.coords, a.coeffs):
        if t == g:
            out[R.base.index(x)] = c
    return tuple(out)


def augment(R: SkewRing, a: SkewElement) -> Vector:
    """Sum of all graded components, as a function on X."""
    p = R.field.p
    out = [0] * len(R.base.carrier)
    for (t, x), c in zip(R.coords, a.coeffs):
        i = R.base.index(x)
        out[i] = (out[i] + c) % p
    return tuple(out)


def multiply(R: SkewRing, a: SkewElement, b: SkewElement) -> SkewElement:
    """Bilinear extension of (a_t d_t)(b_s d_s) = alpha_t(alpha_{t^-1}(a_t) b_s) d_ts."""
    alg = R.action
    G = R.group
    acomp = {t: project(R, a, t) for t in a.support()}
    bcomp = {s: project(R, b, s) for s in b.support()}
    out = {}
    for t, at in acomp.items():
        ti = G.inv(t)
        u = alg.alpha(ti, at)
        for s, bs in bcomp.items():
            w = alg.mul(u, bs)
            if not any(w):
                continue
            v = alg.alpha(t, w)
            ts = G.mul(t, s)
            for x, c in zip(R.base.carrier, v):
                if not c:
                    continue
                key = (ts, x)
                if key not in R.coord_index:
                    raise ValueError(f"product lands outside D_ts at {key!r}; the action is not a partial action")
                out[key] = (out.get(key, 0) + c) % R.field.p
    return R.element(out)


def verify_associativity(R: SkewRing) -> Finding:
    """(e_i e_j) e_k == e_i (e_j e_k) on every basis triple; witness is the first failing triple."""
    N = R.dim
    basis = [R.field.unit(N, i) for i in range(N)]
    for i in range(N):
        for j in range(N):
            ij = R.left_by_basis(i, basis[j])
            for k in range(N):
                lhs = R.right_by_basis(k, ij)
                rhs = R.left_by_basis(i, R.left_by_basis(j, basis[k]))
                if lhs != rhs:
                    return Finding(False, (R.coords[i], R.coords[j], R.coords[k]))
    return Finding(True)


# -- centralizer -----------------------------------------------------------------


def centralizer_of_R0(R: SkewRing) -> Subspace:
    """{a : a (1_x d_0) = (1_x d_0) a for every x}, solved as a linear system."""
    N = R.dim
    basis = [R.field.unit(N, i) for i in range(N)]
    rows = []
    for i in R.r0_indices:
        cols = [R.field.sub(R.right_by_basis(i, basis[j]), R.left_by_basis(i, basis[j])) for j in range(N)]
        for k in range(N):
            row = [cols[j][k] for j in range(N)]
            if any(row):
                rows.append(row)
    return nullspace(R.field, rows, N)


def fixed_point_count(a: SetPartialAction) -> int:
    """Sum over t != 0 of the number of fixed points of h_t."""
    return sum(len(a.fixed_points(t)) for t in a.maps)


def expected_centralizer_dim(a: SetPartialAction) -> int:
    return len(a.carrier) + fixed_point_count(a)


def is_maximal_commutative(R: SkewRing) -> Finding:
    """Whether R0 d_0 equals its own centralizer.

    On failure the witness is a homogeneous centralizing element a_g d_g with
    g != 0, which is exactly what the intersection-property counterexample needs.
    """
    C = centralizer_of_R0(R)
    if C == R.r0_subspace():
        return Finding(True)
    e = R.base.identity
    for v in C.basis:
        el = SkewElement(R, v)
        for g in sorted(el.support() - {e}, key=lambda t: R.support.index(t)):
            return Finding(False, R.homogeneous(g, project(R, el, g)))
    raise AssertionError("centralizer differs from R0 but has no off-identity component")


# -- ideals ----------------------------------------------------------------------


def ideal_generated(R: SkewRing, a: SkewElement | Sequence[int]) -> Subspace:
    """Smallest two-sided ideal containing a (worklist closure with RREF insertion)."""
    v0 = a.coeffs if isinstance(a, SkewElement) else R.field.vector(a)
    I = Subspace.zero(R.field, R.dim)
    queue = [v0]
    while queue:
        v = queue.pop()
        I, grew = span_insert(I, v)
        if not grew:
            continue
        if I.is_full():
            break
        for i in range(R.dim):
            queue.append(R.left_by_basis(i, v))
            queue.append(R.right_by_basis(i, v))
    return I


def is_ideal(R: SkewRing, S: Subspace) -> bool:
    return all(contains(S, R.left_by_basis(i, v)) and contains(S, R.right_by_basis(i, v))
               for v in S.basis for i in range(R.dim))


def _check_budget(R: SkewRing, budget: int) -> None:
    size = R.field.p ** R.dim
    if size > budget:
        raise OracleInfeasible(size, budget)


def projective_generators(p: int, n: int, chunk: int) -> Iterator[np.ndarray]:
    """Nonzero vectors of F_p^n whose first nonzero entry is 1, in lexicographic order.

    Scalar multiples generate the same ideal, so these cover every principal ideal.
    """
    total = p ** n
    powers = p ** np.arange(n - 1, -1, -1, dtype=np.int64)
    for start in range(1, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = (idx[:, None] // powers[None, :]) % p
        first = digits[np.arange(len(idx)), (digits != 0).argmax(axis=1)]
        digits = digits[first == 1]
        if len(digits):
            yield digits


def _sandwich(R: SkewRing, A: np.ndarray) -> np.ndarray:
    """rows[b] spans the ideal generated by A[b]; shape (B, R, N), entries reduced mod p."""
    N, p = R.dim, R.field.p
    S = R.sandwich_matrix
    # float products are exact while N (p-1)^2 stays below the mantissa
    dt = np.float32 if N * (p - 1) ** 2 < (1 << 24) else np.float64
    P = A.astype(dt) @ S.astype(dt, copy=False)
    np.fmod(P, p, out=P)
    P = P.astype(bool if p == 2 else np.int32 if p < (1 << 15) else np.int64)
    return P.reshape(len(A), S.shape[1] // N, N)


def _chunks(R: SkewRing, n: int) -> Iterator[slice]:
    step = max(1, _BATCH_FLOATS // max(1, R.sandwich_matrix.shape[1]))
    for start in range(0, n, step):
        yield slice(start, min(start + step, n))


def principal_ideal_ranks(R: SkewRing, budget: int = DEFAULT_BUDGET) -> tuple[np.ndarray, np.ndarray]:
    """(generators, ranks): the dimension of the ideal generated by every projective generator.

    Cached on the ring, so the brute-force oracles share one enumeration.
    """
    _check_budget(R, budget)
    cached = R.__dict__.get("_principal_ranks")
    if cached is not None:
        return cached
    N, p = R.dim, R.field.p
    if N == 0:
        out = (np.zeros((0, 0), dtype=np.int64), np.zeros(0, dtype=np.int64))
    else:
        gens = np.concatenate(list(projective_generators(p, N, 1 << 16)))
        ranks = np.empty(len(gens), dtype=np.int64)
        for sl in _chunks(R, len(gens)):
            ranks[sl] = batch_rank(_sandwich(R, gens[sl]), p)
        out = (gens, ranks)
    R.__dict__["_principal_ranks"] = out
    return out


def principal_ideal_dims(R: SkewRing, gens: Sequence[Sequence[int]]) -> list[int]:
    """Dimensions of the ideals generated by the given vectors, via the batched route."""
    A = np.array(gens, dtype=np.int64).reshape(len(gens), R.dim)
    return batch_rank(_sandwich(R, A), R.field.p).tolist()


def is_simple_oracle(R: SkewRing, budget: int = DEFAULT_BUDGET) -> Finding:
    """Simplicity by brute force: every nonzero element must generate the whole ring.

    Raises :class:`OracleInfeasible` when p**N exceeds ``budget``.  The witness
    is the first element (in lexicographic order) generating a proper ideal.
    """
    gens, ranks = principal_ideal_ranks(R, budget)
    bad = np.flatnonzero(ranks < R.dim)
    if len(bad):
        return Finding(False, R.element(gens[bad[0]].tolist()))
    return Finding(True)


def _proper_generators(R: SkewRing, budget: int) -> Iterator[tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """Batches (generators, spanning rows, ranks) restricted to generators of proper ideals."""
    gens, ranks = principal_ideal_ranks(R, budget)
    idx = np.flatnonzero(ranks < R.dim)
    for sl in _chunks(R, len(idx)):
        A = gens[idx[sl]]
        yield A, _sandwich(R, A), ranks[idx[sl]]


def has_ideal_intersection_property_oracle(R: SkewRing, budget: int = DEFAULT_BUDGET) -> Finding:
    """Whether every nonzero ideal meets R0 d_0, by brute force over principal ideals.

    Every nonzero ideal contains a nonzero principal one, so principal ideals
    suffice.  dim(V n R0) = rank V - rank(V restricted to the non-R0 coordinates);
    the whole ring meets R0 trivially, so only proper ideals are examined.
    """
    p = R.field.p
    r0 = set(R.r0_indices)
    off = [i for i in range(R.dim) if i not in r0]
    for A, P, full in _proper_generators(R, budget):
        rest = batch_rank(P[:, :, off], p) if off else np.zeros_like(full)
        bad = np.flatnonzero(full == rest)
        if len(bad):
            return Finding(False, R.element(A[bad[0]].tolist()))
    return Finding(True)


def every_ideal_contains_one_of(R: SkewRing, targets: Sequence[Sequence[int]],
                                budget: int = DEFAULT_BUDGET) -> Finding:
    """Whether every nonzero principal ideal contains at least one of the target vectors."""
    p = R.field.p
    T = np.array(targets, dtype=np.int64).reshape(len(targets), R.dim)
    if not len(T):
        gens, ranks = principal_ideal_ranks(R, budget)
        return Finding(len(gens) == 0, R.element(gens[0].tolist()) if len(gens) else None)
    for A, P, base in _proper_generators(R, budget):
        hit = np.zeros(len(A), dtype=bool)
        for u in T:
            ext = np.concatenate([P, np.broadcast_to(u, (len(A), 1, R.dim))], axis=1)
            hit |= batch_rank(ext, p) == base
        bad = np.flatnonzero(~hit)
        if len(bad):
            return Finding(False, R.element(A[bad[0]].tolist()))
    return Finding(True)


# -- the two equivalences --------------------------------------------------------


@dataclass(frozen=True)
class WitnessIdeal:
    g: Any
    a_g: Vector
    generator: SkewElement
    ideal: Subspace
    meets_r0: bool
    augmentation_vanishes: bool

    def to_json(self) -> dict:
        from .report import jsonable

        return {"g": jsonable(self.g), "a_g": list(self.a_g), "generator": self.generator.to_json(),
                "ideal_dim": self.ideal.rank, "meets_r0": self.meets_r0,
                "augmentation_vanishes": self.augmentation_vanishes}


def commutant_witness_ideal(R: SkewRing, centralizing: SkewElement) -> WitnessIdeal:
    """The nonzero ideal generated by a_g d_0 - a_g d_g for a centralizing a_g d_g.

    It misses R0 d_0, because the augmentation kills all of it.
    """
    comps = centralizing.components()
    e = R.base.identity
    g = next(t for t in comps if t != e)
    a_g = project(R, centralizing, g)
    gen = R.r0(a_g) - R.homogeneous(g, a_g)
    J = ideal_generated(R, gen)
    meets = not intersect(J, R.r0_subspace()).is_zero()
    eps_zero = all(not any(augment(R, SkewElement(R, v))) for v in J.basis)
    return WitnessIdeal(g, a_g, gen, J, meets, eps_zero)


def check_iip_equivalence(R: SkewRing, budget: int = DEFAULT_BUDGET) -> Agreement:
    """Maximal commutativity of R0 d_0 versus the ideal intersection property (brute force)."""
    mc = is_maximal_commutative(R)
    details: dict[str, Any] = {}
    try:
        iip = has_ideal_intersection_property_oracle(R, budget)
    except OracleInfeasible as exc:
        return Agreement("iip_equivalence", SKIPPED, reason=str(exc))
    status = AGREE if mc.holds == iip.holds else DISAGREE
    if not mc.holds:
        w = commutant_witness_ideal(R, mc.witness)
        details["witness_ideal"] = w
        if w.meets_r0 or not w.augmentation_vanishes or w.ideal.is_zero():
            status = DISAGREE
    if not iip.holds:
        details["iip_counterexample"] = iip.witness
    return Agreement("iip_equivalence", status, mc.holds, iip.holds, details=details)


def check_simplicity_criterion(R: SkewRing, budget: int = DEFAULT_BUDGET) -> Agreement:
    """Brute-force simplicity versus (G-simple and maximal commutative)."""
    gs = is_G_simple(R.base)
    mc = is_maximal_commutative(R)
    try:
        simple = is_simple_oracle(R, budget)
    except OracleInfeasible as exc:
        return Agreement("simplicity_criterion", SKIPPED, reason=str(exc))
    rhs = gs.holds and mc.holds
    details: dict[str, Any] = {"g_simple": gs.holds, "max_commutative": mc.holds}
    if not simple.holds:
        details["proper_ideal_generator"] = simple.witness
    return Agreement("simplicity_criterion", AGREE if simple.holds == rhs else DISAGREE,
                     simple.holds, rhs, details=details)
