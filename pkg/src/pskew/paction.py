"""Set-level partial actions on finite sets and the induced action on K^X.

A :class:`SetPartialAction` stores, for every non-identity group element ``t``
with nonempty domain, the bijection ``h_t : X_{t^-1} -> X_t`` as a dict.  The
identity is implicit (``X_0 = X``, ``h_0 = id``).  Ideals of ``K^X`` are
identified with subsets of ``X``, so invariance questions become
combinatorial.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Mapping, Sequence

from .exactalg import ScalarField, Subspace, Vector, all_subspaces, contains, intersect
from .groups import FiniteGroup, FreeWord, Group, cyclic_group, group_from_json
from .report import Finding

Point = Hashable

# subset enumeration oracles are only run up to this carrier size
ORACLE_MAX_POINTS = 12


class InstanceError(ValueError):
    """Malformed instance data (before any axiom checking)."""

    def __init__(self, problems: Sequence[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


def _element_key(t: Any) -> tuple:
    if isinstance(t, FreeWord):
        return (len(t), t.letters)
    return (0, t)


@dataclass(frozen=True)
class SetPartialAction:
    group: Group
    carrier: tuple[Point, ...]
    maps: Mapping[Any, Mapping[Point, Point]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        e = self.group.identity
        clean = {t: dict(m) for t, m in self.maps.items() if m}
        if e in clean:
            raise InstanceError(["the identity must not be listed; h_0 is the identity map"])
        ordered = dict(sorted(clean.items(), key=lambda kv: _element_key(kv[0])))
        object.__setattr__(self, "maps", ordered)
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(self.carrier)})
        if len(self._index) != len(self.carrier):
            raise InstanceError(["carrier points must be distinct"])

    @classmethod
    def build(cls, group: Group, carrier: Iterable[Point],
              maps: Mapping[Any, Mapping[Point, Point]], fill_inverses: bool = True) -> "SetPartialAction":
        """Construct, adding ``h_{t^-1} = h_t^-1`` wherever only one of the pair was given."""
        maps = {t: dict(m) for t, m in maps.items() if m}
        if fill_inverses:
            for t, m in list(maps.items()):
                ti = group.inv(t)
                if ti not in maps and len(set(m.values())) == len(m):
                    maps[ti] = {y: x for x, y in m.items()}
        return cls(group, tuple(carrier), maps)

    @property
    def identity(self):
        return self.group.identity

    @property
    def support(self) -> tuple:
        """Group elements with nonempty domain, identity first."""
        return (self.identity, *self.maps.keys())

    def index(self, x: Point) -> int:
        return self._index[x]

    def h(self, t) -> dict:
        if t == self.identity:
            return {x: x for x in self.carrier}
        return dict(self.maps.get(t, {}))

    def X(self, t) -> frozenset:
        """The domain X_t (image of h_t)."""
        if t == self.identity:
            return frozenset(self.carrier)
        return frozenset(self.maps.get(t, {}).values())

    def ordered_X(self, t) -> tuple:
        dom = self.X(t)
        return tuple(x for x in self.carrier if x in dom)

    def apply(self, t, x: Point):
        """h_t(x), or None when x is outside X_{t^-1}."""
        if t == self.identity:
            return x if x in self._index else None
        return self.maps.get(t, {}).get(x)

    def fixed_points(self, t) -> frozenset:
        return frozenset(x for x, y in self.maps.get(t, {}).items() if x == y)

    def to_json(self) -> dict:
        g = self.group
        if not isinstance(g, FiniteGroup):
            raise TypeError("only finite-group actions have a JSON instance form")
        return {
            "group": g.to_json(),
            "carrier": [str(x) for x in self.carrier],
            "action": [
                {"t": t, "pairs": [[str(x), str(y)] for x, y in m.items()]}
                for t, m in self.maps.items()
            ],
        }


# -- axioms ------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    axiom: str
    s: Any = None
    t: Any = None
    point: Any = None
    detail: str = ""

    def to_json(self) -> dict:
        from .report import jsonable

        return {k: jsonable(v) for k, v in
                (("axiom", self.axiom), ("s", self.s), ("t", self.t), ("point", self.point),
                 ("detail", self.detail)) if v is not None and v != ""}


def _structural(a: SetPartialAction) -> list[Violation]:
    out = []
    pts = set(a.carrier)
    for t, m in a.maps.items():
        for x, y in m.items():
            if x not in pts or y not in pts:
                out.append(Violation("structural", t=t, point=x if x not in pts else y,
                                     detail="point outside the carrier"))
        seen: dict = {}
        for x, y in m.items():
            if y in seen:
                out.append(Violation("structural", t=t, point=y,
                                     detail=f"h_t is not injective: {seen[y]!r} and {x!r} both map here"))
            seen[y] = x
    return out


def validate_axioms(a: SetPartialAction) -> list[Violation]:
    """Every violated partial-action axiom, each with a witness.  Empty means valid.

    Structural problems (points outside the carrier, non-injective maps) are
    reported alone, since the axioms are meaningless without bijections.
    """
    problems = _structural(a)
    if problems:
        return problems
    G = a.group
    base = list(a.support)
    for t in a.maps:
        ti = G.inv(t)
        inv_map = a.maps.get(ti, {})
        for x, y in a.maps[t].items():
            if inv_map.get(y) != x:
                problems.append(Violation("inverse", t=t, point=x,
                                          detail=f"h_t({x!r})={y!r} but h_(t^-1)({y!r})={inv_map.get(y)!r}"))
        for y, x in inv_map.items():
            if a.maps[t].get(x) != y:
                problems.append(Violation("inverse", t=t, point=x,
                                          detail=f"h_(t^-1)({y!r})={x!r} but h_t({x!r})={a.maps[t].get(x)!r}"))
    for t in base:
        ti = G.inv(t)
        ht = a.h(t)
        s_candidates = list(dict.fromkeys(base + [G.mul(ti, u) for u in base]))
        for s in s_candidates:
            ts = G.mul(t, s)
            # h_t(X_{t^-1} n X_s) = X_t n X_ts
            lhs = {ht[x] for x in ht.keys() & a.X(s)}
            rhs = a.X(t) & a.X(ts)
            if lhs != rhs:
                problems.append(Violation("compatibility", s=s, t=t, point=min(lhs ^ rhs, key=repr),
                                          detail="h_t(X_{t^-1} n X_s) != X_t n X_ts"))
            # h_t(h_s(x)) = h_ts(x) on X_{s^-1} n X_{s^-1 t^-1}
            hs, hts = a.h(s), a.h(ts)
            for x in a.carrier:
                if x not in hs or x not in hts:
                    continue
                y = hs[x]
                if y not in ht:
                    problems.append(Violation("composition", s=s, t=t, point=x,
                                              detail=f"h_s({x!r})={y!r} lies outside the domain of h_t"))
                elif ht[y] != hts[x]:
                    problems.append(Violation("composition", s=s, t=t, point=x,
                                              detail=f"h_t(h_s(x))={ht[y]!r} but h_ts(x)={hts[x]!r}"))
    return problems


# -- constructions -------------------------------------------------------------


def restrict_global(Y: Sequence[Point], perm: Mapping[Point, Point], X: Iterable[Point], n: int,
                    group: FiniteGroup | None = None) -> SetPartialAction:
    """Restrict the global action k -> perm^k of C_n on Y to the subset X."""
    Y = list(Y)
    Xs = set(X)
    if not Xs:
        raise ValueError("X must be nonempty")
    if not Xs <= set(Y):
        raise ValueError("X must be a subset of Y")
    if set(perm) != set(Y) or set(perm.values()) != set(Y):
        raise ValueError("perm must be a permutation of Y")
    G = group or cyclic_group(n)
    powers = [{y: y for y in Y}]
    for _ in range(n):
        prev = powers[-1]
        powers.append({y: perm[prev[y]] for y in Y})
    if any(powers[n][y] != y for y in Y):
        raise ValueError(f"permutation order does not divide {n}")
    carrier = tuple(y for y in Y if y in Xs)
    maps = {}
    for k in range(1, n):
        pk = powers[k]
        m = {x: pk[x] for x in carrier if pk[x] in Xs}
        if m:
            maps[k] = m
    return SetPartialAction(G, carrier, maps)


def random_permutation_of_order_dividing(rng: random.Random, Y: Sequence[Point], n: int) -> dict:
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    pts = list(Y)
    rng.shuffle(pts)
    perm = {}
    i = 0
    while i < len(pts):
        d = rng.choice([d for d in divisors if d <= len(pts) - i])
        cyc = pts[i:i + d]
        for j, y in enumerate(cyc):
            perm[y] = cyc[(j + 1) % d]
        i += d
    return perm


def random_restricted_action(rng: random.Random, n: int, max_carrier: int,
                             max_extra: int = 3) -> tuple[SetPartialAction, dict]:
    """A random restriction of a global C_n action; returns the action and its provenance."""
    size = rng.randint(1, max_carrier)
    Y = [f"y{i}" for i in range(size + rng.randint(0, max_extra))]
    perm = random_permutation_of_order_dividing(rng, Y, n)
    X = rng.sample(Y, size)
    a = restrict_global(Y, perm, X, n)
    return a, {"Y": Y, "perm": perm, "X": sorted(X), "n": n}


def skew_dimension(a: SetPartialAction) -> int:
    """N = sum over t of |X_t|, the dimension of the skew ring built on ``a``."""
    return len(a.carrier) + sum(len(m) for m in a.maps.values())


def seeded_corpus(seed: int, count: int, orders: Sequence[int], max_carrier: int,
                  max_dim: int | None = None) -> list[tuple[SetPartialAction, dict]]:
    """``count`` restricted cyclic actions, cycling through ``orders``.

    Draws exceeding ``max_dim`` are rejected and redrawn, so the corpus is a
    deterministic function of the arguments.
    """
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = orders[i % len(orders)]
        while True:
            a, prov = random_restricted_action(rng, n, max_carrier)
            if max_dim is None or skew_dimension(a) <= max_dim:
                break
        out.append((a, prov))
    return out


# -- invariance ----------------------------------------------------------------


def invariant_closure(a: SetPartialAction, S: Iterable[Point]) -> frozenset:
    """Smallest superset of S mapped into itself by every h_t."""
    seen = set(S)
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        for m in a.maps.values():
            y = m.get(x)
            if y is not None and y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def is_invariant_subset(a: SetPartialAction, U: Iterable[Point]) -> bool:
    U = set(U)
    return all(m[x] in U for m in a.maps.values() for x in m if x in U)


def invariant_subsets(a: SetPartialAction) -> list[frozenset]:
    """All invariant subsets, by enumerating the power set of the carrier."""
    pts = a.carrier
    out = []
    for mask in range(1 << len(pts)):
        U = frozenset(x for i, x in enumerate(pts) if mask >> i & 1)
        if is_invariant_subset(a, U):
            out.append(U)
    return out


def is_G_simple(a: SetPartialAction, cross_check: bool = True) -> Finding:
    """Whether K^X has no invariant ideals besides 0 and itself.

    The witness on failure is a proper nonempty invariant subset.  For small
    carriers the answer is confirmed against the power-set enumeration.
    """
    full = frozenset(a.carrier)
    witness = None
    for x in a.carrier:
        C = invariant_closure(a, {x})
        if C != full:
            witness = C
            break
    result = Finding(witness is None, witness)
    if cross_check and len(a.carrier) <= ORACLE_MAX_POINTS:
        proper = [U for U in invariant_subsets(a) if U and U != full]
        if bool(proper) == result.holds:
            raise RuntimeError("invariant-closure test disagrees with subset enumeration")
    return result


# -- the induced action on K^X ---------------------------------------------------


@dataclass(frozen=True)
class AlgebraPartialAction:
    """alpha_t(f) = f o h_{t^-1} on D_t = K^{X_t}, with functions stored as vectors over X."""

    base: SetPartialAction
    field: ScalarField

    @property
    def dim(self) -> int:
        return len(self.base.carrier)

    def ideal(self, t) -> Subspace:
        a = self.base
        return Subspace.coordinate(self.field, self.dim, (a.index(x) for x in a.X(t)))

    def unit(self, t) -> Vector:
        """The indicator 1_{X_t}, the unit of D_t."""
        a = self.base
        v = [0] * self.dim
        for x in a.X(t):
            v[a.index(x)] = 1
        return tuple(v)

    def alpha(self, t, f: Sequence[int]) -> Vector:
        a = self.base
        G = a.group
        ti = G.inv(t)
        h_inv = a.h(ti)
        dom = a.X(ti)
        for x in a.carrier:
            if f[a.index(x)] % self.field.p and x not in dom:
                raise ValueError(f"function is not supported in X_(t^-1) (nonzero at {x!r})")
        out = [0] * self.dim
        for y in a.X(t):
            out[a.index(y)] = f[a.index(h_inv[y])] % self.field.p
        return tuple(out)

    def mul(self, f: Sequence[int], g: Sequence[int]) -> Vector:
        p = self.field.p
        return tuple((x * y) % p for x, y in zip(f, g))

    def ideals(self) -> list[Subspace]:
        """Every ideal of K^X, found by brute force over all subspaces."""
        n = self.dim
        units = [self.field.unit(n, i) for i in range(n)]
        out = []
        for S in all_subspaces(self.field, n):
            if all(contains(S, self.mul(u, v)) for v in S.basis for u in units):
                out.append(S)
        return out

    def is_invariant_ideal(self, I: Subspace) -> bool:
        for t in self.base.maps:
            ti = self.base.group.inv(t)
            J = intersect(I, self.ideal(ti))
            if not all(contains(I, self.alpha(t, v)) for v in J.basis):
                return False
        return True


# -- JSON instances --------------------------------------------------------------


def action_from_json(obj: Mapping[str, Any]) -> tuple[SetPartialAction, ScalarField | None]:
    problems = []
    try:
        group = group_from_json(obj["group"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceError([f"bad group: {exc}"]) from None
    carrier = obj.get("carrier")
    if not isinstance(carrier, list) or not carrier:
        raise InstanceError(["carrier must be a nonempty list"])
    carrier = [str(x) for x in carrier]
    maps: dict[int, dict] = {}
    for entry in obj.get("action", []):
        t = entry.get("t")
        if not isinstance(t, int) or not 0 <= t < group.order:
            problems.append(f"group index {t!r} out of range")
            continue
        if t == 0:
            problems.append("t=0 must be omitted; the identity acts trivially")
            continue
        if t in maps:
            problems.append(f"group element {t} listed twice")
            continue
        m: dict = {}
        for pair in entry.get("pairs", []):
            x, y = str(pair[0]), str(pair[1])
            if x in m and m[x] != y:
                problems.append(f"h_{t} is not a function: {x!r} maps to {m[x]!r} and {y!r}")
            m[x] = y
        maps[t] = m
    fld = None
    if "field" in obj:
        try:
            fld = ScalarField(int(obj["field"]["p"]))
        except (KeyError, TypeError, ValueError) as exc:
            problems.append(f"bad field: {exc}")
    if problems:
        raise InstanceError(problems)
    return SetPartialAction.build(group, carrier, maps), fld


def action_to_json(a: SetPartialAction, fld: ScalarField | None = None) -> dict:
    out = {}
    if fld is not None:
        out["field"] = {"p": fld.p}
    out.update(a.to_json())
    return out

