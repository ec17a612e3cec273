"""Partial actions on finite discrete spaces: topological freeness and minimality.

Every subset of a discrete space is clopen, so "empty interior" means empty
and "open invariant subset" means any invariant subset.  The checks below
compare these two dynamical properties with the skew-ring oracle over F_p,
which is the finite analogue of the continuous-function statement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .exactalg import ScalarField
from .groups import cyclic_group
from .paction import InstanceError, SetPartialAction, invariant_closure, is_G_simple, restrict_global, validate_axioms
from .report import AGREE, DISAGREE, SKIPPED, Agreement, Finding, OracleInfeasible
from .skewring import DEFAULT_BUDGET, SkewRing, is_maximal_commutative, is_simple_oracle


@dataclass(frozen=True)
class DiscreteDynSystem:
    action: SetPartialAction

    def __post_init__(self) -> None:
        problems = validate_axioms(self.action)
        if problems:
            raise InstanceError([str(v) for v in problems])

    def ring(self, fld: ScalarField) -> SkewRing:
        return SkewRing.from_action(self.action, fld)


def is_topologically_free(d: DiscreteDynSystem) -> Finding:
    """No h_t with t != 0 fixes a point.  The witness is (t, x) for the first fixed point."""
    for t in d.action.maps:
        fixed = d.action.fixed_points(t)
        if fixed:
            return Finding(False, (t, min(fixed, key=repr)))
    return Finding(True)


def is_minimal(d: DiscreteDynSystem) -> Finding:
    """Every orbit is dense, i.e. the invariant closure of each point is everything."""
    a = d.action
    full = frozenset(a.carrier)
    for x in a.carrier:
        orbit = invariant_closure(a, {x})
        if orbit != full:
            return Finding(False, orbit)
    return Finding(True)


def check_dynamics_simplicity(d: DiscreteDynSystem, fld: ScalarField,
                              budget: int = DEFAULT_BUDGET) -> Agreement:
    """Oracle simplicity versus (topologically free and minimal), plus the two sub-checks.

    Sub-checks: minimal == G-simple, and topologically free implies maximal
    commutative.  Any failed sub-check makes the whole report a disagreement.
    """
    free = is_topologically_free(d)
    minimal = is_minimal(d)
    R = d.ring(fld)
    gs = is_G_simple(d.action)
    mc = is_maximal_commutative(R)
    details = {
        "topologically_free": free,
        "minimal": minimal,
        "minimal_vs_g_simple": AGREE if minimal.holds == gs.holds else DISAGREE,
        "free_implies_max_commutative": AGREE if (not free.holds or mc.holds) else DISAGREE,
    }
    subs_ok = details["minimal_vs_g_simple"] == AGREE and details["free_implies_max_commutative"] == AGREE
    try:
        simple = is_simple_oracle(R, budget)
    except OracleInfeasible as exc:
        status = SKIPPED if subs_ok else DISAGREE
        return Agreement("dynamics_simplicity", status, reason=str(exc), details=details)
    crit = free.holds and minimal.holds
    status = AGREE if simple.holds == crit and subs_ok else DISAGREE
    return Agreement("dynamics_simplicity", status, simple.holds, crit, details=details)


def c2_sweep(max_points: int) -> Iterator[DiscreteDynSystem]:
    """All C2 systems obtained by restricting an involution of Y to X, where |Y| = 2|X|.

    X = {0..m-1} and Y = {0..2m-1}.  Every restriction of a global C2 action to
    an m-point set is realised this way up to relabelling of Y \\ X, so the
    sweep is exhaustive; duplicates are dropped.
    """
    G = cyclic_group(2)
    for m in range(1, max_points + 1):
        X = list(range(m))
        Y = list(range(2 * m))
        seen = set()
        for perm in _involutions(Y):
            a = restrict_global(Y, perm, X, 2, G)
            key = tuple(sorted(a.maps.get(1, {}).items()))
            if key in seen:
                continue
            seen.add(key)
            yield DiscreteDynSystem(a)


def _involutions(Y: list[int]) -> Iterator[dict[int, int]]:
    """Every involution of Y, as a dict."""
    if not Y:
        yield {}
        return
    first, rest = Y[0], Y[1:]
    for tail in _involutions(rest):
        yield {first: first, **tail}
    for i, partner in enumerate(rest):
        remaining = rest[:i] + rest[i + 1:]
        for tail in _involutions(remaining):
            yield {first: partner, partner: first, **tail}
