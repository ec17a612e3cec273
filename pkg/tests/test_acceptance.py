"""Acceptance criteria, one function each.

Under pytest each criterion is a marked test and the terminal summary prints
one PASS/FAIL line per criterion.  Run directly (``python3 tests/test_acceptance.py``)
it prints the same lines with a short detail string.
"""

from __future__ import annotations

import itertools
import sys
import time
from functools import cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from conftest import c4_action  # noqa: E402
from pskew.dynamics import c2_sweep, check_dynamics_simplicity  # noqa: E402
from pskew.exactalg import ScalarField  # noqa: E402
from pskew.leavitt import (  # noqa: E402
    build_leavitt_ring,
    graph_from_text,
    leavitt_is_simple,
    small_acyclic_graphs,
    vertex_witness,
)
from pskew.paction import AlgebraPartialAction, is_G_simple, seeded_corpus  # noqa: E402
from pskew.skewring import (  # noqa: E402
    DEFAULT_BUDGET,
    SkewRing,
    centralizer_of_R0,
    check_iip_equivalence,
    check_simplicity_criterion,
    expected_centralizer_dim,
    is_maximal_commutative,
    is_simple_oracle,
)

F2 = ScalarField(2)
CORPUS_SEED = 20240611
CORPUS_SIZE = 200
CORPUS_MAX_DIM = 14


@cache
def corpus_rings() -> tuple[SkewRing, ...]:
    """200 restricted actions of C2, C3, C4 on at most 4 points with N <= 14, over F_2."""
    corpus = seeded_corpus(CORPUS_SEED, CORPUS_SIZE, [2, 3, 4], 4, max_dim=CORPUS_MAX_DIM)
    return tuple(SkewRing.from_action(a, F2) for a, _ in corpus)


@cache
def leavitt_corpus():
    return tuple(build_leavitt_ring(g, F2) for g in small_acyclic_graphs(3, 3))


def criterion_1() -> tuple[bool, str]:
    start = time.perf_counter()
    problems = []
    for p in (2, 3):
        fld = ScalarField(p)
        a = c4_action()
        alg = AlgebraPartialAction(a, fld)
        proper = [I for I in alg.ideals() if 0 < I.rank < len(a.carrier)]
        if len(proper) != 6 or any(alg.is_invariant_ideal(I) for I in proper):
            problems.append(f"F_{p}: {len(proper)} proper ideals")
        R = SkewRing.from_action(a, fld)
        if not is_G_simple(a).holds:
            problems.append(f"F_{p}: not G-simple")
        if not is_maximal_commutative(R).holds:
            problems.append(f"F_{p}: not maximal commutative")
        if not is_simple_oracle(R).holds:
            problems.append(f"F_{p}: oracle says not simple")
        for ag in (check_iip_equivalence(R), check_simplicity_criterion(R)):
            if ag.status != "agree" or ag.lhs is not True or ag.rhs is not True:
                problems.append(f"F_{p}: {ag.name} {ag.status}")
    elapsed = time.perf_counter() - start
    if elapsed >= 5:
        problems.append(f"took {elapsed:.2f}s")
    return not problems, "; ".join(problems) or f"F_2 and F_3 in {elapsed:.2f}s"


def criterion_2() -> tuple[bool, str]:
    start = time.perf_counter()
    rings = corpus_rings()
    if max(R.dim for R in rings) > CORPUS_MAX_DIM:
        return False, "corpus exceeds N <= 14"
    results = [check_iip_equivalence(R) for R in rings]
    elapsed = time.perf_counter() - start
    agree = sum(r.status == "agree" for r in results)
    mc_false = sum(r.lhs is False for r in results)
    ok = agree == CORPUS_SIZE and elapsed < 120
    return ok, f"{agree}/{CORPUS_SIZE} agree ({mc_false} not maximal commutative) in {elapsed:.1f}s"


def criterion_3() -> tuple[bool, str]:
    results = [check_simplicity_criterion(R) for R in corpus_rings()]
    agree = sum(r.status == "agree" for r in results)
    simple = sum(r.lhs is True for r in results)
    return agree == CORPUS_SIZE, f"{agree}/{CORPUS_SIZE} agree ({simple} simple)"


def criterion_4() -> tuple[bool, str]:
    checked = excluded = 0
    problems = []
    for L in leavitt_corpus():
        if F2.p ** L.ring.dim > DEFAULT_BUDGET:
            excluded += 1
            continue
        checked += 1
        if is_simple_oracle(L.ring).holds != leavitt_is_simple(L.graph).holds:
            problems.append(str(L.graph.to_json()))
    dims = (build_leavitt_ring(graph_from_text("e: v1 -> v2"), F2).ring.dim,
            build_leavitt_ring(graph_from_text("e: v1 -> v2\nf: v3 -> v2"), F2).ring.dim)
    if dims != (4, 9):
        problems.append(f"dimensions {dims}")
    detail = f"{checked} graphs agree, {excluded} over budget; dimensions {dims[0]} and {dims[1]}"
    return not problems, "; ".join(problems) or detail


def criterion_5() -> tuple[bool, str]:
    total = ok = 0
    for text in ("e: v1 -> v2", "e: v1 -> v2\nf: v3 -> v2"):
        L = build_leavitt_ring(graph_from_text(text), F2)
        for x0 in itertools.product((0, 1), repeat=len(L.action.carrier)):
            if any(x0):
                total += 1
                ok += vertex_witness(L, x0).confirmed
    return ok == total, f"{ok}/{total} witnesses confirmed"


def criterion_6() -> tuple[bool, str]:
    results = [check_dynamics_simplicity(d, F2) for d in c2_sweep(3)]
    agree = sum(r.status == "agree" for r in results)
    return agree == len(results), f"{agree}/{len(results)} C2 systems agree, sub-checks included"


def criterion_7() -> tuple[bool, str]:
    rings = list(corpus_rings()) + [L.ring for L in leavitt_corpus()]
    rings += [SkewRing.from_action(c4_action(), ScalarField(p)) for p in (2, 3)]
    rings += [d.ring(F2) for d in c2_sweep(3)]
    bad = [R for R in rings if centralizer_of_R0(R).rank != expected_centralizer_dim(R.base)]
    return not bad, f"{len(rings) - len(bad)}/{len(rings)} rings match"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7]


@pytest.mark.parametrize("n", [pytest.param(n, marks=pytest.mark.criterion(n)) for n in range(1, len(CRITERIA) + 1)])
def test_criterion(n):
    ok, detail = CRITERIA[n - 1]()
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


def main() -> int:
    failed = 0
    for n, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        failed += not ok
        print(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}", flush=True)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
