import pytest

from conftest import c4_action
from pskew.dynamics import DiscreteDynSystem, c2_sweep, check_dynamics_simplicity, is_minimal, is_topologically_free
from pskew.exactalg import ScalarField
from pskew.groups import cyclic_group
from pskew.paction import InstanceError, SetPartialAction

F2 = ScalarField(2)
C2 = cyclic_group(2)


def swap():
    return DiscreteDynSystem(SetPartialAction.build(C2, ("a", "b"), {1: {"a": "b", "b": "a"}}))


def fixed(n):
    pts = tuple(range(n))
    return DiscreteDynSystem(SetPartialAction.build(C2, pts, {1: {x: x for x in pts}}))


def test_topological_freeness_examples():
    assert is_topologically_free(swap()).holds
    f = is_topologically_free(fixed(1))
    assert not f.holds and f.witness == (1, 0)
    assert is_topologically_free(DiscreteDynSystem(c4_action())).holds


def test_minimality_examples():
    assert is_minimal(swap()).holds
    f = is_minimal(fixed(2))
    assert not f.holds and f.witness == {0}
    assert is_minimal(DiscreteDynSystem(c4_action())).holds


def test_invalid_system_rejected():
    with pytest.raises(InstanceError):
        DiscreteDynSystem(SetPartialAction(C2, (1, 2), {1: {1: 2}}))


def test_simplicity_check_examples():
    ag = check_dynamics_simplicity(swap(), F2)
    assert ag.status == "agree" and ag.lhs is True
    assert swap().ring(F2).dim == 4
    ag = check_dynamics_simplicity(fixed(1), F2)
    assert ag.status == "agree" and (ag.lhs, ag.rhs) == (False, False)
    assert ag.details["topologically_free"].holds is False
    assert check_dynamics_simplicity(DiscreteDynSystem(c4_action()), ScalarField(3)).status == "agree"


def test_simplicity_check_skips_over_budget():
    ag = check_dynamics_simplicity(DiscreteDynSystem(c4_action()), F2, budget=16)
    assert ag.status == "skipped" and ag.reason


def test_sweep_counts():
    # partial involutions of an m-set where each unmatched point is either fixed or has no image
    counts = [0, 0, 0]
    for d in c2_sweep(3):
        counts[len(d.action.carrier) - 1] += 1
    assert counts == [2, 5, 14]
