"""Command-line entry point.

Exit codes: 0 when every cross-check agrees (or is skipped), 1 on any
disagreement, 2 on invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Callable

from .dynamics import DiscreteDynSystem, check_dynamics_simplicity, is_minimal, is_topologically_free
from .exactalg import MAX_MODULUS, ScalarField
from .groups import GroupTableError
from .leavitt import (
    ConstructionError,
    GraphError,
    build_leavitt_ring,
    check_g_simple_vs_hereditary_saturated,
    check_leavitt_simplicity,
    check_max_commutative_vs_condition_L,
    ck_uniqueness_check,
    find_cycle,
    invariant_sets_give_hereditary_saturated,
    leavitt_is_simple,
    load_graph,
    only_trivial_hereditary_saturated,
    satisfies_condition_L,
    vertex_witness,
)
from .paction import (
    ORACLE_MAX_POINTS,
    InstanceError,
    SetPartialAction,
    action_from_json,
    action_to_json,
    is_G_simple,
    seeded_corpus,
    validate_axioms,
)
from .report import AGREE, DISAGREE, SKIPPED, Agreement, Finding, OracleInfeasible, jsonable
from .skewring import (
    SkewRing,
    centralizer_of_R0,
    check_iip_equivalence,
    check_simplicity_criterion,
    expected_centralizer_dim,
    is_maximal_commutative,
    verify_associativity,
)

EXIT_OK, EXIT_DISAGREE, EXIT_INVALID = 0, 1, 2


class InputError(Exception):
    """Bad file, bad flag value or invalid instance; maps to exit code 2."""


@dataclass
class Report:
    instance: str
    header: dict[str, Any] = field(default_factory=dict)
    checks: dict[str, dict[str, Any]] = field(default_factory=dict)
    timing: dict[str, float] = field(default_factory=dict)
    payload: dict[str, Any] | None = None
    failed: bool = False

    def run(self, name: str, fn: Callable[[], Any]) -> Any:
        start = time.perf_counter()
        out = fn()
        self.timing[name] = round(time.perf_counter() - start, 6)
        self.add(name, out)
        return out

    def add(self, name: str, out: Any) -> None:
        if isinstance(out, Agreement):
            entry: dict[str, Any] = {"verdict": SKIPPED if out.status == SKIPPED else out.status == AGREE}
            if out.status != SKIPPED:
                entry["lhs"] = jsonable(out.lhs)
                entry["rhs"] = jsonable(out.rhs)
            if out.reason:
                entry["reason"] = out.reason
            if out.details:
                entry["details"] = jsonable(out.details)
            if out.status == DISAGREE:
                self.failed = True
        elif isinstance(out, Finding):
            entry = {"verdict": out.holds}
            if out.witness is not None:
                entry["witness"] = jsonable(out.witness)
        else:
            entry = dict(out)
        self.checks[name] = entry

    def to_json(self, timing: bool) -> dict:
        out: dict[str, Any] = {"instance": self.instance, **self.header, "checks": self.checks}
        if timing:
            out["timing"] = self.timing
        if self.payload is not None:
            out["input"] = self.payload
        return out


def _fmt(v: Any) -> str:
    if v is True:
        return "true"
    if v is False:
        return "false"
    return str(v)


def emit(report: Report, args: argparse.Namespace) -> None:
    if args.json:
        print(json.dumps(report.to_json(args.timing), indent=2))
        return
    print(f"instance: {report.instance}")
    for k, v in report.header.items():
        print(f"{k}: {_fmt(v)}")
    width = max((len(k) for k in report.checks), default=0)
    for name, entry in report.checks.items():
        line = f"  {name:<{width}}  {_fmt(entry['verdict'])}"
        if "lhs" in entry:
            line += f"  ({_fmt(entry['lhs'])} vs {_fmt(entry['rhs'])})"
        if args.timing and name in report.timing:
            line += f"  [{report.timing[name]:.3f}s]"
        print(line)
        if "reason" in entry:
            print(f"      reason: {entry['reason']}")
        if "witness" in entry:
            print(f"      witness: {json.dumps(entry['witness'])}")
    if report.failed and report.payload is not None:
        print("counterexample instance:")
        print(json.dumps(report.payload))


# -- input helpers ---------------------------------------------------------------


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _field(args: argparse.Namespace, instance_field: ScalarField | None = None) -> ScalarField:
    if args.field is not None:
        try:
            return ScalarField(args.field)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    return instance_field or ScalarField(2)


def _budget(args: argparse.Namespace) -> int:
    if args.budget < 0:
        raise InputError("--budget must be nonnegative")
    return 1 << args.budget


def load_instance(path: str) -> tuple[SetPartialAction, ScalarField | None]:
    try:
        obj = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise InputError(f"{path}: expected a JSON object")
    if "input" in obj and "checks" in obj:
        obj = obj["input"]  # a report produced with --json
    try:
        return action_from_json(obj)
    except (InstanceError, GroupTableError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _require_valid(a: SetPartialAction, path: str) -> None:
    problems = validate_axioms(a)
    if problems:
        lines = "\n".join(f"  {json.dumps(v.to_json())}" for v in problems)
        raise InputError(f"{path}: partial-action axioms violated:\n{lines}")


# -- subcommands ---------------------------------------------------------------------


def cmd_validate(args: argparse.Namespace) -> int:
    a, fld = load_instance(args.path)
    _require_valid(a, args.path)
    if args.json:
        print(json.dumps({"instance": args.path, "valid": True}, indent=2))
    else:
        n = len(a.carrier)
        print(f"{args.path}: valid partial action of order-{a.group.order} group on {n} point{'s' if n != 1 else ''}")
    return EXIT_OK


def centralizer_check(R: SkewRing) -> dict:
    got = centralizer_of_R0(R).rank
    want = expected_centralizer_dim(R.base)
    return {"verdict": got == want, "lhs": got, "rhs": want}


def analyze_action(a: SetPartialAction, fld: ScalarField, budget: int, name: str) -> Report:
    R = SkewRing.from_action(a, fld)
    rep = Report(name, header={"field": fld.p, "carrier_size": len(a.carrier), "ring_dimension": R.dim},
                 payload=action_to_json(a, fld))
    assoc = rep.run("associative", lambda: verify_associativity(R))
    rep.run("g_simple", lambda: is_G_simple(a))
    rep.run("max_commutative", lambda: is_maximal_commutative(R))
    cz = rep.run("centralizer_dimension", lambda: centralizer_check(R))
    iip = rep.run("iip_equivalence", lambda: check_iip_equivalence(R, budget))
    simp = rep.run("simplicity_criterion", lambda: check_simplicity_criterion(R, budget))
    # the two oracle verdicts on their own, as already computed inside the agreements
    rep.add("iip_oracle", _oracle_entry(iip, "iip_counterexample"))
    rep.add("simple_oracle", _oracle_entry(simp, "proper_ideal_generator", side="lhs"))
    if not assoc.holds or not cz["verdict"]:
        rep.failed = True
    return rep


def _oracle_entry(ag: Agreement, witness_key: str, side: str = "rhs") -> dict:
    if ag.status == SKIPPED:
        return {"verdict": SKIPPED, "reason": ag.reason}
    entry: dict[str, Any] = {"verdict": getattr(ag, side)}
    if witness_key in ag.details:
        entry["witness"] = jsonable(ag.details[witness_key])
    return entry


def cmd_analyze(args: argparse.Namespace) -> int:
    a, inst_fld = load_instance(args.path)
    _require_valid(a, args.path)
    rep = analyze_action(a, _field(args, inst_fld), _budget(args), args.path)
    emit(rep, args)
    return EXIT_DISAGREE if rep.failed else EXIT_OK


def cmd_dynamics(args: argparse.Namespace) -> int:
    a, inst_fld = load_instance(args.path)
    _require_valid(a, args.path)
    fld = _field(args, inst_fld)
    d = DiscreteDynSystem(a)
    rep = Report(args.path, header={"field": fld.p, "carrier_size": len(a.carrier)},
                 payload=action_to_json(a, fld))
    rep.run("topologically_free", lambda: is_topologically_free(d))
    rep.run("minimal", lambda: is_minimal(d))
    rep.run("dynamics_simplicity", lambda: check_dynamics_simplicity(d, fld, _budget(args)))
    emit(rep, args)
    return EXIT_DISAGREE if rep.failed else EXIT_OK


def cmd_leavitt(args: argparse.Namespace) -> int:
    text = _read(args.path)
    try:
        g = load_graph(text)
    except (GraphError, json.JSONDecodeError) as exc:
        raise InputError(f"{args.path}: {exc}") from None
    rep = Report(args.path, header={"vertices": len(g.vertices), "edges": len(g.edges)})
    rep.run("condition_L", lambda: satisfies_condition_L(g))
    rep.run("hereditary_saturated_trivial", lambda: only_trivial_hereditary_saturated(g))
    rep.run("simplicity_criterion", lambda: leavitt_is_simple(g))
    if args.construct:
        cyc = find_cycle(g)
        if cyc is not None:
            raise InputError(f"{args.path}: --construct needs an acyclic graph; found cycle {' '.join(cyc)}")
        fld = _field(args)
        budget = _budget(args)
        try:
            L = build_leavitt_ring(g, fld)
        except ConstructionError as exc:
            # the identities hold for every acyclic graph, so this is an internal failure
            rep.add("construction", {"verdict": False, "reason": str(exc)})
            rep.failed = True
            emit(rep, args)
            return EXIT_DISAGREE
        rep.header.update({"field": fld.p, "boundary_paths": len(L.action.carrier), "ring_dimension": L.ring.dim})
        rep.run("end_to_end_simplicity", lambda: check_leavitt_simplicity(L, budget))
        rep.run("g_simple_vs_hereditary_saturated", lambda: check_g_simple_vs_hereditary_saturated(L))
        rep.run("max_commutative_vs_condition_L", lambda: check_max_commutative_vs_condition_L(L))
        rep.run("ck_uniqueness", lambda: _ck(L, budget))
        rep.run("invariant_sets_hereditary_saturated", lambda: _invariant_sets(L))
        rep.run("vertex_witness", lambda: _witnesses(L))
    emit(rep, args)
    return EXIT_DISAGREE if rep.failed else EXIT_OK


def _ck(L, budget: int) -> Agreement:
    try:
        f = ck_uniqueness_check(L, budget)
    except OracleInfeasible as exc:
        return Agreement("ck_uniqueness", SKIPPED, reason=str(exc))
    return Agreement("ck_uniqueness", AGREE if f.holds else DISAGREE, f.holds, True,
                     details={"witness": f.witness} if f.witness is not None else {})


def _invariant_sets(L) -> Agreement:
    if len(L.action.carrier) > ORACLE_MAX_POINTS:
        return Agreement("invariant_sets", SKIPPED, reason=f"more than {ORACLE_MAX_POINTS} boundary paths")
    f = invariant_sets_give_hereditary_saturated(L)
    return Agreement("invariant_sets", AGREE if f.holds else DISAGREE, f.holds, True,
                     details={"witness": f.witness} if f.witness is not None else {})


def _witnesses(L) -> Agreement:
    """Run the constructive vertex search on each point indicator and on the unit."""
    n = len(L.action.carrier)
    trials = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [(1,) * n]
    found = {}
    ok = True
    for x0 in trials:
        w = vertex_witness(L, x0)
        found[",".join(map(str, x0))] = w.vertex
        ok &= w.confirmed
    return Agreement("vertex_witness", AGREE if ok else DISAGREE, ok, True, details={"found": found})


GROUP_ORDERS = {"c2": 2, "c3": 3, "c4": 4}


def cmd_fuzz(args: argparse.Namespace) -> int:
    if args.count < 0:
        raise InputError("--count must be nonnegative")
    if args.max_carrier < 1:
        raise InputError("--max-carrier must be at least 1")
    try:
        orders = [GROUP_ORDERS[g.strip().lower()] for g in args.group.split(",") if g.strip()]
    except KeyError as exc:
        raise InputError(f"unknown group {exc.args[0]!r}; choose from {', '.join(GROUP_ORDERS)}") from None
    if not orders:
        raise InputError("--group needs at least one group")
    fld = _field(args)
    budget = _budget(args)
    seed = args.seed if args.seed is not None else 0
    tallies = {"pass": 0, "fail": 0, "skip": 0}
    per_check: dict[str, dict[str, int]] = {}
    for i, (a, prov) in enumerate(seeded_corpus(seed, args.count, orders, args.max_carrier)):
        rep = analyze_action(a, fld, budget, f"seed={seed}#{i}")
        rep.run("dynamics_simplicity", lambda: check_dynamics_simplicity(DiscreteDynSystem(a), fld, budget))
        skipped = False
        for name, entry in rep.checks.items():
            v = entry["verdict"]
            if name in _PROPERTIES:
                keys = ("true", "false", "skip")
                bucket = "skip" if v == SKIPPED else "true" if v else "false"
            else:
                keys = ("pass", "fail", "skip")
                bucket = "skip" if v == SKIPPED else "pass" if v else "fail"
            per_check.setdefault(name, dict.fromkeys(keys, 0))[bucket] += 1
            skipped |= v == SKIPPED
        if rep.failed:
            tallies["fail"] += 1
            summary = {"seed": seed, "count": args.count, "tallies": tallies, "checks": per_check,
                       "counterexample": {"index": i, "provenance": jsonable(prov), "instance": rep.payload,
                                          "report": rep.to_json(False)}}
            _emit_summary(summary, args)
            return EXIT_DISAGREE
        tallies["skip" if skipped else "pass"] += 1
    _emit_summary({"seed": seed, "count": args.count, "tallies": tallies, "checks": per_check}, args)
    return EXIT_OK


# checks whose false verdict is a property of the instance, not a failed cross-check
_PROPERTIES = {"g_simple", "max_commutative", "iip_oracle", "simple_oracle"}


def _emit_summary(summary: dict, args: argparse.Namespace) -> None:
    if args.json:
        print(json.dumps(summary, indent=2))
        return
    t = summary["tallies"]
    print(f"seed {summary['seed']}, {summary['count']} instances: "
          f"{t['pass']} passed, {t['fail']} failed, {t['skip']} skipped")
    for name, c in summary["checks"].items():
        print(f"  {name:<22}" + "".join(f"  {k} {v:>4}" for k, v in c.items()))
    if "counterexample" in summary:
        ce = summary["counterexample"]
        print(f"counterexample at index {ce['index']}:")
        print(json.dumps(ce["instance"]))


# -- parser ------------------------------------------------------------------------


def _common(defaults: bool) -> argparse.ArgumentParser:
    """Flags accepted both before and after the subcommand name."""
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--field", type=int, default=d(None), metavar="P",
                   help=f"prime modulus below {MAX_MODULUS} (default: the instance's, else 2)")
    p.add_argument("--budget", type=int, default=d(16), metavar="LOG2",
                   help="oracle enumeration budget as log2 of p^N (default 16)")
    p.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
    p.add_argument("--seed", type=int, default=d(None), help="random seed (fuzz)")
    p.add_argument("--timing", action="store_true", default=d(False),
                   help="include per-check wall time (makes output nondeterministic)")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pskew", parents=[_common(True)],
                                     description="Partial skew group rings: simplicity criteria versus brute force.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common(False)

    p = sub.add_parser("validate", parents=[common], help="check the partial-action axioms of an instance")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", parents=[common], help="run every check on a partial-action instance")
    p.add_argument("path")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("leavitt", parents=[common], help="graph criteria, and with --construct the concrete ring")
    p.add_argument("path", help="graph as JSON or as 'e: v1 -> v2' lines")
    p.add_argument("--construct", action="store_true", help="build the ring (acyclic graphs only)")
    p.set_defaults(func=cmd_leavitt)

    p = sub.add_parser("dynamics", parents=[common], help="topological freeness and minimality versus simplicity")
    p.add_argument("path")
    p.set_defaults(func=cmd_dynamics)

    p = sub.add_parser("fuzz", parents=[common], help="random restricted cyclic actions through every check")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--group", default="c2,c3,c4", help="comma-separated list from c2,c3,c4")
    p.add_argument("--max-carrier", type=int, default=4)
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
