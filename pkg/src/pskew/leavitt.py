"""Leavitt path algebras as partial skew group rings of the free group on the edges.

The graph-side criteria (condition (L), hereditary and saturated vertex sets)
work for any finite graph.  For finite acyclic graphs the boundary path space
is finite, so the free-group partial action and the ring are built concretely
and the criteria can be compared against brute force.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Iterator, Mapping, Sequence

from .exactalg import ScalarField, Subspace, Vector, contains
from .groups import FreeGroup, FreeWord
from .paction import SetPartialAction, invariant_subsets, is_G_simple, validate_axioms
from .report import AGREE, DISAGREE, SKIPPED, Agreement, Finding, OracleInfeasible
from .skewring import (
    DEFAULT_BUDGET,
    SkewElement,
    SkewRing,
    every_ideal_contains_one_of,
    ideal_generated,
    is_maximal_commutative,
    is_simple_oracle,
)


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    name: str
    src: str
    rng: str


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("vertex names must be unique")
        names = [e.name for e in self.edges]
        if len(set(names)) != len(names):
            raise GraphError("edge names must be unique")
        vs = set(self.vertices)
        for e in self.edges:
            if e.src not in vs or e.rng not in vs:
                raise GraphError(f"edge {e.name} has an endpoint outside the vertex set")

    @classmethod
    def from_pairs(cls, vertices: Iterable[str], pairs: Iterable[tuple[str, str, str]]) -> "Graph":
        return cls(tuple(vertices), tuple(Edge(n, s, r) for n, s, r in pairs))

    @cached_property
    def out_edges(self) -> dict[str, tuple[Edge, ...]]:
        out: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.src].append(e)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def edge(self) -> dict[str, Edge]:
        return {e.name: e for e in self.edges}

    def is_sink(self, v: str) -> bool:
        return not self.out_edges[v]

    def sinks(self) -> list[str]:
        return [v for v in self.vertices if self.is_sink(v)]

    def is_acyclic(self) -> bool:
        return find_cycle(self) is None

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices),
                "edges": [{"name": e.name, "src": e.src, "rng": e.rng} for e in self.edges]}


def graph_from_json(obj: Mapping[str, Any]) -> Graph:
    try:
        return Graph(tuple(str(v) for v in obj["vertices"]),
                     tuple(Edge(str(e["name"]), str(e["src"]), str(e["rng"])) for e in obj.get("edges", [])))
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from None


_EDGE_LINE = re.compile(r"^(\S+)\s*:\s*(\S+)\s*->\s*(\S+)$")
_VERTEX_LINE = re.compile(r"^(\S+)\s*;$")


def graph_from_text(text: str) -> Graph:
    """Parse lines ``e: v1 -> v2`` and lone-vertex lines ``v;`` (``#`` starts a comment)."""
    vertices: list[str] = []
    edges = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _EDGE_LINE.match(line):
            name, s, r = m.groups()
            edges.append(Edge(name, s, r))
            for v in (s, r):
                if v not in vertices:
                    vertices.append(v)
        elif m := _VERTEX_LINE.match(line):
            if m.group(1) not in vertices:
                vertices.append(m.group(1))
        else:
            raise GraphError(f"line {n}: cannot parse {raw!r}")
    return Graph(tuple(vertices), tuple(edges))


def load_graph(text: str) -> Graph:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return graph_from_json(json.loads(text))
    return graph_from_text(text)


# -- graph criteria ------------------------------------------------------------


def find_cycle(g: Graph) -> list[str] | None:
    """Any closed path, as a list of edge names, or None for an acyclic graph."""
    color = {v: 0 for v in g.vertices}
    stack: list[Edge] = []

    def visit(v: str) -> list[str] | None:
        color[v] = 1
        for e in g.out_edges[v]:
            stack.append(e)
            if color[e.rng] == 1:
                start = next(i for i, f in enumerate(stack) if f.src == e.rng)
                return [f.name for f in stack[start:]]
            if color[e.rng] == 0:
                found = visit(e.rng)
                if found:
                    return found
            stack.pop()
        color[v] = 2
        return None

    for v in g.vertices:
        if color[v] == 0:
            found = visit(v)
            if found:
                return found
    return None


def satisfies_condition_L(g: Graph) -> Finding:
    """Every closed path has an exit.  On failure the witness is an exitless cycle (edge names).

    An exitless cycle only visits vertices emitting exactly one edge, so it is a
    cycle of the successor map restricted to those vertices.
    """
    succ = {v: es[0] for v, es in g.out_edges.items() if len(es) == 1}
    state: dict[str, int] = {}
    for start in succ:
        if start in state:
            continue
        path: list[str] = []
        v = start
        while v in succ and v not in state:
            state[v] = 1
            path.append(v)
            v = succ[v].rng
        if v in succ and state.get(v) == 1:
            cyc = path[path.index(v):]
            return Finding(False, [succ[u].name for u in cyc])
        for u in path:
            state[u] = 2
    return Finding(True)


def is_hereditary(g: Graph, H: Iterable[str]) -> bool:
    H = set(H)
    return all(e.rng in H for e in g.edges if e.src in H)


def is_saturated(g: Graph, H: Iterable[str]) -> bool:
    H = set(H)
    return all(v in H for v in g.vertices
               if not g.is_sink(v) and all(e.rng in H for e in g.out_edges[v]))


def hereditary_saturated_closure(g: Graph, S: Iterable[str]) -> frozenset[str]:
    H = set(S)
    changed = True
    while changed:
        changed = False
        for e in g.edges:
            if e.src in H and e.rng not in H:
                H.add(e.rng)
                changed = True
        for v in g.vertices:
            # finite graphs have no infinite emitters; "regular" just means "not a sink"
            if v not in H and not g.is_sink(v) and all(e.rng in H for e in g.out_edges[v]):
                H.add(v)
                changed = True
    return frozenset(H)


def hereditary_saturated_subsets(g: Graph) -> list[frozenset[str]]:
    """All hereditary and saturated vertex sets, by enumerating the power set."""
    out = []
    for r in range(len(g.vertices) + 1):
        for c in itertools.combinations(g.vertices, r):
            if is_hereditary(g, c) and is_saturated(g, c):
                out.append(frozenset(c))
    return out


def only_trivial_hereditary_saturated(g: Graph, cross_check: bool = True) -> Finding:
    full = frozenset(g.vertices)
    witness = None
    for v in g.vertices:
        H = hereditary_saturated_closure(g, {v})
        if H != full:
            witness = H
            break
    result = Finding(witness is None, witness)
    if cross_check and len(g.vertices) <= 12:
        proper = [H for H in hereditary_saturated_subsets(g) if H and H != full]
        if bool(proper) == result.holds:
            raise RuntimeError("singleton closures disagree with subset enumeration")
    return result


def leavitt_is_simple(g: Graph) -> Finding:
    L = satisfies_condition_L(g)
    hs = only_trivial_hereditary_saturated(g)
    witness = None
    if not (L and hs):
        witness = {"condition_L": L, "hereditary_saturated": hs}
    return Finding(L.holds and hs.holds, witness)


# -- boundary paths ----------------------------------------------------------------


@dataclass(frozen=True, order=True)
class BoundaryPath:
    """A finite path ending at a sink, or (with no edges) the lone sink ``end``."""

    edges: tuple[str, ...]
    end: str

    def __str__(self) -> str:
        return ".".join(self.edges) if self.edges else self.end


@dataclass(frozen=True)
class GenPath:
    """A path of length >= 0; length 0 is the vertex ``src == rng``."""

    edges: tuple[str, ...]
    src: str
    rng: str

    @property
    def word(self) -> FreeWord:
        return FreeWord.path(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __str__(self) -> str:
        return ".".join(self.edges) if self.edges else self.src


def all_paths(g: Graph) -> list[GenPath]:
    """Every finite path, vertices (length 0) included.  The graph must be acyclic."""
    if not g.is_acyclic():
        raise GraphError("graph has a cycle; the path space is infinite")
    out = []

    def extend(p: GenPath) -> None:
        out.append(p)
        for e in g.out_edges[p.rng]:
            extend(GenPath(p.edges + (e.name,), p.src, e.rng))

    for v in g.vertices:
        extend(GenPath((), v, v))
    return out


def _starts_with(xi: BoundaryPath, b: GenPath, g: Graph) -> bool:
    if not b.edges:
        return _source(xi, g) == b.src
    return xi.edges[:len(b)] == b.edges


def _source(xi: BoundaryPath, g: Graph) -> str:
    return g.edge[xi.edges[0]].src if xi.edges else xi.end


def _theta(a: GenPath, b: GenPath, xi: BoundaryPath) -> BoundaryPath:
    """xi = b.rest  |->  a.rest."""
    rest = xi.edges[len(b):]
    return BoundaryPath(a.edges + rest, xi.end)


@dataclass
class BoundaryAction:
    graph: Graph
    action: SetPartialAction
    paths: list[GenPath]

    def vertex_set(self, v: str) -> frozenset[BoundaryPath]:
        """X_v = boundary paths starting at v."""
        return frozenset(xi for xi in self.action.carrier if _source(xi, self.graph) == v)


def build_boundary_action(g: Graph) -> BoundaryAction:
    """The free-group partial action on the (finite) boundary path space of an acyclic graph.

    Group elements with nonempty domain are the reduced words a b^-1 with
    r(a) = r(b), where a or b may have length 0.  The domain of a b^-1 is the
    set of boundary paths starting with a; the map replaces a leading b by a.
    """
    paths = all_paths(g)
    carrier = tuple(sorted(
        [BoundaryPath(p.edges, p.rng) for p in paths if p.edges and g.is_sink(p.rng)]
        + [BoundaryPath((), v) for v in g.sinks()],
        key=lambda xi: (len(xi.edges), xi.edges, xi.end)))
    maps = {}
    for a in paths:
        for b in paths:
            if a.rng != b.rng or (not a.edges and not b.edges):
                continue
            if a.edges and b.edges and a.edges[-1] == b.edges[-1]:
                continue  # a b^-1 is not reduced
            c = a.word * b.word.inverse()
            maps[c] = {xi: _theta(a, b, xi) for xi in carrier if _starts_with(xi, b, g)}
    act = SetPartialAction(FreeGroup(tuple(e.name for e in g.edges)), carrier, maps)
    return BoundaryAction(g, act, paths)


# -- the ring ------------------------------------------------------------------------


class ConstructionError(RuntimeError):
    pass


@dataclass
class LeavittRing:
    graph: Graph
    boundary: BoundaryAction
    ring: SkewRing

    @property
    def action(self) -> SetPartialAction:
        return self.boundary.action

    def indicator(self, points: Iterable[BoundaryPath]) -> Vector:
        v = [0] * len(self.action.carrier)
        for xi in points:
            v[self.action.index(xi)] = 1
        return tuple(v)

    def vertex_indicator(self, v: str) -> Vector:
        return self.indicator(self.boundary.vertex_set(v))

    def vertex_element(self, v: str) -> SkewElement:
        """1_v delta_0."""
        return self.ring.r0(self.vertex_indicator(v))


def build_leavitt_ring(g: Graph, fld: ScalarField) -> LeavittRing:
    """Build D_0 x F for an acyclic graph after verifying the construction's identities.

    Checks that the indicators 1_p (p != 0) and 1_v span all of K^X and that
    alpha_p(1_{p^-1} 1_q) = 1_p 1_{pq} for every p, q in the support.
    """
    B = build_boundary_action(g)
    a = B.action
    problems = validate_axioms(a)
    if problems:
        raise ConstructionError(f"boundary action violates the axioms: {problems[0]}")
    ring = SkewRing.from_action(a, fld)
    L = LeavittRing(g, B, ring)
    alg = ring.action
    n = len(a.carrier)
    gens = [alg.unit(p) for p in a.maps] + [L.vertex_indicator(v) for v in g.vertices]
    if Subspace.span(fld, n, gens).rank != n:
        raise ConstructionError("indicator functions do not span K^X")
    G = a.group
    for p in a.support:
        for q in a.support:
            lhs = alg.alpha(p, alg.mul(alg.unit(G.inv(p)), alg.unit(q)))
            rhs = alg.mul(alg.unit(p), alg.unit(G.mul(p, q)))
            if lhs != rhs:
                raise ConstructionError(f"alpha_p(1_p^-1 1_q) != 1_p 1_pq at p={p}, q={q}")
    return L


# -- vertex witness for a nonzero element of D_0 -------------------------------------------


@dataclass
class VertexWitness:
    vertex: str
    start: str
    path: GenPath | None
    steps: list[tuple[str, SkewElement]] = field(default_factory=list)
    confirmed: bool = False

    def to_json(self) -> dict:
        return {"vertex": self.vertex, "start": self.start,
                "path": str(self.path) if self.path is not None else None,
                "confirmed": self.confirmed}


def _cover(L: LeavittRing, v: str, m: int) -> list[GenPath]:
    """Paths c from v with |c| = m, or |c| < m ending at a sink; their X_c partition X_v."""
    return [c for c in L.boundary.paths
            if c.src == v and c.edges
            and (len(c) == m or (len(c) < m and L.graph.is_sink(c.rng)))]


def vertex_witness(L: LeavittRing, x0: Sequence[int]) -> VertexWitness:
    """A vertex v with 1_v d_0 in the ideal generated by x0 d_0, found constructively.

    Pick v with 1_v x0 != 0.  A sink is immediate after rescaling.  Otherwise
    refine X_v into sets X_c (paths c from v) fine enough that x0 is constant on
    each, cut down to some 1_c d_0, and conjugate:
    1_{r(c)} d_0 = (1_{c^-1} d_{c^-1})(1_c d_0)(1_c d_c).
    The answer is then re-checked by plain ideal membership.
    """
    R = L.ring
    fld = R.field
    a = L.action
    x0 = fld.vector(x0)
    if not any(x0):
        raise ValueError("x0 must be nonzero")
    x0d = R.r0(x0)
    ideal_gen = x0d
    v = next(u for u in L.graph.vertices
             if any(x0[a.index(xi)] for xi in L.boundary.vertex_set(u)))
    steps: list[tuple[str, SkewElement]] = []
    if L.graph.is_sink(v):
        lam = x0[a.index(BoundaryPath((), v))]
        y = fld.inv(lam) * (L.vertex_element(v) * x0d)
        if y != L.vertex_element(v):
            raise AssertionError("rescaled sink component is not 1_v")
        steps.append(("rescale", y))
        W = VertexWitness(v, v, None, steps)
    else:
        maxlen = max(len(c) for c in L.boundary.paths if c.src == v)
        for m in range(1, maxlen + 1):
            cover = _cover(L, v, m)
            consts = []
            for c in cover:
                vals = {x0[a.index(xi)] for xi in a.carrier if _starts_with(xi, c, L.graph)}
                if len(vals) != 1:
                    break
                consts.append(vals.pop())
            else:
                break
        c, lam = next((c, k) for c, k in zip(cover, consts) if k)
        one_c = R.r0(L.indicator(xi for xi in a.carrier if _starts_with(xi, c, L.graph)))
        y1 = fld.inv(lam) * (one_c * x0d)
        if y1 != one_c:
            raise AssertionError("cut-down element is not 1_c")
        steps.append(("cut", y1))
        cw = c.word
        left = R.homogeneous(cw.inverse(), L.ring.action.unit(cw.inverse()))
        right = R.homogeneous(cw, L.ring.action.unit(cw))
        y2 = left * y1 * right
        if y2 != L.vertex_element(c.rng):
            raise AssertionError("conjugation did not produce 1_{r(c)} d_0")
        steps.append(("conjugate", y2))
        W = VertexWitness(c.rng, v, c, steps)
    W.confirmed = contains(ideal_generated(R, ideal_gen), L.vertex_element(W.vertex).coeffs)
    return W


# -- cross-checks --------------------------------------------------------------------


def ck_uniqueness_check(L: LeavittRing, budget: int = DEFAULT_BUDGET) -> Finding:
    """Every nonzero ideal contains some 1_v d_0 (brute force over principal ideals)."""
    targets = [L.vertex_element(v).coeffs for v in L.graph.vertices]
    return every_ideal_contains_one_of(L.ring, targets, budget)


def invariant_sets_give_hereditary_saturated(L: LeavittRing) -> Finding:
    """For every invariant S of X, {v : X_v in S} is hereditary and saturated."""
    g = L.graph
    for S in invariant_subsets(L.action):
        Z = {v for v in g.vertices if L.boundary.vertex_set(v) <= S}
        if not (is_hereditary(g, Z) and is_saturated(g, Z)):
            return Finding(False, {"invariant_set": sorted(map(str, S)), "vertices": sorted(Z)})
    return Finding(True)


def check_leavitt_simplicity(L: LeavittRing, budget: int = DEFAULT_BUDGET) -> Agreement:
    crit = leavitt_is_simple(L.graph)
    try:
        simple = is_simple_oracle(L.ring, budget)
    except OracleInfeasible as exc:
        return Agreement("leavitt_simplicity", SKIPPED, reason=str(exc))
    return Agreement("leavitt_simplicity", AGREE if simple.holds == crit.holds else DISAGREE,
                     simple.holds, crit.holds)


def check_g_simple_vs_hereditary_saturated(L: LeavittRing) -> Agreement:
    gs = is_G_simple(L.action)
    hs = only_trivial_hereditary_saturated(L.graph)
    return Agreement("g_simple_vs_hereditary_saturated", AGREE if gs.holds == hs.holds else DISAGREE,
                     gs.holds, hs.holds)


def check_max_commutative_vs_condition_L(L: LeavittRing) -> Agreement:
    mc = is_maximal_commutative(L.ring)
    cl = satisfies_condition_L(L.graph)
    return Agreement("max_commutative_vs_condition_L", AGREE if mc.holds == cl.holds else DISAGREE,
                     mc.holds, cl.holds)


# -- corpus ------------------------------------------------------------------------


def _canonical(n: int, pairs: Sequence[tuple[int, int]]) -> tuple:
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(sorted((perm[s], perm[r]) for s, r in pairs))
        if best is None or key < best:
            best = key
    return (n, best)


def small_acyclic_graphs(max_vertices: int, max_edges: int) -> Iterator[Graph]:
    """Acyclic graphs (parallel edges and isolated vertices allowed) up to isomorphism."""
    seen = set()
    for n in range(1, max_vertices + 1):
        arcs = [(s, r) for s in range(n) for r in range(n) if s != r]
        for k in range(max_edges + 1):
            for pairs in itertools.combinations_with_replacement(arcs, k):
                key = _canonical(n, pairs)
                if key in seen:
                    continue
                seen.add(key)
                g = Graph.from_pairs([f"v{i + 1}" for i in range(n)],
                                     [(f"e{j + 1}", f"v{s + 1}", f"v{r + 1}") for j, (s, r) in enumerate(pairs)])
                if g.is_acyclic():
                    yield g
