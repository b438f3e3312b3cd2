"""Weighted dual graphs of SNC curve configurations.

Vertices are curves with integer self-intersection weights and edges are
transversal intersections.  Graphs are simple (no loops, no multi-edges) and
immutable; every move returns a new graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg


@dataclass(frozen=True)
class WeightedDualGraph:
    weights: Mapping[str, int]
    edges: frozenset[frozenset[str]] = frozenset()
    section: str | None = None
    fibers: tuple[tuple[str, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "weights", dict(self.weights))
        edges = frozenset(frozenset(e) for e in self.edges)
        for e in edges:
            if len(e) != 2:
                raise ValueError(f"loop or malformed edge {sorted(e)}")
            missing = e - self.weights.keys()
            if missing:
                raise ValueError(f"edge {sorted(e)} uses unknown vertices {sorted(missing)}")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "fibers", tuple(tuple(f) for f in self.fibers))
        for f in self.fibers:
            if set(f) - self.weights.keys():
                raise ValueError(f"fiber {f} uses unknown vertices")
        if self.section is not None and self.section not in self.weights:
            raise ValueError(f"unknown section vertex {self.section!r}")

    @classmethod
    def build(cls, vertices: Mapping[str, int], edges: Iterable[Sequence[str]] = (),
              section: str | None = None, fibers: Iterable[Sequence[str]] = ()) -> WeightedDualGraph:
        edge_list = [tuple(e) for e in edges]
        seen = set()
        for e in edge_list:
            key = frozenset(e)
            if key in seen:
                raise ValueError(f"multi-edge {e} is not allowed")
            seen.add(key)
        return cls(dict(vertices), frozenset(frozenset(e) for e in edge_list), section,
                   tuple(tuple(f) for f in fibers))

    @classmethod
    def chain(cls, weights: Sequence[int], prefix: str = "C") -> WeightedDualGraph:
        names = [f"{prefix}{i}" for i in range(1, len(weights) + 1)]
        return cls.build(dict(zip(names, weights)), zip(names, names[1:]))

    @property
    def vertices(self) -> list[str]:
        return sorted(self.weights)

    def neighbors(self, v: str) -> set[str]:
        return {w for e in self.edges if v in e for w in e if w != v}

    def has_edge(self, v: str, w: str) -> bool:
        return frozenset((v, w)) in self.edges

    def total_weight(self) -> int:
        return sum(self.weights.values())

    def _replace(self, weights, edges) -> WeightedDualGraph:
        names = set(weights)
        fibers = tuple(tuple(v for v in f if v in names) for f in self.fibers)
        section = self.section if self.section in names else None
        return WeightedDualGraph(weights, frozenset(edges), section, fibers)

    def fresh_name(self, stem: str = "X") -> str:
        for i in itertools.count(1):
            name = f"{stem}{i}"
            if name not in self.weights:
                return name
        raise AssertionError


class GraphMoveError(ValueError):
    pass


def blowup_at_vertex(g: WeightedDualGraph, v: str, new: str | None = None) -> WeightedDualGraph:
    """Blow up a general point of curve ``v``."""
    if v not in g.weights:
        raise GraphMoveError(f"no vertex {v!r}")
    new = new or g.fresh_name()
    if new in g.weights:
        raise GraphMoveError(f"vertex {new!r} already exists")
    weights = dict(g.weights)
    weights[v] -= 1
    weights[new] = -1
    return g._replace(weights, set(g.edges) | {frozenset((v, new))})


def blowup_at_edge(g: WeightedDualGraph, v: str, w: str, new: str | None = None) -> WeightedDualGraph:
    """Blow up the intersection point of ``v`` and ``w``."""
    if not g.has_edge(v, w):
        raise GraphMoveError(f"no edge {v!r}-{w!r}")
    new = new or g.fresh_name()
    if new in g.weights:
        raise GraphMoveError(f"vertex {new!r} already exists")
    weights = dict(g.weights)
    weights[v] -= 1
    weights[w] -= 1
    weights[new] = -1
    edges = set(g.edges) - {frozenset((v, w))}
    edges |= {frozenset((v, new)), frozenset((new, w))}
    return g._replace(weights, edges)


def blowdown(g: WeightedDualGraph, v: str) -> WeightedDualGraph:
    """Contract a (-1)-vertex of valence at most two."""
    if v not in g.weights:
        raise GraphMoveError(f"no vertex {v!r}")
    if g.weights[v] != -1:
        raise GraphMoveError(f"cannot contract {v!r} of weight {g.weights[v]}")
    nbrs = sorted(g.neighbors(v))
    if len(nbrs) > 2:
        raise GraphMoveError(f"contracting {v!r} with {len(nbrs)} neighbors breaks normal crossings")
    if len(nbrs) == 2 and g.has_edge(*nbrs):
        raise GraphMoveError(f"contracting {v!r} would create a cycle with a double point")
    weights = {u: w for u, w in g.weights.items() if u != v}
    for u in nbrs:
        weights[u] += 1
    edges = {e for e in g.edges if v not in e}
    if len(nbrs) == 2:
        edges.add(frozenset(nbrs))
    return g._replace(weights, edges)


# -- scripts --------------------------------------------------------------------

@dataclass(frozen=True)
class Move:
    op: str  # "blowup_vertex" | "blowup_edge" | "blowdown"
    at: tuple[str, ...]
    new: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "at", tuple(self.at))
        arity = {"blowup_vertex": 1, "blowup_edge": 2, "blowdown": 1}
        if self.op not in arity:
            raise ValueError(f"unknown move {self.op!r}")
        if len(self.at) != arity[self.op]:
            raise ValueError(f"{self.op} takes {arity[self.op]} vertex name(s)")


@dataclass(frozen=True)
class GraphScript:
    moves: tuple[Move, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "moves", tuple(self.moves))


def apply_move(g: WeightedDualGraph, m: Move) -> WeightedDualGraph:
    if m.op == "blowup_vertex":
        return blowup_at_vertex(g, m.at[0], m.new)
    if m.op == "blowup_edge":
        return blowup_at_edge(g, m.at[0], m.at[1], m.new)
    return blowdown(g, m.at[0])


def run_script(g: WeightedDualGraph, script: GraphScript) -> WeightedDualGraph:
    for i, m in enumerate(script.moves):
        try:
            g = apply_move(g, m)
        except GraphMoveError as exc:
            raise GraphMoveError(f"move {i} ({m.op} {', '.join(m.at)}): {exc}") from exc
    return g


def is_isomorphic(g: WeightedDualGraph, h: WeightedDualGraph) -> bool:
    """Weighted graph isomorphism by backtracking with weight/valence pruning."""
    if len(g.weights) != len(h.weights) or len(g.edges) != len(h.edges):
        return False

    def signature(graph, v):
        return graph.weights[v], len(graph.neighbors(v))

    if sorted(signature(g, v) for v in g.weights) != sorted(signature(h, v) for v in h.weights):
        return False
    gv = sorted(g.weights, key=lambda v: -len(g.neighbors(v)))
    gn = {v: g.neighbors(v) for v in gv}
    hn = {v: h.neighbors(v) for v in h.weights}
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def extend(i: int) -> bool:
        if i == len(gv):
            return True
        v = gv[i]
        for w in h.weights:
            if w in used or signature(g, v) != signature(h, w):
                continue
            if any((u in mapping) and ((mapping[u] in hn[w]) != (u in gn[v])) for u in gv[:i]):
                continue
            mapping[v] = w
            used.add(w)
            if extend(i + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return extend(0)


def verify_sequence(start: WeightedDualGraph, script: GraphScript, expected: WeightedDualGraph) -> bool:
    try:
        final = run_script(start, script)
    except GraphMoveError:
        return False
    return is_isomorphic(final, expected)


# -- intersection matrix, fibers ---------------------------------------------------

def intersection_matrix(g: WeightedDualGraph, vertices: Sequence[str] | None = None) -> list[list[int]]:
    vs = list(vertices) if vertices is not None else g.vertices
    return [[g.weights[a] if a == b else int(g.has_edge(a, b)) for b in vs] for a in vs]


def is_negative_definite(g: WeightedDualGraph, vertices: Sequence[str] | None = None) -> bool:
    return linalg.is_negative_definite(intersection_matrix(g, vertices))


@dataclass(frozen=True)
class FiberSolution:
    consistent: bool
    multiplicities: dict[str, Fraction]
    integral: bool
    reason: str = ""


def fiber_multiplicities(g: WeightedDualGraph, fiber: Sequence[str], section: str | None = None) -> FiberSolution:
    """Multiplicities ``m`` of the fiber ``F = sum m(v) v``.

    Solves ``F . C_v = 0`` for every fiber vertex together with the
    normalization ``F . S = 1`` for the section ``S``.
    """
    section = section if section is not None else g.section
    if section is None or section not in g.weights:
        raise ValueError("a section vertex is required")
    fiber = list(fiber)
    if section in fiber:
        raise ValueError("the section cannot be a fiber component")
    touching = [v for v in fiber if g.has_edge(v, section)]
    if len(touching) != 1:
        raise ValueError(f"section must meet exactly one fiber component, meets {touching}")
    rows = intersection_matrix(g, fiber)
    rows.append([int(g.has_edge(v, section)) for v in fiber])
    rhs = [0] * len(fiber) + [1]
    x, nullity = linalg.solve_general(rows, rhs)
    if x is None:
        return FiberSolution(False, {}, False, "no solution with F.S = 1")
    if nullity:
        return FiberSolution(False, {}, False, "solution is not unique")
    mults = dict(zip(fiber, x))
    if any(m <= 0 for m in x):
        return FiberSolution(False, mults, False, "nonpositive multiplicity")
    return FiberSolution(True, mults, all(m.denominator == 1 for m in x))


def zariski_fiber_check(g: WeightedDualGraph, fiber: Sequence[str]) -> bool:
    """In a reducible fiber every component has negative self-intersection."""
    fiber = list(fiber)
    if len(fiber) < 2:
        raise ValueError("Zariski's lemma check needs a degenerate fiber (at least two components)")
    return all(g.weights[v] < 0 for v in fiber)
