from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from polarcyl import dualgraph as dg
from polarcyl.dualgraph import GraphMoveError, WeightedDualGraph
from polarcyl.formats import graph_from_json, load_json, script_from_json

from conftest import FIXTURES


def to_nx(g):
    h = nx.Graph()
    for v, w in g.weights.items():
        h.add_node(v, w=w)
    h.add_edges_from(tuple(e) for e in g.edges)
    return h


def nx_isomorphic(g, h):
    return nx.is_isomorphic(to_nx(g), to_nx(h), node_match=lambda a, b: a["w"] == b["w"])


def test_vertex_blowup_twice():
    g = WeightedDualGraph.build({"C": 3})
    g = dg.blowup_at_vertex(dg.blowup_at_vertex(g, "C", "a"), "C", "b")
    assert g.weights == {"C": 1, "a": -1, "b": -1}
    assert g.neighbors("C") == {"a", "b"}


def test_edge_blowups_build_a_chain():
    d = 3
    g = dg.blowup_at_vertex(WeightedDualGraph.build({"S": d}), "S", "v1")
    for i in range(2, d + 2):
        g = dg.blowup_at_edge(g, "S", f"v{i - 1}", f"v{i}")
    assert g.weights["S"] == -1
    assert g.weights[f"v{d + 1}"] == -1
    chain = [f"v{i}" for i in range(1, d + 1)]
    assert all(g.weights[v] == -2 for v in chain)
    assert dg.is_negative_definite(g, chain)


def test_blowdown_errors():
    g = WeightedDualGraph.build({"a": -2, "b": -1, "c": -1, "d": -1, "e": -1},
                                [("b", "c"), ("b", "d"), ("b", "e")])
    with pytest.raises(GraphMoveError):
        dg.blowdown(g, "a")
    with pytest.raises(GraphMoveError):
        dg.blowdown(g, "b")
    with pytest.raises(GraphMoveError):
        dg.blowdown(g, "zz")


def test_multi_edges_and_loops_rejected():
    with pytest.raises(ValueError):
        WeightedDualGraph.build({"a": 0, "b": 0}, [("a", "b"), ("b", "a")])
    with pytest.raises(ValueError):
        WeightedDualGraph.build({"a": 0}, [("a", "a")])


def test_veronese_script_returns_to_the_start():
    start = graph_from_json(load_json(FIXTURES / "vero_d3.json"))
    script = script_from_json(load_json(FIXTURES / "vero_d3_script.json"))
    end = dg.run_script(start, script)
    assert dg.verify_sequence(start, script, start)
    assert nx_isomorphic(end, start)
    assert "S_inf" not in end.weights


def test_fibers_of_the_resolved_sextic_pencil():
    g = graph_from_json(load_json(FIXTURES / "graph_4_8.json"))
    sol = dg.fiber_multiplicities(g, g.fibers[1])
    assert sol.consistent and sol.integral
    assert sol.multiplicities == {"E2": 1, "E3": 2, "E4": 1, "D0": 2}
    assert dg.is_negative_definite(g, ["E2", "E3", "E4"])
    assert not dg.is_negative_definite(g, list(g.fibers[1]))
    assert dg.zariski_fiber_check(g, g.fibers[1])
    other = dg.fiber_multiplicities(g, g.fibers[0])
    assert set(other.multiplicities.values()) == {Fraction(1)}


def test_fiber_rejects_bad_sections():
    g = WeightedDualGraph.build({"S": -1, "A": -2}, [("S", "A")], section="S")
    sol = dg.fiber_multiplicities(g, ["A"])
    assert not sol.consistent
    with pytest.raises(ValueError):
        dg.fiber_multiplicities(g, ["S"])


graph_strategy = st.integers(2, 7).flatmap(lambda n: st.tuples(
    st.lists(st.integers(-4, 2), min_size=n, max_size=n),
    st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n)))


def make_graph(data):
    weights, pairs = data
    names = [f"c{i}" for i in range(len(weights))]
    edges = {frozenset((names[i], names[j])) for i, j in pairs if i != j}
    return WeightedDualGraph(dict(zip(names, weights)), frozenset(edges))


@settings(max_examples=500, deadline=None)
@given(graph_strategy, st.integers(0, 100), st.booleans())
def test_blowup_then_blowdown_restores_graph(data, pick, at_edge):
    g = make_graph(data)
    if at_edge and g.edges:
        v, w = sorted(sorted(e) for e in g.edges)[pick % len(g.edges)]
        h = dg.blowup_at_edge(g, v, w, "new")
    else:
        v = g.vertices[pick % len(g.vertices)]
        h = dg.blowup_at_vertex(g, v, "new")
    back = dg.blowdown(h, "new")
    assert back == g
    assert dg.is_isomorphic(back, g) and nx_isomorphic(back, g)


@settings(max_examples=300, deadline=None)
@given(graph_strategy, st.randoms(use_true_random=False))
def test_isomorphism_agrees_with_networkx(data, rnd):
    g = make_graph(data)
    names = g.vertices
    perm = dict(zip(names, rnd.sample(names, len(names))))
    relabeled = WeightedDualGraph({perm[v]: w for v, w in g.weights.items()},
                                  frozenset(frozenset(perm[v] for v in e) for e in g.edges))
    assert dg.is_isomorphic(g, relabeled)
    h = make_graph((data[0][::-1], data[1]))
    assert dg.is_isomorphic(g, h) == nx_isomorphic(g, h)
