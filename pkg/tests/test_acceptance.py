"""Acceptance criteria AC1-AC8.

Run alone with ``pytest tests/test_acceptance.py``; the terminal summary prints
one PASS/FAIL line per criterion.
"""

import time
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, assume, given, settings, strategies as st

from polarcyl import cylinder as cy
from polarcyl import dualgraph as dg
from polarcyl import lnd, nfdescent as nf, picard
from polarcyl.cylinder import AffineCoeff, ParametricCertificate, ParametricComponent
from polarcyl.dualgraph import WeightedDualGraph
from polarcyl.formats import (certificate_from_json, class_from_json, graph_from_json, load_json, parametric_from_json,
                              parse_rational, pencil_from_json, resolution_from_json, script_from_json)
from polarcyl.groebner import BudgetExceeded, groebner_basis, is_member, normal_form
from polarcyl.lnd import Derivation
from polarcyl.nfdescent import NFState, SearchBounds
from polarcyl.picard import make_lattice
from polarcyl.polynomial import Polynomial, parse

from conftest import FIXTURES

STEP = Fraction(1, 1000)


def counted(n, strategy_args, body):
    """Run ``body`` under hypothesis for ``n`` examples and return how many ran."""
    count = [0]

    @settings(max_examples=n, deadline=None, database=None,
              suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
    @given(st.tuples(*strategy_args))
    def run(args):
        body(*args)
        count[0] += 1

    run()
    return count[0]


# -- AC1 ---------------------------------------------------------------------------

@pytest.mark.criterion("AC1")
@pytest.mark.parametrize("n,expected", [(6, 27), (4, 10)])
def test_ac1_minus_one_class_counts(n, expected):
    picard._classes_with.cache_clear()
    t = time.perf_counter()
    classes = picard.enumerate_minus_one_classes(make_lattice(n))
    elapsed = time.perf_counter() - t
    assert len(classes) == expected
    assert elapsed < 1.0, f"{elapsed:.3f} s"


# -- AC2 ---------------------------------------------------------------------------

CERTIFICATES = ["ex10_degree5", "ex50_n1_k2", "ex50_n1_k3", "ex50_n1_k4", "ex11_degree5",
                "not3_d1", "not3_d2"]
FAMILIES = [f"cuco_family_d{d}" for d in range(4, 9)] + ["misuexa_plane"]


def check_certificate(doc):
    cert = certificate_from_json(doc)
    assert cy.verify_certificate(cert).valid
    if "pencil" in doc:
        assert cy.pencil_member_consistency(pencil_from_json(cert.lattice, doc["pencil"])).valid
    perturbations = 0
    for comp in cert.components:
        for delta in (STEP, -STEP):
            v = cy.verify_certificate(cert.with_coeff(comp.name, comp.coeff + delta))
            assert not v.valid
            assert v.difference == delta * comp.cls
            perturbations += 1
    return perturbations


def check_family(doc):
    fam = parametric_from_json(doc)
    assert fam.holds_identically()
    for e in doc["expect"]["samples"]:
        assert cy.verify_certificate(fam.at(parse_rational(e))).valid
    perturbations = 0
    for i, comp in enumerate(fam.components):
        for field in ("const", "eps"):
            for delta in (STEP, -STEP):
                c = comp.coeff
                bumped = AffineCoeff(c.const + delta, c.eps) if field == "const" else AffineCoeff(c.const, c.eps + delta)
                comps = list(fam.components)
                comps[i] = ParametricComponent(comp.name, comp.cls, bumped)
                assert not ParametricCertificate(fam.lattice, tuple(comps), fam.target).holds_identically()
                perturbations += 1
    return perturbations


@pytest.mark.criterion("AC2")
def test_ac2_cylinder_corpus():
    t = time.perf_counter()
    perturbations = 0
    for name in CERTIFICATES:
        perturbations += check_certificate(load_json(FIXTURES / f"{name}.json"))
    for name in FAMILIES:
        perturbations += check_family(load_json(FIXTURES / f"{name}.json"))
    elapsed = time.perf_counter() - t
    assert perturbations > 100
    assert elapsed < 1.0, f"{elapsed:.3f} s"


@pytest.mark.criterion("AC2")
@pytest.mark.parametrize("deg,m", [(1, 1), (1, 2), (2, 1), (2, 3), (2, 5), (3, 6)])
def test_ac2_plane_curve_identity(deg, m):
    # a degree-deg curve through the m blown-up points: -deg K ~ 3 C' + (3 - deg) sum E
    lat = make_lattice(m)
    strict = lat.cls(deg, *[-1] * m)
    assert deg * -lat.K == 3 * strict + (3 - deg) * lat.sum_E()
    if deg == 3:
        # the exceptional curves drop out of the support: no certificate on C' + sum E
        return
    comps = [cy.Component("C'", strict, 3)]
    comps += [cy.Component(f"E{i}", lat.E(i), 3 - deg) for i in range(1, m + 1)]
    assert cy.verify_certificate(cy.CylinderCertificate(lat, tuple(comps), deg * -lat.K)).valid


# -- AC3 ---------------------------------------------------------------------------

@pytest.mark.criterion("AC3")
@pytest.mark.parametrize("d", range(4, 9))
def test_ac3_epsilon_interval(d):
    fam = parametric_from_json(load_json(FIXTURES / f"cuco_family_d{d}.json"))
    assert fam.lattice.n == 9 - d
    iv = cy.epsilon_interval(fam)
    assert (iv.lo, iv.hi) == (0, Fraction(1, 2))
    assert cy.epsilon_interval(fam, require_upper_bound=True) is None


# -- AC4 ---------------------------------------------------------------------------

def ring(name):
    doc = load_json(FIXTURES / f"{name}.json")
    vars_ = tuple(doc["vars"])
    ders = {k: Derivation.from_mapping(vars_, v) for k, v in doc["derivations"].items()}
    gens = tuple(parse(g, vars_) for g in doc.get("ideal", []))
    return vars_, ders, gens


@pytest.mark.criterion("AC4")
def test_ac4_quadric_cone_derivations():
    vars_, ders, gens = ring("ex_quadric_cone")
    d1, d2 = ders["d1"], ders["d2"]
    q = parse("x*y - z*u", vars_)
    assert gens == (q,)
    for d in (d1, d2):
        assert lnd.apply(d, q).is_zero()
        orders = lnd.generator_orders(d)
        assert all(isinstance(k, int) and k <= 2 for k in orders.values())
    assert lnd.commutator(d1, d2).is_zero()


@pytest.mark.criterion("AC4")
@pytest.mark.parametrize("name", ["d10", "d01", "d11"])
def test_ac4_plane_shift_derivations(name):
    vars_, ders, _ = ring("vfi_plane_shifts")
    alpha, beta = int(name[1]), int(name[2])
    z = Polynomial.var(vars_, "z")
    assert ders[name] == Derivation.from_mapping(vars_, {"x": alpha * z, "y": beta * z})
    orders = lnd.generator_orders(ders[name])
    assert all(isinstance(k, int) and k <= 2 for k in orders.values())
    for other in ders.values():
        assert lnd.commutator(ders[name], other).is_zero()


V3 = ("x", "y", "z")
exps = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
polys3 = st.dictionaries(exps, st.fractions(max_denominator=5).filter(bool), max_size=4).map(
    lambda t: Polynomial(V3, t))
derivations3 = st.tuples(polys3, polys3, polys3).map(lambda imgs: Derivation(V3, imgs))


@pytest.mark.criterion("AC4")
def test_ac4_leibniz_suite():
    def body(d, f, g):
        assert lnd.apply(d, f * g) == lnd.apply(d, f) * g + f * lnd.apply(d, g)
        assert lnd.apply(d, f + g) == lnd.apply(d, f) + lnd.apply(d, g)

    assert counted(1000, (derivations3, polys3, polys3), body) >= 1000


@pytest.mark.criterion("AC4")
def test_ac4_commutator_suite():
    def body(d1, d2, f):
        c = lnd.commutator(d1, d2)
        assert lnd.apply(c, f) == lnd.apply(d1, lnd.apply(d2, f)) - lnd.apply(d2, lnd.apply(d1, f))
        assert (c + lnd.commutator(d2, d1)).is_zero()

    assert counted(1000, (derivations3, derivations3, polys3), body) >= 1000


# -- AC5 ---------------------------------------------------------------------------

@pytest.mark.criterion("AC5")
@pytest.mark.parametrize("m", [1, 2, 3])
def test_ac5_single_blowup(m):
    lat = make_lattice(1)
    res = picard.ResolutionData(lat, (lat.E(1),), lat.cls(m, -m))
    assert picard.crepant_pullback(res) == (m - 1,)


@pytest.mark.criterion("AC5")
def test_ac5_section_coefficient_is_two():
    doc = load_json(FIXTURES / "ex111_resolution.json")
    res = resolution_from_json(doc["resolution"])
    coeffs = dict(zip(res.names, picard.crepant_pullback(res)))
    assert coeffs["S_W"] == 2
    assert not picard.is_log_canonical(coeffs.values())
    for name, value in doc["expect"]["audit"].items():
        if name.startswith("coeff:"):
            assert coeffs[name[6:]] == parse_rational(value)
    # the same number from the fibration alone: both degenerate fibers, weighted by the
    # multiplicities solved on the dual graph, give one fiber class F with S.F = 1
    lat = res.lattice
    classes = {e["name"]: class_from_json(lat, e["class"]) for e in doc["resolution"]["exceptional"]}
    classes.update({c["name"].rstrip("'"): class_from_json(lat, c["class"]) for c in doc["resolution"]["strict"]})
    g = graph_from_json(load_json(FIXTURES / "graph_4_8.json"))
    fiber_classes = set()
    for f in g.fibers:
        sol = dg.fiber_multiplicities(g, f)
        fiber_classes.add(sum((m * classes[v] for v, m in sol.multiplicities.items()), lat.zero()))
    assert len(fiber_classes) == 1
    fiber = fiber_classes.pop()
    assert picard.intersect(lat, fiber, fiber) == 0
    assert picard.horizontal_coefficient(lat, fiber, classes["S_W"]) == 2


@pytest.mark.criterion("AC5")
def test_ac5_gram_matches_dual_graph():
    res = resolution_from_json(load_json(FIXTURES / "ex111_resolution.json")["resolution"])
    g = graph_from_json(load_json(FIXTURES / "graph_4_8.json"))
    names = [n for n in res.names if n in g.weights]
    idx = [res.names.index(n) for n in names]
    gram = res.gram()
    assert [[gram[i][j] for j in idx] for i in idx] == dg.intersection_matrix(g, names)


# -- AC6 ---------------------------------------------------------------------------

@pytest.mark.criterion("AC6")
def test_ac6_veronese_script():
    start = graph_from_json(load_json(FIXTURES / "vero_d3.json"))
    script = script_from_json(load_json(FIXTURES / "vero_d3_script.json"))
    assert start.weights == {"S_inf": 3}
    assert dg.verify_sequence(start, script, start)


@pytest.mark.criterion("AC6")
def test_ac6_fiber_multiplicities():
    g = graph_from_json(load_json(FIXTURES / "graph_4_8.json"))
    fiber = next(f for f in g.fibers if "D0" in f)
    sol = dg.fiber_multiplicities(g, fiber)
    assert sol.consistent
    assert sol.multiplicities["D0"] == 2
    assert [sol.multiplicities[v] for v in ("E2", "E3", "E4")] == [1, 2, 1]
    assert dg.is_negative_definite(g, ["E2", "E3", "E4"])


# -- AC7 ---------------------------------------------------------------------------

@pytest.mark.criterion("AC7")
def test_ac7_states_and_transform():
    assert nf.verify_state(NFState(1, 2, (3, 1))).satisfies
    s = NFState(2, 3, (5, 3, 1))
    assert nf.verify_state(s).satisfies
    t = nf.elementary_transform(s, s.mults.index(3))
    assert t == NFState(2, 2, (5, 1, 1))
    assert nf.verify_state(t).satisfies


@pytest.mark.criterion("AC7")
def test_ac7_exhaustive_search():
    t = time.perf_counter()
    report = nf.exhaustive_search(SearchBounds(10, 20))
    elapsed = time.perf_counter() - t
    assert elapsed < 60.0, f"{elapsed:.1f} s"
    for h in report.hits:
        assert h.state.satisfies() and h.state.is_normalized()
        assert h.state.b < 0
        assert h.state.m > h.state.a + h.state.b
        assert h.descent.strict and h.descent.a < h.state.a
    recorded = load_json(FIXTURES / "nf_search.json")["hits"]
    assert [(h.state.a, h.state.b, list(h.state.mults)) for h in report.hits] == \
        [(h["a"], h["b"], h["mults"]) for h in recorded]


# -- AC8 ---------------------------------------------------------------------------

def vec(n):
    return st.lists(st.integers(-6, 6), min_size=n + 1, max_size=n + 1)


@pytest.mark.criterion("AC8")
def test_ac8_bilinearity():
    data = st.integers(0, 8).flatmap(lambda n: st.tuples(st.just(n), vec(n), vec(n), vec(n),
                                                         st.integers(-5, 5), st.integers(-5, 5)))

    def body(d):
        n, x, y, z, s, t = d
        lat = make_lattice(n)
        x, y, z = lat.cls(*x), lat.cls(*y), lat.cls(*z)
        dot = lambda u, v: picard.intersect(lat, u, v)
        assert dot(x, y) == dot(y, x)
        assert dot(s * x + t * y, z) == s * dot(x, z) + t * dot(y, z)

    assert counted(500, (data,), body) >= 500


@pytest.mark.criterion("AC8")
def test_ac8_weyl_invariance():
    data = st.integers(2, 8).flatmap(lambda n: st.tuples(st.just(n), vec(n), vec(n), st.integers(0, 10 ** 6)))

    def body(d):
        n, x, y, pick = d
        lat = make_lattice(n)
        rts = picard.roots(lat)
        r = rts[pick % len(rts)]
        x, y = lat.cls(*x), lat.cls(*y)
        rx, ry = picard.reflect(lat, r, x), picard.reflect(lat, r, y)
        assert picard.intersect(lat, rx, ry) == picard.intersect(lat, x, y)
        assert picard.reflect(lat, r, lat.K) == lat.K
        assert picard.reflect(lat, r, rx) == x

    assert counted(500, (data,), body) >= 500


NF_SEEDS = [NFState(1, 2, (3, 1)), NFState(2, 3, (5, 3, 1)),
            *(h.state for h in nf.exhaustive_search(SearchBounds(10, 20)).hits)]


@pytest.mark.criterion("AC8")
def test_ac8_transform_involution():
    def body(seed, walk):
        s = seed
        for step in walk:
            i = step % s.n
            t = nf.elementary_transform(s, i)
            if t == nf.NON_GEOMETRIC:
                continue
            assert t.satisfies()
            j = t.mults.index(2 * s.a - s.mults[i])
            assert nf.elementary_transform(t, j) == s
            s = t

    walks = st.lists(st.integers(0, 60), min_size=1, max_size=8)
    assert counted(500, (st.sampled_from(NF_SEEDS), walks), body) >= 500


exps2 = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
small_polys = st.dictionaries(exps2, st.integers(-3, 3).filter(bool), min_size=1, max_size=3).map(
    lambda t: Polynomial(V3, {e: Fraction(c) for e, c in t.items()}))


@pytest.mark.criterion("AC8")
def test_ac8_normal_form_idempotence():
    def body(gens, p, q, order):
        try:
            basis = groebner_basis(gens, order, max_pairs=400)
        except BudgetExceeded:
            assume(False)
        r = normal_form(p, basis, order)
        assert normal_form(r, basis, order) == r
        assert is_member(p - r, basis, order)
        assert normal_form(p + q * gens[0], basis, order) == r

    args = (st.lists(small_polys, min_size=1, max_size=3), small_polys, small_polys,
            st.sampled_from(["grevlex", "lex"]))
    assert counted(500, args, body) >= 500


@pytest.mark.criterion("AC8")
def test_ac8_lattice_blowup_blowdown():
    data = st.integers(0, 8).flatmap(lambda n: st.tuples(st.just(n), vec(n), st.integers(-5, 5)))

    def body(d):
        n, x, m = d
        lat = make_lattice(n)
        up = picard.blowup_lattice(lat)
        c = lat.cls(*x)
        pt = picard.proper_transform(c, lat, m)
        assert lat.cls(*pt.coeffs[:-1]) == c
        assert picard.intersect(up, pt, up.E(n + 1)) == m
        assert picard.intersect(up, pt, pt) == picard.intersect(lat, c, c) - m * m

    assert counted(500, (data,), body) >= 500


@pytest.mark.criterion("AC8")
def test_ac8_graph_blowup_blowdown():
    data = st.integers(1, 7).flatmap(lambda n: st.tuples(
        st.lists(st.integers(-5, 3), min_size=n, max_size=n),
        st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n),
        st.integers(0, 100), st.booleans()))

    def body(d):
        weights, pairs, pick, at_edge = d
        names = [f"c{i}" for i in range(len(weights))]
        g = WeightedDualGraph(dict(zip(names, weights)),
                              frozenset(frozenset((names[i], names[j])) for i, j in pairs if i != j))
        if at_edge and g.edges:
            v, w = sorted(sorted(e) for e in g.edges)[pick % len(g.edges)]
            h = dg.blowup_at_edge(g, v, w, "new")
        else:
            h = dg.blowup_at_vertex(g, names[pick % len(names)], "new")
        assert dg.blowdown(h, "new") == g

    assert counted(500, (data,), body) >= 500
