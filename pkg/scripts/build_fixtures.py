"""Write the hand-transcribed fixture corpus into fixtures/.

Every class below is typed in directly as coefficients on (L, E1, ..., En); the
library is not used to derive any of them.  The recorded Noether-Fano hit list
is the one exception: it is the output of the search itself.  The synthetic
cubic pencil, fixtures/cubic_synthetic.json, is written by find_cubic_pencil.py.

    python3 scripts/build_fixtures.py [--out fixtures]
"""

import argparse
import json
from pathlib import Path


def cls(a, *bs, n):
    """``a L - sum b_i E_i``; ``bs`` gives b_1, b_2, ... and is padded with zeros."""
    bs = list(bs) + [0] * (n - len(bs))
    return [str(a)] + [str(-b) for b in bs]


def E(i, n):
    v = [0] * n
    v[i - 1] = -1
    return cls(0, *v, n=n)


def comp(name, c, coeff):
    return {"name": name, "class": c, "coeff": coeff}


def fcoeff(const, eps):
    return {"const": const, "eps": eps}


def mem(name, c, mult=1):
    return {"name": name, "class": c, "mult": mult}


def quintic_two_lines():
    n = 4
    l1, l2 = cls(1, 1, 1, n=n), cls(1, 0, 0, 1, 1, n=n)
    return {
        "kind": "certificate",
        "source": "degree-5 surface: pencil of lines through the meeting point of P1P2 and P3P4, "
                  "-K = 3/2 l1' + 3/2 l2' + 1/2 (E1+E2+E3+E4)",
        "n": n,
        "target": "minus_K",
        "components": [comp("l1'", l1, "3/2"), comp("l2'", l2, "3/2")]
                      + [comp(f"E{i}", E(i, n), "1/2") for i in range(1, 5)],
        "pencil": {
            "pencil_class": cls(1, n=n),
            "members": [[mem("l1'", l1), mem("E1", E(1, n)), mem("E2", E(2, n))],
                        [mem("l2'", l2), mem("E3", E(3, n)), mem("E4", E(4, n))]],
        },
        "checks": ["cyl verify", "cyl audit"],
        "expect": {"audit": {"valid": "pass", "coefficients_below_1": "fail", "count": "n/a",
                             "pencil_consistent": "pass", "not_pluri_anticanonical": "pass"}},
    }


def conic_tangent_family(d):
    n = 9 - d
    comps = [comp("C1'", cls(2, *([1] * n), n=n), fcoeff(1, 1)),
             comp("l'", cls(1, n=n), fcoeff(1, -2))]
    comps += [comp(f"E{i}", E(i, n), fcoeff(0, 1)) for i in range(1, n + 1)]
    return {
        "kind": "family",
        "source": f"degree-{d} surface from {n} points on a conic C1 with tangent line l: "
                  "-K = (1+e) C1' + (1-2e) l' + e sum E_i",
        "n": n,
        "target": "minus_K",
        "components": comps,
        "checks": ["cyl verify", "cyl eps"],
        "expect": {"samples": ["1/10", "1/4", "49/100"], "positive": ["0", "1/2"], "below_one": "empty"},
    }


def conic_quintic_family():
    return {
        "kind": "family",
        "source": "plane: conic C1 and unicuspidal quintic C2 meeting at one point, "
                  "-K = (3/2 - e) C1 + (2/5) e C2",
        "n": 0,
        "target": "minus_K",
        "components": [comp("C1", cls(2, n=0), fcoeff("3/2", -1)),
                       comp("C2", cls(5, n=0), fcoeff(0, "2/5"))],
        "checks": ["cyl verify", "cyl eps"],
        "expect": {"samples": ["1/4", "1", "7/5"], "positive": ["0", "3/2"], "below_one": ["1/2", "3/2"]},
    }


def cuspidal_pencil_n1(k):
    """Lines x = 0 and y = 0 of the pencil a y + b x = 0, blown up at ``k`` points."""
    n = k
    on_x = [i for i in range(1, k + 1) if i % 2 == 1]
    on_y = [i for i in range(1, k + 1) if i % 2 == 0]
    lx = cls(1, *[1 if i in on_x else 0 for i in range(1, n + 1)], n=n)
    ly = cls(1, *[1 if i in on_y else 0 for i in range(1, n + 1)], n=n)
    comps = [comp("lx'", lx, "3/2"), comp("ly'", ly, "3/2")]
    comps += [comp(f"E{i}", E(i, n), "1/2") for i in range(1, n + 1)]
    return {
        "kind": "certificate",
        "source": f"pencil a y z^(n-1) + b x^n with n = 1 (lines through (0:0:1)), blown up at {k} points "
                  "split between x = 0 and y = 0",
        "n": n,
        "target": "minus_K",
        "components": comps,
        "pencil": {
            "pencil_class": cls(1, n=n),
            "members": [[mem("lx'", lx)] + [mem(f"E{i}", E(i, n)) for i in on_x],
                        [mem("ly'", ly)] + [mem(f"E{i}", E(i, n)) for i in on_y]],
        },
        "checks": ["cyl verify", "cyl audit"],
        "expect": {"audit": {"valid": "pass", "pencil_consistent": "pass", "not_pluri_anticanonical": "pass"}},
    }


def proper_transform_identity(d):
    """3 C' + (3 - d) sum E_j = -d K for a degree-d curve through m general points."""
    m = {1: 2, 2: 5}[d]
    n = m
    c = cls(d, *([1] * m), n=n)
    target = cls(3 * d, *([d] * m), n=n)
    comps = [comp("C'", c, 3)] + [comp(f"E{j}", E(j, n), 3 - d) for j in range(1, m + 1)]
    return {
        "kind": "certificate",
        "source": f"degree-{d} plane curve C through {m} blown-up points: -{d}K = 3C' + {3 - d} sum E_j",
        "n": n,
        "target": target,
        "components": comps,
        "checks": ["cyl verify"],
    }


def sextic_pencil_quintic():
    n = 4
    gamma = cls(3, 1, 1, 1, 1, n=n)
    q = cls(2, 1, 1, 1, 1, n=n)
    lines = [cls(1, *[1 if j == i else 0 for j in range(1, 5)], n=n) for i in range(1, 5)]
    comps = [comp("Gamma'", gamma, "1/2"), comp("Q'", q, "1/4")]
    comps += [comp(f"l{i}'", c, "1/4") for i, c in enumerate(lines, 1)]
    return {
        "kind": "certificate",
        "source": "degree-5 surface: sextic pencil a (y^2 z - x^3)^2 + b (y^2 - xz)(y^4 - x^4), "
                  "D = 1/4 C' + 1/4 C'' with C' the double cuspidal cubic",
        "n": n,
        "target": "minus_K",
        "components": comps,
        "pencil": {
            "pencil_class": cls(6, 2, 2, 2, 2, n=n),
            "members": [[mem("Gamma'", gamma, 2)],
                        [mem("Q'", q)] + [mem(f"l{i}'", c) for i, c in enumerate(lines, 1)]],
        },
        "checks": ["cyl verify", "cyl audit"],
        "expect": {"audit": {"valid": "pass", "coefficients_below_1": "pass", "pencil_consistent": "pass",
                             "not_pluri_anticanonical": "fail"}},
    }


def sextic_pencil_cubic():
    n = 6
    gamma = cls(3, 1, 1, 1, 1, 1, 1, n=n)
    q = cls(2, 1, 1, 1, 1, 1, n=n)
    lines = {"l15'": cls(1, 1, 0, 0, 0, 1, n=n), "l26'": cls(1, 0, 1, 0, 0, 0, 1, n=n),
             "l36'": cls(1, 0, 0, 1, 0, 0, 1, n=n), "l4'": cls(1, 0, 0, 0, 1, n=n)}
    comps = [comp("Gamma'", gamma, "1/2"), comp("Q'", q, "1/4")]
    comps += [comp(k, c, "1/4") for k, c in lines.items()]
    names = ["Gamma'", "Q'", *lines]
    return {
        "kind": "certificate",
        "source": "the degree-5 sextic pencil transplanted to a cubic surface: pencil class -2K",
        "n": n,
        "target": "minus_K",
        "components": comps,
        "pencil": {
            "pencil_class": cls(6, 2, 2, 2, 2, 2, 2, n=n),
            "members": [[mem("Gamma'", gamma, 2)],
                        [mem("Q'", q)] + [mem(k, c) for k, c in lines.items()]],
            "through_base_point": {k: True for k in names},
            "lines_through_p": [],
        },
        "checks": ["cyl verify", "cyl audit"],
        "expect": {"audit": {"valid": "pass", "8": "fail", "3a": "pass", "3b": "fail", "6": "pass",
                             "2": "untested", "7": "untested"}},
    }


def quintic_pencils():
    n = 4

    def line(i, j):
        return cls(1, *[1 if k in (i, j) else 0 for k in range(1, 5)], n=n)

    curves = {f"E{i}": E(i, n) for i in range(1, 5)}
    curves.update({f"l{i}{j}": line(i, j) for i in range(1, 5) for j in range(i + 1, 5)})

    def pencil(name, klass, a, b):
        return {"name": name, "pencil_class": klass,
                "members": [[mem(x, curves[x]) for x in a], [mem(x, curves[x]) for x in b]]}

    L = cls(1, n=n)
    p123 = cls(2, 1, 1, 1, n=n)
    pencils = [
        pencil("E:12|34", L, ["l12", "E1", "E2"], ["l34", "E3", "E4"]),
        pencil("E:13|24", L, ["l13", "E1", "E3"], ["l24", "E2", "E4"]),
        pencil("E:14|23", L, ["l14", "E1", "E4"], ["l23", "E2", "E3"]),
        pencil("l:12,13|23,E4", p123, ["l12", "l13", "E1"], ["l23", "E4", "l14"]),
        pencil("l:12,23|13,E4", p123, ["l12", "l23", "E2"], ["l13", "E4", "l24"]),
        pencil("l:13,23|12,E4", p123, ["l13", "l23", "E3"], ["l12", "E4", "l34"]),
        pencil("extra", cls(2, 0, 1, 1, 1, n=n), ["E1", "l13", "l24"], ["E3", "l23", "l34"]),
    ]
    six = [p["name"] for p in pencils[:6]]
    return {
        "kind": "pencils",
        "source": "degree-5 surface: conic pencils from two contractions to the plane; "
                  "common components of their supports",
        "n": n,
        "pencils": pencils,
        "checks": ["cyl verify", "cyl audit"],
        "expect": {"common": [
            {"pencils": six[:3], "components": ["E1", "E2", "E3", "E4"]},
            {"pencils": six[3:], "components": ["E4", "l12", "l13", "l23"]},
            {"pencils": six, "components": ["E4"]},
            {"pencils": six + ["extra"], "components": []},
        ]},
    }


def cusp_resolution():
    # W: blowup of the degree-5 surface at P and four further infinitely near points;
    # basis L, e1..e4, f1..f5
    n = 9

    def c(a, es, fs):
        return [str(a)] + [str(-x) for x in es] + [str(-x) for x in fs]

    exc = [("E1", c(0, [0] * 4, [-1, 1, 1, 1, 1])),
           ("E4", c(0, [0] * 4, [0, -1, 1, 0, 0])),
           ("E3", c(0, [0] * 4, [0, 0, -1, 1, 0])),
           ("E2", c(0, [0] * 4, [0, 0, 0, -1, 1])),
           ("S_W", c(0, [0] * 4, [0, 0, 0, 0, -1]))]
    strict = [{"name": "D0'", "class": c(3, [1] * 4, [2, 1, 1, 0, 0]), "coeff": "1/2"},
              {"name": "D1'", "class": c(2, [1] * 4, [1, 0, 0, 0, 0]), "coeff": "1/4"}]
    for i in range(4):
        es = [0] * 4
        es[i] = 1
        strict.append({"name": f"D{i + 2}'", "class": c(1, es, [1, 0, 0, 0, 0]), "coeff": "1/4"})
    return {
        "kind": "resolution",
        "source": "minimal resolution of the base point of the sextic pencil on the degree-5 surface; "
                  "crepant pullback of D = 1/4 C' + 1/4 C''",
        "n": n,
        "resolution": {"n": n, "exceptional": [{"name": k, "class": v} for k, v in exc], "strict": strict},
        "checks": ["cyl audit"],
        "expect": {"audit": {"log_canonical": "fail", "coeff:S_W": "2", "coeff:E1": "5/4",
                             "coeff:E2": "7/4", "coeff:E3": "3/2", "coeff:E4": "3/4"}},
    }


def graph_4_8():
    vertices = [("E1", -5), ("S_W", -1), ("E2", -2), ("E3", -2), ("E4", -2), ("D0", -1)]
    vertices += [(f"D{i}", -1) for i in range(1, 6)]
    edges = [["E1", "S_W"], ["S_W", "E2"], ["E2", "E3"], ["E3", "E4"], ["E3", "D0"]]
    edges += [["E1", f"D{i}"] for i in range(1, 6)]
    return {
        "source": "dual graph of the two degenerate fibers and the (-1)-section S_W on the resolution "
                  "of the sextic pencil",
        "vertices": [{"name": v, "w": w} for v, w in vertices],
        "edges": edges,
        "section": "S_W",
        "fibers": [["E1", "D1", "D2", "D3", "D4", "D5"], ["E2", "E3", "E4", "D0"]],
        "checks": ["graph fibers {file}"],
        "expect": {"multiplicities": {"E1": "1", **{f"D{i}": "1" for i in range(1, 6)},
                                      "E2": "1", "E3": "2", "E4": "1", "D0": "2"},
                   "negative_definite": [["E2", "E3", "E4"]]},
    }


def veronese(d):
    moves = [{"op": "blowup_vertex", "at": ["S_inf"], "new": "v1"}]
    for k in range(2, d + 2):
        moves.append({"op": "blowup_edge", "at": ["S_inf", f"v{k - 1}"], "new": f"v{k}"})
    moves.append({"op": "blowdown", "at": ["S_inf"]})
    moves.append({"op": "blowup_vertex", "at": [f"v{d + 1}"], "new": "S'_inf"})
    for k in range(d + 1, 0, -1):
        moves.append({"op": "blowdown", "at": [f"v{k}"]})
    graph = {
        "source": f"Veronese cone, d = {d}: the section at infinity [{d}] is exchanged for another by "
                  "blowups and blowdowns",
        "vertices": [{"name": "S_inf", "w": d}],
        "edges": [],
        "checks": [f"graph run {{file}} --script fixtures/vero_d{d}_script.json --expect fixtures/vero_d{d}.json"],
    }
    return graph, {"source": graph["source"], "moves": moves}


def quadric_cone_ring():
    return {
        "source": "affine cone over the quadric xy = zu with d1 = u d/dx + y d/dz and d2 = u d/dy + x d/dz",
        "vars": ["x", "y", "z", "u"],
        "ideal": ["x*y - z*u"],
        "derivations": {"d1": {"x": "u", "z": "y"}, "d2": {"y": "u", "z": "x"}},
        "checks": ["lnd check {file}"],
        "expect": {"commuting": [["d1", "d2"]], "max_order": 2,
                   "orders": {"d1": {"x": 2, "y": 1, "z": 2, "u": 1}, "d2": {"x": 1, "y": 2, "z": 2, "u": 1}}},
    }


def plane_shift_ring():
    ders = {f"d{a}{b}": {k: "z" for k, on in (("x", a), ("y", b)) if on} for a, b in ((1, 0), (0, 1), (1, 1))}
    return {
        "source": "A^2_+ action (x, y, z) -> (x + a z, y + b z, z) with derivations a z d/dx + b z d/dy",
        "vars": ["x", "y", "z"],
        "ideal": [],
        "derivations": ders,
        "checks": ["lnd check {file}"],
        "expect": {"commuting": [["d10", "d01"], ["d10", "d11"], ["d01", "d11"]], "max_order": 2},
    }


def nf_search():
    from polarcyl.nfdescent import SearchBounds, exhaustive_search

    rep = exhaustive_search(SearchBounds(10, 20))
    doc = rep.to_dict()
    return {
        "source": "normalized solutions of sum m = 3a + 2b - 3, sum m^2 = 3a^2 + 4ab - 1 with a + 2b >= 0, "
                  "recorded from the exhaustive run a <= 10, |b| <= 20",
        "bounds": doc["bounds"],
        "hits": [{"a": h["a"], "b": h["b"], "mults": h["mults"], "descent": h["descent"]} for h in doc["hits"]],
        "checks": ["nf search --a-max 10 --b-abs 20 --expect {file}"],
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "fixtures"))
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(exist_ok=True)
    docs = {
        "ex10_degree5.json": quintic_two_lines(),
        "misuexa_plane.json": conic_quintic_family(),
        "ex50_n1_k2.json": cuspidal_pencil_n1(2),
        "ex50_n1_k3.json": cuspidal_pencil_n1(3),
        "ex50_n1_k4.json": cuspidal_pencil_n1(4),
        "not3_d1.json": proper_transform_identity(1),
        "not3_d2.json": proper_transform_identity(2),
        "ex11_degree5.json": sextic_pencil_quintic(),
        "ex11_cubic_transplant.json": sextic_pencil_cubic(),
        "mli_pencils.json": quintic_pencils(),
        "ex111_resolution.json": cusp_resolution(),
        "graph_4_8.json": graph_4_8(),
        "ex_quadric_cone.json": quadric_cone_ring(),
        "vfi_plane_shifts.json": plane_shift_ring(),
        "nf_search.json": nf_search(),
    }
    for d in range(4, 9):
        docs[f"cuco_family_d{d}.json"] = conic_tangent_family(d)
    graph, script = veronese(3)
    docs["vero_d3.json"] = graph
    docs["vero_d3_script.json"] = script
    for name, doc in docs.items():
        (out / name).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
        print(out / name)


if __name__ == "__main__":
    main()
