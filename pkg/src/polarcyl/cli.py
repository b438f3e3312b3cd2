"""Command-line front end.

Every subcommand builds a report ``{command, verdict, source, details}`` and
renders it as text or (with ``--json``) as JSON.  Exit codes: 0 pass, 1 fail,
2 input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from . import cylinder, dualgraph, lnd, nfdescent, picard
from .formats import (FormatError, certificate_from_json, class_to_json, graph_from_json,
                      graph_to_json, is_parametric, load_json, parametric_from_json,
                      parse_class_text, parse_rational, pencil_from_json,
                      resolution_from_json, script_from_json, to_jsonable, validate)
from .groebner import BudgetExceeded, IdealPresentation
from .polynomial import ParseError, parse

EXIT = {"pass": 0, "fail": 1, "error": 2, "untested": 3}


@dataclass
class Report:
    command: str
    verdict: str
    details: dict = field(default_factory=dict)
    source: str | None = None
    message: str = ""

    def to_json(self) -> dict:
        out = {"command": self.command, "verdict": self.verdict, "source": self.source,
               "details": to_jsonable(self.details)}
        if self.message:
            out["message"] = self.message
        return out

    @classmethod
    def from_json(cls, doc: dict) -> Report:
        return cls(doc["command"], doc["verdict"], doc["details"], doc.get("source"), doc.get("message", ""))


class Budget(Exception):
    """A computation ran out of its budget; maps to exit code 3."""


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


def _render_value(v: Any, indent: int) -> list[str]:
    pad = "  " * indent
    if isinstance(v, dict):
        lines = []
        for k, x in v.items():
            if isinstance(x, (dict, list)) and x and not _flat(x):
                lines.append(f"{pad}{k}:")
                lines += _render_value(x, indent + 1)
            else:
                lines.append(f"{pad}{k}: {_inline(x)}")
        return lines
    if isinstance(v, list):
        lines = []
        for x in v:
            if isinstance(x, (dict, list)) and not _flat(x):
                lines.append(f"{pad}-")
                lines += _render_value(x, indent + 1)
            else:
                lines.append(f"{pad}- {_inline(x)}")
        return lines
    return [f"{pad}{_inline(v)}"]


def _flat(x) -> bool:
    if isinstance(x, dict):
        return all(not isinstance(v, (dict, list)) for v in x.values())
    return all(not isinstance(v, (dict, list)) for v in x)


def _inline(x) -> str:
    if isinstance(x, str):
        return "UNTESTED" if x == "untested" else x
    if isinstance(x, bool) or x is None:
        return json.dumps(x)
    if isinstance(x, list):
        return "[" + ", ".join(_inline(v) for v in x) + "]"
    if isinstance(x, dict):
        return "{" + ", ".join(f"{k}: {_inline(v)}" for k, v in x.items()) + "}"
    return str(x)


def render(report: Report, mode: str = "text") -> str:
    doc = report.to_json()
    if mode == "json":
        return json.dumps(doc, indent=2, ensure_ascii=False)
    lines = [f"{report.command}: {report.verdict.upper()}"]
    if report.source:
        lines.append(f"source: {report.source}")
    if report.message:
        lines.append(f"message: {report.message}")
    lines += _render_value(doc["details"], 0)
    return "\n".join(lines)


# -- helpers ----------------------------------------------------------------------------

def _load_fixture(path: str) -> dict:
    doc = load_json(path)
    if not isinstance(doc, dict):
        raise FormatError(f"{path}: expected a JSON object")
    validate(doc, "certificate")
    return doc


def _lattice(n: int) -> picard.PicardLattice:
    try:
        return picard.make_lattice(n)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def _interval_json(iv: cylinder.Interval | None):
    if iv is None:
        return "empty"
    return [None if iv.lo is None else iv.lo, None if iv.hi is None else iv.hi]


def _expected_interval(x):
    if x == "empty":
        return "empty"
    return [None if v is None else parse_rational(v) for v in x]


# -- lattice commands -------------------------------------------------------------------------

def cmd_lines(args) -> Report:
    lat = _lattice(args.n)
    enum = {"lines": picard.enumerate_minus_one_classes, "conics": picard.enumerate_conic_classes,
            "roots": picard.roots}[args.kind]
    classes = enum(lat)
    details = {"n": args.n, "kind": args.kind, "count": len(classes),
               "classes": [str(c) for c in classes]}
    ok = True
    if args.expect is not None:
        details["expected"] = args.expect
        ok = len(classes) == args.expect
    return Report(f"lines --n {args.n}", _verdict(ok), details)


def _class_arg(lat, text: str) -> picard.LatticeClass:
    try:
        return lat.check(parse_class_text(lat, text))
    except ValueError as exc:
        raise FormatError(f"bad class {text!r}: {exc}") from None


def cmd_nef(args) -> Report:
    lat = _lattice(args.n)
    h = _class_arg(lat, args.cls)
    nef = picard.is_nef(lat, h)
    pairings = {str(c): lat.intersect(h, c) for c in picard.mori_generators(lat)}
    details = {"class": str(h), "nef": nef, "ample": picard.is_ample(lat, h),
               "self_intersection": lat.intersect(h, h),
               "negative_pairings": {k: v for k, v in pairings.items() if v < 0}}
    return Report("nef", _verdict(nef), details)


def cmd_nefvalue(args) -> Report:
    lat = _lattice(args.n)
    h = _class_arg(lat, args.cls)
    if not picard.is_nef(lat, h):
        return Report("nefvalue", "fail", {"class": str(h), "nef": False}, message="class is not nef")
    t0 = picard.inverse_nef_value(lat, h)
    details = {"class": str(h), "t0": t0, "adjoint": str(h + t0 * lat.K)}
    try:
        details["type"] = picard.adjoint_kodaira_type(lat, h)
    except ValueError as exc:
        details["type"] = f"undefined ({exc})"
    return Report("nefvalue", "pass", details)


# -- cylinder commands ---------------------------------------------------------------------

def _cyl_verify_certificate(doc) -> tuple[bool, dict]:
    cert = certificate_from_json(doc)
    v = cylinder.verify_certificate(cert)
    return v.valid, {"valid": v.valid, "weighted_sum": str(cert.weighted_sum()),
                     "target": str(cert.target_class), "difference": class_to_json(v.difference),
                     "difference_class": str(v.difference)}


def _cyl_verify_family(doc) -> tuple[bool, dict]:
    fam = parametric_from_json(doc)
    const, lin = fam.identity_residuals()
    ok = fam.holds_identically()
    details: dict = {"identity_in_eps": ok, "constant_residual": str(const), "linear_residual": str(lin)}
    samples = [parse_rational(e) for e in doc.get("expect", {}).get("samples", [])]
    if ok and samples:
        res = {}
        for e in samples:
            v = cylinder.verify_certificate(fam.at(e)) if all(c.coeff.at(e) > 0 for c in fam.components) else None
            res[str(e)] = "nonpositive coefficient" if v is None else v.valid
            ok = ok and v is not None and v.valid
        details["samples"] = res
    return ok, details


def _cyl_verify_pencils(doc) -> tuple[bool, dict]:
    lat = _lattice(doc["n"])
    ok, out = True, {}
    for i, pd in enumerate(doc["pencils"]):
        p = pencil_from_json(lat, pd)
        v = cylinder.pencil_member_consistency(p)
        out[pd.get("name", f"pencil{i + 1}")] = {"consistent": v.valid, "class": str(p.pencil_class)}
        ok = ok and v.valid
    return ok, {"pencils": out}


def cmd_cyl_verify(args) -> Report:
    doc = _load_fixture(args.file)
    kind = doc["kind"]
    if kind == "certificate" and is_parametric(doc):
        kind = "family"
    if kind == "certificate":
        ok, details = _cyl_verify_certificate(doc)
        if "pencil" in doc:
            v = cylinder.pencil_member_consistency(pencil_from_json(_lattice(doc["n"]), doc["pencil"]))
            details["pencil_consistent"] = v.valid
            ok = ok and v.valid
    elif kind == "family":
        ok, details = _cyl_verify_family(doc)
    elif kind == "pencils":
        ok, details = _cyl_verify_pencils(doc)
    else:
        raise FormatError(f"cyl verify does not handle fixtures of kind {kind!r}")
    return Report(f"cyl verify {args.file}", _verdict(ok), details, doc.get("source"))


def _compare(observed: dict, expected: dict) -> dict:
    return {k: {"expected": v, "observed": observed.get(k, "missing")}
            for k, v in expected.items() if observed.get(k) != v}


def _audit_certificate(doc) -> dict:
    cert = certificate_from_json(doc)
    lat = cert.lattice
    obs: dict[str, Any] = {}
    v = cylinder.verify_certificate(cert)
    obs["valid"] = "pass" if v.valid else "fail"
    obs["coefficients_below_1"] = "pass" if cylinder.coefficient_bounds_check(cert) else "fail"
    count = cylinder.component_count_audit(cert)
    obs["count"] = count.exactly_eight if count.degree == 3 else "n/a"
    obs["count_at_least_7"] = count.at_least_seven
    obs["rank"] = count.full_rank
    details: dict[str, Any] = {"degree": count.degree, "components": count.count, "span_rank": count.rank}
    if "pencil" in doc:
        p = pencil_from_json(lat, doc["pencil"])
        obs["pencil_consistent"] = "pass" if cylinder.pencil_member_consistency(p).valid else "fail"
        obs["not_pluri_anticanonical"] = "pass" if cylinder.pencil_not_pluri_anticanonical(p) else "fail"
        k = cylinder.anticanonical_multiple(lat, p.pencil_class)
        details["pencil_class"] = str(p.pencil_class)
        details["anticanonical_multiple"] = k
        if lat.n == 6:
            res = resolution_from_json(doc["resolution"]) if "resolution" in doc else None
            audit = cylinder.cubic_pencil_audit(p, cert, res)
            details["conditions"] = {r.condition: {"status": r.status, "detail": r.detail} for r in audit.results}
            obs.update({r.condition: r.status for r in audit.results})
    details["observed"] = obs
    return details


def _audit_resolution(doc) -> dict:
    res = resolution_from_json(doc["resolution"])
    coeffs = picard.crepant_pullback(res)
    obs = {name: c for name, c in zip(res.names, coeffs)}
    lc = picard.is_log_canonical(coeffs)
    return {"crepant_coefficients": obs, "log_canonical": lc,
            "observed": {"log_canonical": "pass" if lc else "fail",
                         **{f"coeff:{k}": str(v) for k, v in obs.items()}}}


def _audit_pencils(doc) -> dict:
    lat = _lattice(doc["n"])
    supports = {}
    for i, pd in enumerate(doc["pencils"]):
        supports[pd.get("name", f"pencil{i + 1}")] = cylinder.pencil_support(pencil_from_json(lat, pd))
    out: dict[str, Any] = {"supports": {k: sorted(v) for k, v in supports.items()}}
    obs = {}
    for group in doc.get("expect", {}).get("common", []):
        names = group["pencils"]
        missing = [n for n in names if n not in supports]
        if missing:
            raise FormatError(f"unknown pencils {missing}")
        common = sorted(cylinder.ml_common_components([supports[n] for n in names]))
        obs["common:" + ",".join(names)] = common
    out["observed"] = obs
    return out


def cmd_cyl_audit(args) -> Report:
    doc = _load_fixture(args.file)
    kind = doc["kind"]
    expected = doc.get("expect", {}).get("audit")
    if kind == "certificate":
        details = _audit_certificate(doc)
    elif kind == "resolution":
        details = _audit_resolution(doc)
    elif kind == "pencils":
        details = _audit_pencils(doc)
        expected = {"common:" + ",".join(g["pencils"]): sorted(g["components"])
                    for g in doc.get("expect", {}).get("common", [])}
    else:
        raise FormatError(f"cyl audit does not handle fixtures of kind {kind!r}")
    obs = details["observed"]
    if expected:
        mismatches = _compare(obs, expected)
        details["mismatches"] = mismatches
        ok = not mismatches
    else:
        ok = all(v != "fail" for v in obs.values())
    return Report(f"cyl audit {args.file}", _verdict(ok), details, doc.get("source"))


def cmd_cyl_eps(args) -> Report:
    doc = _load_fixture(args.file)
    fam = parametric_from_json(doc)
    if not fam.holds_identically():
        const, lin = fam.identity_residuals()
        return Report(f"cyl eps {args.file}", "fail",
                      {"identity_in_eps": False, "constant_residual": str(const), "linear_residual": str(lin)},
                      doc.get("source"))
    pos = cylinder.epsilon_interval(fam)
    unit = cylinder.epsilon_interval(fam, require_upper_bound=True)
    details: dict[str, Any] = {"positive": _interval_json(pos), "below_one": _interval_json(unit)}
    exp = doc.get("expect", {})
    ok = True
    for key, got in (("positive", pos), ("below_one", unit)):
        if key in exp:
            want = _expected_interval(exp[key])
            ok = ok and _interval_json(got) == want
            details[f"expected_{key}"] = want
    return Report(f"cyl eps {args.file}", _verdict(ok), details, doc.get("source"))


# -- lnd ---------------------------------------------------------------------------------

def cmd_lnd_check(args) -> Report:
    doc = load_json(args.file)
    validate(doc, "ring")
    vars_ = tuple(doc["vars"])
    bound = args.bound or doc.get("bound", lnd.DEFAULT_BOUND)
    try:
        ders = {name: lnd.Derivation.from_mapping(vars_, imgs) for name, imgs in doc["derivations"].items()}
        ideal = IdealPresentation(vars_, tuple(parse(g, vars_) for g in doc.get("ideal", [])),
                                  doc.get("order", "grevlex"))
    except (ParseError, ValueError) as exc:
        raise FormatError(str(exc)) from None
    exp = doc.get("expect", {})
    details: dict[str, Any] = {"bound": bound, "derivations": {}}
    ok, budget = True, False
    for name, d in ders.items():
        try:
            pres = lnd.preserves_ideal(d, ideal)
        except BudgetExceeded as exc:
            raise Budget(str(exc)) from None
        orders = lnd.generator_orders(d, bound)
        certified = all(isinstance(k, int) for k in orders.values())
        budget = budget or not certified
        entry = {"images": {v: str(d.image(v)) for v in vars_},
                 "preserves_ideal": pres, "locally_nilpotent": certified if certified else "untested",
                 "orders": {v: (k if isinstance(k, int) else f"exceeds {k.bound}") for v, k in orders.items()}}
        ok = ok and pres
        if "max_order" in exp and certified:
            entry["max_order_ok"] = max(orders.values()) <= exp["max_order"]
            ok = ok and entry["max_order_ok"]
        if name in exp.get("orders", {}):
            entry["orders_match"] = {v: orders.get(v) for v in exp["orders"][name]} == exp["orders"][name]
            ok = ok and entry["orders_match"]
        details["derivations"][name] = entry
    comm = {}
    for a, b in exp.get("commuting", []):
        if a not in ders or b not in ders:
            raise FormatError(f"unknown derivation in commuting pair {[a, b]}")
        c = lnd.commutator(ders[a], ders[b])
        comm[f"[{a},{b}]"] = "0" if c.is_zero() else str(c)
        ok = ok and c.is_zero()
    if comm:
        details["commutators"] = comm
    verdict = "untested" if budget and ok else _verdict(ok)
    return Report(f"lnd check {args.file}", verdict, details, doc.get("source"))


# -- graphs --------------------------------------------------------------------------------

def cmd_graph_run(args) -> Report:
    gdoc = load_json(args.file)
    g = graph_from_json(gdoc)
    script = script_from_json(load_json(args.script))
    try:
        final = dualgraph.run_script(g, script)
    except dualgraph.GraphMoveError as exc:
        return Report(f"graph run {args.file}", "fail", {"moves": len(script.moves)}, gdoc.get("source"),
                      message=str(exc))
    details: dict[str, Any] = {"moves": len(script.moves), "final": graph_to_json(final)}
    ok = True
    if args.expect:
        expected = graph_from_json(load_json(args.expect))
        ok = dualgraph.is_isomorphic(final, expected)
        details["isomorphic_to_expected"] = ok
    return Report(f"graph run {args.file}", _verdict(ok), details, gdoc.get("source"))


def cmd_graph_fibers(args) -> Report:
    gdoc = load_json(args.file)
    g = graph_from_json(gdoc)
    if not g.fibers:
        raise FormatError("graph has no fibers marked")
    exp = gdoc.get("expect", {})
    ok = True
    fibers = {}
    for f in g.fibers:
        try:
            sol = dualgraph.fiber_multiplicities(g, f)
        except ValueError as exc:
            raise FormatError(str(exc)) from None
        entry: dict[str, Any] = {"consistent": sol.consistent, "integral": sol.integral,
                                 "multiplicities": sol.multiplicities}
        if sol.reason:
            entry["reason"] = sol.reason
        if len(f) >= 2:
            entry["zariski"] = dualgraph.zariski_fiber_check(g, f)
            ok = ok and entry["zariski"]
        ok = ok and sol.consistent
        fibers[",".join(f)] = entry
    details: dict[str, Any] = {"fibers": fibers}
    want = {k: parse_rational(v) for k, v in exp.get("multiplicities", {}).items()}
    if want:
        got = {k: v for e in fibers.values() for k, v in e["multiplicities"].items()}
        mism = {k: {"expected": v, "observed": got.get(k)} for k, v in want.items() if got.get(k) != v}
        details["mismatches"] = mism
        ok = ok and not mism
    nd = {}
    for vs in exp.get("negative_definite", []):
        nd[",".join(vs)] = dualgraph.is_negative_definite(g, vs)
        ok = ok and nd[",".join(vs)]
    if nd:
        details["negative_definite"] = nd
    return Report(f"graph fibers {args.file}", _verdict(ok), details, gdoc.get("source"))


# -- Noether-Fano search ---------------------------------------------------------------------

def cmd_nf_search(args) -> Report:
    try:
        bounds = nfdescent.SearchBounds(args.a_max, args.b_abs, args.n_max)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    rep = nfdescent.exhaustive_search(bounds, workers=args.workers)
    doc = rep.to_dict()
    doc.pop("wall_clock_seconds")
    ok = rep.all_descend()
    details: dict[str, Any] = {**doc, "hit_count": len(rep.hits), "all_hits_descend": ok,
                               "seconds": f"{rep.seconds:.3f}"}
    source = None
    if args.expect:
        exp = load_json(args.expect)
        source = exp.get("source")
        want = [(h["a"], h["b"], list(h["mults"])) for h in exp.get("hits", [])]
        got = [(h["a"], h["b"], h["mults"]) for h in doc["hits"]]
        details["matches_recorded_hits"] = want == got
        ok = ok and want == got
    return Report("nf search", _verdict(ok), details, source)


# -- parser ----------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    ap = argparse.ArgumentParser(prog="polarcyl", description=__doc__.splitlines()[0], parents=[common])
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("lines", parents=[common], help="enumerate (-1)-classes (or conics, roots)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=["lines", "conics", "roots"], default="lines")
    p.add_argument("--expect", type=int, help="expected count")
    p.set_defaults(func=cmd_lines)

    for name, func, helptext in (("nef", cmd_nef, "nef / ample test"),
                                 ("nefvalue", cmd_nefvalue, "inverse nef value t0 and adjoint type")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--class", dest="cls", required=True,
                       help="coefficients 'a,-b1,...' on L,E1..En, a JSON array, or minus_K")
        p.set_defaults(func=func)

    cyl = sub.add_parser("cyl", parents=[common], help="cylinder certificates").add_subparsers(dest="sub", required=True)
    for name, func in (("verify", cmd_cyl_verify), ("audit", cmd_cyl_audit), ("eps", cmd_cyl_eps)):
        p = cyl.add_parser(name, parents=[common])
        p.add_argument("file")
        p.set_defaults(func=func)

    p = sub.add_parser("lnd", parents=[common], help="derivations").add_subparsers(dest="sub", required=True)
    p = p.add_parser("check", parents=[common])
    p.add_argument("file")
    p.add_argument("--bound", type=int, help="nilpotency search bound")
    p.set_defaults(func=cmd_lnd_check)

    gr = sub.add_parser("graph", parents=[common], help="weighted dual graphs").add_subparsers(dest="sub", required=True)
    p = gr.add_parser("run", parents=[common])
    p.add_argument("file")
    p.add_argument("--script", required=True)
    p.add_argument("--expect")
    p.set_defaults(func=cmd_graph_run)
    p = gr.add_parser("fibers", parents=[common])
    p.add_argument("file")
    p.set_defaults(func=cmd_graph_fibers)

    nf = sub.add_parser("nf", parents=[common], help="Noether-Fano system").add_subparsers(dest="sub", required=True)
    p = nf.add_parser("search", parents=[common])
    p.add_argument("--a-max", type=int, required=True)
    p.add_argument("--b-abs", type=int, default=20)
    p.add_argument("--n-max", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--expect", help="recorded hit list to compare against")
    p.set_defaults(func=cmd_nf_search)
    return ap


def dispatch(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else EXIT["error"]
    mode = "json" if args.json else "text"
    func: Callable[[argparse.Namespace], Report] = args.func
    code = None
    try:
        report = func(args)
    except Budget as exc:
        report, code = Report(args.cmd, "error", {}, message=f"budget exceeded: {exc}"), 3
    except BudgetExceeded as exc:
        report, code = Report(args.cmd, "error", {}, message=f"budget exceeded: {exc}"), 3
    except (FormatError, ValueError, KeyError) as exc:
        report, code = Report(args.cmd, "error", {}, message=str(exc)), EXIT["error"]
    print(render(report, mode), file=out)
    return EXIT[report.verdict] if code is None else code


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
