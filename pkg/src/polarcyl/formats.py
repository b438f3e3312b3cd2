"""JSON encodings of classes, certificates, pencils, graphs, rings and searches.

Rationals are written as strings ``"p/q"`` (integers as ``"p"``); plain JSON
integers are accepted on input, floats never are.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from .cylinder import (AffineCoeff, Component, CylinderCertificate, MemberComponent,
                       ParametricCertificate, ParametricComponent, PencilDescription)
from .dualgraph import GraphScript, Move, WeightedDualGraph
from .picard import LatticeClass, PicardLattice, ResolutionData, make_lattice

_RATIONAL = re.compile(r"^\s*-?\d+\s*(/\s*\d+\s*)?$")


class FormatError(ValueError):
    """Malformed input document."""


def parse_rational(x: Any) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise FormatError(f"rationals must be integers or 'p/q' strings, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str) and _RATIONAL.match(x):
        try:
            return Fraction(x.replace(" ", ""))
        except ZeroDivisionError:
            raise FormatError(f"zero denominator in {x!r}") from None
    raise FormatError(f"not a rational: {x!r}")


def render_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def to_jsonable(obj: Any) -> Any:
    """Recursively render Fractions as strings; leaves other values alone."""
    if isinstance(obj, Fraction):
        return render_rational(obj)
    if isinstance(obj, LatticeClass):
        return class_to_json(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return obj


# -- schemas -------------------------------------------------------------------------

@lru_cache(maxsize=None)
def schema(name: str) -> dict:
    text = resources.files("polarcyl").joinpath("schemas", f"{name}.schema.json").read_text("utf-8")
    return json.loads(text)


def validate(doc: Any, name: str) -> None:
    try:
        jsonschema.validate(doc, schema(name))
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise FormatError(f"{name} document invalid at {where}: {exc.message}") from None


def load_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON: {exc}") from None


# -- lattice classes -------------------------------------------------------------------

def class_from_json(lat: PicardLattice, arr: Any) -> LatticeClass:
    if isinstance(arr, str):
        if arr == "minus_K":
            return -lat.K
        if arr == "K":
            return lat.K
    if not isinstance(arr, list) or len(arr) != lat.rank:
        raise FormatError(f"class must be an array of {lat.rank} rationals, got {arr!r}")
    return lat.cls(*(parse_rational(x) for x in arr))


def class_to_json(c: LatticeClass) -> list[str]:
    return [render_rational(x) for x in c.coeffs]


def parse_class_text(lat: PicardLattice, text: str) -> LatticeClass:
    """Class from inline text: ``"3,-1,-1"`` or a JSON array."""
    text = text.strip()
    if text.startswith("["):
        try:
            return class_from_json(lat, json.loads(text))
        except json.JSONDecodeError as exc:
            raise FormatError(f"bad class {text!r}: {exc}") from None
    if text in ("minus_K", "K"):
        return class_from_json(lat, text)
    return class_from_json(lat, [p.strip() for p in text.split(",")])


# -- certificates ------------------------------------------------------------------------

def _target(lat: PicardLattice, doc: dict) -> LatticeClass | None:
    t = doc.get("target", "minus_K")
    return None if t == "minus_K" else class_from_json(lat, t)


def is_parametric(doc: dict) -> bool:
    return any(isinstance(c.get("coeff"), dict) for c in doc.get("components", []))


def certificate_from_json(doc: dict) -> CylinderCertificate:
    lat = make_lattice(doc["n"])
    comps = tuple(Component(c["name"], class_from_json(lat, c["class"]), parse_rational(c["coeff"]))
                  for c in doc["components"])
    return CylinderCertificate(lat, comps, _target(lat, doc), doc.get("source", ""))


def parametric_from_json(doc: dict) -> ParametricCertificate:
    lat = make_lattice(doc["n"])
    comps = []
    for c in doc["components"]:
        coeff = c["coeff"]
        if isinstance(coeff, dict):
            a = AffineCoeff(parse_rational(coeff.get("const", 0)), parse_rational(coeff.get("eps", 0)))
        else:
            a = AffineCoeff(parse_rational(coeff))
        comps.append(ParametricComponent(c["name"], class_from_json(lat, c["class"]), a))
    return ParametricCertificate(lat, tuple(comps), _target(lat, doc), doc.get("source", ""))


def certificate_to_json(cert: CylinderCertificate) -> dict:
    return {
        "n": cert.lattice.n,
        "target": "minus_K" if cert.target is None else class_to_json(cert.target),
        "components": [{"name": c.name, "class": class_to_json(c.cls), "coeff": render_rational(c.coeff)}
                       for c in cert.components],
    }


def pencil_from_json(lat: PicardLattice, doc: dict) -> PencilDescription:
    members = tuple(tuple(MemberComponent(c["name"], class_from_json(lat, c["class"]), int(c.get("mult", 1)))
                          for c in member) for member in doc["members"])
    lines = doc.get("lines_through_p")
    return PencilDescription(
        lat, class_from_json(lat, doc["pencil_class"]), members,
        dict(doc.get("through_base_point", {})),
        None if lines is None else tuple(class_from_json(lat, c) for c in lines),
    )


def resolution_from_json(doc: dict) -> ResolutionData:
    lat = make_lattice(doc["n"])
    names = tuple(e["name"] for e in doc["exceptional"])
    strict = lat.zero()
    for c in doc["strict"]:
        strict = strict + parse_rational(c["coeff"]) * class_from_json(lat, c["class"])
    return ResolutionData(lat, tuple(class_from_json(lat, e["class"]) for e in doc["exceptional"]),
                          strict, names=names)


# -- graphs -------------------------------------------------------------------------

def graph_from_json(doc: dict) -> WeightedDualGraph:
    validate(doc, "graph")
    try:
        return WeightedDualGraph.build({v["name"]: int(v["w"]) for v in doc["vertices"]},
                                       [tuple(e) for e in doc.get("edges", [])],
                                       doc.get("section"), doc.get("fibers", []))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def graph_to_json(g: WeightedDualGraph) -> dict:
    out: dict[str, Any] = {
        "vertices": [{"name": v, "w": g.weights[v]} for v in g.vertices],
        "edges": sorted(sorted(e) for e in g.edges),
    }
    if g.section is not None:
        out["section"] = g.section
    if g.fibers:
        out["fibers"] = [list(f) for f in g.fibers]
    return out


def script_from_json(doc: Any) -> GraphScript:
    validate(doc, "script")
    moves = doc["moves"] if isinstance(doc, dict) else doc
    try:
        return GraphScript(tuple(Move(m["op"], tuple(m["at"]), m.get("new")) for m in moves))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def script_to_json(s: GraphScript) -> dict:
    return {"moves": [{"op": m.op, "at": list(m.at), **({"new": m.new} if m.new else {})} for m in s.moves]}
