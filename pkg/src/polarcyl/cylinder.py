"""Lattice-level checks for anticanonical polar cylinder certificates.

A certificate lists curve components with Picard classes and positive rational
coefficients and claims ``sum coeff_i * class_i == target`` (usually ``-K``).
Everything here is a necessary numerical condition; geometric properties
(singularities at the base point, A^1-complements, incidence) are either
supplied as input flags or reported as ``UNTESTED``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Literal, Sequence

from . import linalg
from .picard import (LatticeClass, PicardLattice, ResolutionData, crepant_pullback,
                     enumerate_minus_one_classes, intersect, is_log_canonical)

Status = Literal["pass", "fail", "untested", "n/a"]


@dataclass(frozen=True)
class Component:
    name: str
    cls: LatticeClass
    coeff: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))


class CertificateError(ValueError):
    pass


def _check_names(names: Sequence[str]):
    dupes = sorted({n for n in names if names.count(n) > 1})
    if dupes:
        raise CertificateError(f"duplicate component names: {dupes}")


@dataclass(frozen=True)
class CylinderCertificate:
    lattice: PicardLattice
    components: tuple[Component, ...]
    target: LatticeClass | None = None   # None means -K
    source: str = ""

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        _check_names([c.name for c in self.components])
        for c in self.components:
            self.lattice.check(c.cls)
            if c.coeff <= 0:
                raise CertificateError(f"coefficient of {c.name} must be positive, got {c.coeff}")
        if self.target is not None:
            self.lattice.check(self.target)

    @property
    def target_class(self) -> LatticeClass:
        return -self.lattice.K if self.target is None else self.target

    def weighted_sum(self) -> LatticeClass:
        total = self.lattice.zero()
        for c in self.components:
            total = total + c.coeff * c.cls
        return total

    def scaled(self, k) -> CylinderCertificate:
        k = Fraction(k)
        return CylinderCertificate(self.lattice,
                                   tuple(Component(c.name, c.cls, k * c.coeff) for c in self.components),
                                   k * self.target_class, self.source)

    def with_coeff(self, name: str, coeff) -> CylinderCertificate:
        comps = tuple(Component(c.name, c.cls, coeff) if c.name == name else c for c in self.components)
        return CylinderCertificate(self.lattice, comps, self.target, self.source)


@dataclass(frozen=True)
class Verdict:
    valid: bool
    difference: LatticeClass   # weighted sum minus target


def verify_certificate(cert: CylinderCertificate) -> Verdict:
    diff = cert.weighted_sum() - cert.target_class
    return Verdict(diff.is_zero(), diff)


def coefficient_bounds_check(cert: CylinderCertificate) -> bool:
    """Every coefficient is strictly below 1 (necessary on a cubic surface)."""
    return all(c.coeff < 1 for c in cert.components)


@dataclass(frozen=True)
class CountAudit:
    degree: int
    count: int
    rank: int
    at_least_seven: Status
    exactly_eight: Status
    full_rank: Status


def component_count_audit(cert: CylinderCertificate, degree: int | None = None) -> CountAudit:
    """Component counts for a cubic certificate: at least 7, exactly 8, full rank 7."""
    degree = 9 - cert.lattice.n if degree is None else degree
    count = len(cert.components)
    rank = linalg.rank([c.cls.coeffs for c in cert.components]) if cert.components else 0
    if degree != 3:
        return CountAudit(degree, count, rank, "n/a", "n/a", "n/a")

    def st(ok: bool) -> Status:
        return "pass" if ok else "fail"

    return CountAudit(degree, count, rank, st(count >= 7), st(count == 8), st(rank == cert.lattice.rank))


# -- one-parameter families -----------------------------------------------------

@dataclass(frozen=True)
class AffineCoeff:
    const: Fraction
    eps: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "const", Fraction(self.const))
        object.__setattr__(self, "eps", Fraction(self.eps))

    def at(self, e) -> Fraction:
        return self.const + self.eps * Fraction(e)


@dataclass(frozen=True)
class ParametricComponent:
    name: str
    cls: LatticeClass
    coeff: AffineCoeff


@dataclass(frozen=True)
class ParametricCertificate:
    lattice: PicardLattice
    components: tuple[ParametricComponent, ...]
    target: LatticeClass | None = None
    source: str = ""

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        _check_names([c.name for c in self.components])
        for c in self.components:
            self.lattice.check(c.cls)

    @property
    def target_class(self) -> LatticeClass:
        return -self.lattice.K if self.target is None else self.target

    def identity_residuals(self) -> tuple[LatticeClass, LatticeClass]:
        const, lin = self.lattice.zero(), self.lattice.zero()
        for c in self.components:
            const = const + c.coeff.const * c.cls
            lin = lin + c.coeff.eps * c.cls
        return const - self.target_class, lin

    def holds_identically(self) -> bool:
        const, lin = self.identity_residuals()
        return const.is_zero() and lin.is_zero()

    def at(self, e) -> CylinderCertificate:
        return CylinderCertificate(self.lattice,
                                   tuple(Component(c.name, c.cls, c.coeff.at(e)) for c in self.components),
                                   self.target, self.source)


@dataclass(frozen=True)
class Interval:
    """Open interval; ``None`` endpoints are infinite."""

    lo: Fraction | None
    hi: Fraction | None

    def __contains__(self, x) -> bool:
        x = Fraction(x)
        return (self.lo is None or x > self.lo) and (self.hi is None or x < self.hi)

    def midpoint(self) -> Fraction:
        if self.lo is not None and self.hi is not None:
            return (self.lo + self.hi) / 2
        if self.lo is not None:
            return self.lo + 1
        if self.hi is not None:
            return self.hi - 1
        return Fraction(0)


def _open_halfline(c: AffineCoeff, bound: Fraction, below: bool) -> Interval | None:
    """Solutions of ``c(e) > bound`` (or ``< bound`` when ``below``)."""
    if c.eps == 0:
        ok = c.const < bound if below else c.const > bound
        return Interval(None, None) if ok else None
    root = (bound - c.const) / c.eps
    # c(e) > bound  <=> e > root when eps > 0
    greater_side = c.eps > 0
    if below:
        greater_side = not greater_side
    return Interval(root, None) if greater_side else Interval(None, root)


def _intersect(a: Interval, b: Interval) -> Interval | None:
    lo = a.lo if b.lo is None else (b.lo if a.lo is None else max(a.lo, b.lo))
    hi = a.hi if b.hi is None else (b.hi if a.hi is None else min(a.hi, b.hi))
    if lo is not None and hi is not None and lo >= hi:
        return None
    return Interval(lo, hi)


def epsilon_interval(pcert: ParametricCertificate, require_upper_bound: bool = False) -> Interval | None:
    """Exact open set of ``e`` making every coefficient positive (and ``< 1``).

    Returns ``None`` when the set is empty.
    """
    if not pcert.holds_identically():
        raise CertificateError("family does not sum to the target identically in epsilon")
    result: Interval | None = Interval(None, None)
    for c in pcert.components:
        pieces = [_open_halfline(c.coeff, Fraction(0), below=False)]
        if require_upper_bound:
            pieces.append(_open_halfline(c.coeff, Fraction(1), below=True))
        for piece in pieces:
            if piece is None or result is None:
                return None
            result = _intersect(result, piece)
    return result


# -- pencils ---------------------------------------------------------------------

@dataclass(frozen=True)
class MemberComponent:
    name: str
    cls: LatticeClass
    mult: int = 1


@dataclass(frozen=True)
class PencilDescription:
    lattice: PicardLattice
    pencil_class: LatticeClass
    members: tuple[tuple[MemberComponent, ...], ...]
    through_base_point: dict[str, bool] = field(default_factory=dict)
    lines_through_p: tuple[LatticeClass, ...] | None = None
    source: str = ""

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(tuple(m) for m in self.members))
        self.lattice.check(self.pencil_class)
        for member in self.members:
            if not member:
                raise CertificateError("empty degenerate member")
            _check_names([c.name for c in member])
            for c in member:
                self.lattice.check(c.cls)
                if c.mult < 1:
                    raise CertificateError(f"multiplicity of {c.name} must be positive")
        classes: dict[str, LatticeClass] = {}
        for c in self.component_list():
            if classes.setdefault(c.name, c.cls) != c.cls:
                raise CertificateError(f"component {c.name} appears with two different classes")

    def component_list(self) -> list[MemberComponent]:
        return [c for member in self.members for c in member]

    def component_classes(self) -> dict[str, LatticeClass]:
        return {c.name: c.cls for c in self.component_list()}

    def member_class(self, i: int) -> LatticeClass:
        total = self.lattice.zero()
        for c in self.members[i]:
            total = total + c.mult * c.cls
        return total


@dataclass(frozen=True)
class PencilVerdict:
    valid: bool
    differences: tuple[LatticeClass, ...]   # member class minus pencil class


def pencil_member_consistency(p: PencilDescription) -> PencilVerdict:
    diffs = tuple(p.member_class(i) - p.pencil_class for i in range(len(p.members)))
    return PencilVerdict(all(d.is_zero() for d in diffs), diffs)


def anticanonical_multiple(lat: PicardLattice, c: LatticeClass) -> Fraction | None:
    """``k`` with ``c = k (-K)``, or ``None`` if ``c`` is not proportional to ``-K``."""
    anti = -lat.K
    k = c.coeffs[0] / anti.coeffs[0]
    return k if (k * anti) == c else None


def pencil_not_pluri_anticanonical(p: PencilDescription) -> bool:
    k = anticanonical_multiple(p.lattice, p.pencil_class)
    return not (k is not None and k > 0 and k.denominator == 1)


@dataclass
class ConditionResult:
    condition: str
    status: Status
    detail: str = ""


@dataclass
class CubicAudit:
    results: list[ConditionResult]

    def status(self, condition: str) -> Status:
        return next(r.status for r in self.results if r.condition == condition)

    @property
    def passed(self) -> bool:
        """No tested condition failed."""
        return all(r.status != "fail" for r in self.results)


def _is_line(lat: PicardLattice, c: LatticeClass) -> bool:
    return c in set(enumerate_minus_one_classes(lat)) if lat.n <= 8 else False


def cubic_pencil_audit(p: PencilDescription, cert: CylinderCertificate,
                       resolution: ResolutionData | None = None,
                       boundary: Iterable[Fraction] = ()) -> CubicAudit:
    """Numerical proxies for the cubic-surface pencil conditions.

    Conditions on the singularity of the general member, disjointness of the
    components off the base point, and log canonicity (unless resolution data
    is given) are geometric and come back ``untested``.
    """
    lat = p.lattice
    if lat.n != 6:
        raise CertificateError(f"cubic audit needs the degree-3 lattice (n=6), got n={lat.n}")
    out: list[ConditionResult] = []

    def add(cond, ok, detail=""):
        out.append(ConditionResult(cond, "pass" if ok else "fail", detail))

    classes = p.component_classes()
    flagged = [name for name in classes if p.through_base_point.get(name, False)]
    lines_at_p = [name for name in flagged if _is_line(lat, classes[name])]
    declared = list(p.lines_through_p) if p.lines_through_p is not None else None

    n_lines = len(lines_at_p) if declared is None else len({*map(tuple, (c.coeffs for c in declared))})
    add("1", n_lines <= 2, f"{n_lines} line(s) through the base point; three would make it an Eckardt point")
    out.append(ConditionResult("2", "untested", "singularity of the general member at P is geometric"))
    add("3a", len(p.members) == 2, f"{len(p.members)} degenerate member(s)")
    add("3b", len(classes) == 8, f"{len(classes)} distinct component(s)")
    add("4", len(flagged) == len(classes),
        f"{len(flagged)}/{len(classes)} components flagged through the base point")
    out.append(ConditionResult("4-disjoint", "untested", "disjointness off P is geometric"))
    if declared is None:
        out.append(ConditionResult("5", "untested", "no lines through P declared"))
    else:
        comp_set = set(classes.values())
        missing = [str(c) for c in declared if c not in comp_set]
        add("5", not missing, "missing: " + ", ".join(missing) if missing else "all declared lines are components")
    verdict = verify_certificate(cert)
    in_unit = all(0 < c.coeff < 1 for c in cert.components)
    support_ok = {c.name for c in cert.components} <= set(classes)
    add("6", verdict.valid and in_unit and support_ok,
        f"valid={verdict.valid}, coefficients in (0,1)={in_unit}, supported on pencil components={support_ok}")
    if resolution is None:
        out.append(ConditionResult("7", "untested", "log canonicity at P needs resolution data"))
    else:
        coeffs = crepant_pullback(resolution)
        add("7", not is_log_canonical(coeffs, boundary),
            "crepant coefficients " + ", ".join(str(c) for c in coeffs))
    add("8", pencil_not_pluri_anticanonical(p),
        f"pencil class {p.pencil_class} vs -K {-lat.K}")
    return CubicAudit(out)


def ml_common_components(pencils: Sequence[Iterable[str]]) -> set[str]:
    """Components common to the supports of all given pencils."""
    if not pencils:
        raise ValueError("need at least one pencil")
    it = iter(pencils)
    common = set(next(it))
    for support in it:
        common &= set(support)
    return common


def pencil_support(p: PencilDescription) -> set[str]:
    return set(p.component_classes())


# -- pencils of a quintic del Pezzo surface ------------------------------------------

def joining_line(lat: PicardLattice, a: LatticeClass, b: LatticeClass,
                 others: Sequence[LatticeClass]) -> LatticeClass:
    """The unique (-1)-class meeting ``a`` and ``b`` once and missing ``others``."""
    cands = [c for c in enumerate_minus_one_classes(lat)
             if intersect(lat, c, a) == 1 and intersect(lat, c, b) == 1
             and all(intersect(lat, c, o) == 0 for o in others)]
    if len(cands) != 1:
        raise ValueError(f"expected one joining line, found {len(cands)}")
    return cands[0]


def conic_pencil_support(lat: PicardLattice, basis: Sequence[LatticeClass],
                         pairing: tuple[tuple[int, int], tuple[int, int]]) -> list[LatticeClass]:
    """Components of the pencil of lines through the image of a point.

    ``basis`` are four disjoint lines contracted to points ``Q_1..Q_4`` of the
    plane; the pencil is spanned by the lines ``Q_iQ_j`` and ``Q_kQ_l`` for the
    pairing ``((i, j), (k, l))``, and each degenerate member is the joining
    line plus the two contracted lines.
    """
    out = []
    for i, j in pairing:
        others = [basis[k] for k in range(len(basis)) if k not in (i, j)]
        out += [joining_line(lat, basis[i], basis[j], others), basis[i], basis[j]]
    return out
