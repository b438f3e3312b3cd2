"""Intersection theory on the Picard lattice of a blowup of the plane.

The lattice of the blowup of P^2 at ``n`` points has basis ``L, E_1, ..., E_n``
with diagonal form ``(+1, -1, ..., -1)``.  A class is stored as its coefficient
vector in that basis, L-coefficient first, with exact rational entries.

Mori-cone based tests (nef, ample, inverse nef value) only make sense for del
Pezzo lattices, i.e. ``n <= 8`` with points in general position; the
generator set used is:

* ``n == 0``: the line class ``L``;
* ``n == 1``: ``E_1`` and the ruling ``L - E_1``;
* ``2 <= n <= 8``: all (-1)-classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Literal, Sequence

from . import linalg

Rational = Fraction | int


@dataclass(frozen=True)
class LatticeClass:
    """Exact coefficient vector in the basis ``(L, E_1, ..., E_n)``."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def _check(self, other: LatticeClass):
        if not isinstance(other, LatticeClass):
            return NotImplemented
        if len(other.coeffs) != len(self.coeffs):
            raise ValueError(f"dimension mismatch: {len(self.coeffs)} vs {len(other.coeffs)}")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return LatticeClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return LatticeClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return LatticeClass(tuple(-a for a in self.coeffs))

    def __mul__(self, k):
        if isinstance(k, LatticeClass):
            return NotImplemented
        k = Fraction(k)
        return LatticeClass(tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __str__(self) -> str:
        out = ""
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            name = "L" if i == 0 else f"E{i}"
            mag = abs(c)
            coef = "" if mag == 1 else (f"({mag})" if mag.denominator != 1 else f"{mag}")
            if not out:
                out = ("-" if c < 0 else "") + coef + name
            else:
                out += (" - " if c < 0 else " + ") + coef + name
        return out or "0"


@dataclass(frozen=True)
class PicardLattice:
    """Pic of P^2 blown up at ``n`` points, form diag(1, -1, ..., -1)."""

    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be nonnegative")

    @property
    def rank(self) -> int:
        return self.n + 1

    @property
    def labels(self) -> tuple[str, ...]:
        return ("L",) + tuple(f"E{i}" for i in range(1, self.n + 1))

    def cls(self, *coeffs: Rational) -> LatticeClass:
        if len(coeffs) > self.rank:
            raise ValueError(f"too many coefficients for n={self.n}")
        return LatticeClass(tuple(coeffs) + (0,) * (self.rank - len(coeffs)))

    def zero(self) -> LatticeClass:
        return self.cls()

    @property
    def L(self) -> LatticeClass:
        return self.cls(1)

    def E(self, i: int) -> LatticeClass:
        """Exceptional class ``E_i`` (1-based)."""
        if not 1 <= i <= self.n:
            raise IndexError(f"E_{i} does not exist for n={self.n}")
        c = [0] * self.rank
        c[i] = 1
        return LatticeClass(tuple(c))

    def sum_E(self, indices: Iterable[int] | None = None) -> LatticeClass:
        idx = range(1, self.n + 1) if indices is None else indices
        out = self.zero()
        for i in idx:
            out = out + self.E(i)
        return out

    @property
    def K(self) -> LatticeClass:
        return self.cls(-3, *([1] * self.n))

    def intersect(self, a: LatticeClass, b: LatticeClass) -> Fraction:
        return intersect(self, a, b)

    def check(self, c: LatticeClass) -> LatticeClass:
        if len(c) != self.rank:
            raise ValueError(f"class of length {len(c)} does not live in lattice of rank {self.rank}")
        return c


def make_lattice(n: int) -> PicardLattice:
    return PicardLattice(n)


def intersect(lat: PicardLattice, a: LatticeClass, b: LatticeClass) -> Fraction:
    lat.check(a)
    lat.check(b)
    ca, cb = a.coeffs, b.coeffs
    return ca[0] * cb[0] - sum((x * y for x, y in zip(ca[1:], cb[1:])), Fraction(0))


def self_intersection(lat: PicardLattice, a: LatticeClass) -> Fraction:
    return intersect(lat, a, a)


def degree(lat: PicardLattice, a: LatticeClass) -> Fraction:
    """Anticanonical degree ``(-K) . a``."""
    return intersect(lat, -lat.K, a)


def adjunction_genus(lat: PicardLattice, c: LatticeClass) -> Fraction:
    """Arithmetic genus ``(c.c + c.K)/2 + 1`` of an integral class."""
    if not c.is_integral():
        raise ValueError(f"adjunction genus needs an integral class, got {c}")
    return (intersect(lat, c, c) + intersect(lat, c, lat.K)) / 2 + 1


# -- bounded enumeration ----------------------------------------------------

def _vectors(k: int, total: int, sq: int, lo: int, hi: int) -> Iterator[tuple[int, ...]]:
    """Integer vectors of length k in [lo, hi]^k with given sum and sum of squares."""
    if k == 0:
        if total == 0 and sq == 0:
            yield ()
        return
    for x in range(lo, hi + 1):
        t, s = total - x, sq - x * x
        r = k - 1
        if s < 0:
            continue
        # Cauchy-Schwarz for the remaining r entries
        if t * t > r * s or (r == 0 and (t or s)):
            continue
        if not (lo * r <= t <= hi * r):
            continue
        for rest in _vectors(r, t, s, lo, hi):
            yield (x,) + rest


def _a_range(n: int, self_int: int, k_deg: int) -> range:
    """Integers a with (k + 3a)^2 <= n (a^2 - s) and a^2 >= s.

    This is Cauchy-Schwarz applied to sum(b) = k + 3a, sum(b^2) = a^2 - s; the
    admissible set is a bounded interval as long as n < 9.
    """
    A = 9 - n
    B = 6 * k_deg
    C = k_deg * k_deg + n * self_int
    disc = B * B - 4 * A * C
    if disc < 0:
        return range(0)
    r = math.isqrt(disc) + 1
    lo = (-B - r) // (2 * A) - 1
    hi = (-B + r) // (2 * A) + 1
    good = [a for a in range(lo, hi + 1)
            if a * a - self_int >= 0 and (k_deg + 3 * a) ** 2 <= n * (a * a - self_int)]
    if not good:
        return range(0)
    return range(min(good), max(good) + 1)


@lru_cache(maxsize=None)
def _classes_with(n: int, self_int: int, k_deg: int) -> tuple[LatticeClass, ...]:
    """All integral c = aL - sum b_i E_i with c.c = self_int and c.K = k_deg."""
    if n > 8:
        raise ValueError(f"infinitely many classes for n={n} > 8")
    out = []
    for a in _a_range(n, self_int, k_deg):
        total = k_deg + 3 * a
        sq = a * a - self_int
        if n == 0:
            if total == 0 and sq == 0:
                out.append(LatticeClass((a,)))
            continue
        bound = math.isqrt(sq)
        for b in _vectors(n, total, sq, -bound, bound):
            out.append(LatticeClass((a,) + tuple(-x for x in b)))
    return tuple(sorted(out, key=lambda c: c.coeffs))


def enumerate_minus_one_classes(lat: PicardLattice) -> tuple[LatticeClass, ...]:
    """All integral classes with ``c.c = -1`` and ``c.K = -1``, canonically sorted."""
    return _classes_with(lat.n, -1, -1)


def enumerate_conic_classes(lat: PicardLattice) -> tuple[LatticeClass, ...]:
    """All integral classes with ``c.c = 0``, ``c.K = -2`` and ``c.L >= 0``."""
    return tuple(c for c in _classes_with(lat.n, 0, -2) if c.coeffs[0] >= 0)


def roots(lat: PicardLattice) -> tuple[LatticeClass, ...]:
    """All integral ``r`` with ``r.r = -2`` and ``r.K = 0``."""
    return _classes_with(lat.n, -2, 0)


def simple_roots(lat: PicardLattice) -> tuple[LatticeClass, ...]:
    """The standard simple system ``E_i - E_{i+1}`` and ``L - E_1 - E_2 - E_3``."""
    out = [lat.E(i) - lat.E(i + 1) for i in range(1, lat.n)]
    if lat.n >= 3:
        out.append(lat.L - lat.E(1) - lat.E(2) - lat.E(3))
    return tuple(out)


def is_root(lat: PicardLattice, r: LatticeClass) -> bool:
    return (r.is_integral() and intersect(lat, r, r) == -2
            and intersect(lat, r, lat.K) == 0)


def reflect(lat: PicardLattice, r: LatticeClass, x: LatticeClass) -> LatticeClass:
    """Weyl reflection ``x -> x + (x.r) r`` in the root ``r``."""
    if not is_root(lat, r):
        raise ValueError(f"{r} is not a root")
    return x + intersect(lat, x, r) * r


# -- nef cone -----------------------------------------------------------------

def mori_generators(lat: PicardLattice) -> tuple[LatticeClass, ...]:
    if lat.n == 0:
        return (lat.L,)
    if lat.n == 1:
        return (lat.E(1), lat.L - lat.E(1))
    if lat.n > 8:
        raise ValueError(f"Mori cone tests need n <= 8, got n={lat.n}")
    return enumerate_minus_one_classes(lat)


def is_nef(lat: PicardLattice, h: LatticeClass) -> bool:
    lat.check(h)
    return all(intersect(lat, h, c) >= 0 for c in mori_generators(lat))


def is_ample(lat: PicardLattice, h: LatticeClass) -> bool:
    lat.check(h)
    return (intersect(lat, h, h) > 0
            and all(intersect(lat, h, c) > 0 for c in mori_generators(lat)))


def inverse_nef_value(lat: PicardLattice, h: LatticeClass) -> Fraction:
    """Largest ``t`` such that ``h + t K`` is nef."""
    if not is_nef(lat, h):
        raise ValueError(f"{h} is not nef")
    anti = -lat.K
    return min(intersect(lat, h, c) / intersect(lat, anti, c) for c in mori_generators(lat))


AdjointType = Literal["zero", "fiber", "big"]


def adjoint_kodaira_type(lat: PicardLattice, h: LatticeClass) -> AdjointType:
    t0 = inverse_nef_value(lat, h)
    m = h + t0 * lat.K
    if m.is_zero():
        return "zero"
    sq = intersect(lat, m, m)
    if sq < 0:
        raise ValueError(f"adjoint class {m} has negative square; input was not nef")
    return "fiber" if sq == 0 else "big"


# -- blowups and pullbacks ----------------------------------------------------

def blowup_lattice(lat: PicardLattice) -> PicardLattice:
    return PicardLattice(lat.n + 1)


def total_transform(c: LatticeClass, source: PicardLattice, target: PicardLattice) -> LatticeClass:
    """Pullback to a lattice with extra exceptional basis vectors (zero on them)."""
    source.check(c)
    if target.n < source.n:
        raise ValueError("target lattice must contain the source lattice")
    return LatticeClass(c.coeffs + (0,) * (target.n - source.n))


def proper_transform(c: LatticeClass, source: PicardLattice, mult: Rational,
                     target: PicardLattice | None = None) -> LatticeClass:
    """Total transform minus ``mult`` times the newest exceptional class."""
    target = target if target is not None else blowup_lattice(source)
    if target.n != source.n + 1:
        raise ValueError("proper transform expects a single new exceptional class")
    return total_transform(c, source, target) - Fraction(mult) * target.E(target.n)


@dataclass(frozen=True)
class ResolutionData:
    """A divisor ``D`` on a surface and its strict transform on a resolution.

    ``exceptional`` are the classes of the exceptional curves in the resolved
    lattice, ``strict`` the class of the strict transform ``D'`` (rational
    coefficients allowed), ``pullback_class`` the total pullback of ``D`` when
    known.
    """

    lattice: PicardLattice
    exceptional: tuple[LatticeClass, ...]
    strict: LatticeClass
    pullback_class: LatticeClass | None = None
    names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        for e in self.exceptional:
            self.lattice.check(e)
            if intersect(self.lattice, e, e) >= 0:
                raise ValueError(f"exceptional class {e} has nonnegative self-intersection")
        self.lattice.check(self.strict)
        if self.names and len(self.names) != len(self.exceptional):
            raise ValueError("one name per exceptional class")

    def gram(self) -> list[list[Fraction]]:
        return [[intersect(self.lattice, a, b) for b in self.exceptional] for a in self.exceptional]


def crepant_pullback(res: ResolutionData) -> tuple[Fraction, ...]:
    """Crepant coefficients ``c_i`` of the exceptional curves.

    Solves ``(K_W + D' + sum c_i E_i) . E_j = 0`` for all ``j``.  The
    discrepancy of ``E_i`` is ``-c_i``.
    """
    lat = res.lattice
    g = res.gram()
    if not linalg.is_negative_definite(g):
        raise linalg.SingularMatrixError("exceptional Gram matrix is not negative definite")
    base = lat.K + res.strict
    rhs = [-intersect(lat, base, e) for e in res.exceptional]
    return tuple(linalg.solve(g, rhs))


def discrepancies(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(-c for c in coeffs)


def horizontal_coefficient(lat: PicardLattice, fiber: LatticeClass, section: LatticeClass,
                           vertical: Sequence[tuple[Rational, LatticeClass]] = ()) -> Fraction:
    """Coefficient of the only horizontal component of a divisor ``D_W = -K_W``.

    ``vertical`` lists ``(coeff, class)`` pairs of the remaining components,
    each of which must have zero intersection with the fiber class.  The
    coefficient follows from ``D_W . F = (-K_W) . F``.
    """
    for coeff, c in vertical:
        if intersect(lat, c, fiber) != 0:
            raise ValueError(f"component {c} is not vertical")
    s_dot_f = intersect(lat, section, fiber)
    if s_dot_f == 0:
        raise ValueError("section does not meet the fiber")
    return intersect(lat, -lat.K, fiber) / s_dot_f


def is_log_canonical(coeffs: Iterable[Rational], boundary: Iterable[Rational] = ()) -> bool:
    return all(Fraction(c) <= 1 for c in coeffs) and all(Fraction(b) <= 1 for b in boundary)
