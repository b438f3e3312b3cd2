"""Derivations of polynomial rings and checks for local nilpotency.

A derivation is given by the image of each variable and acts by the Leibniz
rule.  Local nilpotency is only ever *certified*: if ``d^k x_i = 0`` for every
variable within the bound, then every element of the ring is killed by some
power of ``d``.  Running past the bound yields :class:`ExceedsBound`, which is
not a proof of anything.

Quotient rings ``k[x]/I`` are handled by checking a derivation on the ambient
ring together with :func:`preserves_ideal`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .groebner import IdealPresentation
from .polynomial import Polynomial, divide_exact, parse

DEFAULT_BOUND = 64


@dataclass(frozen=True)
class ExceedsBound:
    """Returned when ``d^k p`` is still nonzero for every ``k <= bound``."""

    bound: int


@dataclass(frozen=True)
class Grading:
    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if any(w < 1 for w in self.weights):
            raise ValueError("grading weights must be positive")

    @classmethod
    def standard(cls, nvars: int) -> Grading:
        return cls((1,) * nvars)


@dataclass(frozen=True)
class Derivation:
    vars: tuple[str, ...]
    images: tuple[Polynomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != len(self.vars):
            raise ValueError("one image per variable")
        for p in self.images:
            if p.vars != self.vars:
                raise ValueError(f"image {p} is over {p.vars}, expected {self.vars}")

    @classmethod
    def from_mapping(cls, vars: Sequence[str], images: Mapping[str, Polynomial | str]) -> Derivation:
        vars = tuple(vars)
        unknown = set(images) - set(vars)
        if unknown:
            raise ValueError(f"images given for unknown variables {sorted(unknown)}")
        out = []
        for v in vars:
            img = images.get(v, Polynomial.zero(vars))
            out.append(parse(img, vars) if isinstance(img, str) else img)
        return cls(vars, tuple(out))

    @classmethod
    def zero(cls, vars: Sequence[str]) -> Derivation:
        return cls(tuple(vars), tuple(Polynomial.zero(vars) for _ in vars))

    @classmethod
    def partial(cls, vars: Sequence[str], name: str) -> Derivation:
        return cls.from_mapping(vars, {name: Polynomial.constant(vars, 1)})

    def image(self, name: str) -> Polynomial:
        return self.images[self.vars.index(name)]

    def __call__(self, p: Polynomial) -> Polynomial:
        return apply(self, p)

    def __add__(self, other: Derivation) -> Derivation:
        self._check(other)
        return Derivation(self.vars, tuple(a + b for a, b in zip(self.images, other.images)))

    def __sub__(self, other: Derivation) -> Derivation:
        self._check(other)
        return Derivation(self.vars, tuple(a - b for a, b in zip(self.images, other.images)))

    def __neg__(self) -> Derivation:
        return Derivation(self.vars, tuple(-a for a in self.images))

    def __rmul__(self, p) -> Derivation:
        """``p * d`` for a polynomial or scalar ``p``."""
        return Derivation(self.vars, tuple(a * p for a in self.images))

    def _check(self, other: Derivation):
        if other.vars != self.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.images)

    def __str__(self):
        terms = [f"({p})*d/d{v}" for v, p in zip(self.vars, self.images) if p]
        return " + ".join(terms) or "0"


def apply(d: Derivation, p: Polynomial) -> Polynomial:
    if p.vars != d.vars:
        raise ValueError(f"variable mismatch: {p.vars} vs {d.vars}")
    out = Polynomial.zero(d.vars)
    for v, img in zip(d.vars, d.images):
        if img:
            dp = p.diff(v)
            if dp:
                out = out + img * dp
    return out


def apply_power(d: Derivation, p: Polynomial, k: int) -> Polynomial:
    for _ in range(k):
        if p.is_zero():
            break
        p = apply(d, p)
    return p


def nilpotency_order(d: Derivation, p: Polynomial, bound: int = DEFAULT_BOUND) -> int | ExceedsBound:
    """Smallest ``k`` with ``d^k p = 0``, or :class:`ExceedsBound`."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    q = p
    for k in range(bound + 1):
        if q.is_zero():
            return k
        if k < bound:
            q = apply(d, q)
    return ExceedsBound(bound)


def generator_orders(d: Derivation, bound: int = DEFAULT_BOUND) -> dict[str, int | ExceedsBound]:
    return {v: nilpotency_order(d, Polynomial.var(d.vars, v), bound) for v in d.vars}


def is_locally_nilpotent_on_generators(d: Derivation, bound: int = DEFAULT_BOUND) -> bool:
    return all(isinstance(k, int) for k in generator_orders(d, bound).values())


def commutator(d1: Derivation, d2: Derivation) -> Derivation:
    d1._check(d2)
    return Derivation(d1.vars, tuple(apply(d1, b) - apply(d2, a)
                                     for a, b in zip(d1.images, d2.images)))


def preserves_ideal(d: Derivation, ideal: IdealPresentation) -> bool:
    """``d(g)`` lies in the ideal for every generator ``g``."""
    if ideal.vars != d.vars:
        raise ValueError(f"variable mismatch: {ideal.vars} vs {d.vars}")
    if not ideal.gens:
        return True
    return all(ideal.contains(apply(d, g)) for g in ideal.gens)


def homogeneous_parts(d: Derivation, grading: Grading) -> dict[int, Derivation]:
    """Split ``d`` into parts raising weighted degree by a fixed amount.

    The term ``c m d/dx_i`` has degree ``wt(m) - wt(x_i)``.
    """
    w = grading.weights
    if len(w) != len(d.vars):
        raise ValueError("grading must give one weight per variable")
    parts: dict[int, dict[str, dict]] = {}
    for i, (v, img) in enumerate(zip(d.vars, d.images)):
        for e, c in img.terms.items():
            deg = sum(a * b for a, b in zip(e, w)) - w[i]
            parts.setdefault(deg, {}).setdefault(v, {})[e] = c
    return {deg: Derivation.from_mapping(d.vars, {v: Polynomial(d.vars, t) for v, t in imgs.items()})
            for deg, imgs in sorted(parts.items())}


def is_homogeneous(d: Derivation, grading: Grading) -> bool:
    return len(homogeneous_parts(d, grading)) <= 1


class NotLocallyNilpotent(ValueError):
    pass


def principal_part(d: Derivation, grading: Grading, bound: int = DEFAULT_BOUND) -> Derivation:
    """Highest-degree homogeneous part of a locally nilpotent derivation.

    Both ``d`` and its principal part are checked on generators; failure means
    either a non-LND input or a bound that is too small.
    """
    if not is_locally_nilpotent_on_generators(d, bound):
        raise NotLocallyNilpotent(f"{d} is not certified locally nilpotent within bound {bound}")
    parts = homogeneous_parts(d, grading)
    if not parts:
        return d
    top = parts[max(parts)]
    if not is_locally_nilpotent_on_generators(top, bound):
        raise NotLocallyNilpotent(f"principal part {top} not certified within bound {bound}")
    return top


def find_slice_pair(d: Derivation, search_space: Sequence[Polynomial]) -> tuple[Polynomial, Polynomial] | None:
    """First ``g`` with ``d^2 g = 0`` and ``h = d g != 0``; ``g/h`` is a slice where ``h != 0``."""
    for g in search_space:
        h = apply(d, g)
        if h and apply(d, h).is_zero():
            return g, h
    return None


@dataclass(frozen=True)
class KernelMultipleReport:
    locally_nilpotent: bool
    orders: dict[str, int | ExceedsBound]
    base_orders: dict[str, int | ExceedsBound]


def kernel_multiple_is_lnd(d: Derivation, p: Polynomial, bound: int = DEFAULT_BOUND) -> KernelMultipleReport:
    """Check ``p * d`` for ``p`` in the kernel of ``d``.

    Since ``(p d)^k x = p^k d^k x`` for such ``p``, the orders on generators
    agree with those of ``d``.
    """
    if apply(d, p):
        raise ValueError(f"{p} is not in the kernel of {d}")
    pd = p * d
    orders = generator_orders(pd, bound)
    return KernelMultipleReport(all(isinstance(k, int) for k in orders.values()),
                                orders, generator_orders(d, bound))


def clear_denominators(images: Mapping[str, tuple[Polynomial, Polynomial]], f: Polynomial,
                       gens: Sequence[Polynomial] | None = None) -> tuple[int, Derivation]:
    """Minimal ``N`` with ``f^N d(a)`` polynomial for each generator ``a``.

    ``images`` maps a variable to ``(numerator, denominator)``; every
    denominator must divide a power of ``f`` times its numerator.  Returns
    ``N`` and the polynomial derivation ``f^N d``.
    """
    vars = f.vars
    if gens is None:
        gens = [Polynomial.var(vars, v) for v in vars]

    # K_v: smallest exponent with f^K * num / den polynomial
    scaled: dict[str, tuple[int, Polynomial]] = {}
    for v, (num, den) in images.items():
        if v not in vars:
            raise ValueError(f"unknown variable {v!r}")
        if den.is_zero():
            raise ZeroDivisionError(f"zero denominator for d({v})")
        for k in range(den.total_degree() + 1):
            q = divide_exact(num * f ** k, den)
            if q is not None:
                scaled[v] = (k, q)
                break
        else:
            raise ValueError(f"denominator of d({v}) does not divide a power of {f}")
    big_k = max((k for k, _ in scaled.values()), default=0)
    # f^big_k * d as a polynomial derivation
    fk = Derivation.from_mapping(vars, {v: q * f ** (big_k - k) for v, (k, q) in scaled.items()})

    n_needed = 0
    for a in gens:
        top = apply(fk, a)
        j = 0
        while j < big_k and top:
            q = divide_exact(top, f)
            if q is None:
                break
            top, j = q, j + 1
        if top.is_zero():
            j = big_k
        n_needed = max(n_needed, big_k - j)
    shift = big_k - n_needed
    fs = f ** shift
    out = {}
    for v in vars:
        q = divide_exact(fk.image(v), fs)
        if q is None:
            raise ValueError(f"f^{n_needed} d({v}) is not a polynomial; the generators do not cover {v}")
        out[v] = q
    return n_needed, Derivation.from_mapping(vars, out)
