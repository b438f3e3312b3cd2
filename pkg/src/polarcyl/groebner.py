"""Buchberger's algorithm and ideal membership.

Pairs are pruned with the coprime-leading-monomial criterion and the chain
criterion.  The number of S-pairs reduced is capped by ``max_pairs``; going
over raises :class:`BudgetExceeded` instead of looping.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Sequence

from .polynomial import Exponent, MonomialOrder, Polynomial, get_order

DEFAULT_MAX_PAIRS = 20_000


class BudgetExceeded(RuntimeError):
    pass


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def normal_form(p: Polynomial, basis: Sequence[Polynomial], order: str | MonomialOrder = "grevlex") -> Polynomial:
    """Fully reduced remainder of ``p`` modulo ``basis``."""
    key = get_order(order)
    leads = [(g.leading_term(key), g) for g in basis if g]
    remainder: dict[Exponent, object] = {}
    r = p
    while r:
        e, c = r.leading_term(key)
        for (ge, gc), g in leads:
            if _divides(ge, e):
                shift = tuple(x - y for x, y in zip(e, ge))
                r = r - g.mul_monomial(shift, c / gc)
                break
        else:
            remainder[e] = c
            r = r - Polynomial.monomial(p.vars, e, c)
    return Polynomial(p.vars, remainder)


def s_polynomial(f: Polynomial, g: Polynomial, order: str | MonomialOrder = "grevlex") -> Polynomial:
    key = get_order(order)
    (fe, fc), (ge, gc) = f.leading_term(key), g.leading_term(key)
    m = _lcm(fe, ge)
    return (f.mul_monomial(tuple(a - b for a, b in zip(m, fe)), 1 / fc)
            - g.mul_monomial(tuple(a - b for a, b in zip(m, ge)), 1 / gc))


def groebner_basis(gens: Sequence[Polynomial], order: str | MonomialOrder = "grevlex",
                   max_pairs: int = DEFAULT_MAX_PAIRS) -> list[Polynomial]:
    """Reduced Groebner basis, monic, sorted by decreasing leading monomial."""
    key = get_order(order)
    basis = [g.monic(key) for g in gens if g]
    if not basis:
        return []
    pairs = {(i, j) for i in range(len(basis)) for j in range(i)}
    reduced = 0
    while pairs:
        # smallest lcm first (normal selection strategy)
        i, j = min(pairs, key=lambda ij: (key(_lcm(basis[ij[0]].leading_term(key)[0],
                                                     basis[ij[1]].leading_term(key)[0])), ij))
        pairs.discard((i, j))
        ei, ej = basis[i].leading_term(key)[0], basis[j].leading_term(key)[0]
        m = _lcm(ei, ej)
        if all(a + b == c for a, b, c in zip(ei, ej, m)):
            continue
        if any(k not in (i, j) and _divides(basis[k].leading_term(key)[0], m)
               and (max(i, k), min(i, k)) not in pairs and (max(j, k), min(j, k)) not in pairs
               for k in range(len(basis))):
            continue
        reduced += 1
        if reduced > max_pairs:
            raise BudgetExceeded(f"Groebner basis needs more than {max_pairs} S-pair reductions")
        h = normal_form(s_polynomial(basis[i], basis[j], key), basis, key)
        if h:
            basis.append(h.monic(key))
            n = len(basis) - 1
            pairs.update((n, k) for k in range(n))
    return _reduce(basis, key)


def _reduce(basis: list[Polynomial], key: MonomialOrder) -> list[Polynomial]:
    # drop elements whose leading monomial is divisible by another's
    minimal: list[Polynomial] = []
    for g in sorted(basis, key=lambda p: key(p.leading_term(key)[0])):
        e = g.leading_term(key)[0]
        if not any(_divides(h.leading_term(key)[0], e) for h in minimal):
            minimal.append(g)
    out = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        out.append(normal_form(g, others, key).monic(key))
    return sorted(out, key=lambda p: key(p.leading_term(key)[0]), reverse=True)


def is_member(p: Polynomial, basis: Sequence[Polynomial], order: str | MonomialOrder = "grevlex") -> bool:
    return normal_form(p, basis, order).is_zero()


@dataclass
class IdealPresentation:
    """Generators of an ideal with a lazily computed, lock-guarded basis."""

    vars: tuple[str, ...]
    gens: tuple[Polynomial, ...]
    order: str = "grevlex"
    max_pairs: int = DEFAULT_MAX_PAIRS
    _basis: list[Polynomial] | None = field(default=None, init=False, repr=False, compare=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False, repr=False, compare=False)

    def __post_init__(self):
        self.vars = tuple(self.vars)
        self.gens = tuple(self.gens)
        for g in self.gens:
            if g.vars != self.vars:
                raise ValueError(f"generator {g} is over {g.vars}, expected {self.vars}")

    @property
    def basis(self) -> list[Polynomial]:
        with self._lock:
            if self._basis is None:
                self._basis = groebner_basis(self.gens, self.order, self.max_pairs)
            return list(self._basis)

    def normal_form(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self.basis, self.order)

    def contains(self, p: Polynomial) -> bool:
        return self.normal_form(p).is_zero()
