"""The integer system behind the untwisting of a map from a cubic surface to P^2.

A state ``(a, b, m_1..m_n)`` records a mobile system ``H ~ -aK + bF`` (``F`` a
conic class) with base-point multiplicities ``m_i``.  Such a state is
admissible when

    sum m_i   = 3a + 2b - 3
    sum m_i^2 = 3a^2 + 4ab - 1

and *normalized* when ``max m_i <= a``.  Normalized admissible states must have
``b < 0``, ``a + 2b >= 0`` and ``a >= max m_i > a + b``; each of them maps to a
state with strictly smaller ``a`` via ``a' = 2a + 2b - m``, ``b' = m - a - b``.

Small cases by hand: for ``a = 1`` every ``m_i`` equals 1, so the two equations
read ``n = 2b`` and ``n = 4b + 2``, forcing ``b = -1`` and ``n = -2``; there is
nothing to find.  With no multiplicities at all, eliminating ``b`` gives
``3a^2 - 6a + 1 = 0``, which has no integer root.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterator, Literal


@dataclass(frozen=True)
class NFState:
    a: int
    b: int
    mults: tuple[int, ...]

    def __post_init__(self):
        # canonical multiset order: nonincreasing
        object.__setattr__(self, "mults", tuple(sorted((int(m) for m in self.mults), reverse=True)))

    @property
    def n(self) -> int:
        return len(self.mults)

    @property
    def m(self) -> int:
        return max(self.mults, default=0)

    def sum_residual(self) -> int:
        return sum(self.mults) - (3 * self.a + 2 * self.b - 3)

    def square_residual(self) -> int:
        return sum(x * x for x in self.mults) - (3 * self.a ** 2 + 4 * self.a * self.b - 1)

    def satisfies(self) -> bool:
        return self.sum_residual() == 0 and self.square_residual() == 0

    def is_normalized(self) -> bool:
        return self.m <= self.a

    def key(self) -> tuple:
        return (self.a, self.b, self.mults)


@dataclass(frozen=True)
class StateVerdict:
    satisfies: bool
    sum_residual: int
    square_residual: int


def _validate(s: NFState):
    if s.a < 1:
        raise ValueError(f"a must be positive, got {s.a}")
    if any(x < 1 for x in s.mults):
        raise ValueError(f"multiplicities must be positive, got {s.mults}")


def verify_state(s: NFState) -> StateVerdict:
    _validate(s)
    return StateVerdict(s.satisfies(), s.sum_residual(), s.square_residual())


NON_GEOMETRIC = "non-geometric"


def elementary_transform(s: NFState, index: int) -> NFState | Literal["non-geometric"]:
    """Replace ``m_i`` by ``2a - m_i`` and ``b`` by ``b + a - m_i``.

    ``index`` refers to the canonical (nonincreasing) order of ``s.mults``.
    """
    _validate(s)
    if not s.satisfies():
        raise ValueError(f"{s} does not satisfy the admissibility equations")
    if not 0 <= index < s.n:
        raise IndexError(f"index {index} out of range for {s.n} multiplicities")
    mi = s.mults[index]
    new = 2 * s.a - mi
    if new <= 0:
        return NON_GEOMETRIC
    mults = list(s.mults)
    mults[index] = new
    out = NFState(s.a, s.b + s.a - mi, tuple(mults))
    assert out.satisfies(), "elementary transform broke admissibility"
    return out


@dataclass(frozen=True)
class NormalizeResult:
    state: NFState
    normalized: bool
    steps: int


def normalize(s: NFState) -> NormalizeResult:
    """Transform oversized multiplicities until ``max m_i <= a`` or stuck.

    Every applied step sends one ``m_i > a`` to ``2a - m_i < a``; since ``a``
    never changes, an index once fixed stays fixed, so each index is touched
    at most once.
    """
    _validate(s)
    if not s.satisfies():
        raise ValueError(f"{s} does not satisfy the admissibility equations")
    steps = 0
    while not s.is_normalized():
        for i, mi in enumerate(s.mults):
            if mi > s.a:
                t = elementary_transform(s, i)
                if t != NON_GEOMETRIC:
                    s, steps = t, steps + 1
                    break
        else:
            return NormalizeResult(s, False, steps)
    return NormalizeResult(s, True, steps)


@dataclass(frozen=True)
class Audit:
    claim2: bool      # b < 0
    residual: bool    # a + 2b >= 0
    claim3: bool      # max m > a + b

    @property
    def passed(self) -> bool:
        return self.claim2 and self.residual and self.claim3


def constraint_audit(s: NFState) -> Audit:
    _validate(s)
    if not s.satisfies():
        raise ValueError(f"{s} does not satisfy the admissibility equations")
    if not s.is_normalized():
        raise ValueError(f"{s} is not normalized")
    return Audit(s.b < 0, s.a + 2 * s.b >= 0, s.m > s.a + s.b)


@dataclass(frozen=True)
class Descent:
    a: int
    b: int
    strict: bool       # a' < a
    degenerate: bool   # a' == 0


def descent_step(s: NFState) -> Descent:
    audit = constraint_audit(s)
    if not audit.passed:
        raise ValueError(f"{s} fails the constraint audit: {audit}")
    a2 = 2 * s.a + 2 * s.b - s.m
    b2 = s.m - s.a - s.b
    return Descent(a2, b2, a2 < s.a, a2 == 0)


# -- search -----------------------------------------------------------------------

@dataclass(frozen=True)
class SearchBounds:
    a_max: int
    b_abs_max: int
    n_max: int | None = None
    m_cap: int | None = None  # defaults to a

    def __post_init__(self):
        if self.a_max < 1 or self.b_abs_max < 0:
            raise ValueError("bounds must be positive")
        if self.n_max is not None and self.n_max < 0:
            raise ValueError("n_max must be nonnegative")


@dataclass
class Hit:
    state: NFState
    audit: Audit
    descent: Descent | None


@dataclass
class SearchReport:
    bounds: SearchBounds
    pairs_scanned: int
    nodes_visited: int
    derived_n_cap: int
    hits: list[Hit] = field(default_factory=list)
    seconds: float = 0.0

    def all_descend(self) -> bool:
        return all(h.audit.passed and h.descent is not None and h.descent.strict for h in self.hits)

    def to_dict(self) -> dict:
        return {
            "bounds": asdict(self.bounds),
            "pairs_scanned": self.pairs_scanned,
            "nodes_visited": self.nodes_visited,
            "derived_n_cap": self.derived_n_cap,
            "hits": [{"a": h.state.a, "b": h.state.b, "mults": list(h.state.mults),
                      "audit": asdict(h.audit),
                      "descent": asdict(h.descent) if h.descent else None} for h in self.hits],
            "wall_clock_seconds": self.seconds,
        }


def _multisets(total: int, squares: int, top: int, max_len: int | None,
               counter: list[int]) -> Iterator[tuple[int, ...]]:
    """Nonincreasing tuples of values in [1, top] with given sum and square sum."""
    counter[0] += 1
    if total == 0:
        if squares == 0:
            yield ()
        return
    if max_len == 0 or squares < total or squares > top * total:
        return
    for v in range(min(top, total), 0, -1):
        if v * v > squares:
            continue
        for rest in _multisets(total - v, squares - v * v, v,
                               None if max_len is None else max_len - 1, counter):
            yield (v,) + rest


def _search_a(a: int, bounds: SearchBounds) -> tuple[int, int, list[Hit]]:
    cap = a if bounds.m_cap is None else min(a, bounds.m_cap)
    hits, pairs = [], 0
    counter = [0]
    for b in range(-bounds.b_abs_max, bounds.b_abs_max + 1):
        pairs += 1
        if a + 2 * b < 0:
            continue
        total = 3 * a + 2 * b - 3
        squares = 3 * a * a + 4 * a * b - 1
        if total < 0 or squares < 0:
            continue
        for mults in _multisets(total, squares, cap, bounds.n_max, counter):
            s = NFState(a, b, mults)
            audit = constraint_audit(s)
            hits.append(Hit(s, audit, descent_step(s) if audit.passed else None))
    return pairs, counter[0], hits


def derived_n_cap(bounds: SearchBounds) -> int:
    """Largest possible ``n``: ``n <= sum m_i = 3a + 2b - 3``."""
    return max(0, 3 * bounds.a_max + 2 * bounds.b_abs_max - 3)


def exhaustive_search(bounds: SearchBounds, workers: int = 1) -> SearchReport:
    """All normalized admissible states with ``a + 2b >= 0`` inside the bounds.

    The search is split over ``a``; with ``workers > 1`` the slices run in
    separate processes and are merged in canonical order.
    """
    start = time.perf_counter()
    a_values = range(1, bounds.a_max + 1)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_search_a, a_values, [bounds] * len(a_values)))
    else:
        results = [_search_a(a, bounds) for a in a_values]
    hits = sorted((h for _, _, hs in results for h in hs), key=lambda h: h.state.key())
    return SearchReport(
        bounds=bounds,
        pairs_scanned=sum(p for p, _, _ in results),
        nodes_visited=sum(c for _, c, _ in results),
        derived_n_cap=derived_n_cap(bounds),
        hits=hits,
        seconds=time.perf_counter() - start,
    )
