"""Independent reference computations used to cross-check the library.

Nothing here imports polarcyl; classes are plain integer tuples (a, c_1, ..., c_n)
meaning a L + sum c_i E_i.
"""

import itertools
from fractions import Fraction


def dot(x, y):
    return x[0] * y[0] - sum(a * b for a, b in zip(x[1:], y[1:]))


def canonical(n):
    return (-3,) + (1,) * n


def brute_force_classes(n, self_int, k_deg, a_max, b_lo=-1, b_hi=None, a_min=0):
    """All integer classes with x.x = self_int and x.K = k_deg in a box."""
    k = canonical(n)
    out = set()
    for a in range(a_min, a_max + 1):
        hi = abs(a) if b_hi is None else b_hi
        for cs in itertools.product(range(-hi, -b_lo + 1), repeat=n):
            x = (a,) + cs
            if dot(x, x) == self_int and dot(x, k) == k_deg:
                out.add(x)
    return out


def reflect(r, x):
    # s_r(x) = x + (x.r) r for r.r = -2
    c = dot(x, r)
    return tuple(xi + c * ri for xi, ri in zip(x, r))


def simple_roots(n):
    roots = []
    for i in range(1, n):
        r = [0] * (n + 1)
        r[i], r[i + 1] = 1, -1
        roots.append(tuple(r))
    if n >= 3:
        roots.append((1, -1, -1, -1) + (0,) * (n - 3))
    return roots


def weyl_orbit(n, seed):
    """Orbit of ``seed`` under the group generated by reflections in simple roots."""
    gens = simple_roots(n)
    seen = {tuple(seed)}
    frontier = [tuple(seed)]
    while frontier:
        nxt = []
        for x in frontier:
            for r in gens:
                y = reflect(r, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def naive_nf_states(a_max, b_abs):
    """Normalized admissible states by plain enumeration of multisets."""
    hits = []
    for a in range(1, a_max + 1):
        for b in range(-b_abs, b_abs + 1):
            if a + 2 * b < 0:
                continue
            total = 3 * a + 2 * b - 3
            squares = 3 * a * a + 4 * a * b - 1
            if total < 0 or squares < 0:
                continue
            for n in range(0, total + 1):
                for ms in itertools.combinations_with_replacement(range(a, 0, -1), n):
                    if sum(ms) == total and sum(m * m for m in ms) == squares:
                        hits.append((a, b, tuple(ms)))
    return sorted(hits)


def gauss_solve(a, b):
    """Plain Gauss-Jordan over Fractions for a square nonsingular system."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[-1] for row in m]
