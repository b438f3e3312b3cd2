"""Sparse multivariate polynomials over Q and a parser for a small grammar.

A polynomial lives over a fixed ordered tuple of variable names and stores a
dict ``exponent tuple -> Fraction`` with no zero coefficients.  Instances are
treated as immutable.

Grammar accepted by :func:`parse`::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/")? unary)*      # juxtaposition multiplies
    unary  := ("-" | "+") unary | power
    power  := atom (("^" | "**") INT)?
    atom   := NUMBER | NUMBER "/" NUMBER | NAME | "(" expr ")"

Division is only allowed by a nonzero constant.  A name that is not a
variable is split into a product of variables when possible, so ``xy`` means
``x*y`` over ``(x, y, z, u)``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

Exponent = tuple[int, ...]
MonomialOrder = Callable[[Exponent], tuple]


def grevlex(e: Exponent) -> tuple:
    return (sum(e), tuple(-x for x in reversed(e)))


def lex(e: Exponent) -> tuple:
    return e


ORDERS: dict[str, MonomialOrder] = {"grevlex": grevlex, "lex": lex}


def get_order(order: str | MonomialOrder) -> MonomialOrder:
    if callable(order):
        return order
    try:
        return ORDERS[order]
    except KeyError:
        raise ValueError(f"unknown monomial order {order!r}") from None


class Polynomial:
    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[Exponent, Fraction] | None = None):
        self.vars = tuple(vars)
        nv = len(self.vars)
        clean = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                if len(e) != nv:
                    raise ValueError(f"exponent {e} does not match {nv} variables")
                clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def constant(cls, vars: Sequence[str], c) -> Polynomial:
        return cls(vars, {(0,) * len(vars): Fraction(c)})

    @classmethod
    def zero(cls, vars: Sequence[str]) -> Polynomial:
        return cls(vars)

    @classmethod
    def var(cls, vars: Sequence[str], name: str) -> Polynomial:
        vars = tuple(vars)
        i = vars.index(name)
        e = [0] * len(vars)
        e[i] = 1
        return cls(vars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, vars: Sequence[str], e: Exponent, c=1) -> Polynomial:
        return cls(vars, {tuple(e): Fraction(c)})

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.vars, other)
        return NotImplemented

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        result = Polynomial.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> Polynomial:
        c = Fraction(c)
        return Polynomial(self.vars, {e: c * v for e, v in self.terms.items()})

    def mul_monomial(self, e: Exponent, c=1) -> Polynomial:
        c = Fraction(c)
        return Polynomial(self.vars, {tuple(a + b for a, b in zip(k, e)): v * c
                                      for k, v in self.terms.items()})

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.vars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def weighted_degree(self, weights: Sequence[int]) -> int:
        return max((_wdeg(e, weights) for e in self.terms), default=-1)

    def homogeneous_components(self, weights: Sequence[int]) -> dict[int, Polynomial]:
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(_wdeg(e, weights), {})[e] = c
        return {k: Polynomial(self.vars, v) for k, v in sorted(parts.items())}

    def diff(self, name: str) -> Polynomial:
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return Polynomial(self.vars, out)

    def sorted_terms(self, order: str | MonomialOrder = "grevlex") -> list[tuple[Exponent, Fraction]]:
        key = get_order(order)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order: str | MonomialOrder = "grevlex") -> tuple[Exponent, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = get_order(order)
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def monic(self, order: str | MonomialOrder = "grevlex") -> Polynomial:
        if not self.terms:
            return self
        return self.scale(1 / self.leading_term(order)[1])

    def evaluate(self, values: Mapping[str, Fraction]) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for name, k in zip(self.vars, e):
                if k:
                    t *= Fraction(values[name]) ** k
            total += t
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms("grevlex"):
            mono = "*".join(f"{v}^{k}" if k > 1 else v for v, k in zip(self.vars, e) if k)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            out.append((sign, body))
        s = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Polynomial({str(self)!r}, vars={self.vars})"


def _wdeg(e: Exponent, weights: Sequence[int]) -> int:
    return sum(a * w for a, w in zip(e, weights))


def divide_exact(p: Polynomial, q: Polynomial) -> Polynomial | None:
    """Quotient ``p / q`` if ``q`` divides ``p`` exactly, else ``None``.

    Division by a single polynomial leaves remainder zero exactly when ``q``
    divides ``p``, independent of the monomial order.
    """
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lq, cq = q.leading_term(grevlex)
    quot: dict[Exponent, Fraction] = {}
    r = p
    while r:
        lr, cr = r.leading_term(grevlex)
        if any(a < b for a, b in zip(lr, lq)):
            return None
        shift = tuple(a - b for a, b in zip(lr, lq))
        coef = cr / cq
        quot[shift] = quot.get(shift, 0) + coef
        r = r - q.mul_monomial(shift, coef)
    return Polynomial(p.vars, quot)


# -- parser -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


def _split_name(name: str, vars: Sequence[str]) -> list[str] | None:
    if name in vars:
        return [name]
    # longest match first, with backtracking
    for v in sorted(vars, key=len, reverse=True):
        if name.startswith(v):
            rest = _split_name(name[len(v):], vars)
            if rest is not None:
                return [v] + rest
    return None


class _Parser:
    def __init__(self, text: str, vars: Sequence[str]):
        self.text = text
        self.vars = tuple(vars)
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value):
        kind, v = self.take()
        if v != value:
            raise ParseError(f"expected {value!r} in {self.text!r}")

    def parse(self) -> Polynomial:
        if not self.toks:
            raise ParseError("empty polynomial string")
        p = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def _starts_atom(self):
        kind, v = self.peek()
        return kind in ("num", "name") or v == "("

    def term(self):
        p = self.unary()
        while True:
            kind, v = self.peek()
            if v == "*":
                self.take()
                p = p * self.unary()
            elif v == "/":
                self.take()
                q = self.unary()
                if not q.is_constant() or q.is_zero():
                    raise ParseError(f"division by a non-constant or zero in {self.text!r}")
                p = p.scale(1 / q.constant_value())
            elif self._starts_atom():
                p = p * self.power()
            else:
                return p

    def unary(self):
        kind, v = self.peek()
        if v == "-":
            self.take()
            return -self.unary()
        if v == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, v = self.take()
            if kind != "num":
                raise ParseError(f"exponent must be a nonnegative integer in {self.text!r}")
            base = base ** int(v)
        return base

    def atom(self):
        kind, v = self.take()
        if kind == "num":
            return Polynomial.constant(self.vars, int(v))
        if kind == "name":
            parts = _split_name(v, self.vars)
            if parts is None:
                raise ParseError(f"unknown variable {v!r}; ring variables are {self.vars}")
            out = Polynomial.constant(self.vars, 1)
            for name in parts:
                out = out * Polynomial.var(self.vars, name)
            return out
        if v == "(":
            p = self.expr()
            self.expect(")")
            return p
        raise ParseError(f"unexpected token {v!r} in {self.text!r}")


def parse(text: str, vars: Sequence[str]) -> Polynomial:
    """Parse a polynomial string over the given variables."""
    return _Parser(text, vars).parse()


def variables(vars: Sequence[str]) -> list[Polynomial]:
    return [Polynomial.var(vars, v) for v in vars]


def polys(texts: Iterable[str], vars: Sequence[str]) -> list[Polynomial]:
    return [parse(t, vars) for t in texts]
