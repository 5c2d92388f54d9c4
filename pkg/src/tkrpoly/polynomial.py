"""Sparse exact integer polynomials in ``(X, Y)`` and in ``lambda``.

Terms print in graded-lex descending order, e.g. ``X^2 + 3*X + Y + 3``; that
string is the stable text form used by the command line tool.
"""

from __future__ import annotations

import json
import re
from math import comb
from typing import ClassVar, Iterable, Iterator, Mapping

Exponent = tuple[int, ...]


class _SparsePoly:
    variables: ClassVar[tuple[str, ...]]
    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Exponent, int] | Iterable[tuple[Exponent, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, int] = {}
        n = len(self.variables)
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp}")
            acc[exp] = acc.get(exp, 0) + int(c)
        self._terms = {e: c for e, c in acc.items() if c}

    # -- constructors ---------------------------------------------------------

    @classmethod
    def constant(cls, c: int):
        return cls({(0,) * len(cls.variables): c})

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls.constant(1)

    @classmethod
    def monomial(cls, *exp: int, coef: int = 1):
        return cls({tuple(exp): coef})

    # -- access ---------------------------------------------------------------

    def terms(self) -> list[tuple[Exponent, int]]:
        """Terms in graded-lex descending order."""
        return sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __iter__(self) -> Iterator[tuple[Exponent, int]]:
        return iter(self.terms())

    def coefficient(self, *exp: int) -> int:
        return self._terms.get(tuple(exp), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def nonnegative(self) -> bool:
        return all(c >= 0 for c in self._terms.values())

    def __len__(self) -> int:
        return len(self._terms)

    # -- ring operations ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, int):
            return type(self).constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return type(self)(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return type(self)({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return type(self)({e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[Exponent, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return type(self)(acc)

    __rmul__ = __mul__

    def scale(self, c: int):
        return self * c

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = type(self).one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = type(self).constant(other)
        if type(other) is not type(self):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash((type(self).__name__, frozenset(self._terms.items())))

    def divide_by_monomial(self, *exp: int):
        """Exact division by a monomial; raises if any term is not divisible."""
        out = {}
        for e, c in self._terms.items():
            q = tuple(a - b for a, b in zip(e, exp))
            if any(v < 0 for v in q):
                raise ArithmeticError(f"{self} is not divisible by the monomial {exp}")
            out[q] = c
        return type(self)(out)

    # -- text and JSON --------------------------------------------------------

    def _monomial_text(self, exp: Exponent) -> str:
        parts = []
        for var, e in zip(self.variables, exp):
            if e == 1:
                parts.append(var)
            elif e > 1:
                parts.append(f"{var}^{e}")
        return "*".join(parts)

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for n, (exp, c) in enumerate(self.terms()):
            mono = self._monomial_text(exp)
            mag = abs(c)
            body = str(mag) if not mono else mono if mag == 1 else f"{mag}*{mono}"
            if n == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    __str__ = to_text

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_text()!r})"

    @classmethod
    def from_text(cls, text: str):
        """Parse the canonical text form (terms may appear in any order)."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial text")
        if s[0] not in "+-":
            s = "+" + s
        chunks = re.findall(r"[+-][^+-]+", s)
        if "".join(chunks) != s:
            raise ValueError(f"cannot parse polynomial {text!r}")
        terms = []
        for chunk in chunks:
            sign = -1 if chunk[0] == "-" else 1
            coef = 1
            exp = [0] * len(cls.variables)
            for factor in chunk[1:].split("*"):
                if factor.isdigit():
                    coef *= int(factor)
                    continue
                var, _, power = factor.partition("^")
                if var not in cls.variables or (power and not power.isdigit()):
                    raise ValueError(f"cannot parse factor {factor!r} in {text!r}")
                exp[cls.variables.index(var)] += int(power or 1)
            terms.append((tuple(exp), sign * coef))
        return cls(terms)

    def to_json(self) -> list[dict[str, int]]:
        keys = self._json_keys
        return [dict(zip(keys, exp), c=c) for exp, c in self.terms()]

    @classmethod
    def from_json(cls, data: str | list) -> _SparsePoly:
        if isinstance(data, str):
            data = json.loads(data)
        return cls([(tuple(t[k] for k in cls._json_keys), t["c"]) for t in data])


class BiPoly(_SparsePoly):
    """Integer polynomial in ``X`` and ``Y``."""

    variables = ("X", "Y")
    _json_keys = ("x", "y")
    __slots__ = ()

    @classmethod
    def X(cls) -> BiPoly:
        return cls({(1, 0): 1})

    @classmethod
    def Y(cls) -> BiPoly:
        return cls({(0, 1): 1})

    def evaluate(self, x: int, y: int) -> int:
        return sum(c * x ** a * y ** b for (a, b), c in self._terms.items())

    def shift(self, dx: int, dy: int) -> BiPoly:
        """Substitute ``X -> X + dx`` and ``Y -> Y + dy``."""
        acc: dict[Exponent, int] = {}
        for (a, b), c in self._terms.items():
            for i in range(a + 1):
                ci = c * comb(a, i) * dx ** (a - i)
                if not ci:
                    continue
                for t in range(b + 1):
                    ct = ci * comb(b, t) * dy ** (b - t)
                    if ct:
                        acc[(i, t)] = acc.get((i, t), 0) + ct
        return BiPoly(acc)

    def swap(self) -> BiPoly:
        """``p(Y, X)``."""
        return BiPoly({(b, a): c for (a, b), c in self._terms.items()})


class UniPoly(_SparsePoly):
    """Integer polynomial in ``lambda``."""

    variables = ("lambda",)
    _json_keys = ("e",)
    __slots__ = ()

    @classmethod
    def lam(cls) -> UniPoly:
        return cls({(1,): 1})

    def evaluate(self, x: int) -> int:
        return sum(c * x ** e for (e,), c in self._terms.items())


def to_bott_substitution(p: BiPoly, sign_exponent: int) -> UniPoly:
    """``(-1)**sign_exponent * p(-1, -lambda)``."""
    sign = -1 if sign_exponent % 2 else 1
    acc: dict[Exponent, int] = {}
    for (a, b), c in p.terms():
        v = sign * c * (-1) ** (a + b)
        acc[(b,)] = acc.get((b,), 0) + v
    return UniPoly(acc)
