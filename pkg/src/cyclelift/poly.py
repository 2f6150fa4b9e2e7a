"""Integer polynomials regarded as self-maps of Z/mZ.

Coefficients are exact integers in ascending order (coeffs[i] multiplies
x**i).  Evaluation is Horner with a reduction after every step, so
intermediates stay below m**2.  Iterates are always computed pointwise,
never by composing coefficients (composed iterates blow up immediately).
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

import numpy as np

from .errors import ParseError
from .residue import Modulus, Residue

# int64 Horner is exact as long as (m-1)**2 + (m-1) < 2**63.
_NUMPY_MAX_MODULUS = 1 << 31
_BULK_THRESHOLD = 512

_DIGITS = re.compile(r"\d+")
_INT_TOKEN = re.compile(r"[+-]?\d+")


class PolyFunc:
    """An integer-coefficient polynomial, immutable once constructed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        cs = [int(c) for c in coeffs]
        if not cs:
            cs = [0]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def parse(cls, text: str) -> "PolyFunc":
        """Parse either a comma-separated ascending coefficient list
        ("2,0,0,1") or a human form ("x^3+2", "3x-x^3").

        The human grammar is deliberately small: terms are [int][x[^int]],
        joined by + or -, with an optional leading sign.  No '*', no
        parentheses.
        """
        if "," in text:
            return cls(_parse_coeff_list(text))
        stripped = text.strip()
        if _INT_TOKEN.fullmatch(stripped):
            return cls([int(stripped)])
        return cls(_parse_human(text))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def _eval_int(self, a: int, m: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * a + c) % m
        return acc

    def eval(self, a, modulus=None):
        """f(a) mod m.  Plain ints in, plain int out; Residue in, Residue out."""
        if isinstance(a, Residue):
            mod = a.modulus if modulus is None else _as_modulus_obj(modulus)
            return Residue(self._eval_int(a.value % mod.m, mod.m), mod)
        if modulus is None:
            raise TypeError("an explicit modulus is required for integer arguments")
        m = _as_modulus_int(modulus)
        return self._eval_int(a % m, m)

    def iterate(self, a, t: int, modulus=None):
        """The t-th iterate f^t(a) mod m by t successive evaluations; t >= 0."""
        if t < 0:
            raise ValueError(f"iteration count must be >= 0, got {t}")
        if isinstance(a, Residue):
            mod = a.modulus if modulus is None else _as_modulus_obj(modulus)
            return Residue(self._iterate_int(a.value % mod.m, t, mod.m), mod)
        if modulus is None:
            raise TypeError("an explicit modulus is required for integer arguments")
        m = _as_modulus_int(modulus)
        return self._iterate_int(a % m, t, m)

    def _iterate_int(self, a: int, t: int, m: int) -> int:
        x = a
        for _ in range(t):
            x = self._eval_int(x, m)
        return x

    def eval_range(self, m: int) -> list[int]:
        """[f(0), f(1), ..., f(m-1)] mod m.  Vectorized for large m."""
        m = _as_modulus_int(m)
        if m >= _BULK_THRESHOLD and m <= _NUMPY_MAX_MODULUS:
            xs = np.arange(m, dtype=np.int64)
            return self._horner_array(xs, m).tolist()
        return [self._eval_int(v, m) for v in range(m)]

    def eval_many(self, values: Sequence[int], m: int) -> list[int]:
        """f at each of the given points, mod m."""
        m = _as_modulus_int(m)
        if len(values) >= _BULK_THRESHOLD and m <= _NUMPY_MAX_MODULUS:
            xs = np.asarray(values, dtype=np.int64) % m
            return self._horner_array(xs, m).tolist()
        return [self._eval_int(v % m, m) for v in values]

    def _horner_array(self, xs: "np.ndarray", m: int) -> "np.ndarray":
        acc = np.zeros(len(xs), dtype=np.int64)
        for c in reversed(self.coeffs):
            np.multiply(acc, xs, out=acc)
            acc += c % m
            acc %= m
        return acc

    def derivative(self) -> "PolyFunc":
        """Formal derivative, exact integer coefficients."""
        return PolyFunc([i * c for i, c in enumerate(self.coeffs)][1:])

    def __add__(self, other: "PolyFunc") -> "PolyFunc":
        if not isinstance(other, PolyFunc):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return PolyFunc([c + (b[i] if i < len(b) else 0) for i, c in enumerate(a)])

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyFunc) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"PolyFunc({list(self.coeffs)})"

    def __str__(self) -> str:
        if self.degree == 0:
            return str(self.coeffs[0])
        parts: list[str] = []
        for e in range(self.degree, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                xs = "x" if e == 1 else f"x^{e}"
                body = xs if mag == 1 else f"{mag}{xs}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+" if c > 0 else "-") + body)
        return "".join(parts)


def _as_modulus_int(modulus) -> int:
    if isinstance(modulus, Modulus):
        return modulus.m
    return int(modulus)


def _as_modulus_obj(modulus) -> Modulus:
    if isinstance(modulus, Modulus):
        return modulus
    return Modulus(int(modulus))


def _parse_coeff_list(text: str) -> list[int]:
    coeffs = []
    offset = 0
    for part in text.split(","):
        token = part.strip()
        if not token or not _INT_TOKEN.fullmatch(token):
            raise ParseError(
                f"expected an integer coefficient, got {part.strip()!r}",
                offset + len(part) - len(part.lstrip()),
            )
        coeffs.append(int(token))
        offset += len(part) + 1
    return coeffs


def _parse_human(text: str) -> list[int]:
    coeffs: dict[int, int] = {}
    n = len(text)

    def skip_ws(i: int) -> int:
        while i < n and text[i].isspace():
            i += 1
        return i

    i = skip_ws(0)
    if i == n:
        raise ParseError("empty polynomial", 0)
    first = True
    while i < n:
        sign = 1
        if text[i] in "+-":
            sign = -1 if text[i] == "-" else 1
            i = skip_ws(i + 1)
            if i == n:
                raise ParseError("dangling sign", n - 1)
        elif not first:
            raise ParseError("expected '+' or '-' between terms", i)
        coef: int | None = None
        m = _DIGITS.match(text, i)
        if m:
            coef = int(m.group())
            i = m.end()
        exp = 0
        if i < n and text[i] == "x":
            i += 1
            exp = 1
            if i < n and text[i] == "^":
                i += 1
                m2 = _DIGITS.match(text, i)
                if not m2:
                    raise ParseError("expected exponent digits after '^'", i)
                exp = int(m2.group())
                i = m2.end()
        elif coef is None:
            raise ParseError("expected a term", i)
        coeffs[exp] = coeffs.get(exp, 0) + sign * (1 if coef is None else coef)
        first = False
        i = skip_ws(i)
    out = [0] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = c
    return out
