"""Exact arithmetic on the residue rings Z/mZ and their prime-power cousins.

Everything here is plain integer arithmetic: values are canonical
representatives in [0, m) and no operation ever rounds.  Moduli are capped
by a configurable vertex bound because downstream graph construction is
O(m); the cap can be raised per call or via CYCLELIFT_MAX_VERTICES.
"""

from __future__ import annotations

import os

from .errors import DomainError

DEFAULT_VERTEX_LIMIT = 1 << 20
_LIMIT_ENV = "CYCLELIFT_MAX_VERTICES"


def vertex_limit() -> int:
    """Default modulus cap: CYCLELIFT_MAX_VERTICES if set, else 2**20."""
    raw = os.environ.get(_LIMIT_ENV)
    if raw is None:
        return DEFAULT_VERTEX_LIMIT
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"{_LIMIT_ENV} must be an integer, got {raw!r}") from None
    if value < 2:
        raise DomainError(f"{_LIMIT_ENV} must be at least 2, got {value}")
    return value


def factorize(m: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of m >= 1 by trial division, sorted by prime."""
    if m < 1:
        raise DomainError(f"cannot factor {m}")
    out = []
    rem = m
    d = 2
    while d * d <= rem:
        if rem % d == 0:
            e = 0
            while rem % d == 0:
                rem //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if rem > 1:
        out.append((rem, 1))
    return tuple(out)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1 if d == 2 else 2
    return True


def _check_cap(m: int, limit: int | None) -> None:
    cap = vertex_limit() if limit is None else int(limit)
    if m > cap:
        raise OverflowError(f"modulus {m} exceeds the vertex bound {cap}")


class Modulus:
    """The ring Z/mZ with the factorization of m attached.

    Immutable after construction; safe to share between threads.
    """

    __slots__ = ("m", "factorization")

    def __init__(self, m: int, *, limit: int | None = None):
        m = int(m)
        if m < 2:
            raise DomainError(f"modulus must be at least 2, got {m}")
        _check_cap(m, limit)
        self.m = m
        self.factorization = factorize(m)

    def reduce(self, a: int) -> "Residue":
        """Canonical representative of a, in [0, m); negatives wrap around."""
        return Residue(a, self)

    @property
    def is_prime(self) -> bool:
        return len(self.factorization) == 1 and self.factorization[0][1] == 1

    @property
    def is_prime_power(self) -> bool:
        return len(self.factorization) == 1

    def as_prime_power(self) -> tuple[int, int]:
        """The (p, n) with p**n == m, or DomainError if m is not a prime power."""
        if len(self.factorization) != 1:
            raise DomainError(f"{self.m} is not a prime power")
        return self.factorization[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, Modulus) and self.m == other.m

    def __hash__(self) -> int:
        return hash(("Modulus", self.m))

    def __repr__(self) -> str:
        return f"Modulus({self.m})"


class PrimePowerModulus(Modulus):
    """Z/p^nZ for p prime, n >= 1."""

    __slots__ = ("p", "n")

    def __init__(self, p: int, n: int, *, limit: int | None = None):
        p, n = int(p), int(n)
        if n < 1:
            raise DomainError(f"exponent must be at least 1, got {n}")
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        value = p**n
        _check_cap(value, limit)
        self.m = value
        self.factorization = ((p, n),)
        self.p = p
        self.n = n

    def lift(self, *, limit: int | None = None) -> "PrimePowerModulus":
        """The next level up, Z/p^(n+1)Z."""
        return PrimePowerModulus(self.p, self.n + 1, limit=limit)

    def __repr__(self) -> str:
        return f"PrimePowerModulus({self.p}, {self.n})"


class Residue:
    """An element of Z/mZ, stored as its canonical representative."""

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: Modulus):
        self.modulus = modulus
        self.value = int(value) % modulus.m

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if other.modulus.m != self.modulus.m:
                raise DomainError(
                    f"mixed moduli: {self.modulus.m} and {other.modulus.m}"
                )
            return other.value
        if isinstance(other, int):
            return other % self.modulus.m
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Residue(self.value + v, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Residue(self.value - v, self.modulus)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Residue(v - self.value, self.modulus)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Residue(self.value * v, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            raise DomainError("negative exponents are not supported")
        return Residue(pow(self.value, exponent, self.modulus.m), self.modulus)

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.value == other % self.modulus.m
        if isinstance(other, Residue):
            return self.value == other.value and self.modulus.m == other.modulus.m
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.modulus.m))

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.modulus.m})"


def mult_order(u: "int | Residue", p: int | None = None) -> int:
    """Least t >= 1 with u**t == 1 mod p, for p prime and u a unit.

    Works down from p - 1 by stripping prime factors, so it costs a few
    modular powers instead of up to p - 1 multiplications.
    """
    if isinstance(u, Residue):
        if p is not None:
            raise TypeError("pass either a Residue or (int, prime), not both")
        if not u.modulus.is_prime:
            raise DomainError(f"order is defined modulo a prime, got {u.modulus.m}")
        p = u.modulus.m
        u = u.value
    else:
        if p is None:
            raise TypeError("a prime modulus is required for integer arguments")
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        u = u % p
    if u == 0:
        raise DomainError("0 has no multiplicative order")
    order = p - 1
    for q, _ in factorize(p - 1):
        while order % q == 0 and pow(u, order // q, p) == 1:
            order //= q
    return order
