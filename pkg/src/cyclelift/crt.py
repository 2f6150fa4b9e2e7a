"""Chinese-remainder isomorphisms between functional graphs.

For coprime m, n the map phi(x, y) = (b*n*x + a*m*y) mod mn, built from a
Bezout identity a*m + b*n = 1, is a ring isomorphism Z_m x Z_n -> Z_mn.
It carries the tensor product G(f, Z_m) (x) G(f, Z_n) onto G(f, Z_mn),
and in particular a size-k cycle paired with a size-l cycle yields a
size-lcm(k, l) cycle downstairs.  Both facts are checked here by
exhaustive streaming comparison, never assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .graph import build_graph, check_isomorphism_via_map, tensor_product
from .poly import PolyFunc
from .residue import Modulus


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b); classic iterative form."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


class CrtMap:
    """The bijection Z_m x Z_n -> Z_mn induced by a Bezout pair for (m, n)."""

    __slots__ = ("m", "n", "a", "b")

    def __init__(self, m: int, n: int):
        m, n = int(m), int(n)
        if m < 2 or n < 2:
            raise DomainError("both moduli must be at least 2")
        g, a, b = extended_gcd(m, n)
        if g != 1:
            raise DomainError(f"moduli must be coprime, gcd({m}, {n}) = {g}")
        self.m = m
        self.n = n
        self.a = a
        self.b = b

    def __call__(self, x: int, y: int) -> int:
        return (self.b * self.n * x + self.a * self.m * y) % (self.m * self.n)

    def split(self, z: int) -> tuple[int, int]:
        """Componentwise projection; the inverse of the map."""
        return (z % self.m, z % self.n)

    def __repr__(self) -> str:
        return f"CrtMap(m={self.m}, n={self.n}, a={self.a}, b={self.b})"


def check_crt_isomorphism(
    f: PolyFunc, m: int, n: int, *, limit: int | None = None
) -> bool:
    """Exhaustively verify that the CRT map is a graph isomorphism
    G(f, Z_m) (x) G(f, Z_n) -> G(f, Z_mn)."""
    phi = CrtMap(m, n)
    g1 = build_graph(f, Modulus(m, limit=limit))
    g2 = build_graph(f, Modulus(n, limit=limit))
    g = build_graph(f, Modulus(m * n, limit=limit))
    return check_isomorphism_via_map(tensor_product(g1, g2), g, phi)


@dataclass(frozen=True)
class LcmCycleRow:
    k: int
    l: int
    lcm: int
    found: bool

    def to_json_dict(self) -> dict:
        return {"k": self.k, "l": self.l, "lcm": self.lcm, "found": self.found}


def lcm_cycle_check(
    f: PolyFunc, m: int, n: int, *, limit: int | None = None
) -> list[LcmCycleRow]:
    """For every cycle-size pair (k in G(f, Z_m), l in G(f, Z_n)), report
    whether G(f, Z_mn) contains a cycle of size lcm(k, l).

    Every row should come back found=True; a False row signals a bug.
    """
    if math.gcd(m, n) != 1:
        raise DomainError(f"moduli must be coprime, gcd({m}, {n}) != 1")
    sizes_m = sorted({c.size for c in build_graph(f, Modulus(m, limit=limit)).cycles()})
    sizes_n = sorted({c.size for c in build_graph(f, Modulus(n, limit=limit)).cycles()})
    have = {c.size for c in build_graph(f, Modulus(m * n, limit=limit)).cycles()}
    return [
        LcmCycleRow(k, l, math.lcm(k, l), math.lcm(k, l) in have)
        for k in sizes_m
        for l in sizes_n
    ]
