"""Functional graphs of polynomial maps on Z/mZ.

A functional graph has exactly one outgoing edge per vertex, so the whole
structure is a successor array: succ[v] = f(v) mod m.  Every component is
a rho: trees hanging off a unique cycle.  Cycle extraction is a single
iterative three-color sweep, O(m) overall (tails can approach length m,
so nothing here recurses).
"""

from __future__ import annotations

import math
from typing import Callable, Iterator, Sequence

from .errors import DomainError
from .poly import PolyFunc
from .residue import Modulus, PrimePowerModulus

_DOT_PALETTE = ("red", "blue", "green", "orange", "purple", "brown", "cyan", "magenta")


def _cycles_from_successors(succ: Sequence[int]) -> list[list[int]]:
    """All cycles of a successor array, each listed in successor order."""
    n = len(succ)
    color = bytearray(n)  # 0 unvisited, 1 on the current walk, 2 settled
    out: list[list[int]] = []
    for start in range(n):
        if color[start]:
            continue
        path: list[int] = []
        v = start
        while color[v] == 0:
            color[v] = 1
            path.append(v)
            v = succ[v]
        if color[v] == 1:
            # closed the walk on itself: the tail of `path` from v is a new cycle
            out.append(path[path.index(v) :])
        for u in path:
            color[u] = 2
    return out


class Cycle:
    """A cycle of a functional graph, rotated so the minimum vertex comes first."""

    __slots__ = ("vertices", "modulus", "_vset")

    def __init__(self, vertices: Sequence[int], modulus: Modulus):
        vs = [int(v) for v in vertices]
        if not vs:
            raise DomainError("a cycle needs at least one vertex")
        if len(set(vs)) != len(vs):
            raise DomainError("cycle vertices must be distinct")
        if any(not 0 <= v < modulus.m for v in vs):
            raise DomainError(f"cycle vertex out of range [0, {modulus.m})")
        shift = vs.index(min(vs))
        self.vertices = tuple(vs[shift:] + vs[:shift])
        self.modulus = modulus
        self._vset: frozenset[int] | None = None

    @property
    def size(self) -> int:
        return len(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __contains__(self, v: int) -> bool:
        if len(self.vertices) > 64:
            if self._vset is None:
                self._vset = frozenset(self.vertices)
            return v in self._vset
        return v in self.vertices

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Cycle)
            and self.vertices == other.vertices
            and self.modulus.m == other.modulus.m
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.modulus.m))

    def __repr__(self) -> str:
        return f"Cycle({list(self.vertices)} mod {self.modulus.m})"


class FunctionalGraph:
    """G(f, Z_m): vertex set [0, m), one edge v -> succ[v] per vertex.

    Immutable after construction; cycle data is computed once and cached.
    """

    __slots__ = ("modulus", "succ", "poly", "label", "_cycles", "_cycle_of")

    def __init__(
        self,
        modulus: Modulus,
        succ: Sequence[int],
        poly: PolyFunc | None = None,
        label: str | None = None,
    ):
        succ = list(succ)
        if len(succ) != modulus.m:
            raise DomainError(
                f"successor array has {len(succ)} entries for modulus {modulus.m}"
            )
        if min(succ) < 0 or max(succ) >= modulus.m:
            raise DomainError("successor out of range")
        self.modulus = modulus
        self.succ = succ
        self.poly = poly
        self.label = label
        self._cycles: tuple[Cycle, ...] | None = None
        self._cycle_of: dict[int, int] | None = None

    @property
    def num_vertices(self) -> int:
        return self.modulus.m

    def successor(self, v: int) -> int:
        return self.succ[v]

    def edges(self) -> Iterator[tuple[int, int]]:
        return enumerate(self.succ)

    def cycles(self) -> tuple[Cycle, ...]:
        """All cycles, sorted by (size, smallest vertex)."""
        if self._cycles is None:
            found = [Cycle(c, self.modulus) for c in _cycles_from_successors(self.succ)]
            found.sort(key=lambda c: (c.size, c.vertices[0]))
            self._cycles = tuple(found)
        return self._cycles

    def cycle_containing(self, v: int) -> Cycle:
        """The unique cycle reached by iterating the map from v."""
        m = self.modulus.m
        if not 0 <= v < m:
            raise DomainError(f"vertex {v} out of range [0, {m})")
        if self._cycle_of is None:
            self._cycle_of = {
                u: i for i, cyc in enumerate(self.cycles()) for u in cyc.vertices
            }
        cur = v
        for _ in range(m + 1):
            hit = self._cycle_of.get(cur)
            if hit is not None:
                return self.cycles()[hit]
            cur = self.succ[cur]
        raise AssertionError("walk failed to reach a cycle")  # unreachable

    def to_dot(self, color_cycles: bool = False) -> str:
        name = self.label
        if name is None:
            name = (
                f"G({self.poly}, Z_{self.modulus.m})"
                if self.poly is not None
                else f"G(Z_{self.modulus.m})"
            )
        lines = [f'digraph "{name}" {{']
        if color_cycles:
            for i, cyc in enumerate(self.cycles()):
                color = _DOT_PALETTE[i % len(_DOT_PALETTE)]
                for v in cyc.vertices:
                    lines.append(f"  {v} [color={color}];")
        for v, w in enumerate(self.succ):
            lines.append(f"  {v} -> {w};")
        lines.append("}")
        return "\n".join(lines)

    def to_json_dict(self) -> dict:
        return {
            "modulus": self.modulus.m,
            "poly": list(self.poly.coeffs) if self.poly is not None else None,
            "succ": list(self.succ),
            "cycles": [
                {"vertices": list(c.vertices), "size": c.size} for c in self.cycles()
            ],
        }


def build_graph(
    f: PolyFunc, modulus: Modulus | int, label: str | None = None
) -> FunctionalGraph:
    """G(f, Z_m): succ[v] = f(v) mod m for every v in [0, m)."""
    M = modulus if isinstance(modulus, Modulus) else Modulus(int(modulus))
    return FunctionalGraph(M, f.eval_range(M.m), poly=f, label=label)


class InducedSubgraph:
    """A functional graph restricted to a vertex subset closed under the map."""

    __slots__ = ("modulus", "vertices", "succ", "_cycles")

    def __init__(self, modulus: Modulus, vertices: Sequence[int], succ: dict[int, int]):
        self.modulus = modulus
        self.vertices = tuple(sorted(vertices))
        self.succ = succ
        self._cycles: tuple[Cycle, ...] | None = None

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def successor(self, v: int) -> int:
        return self.succ[v]

    def cycles(self) -> tuple[Cycle, ...]:
        if self._cycles is None:
            index = {v: i for i, v in enumerate(self.vertices)}
            local = [index[self.succ[v]] for v in self.vertices]
            found = [
                Cycle([self.vertices[i] for i in cyc], self.modulus)
                for cyc in _cycles_from_successors(local)
            ]
            found.sort(key=lambda c: (c.size, c.vertices[0]))
            self._cycles = tuple(found)
        return self._cycles


def lifted_subgraph(
    f: PolyFunc, cycle: Cycle, *, limit: int | None = None
) -> InducedSubgraph:
    """The subgraph of G(f, Z_p^(n+1)) induced by the preimage of a cycle.

    The preimage of the k cycle vertices under the projection
    Z_p^(n+1) -> Z_p^n is the kp vertices {a + j*p^n : a on the cycle,
    0 <= j < p}; it is closed under f because projection commutes with f.
    """
    p, n = cycle.modulus.as_prime_power()
    lifted_mod = PrimePowerModulus(p, n + 1, limit=limit)
    pn = cycle.modulus.m
    verts = [a + j * pn for a in cycle.vertices for j in range(p)]
    images = f.eval_many(verts, lifted_mod.m)
    vset = set(verts)
    succ: dict[int, int] = {}
    for v, w in zip(verts, images):
        if w not in vset:
            raise DomainError(
                "vertex set is not closed under the map; the input is not a cycle"
            )
        succ[v] = w
    return InducedSubgraph(lifted_mod, verts, succ)


class ProductGraph:
    """Tensor product of two functional graphs, materialized lazily.

    Vertices are pairs (x, y); ((x, y), (x', y')) is an edge exactly when
    (x, x') and (y, y') are edges of the factors.  Since both factors have
    outdegree 1, so does the product: the successor of (x, y) is
    (succ1[x], succ2[y]).  Pairs are indexed as x * n + y.
    """

    __slots__ = ("left", "right")

    def __init__(self, left: FunctionalGraph, right: FunctionalGraph):
        self.left = left
        self.right = right

    @property
    def num_vertices(self) -> int:
        return self.left.modulus.m * self.right.modulus.m

    def vertices(self) -> Iterator[tuple[int, int]]:
        for x in range(self.left.modulus.m):
            for y in range(self.right.modulus.m):
                yield (x, y)

    def successor_pair(self, x: int, y: int) -> tuple[int, int]:
        return (self.left.succ[x], self.right.succ[y])

    def index_of_pair(self, x: int, y: int) -> int:
        return x * self.right.modulus.m + y

    def pair_of_index(self, i: int) -> tuple[int, int]:
        return divmod(i, self.right.modulus.m)

    def successor_index(self, i: int) -> int:
        x, y = self.pair_of_index(i)
        return self.index_of_pair(*self.successor_pair(x, y))


def tensor_product(g1: FunctionalGraph, g2: FunctionalGraph) -> ProductGraph:
    return ProductGraph(g1, g2)


def check_isomorphism_via_map(
    product: ProductGraph,
    graph: FunctionalGraph,
    phi: Callable[[int, int], int],
) -> bool:
    """True iff phi is a vertex bijection carrying every product edge to an edge.

    Both sides have exactly m*n edges (outdegree 1), so vertex bijectivity
    plus edge preservation makes phi edge-bijective as well.  Streams over
    pair indices; memory stays O(m + n + mn/8).
    """
    m = product.left.modulus.m
    n = product.right.modulus.m
    if math.gcd(m, n) != 1:
        raise DomainError(f"factor moduli must be coprime, got {m} and {n}")
    mn = m * n
    if graph.modulus.m != mn:
        raise DomainError(
            f"target graph has modulus {graph.modulus.m}, expected {mn}"
        )
    # phi(x, y) = phi(x, 0) + phi(0, y) mod mn for the CRT-style maps used here
    phi_x = [phi(x, 0) for x in range(m)]
    phi_y = [phi(0, y) for y in range(n)]
    succ1, succ2, succ_g = product.left.succ, product.right.succ, graph.succ
    seen = bytearray(mn)
    for x in range(m):
        px = phi_x[x]
        psx = phi_x[succ1[x]]
        for y in range(n):
            img = (px + phi_y[y]) % mn
            if seen[img]:
                return False
            seen[img] = 1
            if succ_g[img] != (psx + phi_y[succ2[y]]) % mn:
                return False
    return True
