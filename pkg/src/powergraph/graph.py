"""Compressed model of P(C_n): one weighted node per divisor class.

Two elements of C_n are adjacent iff their orders are comparable under
divisibility, and all elements of one order form a clique. A minimum cut-set
never splits an order class, so the element-level vertex connectivity equals
the minimum total weight phi(d) of a disconnecting set of classes. Class sets
are reported as frozensets of divisor values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .arith import DEFAULT_CLASS_CAP, DivisorClass, Factorization, divisor_classes
from .errors import CapacityError, ConsistencyError, DomainError, ParameterError
from .flow import FlowNetwork

OK = "ok"
COMPLETE_GRAPH = "complete_graph"
DEFAULT_EXHAUSTIVE_LIMIT = 20


@dataclass(frozen=True, eq=False)
class DivisorGraph:
    factorization: Factorization
    nodes: tuple[DivisorClass, ...]
    masks: tuple[int, ...]  # masks[i] has bit j set iff nodes i and j are adjacent
    index: dict[int, int] = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.nodes)

    @property
    def weights(self) -> list[int]:
        return [c.weight for c in self.nodes]

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def adjacent(self, d1: int, d2: int) -> bool:
        return bool(self.masks[self.index[d1]] >> self.index[d2] & 1)

    def neighbors(self, i: int) -> list[int]:
        m = self.masks[i]
        return [j for j in range(self.size) if m >> j & 1]

    def mask_of(self, values: Iterable[int]) -> int:
        mask = 0
        for d in values:
            try:
                mask |= 1 << self.index[d]
            except KeyError:
                raise ParameterError(f"{d} is not a divisor of {self.factorization.n}") from None
        return mask

    def values_of(self, mask: int) -> frozenset[int]:
        return frozenset(c.value for i, c in enumerate(self.nodes) if mask >> i & 1)

    def weight_of(self, mask: int) -> int:
        return sum(c.weight for i, c in enumerate(self.nodes) if mask >> i & 1)


@dataclass(frozen=True)
class ConnectivityResult:
    kappa: int | None
    cut_classes: frozenset[int]
    status: str
    pair: tuple[int, int] | None = None  # terminals of the flow that produced the cut


@dataclass(frozen=True)
class SeparationWitness:
    side_a: frozenset[int]
    side_b: frozenset[int]


def build_divisor_graph(f: Factorization, cap: int = DEFAULT_CLASS_CAP) -> DivisorGraph:
    nodes = tuple(divisor_classes(f, cap))
    values = [c.value for c in nodes]
    masks = []
    for i, d in enumerate(values):
        mask = 0
        for j, e in enumerate(values):
            if i != j and (e % d == 0 or d % e == 0):
                mask |= 1 << j
        masks.append(mask)
    return DivisorGraph(f, nodes, tuple(masks), {d: i for i, d in enumerate(values)})


def _component_masks(g: DivisorGraph, alive: int) -> list[int]:
    comps = []
    while alive:
        seed = alive & -alive
        comp = frontier = seed
        while frontier:
            grown = 0
            m = frontier
            while m:
                low = m & -m
                grown |= g.masks[low.bit_length() - 1]
                m ^= low
            frontier = grown & alive & ~comp
            comp |= frontier
        comps.append(comp)
        alive &= ~comp
    return comps


def induced_components(g: DivisorGraph, removed: Iterable[int]) -> list[frozenset[int]]:
    """Connected components of the graph with the ``removed`` classes deleted."""
    alive = g.full_mask & ~g.mask_of(removed)
    if not alive:
        raise DomainError("empty residual graph")
    comps = [g.values_of(c) for c in _component_masks(g, alive)]
    return sorted(comps, key=min)


def disconnects(g: DivisorGraph, removed: Iterable[int]) -> bool:
    alive = g.full_mask & ~g.mask_of(removed)
    return len(_component_masks(g, alive)) >= 2


def _split_network(g: DivisorGraph) -> FlowNetwork:
    # node i -> in-vertex 2i, out-vertex 2i+1
    net = FlowNetwork(2 * g.size)
    unbounded = 1 + sum(g.weights)
    for i, c in enumerate(g.nodes):
        net.add_arc(2 * i, 2 * i + 1, c.weight)
    for i in range(g.size):
        for j in g.neighbors(i):
            net.add_arc(2 * i + 1, 2 * j, unbounded)
    return net


def non_adjacent_pairs(g: DivisorGraph) -> list[tuple[int, int]]:
    return [(i, j) for i in range(g.size) for j in range(i + 1, g.size) if not g.masks[i] >> j & 1]


def _pivot_pairs(g: DivisorGraph, net: FlowNetwork, pairs) -> list[tuple[int, int]]:
    # Any pivot set heavier than an upper bound on kappa has a member outside
    # every minimum cut, and that member is separated from some non-neighbour.
    u, v = pairs[0]
    bound = net.max_flow(2 * u + 1, 2 * v)
    order = sorted((i for i in range(g.size) if g.masks[i] != g.full_mask & ~(1 << i)),
                   key=lambda i: (-g.nodes[i].weight, i))
    pivots, weight = set(), 0
    for i in order:
        if weight > bound:
            break
        pivots.add(i)
        weight += g.nodes[i].weight
    return [(i, j) for i, j in pairs if i in pivots or j in pivots]


def weighted_vertex_connectivity(g: DivisorGraph, strategy: str = "full") -> ConnectivityResult:
    """Minimum weight class cut via max-flow on the node-split network.

    ``strategy="full"`` scans every non-adjacent pair. ``"pivot"`` restricts
    the scan to pairs touching a pivot set whose weight exceeds a known upper
    bound on the answer; it returns the same kappa.
    """
    pairs = non_adjacent_pairs(g)
    if not pairs:
        return ConnectivityResult(None, frozenset(), COMPLETE_GRAPH)
    net = _split_network(g)
    if strategy == "pivot":
        pairs = _pivot_pairs(g, net, pairs)
    elif strategy != "full":
        raise ParameterError(f"unknown pair strategy {strategy!r}")
    best, best_cut, best_pair = None, 0, None
    for u, v in pairs:
        source, sink = 2 * u + 1, 2 * v
        value = net.max_flow(source, sink, limit=best)
        if best is None or value < best:
            seen = net.reachable(source)
            cut = 0
            for i in range(g.size):
                if 2 * i in seen and 2 * i + 1 not in seen:
                    cut |= 1 << i
            if g.weight_of(cut) != value or cut >> u & 1 or cut >> v & 1:
                raise ConsistencyError(f"bad cut recovered for pair {(u, v)} at n={g.factorization.n}")
            best, best_cut, best_pair = value, cut, (g.nodes[u].value, g.nodes[v].value)
    return ConnectivityResult(best, g.values_of(best_cut), OK, best_pair)


def exhaustive_min_cut(g: DivisorGraph, class_limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> ConnectivityResult:
    """Try every subset of classes as a removal set; keep the lightest that disconnects."""
    m = g.size
    if m > class_limit:
        raise CapacityError(f"instance too large for exhaustive oracle: {m} classes > {class_limit}")
    removed = np.arange(1 << m, dtype=np.int64)
    alive = g.full_mask ^ removed
    weight = np.zeros(1 << m, dtype=np.int64)
    for i, c in enumerate(g.nodes):
        weight += ((removed >> i) & 1) * c.weight
    adj = np.array(g.masks, dtype=np.int64)
    reach = alive & -alive
    while True:
        grown = reach.copy()
        for i in range(m):
            grown |= ((reach >> i) & 1) * adj[i]
        grown &= alive
        if np.array_equal(grown, reach):
            break
        reach = grown
    disconnected = (alive != 0) & (reach != alive)
    if not disconnected.any():
        return ConnectivityResult(None, frozenset(), COMPLETE_GRAPH)
    candidates = np.where(disconnected, weight, np.iinfo(np.int64).max)
    best = int(np.argmin(candidates))
    kappa = int(weight[best])
    if (disconnected & (weight < kappa)).any():
        raise ConsistencyError("a lighter disconnecting set slipped past the minimum")
    return ConnectivityResult(kappa, g.values_of(best), OK)


def expected_side(g: DivisorGraph, candidate) -> frozenset[int]:
    """The side of the separation singled out by the candidate's construction."""
    f = g.factorization
    if candidate.kind == "Z":
        a, s = candidate.params
        return frozenset(f.n // f.p(a) ** k for k in range(s, f.e(a) + 1))
    a, b, s, t = candidate.params
    return frozenset({f.n // (f.p(a) ** s * f.p(b) ** t)})


def check_separation(g: DivisorGraph, candidate) -> SeparationWitness:
    """Remove the candidate and return the separation A | B it is built around."""
    if candidate.values - set(g.index):
        raise ParameterError("candidate was built for a different n")
    removed = g.mask_of(candidate.values)
    alive = g.full_mask & ~removed
    side_a = g.mask_of(expected_side(g, candidate))
    side_b = alive & ~side_a
    crossing = any(g.masks[i] & side_b for i in range(g.size) if side_a >> i & 1)
    if side_a & removed or not side_a or not side_b or crossing:
        raise ConsistencyError(f"{candidate.label} does not separate P(C_{g.factorization.n})")
    if len(_component_masks(g, alive)) < 2:
        raise ConsistencyError(f"{candidate.label} leaves P(C_{g.factorization.n}) connected")
    return SeparationWitness(g.values_of(side_a), g.values_of(side_b))
