"""Dinic max-flow on a small integer-capacity network.

The network is built once and can be solved for many (source, sink) pairs;
each solve starts from a fresh copy of the base capacities.
"""

from __future__ import annotations

from collections import deque


class FlowNetwork:
    def __init__(self, size: int):
        self.size = size
        self.out_arcs: list[list[int]] = [[] for _ in range(size)]
        self.head: list[int] = []
        self.base: list[int] = []
        self.residual: list[int] = []

    def add_arc(self, u: int, v: int, cap: int) -> int:
        """Add u -> v with capacity cap; the paired reverse arc is index ^ 1."""
        idx = len(self.head)
        self.head += (v, u)
        self.base += (cap, 0)
        self.out_arcs[u].append(idx)
        self.out_arcs[v].append(idx + 1)
        return idx

    def _levels(self, s: int, t: int) -> list[int] | None:
        level = [-1] * self.size
        level[s] = 0
        queue = deque([s])
        cap, head, out_arcs = self.residual, self.head, self.out_arcs
        while queue:
            u = queue.popleft()
            nxt = level[u] + 1
            for e in out_arcs[u]:
                v = head[e]
                if cap[e] > 0 and level[v] < 0:
                    level[v] = nxt
                    if v == t:
                        return level
                    queue.append(v)
        return None

    def _blocking_flow(self, s: int, t: int, level: list[int], budget: int | None) -> int:
        cap, head, out_arcs = self.residual, self.head, self.out_arcs
        pos = [0] * self.size
        pushed = 0
        while budget is None or pushed < budget:
            # One augmenting path by iterative DFS over current-arc pointers.
            path: list[int] = []
            u = s
            while u != t:
                arcs = out_arcs[u]
                i = pos[u]
                while i < len(arcs):
                    e = arcs[i]
                    v = head[e]
                    if cap[e] > 0 and level[v] == level[u] + 1:
                        break
                    i += 1
                pos[u] = i
                if i == len(arcs):
                    if u == s:
                        return pushed
                    level[u] = -1  # dead end for this phase
                    e = path.pop()
                    u = head[e ^ 1]
                    pos[u] += 1
                    continue
                path.append(arcs[i])
                u = head[arcs[i]]
            delta = min(cap[e] for e in path)
            for e in path:
                cap[e] -= delta
                cap[e ^ 1] += delta
            pushed += delta
        return pushed

    def max_flow(self, s: int, t: int, limit: int | None = None) -> int:
        """Max s-t flow. With ``limit``, stop as soon as the flow reaches it."""
        self.residual = self.base[:]
        flow = 0
        while limit is None or flow < limit:
            level = self._levels(s, t)
            if level is None:
                break
            flow += self._blocking_flow(s, t, level, None if limit is None else limit - flow)
        return flow

    def reachable(self, s: int) -> set[int]:
        """Nodes reachable from s in the residual network of the last solve."""
        seen = {s}
        stack = [s]
        cap, head = self.residual, self.head
        while stack:
            u = stack.pop()
            for e in self.out_arcs[u]:
                v = head[e]
                if cap[e] > 0 and v not in seen:
                    seen.add(v)
                    stack.append(v)
        return seen
