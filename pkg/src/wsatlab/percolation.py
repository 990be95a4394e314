"""Bootstrap percolation closure and the rotation machinery.

The closure repeatedly rescans non-edges in ascending lexicographic order
and adds the first one that completes a new copy of the pattern, recording
the witnessing embedding. The closure graph itself is order-independent
(monotone process), but traces, activation partitions, and rotations depend
on this fixed deterministic order.

"New copy" is implemented as "a copy whose image contains the added edge":
a copy absent before the addition must use the new edge, and conversely any
copy through the new edge was absent, since the edge was.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .embedding import Embedding, find_new_copy
from .errors import (
    BudgetExceededError,
    EmptyOwnershipError,
    InactiveVertexError,
    TraceIncompleteError,
)
from .graphs import Graph


@dataclass(frozen=True)
class PercolationTrace:
    """Ordered record of restored edges, each with its witnessing copy."""

    host: Graph
    pattern: Graph
    steps: tuple[tuple[tuple[int, int], Embedding], ...]

    def terminal(self) -> Graph:
        g = self.host
        for (u, v), _ in self.steps:
            g = g.with_edge(u, v)
        return g

    def is_complete(self) -> bool:
        return self.terminal().is_complete()

    def validate(self) -> None:
        """Replay the trace, revalidating every step in its own graph state."""
        g = self.host
        for (u, v), emb in self.steps:
            if g.has_edge(u, v):
                raise AssertionError(f"step adds existing edge ({u},{v})")
            g = g.with_edge(u, v)
            if emb.host.n != g.n:
                raise AssertionError("witness host size mismatch")
            witness = Embedding(self.pattern, g, emb.mapping)
            if not witness.is_valid():
                raise AssertionError(f"invalid witness at edge ({u},{v})")
            if not witness.contains_edge((u, v)):
                raise AssertionError(f"witness misses its own edge ({u},{v})")

    def to_json(self) -> str:
        payload = [
            {"edge": list(edge), "witness": list(emb.mapping)}
            for edge, emb in self.steps
        ]
        return json.dumps(payload)

    @classmethod
    def from_json(
        cls, text: str, host: Graph, pattern: Graph
    ) -> "PercolationTrace":
        data = json.loads(text)
        g = host
        steps = []
        for item in data:
            u, v = item["edge"]
            g = g.with_edge(u, v)
            steps.append(((u, v), Embedding(pattern, g, tuple(item["witness"]))))
        return cls(host, pattern, tuple(steps))


def closure(host: Graph, pattern: Graph) -> PercolationTrace:
    """Run the percolation process to its maximal graph.

    Each pass scans non-edges in ascending lexicographic order and adds the
    first that admits a new copy; the process stops when a full scan adds
    nothing.
    """
    g = host
    steps = []
    while True:
        added = False
        for u, v in g.non_edges():
            g2 = g.with_edge(u, v)
            emb = find_new_copy(pattern, g2, (u, v))
            if emb is not None:
                steps.append(((u, v), emb))
                g = g2
                added = True
                break
        if not added:
            break
    return PercolationTrace(host, pattern, tuple(steps))


def is_weakly_saturated(host: Graph, pattern: Graph) -> bool:
    """True iff the closure of host under the pattern is complete."""
    return closure(host, pattern).is_complete()


# -- activation partitions ----------------------------------------------------


@dataclass(frozen=True)
class Part:
    """One activation class: the vertices first used by ``activating_edge``'s
    new copy, together with the edges the class owns."""

    vertices: frozenset[int]
    activating_edge: tuple[int, int]
    owned: frozenset[tuple[int, int]]


@dataclass(frozen=True)
class ActivationPartition:
    host: Graph
    pattern: Graph
    parts: tuple[Part, ...]
    free_edges: frozenset[tuple[int, int]]
    g_hat: Graph

    def part_of(self, v: int) -> int:
        for i, p in enumerate(self.parts):
            if v in p.vertices:
                return i
        raise KeyError(v)


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def activation_partition(trace: PercolationTrace) -> ActivationPartition:
    """Replay a terminal-complete trace into its activation partition.

    Each restored edge's witnessing copy activates the inactive vertices it
    uses; the activating edge's part owns host edges with an end in the part
    that the copy used, plus the activating edge itself when incident.
    """
    if not trace.is_complete():
        raise TraceIncompleteError(
            "activation partition requires a weakly saturated host"
        )
    host = trace.host
    host_edges = host.edges
    active: set[int] = set()
    parts: list[Part] = []
    g_hat = host
    for (u, v), emb in trace.steps:
        image = emb.image()
        newly = frozenset(image - active)
        if not newly:
            continue
        used_host_edges = {e for e in emb.image_edges() if e in host_edges}
        owned = {
            e for e in used_host_edges if e[0] in newly or e[1] in newly
        }
        act = _norm(u, v)
        if act[0] in newly or act[1] in newly:
            owned.add(act)
        parts.append(Part(newly, act, frozenset(owned)))
        active |= newly
        g_hat = g_hat.with_edge(u, v)
    missing = set(range(host.n)) - active
    if missing:
        raise InactiveVertexError(
            f"{len(missing)} vertices never activated; host is not a "
            "minimum weakly saturated graph",
            vertices=sorted(missing),
        )
    all_owned: set[tuple[int, int]] = set()
    for p in parts:
        overlap = all_owned & p.owned
        if overlap:
            raise AssertionError(f"edge owned twice: {sorted(overlap)[0]}")
        all_owned |= p.owned
    free = frozenset(g_hat.edges - all_owned)
    return ActivationPartition(host, trace.pattern, tuple(parts), free, g_hat)


AMatching = tuple[tuple[int, int], ...]  # one owned edge per part, in part order


def enumerate_a_matchings(ap: ActivationPartition) -> Iterator[AMatching]:
    """All selections of one owned edge per part, in lexicographic order."""
    empty = [i for i, p in enumerate(ap.parts) if not p.owned]
    if empty:
        raise EmptyOwnershipError(f"parts {empty} own no edge")
    pools = [sorted(p.owned) for p in ap.parts]
    yield from itertools.product(*pools)


def count_a_matchings(ap: ActivationPartition) -> int:
    total = 1
    for p in ap.parts:
        total *= len(p.owned)
    return total


def rotate(ap: ActivationPartition, matching: Sequence[tuple[int, int]]) -> Graph:
    """Remove an A-matching from the activated host; the result has the same
    number of edges as the original host."""
    if len(matching) != len(ap.parts):
        raise ValueError("matching must select one edge per part")
    g = ap.g_hat
    for p, e in zip(ap.parts, matching):
        e = _norm(*e)
        if e not in p.owned:
            raise ValueError(f"edge {e} not owned by its part")
        g = g.without_edge(*e)
    return g


def rotation_components(
    ap: ActivationPartition, budget: int = 10**6
) -> list[list[int]]:
    """Partition part indices into rotation components by brute force.

    Two parts are equivalent iff their contracted vertices stay connected in
    the activated host minus M, for every A-matching M.
    """
    total = count_a_matchings(ap)
    if total > budget:
        raise BudgetExceededError(
            f"{total} A-matchings exceed the budget of {budget}"
        )
    k = len(ap.parts)
    part_of = {}
    for i, p in enumerate(ap.parts):
        for v in p.vertices:
            part_of[v] = i
    hat_edges = sorted(ap.g_hat.edges)
    # connected[i][j] stays True only if i,j are joined under every matching
    connected = [[True] * k for _ in range(k)]
    for matching in enumerate_a_matchings(ap):
        removed = set(matching)
        parent = list(range(k))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in hat_edges:
            if (u, v) in removed:
                continue
            ru, rv = find(part_of[u]), find(part_of[v])
            if ru != rv:
                parent[ru] = rv
        roots = [find(i) for i in range(k)]
        for i in range(k):
            for j in range(i + 1, k):
                if roots[i] != roots[j]:
                    connected[i][j] = connected[j][i] = False
    comps = []
    seen = [False] * k
    for i in range(k):
        if seen[i]:
            continue
        comp = [j for j in range(k) if connected[i][j] or j == i]
        for j in comp:
            seen[j] = True
        comps.append(comp)
    return comps


def part_density(part_vertices: Iterable[int], owned_count: int) -> Fraction:
    """Owned edges per vertex, exactly."""
    size = len(set(part_vertices))
    if size == 0:
        raise ValueError("part must be nonempty")
    return Fraction(owned_count, size)
