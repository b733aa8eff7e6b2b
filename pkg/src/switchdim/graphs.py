"""Graph families and the combinatorial operations performed on them.

Adjacency is stored as one bit-set per vertex: every target computation has
at most a few hundred vertices, and bitwise AND + popcount makes common
neighbour counting (strong regularity detection, clique search) cheap.
Vertex order is deterministic: Johnson labels sorted lexicographically,
Hamming labels row-major.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .exact import Matrix


class NonIntegerSpectrumError(ValueError):
    """Strongly regular, but the eigenvalues are irrational (conference graph)."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: vertex count plus one adjacency bit-set per vertex."""

    n: int
    adj: tuple[int, ...]
    labels: tuple | None = None

    def __post_init__(self):
        if self.n < 1 or len(self.adj) != self.n:
            raise ValueError("adjacency size must match the vertex count")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.adj):
            if row >> i & 1:
                raise ValueError(f"loop at vertex {i}")
            if row & ~full:
                raise ValueError("adjacency bits outside the vertex range")
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if (self.adj[i] >> j & 1) != (self.adj[j] >> i & 1):
                    raise ValueError("adjacency must be symmetric")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("labels must cover every vertex")

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def degree(self, i: int) -> int:
        return self.adj[i].bit_count()

    def neighbours(self, i: int) -> list[int]:
        return _bits(self.adj[i])

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in _bits(self.adj[i]) if j > i]

    def is_regular(self) -> bool:
        return len({row.bit_count() for row in self.adj}) == 1

    def components(self) -> list[int]:
        """Connected components as vertex bit-sets."""
        seen = 0
        comps = []
        for start in range(self.n):
            if seen >> start & 1:
                continue
            comp = 1 << start
            frontier = comp
            while frontier:
                grow = 0
                for v in _bits(frontier):
                    grow |= self.adj[v]
                frontier = grow & ~comp
                comp |= grow
            comps.append(comp)
            seen |= comp
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def from_edges(n: int, edges: Iterable[Sequence[int]], labels=None) -> Graph:
    adj = [0] * n
    for i, j in edges:
        if i == j or not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"bad edge ({i},{j})")
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    return Graph(n, tuple(adj), tuple(labels) if labels is not None else None)


def johnson(m: int) -> Graph:
    """Vertices are the 2-subsets of {1..m}; edges join subsets sharing one point."""
    if m < 2:
        raise ValueError("johnson requires m >= 2")
    labels = list(combinations(range(1, m + 1), 2))
    n = len(labels)
    adj = [0] * n
    for i in range(n):
        si = set(labels[i])
        for j in range(i + 1, n):
            if len(si.intersection(labels[j])) == 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return Graph(n, tuple(adj), tuple(labels))


def hamming(m: int) -> Graph:
    """Vertices are ordered pairs over {1..m}; edges join pairs agreeing in one slot."""
    if m < 2:
        raise ValueError("hamming requires m >= 2")
    labels = [(x, y) for x in range(1, m + 1) for y in range(1, m + 1)]
    n = len(labels)
    adj = [0] * n
    for i in range(n):
        x1, y1 = labels[i]
        for j in range(i + 1, n):
            x2, y2 = labels[j]
            if (x1 == x2) != (y1 == y2):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return Graph(n, tuple(adj), tuple(labels))


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    adj = tuple((full ^ g.adj[i]) & ~(1 << i) for i in range(g.n))
    return Graph(g.n, adj, g.labels)


def seidel_switch(g: Graph, subset: Iterable[int]) -> Graph:
    """Complement every edge between the subset and its complement.

    Edges inside either part are untouched.  Switching twice with the same
    subset returns the original graph.
    """
    u = mask_of(subset)
    full = (1 << g.n) - 1
    co = full & ~u
    adj = []
    for i in range(g.n):
        other = co if (u >> i & 1) else u
        row = (g.adj[i] & ~other) | (~g.adj[i] & other & ~(1 << i))
        adj.append(row & full)
    return Graph(g.n, tuple(adj), g.labels)


def adjacency_matrix(g: Graph) -> Matrix:
    return Matrix([[1 if g.has_edge(i, j) else 0 for j in range(g.n)] for i in range(g.n)])


def seidel_matrix(g: Graph) -> Matrix:
    """Zero diagonal, +1 on edges, -1 on non-edges."""
    return Matrix(
        [
            [0 if i == j else (1 if g.has_edge(i, j) else -1) for j in range(g.n)]
            for i in range(g.n)
        ]
    )


@dataclass(frozen=True)
class SrgParams:
    """Strong regularity data: (n, k, lambda, mu) plus the exact integer spectrum.

    Eigenvalue convention: eigenvalues = (k, r, s) with r > s among the
    non-principal ones; multiplicities = (1, m1, m2) align with them.
    """

    n: int
    k: int
    lam: int
    mu: int
    eigenvalues: tuple[Fraction, Fraction, Fraction]
    multiplicities: tuple[int, int, int]


def srg_params(g: Graph) -> SrgParams | None:
    """Detect strong regularity by brute-force common-neighbour counts.

    Returns None for graphs that are not connected regular graphs with
    constant lambda/mu (including complete and empty graphs, which have no
    non-edge resp. edge to define the constants).  Conference graphs are
    genuinely strongly regular but have irrational eigenvalues; they are
    rejected with :class:`NonIntegerSpectrumError` because every exact
    computation downstream requires a rational spectrum.
    """
    if not g.is_regular() or not g.is_connected() or g.n < 2:
        return None
    k = g.degree(0)
    lam = mu = None
    for i in range(g.n):
        for j in range(i + 1, g.n):
            common = (g.adj[i] & g.adj[j]).bit_count()
            if g.has_edge(i, j):
                if lam is None:
                    lam = common
                elif lam != common:
                    return None
            else:
                if mu is None:
                    mu = common
                elif mu != common:
                    return None
    if lam is None or mu is None:
        return None
    if k * (k - lam - 1) != (g.n - k - 1) * mu:
        return None
    disc = (lam - mu) ** 2 + 4 * (k - mu)
    root = math.isqrt(disc)
    if root * root != disc:
        raise NonIntegerSpectrumError(
            f"strongly regular with parameters ({g.n},{k},{lam},{mu}) but "
            f"irrational eigenvalues: sqrt({disc}) is not an integer"
        )
    r = Fraction(lam - mu + root, 2)
    s = Fraction(lam - mu - root, 2)
    if r.denominator != 1 or s.denominator != 1:
        raise NonIntegerSpectrumError(
            f"strongly regular with parameters ({g.n},{k},{lam},{mu}) but "
            "half-integer eigenvalues"
        )
    m1 = Fraction((g.n - 1) * root - (2 * k + (g.n - 1) * (lam - mu)), 2 * root)
    m2 = g.n - 1 - m1
    if m1.denominator != 1 or m1 <= 0 or m2 <= 0:
        return None
    return SrgParams(
        n=g.n,
        k=k,
        lam=lam,
        mu=mu,
        eigenvalues=(Fraction(k), r, s),
        multiplicities=(1, int(m1), int(m2)),
    )


def delsarte_cliques(g: Graph, params: SrgParams) -> list[frozenset[int]]:
    """All cliques attaining the size bound 1 - k/s for smallest eigenvalue s.

    Exhaustive depth-first search over candidate bit-sets, pruned at the
    bound; a clique of the bound size is automatically maximal.
    """
    s = params.eigenvalues[2]
    if s >= 0:
        raise ValueError("delsarte_cliques requires a negative smallest eigenvalue")
    bound = 1 - Fraction(params.k) / s
    if bound.denominator != 1:
        return []
    target = int(bound)
    out: list[frozenset[int]] = []

    def grow(clique: list[int], candidates: int) -> None:
        if len(clique) == target:
            out.append(frozenset(clique))
            return
        if len(clique) + candidates.bit_count() < target:
            return
        for v in _bits(candidates):
            grow(clique + [v], candidates & g.adj[v] & ~((1 << (v + 1)) - 1))

    grow([], (1 << g.n) - 1)
    return sorted(out, key=sorted)


@dataclass(frozen=True)
class EquitableQuotient:
    """2x2 quotient matrix of an equitable {subset, rest} partition."""

    subset: frozenset[int]
    b: tuple[tuple[int, int], tuple[int, int]]


def equitable_quotient(g: Graph, subset: Iterable[int]) -> EquitableQuotient | None:
    """Quotient matrix when {U, V-U} is equitable, None otherwise.

    Every vertex of part i must see the same number of neighbours in part j.
    """
    u = frozenset(subset)
    if not u or len(u) == g.n:
        raise ValueError("equitable_quotient requires a proper non-empty subset")
    umask = mask_of(u)
    full = (1 << g.n) - 1
    counts = [None, None]  # per part: (into U, into rest)
    for i in range(g.n):
        part = 0 if (umask >> i & 1) else 1
        row = (g.adj[i] & umask).bit_count(), (g.adj[i] & full & ~umask).bit_count()
        if counts[part] is None:
            counts[part] = row
        elif counts[part] != row:
            return None
    b = (counts[0], counts[1])
    return EquitableQuotient(subset=u, b=b)


def graph_to_json(g: Graph) -> dict:
    out: dict = {"n": g.n, "edges": sorted(list(e) for e in g.edges())}
    if g.labels is not None:
        out["labels"] = [list(l) if isinstance(l, tuple) else l for l in g.labels]
    return out


def graph_from_json(data: dict) -> Graph:
    labels = data.get("labels")
    return from_edges(
        int(data["n"]),
        data["edges"],
        labels=[tuple(l) if isinstance(l, list) else l for l in labels] if labels else None,
    )


def find_isomorphism(g: Graph, h: Graph) -> list[int] | None:
    """Backtracking isomorphism search; returns the vertex map or None.

    Only used on small graphs in tests and sanity checks.
    """
    if g.n != h.n or sorted(map(g.degree, range(g.n))) != sorted(map(h.degree, range(h.n))):
        return None
    mapping: list[int] = []
    used = 0

    def extend() -> bool:
        nonlocal used
        i = len(mapping)
        if i == g.n:
            return True
        for w in range(h.n):
            if used >> w & 1 or g.degree(i) != h.degree(w):
                continue
            if all(g.has_edge(i, j) == h.has_edge(w, mapping[j]) for j in range(i)):
                mapping.append(w)
                used |= 1 << w
                if extend():
                    return True
                mapping.pop()
                used &= ~(1 << w)
        return False

    return mapping if extend() else None
