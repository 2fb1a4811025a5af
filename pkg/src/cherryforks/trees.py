"""Binary phylogenetic trees and small-subtree pattern counting.

A tree is stored as a flat adjacency structure over contiguous integer
vertex ids:

  * leaf vertices are ids ``0 .. n_leaves-1`` and carry taxa ``1 .. n_leaves``
    (taxon ``t`` is always vertex ``t - 1``),
  * interior vertices are ids ``n_leaves .. V-1``,
  * a rooted tree additionally designates one degree-one interior-range
    vertex as the root; the root is never counted as a leaf.

With this layout an unrooted tree on ``n`` leaves has ``2n - 2`` vertices and
``2n - 3`` edges, and a rooted tree has ``2n`` vertices and ``2n - 1`` edges
(the extra pair being the root and the pendant root edge).

Counting conventions
--------------------
Deleting an edge splits the tree in two.  For unrooted trees a *cherry*
(*pitchfork*) is a component with exactly two (three) leaves obtained by
deleting an interior edge; for rooted trees it is a component with two
(three) leaves not containing the root, obtained by deleting any edge.
Equivalently, in structural terms used throughout this module:

  * a cherry sits at an interior vertex with exactly two leaf neighbours,
  * a pitchfork sits at an interior vertex with exactly one leaf neighbour
    and an adjacent cherry vertex.

For unrooted trees with fewer than six leaves the pitchfork count follows
the same deletion rule even though the class-size identities used by
``classify_edges`` only hold from n = 6 upward.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional

Edge = tuple[int, int]

# enumerate_trees guard: labeled-tree counts are (2n-5)!! unrooted and
# (2n-3)!! rooted, i.e. 2,027,025 (unrooted) / 34,459,425 (rooted) at n = 10.
ENUMERATION_MIN_N = 4
ENUMERATION_MAX_N = 10


class TreeError(ValueError):
    """Raised for structurally invalid trees or invalid tree operations."""


@dataclass(frozen=True)
class SubtreeCounts:
    """Pitchfork and cherry counts ``(a, b)`` for a tree on ``n`` leaves."""

    a: int
    b: int
    n: int


@dataclass(frozen=True)
class EdgeClassCounts:
    """Sizes of the six-edge-class partition of an unrooted tree (n >= 6).

    ``pend_*`` classes partition the n pendant edges: edges in essential
    cherries, pitchfork outgroup edges, edges in both a cherry and a
    pitchfork, and edges in neither.  ``int_*`` classes partition the n - 3
    interior edges by whether deleting them splits off an essential cherry.
    """

    pend_ec: int
    pend_pf: int
    pend_cp: int
    pend_ind: int
    int_ec: int
    int_nec: int

    def total(self) -> int:
        return (self.pend_ec + self.pend_pf + self.pend_cp + self.pend_ind
                + self.int_ec + self.int_nec)

    def matches_counts(self, counts: SubtreeCounts) -> bool:
        """Check the class sizes against the (a, b) identities (n >= 6)."""
        a, b, n = counts.a, counts.b, counts.n
        return (self.pend_pf == a
                and self.pend_cp == 2 * a
                and self.pend_ec == 2 * (b - a)
                and self.int_ec == b - a
                and self.pend_ind == n - a - 2 * b
                and self.int_nec == n - 3 + a - b)


@dataclass(frozen=True)
class PhyloTree:
    """An immutable binary phylogenetic tree.

    Attributes
    ----------
    n_leaves : int
        Number of taxa.  Leaf ids are ``0 .. n_leaves-1`` = taxa ``1 .. n``.
    neighbors : tuple[tuple[int, ...], ...]
        Sorted neighbour tuple per vertex id.
    root : int | None
        Vertex id of the degree-one root, or None for unrooted trees.
    """

    n_leaves: int
    neighbors: tuple[tuple[int, ...], ...]
    root: Optional[int] = None

    # -- basic structure ---------------------------------------------------

    @property
    def is_rooted(self) -> bool:
        return self.root is not None

    @property
    def n_vertices(self) -> int:
        return len(self.neighbors)

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        """All edges as sorted ``(u, v)`` pairs, lexicographically ordered."""
        out = []
        for u, nbrs in enumerate(self.neighbors):
            for v in nbrs:
                if u < v:
                    out.append((u, v))
        return tuple(sorted(out))

    def is_leaf(self, v: int) -> bool:
        return v < self.n_leaves

    def taxon(self, v: int) -> int:
        if not self.is_leaf(v):
            raise TreeError(f"vertex {v} is not a leaf")
        return v + 1

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def has_edge(self, edge: Edge) -> bool:
        u, v = edge
        return (0 <= u < self.n_vertices) and v in self.neighbors[u]

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_edges(edges: list[Edge], n_leaves: int,
                   root: Optional[int] = None,
                   validate: bool = True) -> "PhyloTree":
        n_vertices = max(max(e) for e in edges) + 1
        nbrs: list[list[int]] = [[] for _ in range(n_vertices)]
        for u, v in edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        tree = PhyloTree(n_leaves, tuple(tuple(sorted(x)) for x in nbrs), root)
        if validate:
            tree.validate()
        return tree

    def validate(self) -> None:
        """Check all structural invariants; raise TreeError on violation."""
        n, V = self.n_leaves, self.n_vertices
        if n < 2:
            raise TreeError("a phylogenetic tree needs at least 2 leaves")
        expected_v = 2 * n if self.is_rooted else 2 * n - 2
        if V != expected_v:
            raise TreeError(f"expected {expected_v} vertices, found {V}")
        n_edges = sum(len(x) for x in self.neighbors) // 2
        expected_e = 2 * n - 1 if self.is_rooted else 2 * n - 3
        if n_edges != expected_e:
            raise TreeError(f"expected {expected_e} edges, found {n_edges}")
        # connected + |E| = |V|-1  =>  tree
        seen = [False] * V
        stack = [0]
        seen[0] = True
        while stack:
            u = stack.pop()
            for v in self.neighbors[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
        if not all(seen):
            raise TreeError("graph is not connected")
        for v in range(n):
            if self.degree(v) != 1:
                raise TreeError(f"leaf {v} has degree {self.degree(v)}")
        if self.is_rooted:
            r = self.root
            if r is None or r < n or r >= V:
                raise TreeError("root must be an interior-range vertex id")
            if self.degree(r) != 1:
                raise TreeError("root must have degree exactly 1")
        for v in range(n, V):
            if v == self.root:
                continue
            if self.degree(v) != 3:
                raise TreeError(f"interior vertex {v} has degree "
                                f"{self.degree(v)}, expected 3")


# ---------------------------------------------------------------------------
# Counting on raw structures (shared by PhyloTree ops, oracle and generators)
# ---------------------------------------------------------------------------


def _leaf_neighbor_degrees(tree: PhyloTree) -> list[int]:
    """Number of leaf neighbours per vertex (root is never a leaf)."""
    ld = [0] * tree.n_vertices
    for v in range(tree.n_leaves):
        ld[tree.neighbors[v][0]] += 1
    return ld


def subtree_counts_from_edges(edges: list[Edge], n_leaves: int) -> tuple[int, int]:
    """(pitchforks, cherries) for an edge list with leaves = ids < n_leaves.

    Works for rooted trees as well, provided the root vertex carries an
    interior-range id (it then never registers as a leaf neighbour).
    """
    n_vertices = 0
    for u, v in edges:
        if u >= n_vertices:
            n_vertices = u + 1
        if v >= n_vertices:
            n_vertices = v + 1
    ld = [0] * n_vertices
    for u, v in edges:
        if u < n_leaves:
            ld[v] += 1
        if v < n_leaves:
            ld[u] += 1
    b = 0
    for v in range(n_leaves, n_vertices):
        if ld[v] == 2:
            b += 1
    a = 0
    for u, v in edges:
        if u >= n_leaves and v >= n_leaves:
            if ld[u] == 2 and ld[v] == 1:
                a += 1
            elif ld[v] == 2 and ld[u] == 1:
                a += 1
    return a, b


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def attach_leaf(tree: PhyloTree, edge: Edge, taxon: int) -> PhyloTree:
    """Attach a new leaf to ``edge``, subdividing it with a fresh vertex.

    The edge ``{u, v}`` is replaced by ``{u, w}``, ``{w, v}`` and the pendant
    edge ``{w, taxon leaf}``.  The new taxon must be ``n + 1`` so leaf labels
    remain the contiguous block ``1 .. n+1``; interior ids are shifted up by
    one to make room for the new leaf id.
    """
    u, v = edge
    if not tree.has_edge((u, v)):
        raise TreeError(f"unknown edge {edge!r}")
    n = tree.n_leaves
    if taxon <= n:
        raise TreeError(f"duplicate taxon {taxon}")
    if taxon != n + 1:
        raise TreeError(f"taxon must be {n + 1} to keep labels contiguous, "
                        f"got {taxon}")

    def shift(x: int) -> int:
        return x if x < n else x + 1

    new_leaf = n
    w = tree.n_vertices + 1  # after shifting, old interiors end at n_vertices
    edges = []
    for (p, q) in tree.edges:
        if (p, q) == (min(u, v), max(u, v)):
            continue
        edges.append((shift(p), shift(q)))
    edges.append((shift(u), w))
    edges.append((w, shift(v)))
    edges.append((w, new_leaf))
    root = shift(tree.root) if tree.root is not None else None
    return PhyloTree.from_edges(edges, n + 1, root)


def deroot(tree: PhyloTree) -> PhyloTree:
    """Remove the root and suppress its neighbour, joining that vertex's
    two remaining neighbours by a new edge."""
    if not tree.is_rooted:
        raise TreeError("deroot requires a rooted tree")
    if tree.n_leaves < 2:
        raise TreeError("deroot requires at least 2 leaves")
    rho = tree.root
    assert rho is not None
    (r,) = tree.neighbors[rho]
    others = [x for x in tree.neighbors[r] if x != rho]
    removed = sorted((rho, r))

    def shift(x: int) -> int:
        return x - sum(1 for y in removed if y < x)

    edges = []
    for (p, q) in tree.edges:
        if rho in (p, q) or r in (p, q):
            continue
        edges.append((shift(p), shift(q)))
    edges.append((shift(others[0]), shift(others[1])))
    return PhyloTree.from_edges(edges, tree.n_leaves, None)


def count_subtrees(tree: PhyloTree) -> SubtreeCounts:
    """Count pitchforks ``a`` and cherries ``b``.

    Requires n >= 4 for unrooted trees (two-sided interior-edge deletion)
    and n >= 2 for rooted trees (any deletion, non-root side).
    """
    n = tree.n_leaves
    if tree.is_rooted:
        if n < 2:
            raise TreeError("rooted counting requires n >= 2")
    elif n < 4:
        raise TreeError("unrooted counting requires n >= 4")
    ld = _leaf_neighbor_degrees(tree)
    b = sum(1 for v in range(n, tree.n_vertices) if ld[v] == 2)
    a = 0
    for v in range(n, tree.n_vertices):
        if ld[v] == 2:
            for p in tree.neighbors[v]:
                if p >= n and ld[p] == 1:
                    a += 1
    return SubtreeCounts(a=a, b=b, n=n)


_CLASS_NAMES = ("pend_ec", "pend_pf", "pend_cp", "pend_ind", "int_ec", "int_nec")


def classify_edges(tree: PhyloTree) -> tuple[EdgeClassCounts, dict[str, frozenset[Edge]]]:
    """Partition all 2n - 3 edges of an unrooted tree (n >= 6) into the six
    classes and return (sizes, partition)."""
    if tree.is_rooted:
        raise TreeError("edge classification is defined for unrooted trees")
    n = tree.n_leaves
    if n < 6:
        raise TreeError("edge classification requires n >= 6")
    ld = _leaf_neighbor_degrees(tree)

    def interior_neighbor_of_cherry(v: int) -> int:
        for p in tree.neighbors[v]:
            if p >= n:
                return p
        raise TreeError("cherry vertex without interior neighbour (n < 6?)")

    parts: dict[str, list[Edge]] = {name: [] for name in _CLASS_NAMES}
    for (u, v) in tree.edges:
        if u < n:  # pendant edge; v is the interior endpoint
            p = v
            if ld[p] == 2:
                w = interior_neighbor_of_cherry(p)
                parts["pend_ec" if ld[w] == 0 else "pend_cp"].append((u, v))
            elif ld[p] == 1 and any(q >= n and ld[q] == 2
                                    for q in tree.neighbors[p]):
                parts["pend_pf"].append((u, v))
            else:
                parts["pend_ind"].append((u, v))
        else:  # interior edge
            cherry_end = None
            if ld[u] == 2:
                cherry_end, other = u, v
            elif ld[v] == 2:
                cherry_end, other = v, u
            if cherry_end is None:
                parts["int_nec"].append((u, v))
            else:
                parts["int_ec" if ld[other] == 0 else "int_nec"].append((u, v))
    counts = EdgeClassCounts(**{name: len(parts[name]) for name in _CLASS_NAMES})
    return counts, {name: frozenset(parts[name]) for name in _CLASS_NAMES}


def increment_for_edge(tree: PhyloTree, edge: Edge) -> tuple[int, int]:
    """Change in (a, b) caused by attaching a leaf to ``edge``.

    Pendant pitchfork-outgroup edges trade a pitchfork for a cherry; edges
    touching an essential cherry create a pitchfork; free pendant edges
    create a cherry; everything else leaves the counts unchanged.
    """
    u, v = edge
    if not tree.has_edge((u, v)):
        raise TreeError(f"unknown edge {edge!r}")
    _, parts = classify_edges(tree)
    key = (min(u, v), max(u, v))
    if key in parts["pend_pf"]:
        return (-1, +1)
    if key in parts["pend_ec"] or key in parts["int_ec"]:
        return (+1, 0)
    if key in parts["pend_ind"]:
        return (0, +1)
    return (0, 0)


# ---------------------------------------------------------------------------
# Exhaustive enumeration
# ---------------------------------------------------------------------------


def growth_edge_lists(n: int, rooted: bool) -> Iterator[list[Edge]]:
    """Yield the edge list of every labeled tree on n leaves exactly once.

    Trees are generated by attaching taxa 3..n in fixed order to every edge
    of every smaller tree (depth-first, constant extra work per step); the
    yielded list is reused between yields and must be copied by consumers
    that keep it.
    """
    if rooted:
        # root = n, its neighbour = n+1; growth interiors from n+2
        edges: list[Edge] = [(n, n + 1), (n + 1, 0), (n + 1, 1)]
        next_interior = n + 2
    else:
        edges = [(0, 1)]
        next_interior = n

    def rec(k: int, next_int: int) -> Iterator[list[Edge]]:
        if k == n:
            yield edges
            return
        new_leaf = k
        w = next_int
        for c in range(len(edges)):
            u, v = edges[c]
            edges[c] = (u, w)
            edges.append((w, v))
            edges.append((w, new_leaf))
            yield from rec(k + 1, next_int + 1)
            edges.pop()
            edges.pop()
            edges[c] = (u, v)

    if n == 2:
        yield edges
    else:
        yield from rec(2, next_interior)


def enumerate_trees(n: int, rooted: bool = False) -> Iterator[PhyloTree]:
    """Every labeled binary tree on taxa 1..n, each exactly once.

    Guarded to 4 <= n <= 10; the stream is single-consumer.
    """
    if not ENUMERATION_MIN_N <= n <= ENUMERATION_MAX_N:
        raise TreeError(f"enumeration supports {ENUMERATION_MIN_N} <= n <= "
                        f"{ENUMERATION_MAX_N}, got {n}")
    root = n if rooted else None
    for edges in growth_edge_lists(n, rooted):
        yield PhyloTree.from_edges(list(edges), n, root, validate=False)


# ---------------------------------------------------------------------------
# Topology comparison
# ---------------------------------------------------------------------------


def _subtree_key(tree: PhyloTree, v: int, parent: int):
    """Key = (smallest contained taxon, sorted child keys); children carry
    disjoint taxa, so sorting by the first component is a total order."""
    if tree.is_leaf(v):
        return (tree.taxon(v),)
    kids = [_subtree_key(tree, u, v) for u in tree.neighbors[v] if u != parent]
    kids.sort(key=lambda k: k[0])
    return (kids[0][0], tuple(kids))


def topology_key(tree: PhyloTree):
    """A canonical, label-respecting key; equal keys <=> same topology.

    Unrooted trees are keyed from the pendant edge of taxon 1; rooted trees
    from the root.
    """
    if tree.is_rooted:
        assert tree.root is not None
        (r,) = tree.neighbors[tree.root]
        return ("rooted", _subtree_key(tree, r, tree.root))
    anchor = 0  # taxon 1
    (nbr,) = tree.neighbors[anchor]
    return ("unrooted", 1, _subtree_key(tree, nbr, anchor))


def same_topology(t1: PhyloTree, t2: PhyloTree) -> bool:
    return topology_key(t1) == topology_key(t2)
