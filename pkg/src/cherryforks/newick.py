"""Newick serialization for binary phylogenetic trees.

Conventions
-----------
* An unrooted tree is written split at the pendant edge of taxon 1:
  ``(1,REST);`` where every internal node lists its children sorted by
  smallest contained taxon.  On input, a top-level node with two children
  is suppressed into an edge (the usual display form, e.g.
  ``((1,2),(3,4));``) and a trifurcating top-level node is kept as an
  interior vertex.
* A rooted tree carries the label ``R`` on its top-level split, e.g.
  ``(((1,2),3),4)R;``.  The degree-one root vertex is added above that
  split on parsing and dropped on writing.  ``parse_newick(text)`` treats
  the marker as authoritative unless the ``rooted`` argument says
  otherwise.
* Taxa may be the integers 1..n in any order; any other label set is
  mapped to 1..n in order of first appearance.  Branch lengths are parsed
  and ignored.
"""

from __future__ import annotations

from .trees import PhyloTree, TreeError


class NewickError(ValueError):
    """Malformed Newick input; carries the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> NewickError:
        return NewickError(message, self.pos)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, ch: str) -> None:
        self.skip_ws()
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def label(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in "(),:;":
            self.pos += 1
        return self.text[start:self.pos].strip()

    def branch_length(self) -> None:
        self.skip_ws()
        if self.peek() == ":":
            self.pos += 1
            token = self.label()
            try:
                float(token)
            except ValueError:
                raise self.error(f"bad branch length {token!r}") from None

    def node(self):
        """Return (children, label); a leaf has no children."""
        self.skip_ws()
        if self.peek() == "(":
            self.pos += 1
            children = [self.node()]
            self.skip_ws()
            while self.peek() == ",":
                self.pos += 1
                children.append(self.node())
            self.expect(")")
            name = self.label()
            self.branch_length()
            return (children, name)
        name = self.label()
        if not name:
            raise self.error("expected a taxon label")
        self.branch_length()
        return ([], name)

    def parse(self):
        top = self.node()
        self.skip_ws()
        if self.peek() == ";":
            self.pos += 1
        self.skip_ws()
        if self.pos != len(self.text):
            raise self.error("trailing characters after tree")
        return top


def _collect_taxa(node, order: list[str]) -> None:
    children, name = node
    if not children:
        order.append(name)
        return
    for child in children:
        _collect_taxa(child, order)


def _taxon_ids(order: list[str]) -> dict[str, int]:
    seen = set()
    for name in order:
        if name in seen:
            raise NewickError(f"duplicate taxon {name!r}", 0)
        seen.add(name)
    try:
        values = [int(name) for name in order]
    except ValueError:
        values = None
    if values is not None and sorted(values) == list(range(1, len(order) + 1)):
        return {name: int(name) - 1 for name in order}
    return {name: i for i, name in enumerate(order)}


def parse_newick(text: str, rooted: bool | None = None) -> PhyloTree:
    """Parse a Newick string into a :class:`PhyloTree`.

    ``rooted=None`` auto-detects rootedness from the top-level ``R`` marker;
    passing True/False overrides the marker.
    """
    parser = _Parser(text)
    top_children, top_label = parser.parse()
    if not top_children:
        raise NewickError("a tree needs at least two leaves", 0)
    if rooted is None:
        rooted = top_label == "R"

    order: list[str] = []
    _collect_taxa((top_children, top_label), order)
    n = len(order)
    if n < 2:
        raise NewickError("a tree needs at least two leaves", 0)
    ids = _taxon_ids(order)

    edges: list[tuple[int, int]] = []
    next_interior = [n]

    def build(node) -> int:
        children, name = node
        if not children:
            return ids[name]
        if len(children) != 2:
            raise TreeError(f"non-binary vertex with {len(children)} children")
        v = next_interior[0]
        next_interior[0] += 1
        for child in children:
            edges.append((v, build(child)))
        return v

    if rooted:
        if len(top_children) != 2:
            raise TreeError("a rooted tree must have a binary top-level split")
        r = build((top_children, top_label))
        rho = next_interior[0]
        edges.append((rho, r))
        return PhyloTree.from_edges(edges, n, root=rho)

    if len(top_children) == 2:
        # suppress the degree-2 display vertex into an edge
        left = build(top_children[0])
        right = build(top_children[1])
        edges.append((left, right))
    elif len(top_children) == 3:
        v = next_interior[0]
        next_interior[0] += 1
        for child in top_children:
            edges.append((v, build(child)))
    else:
        raise TreeError("an unrooted tree must have 2 or 3 top-level children")
    return PhyloTree.from_edges(edges, n, root=None)


# ---------------------------------------------------------------------------
# Writing
# ---------------------------------------------------------------------------


def _min_taxon(tree: PhyloTree, v: int, parent: int) -> int:
    if tree.is_leaf(v):
        return tree.taxon(v)
    return min(_min_taxon(tree, u, v) for u in tree.neighbors[v] if u != parent)


def _write_subtree(tree: PhyloTree, v: int, parent: int) -> str:
    if tree.is_leaf(v):
        return str(tree.taxon(v))
    kids = [u for u in tree.neighbors[v] if u != parent]
    kids.sort(key=lambda u: _min_taxon(tree, u, v))
    return "(" + ",".join(_write_subtree(tree, u, v) for u in kids) + ")"


def write_newick(tree: PhyloTree) -> str:
    """Canonical Newick text; ``parse_newick(write_newick(t))`` has the same
    topology as ``t``."""
    if tree.is_rooted:
        assert tree.root is not None
        (r,) = tree.neighbors[tree.root]
        return _write_subtree(tree, r, tree.root) + "R;"
    if tree.n_leaves == 2:
        return "(1,2);"
    anchor = 0  # taxon 1
    (nbr,) = tree.neighbors[anchor]
    return f"(1,{_write_subtree(tree, nbr, anchor)});"
