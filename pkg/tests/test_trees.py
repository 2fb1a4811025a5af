"""Tree structure, counting, edge classification, and enumeration."""

import pytest

from cherryforks import (
    Model,
    PhyloTree,
    SubtreeCounts,
    TreeError,
    attach_leaf,
    classify_edges,
    count_subtrees,
    deroot,
    enumerate_trees,
    grow,
    increment_for_edge,
    parse_newick,
    same_topology,
    topology_key,
)
from cherryforks.trees import growth_edge_lists, subtree_counts_from_edges


# ---------------------------------------------------------------------- #
# Construction and invariants                                             #
# ---------------------------------------------------------------------- #


class TestStructure:
    def test_unrooted_vertex_and_edge_counts(self, eight_leaf_tree):
        t = eight_leaf_tree
        assert t.n_leaves == 8
        assert t.n_vertices == 2 * 8 - 2
        assert len(t.edges) == 2 * 8 - 3

    def test_rooted_edge_count_is_2n_minus_1(self):
        # n leaves (deg 1) + root (deg 1) + n-1 interior (deg 3) forces
        # |E| = 2n - 1; derooting removes two edges and adds one.
        t = parse_newick("(((1,2),3),4)R;")
        assert t.is_rooted
        assert t.n_vertices == 2 * 4
        assert len(t.edges) == 2 * 4 - 1
        assert len(deroot(t).edges) == 2 * 4 - 3

    def test_validation_rejects_disconnected(self):
        with pytest.raises(TreeError):
            PhyloTree.from_edges([(0, 2), (1, 3)], 2)

    def test_validation_rejects_bad_interior_degree(self):
        with pytest.raises(TreeError):
            # a path on 4 vertices has degree-2 interiors
            PhyloTree.from_edges([(0, 2), (2, 3), (3, 1)], 2)


# ---------------------------------------------------------------------- #
# attach_leaf                                                             #
# ---------------------------------------------------------------------- #


class TestAttachLeaf:
    def test_two_leaf_to_three_leaf(self):
        t2 = PhyloTree.from_edges([(0, 1)], 2)
        t3 = attach_leaf(t2, (0, 1), 3)
        assert t3.n_leaves == 3
        assert len(t3.edges) == 3
        # unique 3-leaf shape: one interior vertex adjacent to all leaves
        assert same_topology(t3, parse_newick("(1,2,3);"))

    def test_edge_count_grows_by_two(self, eight_leaf_tree):
        bigger = attach_leaf(eight_leaf_tree, eight_leaf_tree.edges[0], 9)
        assert len(bigger.edges) == len(eight_leaf_tree.edges) + 2

    def test_attach_to_nec_edge_keeps_counts(self, eight_leaf_tree):
        _, parts = classify_edges(eight_leaf_tree)
        edge = sorted(parts["int_nec"])[0]
        grown = attach_leaf(eight_leaf_tree, edge, 9)
        c = count_subtrees(grown)
        assert (c.a, c.b, c.n) == (1, 3, 9)

    def test_unknown_edge(self, eight_leaf_tree):
        with pytest.raises(TreeError, match="unknown edge"):
            attach_leaf(eight_leaf_tree, (0, 1), 9)

    def test_duplicate_taxon(self, eight_leaf_tree):
        with pytest.raises(TreeError, match="duplicate taxon"):
            attach_leaf(eight_leaf_tree, eight_leaf_tree.edges[0], 5)


# ---------------------------------------------------------------------- #
# deroot                                                                  #
# ---------------------------------------------------------------------- #


class TestDeroot:
    def test_caterpillar(self):
        t = parse_newick("(((1,2),3),4)R;")
        u = deroot(t)
        assert not u.is_rooted
        assert count_subtrees(u) == count_subtrees(parse_newick("((1,2),(3,4));"))

    def test_two_leaf(self):
        t = parse_newick("(1,2)R;")
        u = deroot(t)
        assert u.n_leaves == 2 and len(u.edges) == 1

    def test_rooted_eight_leaf_example(self, eight_leaf_tree):
        rooted = parse_newick("((2,(5,7)),(6,((3,4),(1,8))))R;")
        assert same_topology(deroot(rooted), eight_leaf_tree)

    def test_requires_rooted(self, eight_leaf_tree):
        with pytest.raises(TreeError):
            deroot(eight_leaf_tree)

    def test_preserves_leaves_exhaustively(self):
        # The counts may shift by the lost root context; the leaf set and n
        # never change.  Observed |delta| values are reported, not asserted.
        max_da = max_db = 0
        for t in enumerate_trees(6, rooted=True):
            u = deroot(t)
            assert u.n_leaves == t.n_leaves
            cr, cu = count_subtrees(t), count_subtrees(u)
            max_da = max(max_da, abs(cu.a - cr.a))
            max_db = max(max_db, abs(cu.b - cr.b))
        print(f"derooting n=6: max |delta a| = {max_da}, "
              f"max |delta b| = {max_db}")


# ---------------------------------------------------------------------- #
# count_subtrees                                                          #
# ---------------------------------------------------------------------- #


class TestCountSubtrees:
    def test_eight_leaf_example(self, eight_leaf_tree):
        assert count_subtrees(eight_leaf_tree) == SubtreeCounts(a=1, b=3, n=8)

    def test_quartet(self):
        c = count_subtrees(parse_newick("((1,2),(3,4));"))
        assert (c.a, c.b) == (0, 2)

    def test_snowflake_and_caterpillar(self, snowflake6, caterpillar6):
        assert (count_subtrees(snowflake6).a, count_subtrees(snowflake6).b) == (0, 3)
        assert (count_subtrees(caterpillar6).a, count_subtrees(caterpillar6).b) == (2, 2)

    def test_six_leaf_support_exhaustive(self):
        # Every labeled 6-leaf tree is one of the two shapes above,
        # 90 caterpillar-like vs 15 snowflakes out of 105.
        seen = {}
        for t in enumerate_trees(6):
            c = count_subtrees(t)
            seen[(c.a, c.b)] = seen.get((c.a, c.b), 0) + 1
        assert seen == {(2, 2): 90, (0, 3): 15}

    def test_rooted_small(self):
        assert count_subtrees(parse_newick("(1,2)R;")).b == 1
        c3 = count_subtrees(parse_newick("((1,2),3)R;"))
        assert (c3.a, c3.b) == (1, 1)
        c4 = count_subtrees(parse_newick("(((1,2),3),4)R;"))
        assert (c4.a, c4.b) == (1, 1)

    def test_unrooted_minimum_n(self):
        with pytest.raises(TreeError):
            count_subtrees(parse_newick("(1,2,3);"))

    @pytest.mark.parametrize("n", [6, 9, 14])
    def test_pitchfork_at_most_cherries(self, n):
        for seed in range(30):
            tree, _ = grow(Model.PDA, n, seed=seed)
            c = count_subtrees(tree)
            assert 0 <= c.a <= c.b
            assert 2 <= c.b <= n // 2
            assert 3 * c.a <= n


# ---------------------------------------------------------------------- #
# classify_edges / increment_for_edge                                     #
# ---------------------------------------------------------------------- #


class TestEdgeClasses:
    def test_eight_leaf_sizes(self, eight_leaf_tree):
        counts, parts = classify_edges(eight_leaf_tree)
        assert (counts.pend_ec, counts.pend_pf, counts.pend_cp,
                counts.pend_ind, counts.int_ec, counts.int_nec) == \
            (4, 1, 2, 1, 2, 3)
        assert counts.total() == 13
        assert sum(len(p) for p in parts.values()) == 13
        # the outgroup pendant edge of the single pitchfork is leaf 2's
        (pf_edge,) = parts["pend_pf"]
        assert 1 in pf_edge  # leaf id of taxon 2
        # leaf 6 is in neither a cherry nor a pitchfork
        (ind_edge,) = parts["pend_ind"]
        assert 5 in ind_edge

    def test_snowflake_sizes(self, snowflake6):
        counts, _ = classify_edges(snowflake6)
        assert (counts.pend_ec, counts.pend_pf, counts.pend_cp,
                counts.pend_ind, counts.int_ec, counts.int_nec) == \
            (6, 0, 0, 0, 3, 0)
        assert counts.total() == 9

    def test_requires_six_leaves(self):
        with pytest.raises(TreeError):
            classify_edges(parse_newick("((1,2),(3,4));"))

    @pytest.mark.parametrize("n", [6, 7, 8, 9])
    def test_sizes_match_count_formulas_exhaustively(self, n):
        # every labeled tree, 105 + 945 + 10395 + 135135 of them
        for edges in growth_edge_lists(n, False):
            t = PhyloTree.from_edges(list(edges), n, None, validate=False)
            counts, _ = classify_edges(t)
            assert counts.matches_counts(count_subtrees(t))
            assert counts.total() == 2 * n - 3


class TestIncrementForEdge:
    def test_pitchfork_outgroup_edge(self, eight_leaf_tree):
        _, parts = classify_edges(eight_leaf_tree)
        (edge,) = parts["pend_pf"]
        assert increment_for_edge(eight_leaf_tree, edge) == (-1, 1)

    def test_free_pendant_edge(self, eight_leaf_tree):
        _, parts = classify_edges(eight_leaf_tree)
        (edge,) = parts["pend_ind"]
        assert increment_for_edge(eight_leaf_tree, edge) == (0, 1)

    def test_unknown_edge(self, eight_leaf_tree):
        with pytest.raises(TreeError):
            increment_for_edge(eight_leaf_tree, (0, 1))

    @pytest.mark.parametrize("n", [6, 7])
    def test_increment_equals_recount_exhaustively(self, n):
        for t in enumerate_trees(n):
            before = count_subtrees(t)
            for edge in t.edges:
                da, db = increment_for_edge(t, edge)
                after = count_subtrees(attach_leaf(t, edge, n + 1))
                assert (after.a - before.a, after.b - before.b) == (da, db)


# ---------------------------------------------------------------------- #
# enumerate_trees                                                         #
# ---------------------------------------------------------------------- #


def _double_factorial(m):
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


class TestEnumeration:
    @pytest.mark.parametrize("n", [4, 5, 6, 7])
    def test_unrooted_count(self, n):
        assert sum(1 for _ in enumerate_trees(n)) == _double_factorial(2 * n - 5)

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_rooted_count(self, n):
        assert sum(1 for _ in enumerate_trees(n, rooted=True)) == \
            _double_factorial(2 * n - 3)

    def test_trees_are_distinct(self):
        keys = [topology_key(t) for t in enumerate_trees(6)]
        assert len(set(keys)) == len(keys) == 105

    @pytest.mark.parametrize("n", [3, 11])
    def test_guard(self, n):
        with pytest.raises(TreeError):
            next(enumerate_trees(n))

    def test_edge_list_counting_matches_tree_counting(self):
        for edges, tree in zip(growth_edge_lists(7, False), enumerate_trees(7)):
            c = count_subtrees(tree)
            assert subtree_counts_from_edges(edges, 7) == (c.a, c.b)


# ---------------------------------------------------------------------- #
# Topology keys                                                           #
# ---------------------------------------------------------------------- #


class TestTopology:
    def test_label_sensitivity(self):
        t1 = parse_newick("((1,2),(3,4));")
        t2 = parse_newick("((1,3),(2,4));")
        assert not same_topology(t1, t2)

    def test_rooted_differs_from_unrooted(self):
        r = parse_newick("((1,2),(3,4))R;")
        u = parse_newick("((1,2),(3,4));")
        assert topology_key(r) != topology_key(u)

    def test_invariant_under_child_order(self):
        assert same_topology(parse_newick("((3,4),(2,1));"),
                             parse_newick("((1,2),(3,4));"))
