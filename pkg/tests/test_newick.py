"""Newick parsing, writing, and round-trip stability."""

import pytest

from cherryforks import (
    Model,
    NewickError,
    TreeError,
    count_subtrees,
    grow,
    parse_newick,
    same_topology,
    write_newick,
)


class TestParse:
    def test_quartet(self):
        t = parse_newick("((1,2),(3,4));")
        assert not t.is_rooted
        c = count_subtrees(t)
        assert (c.a, c.b) == (0, 2)

    def test_rooted_marker_detected(self):
        t = parse_newick("(((1,2),3),4)R;")
        assert t.is_rooted
        c = count_subtrees(t)
        assert (c.a, c.b) == (1, 1)

    def test_rooted_flag_overrides_missing_marker(self):
        t = parse_newick("((1,2),(3,4));", rooted=True)
        assert t.is_rooted and len(t.edges) == 7

    def test_unrooted_flag_overrides_marker(self):
        t = parse_newick("((1,2),(3,4))R;", rooted=False)
        assert not t.is_rooted

    def test_trifurcating_top_level(self):
        t = parse_newick("((1,2),(3,4),(5,6));")
        assert not t.is_rooted and t.n_leaves == 6

    def test_string_taxa_mapped_in_input_order(self):
        t = parse_newick("((alpha,beta),(gamma,delta));")
        # alpha -> 1, beta -> 2, ...
        assert same_topology(t, parse_newick("((1,2),(3,4));"))

    def test_branch_lengths_parsed_and_ignored(self):
        t = parse_newick("((1:0.1,2:0.2):0.5,(3:0.3,4:0.4):0.6);")
        assert same_topology(t, parse_newick("((1,2),(3,4));"))

    def test_syntax_error_carries_position(self):
        with pytest.raises(NewickError) as err:
            parse_newick("((1,2);")
        assert "position" in str(err.value)

    def test_duplicate_taxon(self):
        with pytest.raises(NewickError, match="duplicate"):
            parse_newick("((1,2),(1,3));")

    def test_non_binary_vertex(self):
        with pytest.raises(TreeError, match="non-binary"):
            parse_newick("(((1,2,3),4),(5,6));")

    def test_bad_branch_length(self):
        with pytest.raises(NewickError):
            parse_newick("((1:x,2),(3,4));")


class TestWrite:
    def test_canonical_quartet(self):
        assert write_newick(parse_newick("((3,4),(2,1));")) == "(1,(2,(3,4)));"

    def test_rooted_keeps_marker(self):
        text = write_newick(parse_newick("(((1,2),3),4)R;"))
        assert text.endswith("R;")
        assert parse_newick(text).is_rooted

    def test_write_is_stable(self):
        text = "((2,(5,7)),(6,((3,4),(1,8))));"
        once = write_newick(parse_newick(text))
        assert write_newick(parse_newick(once)) == once


class TestRoundTrip:
    @pytest.mark.parametrize("model", [Model.YHK, Model.PDA])
    def test_corpus(self, model):
        # 100 random trees per leaf count across 4..64, mixed rootedness.
        for n in range(4, 65):
            for seed in range(100):
                rooted = (seed % 2 == 0)
                tree, _ = grow(model, n, rooted=rooted, seed=(n, seed))
                text = write_newick(tree)
                back = parse_newick(text)
                assert back.is_rooted == rooted
                assert same_topology(back, tree), (n, seed)
                assert write_newick(back) == text
