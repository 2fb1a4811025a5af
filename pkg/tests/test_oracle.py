"""The enumeration oracles against each other and against the closed forms."""

from fractions import Fraction as Fr

import pytest

from cherryforks import (
    Model,
    TreeError,
    cherry_pmf_rooted,
    exact_by_path_enumeration,
    exact_by_tree_enumeration,
    joint_unrooted,
    marginal_from_joint,
    pda_cherry_closed_form,
    pda_rooted_cherry_closed_form,
    table_value,
    yhk_rooted_single_cherry_mass,
)

MODELS = (Model.YHK, Model.PDA)


class TestTreeEnumeration:
    def test_six_leaf_pda(self):
        pmf = exact_by_tree_enumeration(6)
        assert dict(pmf.table) == {(2, 2): Fr(6, 7), (0, 3): Fr(1, 7)}

    def test_four_leaf_pda(self):
        assert dict(exact_by_tree_enumeration(4).table) == {(0, 2): Fr(1)}

    @pytest.mark.parametrize("n", [6, 7, 8])
    def test_matches_dp(self, n):
        assert dict(exact_by_tree_enumeration(n).table) == \
            dict(joint_unrooted(Model.PDA, n).table)

    def test_caps(self):
        with pytest.raises(TreeError):
            exact_by_tree_enumeration(10)
        with pytest.raises(TreeError):
            exact_by_tree_enumeration(3)


class TestPathEnumeration:
    def test_yhk_six(self):
        pmf = exact_by_path_enumeration(Model.YHK, 6)
        assert dict(pmf.table) == {(2, 2): Fr(4, 5), (0, 3): Fr(1, 5)}

    @pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
    def test_pda_paths_equal_trees(self, n):
        paths = exact_by_path_enumeration(Model.PDA, n)
        trees = exact_by_tree_enumeration(n)
        assert dict(paths.table) == dict(trees.table)

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_pda_paths_equal_trees_rooted(self, n):
        paths = exact_by_path_enumeration(Model.PDA, n, rooted=True)
        trees = exact_by_tree_enumeration(n, rooted=True)
        assert dict(paths.table) == dict(trees.table)

    @pytest.mark.parametrize("model", MODELS)
    def test_mass_sums_to_one(self, model):
        for rooted in (False, True):
            assert exact_by_path_enumeration(model, 6, rooted=rooted).total() == 1

    def test_pda_cap_is_eight(self):
        with pytest.raises(TreeError):
            exact_by_path_enumeration(Model.PDA, 9)


class TestOracleMarginals:
    @pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
    def test_pda_cherry_closed_form(self, n):
        cherry = marginal_from_joint(exact_by_tree_enumeration(n), "cherry")
        assert dict(cherry.table) == pda_cherry_closed_form(n)

    @pytest.mark.parametrize("n", [4, 5, 6, 7])
    def test_pda_rooted_cherry_closed_form(self, n):
        joint = exact_by_tree_enumeration(n, rooted=True)
        cherry = marginal_from_joint(joint, "cherry")
        assert dict(cherry.table) == pda_rooted_cherry_closed_form(n)

    @pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
    def test_yhk_rooted_cherry_recursion(self, n):
        joint = exact_by_path_enumeration(Model.YHK, n, rooted=True)
        cherry = marginal_from_joint(joint, "cherry")
        assert dict(cherry.table) == dict(cherry_pmf_rooted(Model.YHK, n).table)
        assert cherry.prob(1) == yhk_rooted_single_cherry_mass(n)


class TestOracleMoments:
    """The rooted YHK second-moment formulas, including the isolated n = 6
    pitchfork variance, against exhaustive path enumeration."""

    def test_rooted_yhk_pitchfork_mean_at_four(self):
        joint = exact_by_path_enumeration(Model.YHK, 4, rooted=True)
        assert joint.mean_a() == Fr(2, 3)
        assert joint.mean_a() == table_value(Model.YHK, True, "mean_a", 4)

    @pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
    def test_rooted_yhk_means(self, n):
        joint = exact_by_path_enumeration(Model.YHK, n, rooted=True)
        assert joint.mean_a() == table_value(Model.YHK, True, "mean_a", n)
        assert joint.mean_b() == table_value(Model.YHK, True, "mean_b", n)

    @pytest.mark.parametrize("n", [5, 6, 7, 8])
    def test_rooted_yhk_cherry_variance(self, n):
        joint = exact_by_path_enumeration(Model.YHK, n, rooted=True)
        assert joint.var_b() == table_value(Model.YHK, True, "var_b", n)

    @pytest.mark.parametrize("n", [6, 7, 8])
    def test_rooted_yhk_pitchfork_variance_and_covariance(self, n):
        joint = exact_by_path_enumeration(Model.YHK, n, rooted=True)
        assert joint.var_a() == table_value(Model.YHK, True, "var_a", n)
        assert joint.cov_ab() == table_value(Model.YHK, True, "cov_ab", n)

    @pytest.mark.parametrize("n", [4, 5, 6, 7])
    def test_rooted_pda_all_fields(self, n):
        joint = exact_by_tree_enumeration(n, rooted=True)
        assert joint.mean_a() == table_value(Model.PDA, True, "mean_a", n)
        assert joint.mean_b() == table_value(Model.PDA, True, "mean_b", n)
        assert joint.var_a() == table_value(Model.PDA, True, "var_a", n)
        assert joint.var_b() == table_value(Model.PDA, True, "var_b", n)
        assert joint.cov_ab() == table_value(Model.PDA, True, "cov_ab", n)

    @pytest.mark.parametrize("model", MODELS)
    @pytest.mark.parametrize("n", [6, 7, 8])
    def test_unrooted_second_moments(self, model, n):
        joint = exact_by_path_enumeration(model, n)
        assert joint.var_a() == table_value(model, False, "var_a", n)
        assert joint.var_b() == table_value(model, False, "var_b", n)
        assert joint.cov_ab() == table_value(model, False, "cov_ab", n)
