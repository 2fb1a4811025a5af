import pytest

from cherryforks import Model, parse_newick

# An 8-leaf tree realizing the worked edge-classification example: one
# pitchfork ({2,5,7}), three cherries ({5,7} non-essential, {3,4} and {1,8}
# essential), and leaf 6 in neither.  Class sizes: pend_ec=4, pend_pf=1,
# pend_cp=2, pend_ind=1, int_ec=2, int_nec=3.
EIGHT_LEAF_NEWICK = "((2,(5,7)),(6,((3,4),(1,8))));"

MODELS = (Model.YHK, Model.PDA)


@pytest.fixture(scope="session")
def eight_leaf_tree():
    return parse_newick(EIGHT_LEAF_NEWICK)


@pytest.fixture(scope="session")
def snowflake6():
    """Three cherries hanging off one central vertex: (a, b) = (0, 3)."""
    return parse_newick("((1,2),(3,4),(5,6));")


@pytest.fixture(scope="session")
def caterpillar6():
    """The 6-leaf caterpillar: (a, b) = (2, 2)."""
    return parse_newick("(1,(2,(3,(4,(5,6)))));")
