"""Brute-force ground truth for the exact distributions.

Two independent routes, both exhaustive and exact:

* tree enumeration (PDA only): uniform weight over every labeled tree,
* growth-path enumeration (both models): the full decision tree of edge
  choices with per-step probabilities 1/#pendant-edges (YHK) or
  1/#edges (PDA), accumulating mass at the terminal (a, b).

Path enumeration fixes the taxon insertion order 1..n.  That is valid
because (a, b) is invariant under leaf relabelling, so the random
permutation in the YHK process definition cannot change their joint law.

The caps below are hard guards so a stray call cannot explode; the
terminal counts they allow are:

  tree enumeration, n = 9:   135,135 unrooted / 2,027,025 rooted trees
  YHK paths,        n = 9:   20,160 unrooted / 40,320 rooted
  PDA paths,        n = 8:   10,395 unrooted / 135,135 rooted
"""

from __future__ import annotations

from fractions import Fraction

from .distributions import JointPmf
from .growth import Model
from .trees import Edge, TreeError, growth_edge_lists, subtree_counts_from_edges

Fr = Fraction

TREE_ENUM_MIN_N = 4
TREE_ENUM_MAX_N = 9
PATH_ENUM_MAX_N = {Model.YHK: 9, Model.PDA: 8}


def exact_by_tree_enumeration(n: int, rooted: bool = False) -> JointPmf:
    """The exact PDA joint law as a uniform average over all labeled trees."""
    if not TREE_ENUM_MIN_N <= n <= TREE_ENUM_MAX_N:
        raise TreeError(f"tree enumeration supports {TREE_ENUM_MIN_N} <= n "
                        f"<= {TREE_ENUM_MAX_N}, got {n}")
    counts: dict[tuple[int, int], int] = {}
    total = 0
    for edges in growth_edge_lists(n, rooted):
        key = subtree_counts_from_edges(edges, n)
        counts[key] = counts.get(key, 0) + 1
        total += 1
    table = {key: Fr(c, total) for key, c in counts.items()}
    return JointPmf(model=Model.PDA, rooted=rooted, n=n, table=table)


def exact_by_path_enumeration(model: Model | str, n: int,
                              rooted: bool = False) -> JointPmf:
    """The exact joint law of either model by expanding every growth path."""
    model = Model.parse(model)
    cap = PATH_ENUM_MAX_N[model]
    if not TREE_ENUM_MIN_N <= n <= cap:
        raise TreeError(f"path enumeration supports {TREE_ENUM_MIN_N} <= n "
                        f"<= {cap} for {model.value}, got {n}")
    pendant_only = model is Model.YHK
    mass: dict[tuple[int, int], Fraction] = {}

    if rooted:
        edges: list[Edge] = [(n, n + 1), (n + 1, 0), (n + 1, 1)]
        pend = [1, 2]
        first_interior = n + 2
    else:
        edges = [(0, 1)]
        pend = [0]
        first_interior = n

    def rec(k: int, next_interior: int, prob: Fraction) -> None:
        if k == n:
            key = subtree_counts_from_edges(edges, n)
            mass[key] = mass.get(key, Fr(0)) + prob
            return
        slots = len(pend) if pendant_only else len(edges)
        step_prob = prob / slots
        w = next_interior
        for raw in range(slots):
            c = pend[raw] if pendant_only else raw
            u, v = edges[c]
            edges[c] = (w, u) if u < n else (u, w)
            edges.append((w, v))
            edges.append((w, k))
            added = 0
            if pendant_only:
                old = pend[raw]
                pend[raw] = len(edges) - 2
                pend.append(len(edges) - 1)
                added = 1
                if (not rooted) and k == 2:
                    pend.append(c)
                    added = 2
            rec(k + 1, next_interior + 1, step_prob)
            if pendant_only:
                for _ in range(added):
                    pend.pop()
                pend[raw] = old
            edges.pop()
            edges.pop()
            edges[c] = (u, v)

    if n == 2:
        key = subtree_counts_from_edges(edges, n)
        mass[key] = Fr(1)
    else:
        rec(2, first_interior, Fr(1))
    return JointPmf(model=model, rooted=rooted, n=n, table=mass)
