"""Seeded random growth of trees under the YHK and PDA processes.

Both models grow a tree by repeated leaf attachment starting from the
two-leaf tree.  YHK attaches to a uniformly chosen *pendant* edge and
inserts the taxa in a uniformly random order; PDA attaches to a uniformly
chosen edge (any edge) and, because the resulting distribution is
invariant under relabelling, inserts taxa in the fixed order 1..n.

Reproducibility
---------------
All randomness comes from numpy's PCG64.  ``grow`` uses
``SeedSequence(seed)`` directly.  ``sample_counts`` partitions replicates
into fixed-size chunks of :data:`SAMPLE_CHUNK`; chunk ``i`` draws from
``PCG64(SeedSequence(seed, spawn_key=(i,)))``, so results are independent
of how chunks are distributed over workers.  Within a chunk the choice
matrix is drawn one growth step at a time (column-major), each column
uniform on the step's documented choice count.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from .trees import Edge, PhyloTree, TreeError, subtree_counts_from_edges

SAMPLE_CHUNK = 16384


class Model(str, Enum):
    """The two tree-generating null models."""

    YHK = "yhk"
    PDA = "pda"

    @classmethod
    def parse(cls, value: "Model | str") -> "Model":
        if isinstance(value, Model):
            return value
        try:
            return cls(value.lower())
        except ValueError:
            raise ValueError(f"unknown model {value!r}; expected one of "
                             f"{[m.value for m in cls]}") from None


@dataclass(frozen=True)
class GrowthTrace:
    """Everything needed to reproduce one grown tree bit-for-bit.

    ``chosen_edges[i]`` is the raw uniform draw for step ``i`` (an index
    into the pendant-slot array for YHK, an edge column for PDA), and
    ``permutation`` is the taxon insertion order.  The seed may be an int
    or a tuple of ints (a derived stream key).
    """

    seed: "int | tuple[int, ...]"
    model: Model
    rooted: bool
    n: int
    permutation: tuple[int, ...]
    chosen_edges: tuple[int, ...]


def step_choice_counts(model: Model, n: int, rooted: bool) -> list[int]:
    """Number of equally likely choices at each growth step 2 -> n.

    YHK picks among the pendant edges (k of them on a k-leaf tree, except
    the single edge of the unrooted two-leaf tree); PDA picks among all
    edges (2k-3 unrooted, 2k-1 rooted).
    """
    model = Model.parse(model)
    counts = []
    for k in range(2, n):
        if model is Model.YHK:
            counts.append(1 if (k == 2 and not rooted) else k)
        elif rooted:
            counts.append(2 * k - 1)
        else:
            counts.append(2 * k - 3)
    return counts


def _draw_choices(model: Model, n: int, rooted: bool,
                  rng: np.random.Generator, reps: int) -> np.ndarray:
    moduli = step_choice_counts(model, n, rooted)
    choices = np.empty((reps, len(moduli)), np.int32)
    for j, m in enumerate(moduli):
        choices[:, j] = rng.integers(0, m, size=reps, dtype=np.int32)
    return choices


# ---------------------------------------------------------------------------
# Pure-Python growth (reference semantics for kernels, used by grow/replay)
# ---------------------------------------------------------------------------


def _grow_edges(n: int, rooted: bool, pendant_only: bool,
                choices, leaf_ids: list[int]) -> list[Edge]:
    """Grow one tree; mirrors the kernel conventions in
    :mod:`cherryforks._kernels` exactly, but with arbitrary leaf ids so a
    taxon permutation can be applied."""
    if rooted:
        edges: list[Edge] = [(n, n + 1), (n + 1, leaf_ids[0]), (n + 1, leaf_ids[1])]
        pend = [1, 2]
        next_interior = n + 2
    else:
        edges = [(leaf_ids[0], leaf_ids[1])]
        pend = [0]
        next_interior = n
    for k in range(2, n):
        raw = int(choices[k - 2])
        c = pend[raw] if pendant_only else raw
        u, v = edges[c]
        w = next_interior
        next_interior += 1
        edges[c] = (w, u) if u < n else (u, w)
        edges.append((w, v))
        edges.append((w, leaf_ids[k]))
        if pendant_only:
            pend[raw] = len(edges) - 2
            pend.append(len(edges) - 1)
            if (not rooted) and k == 2:
                pend.append(c)
    return edges


def grow(model: Model | str, n: int, rooted: bool = False,
         seed: "int | tuple[int, ...]" = 0,
         sample_permutation: bool | None = None) -> tuple[PhyloTree, GrowthTrace]:
    """Grow one random tree; deterministic given (model, n, rooted, seed).

    For YHK the taxon insertion order is itself sampled, as in the process
    definition; ``sample_permutation=False`` opts into the fixed order
    1..n (a valid shortcut for label-invariant statistics).  PDA always
    uses the fixed order.
    """
    model = Model.parse(model)
    if n < 2:
        raise TreeError("growth requires n >= 2")
    if sample_permutation is None:
        sample_permutation = model is Model.YHK
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    if model is Model.YHK and sample_permutation:
        permutation = tuple(int(x) + 1 for x in rng.permutation(n))
    else:
        permutation = tuple(range(1, n + 1))
    choices = _draw_choices(model, n, rooted, rng, reps=1)[0]
    trace = GrowthTrace(seed=seed, model=model, rooted=rooted, n=n,
                        permutation=permutation,
                        chosen_edges=tuple(int(c) for c in choices))
    return replay(trace), trace


def replay(trace: GrowthTrace) -> PhyloTree:
    """Rebuild the exact tree recorded in a trace (no randomness)."""
    leaf_ids = [t - 1 for t in trace.permutation]
    edges = _grow_edges(trace.n, trace.rooted,
                        pendant_only=trace.model is Model.YHK,
                        choices=trace.chosen_edges, leaf_ids=leaf_ids)
    root = trace.n if trace.rooted else None
    return PhyloTree.from_edges(edges, trace.n, root)


# ---------------------------------------------------------------------------
# Batched sampling of (a, b)
# ---------------------------------------------------------------------------


def sample_counts(model: Model | str, n: int, rooted: bool = False,
                  reps: int = 1, seed: int = 0,
                  backend: str | None = None) -> dict[tuple[int, int], int]:
    """Sample ``reps`` trees and histogram their (pitchfork, cherry) counts.

    Deterministic given the seed and independent of the backend; counters
    are plain Python ints so they cannot overflow.
    """
    model = Model.parse(model)
    if reps < 1:
        raise ValueError("reps must be >= 1")
    if rooted:
        if n < 2:
            raise TreeError("rooted sampling requires n >= 2")
    elif n < 4:
        raise TreeError("unrooted sampling requires n >= 4")
    pendant_only = model is Model.YHK
    hist: dict[tuple[int, int], int] = {}
    done = 0
    chunk_index = 0
    while done < reps:
        todo = min(SAMPLE_CHUNK, reps - done)
        ss = np.random.SeedSequence(entropy=seed, spawn_key=(chunk_index,))
        rng = np.random.default_rng(ss)
        choices = _draw_choices(model, n, rooted, rng, reps=todo)
        a, b = _kernels.simulate_counts(n, rooted, pendant_only, choices,
                                        backend=backend)
        pairs, counts = np.unique(np.stack([a, b], axis=1), axis=0,
                                  return_counts=True)
        for (ai, bi), cnt in zip(pairs.tolist(), counts.tolist()):
            key = (int(ai), int(bi))
            hist[key] = hist.get(key, 0) + int(cnt)
        done += todo
        chunk_index += 1
    return hist


def counts_for_choices(model: Model | str, n: int, rooted: bool,
                       choices) -> tuple[int, int]:
    """Reference (a, b) for one raw choice vector, via the pure-Python
    growth path; used to cross-check the kernels."""
    model = Model.parse(model)
    edges = _grow_edges(n, rooted, pendant_only=model is Model.YHK,
                        choices=choices, leaf_ids=list(range(n)))
    return subtree_counts_from_edges(edges, n)
