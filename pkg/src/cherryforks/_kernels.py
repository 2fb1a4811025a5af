"""Simulation kernels for random tree growth.

Two interchangeable implementations of the same kernel:

* ``simulate_serial``: per-replicate loops, compiled with ``numba.njit``
  when the numba backend is active;
* ``simulate_batch_numpy``: the pure-numpy fallback, vectorized across
  replicates (every replicate performs the same step sizes, so the growth
  frontier can be advanced column-wise).

Both consume the same pre-drawn choice matrix and produce bit-identical
``(a, b)`` counts, which the test suite asserts.  Backend selection is by
the ``CHERRYFORKS_BACKEND`` environment variable: ``numba`` (default when
importable) or ``numpy``.

Growth-state conventions shared by both kernels (and by the pure-Python
reference in :mod:`cherryforks.growth`):

* leaf ids are ``0..n-1``; for rooted trees the root is ``n`` and its
  neighbour ``n+1``; fresh interior vertices are allocated upward;
* edges live in parallel ``(u, v)`` arrays in creation order; attaching to
  edge column ``c`` rewrites it to ``(u, w)`` (swapped to keep any leaf in
  the second slot) and appends ``(w, v)`` and ``(w, new_leaf)``;
* pendant-only growth keeps a slot array of pendant edge columns; the
  chosen slot is repointed at ``(w, v)`` and ``(w, new_leaf)`` is appended.
"""

from __future__ import annotations

import os
import warnings

import numpy as np

_ENV_VAR = "CHERRYFORKS_BACKEND"
_VALID_BACKENDS = ("numba", "numpy")


def _numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def resolve_backend() -> str:
    """Resolve the active backend from the environment (once per call)."""
    requested = os.environ.get(_ENV_VAR, "").strip().lower()
    if requested and requested not in _VALID_BACKENDS:
        raise ValueError(f"{_ENV_VAR} must be one of {_VALID_BACKENDS}, "
                         f"got {requested!r}")
    if requested == "numpy":
        return "numpy"
    if requested == "numba":
        if not _numba_available():
            raise ValueError(f"{_ENV_VAR}=numba but numba is not importable")
        return "numba"
    return "numba" if _numba_available() else "numpy"


# ---------------------------------------------------------------------------
# Serial kernel (numba target)
# ---------------------------------------------------------------------------


def _simulate_serial_py(n, rooted, pendant_only, choices, out_a, out_b):
    reps = choices.shape[0]
    n_edges = 2 * n - 1 if rooted else 2 * n - 3
    n_vertices = 2 * n if rooted else 2 * n - 2
    eu = np.empty(n_edges, np.int32)
    ev = np.empty(n_edges, np.int32)
    pend = np.empty(n, np.int32)
    ld = np.empty(n_vertices, np.int32)
    for r in range(reps):
        if rooted:
            eu[0] = n
            ev[0] = n + 1
            eu[1] = n + 1
            ev[1] = 0
            eu[2] = n + 1
            ev[2] = 1
            m = 3
            pend[0] = 1
            pend[1] = 2
            n_pend = 2
            next_interior = n + 2
        else:
            eu[0] = 0
            ev[0] = 1
            m = 1
            pend[0] = 0
            n_pend = 1
            next_interior = n
        for k in range(2, n):
            raw = choices[r, k - 2]
            c = pend[raw] if pendant_only else raw
            u = eu[c]
            v = ev[c]
            w = next_interior
            next_interior += 1
            if u < n:  # only the very first unrooted step has a leaf here
                eu[c] = w
                ev[c] = u
            else:
                ev[c] = w
            eu[m] = w
            ev[m] = v
            eu[m + 1] = w
            ev[m + 1] = k  # new leaf id
            if pendant_only:
                pend[raw] = m
                pend[n_pend] = m + 1
                n_pend += 1
                if (not rooted) and k == 2:
                    pend[n_pend] = c
                    n_pend += 1
            m += 2
        # count cherries/pitchforks from leaf-neighbour degrees
        for x in range(n_vertices):
            ld[x] = 0
        for j in range(m):
            if eu[j] < n:
                ld[ev[j]] += 1
            if ev[j] < n:
                ld[eu[j]] += 1
        b = 0
        for x in range(n, n_vertices):
            if ld[x] == 2:
                b += 1
        a = 0
        for j in range(m):
            p = eu[j]
            q = ev[j]
            if p >= n and q >= n:
                if ld[p] == 2 and ld[q] == 1:
                    a += 1
                elif ld[q] == 2 and ld[p] == 1:
                    a += 1
        out_a[r] = a
        out_b[r] = b


_SIMULATE_NUMBA = None


def _simulate_serial_numba():
    """Compile the serial kernel on first use (cached across calls)."""
    global _SIMULATE_NUMBA
    if _SIMULATE_NUMBA is None:
        from numba import njit

        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            _SIMULATE_NUMBA = njit(cache=True, nogil=True)(_simulate_serial_py)
    return _SIMULATE_NUMBA


# ---------------------------------------------------------------------------
# Vectorized numpy fallback
# ---------------------------------------------------------------------------


def _simulate_batch_numpy(n, rooted, pendant_only, choices):
    reps = choices.shape[0]
    n_edges = 2 * n - 1 if rooted else 2 * n - 3
    n_vertices = 2 * n if rooted else 2 * n - 2
    eu = np.zeros((reps, n_edges), np.int32)
    ev = np.zeros((reps, n_edges), np.int32)
    rows = np.arange(reps)
    if rooted:
        eu[:, 0] = n
        ev[:, 0] = n + 1
        eu[:, 1] = n + 1
        ev[:, 1] = 0
        eu[:, 2] = n + 1
        ev[:, 2] = 1
        m = 3
        pend = np.zeros((reps, n), np.int32)
        pend[:, 0] = 1
        pend[:, 1] = 2
        n_pend = 2
        next_interior = n + 2
    else:
        eu[:, 0] = 0
        ev[:, 0] = 1
        m = 1
        pend = np.zeros((reps, n), np.int32)
        pend[:, 0] = 0
        n_pend = 1
        next_interior = n
    for k in range(2, n):
        raw = choices[:, k - 2]
        c = pend[rows, raw] if pendant_only else raw
        u = eu[rows, c]
        v = ev[rows, c]
        w = next_interior  # same fresh id in every replicate
        next_interior += 1
        u_is_leaf = u < n
        eu[rows, c] = np.where(u_is_leaf, w, u)
        ev[rows, c] = np.where(u_is_leaf, u, w)
        eu[:, m] = w
        ev[rows, m] = v
        eu[:, m + 1] = w
        ev[:, m + 1] = k
        if pendant_only:
            pend[rows, raw] = m
            pend[:, n_pend] = m + 1
            n_pend += 1
            if (not rooted) and k == 2:
                pend[rows, n_pend] = c
                n_pend += 1
        m += 2
    # leaf-neighbour degrees, then cherry/pitchfork masks
    ld = np.zeros((reps, n_vertices), np.int32)
    flat = ld.reshape(-1)
    base = rows[:, None] * n_vertices
    np.add.at(flat, (base + ev)[eu < n], 1)
    np.add.at(flat, (base + eu)[ev < n], 1)
    cherry = ld == 2
    cherry[:, :n] = False
    head = ld == 1
    head[:, :n] = False
    b = cherry[:, n:].sum(axis=1).astype(np.int64)
    rows2 = rows[:, None]
    both_interior = ev >= n  # eu is interior for every edge once n >= 3
    hit = both_interior & ((cherry[rows2, eu] & head[rows2, ev])
                           | (cherry[rows2, ev] & head[rows2, eu]))
    a = hit.sum(axis=1).astype(np.int64)
    return a, b


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------


def simulate_counts(n: int, rooted: bool, pendant_only: bool,
                    choices: np.ndarray, backend: str | None = None):
    """Grow ``choices.shape[0]`` trees and return their (a, b) arrays."""
    if backend is None:
        backend = resolve_backend()
    if backend == "numba":
        out_a = np.empty(choices.shape[0], np.int64)
        out_b = np.empty(choices.shape[0], np.int64)
        _simulate_serial_numba()(n, rooted, pendant_only,
                                 np.ascontiguousarray(choices), out_a, out_b)
        return out_a, out_b
    return _simulate_batch_numpy(n, rooted, pendant_only, choices)
