"""Structural properties of the cherry laws: log-concavity, modes, change
points, and total variation distances between rooted and unrooted trees.

The quarter-point marks ``delta(n) = floor(n/4)`` and ``nabla(n) =
ceil(n/4)`` organise everything here: the PDA rooted-minus-unrooted
difference changes sign after ``delta(n)``, and the unrooted PDA cherry law
peaks at ``nabla(n)`` once n > 8.  Both marks coincide with closed-form
floor expressions, which :func:`floor_identities_hold` verifies wholesale.

The rooted/unrooted PDA total variation distance has an exact factorial
form evaluated by :func:`tvd_pda_closed_form`; beyond
:data:`TVD_EXACT_CROSSOVER` leaves, :func:`tvd_pda_asymptotic` switches to
log-gamma arithmetic (the distance decays like ``1/sqrt(2 pi n)``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import distributions as dist
from .distributions import MarginalPmf
from .growth import Model
from .trees import TreeError

Fr = Fraction

# Above this n, tvd_pda_value switches from exact factorials to log-gamma.
TVD_EXACT_CROSSOVER = 1024


# ---------------------------------------------------------------------------
# Quarter-point marks
# ---------------------------------------------------------------------------


def delta(n: int) -> int:
    """floor(n/4); checks the identity floor(n(n-1) / (2(2n-3))) = floor(n/4)
    for n >= 4."""
    if n >= 4:
        assert (n * (n - 1)) // (2 * (2 * n - 3)) == n // 4
    return n // 4


def nabla(n: int) -> int:
    """ceil(n/4); the identity floor((n+1)(n+2) / (2(2n-1))) = ceil(n/4) is
    asserted only for n > 8 (it genuinely fails below)."""
    if n > 8:
        assert ((n + 1) * (n + 2)) // (2 * (2 * n - 1)) == -(-n // 4)
    return -(-n // 4)


def floor_identities_hold(n_max: int, n_min: int = 4) -> bool:
    """Vectorized scan of both floor identities up to n_max."""
    ns = np.arange(n_min, n_max + 1, dtype=np.int64)
    lower = (ns * (ns - 1)) // (2 * (2 * ns - 3)) == ns // 4
    ns_hi = ns[ns > 8]
    upper = (((ns_hi + 1) * (ns_hi + 2)) // (2 * (2 * ns_hi - 1))
             == -(-ns_hi // 4))
    return bool(lower.all() and upper.all())


# ---------------------------------------------------------------------------
# Log-concavity and modes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ShapeReport:
    """Shape summary of one PMF: strict log-concavity over the interior of
    the support, the mode plateau, and the first violating index if any."""

    n: int
    model: Model
    rooted: bool
    statistic: str
    is_log_concave: bool
    modes: tuple[int, ...]
    first_violation: Optional[int]


def log_concavity(pmf: MarginalPmf) -> ShapeReport:
    """Check p(k)^2 > p(k-1) p(k+1) strictly across the support interior.

    Requires contiguous support (true for every law produced here); the
    reported modes are the argmax plateau.
    """
    support = pmf.support()
    if not support:
        raise ValueError("empty PMF")
    lo, hi = support[0], support[-1]
    if support != tuple(range(lo, hi + 1)):
        raise ValueError("support is not contiguous")
    first_violation = None
    for k in range(lo + 1, hi):
        if pmf.prob(k) ** 2 <= pmf.prob(k - 1) * pmf.prob(k + 1):
            first_violation = k
            break
    peak = max(pmf.prob(k) for k in support)
    modes = tuple(k for k in support if pmf.prob(k) == peak)
    return ShapeReport(n=pmf.n, model=pmf.model, rooted=pmf.rooted,
                       statistic=pmf.statistic,
                       is_log_concave=first_violation is None,
                       modes=modes, first_violation=first_violation)


# ---------------------------------------------------------------------------
# YHK/PDA change point of the unrooted cherry laws
# ---------------------------------------------------------------------------


def _change_point_of(yhk: MarginalPmf, pda: MarginalPmf) -> tuple[int, int]:
    n = yhk.n
    ks = range(2, n // 2 + 1)
    # ratio yhk/pda strictly increasing over the common support
    prev = None
    for k in ks:
        ratio = yhk.prob(k) / pda.prob(k)
        if prev is not None and ratio <= prev:
            raise AssertionError(f"ratio not strictly increasing at n={n}, "
                                 f"k={k}")
        prev = ratio
    if not yhk.prob(2) < pda.prob(2):
        raise AssertionError(f"expected the YHK law below the PDA law at "
                             f"k=2 for n={n}")
    signs = [1 if yhk.prob(k) > pda.prob(k) else -1 for k in ks]
    flips = [k for k, s_prev, s_next in zip(list(ks)[1:], signs, signs[1:])
             if s_prev != s_next]
    if len(flips) != 1:
        raise AssertionError(f"expected exactly one sign change at n={n}, "
                             f"found {len(flips)}")
    return flips[0] - 1, flips[0]


def change_point(n: int) -> tuple[int, int]:
    """The integer bracket (k, k+1) across which the unrooted YHK cherry law
    overtakes the PDA one, n >= 6.

    Verifies along the way that the YHK/PDA probability ratio is strictly
    increasing on 2..floor(n/2), that YHK sits below PDA at k = 2, and that
    there is exactly one sign change.
    """
    if n < 6:
        raise TreeError("the change point is defined for n >= 6")
    yhk = dist.cherry_pmf_unrooted(Model.YHK, n)
    pda = dist.cherry_pmf_unrooted(Model.PDA, n)
    return _change_point_of(yhk, pda)


def change_point_scan(n_min: int, n_max: int) -> dict[int, tuple[int, int]]:
    """Change-point brackets for every n in [n_min, n_max] (one recursion
    sweep for the YHK side)."""
    if n_min < 6:
        raise TreeError("the change point is defined for n >= 6")
    out: dict[int, tuple[int, int]] = {}
    for yhk in dist.iter_cherry_pmfs(Model.YHK, False, n_max):
        if yhk.n < n_min:
            continue
        pda = dist.cherry_pmf_unrooted(Model.PDA, yhk.n)
        out[yhk.n] = _change_point_of(yhk, pda)
    return out


# ---------------------------------------------------------------------------
# Total variation distance
# ---------------------------------------------------------------------------


def tvd(p: MarginalPmf, q: MarginalPmf) -> Fraction:
    """Half the L1 distance over the union support, exact."""
    if p.n != q.n:
        raise ValueError(f"mismatched n: {p.n} != {q.n}")
    if p.statistic != q.statistic:
        raise ValueError("mismatched statistics")
    keys = set(p.table) | set(q.table)
    return sum((abs(p.prob(k) - q.prob(k)) for k in keys), Fr(0)) / 2


def tvd_pda_closed_form(n: int) -> Fraction:
    """Exact rooted/unrooted PDA cherry TV distance, n >= 4:

        n! (n-2)! (n-4)! 2^(n-2d-1) / ((2n-3)! (n-2d-2)! d! (d-1)!)

    with d = delta(n); equals the direct half-L1 computation.
    """
    if n < 4:
        raise TreeError("the closed form requires n >= 4")
    d = delta(n)
    f = dist._factorial
    return Fr(f(n) * f(n - 2) * f(n - 4) * 2 ** (n - 2 * d - 1),
              f(2 * n - 3) * f(n - 2 * d - 2) * f(d) * f(d - 1))


def tvd_pda_asymptotic(n: int) -> float:
    """The same quantity through log-gamma arithmetic, for n far beyond
    exact-factorial comfort.  Decays like 1/sqrt(2 pi n)."""
    if n < 4:
        raise TreeError("requires n >= 4")
    d = n // 4
    lg = math.lgamma
    log_value = (lg(n + 1) + lg(n - 1) + lg(n - 3)
                 + (n - 2 * d - 1) * math.log(2.0)
                 - lg(2 * n - 2) - lg(n - 2 * d - 1) - lg(d + 1) - lg(d))
    return math.exp(log_value)


def tvd_pda_value(n: int) -> Fraction | float:
    """Dispatch on :data:`TVD_EXACT_CROSSOVER`: exact rationals for small n,
    log-gamma floats beyond."""
    if n <= TVD_EXACT_CROSSOVER:
        return tvd_pda_closed_form(n)
    return tvd_pda_asymptotic(n)


def pda_rooted_excess_profile(n: int) -> bool:
    """Check the pointwise comparison backing the closed form: the rooted
    PDA cherry law dominates the unrooted one exactly on k <= delta(n) and
    is strictly below it after."""
    rooted = dist.pda_rooted_cherry_closed_form(n)
    unrooted = dist.pda_cherry_closed_form(n)
    d = delta(n)
    for k in range(1, n // 2 + 1):
        diff = rooted.get(k, Fr(0)) - unrooted.get(k, Fr(0))
        if k <= d and diff < 0:
            return False
        if k > d and diff >= 0:
            return False
    return True


@dataclass(frozen=True)
class TvdSequence:
    """Per-n rooted/unrooted cherry TV distances with a monotonicity
    verdict (strict decrease holds provably for YHK; for PDA it is only
    observed)."""

    model: Model
    n_values: tuple[int, ...]
    distances: tuple[Fraction, ...]
    strictly_decreasing: bool


def tvd_sequence(model: Model | str, n_min: int, n_max: int) -> TvdSequence:
    """Exact rooted-vs-unrooted cherry TV distance for each n in range.

    Works on the unreduced integer tables: the two recursions' common
    denominators share almost all factors, so bringing both sides to the
    lcm costs one small-cofactor multiply per entry, and only the final
    per-n distance is reduced.
    """
    model = Model.parse(model)
    if not 4 <= n_min < n_max:
        raise TreeError("need 4 <= n_min < n_max")
    ns = []
    ds = []
    rooted_iter = dist.iter_cherry_int_tables(model, True, n_max)
    rn, rnums, rden = next(rooted_iter)
    for un, unums, uden in dist.iter_cherry_int_tables(model, False, n_max):
        while rn < un:
            rn, rnums, rden = next(rooted_iter)
        if un < n_min:
            continue
        g = math.gcd(rden, uden)
        mul_rooted = uden // g
        mul_unrooted = rden // g
        total = sum(abs(rnums.get(k, 0) * mul_rooted
                        - unums.get(k, 0) * mul_unrooted)
                    for k in set(rnums) | set(unums))
        ns.append(un)
        ds.append(Fr(total, 2 * rden * mul_rooted))
    decreasing = all(b < a for a, b in zip(ds, ds[1:]))
    return TvdSequence(model=model, n_values=tuple(ns), distances=tuple(ds),
                       strictly_decreasing=decreasing)


def yhk_sign_change_exists(n: int) -> bool:
    """Whether the rooted-minus-unrooted YHK cherry difference changes sign
    at some interior index (it must, since both laws sum to one and the
    rooted law owns all the mass at k = 1)."""
    rooted = dist.cherry_pmf_rooted(Model.YHK, n)
    unrooted = dist.cherry_pmf_unrooted(Model.YHK, n)
    diffs = [rooted.prob(k) - unrooted.prob(k)
             for k in range(1, n // 2 + 1)]
    return any(d1 * d2 < 0 for d1, d2 in zip(diffs, diffs[1:]))


@dataclass(frozen=True)
class TvdConjectureRow:
    n: int
    yhk: Fraction
    pda: Fraction
    yhk_below_pda: bool


def tvd_conjecture_scan(n_min: int, n_max: int) -> tuple[TvdConjectureRow, ...]:
    """Numerical evidence for the (open) claim that the YHK TV distance sits
    below the PDA one pointwise.  Reported, never asserted."""
    yhk = tvd_sequence(Model.YHK, n_min, n_max)
    pda = tvd_sequence(Model.PDA, n_min, n_max)
    return tuple(TvdConjectureRow(n=n, yhk=dy, pda=du, yhk_below_pda=dy <= du)
                 for n, dy, du in zip(yhk.n_values, yhk.distances,
                                      pda.distances))
