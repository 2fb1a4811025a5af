"""Exact joint and marginal distributions of (pitchforks, cherries).

Everything here is computed in exact rational arithmetic
(:class:`fractions.Fraction`); floats appear only in output formatting.

The joint distribution of ``(A_n, B_n)`` on unrooted trees satisfies, for
both models, a four-term recursion in n driven by the edge-class sizes of
the growth process:

* PDA:  weights ``(n+3a-b-3, a+1, 3(b-a+1), n-a-2b+2)`` over ``2n-3``,
* YHK:  weights ``(2a,       a+1, 2(b-a+1), n-a-2b+2)`` over ``n``,

iterated from the two-point n = 6 base ``{(2,2), (0,3)}`` with masses
``6/7, 1/7`` (PDA) and ``4/5, 1/5`` (YHK).  Internally the DP keeps integer
numerators over a running common denominator, so no gcd work happens until
a table is materialized.

Cherry marginals additionally have one-dimensional forms:

* PDA unrooted, closed form
  ``n!(n-2)!(n-4)! 2^(n-2k) / ((n-2k)!(2n-4)! k!(k-2)!)`` and the matching
  two-term recursion in n,
* PDA rooted, closed form
  ``n!(n-1)!(n-2)! 2^(n-2k) / ((n-2k)!(2n-2)! k!(k-1)!)``, which also equals
  a two-term mixture of adjacent unrooted values,
* YHK (rooted and unrooted), the two-term recursion
  ``p'(k) = (2k/n) p(k) + ((n-2k+2)/n) p(k-1)`` from the bases
  ``{1: 1}`` at n = 2 (rooted) and ``{2: 1}`` at n = 4 (unrooted).

No closed form is known for the YHK cherry marginal; it is always obtained
from the recursion.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Literal, Mapping

from .growth import Model
from .trees import TreeError

Statistic = Literal["cherry", "pitchfork"]

IntTable1 = dict[int, int]
IntTable2 = dict[tuple[int, int], int]


# ---------------------------------------------------------------------------
# Result types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JointPmf:
    """Sparse exact joint law of (a, b) = (pitchforks, cherries)."""

    model: Model
    rooted: bool
    n: int
    table: Mapping[tuple[int, int], Fraction]

    def total(self) -> Fraction:
        return sum(self.table.values(), Fraction(0))

    def prob(self, a: int, b: int) -> Fraction:
        return self.table.get((a, b), Fraction(0))

    def expectation(self, f: Callable[[int, int], Fraction | int]) -> Fraction:
        return sum((p * f(a, b) for (a, b), p in self.table.items()),
                   Fraction(0))

    def mean_a(self) -> Fraction:
        return self.expectation(lambda a, b: a)

    def mean_b(self) -> Fraction:
        return self.expectation(lambda a, b: b)

    def var_a(self) -> Fraction:
        return self.expectation(lambda a, b: a * a) - self.mean_a() ** 2

    def var_b(self) -> Fraction:
        return self.expectation(lambda a, b: b * b) - self.mean_b() ** 2

    def cov_ab(self) -> Fraction:
        return (self.expectation(lambda a, b: a * b)
                - self.mean_a() * self.mean_b())


@dataclass(frozen=True)
class MarginalPmf:
    """Sparse exact law of one statistic (cherry or pitchfork count)."""

    model: Model
    rooted: bool
    n: int
    statistic: Statistic
    table: Mapping[int, Fraction]

    def total(self) -> Fraction:
        return sum(self.table.values(), Fraction(0))

    def prob(self, k: int) -> Fraction:
        return self.table.get(k, Fraction(0))

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(k for k, p in self.table.items() if p))

    def mean(self) -> Fraction:
        return sum((p * k for k, p in self.table.items()), Fraction(0))

    def variance(self) -> Fraction:
        m = self.mean()
        return sum((p * k * k for k, p in self.table.items()), Fraction(0)) - m * m


# ---------------------------------------------------------------------------
# Shared big-integer helpers
# ---------------------------------------------------------------------------

_FACT_LOCK = threading.Lock()
_FACTS: list[int] = [1, 1]


def _factorial(m: int) -> int:
    if m < 0:
        raise ValueError("negative factorial")
    if m >= len(_FACTS):
        with _FACT_LOCK:
            while len(_FACTS) <= m:
                _FACTS.append(_FACTS[-1] * len(_FACTS))
    return _FACTS[m]


def _materialize1(nums: IntTable1, den: int) -> dict[int, Fraction]:
    return {k: Fraction(v, den) for k, v in nums.items() if v}


def _materialize2(nums: IntTable2, den: int) -> dict[tuple[int, int], Fraction]:
    return {k: Fraction(v, den) for k, v in nums.items() if v}


# ---------------------------------------------------------------------------
# Joint DP (unrooted, both models)
# ---------------------------------------------------------------------------

JOINT_MIN_N = 6

_JOINT_BASE: dict[Model, tuple[IntTable2, int]] = {
    Model.PDA: ({(2, 2): 6, (0, 3): 1}, 7),
    Model.YHK: ({(2, 2): 4, (0, 3): 1}, 5),
}


def _joint_step(model: Model, n: int, nums: IntTable2) -> tuple[IntTable2, int]:
    """One growth step n -> n+1; returns new numerators and the factor the
    common denominator picks up.  Scatter weights are the edge-class sizes
    at state (a, b): stay, pitchfork-outgroup, cherry-touching, free."""
    out: IntTable2 = {}
    for (a, b), mass in nums.items():
        w_stay = (n + 3 * a - b - 3) if model is Model.PDA else 2 * a
        w_pf = a
        w_ch = 3 * (b - a) if model is Model.PDA else 2 * (b - a)
        w_free = n - a - 2 * b
        if w_stay:
            out[(a, b)] = out.get((a, b), 0) + w_stay * mass
        if w_pf:
            out[(a - 1, b + 1)] = out.get((a - 1, b + 1), 0) + w_pf * mass
        if w_ch:
            out[(a + 1, b)] = out.get((a + 1, b), 0) + w_ch * mass
        if w_free:
            out[(a, b + 1)] = out.get((a, b + 1), 0) + w_free * mass
    return out, (2 * n - 3) if model is Model.PDA else n


_JOINT_LOCK = threading.Lock()
# memo: the furthest DP state reached per model (readers take the lock, the
# single writer replaces the entry wholesale; tables are never mutated
# after insertion, so handing them out is safe)
_JOINT_LAST: dict[Model, tuple[int, IntTable2, int]] = {}


def _joint_ints(model: Model, n: int) -> tuple[IntTable2, int]:
    with _JOINT_LOCK:
        cached = _JOINT_LAST.get(model)
        if cached is not None and cached[0] == n:
            return cached[1], cached[2]
        if cached is not None and cached[0] < n:
            start, nums, den = cached
        else:
            start, (nums, den) = JOINT_MIN_N, _JOINT_BASE[model]
        for m in range(start, n):
            nums, factor = _joint_step(model, m, nums)
            den *= factor
        if cached is None or n > cached[0]:
            _JOINT_LAST[model] = (n, nums, den)
        return nums, den


def joint_unrooted(model: Model | str, n: int) -> JointPmf:
    """Exact joint law of (pitchforks, cherries) on unrooted trees, n >= 6."""
    model = Model.parse(model)
    if n < JOINT_MIN_N:
        raise TreeError(f"the joint recursion starts at n = {JOINT_MIN_N}")
    nums, den = _joint_ints(model, n)
    return JointPmf(model, False, n, _materialize2(nums, den))


def iter_joint_unrooted(model: Model | str, n_max: int) -> Iterator[JointPmf]:
    """Yield the joint law for every n from 6 to n_max (one DP sweep)."""
    model = Model.parse(model)
    if n_max < JOINT_MIN_N:
        return
    nums, den = _JOINT_BASE[model]
    yield JointPmf(model, False, JOINT_MIN_N, _materialize2(nums, den))
    for m in range(JOINT_MIN_N, n_max):
        nums, factor = _joint_step(model, m, nums)
        den *= factor
        yield JointPmf(model, False, m + 1, _materialize2(nums, den))


def marginal_from_joint(joint: JointPmf, statistic: Statistic) -> MarginalPmf:
    """Row/column sums of a joint table, as exact rationals."""
    if statistic not in ("cherry", "pitchfork"):
        raise ValueError(f"unknown statistic {statistic!r}")
    out: dict[int, Fraction] = {}
    for (a, b), p in joint.table.items():
        k = b if statistic == "cherry" else a
        out[k] = out.get(k, Fraction(0)) + p
    return MarginalPmf(joint.model, joint.rooted, joint.n, statistic, out)


# ---------------------------------------------------------------------------
# Cherry marginals: closed forms and recursions
# ---------------------------------------------------------------------------


def pda_cherry_closed_form(n: int) -> dict[int, Fraction]:
    """Unrooted PDA cherry law from the factorial closed form (n >= 4)."""
    if n < 4:
        raise TreeError("the unrooted closed form requires n >= 4")
    f = _factorial
    c = f(n) * f(n - 2) * f(n - 4)
    return {k: Fraction(c * 2 ** (n - 2 * k),
                        f(n - 2 * k) * f(2 * n - 4) * f(k) * f(k - 2))
            for k in range(2, n // 2 + 1)}


def pda_rooted_cherry_closed_form(n: int) -> dict[int, Fraction]:
    """Rooted PDA cherry law from the factorial closed form (n >= 2)."""
    if n < 2:
        raise TreeError("the rooted closed form requires n >= 2")
    f = _factorial
    c = f(n) * f(n - 1) * f(n - 2)
    return {k: Fraction(c * 2 ** (n - 2 * k),
                        f(n - 2 * k) * f(2 * n - 2) * f(k) * f(k - 1))
            for k in range(1, n // 2 + 1)}


def pda_rooted_cherry_from_unrooted(n: int) -> dict[int, Fraction]:
    """Rooted PDA cherry law as a two-term mixture of unrooted values:
    ``p*(k) = ((2n-3-2k) p(k) + 2(k+1) p(k+1)) / (2n-3)`` (n >= 4)."""
    sigma = pda_cherry_closed_form(n)
    den = 2 * n - 3
    out: dict[int, Fraction] = {}
    for k in range(1, n // 2 + 1):
        val = ((2 * n - 3 - 2 * k) * sigma.get(k, Fraction(0))
               + 2 * (k + 1) * sigma.get(k + 1, Fraction(0))) / den
        if val:
            out[k] = val
    return out


def _cherry_step(nums: IntTable1, n: int, pda: bool,
                 rooted: bool) -> tuple[IntTable1, int]:
    """One step n -> n+1 of the two-term cherry recursions.

    YHK (either rootedness):  p'(k) = (2k p(k) + (n-2k+2) p(k-1)) / n
    PDA unrooted:  p'(k) = ((n+2k-3) p(k) + (n-2k+2) p(k-1)) / (2n-3)
    PDA rooted:    p'(k) = ((n+2k-1) p(k) + (n-2k+2) p(k-1)) / (2n-1)

    The PDA keep-weights count the edges whose subdivision leaves the
    cherry count alone (every edge except the n-2k cherry-free pendant
    ones); the denominators are the edge totals 2n-3 / 2n-1.
    """
    out: IntTable1 = {}
    for k, mass in nums.items():
        if not pda:
            w_keep = 2 * k
        elif rooted:
            w_keep = n + 2 * k - 1
        else:
            w_keep = n + 2 * k - 3
        w_up = n - 2 * k
        if w_keep:
            out[k] = out.get(k, 0) + w_keep * mass
        if w_up:
            out[k + 1] = out.get(k + 1, 0) + w_up * mass
    if not pda:
        den = n
    else:
        den = (2 * n - 1) if rooted else (2 * n - 3)
    return out, den


def iter_cherry_int_tables(model: Model | str, rooted: bool,
                           n_max: int) -> Iterator[tuple[int, IntTable1, int]]:
    """Unreduced cherry tables ``(n, numerators, common denominator)`` for
    every n from the base to n_max; the cheap path for long scans (no gcd
    work per entry)."""
    model = Model.parse(model)
    pda = model is Model.PDA
    if rooted:
        n, nums, den = 2, {1: 1}, 1
    else:
        n, nums, den = 4, {2: 1}, 1
    if n_max < n:
        return
    yield n, nums, den
    while n < n_max:
        nums, factor = _cherry_step(nums, n, pda, rooted)
        den *= factor
        n += 1
        yield n, nums, den


def iter_cherry_pmfs(model: Model | str, rooted: bool,
                     n_max: int) -> Iterator[MarginalPmf]:
    """Yield exact cherry laws for every n from the base up to n_max.

    PDA unrooted starts at n = 4 (two cherries almost surely), rooted
    models at n = 2 (one cherry); all advance by the two-term recursions.
    """
    model = Model.parse(model)
    for n, nums, den in iter_cherry_int_tables(model, rooted, n_max):
        yield MarginalPmf(model, rooted, n, "cherry", _materialize1(nums, den))


def cherry_pmf_unrooted(model: Model | str, n: int) -> MarginalPmf:
    """Exact unrooted cherry law, n >= 4 (PDA via the closed form, YHK via
    the recursion)."""
    model = Model.parse(model)
    if n < 4:
        raise TreeError("unrooted cherry laws start at n = 4")
    if model is Model.PDA:
        return MarginalPmf(model, False, n, "cherry", pda_cherry_closed_form(n))
    for pmf in iter_cherry_pmfs(model, False, n):
        if pmf.n == n:
            return pmf
    raise AssertionError("unreachable")


def cherry_pmf_rooted(model: Model | str, n: int) -> MarginalPmf:
    """Exact rooted cherry law, n >= 2 (support starts at one cherry)."""
    model = Model.parse(model)
    if n < 2:
        raise TreeError("rooted cherry laws start at n = 2")
    if model is Model.PDA:
        return MarginalPmf(model, True, n, "cherry",
                           pda_rooted_cherry_closed_form(n))
    for pmf in iter_cherry_pmfs(model, True, n):
        if pmf.n == n:
            return pmf
    raise AssertionError("unreachable")


def yhk_rooted_single_cherry_mass(n: int) -> Fraction:
    """Probability that a rooted YHK tree has exactly one cherry:
    ``2^(n-2) / (n-1)!`` for n >= 2."""
    if n < 2:
        raise TreeError("requires n >= 2")
    return Fraction(2 ** (n - 2), _factorial(n - 1))


# ---------------------------------------------------------------------------
# Functional recursion for expectations
# ---------------------------------------------------------------------------


def functional_expectation(model: Model | str, n: int,
                           f: Callable[[int, int], Fraction | int]) -> Fraction:
    """E[f(A_n, B_n)] on unrooted trees, computed two ways and cross-checked.

    The direct route evaluates f against the joint table at n.  For n >= 7
    the value is recomputed by one application of the functional recursion
    to the table at n - 1:

      (2n-3) E f(A',B') = E[(n+3A-B-3) f(A,B)] + E[A f(A-1,B+1)]
                         + 3 E[(B-A) f(A+1,B)] + E[(n-A-2B) f(A,B+1)]

    (YHK replaces the weights by 2A, A, 2(B-A), n-A-2B over n) and the two
    values are asserted equal.
    """
    model = Model.parse(model)
    if n < JOINT_MIN_N:
        raise TreeError(f"the functional recursion starts at n = {JOINT_MIN_N}")
    direct = joint_unrooted(model, n).expectation(f)
    if n == JOINT_MIN_N:
        return direct
    m = n - 1
    prev = joint_unrooted(model, m)
    acc = Fraction(0)
    for (a, b), p in prev.table.items():
        w_stay = (m + 3 * a - b - 3) if model is Model.PDA else 2 * a
        acc += p * (w_stay * f(a, b)
                    + a * f(a - 1, b + 1)
                    + (3 if model is Model.PDA else 2) * (b - a) * f(a + 1, b)
                    + (m - a - 2 * b) * f(a, b + 1))
    stepped = acc / ((2 * m - 3) if model is Model.PDA else m)
    if stepped != direct:
        raise AssertionError(
            f"functional recursion disagrees with the joint table at n={n}: "
            f"{stepped} != {direct}")
    return direct
