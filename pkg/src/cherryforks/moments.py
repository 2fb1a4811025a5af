"""Closed-form moments and the rooted/unrooted, YHK/PDA comparisons.

Each mean, variance and covariance formula carries its own validity range
(encoded as data, not extrapolated): queries below a formula's range
return None rather than a wrong number.  Three YHK entries have isolated
small-n values that the general formulas miss; those are stored as
explicit specials:

* unrooted pitchfork variance at n = 6 is 16/25 (formula valid from 7),
* rooted pitchfork variance at n = 6 is 2/5 (formula valid from 7),
* unrooted cherry variance at n = 4 is 0 (formula valid from 5).

Correlation is the only floating-point quantity; it is formed from exact
rationals with a single square root at the end, and is exactly -1 at
n = 6, 7 for both models (the support is a line there).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .growth import Model
from .trees import TreeError

Fr = Fraction


@dataclass(frozen=True)
class MomentSummary:
    """Exact first and second moments for one (model, rootedness, n).

    Fields are None where no formula (or special value) applies at this n.
    """

    model: Model
    rooted: bool
    n: int
    mean_a: Optional[Fraction]
    mean_b: Optional[Fraction]
    var_a: Optional[Fraction]
    var_b: Optional[Fraction]
    cov_ab: Optional[Fraction]
    corr_ab: Optional[float]


# ---------------------------------------------------------------------------
# The formula table
# ---------------------------------------------------------------------------


def _pda_mean_a_rooted(n: int) -> Fr:
    return Fr(n * (n - 1) * (n - 2), 2 * (2 * n - 3) * (2 * n - 5))


def _pda_mean_a(n: int) -> Fr:
    return Fr(n * (n - 1) * (n - 2), 2 * (2 * n - 5) * (2 * n - 7))


def _pda_mean_b_rooted(n: int) -> Fr:
    return Fr(n * (n - 1), 2 * (2 * n - 3))


def _pda_mean_b(n: int) -> Fr:
    return Fr(n * (n - 1), 2 * (2 * n - 5))


def _pda_var_a_rooted(n: int) -> Fr:
    g = 4 * n ** 3 - 40 * n ** 2 + 123 * n - 110
    return Fr(3 * n * (n - 1) * (n - 2) * (n - 3) * g,
              4 * (2 * n - 3) ** 2 * (2 * n - 5) ** 2 * (2 * n - 7) * (2 * n - 9))


def _pda_var_a(n: int) -> Fr:
    g = 4 * n ** 4 - 76 * n ** 3 + 527 * n ** 2 - 1555 * n + 1610
    return Fr(3 * n * (n - 1) * (n - 2) * g,
              4 * (2 * n - 5) ** 2 * (2 * n - 7) ** 2 * (2 * n - 9) * (2 * n - 11))


def _pda_var_b_rooted(n: int) -> Fr:
    return Fr(n * (n - 1) * (n - 2) * (n - 3),
              2 * (2 * n - 3) ** 2 * (2 * n - 5))


def _pda_var_b(n: int) -> Fr:
    return Fr(n * (n - 1) * (n - 4) * (n - 5),
              2 * (2 * n - 5) ** 2 * (2 * n - 7))


def _pda_cov_rooted(n: int) -> Fr:
    return -Fr(n * (n - 1) * (n - 2) * (n - 3),
               2 * (2 * n - 3) ** 2 * (2 * n - 5) * (2 * n - 7))


def _pda_cov(n: int) -> Fr:
    return -Fr(3 * n * (n - 1) * (n - 2) * (n - 5),
               2 * (2 * n - 5) ** 2 * (2 * n - 7) * (2 * n - 9))


def _yhk_mean_a_rooted(n: int) -> Fr:
    return Fr(n, 6)


def _yhk_mean_a(n: int) -> Fr:
    return Fr(n, 6) + Fr(4 * (2 * n - 3), (n - 1) * (n - 2) * (n - 3))


def _yhk_mean_b_rooted(n: int) -> Fr:
    return Fr(n, 3)


def _yhk_mean_b(n: int) -> Fr:
    return Fr(n, 3) + Fr(4, (n - 1) * (n - 2))


def _yhk_var_a_rooted(n: int) -> Fr:
    return Fr(23 * n, 420)


def _yhk_var_a(n: int) -> Fr:
    return (Fr(23 * n, 420)
            - Fr(16 * (2 * n - 3) ** 2, ((n - 1) * (n - 2) * (n - 3)) ** 2))


def _yhk_var_b_rooted(n: int) -> Fr:
    return Fr(2 * n, 45)


def _yhk_var_b(n: int) -> Fr:
    return Fr(2 * n, 45) - Fr(4 * (n ** 2 - 3 * n + 14),
                              3 * ((n - 1) * (n - 2)) ** 2)


def _yhk_cov_rooted(n: int) -> Fr:
    return -Fr(n, 45)


def _yhk_cov(n: int) -> Fr:
    return (-Fr(n, 45)
            - Fr(4 * (n ** 3 - 6 * n ** 2 + 35 * n - 42),
                 3 * ((n - 1) * (n - 2)) ** 2 * (n - 3)))


@dataclass(frozen=True)
class _Entry:
    func: Callable[[int], Fr]
    min_n: int
    specials: dict[int, Fr]


_E = _Entry
_TABLE: dict[tuple[Model, bool, str], _Entry] = {
    (Model.PDA, True, "mean_a"): _E(_pda_mean_a_rooted, 4, {}),
    (Model.PDA, False, "mean_a"): _E(_pda_mean_a, 6, {}),
    (Model.PDA, True, "mean_b"): _E(_pda_mean_b_rooted, 4, {}),
    (Model.PDA, False, "mean_b"): _E(_pda_mean_b, 4, {}),
    (Model.PDA, True, "var_a"): _E(_pda_var_a_rooted, 4, {}),
    (Model.PDA, False, "var_a"): _E(_pda_var_a, 6, {}),
    (Model.PDA, True, "var_b"): _E(_pda_var_b_rooted, 4, {}),
    (Model.PDA, False, "var_b"): _E(_pda_var_b, 4, {}),
    (Model.PDA, True, "cov_ab"): _E(_pda_cov_rooted, 4, {}),
    (Model.PDA, False, "cov_ab"): _E(_pda_cov, 6, {}),
    (Model.YHK, True, "mean_a"): _E(_yhk_mean_a_rooted, 4, {}),
    (Model.YHK, False, "mean_a"): _E(_yhk_mean_a, 6, {}),
    (Model.YHK, True, "mean_b"): _E(_yhk_mean_b_rooted, 4, {}),
    (Model.YHK, False, "mean_b"): _E(_yhk_mean_b, 4, {}),
    (Model.YHK, True, "var_a"): _E(_yhk_var_a_rooted, 7, {6: Fr(2, 5)}),
    (Model.YHK, False, "var_a"): _E(_yhk_var_a, 7, {6: Fr(16, 25)}),
    (Model.YHK, True, "var_b"): _E(_yhk_var_b_rooted, 5, {}),
    (Model.YHK, False, "var_b"): _E(_yhk_var_b, 5, {4: Fr(0)}),
    (Model.YHK, True, "cov_ab"): _E(_yhk_cov_rooted, 6, {}),
    (Model.YHK, False, "cov_ab"): _E(_yhk_cov, 6, {}),
}

FIELDS = ("mean_a", "mean_b", "var_a", "var_b", "cov_ab")


def table_value(model: Model | str, rooted: bool, field: str,
                n: int) -> Optional[Fraction]:
    """One closed-form table entry, or None below its validity range."""
    model = Model.parse(model)
    if field not in FIELDS:
        raise ValueError(f"unknown field {field!r}")
    entry = _TABLE[(model, rooted, field)]
    if n in entry.specials:
        return entry.specials[n]
    if n < entry.min_n:
        return None
    return entry.func(n)


def _corr_from(cov: Optional[Fr], va: Optional[Fr],
               vb: Optional[Fr]) -> Optional[float]:
    if cov is None or va is None or vb is None or va == 0 or vb == 0:
        return None
    rho2 = cov * cov / (va * vb)
    sign = -1.0 if cov < 0 else 1.0
    if rho2 == 1:
        return sign
    return sign * math.sqrt(float(rho2))


def closed_form(model: Model | str, rooted: bool, n: int) -> MomentSummary:
    """All closed-form moments at (model, rootedness, n); per-field None
    where a formula does not apply."""
    model = Model.parse(model)
    if n < 4:
        raise TreeError("closed-form moments start at n = 4")
    values = {f: table_value(model, rooted, f, n) for f in FIELDS}
    corr = _corr_from(values["cov_ab"], values["var_a"], values["var_b"])
    return MomentSummary(model=model, rooted=rooted, n=n, corr_ab=corr,
                         **values)


# ---------------------------------------------------------------------------
# Correlation between pitchforks and cherries (unrooted)
# ---------------------------------------------------------------------------


def corr_squared(model: Model | str, n: int) -> Fraction:
    """Exact squared correlation on unrooted trees, n >= 6 (for monotone
    comparisons without floating point)."""
    model = Model.parse(model)
    if n < 6:
        raise TreeError("correlation requires n >= 6")
    cov = table_value(model, False, "cov_ab", n)
    va = table_value(model, False, "var_a", n)
    vb = table_value(model, False, "var_b", n)
    assert cov is not None and va is not None and vb is not None
    if va == 0 or vb == 0:
        raise TreeError(f"degenerate variance at n = {n}")
    return cov * cov / (va * vb)


def correlation(model: Model | str, n: int) -> Optional[float]:
    """Pitchfork/cherry correlation on unrooted trees; exactly -1.0 at
    n = 6 and 7, None if a variance degenerates."""
    model = Model.parse(model)
    if n < 6:
        raise TreeError("correlation requires n >= 6")
    return _corr_from(table_value(model, False, "cov_ab", n),
                      table_value(model, False, "var_a", n),
                      table_value(model, False, "var_b", n))


# ---------------------------------------------------------------------------
# Rooted-vs-unrooted mean gaps
# ---------------------------------------------------------------------------


def mean_gap(model: Model | str, statistic: str, n: int) -> Fraction:
    """E(unrooted) - E(rooted) for one statistic, n >= 6.

    Strictly decreasing in n; the limit is 0 under YHK and 1/4 under PDA.
    """
    model = Model.parse(model)
    if statistic not in ("cherry", "pitchfork"):
        raise ValueError(f"unknown statistic {statistic!r}")
    if n < 6:
        raise TreeError("mean gaps are defined for n >= 6")
    field = "mean_b" if statistic == "cherry" else "mean_a"
    unrooted = table_value(model, False, field, n)
    rooted = table_value(model, True, field, n)
    assert unrooted is not None and rooted is not None
    return unrooted - rooted


def mean_gap_limit(model: Model | str) -> Fraction:
    model = Model.parse(model)
    return Fr(0) if model is Model.YHK else Fr(1, 4)


# ---------------------------------------------------------------------------
# Inequality reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InequalityCheck:
    """One comparison at a fixed n.  ``holds`` is what the numbers say;
    ``asserted`` is whether the inequality is known to hold at this n
    (the unrooted pitchfork mean lower bound only from n = 12, variance
    dominance from n = 7, everything else from n = 6)."""

    name: str
    holds: bool
    asserted: bool


@dataclass(frozen=True)
class ComparisonReport:
    n: int
    checks: tuple[InequalityCheck, ...]

    def check(self, name: str) -> InequalityCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def all_hold(self) -> bool:
        return all(c.holds for c in self.checks)

    def consistent_with_assertions(self) -> bool:
        return all(c.holds for c in self.checks if c.asserted)


_QUANTITIES = (
    ("pitchfork_rooted", "mean_a", True),
    ("cherry_rooted", "mean_b", True),
    ("cherry_unrooted", "mean_b", False),
    ("pitchfork_unrooted", "mean_a", False),
)


def comparison_report(n: int) -> ComparisonReport:
    """Evaluate every model/rootedness comparison inequality at n >= 6.

    Mean comparisons: E_pda(Y) < E_yhk(Y) < (4/3) E_pda(Y), with the lower
    bound for unrooted pitchforks only asserted from n = 12.  Variance and
    covariance comparisons: rooted dominates unrooted from n = 7 (variances;
    the pitchfork cases genuinely fail at n = 6) and n = 6 (covariances).
    """
    if n < 6:
        raise TreeError("comparison reports start at n = 6")
    checks: list[InequalityCheck] = []
    for label, field, rooted in _QUANTITIES:
        e_u = table_value(Model.PDA, rooted, field, n)
        e_y = table_value(Model.YHK, rooted, field, n)
        assert e_u is not None and e_y is not None
        lower_from = 12 if label == "pitchfork_unrooted" else 6
        checks.append(InequalityCheck(f"mean_lower:{label}", e_u < e_y,
                                      n >= lower_from))
        checks.append(InequalityCheck(f"mean_upper:{label}",
                                      e_y < Fr(4, 3) * e_u, True))
    for model in (Model.YHK, Model.PDA):
        for label, field in (("pitchfork", "var_a"), ("cherry", "var_b")):
            v_rooted = table_value(model, True, field, n)
            v_unrooted = table_value(model, False, field, n)
            assert v_rooted is not None and v_unrooted is not None
            checks.append(InequalityCheck(f"var:{model.value}:{label}",
                                          v_rooted > v_unrooted, n >= 7))
        c_rooted = table_value(model, True, "cov_ab", n)
        c_unrooted = table_value(model, False, "cov_ab", n)
        assert c_rooted is not None and c_unrooted is not None
        checks.append(InequalityCheck(f"cov:{model.value}",
                                      c_rooted > c_unrooted, True))
    return ComparisonReport(n=n, checks=tuple(checks))


@dataclass(frozen=True)
class RatioCheck:
    model: Model
    rooted: bool
    n_values: tuple[int, ...]
    errors: tuple[float, ...]
    exact_half: bool
    non_increasing: bool


def ratio_limits_check(n_max: int = 10_000) -> tuple[RatioCheck, ...]:
    """Verify E(pitchforks)/E(cherries) -> 1/2 along n in {100, 1000, n_max}
    for all four (model, rootedness) pairs.  Rooted YHK is 1/2 exactly."""
    if n_max < 100:
        raise ValueError("n_max must be >= 100")
    ns = tuple(sorted({100, 1000, n_max}))
    out = []
    for model in (Model.YHK, Model.PDA):
        for rooted in (True, False):
            errs_exact = []
            for n in ns:
                ea = table_value(model, rooted, "mean_a", n)
                eb = table_value(model, rooted, "mean_b", n)
                assert ea is not None and eb is not None
                errs_exact.append(abs(ea / eb - Fr(1, 2)))
            out.append(RatioCheck(
                model=model, rooted=rooted, n_values=ns,
                errors=tuple(float(e) for e in errs_exact),
                exact_half=all(e == 0 for e in errs_exact),
                non_increasing=all(b <= a for a, b in
                                   zip(errs_exact, errs_exact[1:]))))
    return tuple(out)
