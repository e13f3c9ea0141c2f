"""Quantitative trade-offs between group size and learning rate.

Two exact rational quantities organize everything here, both derived from
the slope of the majority-probability curve at p = 1/2:

* ``critical_group_rate(n)``: the learning rate at which n voters splitting
  a time budget match a unit-rate single voter at small times,
  ``2^(n-1) / C(n-1, (n-1)/2)`` (grows like sqrt(n*pi/2)).
* ``expert_threshold(n)``: the rate above which one expert beats n
  unit-rate voters under a common deadline, equal to the slope itself
  (grows like sqrt(2n/pi)).

Their product is exactly n.  The cost analysis inverts the majority curve
by bisection (guaranteed convergence on a monotone function) and then
inverts the learning profile in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple, Sequence

from .errors import DomainError, UnattainableTargetError
from .profiles import AllocationRule, LearningProfile, LinearProfile
from .votemath import MajorityRule, derivative_at_half, majority_prob_homogeneous

__all__ = [
    "critical_group_rate",
    "expert_threshold",
    "AsymptoticCheck",
    "asymptotic_rate_check",
    "fixed_budget_compare",
    "initial_slope",
    "CostQuery",
    "cost_to_reach",
    "cost_curve",
]


def _check_odd(n: int) -> int:
    if n < 1 or n % 2 == 0:
        raise DomainError(f"defined for odd group sizes only, got {n!r}")
    return int(n)


def critical_group_rate(n: int) -> Fraction:
    """Exact rational rate from which a group of n can beat a unit-rate single voter."""
    n = _check_odd(n)
    return Fraction(2 ** (n - 1), math.comb(n - 1, (n - 1) // 2))


def expert_threshold(n: int) -> Fraction:
    """Exact rational rate from which one expert beats n unit-rate voters."""
    return derivative_at_half(_check_odd(n))


class AsymptoticCheck(NamedTuple):
    exact: float
    asymptote: float
    relative_gap: float


def asymptotic_rate_check(n: int, kind: str = "expert") -> AsymptoticCheck:
    """Compare the exact rational rate against its large-n asymptote.

    ``kind`` selects ``expert`` (asymptote sqrt(2n/pi); the gap is positive
    and shrinks monotonically) or ``critical`` (asymptote sqrt(n*pi/2); the
    exact value sits below the asymptote, so the gap is negative).
    """
    n = _check_odd(n)
    if kind == "expert":
        exact = float(expert_threshold(n))
        asymptote = math.sqrt(2.0 * n / math.pi)
    elif kind == "critical":
        exact = float(critical_group_rate(n))
        asymptote = math.sqrt(n * math.pi / 2.0)
    else:
        raise DomainError(f"kind must be 'expert' or 'critical', got {kind!r}")
    return AsymptoticCheck(exact, asymptote, exact / asymptote - 1.0)


def _check_grid(t_grid: Sequence[float]) -> list[float]:
    grid = [float(t) for t in t_grid]
    if any(t < 0.0 for t in grid):
        raise DomainError("time grid must be non-negative")
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise DomainError("time grid must be sorted ascending")
    return grid


def fixed_budget_compare(
    c_single: float,
    c_group: float,
    n: int,
    t_grid: Sequence[float],
    rule: MajorityRule = MajorityRule.FAIL,
) -> list[tuple[float, float, float]]:
    """(T, P_single, P_group) rows for one voter with the whole budget vs n sharing it.

    The single voter learns linearly at ``c_single`` for the full time T;
    each of the n group members learns at ``c_group`` for T/n.
    """
    if n < 3 or n % 2 == 0:
        raise DomainError(f"group size must be an odd integer >= 3, got {n!r}")
    single = LinearProfile(c_single)
    group = LinearProfile(c_group)
    rows = []
    for t in _check_grid(t_grid):
        p_single = single.evaluate(t)
        p_group = majority_prob_homogeneous(n, group.evaluate(t / n), rule)
        rows.append((t, p_single, p_group))
    return rows


def initial_slope(n: int, c: float, alloc_rule: AllocationRule) -> float:
    """d/dT of the group-competence curve at T = 0 for a linear profile of rate c."""
    n = _check_odd(n)
    if not c > 0.0:
        raise DomainError(f"learning rate must be positive, got {c!r}")
    factor = c / n if alloc_rule is AllocationRule.EQUAL_SPLIT else c
    return factor * float(derivative_at_half(n))


@dataclass(frozen=True)
class CostQuery:
    """Target group competence for n voters learning along ``profile``."""

    n: int
    target: float
    profile: LearningProfile

    def __post_init__(self):
        if self.n < 1 or self.n % 2 == 0:
            raise DomainError(f"group size must be odd, got {self.n!r}")
        if not 0.5 < self.target < 1.0:
            raise DomainError(
                f"target competence must lie strictly between 1/2 and 1, got {self.target!r}"
            )


class CostResult(NamedTuple):
    t_star: float
    cost: float


def _invert_majority(n: int, target: float) -> float:
    # Bisection on p in [1/2, 1]; the majority probability is strictly
    # increasing there, so convergence is guaranteed.
    lo, hi = 0.5, 1.0
    while hi - lo > 1e-13:
        mid = 0.5 * (lo + hi)
        if majority_prob_homogeneous(n, mid) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def cost_to_reach(q: CostQuery) -> CostResult:
    """Per-voter time t* with group competence = target, and total cost n*t*."""
    reachable = majority_prob_homogeneous(q.n, q.profile.sup_competence)
    if q.target > reachable + 1e-12:
        raise UnattainableTargetError(
            f"group of {q.n} tops out at competence {reachable:.6g} "
            f"under this profile; {q.target} is unreachable"
        )
    p_star = min(_invert_majority(q.n, q.target), q.profile.sup_competence)
    t_star = q.profile.time_to_reach(p_star)
    return CostResult(t_star, q.n * t_star)


def cost_curve(
    p_star: float,
    n_list: Sequence[int],
    rate_rule: Callable[[int], float],
) -> list[tuple[int, float]]:
    """Cost of reaching group competence ``p_star`` for each n, with per-n linear rates.

    ``rate_rule`` maps a group size to its learning rate, so sub-critical,
    critical and super-critical rate schedules can be swept with one call.
    """
    rows = []
    for n in n_list:
        profile = LinearProfile(float(rate_rule(n)))
        result = cost_to_reach(CostQuery(n=n, target=p_star, profile=profile))
        rows.append((int(n), result.cost))
    return rows
