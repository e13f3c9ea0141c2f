"""Exact majority-vote probabilities for independent juries.

Voter i casts a correct vote with probability ``p_i``, independently of the
others.  The group decision is correct when more than half the votes are
correct; for even group sizes a tie rule must be chosen explicitly.  The
heterogeneous case is the Poisson binomial distribution, evaluated here by
an O(n^2) convolution DP, which is exact up to float rounding at the group
sizes this package targets (up to a few thousand voters).

All values are immutable after construction and every function is pure, so
everything here is safe for unrestricted concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, TieRuleRequiredError

__all__ = [
    "CompetenceVector",
    "MajorityRule",
    "VoteDistribution",
    "vote_distribution",
    "majority_prob_homogeneous",
    "majority_prob_heterogeneous",
    "derivative_at_half",
    "hoeffding_extremal",
    "majorizes",
    "concentration_failure_bound",
]


class MajorityRule(Enum):
    """How to resolve a tied vote (only possible for even group sizes).

    FAIR_COIN credits half the tie probability to the correct outcome;
    FAIL refuses to evaluate even-sized groups at all.  For odd sizes the
    rule is never consulted.
    """

    FAIR_COIN = "fair-coin"
    FAIL = "fail"


def _check_prob(value: float, name: str) -> float:
    value = float(value)
    if not (0.0 <= value <= 1.0):
        raise DomainError(f"{name} must lie in [0, 1], got {value!r}")
    return value


@dataclass(frozen=True)
class CompetenceVector:
    """Per-voter correctness probabilities ``(p_1, ..., p_n)``, n >= 1."""

    probs: tuple[float, ...]

    def __init__(self, probs: Iterable[float]):
        values = tuple(_check_prob(p, "competence") for p in probs)
        if not values:
            raise DomainError("a jury needs at least one voter")
        object.__setattr__(self, "probs", values)

    def __len__(self) -> int:
        return len(self.probs)

    def __iter__(self) -> Iterator[float]:
        return iter(self.probs)

    def mean(self) -> float:
        """Average competence, exactly rounded."""
        return math.fsum(self.probs) / len(self.probs)


@dataclass(frozen=True)
class VoteDistribution:
    """Distribution of the number of correct votes: ``mass[k] = Pr(Z_n = k)``."""

    mass: tuple[float, ...]

    def __init__(self, mass: Iterable[float]):
        values = tuple(float(m) for m in mass)
        if any(m < 0.0 for m in values):
            raise DomainError("probability masses must be non-negative")
        total = math.fsum(values)
        if abs(total - 1.0) > 1e-12:
            raise DomainError(f"masses must sum to 1 within 1e-12, got {total!r}")
        object.__setattr__(self, "mass", values)

    def __len__(self) -> int:
        return len(self.mass)


def _pmf(probs: Sequence[float]) -> list[float]:
    # Convolution DP: fold one Bernoulli factor in per iteration.  Exact
    # zeros/ones stay exact because their branch multiplies by 0.0.
    mass = [1.0]
    for p in probs:
        q = 1.0 - p
        new = [0.0] * (len(mass) + 1)
        for k, m in enumerate(mass):
            if m != 0.0:
                new[k] += m * q
                new[k + 1] += m * p
        mass = new
    return mass


def vote_distribution(p: CompetenceVector) -> VoteDistribution:
    """Exact distribution of the correct-vote count for independent voters."""
    return VoteDistribution(_pmf(p.probs))


def _tail_from_mass(mass: Sequence[float], n: int, rule: MajorityRule) -> float:
    # Computed as 1 minus the failure mass so that juries containing a
    # guaranteed majority of certain voters evaluate to exactly 1.0.
    if n % 2 == 1:
        fail = math.fsum(mass[: (n + 1) // 2])
    else:
        if rule is MajorityRule.FAIL:
            raise TieRuleRequiredError(
                f"group size {n} is even; choose a tie rule such as FAIR_COIN"
            )
        fail = math.fsum(mass[: n // 2]) + 0.5 * mass[n // 2]
    return min(max(1.0 - fail, 0.0), 1.0)


def majority_prob_homogeneous(
    n: int, p: float, rule: MajorityRule = MajorityRule.FAIL
) -> float:
    """Probability that n independent voters of equal competence p decide correctly.

    Evaluates the binomial upper tail directly, which keeps the relative
    error at the accumulated-rounding level (<= 1e-12 for n <= 201) even
    for very small tail probabilities.
    """
    if n < 1 or n != int(n):
        raise DomainError(f"group size must be a positive integer, got {n!r}")
    n = int(n)
    p = _check_prob(p, "competence")
    q = 1.0 - p
    if n % 2 == 0 and rule is MajorityRule.FAIL:
        raise TieRuleRequiredError(
            f"group size {n} is even; choose a tie rule such as FAIR_COIN"
        )
    threshold = n // 2 + 1
    terms = [math.comb(n, k) * p**k * q ** (n - k) for k in range(threshold, n + 1)]
    total = math.fsum(terms)
    if n % 2 == 0:
        total += 0.5 * math.comb(n, n // 2) * p ** (n // 2) * q ** (n // 2)
    return min(total, 1.0)


def majority_prob_heterogeneous(
    p: CompetenceVector, rule: MajorityRule = MajorityRule.FAIL
) -> float:
    """Probability of a correct majority decision for individual competences p.

    Agrees with :func:`majority_prob_homogeneous` when all entries are equal
    and with exhaustive enumeration over the 2^n vote patterns.
    """
    n = len(p)
    mass = _pmf(p.probs)
    return _tail_from_mass(mass, n, rule)


def derivative_at_half(n: int) -> Fraction:
    """Exact slope of p -> majority probability at p = 1/2, for odd n.

    Equals ``n * C(n-1, (n-1)/2) / 2^(n-1)``; grows like sqrt(2n/pi).
    """
    if n < 1 or n % 2 == 0:
        raise DomainError(f"defined for odd group sizes only, got {n!r}")
    return Fraction(n * math.comb(n - 1, (n - 1) // 2), 2 ** (n - 1))


def hoeffding_extremal(n: int, pbar: float) -> CompetenceVector:
    """Jury of mean competence pbar built from certain voters plus one fractional one.

    Hoeffding's extremal composition: floor(pbar*n) voters at 1, one voter
    holding the fractional remainder, the rest at 0.  Whenever the certain
    voters already form a majority (pbar >= ceil(n/2)/n) this jury decides
    correctly with probability exactly 1; below that mean the composition
    is generally not optimal.
    """
    if n < 1 or n != int(n):
        raise DomainError(f"group size must be a positive integer, got {n!r}")
    n = int(n)
    pbar = _check_prob(pbar, "mean competence")
    total = pbar * n
    ones = min(int(math.floor(total)), n)
    frac = max(total - ones, 0.0)
    probs = (1.0,) * ones
    if ones < n:
        probs += (frac,) + (0.0,) * (n - ones - 1)
    return CompetenceVector(probs)


def majorizes(a: CompetenceVector, b: CompetenceVector) -> bool:
    """True when every sorted prefix sum of ``a`` dominates that of ``b``.

    Vectors are sorted in non-increasing order first; total sums are allowed
    to differ (the comparison at j = n is an inequality like the others).
    """
    if len(a) != len(b):
        raise DomainError(f"length mismatch: {len(a)} vs {len(b)}")
    prefix_a = 0.0
    prefix_b = 0.0
    for pa, pb in zip(sorted(a.probs, reverse=True), sorted(b.probs, reverse=True)):
        prefix_a += pa
        prefix_b += pb
        if prefix_a < prefix_b:
            return False
    return True


def concentration_failure_bound(n: int, pbar: float) -> float:
    """Upper bound 2*exp(-d^2/n), d = n*(pbar - 1/2), on the chance of a wrong majority.

    This is the conservative exponent t^2/n; the standard Hoeffding
    inequality sharpens it to 2t^2/n, so this bound is valid but loose.
    For pbar = 1/2 + w/sqrt(n) it equals 2*exp(-w^2).
    """
    if n < 1 or n != int(n):
        raise DomainError(f"group size must be a positive integer, got {n!r}")
    pbar = _check_prob(pbar, "mean competence")
    if pbar < 0.5:
        raise DomainError(f"bound requires mean competence >= 1/2, got {pbar!r}")
    d = n * (pbar - 0.5)
    return 2.0 * math.exp(-(d * d) / n)
