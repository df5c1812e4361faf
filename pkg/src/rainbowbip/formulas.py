"""Closed-form quantities for the bipartite rainbow-connectivity experiments.

Everything here is a pure function of the parameters: the sharp-threshold
edge probabilities for odd and even d, the regime-validity inequality chains,
the expected-diameter criterion, the probability that a random (d+1)-coloring
makes a fixed path rainbow, the per-pair failure bound used by the union-bound
argument, and the Chernoff lower-tail bound.

All logarithms are natural unless a name says otherwise.  The amplification
constants scale like 2**(10*d) and quickly push the amplified edge probability
past 1; such values are flagged symbolic-only rather than clamped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction


@dataclass(frozen=True)
class RegimeParams:
    """Problem-size parameters plus the derived constants.

    ``k`` defaults to ``max(1, floor(c0 * ln n))`` when not given explicitly.
    ``epsilon`` only matters for even d.
    """

    m: int
    n: int
    d: int
    c0: float = 1.0
    epsilon: float = 0.5
    k: int | None = None

    def __post_init__(self) -> None:
        if self.m < 2 or self.n < 2:
            raise ValueError("need m, n >= 2")
        if self.d < 2:
            raise ValueError("need d >= 2")
        if self.c0 < 1:
            raise ValueError("need c0 >= 1")
        if not (0 < self.epsilon < 1):
            raise ValueError("epsilon must lie in (0, 1)")
        if self.k is None:
            object.__setattr__(self, "k", max(1, math.floor(self.c0 * math.log(self.n))))
        if self.k < 1:
            raise ValueError("need k >= 1")

    # Amplification constants for the upper-bound regime (odd / even d).
    @property
    def C1(self) -> float:
        return 2.0 ** (10 * self.d) * self.c0

    @property
    def C2(self) -> float:
        return 2.0 ** (10 * self.d) * self.c0 / self.epsilon

    # Shrink constants for the lower-bound regime (both in (0, 1)).
    @property
    def c1(self) -> float:
        return math.log(2.0) ** (1.0 / self.d) / 2.0

    @property
    def c2(self) -> float:
        return 1.0 / (2.0 * math.log(2.0)) ** (1.0 / self.d)

    @property
    def p_star(self) -> float:
        return sharp_threshold(self.m, self.n, self.d)

    def amplified_p(self) -> tuple[float, bool]:
        """(C * p_star, symbolic_only) — symbolic when the product exceeds 1."""
        coef = self.C1 if self.d % 2 == 1 else self.C2
        value = coef * self.p_star
        return value, value > 1.0


def threshold_odd(m: int, n: int, d: int) -> float:
    """Sharp-threshold edge probability for odd d:
    (ln(mn))^(1/d) / (m*n)^((d-1)/(2d)).
    """
    if d % 2 != 1 or d < 3:
        raise ValueError(f"odd-d threshold needs odd d >= 3, got d={d}")
    if m < 2 or n < 2:
        raise ValueError("need m, n >= 2")
    return math.log(m * n) ** (1.0 / d) / (m * n) ** ((d - 1) / (2.0 * d))


def threshold_even(m: int, n: int, d: int) -> float:
    """Sharp-threshold edge probability for even d:
    (ln n)^(1/d) / (m^(1/2) * n^((d-2)/(2d))).
    """
    if d % 2 != 0 or d < 2:
        raise ValueError(f"even-d threshold needs even d >= 2, got d={d}")
    if m < 2 or n < 2:
        raise ValueError("need m, n >= 2")
    return math.log(n) ** (1.0 / d) / (math.sqrt(m) * n ** ((d - 2) / (2.0 * d)))


def threshold_even_alt(m: int, n: int, d: int) -> float:
    """Base-2 variant of the even-d threshold: (log2 n)^(1/d) / (m^(1/2) n^((d-2)/(2d))).

    Equals the even threshold rescaled by 1/(2 ln 2)^(1/d) applied to (2 ln n)^(1/d);
    exposed because the lower-bound constant can be read either way.
    """
    if d % 2 != 0 or d < 2:
        raise ValueError(f"even-d threshold needs even d >= 2, got d={d}")
    return math.log2(n) ** (1.0 / d) / (math.sqrt(m) * n ** ((d - 2) / (2.0 * d)))


def sharp_threshold(m: int, n: int, d: int) -> float:
    """Parity-dispatching sharp threshold for the property rc_k <= d+1."""
    if d < 2:
        raise ValueError("need d >= 2")
    return threshold_odd(m, n, d) if d % 2 == 1 else threshold_even(m, n, d)


@dataclass(frozen=True)
class InequalityCheck:
    name: str
    lhs: float
    rhs: float

    @property
    def satisfied(self) -> bool:
        return self.lhs >= self.rhs

    @property
    def slack(self) -> float:
        return self.lhs - self.rhs


@dataclass(frozen=True)
class RegimeCheck:
    valid: bool
    checks: tuple[InequalityCheck, ...]


def regime_valid(m: int, n: int, p: float, d: int, epsilon: float | None = None) -> RegimeCheck:
    """Evaluate the parity-appropriate size-regime inequality chain.

    Odd d:  p*n >= p*m >= (ln n)^4.
    Even d: p*n^(1-eps) >= p*m^(1-eps) >= (ln n)^4 (requires epsilon).
    """
    ln4 = math.log(n) ** 4
    if d % 2 == 1:
        checks = (
            InequalityCheck("pn >= pm", p * n, p * m),
            InequalityCheck("pm >= (ln n)^4", p * m, ln4),
        )
    else:
        if epsilon is None:
            raise ValueError("even d needs epsilon")
        if not (0 < epsilon < 1):
            raise ValueError("epsilon must lie in (0, 1)")
        lhs_n = p * n ** (1.0 - epsilon)
        lhs_m = p * m ** (1.0 - epsilon)
        checks = (
            InequalityCheck("p*n^(1-eps) >= p*m^(1-eps)", lhs_n, lhs_m),
            InequalityCheck("p*m^(1-eps) >= (ln n)^4", lhs_m, ln4),
        )
    return RegimeCheck(all(c.satisfied for c in checks), checks)


DIAM_SMALL = "diam_le_d_plus_1_expected"
DIAM_LARGE = "diam_ge_d_plus_2_expected"
DIAM_UNDECIDED = "indeterminate"


@dataclass(frozen=True)
class DiameterCriterion:
    value: float
    classification: str


def diameter_criterion(
    m: int, n: int, p: float, d: int, dead_band: float = 1e-9
) -> DiameterCriterion:
    """Divergence quantity deciding whether diameter <= d+1 is to be expected.

    Odd d:  p^d * (m*n)^((d-1)/2) - ln(m*n).
    Even d: p^d * m^(d/2) * n^(d/2 - 1) - 2*ln(n).
    Sign classifies; values within the dead band around 0 are indeterminate.
    """
    if d < 1:
        raise ValueError("need d >= 1")
    if d % 2 == 1:
        value = p**d * float(m * n) ** ((d - 1) / 2.0) - math.log(m * n)
    else:
        value = p**d * float(m) ** (d / 2.0) * float(n) ** (d / 2.0 - 1.0) - 2.0 * math.log(n)
    if value > dead_band:
        cls = DIAM_SMALL
    elif value < -dead_band:
        cls = DIAM_LARGE
    else:
        cls = DIAM_UNDECIDED
    return DiameterCriterion(value, cls)


@dataclass(frozen=True)
class RainbowPathProbability:
    """Probability that a uniformly (d+1)-colored fixed path is rainbow."""

    d: int
    path_len: int
    exact: Fraction
    stirling_bound: float
    value: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", float(self.exact))
        if self.value < self.stirling_bound:
            raise AssertionError(
                f"rainbow probability {self.value} fell below its bound {self.stirling_bound}"
            )


def rainbow_success_prob(d: int, path_len: int) -> RainbowPathProbability:
    """Rainbow probability of one path under a uniform (d+1)-coloring.

    Length d+1 paths succeed with (d+1)!/(d+1)^(d+1) >= 8^-d; length d paths
    with d!/d^d >= 4^-d.
    """
    if d < 2:
        raise ValueError("need d >= 2")
    if path_len == d + 1:
        exact = Fraction(math.factorial(d + 1), (d + 1) ** (d + 1))
        bound = 8.0**-d
    elif path_len == d:
        exact = Fraction(math.factorial(d), d**d)
        bound = 4.0**-d
    else:
        raise ValueError(f"path_len must be d or d+1, got {path_len} for d={d}")
    return RainbowPathProbability(d, path_len, exact, bound)


@dataclass(frozen=True)
class FailureBound:
    """Log-space bound on one pair having fewer than k rainbow paths.

    ``log_bound`` is the natural log of the bound, ``exponent`` the alpha with
    bound = n**alpha, ``path_supply`` the 2^(10d)*c0*ln(n) guaranteed disjoint
    paths, and ``q`` the per-path rainbow probability used.
    """

    log_bound: float
    exponent: float
    path_supply: float
    q: float

    @property
    def meets_n_minus_100(self) -> bool:
        return self.exponent <= -100.0


def per_pair_failure_bound(k: int, d: int, c0: float, n: int) -> FailureBound:
    """binom(N, k-1) * (1-q)^(N-(k-1)) with N = 2^(10d)*c0*ln(n), in log space.

    q = min of the two rainbow path probabilities.  N is not an integer, so
    the binomial coefficient is the gamma-function extension.  k=1 drops the
    binomial factor entirely.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    if d < 2:
        raise ValueError("need d >= 2")
    if c0 < 1:
        raise ValueError("need c0 >= 1")
    if n < 2:
        raise ValueError("need n >= 2")
    supply = 2.0 ** (10 * d) * c0 * math.log(n)
    if k - 1 > supply:
        raise ValueError(f"k-1={k-1} exceeds the guaranteed path supply {supply}")
    q1 = rainbow_success_prob(d, d + 1).value
    q2 = rainbow_success_prob(d, d).value
    q = min(q1, q2)
    if k == 1:
        log_choose = 0.0
    else:
        log_choose = (
            math.lgamma(supply + 1.0)
            - math.lgamma(k)
            - math.lgamma(supply - (k - 1) + 1.0)
        )
    log_bound = log_choose + (supply - (k - 1)) * math.log1p(-q)
    return FailureBound(log_bound, log_bound / math.log(n), supply, q)


def chernoff_lower_tail(mean: float, frac: float) -> float:
    """Chernoff-Hoeffding lower-tail bound exp(-frac^2 * mean / 2).

    Bounds Pr[X < (1-frac)*mean] for a sum X of independent indicators.
    """
    if mean <= 0:
        raise ValueError("mean must be positive")
    if not (0 < frac < 1):
        raise ValueError("frac must lie in (0, 1)")
    return math.exp(-(frac**2) * mean / 2.0)
