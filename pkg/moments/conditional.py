"""Moments of the sampled cut share c_R/d_R conditioned on f <= d_R <= g.

Setting: a vertex of degree d has c edges in a protected cut; every
neighbour is kept with probability p. X ~ Bin(c, p) counts kept cut
edges and Y ~ Bin(d, p) all kept edges. Everything below conditions on
f <= Y <= g.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field, model_validator
from scipy.special import logsumexp
from scipy.stats import binom

from errors import ContractViolationError, InvalidInputError

logger = logging.getLogger(__name__)

EXACT_DEGREE_LIMIT = 64
ENUMERATION_DEGREE_LIMIT = 14

Number = Union[float, Fraction]


class MomentQuery(BaseModel):
    """One parameter point; f, g and c are checked against d."""

    d: int = Field(ge=1)
    c: int = Field(default=1, ge=1)
    p: float = Field(gt=0, le=1)
    f: int = Field(ge=1)
    g: int = Field(ge=1)
    k: int = Field(default=10, ge=1)
    alpha: float = Field(default=1.0, gt=0)

    @model_validator(mode="after")
    def _ranges(self):
        if not self.f <= self.g <= self.d:
            raise ValueError(f"need 0 < f <= g <= d, got f={self.f}, g={self.g}, d={self.d}")
        if self.c > self.d:
            raise ValueError(f"need c <= d, got c={self.c}, d={self.d}")
        return self


def _exact(p: Number) -> Fraction:
    return p if isinstance(p, Fraction) else Fraction(repr(float(p)))


def _check(d: int, f: int, g: int, p: Number) -> None:
    if d < 1 or not 0 < f <= g <= d:
        raise InvalidInputError(f"need 0 < f <= g <= d, got f={f}, g={g}, d={d}")
    if not 0 < p <= 1:
        raise InvalidInputError(f"p must lie in (0, 1], got {p}")


def _window_exact(d: int, p: Fraction, f: int, g: int) -> Tuple[Fraction, Fraction]:
    """(Pr[f <= Y <= g], sum of Pr[Y=b]/b over the window), exactly."""
    mass = Fraction(0)
    inverse = Fraction(0)
    for b in range(f, g + 1):
        pmf = math.comb(d, b) * p ** b * (1 - p) ** (d - b)
        mass += pmf
        inverse += pmf / b
    return mass, inverse


def _window_log(d: int, p: float, f: int, g: int) -> Tuple[float, float]:
    b = np.arange(f, g + 1)
    logpmf = binom.logpmf(b, d, p)
    log_mass = logsumexp(logpmf)
    return float(np.exp(log_mass)), float(np.exp(logsumexp(logpmf - np.log(b)) - log_mass))


def conditioning_mass(d: int, p: Number, f: int, g: int) -> float:
    """Pr[f <= Y <= g]."""
    _check(d, f, g, p)
    if d <= EXACT_DEGREE_LIMIT:
        return float(_window_exact(d, _exact(p), f, g)[0])
    return _window_log(d, float(p), f, g)[0]


def cond_inverse_moment(d: int, p: Number, f: int, g: int, exact: bool = False) -> Number:
    """Q(d, p, f, g) = E[1/Y | f <= Y <= g].

    Summed exactly in rationals for d <= 64 and in log space above.
    When the window carries at least half the mass, Q <= 4/(pd) is checked.

    Raises:
        InvalidInputError: Bad ranges or a window with zero mass.
    """
    _check(d, f, g, p)
    if d <= EXACT_DEGREE_LIMIT:
        mass, inverse = _window_exact(d, _exact(p), f, g)
        if mass == 0:
            raise InvalidInputError("conditioning window has zero mass", {"d": d, "f": f, "g": g})
        q: Number = inverse / mass
        mass_value = float(mass)
    else:
        if exact:
            raise InvalidInputError(f"exact evaluation limited to d <= {EXACT_DEGREE_LIMIT}")
        mass_value, q = _window_log(d, float(p), f, g)
        if mass_value == 0 or not math.isfinite(q):
            raise InvalidInputError("conditioning window has zero mass", {"d": d, "f": f, "g": g})
    if mass_value >= 0.5 and float(q) > 4 / (float(p) * d) * (1 + 1e-12):
        raise ContractViolationError("inverse moment exceeds 4/(pd)", {"Q": float(q), "d": d, "p": float(p)})
    return q if exact else float(q)


@dataclass(frozen=True)
class RatioMoments:
    mean: Number
    second_moment: Number
    variance: Number

    def as_floats(self) -> Dict[str, float]:
        return {"mean": float(self.mean), "second_moment": float(self.second_moment),
                "variance": float(self.variance)}


def _pair_share(c: int, d: int) -> Fraction:
    """c(c-1)/(d(d-1)); zero when c <= 1."""
    if c <= 1:
        return Fraction(0)
    return Fraction(c * (c - 1), d * (d - 1))


def cond_ratio_moments(c: int, d: int, p: Number, f: int, g: int, exact: bool = False) -> RatioMoments:
    """Mean, second moment and variance of X/Y given f <= Y <= g.

    The mean is exactly c/d. The variance is checked against Q*c/d.
    """
    if not 0 < c <= d:
        raise InvalidInputError(f"need 0 < c <= d, got c={c}, d={d}")
    q = cond_inverse_moment(d, p, f, g, exact=exact)
    share = Fraction(c, d)
    pair = _pair_share(c, d)
    if isinstance(q, Fraction):
        mean: Number = share
        second: Number = pair + (share - pair) * q
    else:
        mean = float(share)
        second = float(pair) + (float(share) - float(pair)) * q
    variance = second - mean ** 2
    if float(variance) > float(q) * float(share) * (1 + 1e-12) + 1e-15:
        raise ContractViolationError("conditional variance exceeds Q*c/d",
                                     {"variance": float(variance), "Q": float(q)})
    return RatioMoments(mean, second, variance)


def conditional_square_moment(c: int, d: int, b: int) -> Fraction:
    """E[X^2 | Y = b] = cb/d + c(c-1)b(b-1)/(d(d-1))."""
    return Fraction(c * b, d) + _pair_share(c, d) * b * (b - 1)


def deviation_bound(c: int, d: int, k: int, alpha: float) -> float:
    """Chebyshev bound (c/d)/alpha^2 on c_R/d_R exceeding c/d + alpha*sqrt(2/k)."""
    if not 0 < c <= d:
        raise InvalidInputError(f"need 0 < c <= d, got c={c}, d={d}")
    if alpha <= 0:
        raise InvalidInputError(f"alpha must be positive, got {alpha}")
    if k < 10:
        logger.warning(f"deviation bound used with k={k} < 10; outside its regime")
    return (c / d) / alpha ** 2


def preserve_alpha(k: int) -> float:
    return math.sqrt(k / 2) / 10


def preserve_bound(c: int, d: int, k: int) -> float:
    """The alpha = sqrt(k/2)/10 case: (200/k)(c/d)."""
    return deviation_bound(c, d, k, preserve_alpha(k))


@dataclass(frozen=True)
class ConditionedSample:
    """Accepted draws of X/Y and the rejection-sampling acceptance rate."""
    ratios: np.ndarray
    draws: int

    @property
    def accepted(self) -> int:
        return int(self.ratios.size)

    @property
    def acceptance_rate(self) -> float:
        return self.accepted / self.draws if self.draws else 0.0

    @property
    def mean(self) -> float:
        return float(self.ratios.mean())

    @property
    def variance(self) -> float:
        return float(self.ratios.var())

    def tail_frequency(self, threshold: float) -> float:
        return float(np.count_nonzero(self.ratios >= threshold)) / max(1, self.accepted)


def sample_conditioned_ratio(c: int, d: int, p: float, f: int, g: int, draws: int,
                             rng: np.random.Generator) -> ConditionedSample:
    """Draw (X, Y), keep draws with f <= Y <= g, return X/Y of the kept ones."""
    _check(d, f, g, p)
    if not 0 < c <= d:
        raise InvalidInputError(f"need 0 < c <= d, got c={c}, d={d}")
    x = rng.binomial(c, p, size=draws)
    y = x + rng.binomial(d - c, p, size=draws)
    keep = (y >= f) & (y <= g)
    sample = ConditionedSample(ratios=x[keep] / y[keep], draws=draws)
    logger.debug(f"conditioned sampling c={c}, d={d}, p={p}: acceptance {sample.acceptance_rate:.3f}")
    return sample


def enumerate_ratio_moments(c: int, d: int, p: Number, f: int, g: int) -> RatioMoments:
    """Exact moments by walking all 2^d subsets of the neighbourhood."""
    if d > ENUMERATION_DEGREE_LIMIT:
        raise InvalidInputError(f"enumeration limited to d <= {ENUMERATION_DEGREE_LIMIT}")
    _check(d, f, g, p)
    codes = np.arange(2 ** d, dtype=np.int64)
    bits = (codes[:, None] >> np.arange(d)) & 1
    a = bits[:, :c].sum(axis=1)
    b = bits.sum(axis=1)
    counts = np.zeros((c + 1, d + 1), dtype=np.int64)
    np.add.at(counts, (a, b), 1)
    p = _exact(p)
    mass = first = second = Fraction(0)
    for kept in range(f, g + 1):
        weight = p ** kept * (1 - p) ** (d - kept)
        for hits in range(c + 1):
            ways = int(counts[hits, kept])
            if ways:
                w = ways * weight
                mass += w
                first += w * Fraction(hits, kept)
                second += w * Fraction(hits * hits, kept * kept)
    if mass == 0:
        raise InvalidInputError("conditioning window has zero mass", {"d": d, "f": f, "g": g})
    mean = first / mass
    square = second / mass
    return RatioMoments(mean, square, square - mean ** 2)


def enumerate_square_given_total(c: int, d: int, b: int) -> Fraction:
    """E[X^2 | Y = b] by enumeration; every size-b subset is equally likely."""
    if d > ENUMERATION_DEGREE_LIMIT:
        raise InvalidInputError(f"enumeration limited to d <= {ENUMERATION_DEGREE_LIMIT}")
    codes = np.arange(2 ** d, dtype=np.int64)
    bits = (codes[:, None] >> np.arange(d)) & 1
    chosen = bits.sum(axis=1) == b
    hits = bits[chosen, :c].sum(axis=1)
    return Fraction(int((hits ** 2).sum()), int(chosen.sum()))
