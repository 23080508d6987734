"""Tuning constants shared by the randomized cut algorithms.

Every probability and budget that carries a log-n factor is derived here so
experiments can scale all of them together through one knob. Probabilities
are exact Fractions clamped to 1; comparisons against them stay rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


def frac_of_float(x: float) -> Fraction:
    """Exact rational value of a float (not a decimal approximation)."""
    return Fraction(x)


def ceil_log2(n: int) -> int:
    if n < 1:
        raise ValueError("need a positive argument")
    return max(1, (n - 1).bit_length())


@dataclass(frozen=True)
class Tuning:
    """Constants for subsampling, sparsification, and learning budgets.

    `scale` multiplies every log-derived control at once: sampling
    probabilities, repetition counts, and learning caps. scale=1.0 is the
    analysis-faithful setting; smaller values trade the success guarantee
    for observable query growth on desk-size inputs.
    """

    scale: float = 1.0
    subsample_coeff: float = 80.0
    strength_coeff: float = 4000.0
    sparsifier_boost: float = 2.0
    decompose_frac: Fraction = Fraction(4, 5)
    edge_regime_factor: int = 8
    near_min_slack: int = 3

    def _scaled(self, x: float) -> Fraction:
        return frac_of_float(self.scale) * frac_of_float(x)

    def subsample_prob(self, n: int, c: int, eps: Fraction) -> Fraction:
        """Edge keep probability targeting min cuts near c, error eps."""
        if c <= 0:
            return Fraction(1)
        p = self._scaled(self.subsample_coeff * math.log(n)) / (eps * eps * c)
        return min(p, Fraction(1))

    def strength_prob(self, n: int, kappa: Fraction) -> Fraction:
        """Keep probability for the strength estimation pass at level kappa."""
        if kappa <= 0:
            raise ValueError("strength threshold must be positive")
        q = self._scaled(self.strength_coeff * math.log(n)) / kappa
        return min(q, Fraction(1))

    def h_prob(self, q: Fraction, eps: Fraction) -> Fraction:
        """Sparsifier keep probability for an edge certified at level q.

        Rounded up to a unit fraction so kept edges carry integer weight;
        rounding up only oversamples, never hurts concentration.
        """
        p = frac_of_float(self.sparsifier_boost) * q / (eps * eps)
        if p >= 1:
            return Fraction(1)
        return Fraction(1, math.floor(1 / p))

    def repetitions(self, n: int) -> int:
        """Independent repetitions of the contraction loop."""
        return max(1, math.ceil(self.scale * ceil_log2(n)))

    def learn_cap(self, n: int) -> int:
        """Edge budget above which a learning phase is abandoned."""
        return n * max(1, math.ceil(self.scale * math.log(max(n, 2))))

    def contraction_target(self, n: int, c: int) -> int:
        """Contract until at most this many interface edges survive."""
        return max(1, c) * n

    def st_learn_cap(self, n: int) -> int:
        """Edge budget for the s-t endgame's learning phase.

        Purely protective: the flow-cover bound keeps the real count near
        n^{3/2} on unit graphs, so a cap at 8 n^{5/3} never binds unless the
        decomposition went badly wrong; in that case the caller degrades
        rather than blowing the query budget.
        """
        return max(64, math.ceil(8.0 * float(n) ** (5.0 / 3.0)))


DEFAULT_TUNING = Tuning()

DEFAULT_EPS = Fraction(1, 4)


def st_epsilon(n: int) -> Fraction:
    """Accuracy parameter for the s-t pipeline, clamped away from 1/3.

    Uses 1 over the integer cube-root ceiling, which is within the target
    rate and keeps the rational arithmetic downstream small.
    """
    if n < 2:
        raise ValueError("need at least two vertices")
    root = round(n ** (1.0 / 3.0))
    while root**3 < n:
        root += 1
    while root > 1 and (root - 1) ** 3 >= n:
        root -= 1
    return min(Fraction(1, root), Fraction(3, 10))
