"""Pseudo-number-resolving detection by multiplexed click detectors.

Each output port fans out onto k single-photon counters of efficiency
eta. A photon survives with probability eta and then lands on one of the
k counters uniformly at random; simultaneous hits on one counter merge
into a single click. An n-photon pulse is resolved correctly only when
all n photons survive and land on n distinct counters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .fock import OutcomePattern, PhysicsError


@dataclass(frozen=True)
class DetectorArrayConfig:
    """Click-detector fan-out per output port (two ports, identical)."""

    detectors_per_port: int = 5
    efficiency: float = 1.0

    def __post_init__(self) -> None:
        if self.detectors_per_port < 1:
            raise PhysicsError(
                f"need at least one detector per port, got {self.detectors_per_port}"
            )
        if not 0.0 <= self.efficiency <= 1.0:
            raise PhysicsError(
                f"detector efficiency must lie in [0, 1], got {self.efficiency}"
            )


@lru_cache(maxsize=None)
def _surjections(shots: int, bins: int) -> int:
    """Number of ways to throw ``shots`` labeled photons onto exactly
    ``bins`` specified counters with none left empty."""
    if bins == 0:
        return 1 if shots == 0 else 0
    if shots < bins:
        return 0
    return bins * (_surjections(shots - 1, bins) + _surjections(shots - 1, bins - 1))


def resolve_probability(photons: int, config: DetectorArrayConfig) -> float:
    """Probability that an n-photon pulse yields exactly n clicks:
    eta^n k!/((k-n)! k^n), and zero whenever n exceeds k."""
    if photons < 0:
        raise PhysicsError(f"photon count must be non-negative, got {photons}")
    k = config.detectors_per_port
    if photons > k:
        return 0.0
    falling = 1
    for i in range(photons):
        falling *= k - i
    return config.efficiency**photons * (falling / k**photons)


def port_click_pmf(photons: int, config: DetectorArrayConfig) -> np.ndarray:
    """Distribution of the click count produced by an n-photon pulse on
    one port; exact convolution of loss and counter collisions."""
    if photons < 0:
        raise PhysicsError(f"photon count must be non-negative, got {photons}")
    k = config.detectors_per_port
    eta = config.efficiency
    top = min(photons, k)
    pmf = np.zeros(top + 1)
    for survivors in range(photons + 1):
        w = (
            math.comb(photons, survivors)
            * eta**survivors
            * (1.0 - eta) ** (photons - survivors)
        )
        if w == 0.0:
            continue
        for clicks in range(min(survivors, k) + 1):
            ways = math.comb(k, clicks) * _surjections(survivors, clicks)
            pmf[clicks] += w * ways / k**survivors
    return pmf


def sixfold_selection_rate(probability: float, config: DetectorArrayConfig) -> float:
    """Rate at which a (3,3) event of probability p is registered as
    three clicks on each port: p * resolve_probability(3)^2."""
    if not 0.0 <= probability <= 1.0 + 1e-12:
        raise PhysicsError(f"probability must lie in [0, 1], got {probability}")
    r3 = resolve_probability(3, config)
    return probability * r3 * r3


def click_distribution(
    outcome_probs: dict[OutcomePattern, float], config: DetectorArrayConfig
) -> dict[tuple[int, int], float]:
    """Joint click-pattern distribution for a photon-pattern distribution.

    Args:
        outcome_probs: photon patterns and their probabilities (sum <= 1;
            any deficit is unmonitored and simply never clicks here).
        config: the per-port fan-out.

    Returns:
        Map (clicks port 1, clicks port 2) -> probability, including
        patterns where collisions or loss swallowed photons.
    """
    total = float(sum(outcome_probs.values()))
    if total > 1.0 + 1e-12:
        raise PhysicsError(f"outcome probabilities sum to {total} > 1")
    if min(outcome_probs.values(), default=0.0) < -1e-15:
        raise PhysicsError("negative outcome probability")
    result: dict[tuple[int, int], float] = {}
    for pattern, prob in outcome_probs.items():
        if prob <= 0.0:
            continue
        pmf1 = port_click_pmf(pattern.out_port_1, config)
        pmf2 = port_click_pmf(pattern.out_port_2, config)
        for c1, w1 in enumerate(pmf1):
            if w1 == 0.0:
                continue
            for c2, w2 in enumerate(pmf2):
                if w2 == 0.0:
                    continue
                key = (c1, c2)
                result[key] = result.get(key, 0.0) + prob * w1 * w2
    return result
