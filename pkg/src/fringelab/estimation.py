"""Monte Carlo experiments and phase estimators.

simulate_counts draws categorical counts from the exact outcome
distribution (or from a fringe model, or through a click-detector
array); every phase gets its own child stream of a splittable seed
sequence, so results are deterministic and independent of evaluation
order. The estimators mirror a standard analysis chain: a windowed
local-regression Fisher estimate, a maximum-likelihood phase fit, and
the fringe fit from :mod:`fringelab.fringes`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .detection import DetectorArrayConfig, click_distribution
from .fock import OutcomePattern, PhysicsError, TwoModeState
from .fringes import (
    CountRecord,
    FringeModel,
    apply_model,
    fringe_derivatives,
    fringe_probabilities,
    model_derivative,
)
from .states import build_state


@dataclass(frozen=True)
class ExperimentPlan:
    """A phase-scan simulation recipe.

    Draws ``shots`` events at every phase (radians) from the named input
    state's outcome distribution, optionally pushed through a detector
    array (events whose click total differs from N are discarded), or
    from ``model`` as a single-fringe binomial when a fringe model is
    given instead.
    """

    state_kind: str
    total_photons: int
    phases: tuple[float, ...]
    shots: int
    seed: int
    detectors: DetectorArrayConfig | None = None
    model: FringeModel | None = None

    def __post_init__(self) -> None:
        if len(self.phases) == 0:
            raise PhysicsError("an experiment plan needs at least one phase")
        if self.shots < 1:
            raise PhysicsError(f"shots must be positive, got {self.shots}")


def simulate_counts(plan: ExperimentPlan) -> list[CountRecord]:
    """Simulate one record per planned phase, deterministically per seed."""
    state = None
    if plan.model is None:
        state = build_state(plan.state_kind, plan.total_photons)
    seeds = np.random.SeedSequence(plan.seed).spawn(len(plan.phases))
    records = []
    for phi, child in zip(plan.phases, seeds):
        rng = np.random.default_rng(child)
        if plan.model is not None:
            p = float(apply_model(plan.model, phi))
            hit = int(rng.binomial(plan.shots, min(max(p, 0.0), 1.0)))
            counts = {plan.model.outcome: hit} if hit else {}
        else:
            counts = _draw_patterns(rng, state, phi, plan.shots, plan.detectors)
        records.append(CountRecord(phi=float(phi), shots=plan.shots, outcome_counts=counts))
    return records


def _draw_patterns(
    rng: np.random.Generator,
    state: TwoModeState,
    phi: float,
    shots: int,
    detectors: DetectorArrayConfig | None,
) -> dict[OutcomePattern, int]:
    n = state.total_photons
    probs = fringe_probabilities(state, phi)
    if detectors is None:
        patterns = [OutcomePattern(k, n - k) for k in range(n + 1)]
        pvals = np.clip(probs, 0.0, None)
        draws = rng.multinomial(shots, pvals / pvals.sum())
        return {pat: int(c) for pat, c in zip(patterns, draws) if c > 0}
    photon_probs = {OutcomePattern(k, n - k): float(probs[k]) for k in range(n + 1)}
    clicks = click_distribution(photon_probs, detectors)
    kept = sorted(
        (key, p) for key, p in clicks.items() if key[0] + key[1] == n and p > 0.0
    )
    pvals = np.array([p for _, p in kept] + [0.0])
    pvals[-1] = max(0.0, 1.0 - pvals.sum())  # lost or unresolved events
    draws = rng.multinomial(shots, pvals / pvals.sum())
    return {
        OutcomePattern(*key): int(c)
        for (key, _), c in zip(kept, draws[:-1])
        if c > 0
    }


@dataclass(frozen=True)
class DirectFisherResult:
    """Windowed direct Fisher estimate.

    The empirical fringe over the window is fitted by an unweighted local
    line; (slope^2)/(p(1-p)) is evaluated at the window midpoint, with a
    1-sigma error from binomial counting statistics. ``low_confidence``
    is set (never raised) when the windowed fringe is flat or reverses
    direction by more than its own noise.
    """

    phi_mid: float
    fisher: float
    sigma: float
    low_confidence: bool
    window: tuple[float, float]
    points: int


def direct_fisher_from_data(
    records: list[CountRecord],
    outcome: OutcomePattern,
    window: tuple[float, float] | None = None,
) -> DirectFisherResult:
    """Estimate one fringe's Fisher information from counted data.

    Args:
        records: counted data (any order; phases in radians).
        outcome: fringe to analyze.
        window: inclusive phase range (radians) to use; all records when
            omitted.

    Raises:
        PhysicsError: fewer than three distinct phases in the window.
    """
    rows = sorted(
        (r.phi, float(r.outcome_counts.get(outcome, 0.0)) / r.shots, r.shots)
        for r in records
        if window is None or window[0] - 1e-12 <= r.phi <= window[1] + 1e-12
    )
    if len({round(r[0], 12) for r in rows}) < 3:
        raise PhysicsError(
            "direct Fisher estimate needs at least three distinct phases "
            "in the window"
        )
    phis = np.array([r[0] for r in rows])
    freqs = np.array([r[1] for r in rows])
    shots = np.array([r[2] for r in rows], dtype=float)
    lo, hi = float(phis.min()), float(phis.max())
    mid = 0.5 * (lo + hi)
    x = phis - mid

    design = np.column_stack([np.ones_like(x), x])
    coef, *_ = np.linalg.lstsq(design, freqs, rcond=None)
    level, slope = float(coef[0]), float(coef[1])

    # Error propagation: the OLS estimate is linear in the frequencies,
    # whose binomial variances are known; floor each at one event.
    var_f = np.maximum(freqs * (1.0 - freqs), 1.0 / shots) / shots
    hat = np.linalg.inv(design.T @ design) @ design.T
    var_level = float(hat[0] ** 2 @ var_f)
    var_slope = float(hat[1] ** 2 @ var_f)
    cov_ls = float((hat[0] * hat[1]) @ var_f)

    flagged = False
    p_mid = level
    if not 0.0 < p_mid < 1.0:
        p_mid = min(max(p_mid, 1e-9), 1.0 - 1e-9)
        flagged = True
    fisher = slope * slope / (p_mid * (1.0 - p_mid))

    d_slope = 2.0 * slope / (p_mid * (1.0 - p_mid))
    d_level = -slope * slope * (1.0 - 2.0 * p_mid) / (p_mid * (1.0 - p_mid)) ** 2
    var_fisher = (
        d_level * d_level * var_level
        + d_slope * d_slope * var_slope
        + 2.0 * d_level * d_slope * cov_ls
    )
    sigma = math.sqrt(max(var_fisher, 0.0))

    if slope * slope <= var_slope:
        flagged = True  # slope indistinguishable from flat
    diffs = np.diff(freqs)
    noise = np.sqrt(var_f[:-1] + var_f[1:])
    rising = diffs > 2.0 * noise
    falling = diffs < -2.0 * noise
    if rising.any() and falling.any():
        flagged = True  # fringe reverses inside the window
    return DirectFisherResult(
        phi_mid=mid,
        fisher=fisher,
        sigma=sigma,
        low_confidence=flagged,
        window=(lo, hi),
        points=len(rows),
    )


@dataclass(frozen=True)
class MleResult:
    phi_hat: float
    stderr: float
    at_boundary: bool
    log_likelihood: float


def mle_phase(
    records: list[CountRecord],
    model: FringeModel | TwoModeState,
    interval: tuple[float, float],
) -> MleResult:
    """Maximum-likelihood phase from counts taken at one (unknown) phase.

    With a FringeModel the likelihood is binomial on that single fringe;
    with a TwoModeState it is multinomial over every recorded pattern.
    The search interval must be a symmetry cell of the fringe within
    which the phase is identifiable; a maximum on the interval edge is
    flagged, not raised. The standard error is the inverse curvature of
    the log-likelihood at the maximum.
    """
    lo, hi = float(interval[0]), float(interval[1])
    if hi <= lo:
        raise PhysicsError(f"need an increasing interval, got [{lo}, {hi}]")
    if not records:
        raise PhysicsError("no count records")

    if isinstance(model, TwoModeState):
        pooled: dict[OutcomePattern, float] = {}
        for r in records:
            for pat, c in r.outcome_counts.items():
                pooled[pat] = pooled.get(pat, 0.0) + float(c)
        if not pooled:
            raise PhysicsError("no recorded events")
        pats = sorted(pooled)
        rows = [pat.out_port_1 for pat in pats]
        weights = np.array([pooled[p] for p in pats])

        def loglik(phi: float) -> float:
            probs = fringe_probabilities(model, phi)
            p = np.clip(probs[rows], 1e-300, 1.0)
            return float(weights @ np.log(p))

        def score(phi: float) -> float:
            p = np.clip(fringe_probabilities(model, phi)[rows], 1e-300, 1.0)
            dp = fringe_derivatives(model, phi)[rows]
            return float(weights @ (dp / p))

    else:
        hits = sum(float(r.outcome_counts.get(model.outcome, 0.0)) for r in records)
        total = sum(r.shots for r in records)

        def loglik(phi: float) -> float:
            p = min(max(float(apply_model(model, phi)), 1e-300), 1.0 - 1e-16)
            return hits * math.log(p) + (total - hits) * math.log1p(-p)

        def score(phi: float) -> float:
            p = min(max(float(apply_model(model, phi)), 1e-300), 1.0 - 1e-16)
            dp = float(model_derivative(model, phi))
            return (hits / p - (total - hits) / (1.0 - p)) * dp

    grid = np.linspace(lo, hi, 241)
    if isinstance(model, TwoModeState):
        values = np.array([loglik(x) for x in grid])
    else:
        p_grid = np.clip(apply_model(model, grid), 1e-300, 1.0 - 1e-16)
        values = hits * np.log(p_grid) + (total - hits) * np.log1p(-p_grid)
    i = int(np.argmax(values))
    a, b = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    res = minimize_scalar(
        lambda x: -loglik(x), bounds=(a, b), method="bounded",
        options={"xatol": 1e-12},
    )
    phi_hat = float(res.x)
    best_ll = -float(res.fun)

    # The log-likelihood magnitude limits how finely its flat maximum can
    # be resolved; a root of the analytic score recovers the lost digits.
    sa, sb = score(a), score(b)
    if sa > 0.0 > sb:
        root = float(brentq(score, a, b, xtol=1e-14))
        root_ll = loglik(root)
        if root_ll >= best_ll:
            phi_hat, best_ll = root, root_ll

    span = hi - lo
    at_boundary = phi_hat - lo < 1e-6 * span or hi - phi_hat < 1e-6 * span
    step = max(1e-4, 1e-7 * span)
    left = max(phi_hat - step, lo)
    right = min(phi_hat + step, hi)
    curv = (loglik(right) - 2.0 * loglik(phi_hat) + loglik(left)) / (
        (0.5 * (right - left)) ** 2
    )
    stderr = 1.0 / math.sqrt(-curv) if curv < 0 else math.inf
    return MleResult(phi_hat, stderr, at_boundary, best_ll)


def snl_comparison(fisher: float, total_photons: int) -> float:
    """Ratio of a Fisher value to the shot-noise limit N."""
    if total_photons < 1:
        raise PhysicsError(f"need N >= 1, got N={total_photons}")
    if fisher < 0:
        raise PhysicsError(f"Fisher information cannot be negative, got {fisher}")
    return fisher / total_photons
