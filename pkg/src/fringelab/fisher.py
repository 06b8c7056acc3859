"""Fisher information of photon-counting interferometry.

full_fisher sums (dp/dphi)^2 / p over every number-resolved outcome;
single_fringe_fisher keeps one fringe and lumps the rest into its
complement. Terms where the probability and its derivative vanish
together are removable singularities and contribute zero: a term is
dropped only when p < 1e-12 AND |dp/dphi| < 1e-9, otherwise it is
evaluated as written (near a dark fringe it is the dominant
contribution).

The per-outcome ceiling is the second moment of the photon-number
difference carried by the back-propagated detection ket,
<m|(n1-n2)^2|m> = 2 n1 n2 + N. For the Holland-Burnett state this gives
the phase-independent total N(N+2)/2; NOON states reach N^2 on the full
count but only N^2 C(N, N/2) / 2^(N-1) on their best single fringe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import (
    OutcomePattern,
    PhysicsError,
    TwoModeState,
    beam_splitter_matrix,
    number_difference,
)
from .fringes import (
    FringeModel,
    apply_model,
    fringe_derivatives,
    fringe_probabilities,
    model_derivative,
    _amp_and_grad,
    _outcome_index,
)

# Removable-singularity cutoffs. At an exact bright or dark point the
# computed p and dp are pure roundoff (|amplitude| of order eps, so p of
# order eps^2 ~ 1e-30 and dp of order eps ~ 1e-15 for unit-norm states)
# and the 0/0 term is dropped as zero. The thresholds sit just above
# that roundoff scale: any larger cutoff discards genuine information
# near a fringe extremum (a term with p ~ 1e-13 can still contribute
# ~1e-6 to the full-counting sum, which must stay exact to 1e-8).
_P_TOL = 1e-26
_DP_TOL = 1e-13


@dataclass(frozen=True)
class FisherProfile:
    """Fisher information sampled over a phase grid, with an optional
    1-sigma band propagated from fit-parameter uncertainty."""

    phis: np.ndarray
    values: np.ndarray
    band: np.ndarray | None = None
    label: str = ""


@dataclass(frozen=True)
class OptimalityReport:
    """The two-step chain bounding one fringe's Fisher information.

    fisher <= overlap_bound = 4 |<m|h|psi>|^2 / (1 - p)
           <= output_bound  = <m|(n1-n2)^2|m>

    The first step is an equality for real-amplitude superpositions; the
    second closes as p -> 1. Tightness flags compare at 1e-9.
    """

    fisher: float
    overlap_bound: float
    output_bound: float
    gradient_tight: bool
    variance_tight: bool


def _term(p: float, dp: float) -> float:
    if p < _P_TOL and abs(dp) < _DP_TOL:
        return 0.0
    return dp * dp / p


def full_fisher(state: TwoModeState, phi: float) -> float:
    """Fisher information of the full photon-counting distribution."""
    p = fringe_probabilities(state, phi)
    dp = fringe_derivatives(state, phi)
    keep = ~((p < _P_TOL) & (np.abs(dp) < _DP_TOL))
    return float(np.sum(dp[keep] ** 2 / p[keep]))


def single_fringe_fisher(
    state: TwoModeState, outcome: OutcomePattern, phi: float
) -> float:
    """Fisher information of the binary outcome/not-outcome measurement,
    (dp/dphi)^2 / (p (1 - p)); zero at removable singularities.

    The complement 1 - p is accumulated from the other outcomes'
    probabilities, which stays accurate even where p is within a few
    ulps of 1 (the bright-fringe points where naive subtraction would
    cancel catastrophically).
    """
    row = _outcome_index(state, outcome)
    probs = fringe_probabilities(state, phi)
    p = float(probs[row])
    rest = float(np.delete(probs, row).sum())
    dp = float(fringe_derivatives(state, phi)[row])
    return _binary_fisher_split(p, rest, dp)


def _binary_fisher(p: float, dp: float) -> float:
    return _binary_fisher_split(p, 1.0 - p, dp)


def _binary_fisher_split(p: float, rest: float, dp: float) -> float:
    """Binary Fisher term with the complement probability passed
    separately so callers can supply it without cancellation."""
    if abs(dp) < _DP_TOL and (p < _P_TOL or rest < _P_TOL):
        return 0.0
    denom = p * rest
    if denom <= 0.0:
        return 0.0 if abs(dp) < _DP_TOL else math.inf
    return dp * dp / denom


def single_fringe_fisher_model(model: FringeModel, phi: float) -> float:
    """Single-fringe Fisher information of a fringe model."""
    p = float(apply_model(model, float(phi)))
    dp = float(model_derivative(model, float(phi)))
    return _binary_fisher(p, dp)


def model_fisher_sigma(model: FringeModel, cov: np.ndarray, phi: float) -> float:
    """1-sigma half-width of the model Fisher value, first-order in the
    parameter covariance (affine (a, b) or noon-cosine (q, V))."""
    base = np.array(
        [model.amplitude, model.offset]
        if model.kind == "affine"
        else [model.amplitude, model.visibility]
    )
    grad = np.empty(2)
    for i in range(2):
        step = 1e-6 * max(1.0, abs(base[i]))
        lo, hi = base.copy(), base.copy()
        lo[i] -= step
        hi[i] += step
        grad[i] = (
            single_fringe_fisher_model(_with_params(model, hi), phi)
            - single_fringe_fisher_model(_with_params(model, lo), phi)
        ) / (2.0 * step)
    return float(np.sqrt(max(grad @ np.asarray(cov) @ grad, 0.0)))


def _with_params(model: FringeModel, params: np.ndarray) -> FringeModel:
    if model.kind == "affine":
        a, b = float(params[0]), float(params[1])
        denom = a + 2.0 * b
        vis = a / denom if denom != 0.0 else 0.0
        return FringeModel(
            "affine", model.state_kind, model.total_photons, model.outcome,
            a, b, min(max(vis, 0.0), 1.0),
        )
    return FringeModel(
        "noon-cosine", model.state_kind, model.total_photons, model.outcome,
        float(params[0]), 0.0, float(params[1]),
    )


def fisher_profile(
    fun, phis, band_fun=None, label: str = ""
) -> FisherProfile:
    """Sample a Fisher function (and optional band) over a phase grid."""
    phis = np.asarray(phis, dtype=float)
    values = np.array([fun(x) for x in phis])
    band = None if band_fun is None else np.array([band_fun(x) for x in phis])
    return FisherProfile(phis, values, band, label)


def output_uncertainty_bound(outcome: OutcomePattern) -> float:
    """Ceiling on any single fringe's Fisher information at this outcome:
    the (n1 - n2)^2 moment of the detection ket propagated back through
    the output splitter, equal to 2 n1 n2 + N."""
    n = outcome.total
    mat = beam_splitter_matrix(n)
    ket = mat[:, outcome.out_port_1]
    d = number_difference(n)
    return float((ket * ket) @ (d * d))


def optimality_certificate(
    state: TwoModeState, outcome: OutcomePattern, phi: float
) -> OptimalityReport:
    """Evaluate the fringe Fisher information against its two bounds."""
    row = _outcome_index(state, outcome)
    amp, amp_h = _amp_and_grad(state, row, np.atleast_1d(float(phi)))
    probs = fringe_probabilities(state, phi)
    p = float(probs[row])
    rest = float(np.delete(probs, row).sum())
    dp = float(2.0 * np.imag(np.conj(amp[0]) * amp_h[0]))
    fisher = _binary_fisher_split(p, rest, dp)
    overlap = 4.0 * float(np.abs(amp_h[0]) ** 2)
    overlap_bound = overlap / rest if rest > 1e-15 else math.inf
    output_bound = output_uncertainty_bound(outcome)
    return OptimalityReport(
        fisher=fisher,
        overlap_bound=overlap_bound,
        output_bound=output_bound,
        gradient_tight=_close(fisher, overlap_bound),
        variance_tight=_close(overlap_bound, output_bound),
    )


def _close(x: float, y: float) -> bool:
    if math.isinf(x) or math.isinf(y):
        return False
    return math.isclose(x, y, rel_tol=1e-9, abs_tol=1e-9)


def hb_limit(total_photons: int) -> float:
    """Phase-independent Fisher information N(N+2)/2 of the
    Holland-Burnett state under full photon counting (even N)."""
    if total_photons % 2 != 0 or total_photons < 2:
        raise PhysicsError(
            f"the Holland-Burnett limit is defined for even N >= 2, "
            f"got N={total_photons}"
        )
    return total_photons * (total_photons + 2) / 2.0


def noon_single_fringe_max(total_photons: int) -> float:
    """Supremum of the balanced-outcome fringe Fisher information for a
    NOON state: N^2 C(N, N/2) / 2^(N-1), via log-gamma beyond N = 60."""
    n = total_photons
    if n % 2 != 0 or n < 2:
        raise PhysicsError(
            f"the balanced NOON fringe needs even N >= 2, got N={n}"
        )
    if n <= 60:
        return float(n * n * math.comb(n, n // 2)) / float(2 ** (n - 1))
    log_val = (
        2.0 * math.log(n)
        + math.lgamma(n + 1)
        - 2.0 * math.lgamma(n // 2 + 1)
        - (n - 1) * math.log(2.0)
    )
    return math.exp(log_val)


def noon_asymptotic(total_photons: int) -> float:
    """Large-N form of noon_single_fringe_max: sqrt(8/pi) N^(3/2)."""
    if total_photons < 1:
        raise PhysicsError(f"need N >= 1, got N={total_photons}")
    return math.sqrt(8.0 / math.pi) * total_photons**1.5


@dataclass(frozen=True)
class ScalingRow:
    total_photons: int
    snl: float
    noon_single: float
    hb_single: float


def scaling_table(n_max: int) -> list[ScalingRow]:
    """Benchmark Fisher-information scalings for even N up to n_max:
    the shot-noise limit N, the best NOON single fringe, and the
    Holland-Burnett full-counting value N(N+2)/2."""
    if n_max < 2:
        raise PhysicsError(f"scaling table needs n_max >= 2, got {n_max}")
    return [
        ScalingRow(n, float(n), noon_single_fringe_max(n), hb_limit(n))
        for n in range(2, n_max + 1, 2)
    ]


_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def find_peak(fun, lo: float = 0.0, hi: float = math.pi,
              coarse_step: float = math.radians(0.25)) -> tuple[float, float]:
    """Locate the maximum of a scalar function of phase.

    Scans a coarse grid (default 0.25 degrees over [0, pi]) and refines
    the best bracket by golden-section search. Deterministic; never
    returns less than the best coarse-grid sample.
    """
    if hi <= lo:
        raise PhysicsError(f"need lo < hi, got [{lo}, {hi}]")
    count = max(2, int(round((hi - lo) / coarse_step)) + 1)
    grid = np.linspace(lo, hi, count)
    vals = np.array([fun(x) for x in grid])
    i = int(np.argmax(vals))
    best_x, best_f = float(grid[i]), float(vals[i])
    a = float(grid[max(i - 1, 0)])
    b = float(grid[min(i + 1, count - 1)])
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = fun(c), fun(d)
    while b - a > 1e-10:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = fun(d)
    x = 0.5 * (a + b)
    fx = fun(x)
    if fx > best_f:
        best_x, best_f = x, fx
    return best_x, float(best_f)
