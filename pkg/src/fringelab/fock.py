"""Exact two-mode Fock-sector states and interferometer optics.

A state of N photons split between the two interferometer paths is a
complex amplitude vector over the kets |n1, N-n1>, stored in ascending
n1 (index n1 holds the coefficient of n1 photons in path 1). The 50:50
beam splitter is the photon-number lift of the real mode mixing
a -> (a+b)/sqrt(2), b -> (a-b)/sqrt(2); in this gauge the dual Fock
input |3,3> maps to (sqrt(5)|6,0> - sqrt(3)|4,2> + sqrt(3)|2,4>
- sqrt(5)|0,6>)/4. The lifted matrix is real, symmetric and
self-inverse, so the same transform describes the recombining splitter
in front of the detectors.

All functions are pure; states are immutable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

#: Largest photon number accepted by the exact-evolution routines.
MAX_PHOTONS = 4096

_NORM_TOL = 1e-12


class PhysicsError(ValueError):
    """An input is physically inconsistent (bad state vector, photon-number
    mismatch between a state and an outcome, invalid plan or fit data)."""


@dataclass(frozen=True)
class TwoModeState:
    """Pure state of a fixed total photon number in two paths.

    Attributes:
        total_photons: sector size N; the amplitude vector has N+1 entries.
        amplitudes: complex coefficients of |n1, N-n1> in ascending n1.
        renormalized: True when the originating call had to rescale its
            input to unit norm (see :func:`make_state`).
    """

    total_photons: int
    amplitudes: np.ndarray
    renormalized: bool = False

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.ndim != 1 or amps.shape[0] != self.total_photons + 1:
            raise PhysicsError(
                f"a {self.total_photons}-photon state needs "
                f"{self.total_photons + 1} amplitudes, got {amps.shape}"
            )
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True, order=True)
class OutcomePattern:
    """Number-resolved detection pattern (n1 photons out of port 1, n2 out
    of port 2). Matched against a state, it must satisfy n1 + n2 = N.
    Patterns order lexicographically by (port 1, port 2) counts."""

    out_port_1: int
    out_port_2: int

    def __post_init__(self) -> None:
        if self.out_port_1 < 0 or self.out_port_2 < 0:
            raise PhysicsError(
                f"outcome photon counts must be non-negative, got "
                f"({self.out_port_1}, {self.out_port_2})"
            )

    @property
    def total(self) -> int:
        return self.out_port_1 + self.out_port_2

    def __str__(self) -> str:
        return f"{self.out_port_1}:{self.out_port_2}"


def _check_sector(total_photons: int) -> None:
    if total_photons < 0:
        raise PhysicsError(f"photon number must be non-negative, got {total_photons}")
    if total_photons > MAX_PHOTONS:
        raise PhysicsError(
            f"photon number {total_photons} exceeds the exact-evolution "
            f"cap of {MAX_PHOTONS}"
        )


def number_difference(total_photons: int) -> np.ndarray:
    """Eigenvalues of (n1 - n2) along the basis, i.e. 2*n1 - N."""
    return 2.0 * np.arange(total_photons + 1) - total_photons


def make_state(total_photons: int, amplitudes) -> TwoModeState:
    """Build a normalized state from raw amplitudes.

    Args:
        total_photons: sector size N.
        amplitudes: N+1 complex coefficients in ascending n1.

    Returns:
        A unit-norm TwoModeState. If the input norm is off by more than
        1e-12 the vector is rescaled and ``renormalized`` is set.

    Raises:
        PhysicsError: wrong vector length or an all-zero vector.
    """
    _check_sector(total_photons)
    amps = np.asarray(amplitudes, dtype=np.complex128)
    if amps.ndim != 1 or amps.shape[0] != total_photons + 1:
        raise PhysicsError(
            f"a {total_photons}-photon state needs {total_photons + 1} "
            f"amplitudes, got shape {amps.shape}"
        )
    nrm = float(np.linalg.norm(amps))
    if nrm == 0.0:
        raise PhysicsError("state vector is identically zero")
    flag = abs(nrm - 1.0) > _NORM_TOL
    if flag:
        amps = amps / nrm
    return TwoModeState(total_photons, amps, renormalized=flag)


def basis_state(total_photons: int, n_port_1: int) -> TwoModeState:
    """The basis ket |n_port_1, N - n_port_1>."""
    _check_sector(total_photons)
    if not 0 <= n_port_1 <= total_photons:
        raise PhysicsError(
            f"basis ket needs 0 <= n1 <= {total_photons}, got {n_port_1}"
        )
    amps = np.zeros(total_photons + 1, dtype=np.complex128)
    amps[n_port_1] = 1.0
    return TwoModeState(total_photons, amps)


@lru_cache(maxsize=None)
def beam_splitter_matrix(total_photons: int) -> np.ndarray:
    """The 50:50 beam splitter on the N-photon sector.

    Entries are evaluated from an exact integer three-term recurrence for
    the binomial-expansion coefficients of (a+b)^n (a-b)^(N-n), so every
    matrix element is correct to a unit in the last place at any N up to
    the cap. The result is cached, real, symmetric, and self-inverse.
    """
    _check_sector(total_photons)
    n = total_photons
    fac = [math.factorial(i) for i in range(n + 1)]
    two_n = 1 << n
    mat = np.empty((n + 1, n + 1), dtype=float)
    for col in range(n + 1):
        den = fac[col] * fac[n - col] * two_n
        k_prev = 0
        k_cur = 1  # K_0
        lead = n - 2 * col
        for k in range(n + 1):
            if k > 0:
                k_next = (lead * k_cur - (n - k + 2) * k_prev) // k
                k_prev, k_cur = k_cur, k_next
            mag = math.sqrt(float(Fraction(k_cur * k_cur * fac[k] * fac[n - k], den)))
            neg = (k_cur < 0) ^ (((n - col - k) & 1) == 1)
            mat[k, col] = -mag if neg else mag
    mat.setflags(write=False)
    return mat


def beam_splitter(state: TwoModeState) -> TwoModeState:
    """Send a state through the 50:50 beam splitter (its own inverse)."""
    mat = beam_splitter_matrix(state.total_photons)
    return TwoModeState(
        state.total_photons, mat @ state.amplitudes, renormalized=state.renormalized
    )


def phase_shift(state: TwoModeState, phi: float) -> TwoModeState:
    """Apply exp(-i*phi*h) with generator h = (n1 - n2)/2, phi in radians."""
    h = 0.5 * number_difference(state.total_photons)
    amps = state.amplitudes * np.exp(-1j * phi * h)
    return TwoModeState(state.total_photons, amps, renormalized=state.renormalized)


def generator_apply(state: TwoModeState) -> TwoModeState:
    """Multiply each amplitude by the generator eigenvalue (n1 - n2)/2.

    The result is an operator image, not a physical state; it is returned
    unnormalized (it can even be the zero vector, e.g. for |3,3>).
    """
    h = 0.5 * number_difference(state.total_photons)
    return TwoModeState(
        state.total_photons, state.amplitudes * h, renormalized=state.renormalized
    )


def generator_variance(state: TwoModeState) -> float:
    """Variance of the photon-number difference n1 - n2 (equals 4*Var(h))."""
    p = np.abs(state.amplitudes) ** 2
    d = number_difference(state.total_photons)
    mean = float(p @ d)
    return float(p @ (d * d)) - mean * mean


def inner_product(bra: TwoModeState, ket: TwoModeState) -> complex:
    """<bra|ket>; the first argument is conjugated."""
    if bra.total_photons != ket.total_photons:
        raise PhysicsError(
            f"inner product needs equal photon numbers, got "
            f"{bra.total_photons} and {ket.total_photons}"
        )
    return complex(np.vdot(bra.amplitudes, ket.amplitudes))
