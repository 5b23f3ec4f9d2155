"""
Exact results for a single ultra-short potential, the Dirac delta potential
and the rectangular barrier/well.
These double as user-facing formulas and as oracles for the transfer engine.
"""

import math
import logging
from dataclasses import dataclass
from typing import NamedTuple, Tuple

import numpy as np
from scipy import integrate

from ..errors import DomainError, NoBoundStateError

# Piece form tags
GROWING_EXP = 'growing-exp'
DECAYING_EXP = 'decaying-exp'
PLANE_WAVE_PAIR = 'plane-wave-pair'
CONSTANT = 'constant'
LINEAR = 'linear'

PIECE_FORMS = (GROWING_EXP, DECAYING_EXP, PLANE_WAVE_PAIR, CONSTANT, LINEAR)

# Relative band around E = V0 where the rectangular formula switches to its series
RECTANGULAR_SERIES_BAND = 1e-8


@dataclass(frozen=True)
class UltraShortParams:
    """
    Parameters of a single ultra-short potential of width 2*half_width.

    Args:
        mass: Particle mass
        hbar: Reduced Planck constant in the chosen units
        v0: Potential strength (>= 0, sign chosen by the barrier/well operation)
        half_width: Half of the ultra-short width (delta x)
    """
    mass: float
    hbar: float
    v0: float
    half_width: float

    def __post_init__(self):
        if not self.half_width > 0:
            raise DomainError(f"half_width must be > 0, got {self.half_width!r}")
        if not self.mass > 0:
            raise DomainError(f"mass must be > 0, got {self.mass!r}")
        if not self.hbar > 0:
            raise DomainError(f"hbar must be > 0, got {self.hbar!r}")
        if not self.v0 >= 0:
            raise DomainError(f"v0 must be >= 0, got {self.v0!r}")

    @property
    def k0(self) -> float:
        """Delta strength with the same area, 2*V0*dx."""
        return 2.0 * self.v0 * self.half_width

    def kappa(self, energy: float) -> float:
        """Decay constant of a bound state at energy < 0."""
        return math.sqrt(-2.0 * self.mass * energy) / self.hbar

    def k_incident(self, energy: float) -> float:
        """Free wavenumber outside the potential."""
        return math.sqrt(2.0 * self.mass * energy) / self.hbar

    def k_interior(self, energy: float) -> complex:
        """Wavenumber inside a rectangular barrier of height V0 (imaginary below V0)."""
        return np.sqrt(complex(2.0 * self.mass * (energy - self.v0))) / self.hbar

    def k_well_interior(self, energy: float) -> float:
        """Wavenumber inside a well of depth V0. No transmission formula uses it."""
        return math.sqrt(2.0 * self.mass * (energy + self.v0)) / self.hbar


@dataclass(frozen=True)
class WavePiece:
    """One analytic piece of a wavefunction, written in x - origin."""
    form: str
    coefficients: Tuple[complex, complex]
    wavenumber: float = 0.0
    origin: float = 0.0

    def __post_init__(self):
        if self.form not in PIECE_FORMS:
            raise ValueError(f"Unknown piece form: {self.form}")

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        u = np.asarray(x, dtype=float) - self.origin
        c0, c1 = self.coefficients
        k = self.wavenumber

        if self.form == GROWING_EXP:
            return c0 * np.exp(k * u) + 0j
        if self.form == DECAYING_EXP:
            return c0 * np.exp(-k * u) + 0j
        if self.form == PLANE_WAVE_PAIR:
            return c0 * np.exp(1j * k * u) + c1 * np.exp(-1j * k * u)
        if self.form == CONSTANT:
            return np.full(u.shape, c0, dtype=complex)
        return c0 + c1 * u + 0j


@dataclass(frozen=True)
class PiecewiseWavefunction:
    """
    Wavefunction made of analytic pieces separated by breakpoints.

    pieces[0] covers (-inf, breakpoints[0]], pieces[-1] covers
    [breakpoints[-1], inf).
    """
    breakpoints: Tuple[float, ...]
    pieces: Tuple[WavePiece, ...]
    energy: float

    def __post_init__(self):
        if len(self.pieces) != len(self.breakpoints) + 1:
            raise ValueError("Need exactly one more piece than breakpoints")
        if any(b >= c for b, c in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("Breakpoints must be strictly increasing")

    def __call__(self, x) -> np.ndarray:
        """
        Evaluate the wavefunction.

        Args:
            x: Scalar or array of positions

        Returns:
            Complex array with the shape of x
        """
        x = np.asarray(x, dtype=float)
        index = np.searchsorted(np.asarray(self.breakpoints), x, side='right')
        values = np.zeros(x.shape, dtype=complex)
        for i, piece in enumerate(self.pieces):
            mask = index == i
            if np.any(mask):
                values[mask] = piece.evaluate(x[mask])
        return values

    def norm_squared(self) -> float:
        """Integral of |psi|^2 over the real line."""
        total = 0.0
        first, last = self.pieces[0], self.pieces[-1]
        left, right = self.breakpoints[0], self.breakpoints[-1]

        if first.form != GROWING_EXP or first.wavenumber <= 0:
            return math.inf
        total += abs(first.coefficients[0]) ** 2 * math.exp(
            2 * first.wavenumber * (left - first.origin)) / (2 * first.wavenumber)

        if last.form != DECAYING_EXP or last.wavenumber <= 0:
            return math.inf
        total += abs(last.coefficients[0]) ** 2 * math.exp(
            -2 * last.wavenumber * (right - last.origin)) / (2 * last.wavenumber)

        for piece, a, b in zip(self.pieces[1:-1], self.breakpoints, self.breakpoints[1:]):
            if piece.form == CONSTANT:
                total += abs(piece.coefficients[0]) ** 2 * (b - a)
            else:
                value, _ = integrate.quad(
                    lambda t: float(np.abs(piece.evaluate(np.array([t]))[0]) ** 2),
                    a, b, epsabs=1e-14, limit=200
                )
                total += value

        return total

    def continuity_error(self) -> float:
        """Largest jump across a breakpoint, relative to the largest breakpoint value."""
        jumps = []
        scale = 0.0
        for i, b in enumerate(self.breakpoints):
            point = np.array([b])
            left = self.pieces[i].evaluate(point)[0]
            right = self.pieces[i + 1].evaluate(point)[0]
            jumps.append(abs(left - right))
            scale = max(scale, abs(left), abs(right))
        if scale == 0.0:
            return 0.0
        return max(jumps) / scale


class UltraShortBound(NamedTuple):
    """Bound energy of a single ultra-short well; is_bound is False for V0 = 0."""
    energy: float
    is_bound: bool


def bound_energy_ultrashort(p: UltraShortParams) -> UltraShortBound:
    """
    Bound-state energy of an ultra-short well of depth V0 and width 2*dx.

    Uses the positive root of the quadratic obtained from the derivative-jump
    condition, written without the cancellation of the direct form.

    Args:
        p: Ultra-short parameters

    Returns:
        UltraShortBound with energy in (-V0, 0), or (0.0, False) when V0 = 0
    """
    if p.v0 == 0:
        return UltraShortBound(0.0, False)

    hbar2 = p.hbar ** 2
    dx2 = p.half_width ** 2
    root = math.sqrt(8.0 * dx2 * p.mass * p.v0 * hbar2 + hbar2 ** 2)
    energy = -8.0 * dx2 * p.mass * p.v0 ** 2 * hbar2 / (root + hbar2) ** 2

    return UltraShortBound(energy, True)


def bound_condition_residual(p: UltraShortParams, energy: float) -> float:
    """Residual of sqrt(-2mE)/hbar = (2m/hbar^2) dx (E + V0), relative to its left side."""
    lhs = p.kappa(energy)
    rhs = 2.0 * p.mass / p.hbar ** 2 * p.half_width * (energy + p.v0)
    return abs(lhs - rhs) / abs(lhs)


def bound_wavefunction_ultrashort(p: UltraShortParams) -> PiecewiseWavefunction:
    """
    Normalized bound state of a single ultra-short well.

    Args:
        p: Ultra-short parameters with V0 > 0

    Returns:
        Even three-piece wavefunction, constant on (-dx, dx)
    """
    bound = bound_energy_ultrashort(p)
    if not bound.is_bound:
        raise NoBoundStateError("A zero-strength ultra-short potential has no bound state")

    kappa = p.kappa(bound.energy)
    dx = p.half_width
    psi_c = 1.0 / math.sqrt(1.0 / kappa + 2.0 * dx)

    pieces = (
        WavePiece(GROWING_EXP, (psi_c, 0.0), kappa, -dx),
        WavePiece(CONSTANT, (psi_c, 0.0)),
        WavePiece(DECAYING_EXP, (psi_c, 0.0), kappa, dx),
    )
    return PiecewiseWavefunction((-dx, dx), pieces, bound.energy)


def dirac_delta_bound(mass: float, hbar: float, k0: float) -> Tuple[float, PiecewiseWavefunction]:
    """
    Bound state of the attractive delta potential -k0 * delta(x).

    Args:
        mass: Particle mass
        hbar: Reduced Planck constant
        k0: Delta strength (> 0)

    Returns:
        Tuple of (energy, normalized wavefunction sqrt(kappa) e^{-kappa|x|})
    """
    if not k0 > 0:
        raise DomainError(f"k0 must be > 0, got {k0!r}")

    kappa = mass * k0 / hbar ** 2
    energy = -mass * k0 ** 2 / (2.0 * hbar ** 2)
    amplitude = math.sqrt(kappa)

    pieces = (
        WavePiece(GROWING_EXP, (amplitude, 0.0), kappa, 0.0),
        WavePiece(DECAYING_EXP, (amplitude, 0.0), kappa, 0.0),
    )
    return energy, PiecewiseWavefunction((0.0,), pieces, energy)


def _ultrashort_transmission(p: UltraShortParams, energy: float, signed_v0: float) -> Tuple[float, float]:
    if not energy > 0:
        raise DomainError(f"Scattering energy must be > 0, got {energy!r}")

    k1 = p.k_incident(energy)
    term = p.mass * (energy - signed_v0) * 2.0 * p.half_width / (p.hbar ** 2 * k1)
    transmission = 1.0 / (1.0 + term ** 2)
    return transmission, 1.0 - transmission


def transmission_barrier_ultrashort(p: UltraShortParams, energy: float) -> Tuple[float, float]:
    """
    Transmission and reflection of an ultra-short barrier of height V0.

    Args:
        p: Ultra-short parameters
        energy: Incident energy (> 0)

    Returns:
        Tuple (T, R) with R = 1 - T
    """
    return _ultrashort_transmission(p, energy, p.v0)


def transmission_well_ultrashort(p: UltraShortParams, energy: float) -> Tuple[float, float]:
    """
    Transmission and reflection of an ultra-short well of depth V0.

    Args:
        p: Ultra-short parameters
        energy: Incident energy (> 0)

    Returns:
        Tuple (T, R) with R = 1 - T
    """
    return _ultrashort_transmission(p, energy, -p.v0)


def ramsauer_peak(p: UltraShortParams) -> Tuple[float, float]:
    """Energy and height of the well transmission maximum."""
    hbar2 = p.hbar ** 2
    return p.v0, hbar2 / (hbar2 + 8.0 * p.half_width ** 2 * p.mass * p.v0)


def transmission_dirac_delta(mass: float, hbar: float, k0: float, energy: float) -> float:
    """
    Transmission through a delta potential of strength k0 (either sign).

    Args:
        mass: Particle mass
        hbar: Reduced Planck constant
        k0: Delta strength
        energy: Incident energy (> 0)

    Returns:
        Transmission probability
    """
    if not energy > 0:
        raise DomainError(f"Scattering energy must be > 0, got {energy!r}")
    return 1.0 / (1.0 + mass * k0 ** 2 / (2.0 * hbar ** 2 * energy))


def transmission_rectangular(mass: float, hbar: float, v0: float,
                             half_width: float, energy: float) -> float:
    """
    Transmission through a rectangular barrier (v0 > 0) or well (v0 < 0)
    of width 2*half_width.

    Args:
        mass: Particle mass
        hbar: Reduced Planck constant
        v0: Signed potential inside the rectangle
        half_width: Half of the rectangle width
        energy: Incident energy (> 0)

    Returns:
        Transmission probability
    """
    if not energy > 0:
        raise DomainError(f"Scattering energy must be > 0, got {energy!r}")
    if not half_width > 0:
        raise DomainError(f"half_width must be > 0, got {half_width!r}")
    if v0 == 0:
        return 1.0

    width = 2.0 * half_width
    detuning = energy - v0
    stiffness = 2.0 * mass / hbar ** 2

    # F = sin^2(k2 w) / (E - V0), continued to sinh^2(kappa w) / (V0 - E) below V0
    if abs(detuning) < RECTANGULAR_SERIES_BAND * abs(v0):
        z2 = width ** 2 * stiffness * detuning
        factor = width ** 2 * stiffness * (1.0 - z2 / 3.0 + 2.0 * z2 ** 2 / 45.0)
        log_ratio = math.log(v0 ** 2 * factor / (4.0 * energy))
    elif detuning > 0:
        k2 = math.sqrt(stiffness * detuning)
        factor = math.sin(k2 * width) ** 2 / detuning
        if factor == 0.0:
            return 1.0
        log_ratio = math.log(v0 ** 2 * factor / (4.0 * energy))
    else:
        y = math.sqrt(-stiffness * detuning) * width
        log_sinh = y + math.log1p(-math.exp(-2.0 * y)) - math.log(2.0)
        log_ratio = (2.0 * math.log(abs(v0)) + 2.0 * log_sinh
                     - math.log(-detuning) - math.log(4.0 * energy))

    if log_ratio > 700.0:
        logging.debug(f"Rectangular transmission underflows at E={energy}")
        return math.exp(-log_ratio)
    return 1.0 / (1.0 + math.exp(log_ratio))
