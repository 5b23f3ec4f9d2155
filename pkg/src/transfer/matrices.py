"""
Scaled 2x2 transfer matrices and the per-region wave bases.

A region j carries psi(x) = A_j f+(u) + B_j f-(u) in the local coordinate
u = x - origin_j, where origin_j is the left edge of the region (a_1 for
the first region). The basis pair is (e^{iku}, e^{-iku}) when oscillatory,
(e^{ku}, e^{-ku}) when evanescent and (1, u) on the linear band E ~ V.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..errors import CaseSelectionError
from ..potential.models import SegmentedProfile

OSCILLATORY = 'oscillatory'
EVANESCENT = 'evanescent'
LINEAR = 'linear'

# Relative width of the band around E = V_j where the linear basis is used
CASE_TOLERANCE = 1e-9

# Products are renormalized by a power of two once an entry leaves [1/T, T]
RESCALE_THRESHOLD = 1e100

LN2 = math.log(2.0)


@dataclass(frozen=True)
class TransferMatrix2:
    """
    2x2 complex matrix stored as mantissa * exp(log_scale).

    factor_count counts the elementary matrix factors multiplied in;
    peak_magnitude is the largest entry magnitude any stored mantissa reached.
    """
    mantissa: np.ndarray
    log_scale: float = 0.0
    factor_count: int = 0
    peak_magnitude: float = 0.0

    @classmethod
    def from_mantissa(cls, mantissa: np.ndarray, log_scale: float = 0.0,
                      factor_count: int = 1, peak_magnitude: float = 0.0) -> 'TransferMatrix2':
        mantissa = np.asarray(mantissa, dtype=complex)
        largest = float(np.abs(mantissa).max())

        if largest > RESCALE_THRESHOLD or 0.0 < largest < 1.0 / RESCALE_THRESHOLD:
            _, exponent = math.frexp(largest)
            mantissa = mantissa * math.ldexp(1.0, -exponent)
            log_scale += exponent * LN2
            largest = float(np.abs(mantissa).max())

        return cls(mantissa, log_scale, factor_count, max(peak_magnitude, largest))

    def __matmul__(self, other: 'TransferMatrix2') -> 'TransferMatrix2':
        return TransferMatrix2.from_mantissa(
            self.mantissa @ other.mantissa,
            self.log_scale + other.log_scale,
            self.factor_count + other.factor_count,
            max(self.peak_magnitude, other.peak_magnitude),
        )

    def entry(self, i: int, j: int) -> complex:
        """Unscaled entry t_ij (1-based); may overflow to inf for long chains."""
        return complex(self.mantissa[i - 1, j - 1] * math.exp(self.log_scale))

    def log_abs(self, i: int, j: int) -> float:
        """Natural log of |t_ij| (1-based), exact even when t_ij overflows."""
        magnitude = abs(self.mantissa[i - 1, j - 1])
        if magnitude == 0.0:
            return -math.inf
        return math.log(magnitude) + self.log_scale

    @property
    def t11(self) -> complex:
        return self.entry(1, 1)

    @property
    def t12(self) -> complex:
        return self.entry(1, 2)

    @property
    def t21(self) -> complex:
        return self.entry(2, 1)

    @property
    def t22(self) -> complex:
        return self.entry(2, 2)


@dataclass(frozen=True)
class RegionWave:
    """
    Wave description of one region at a fixed energy.

    Args:
        index: 1-based region index
        case: OSCILLATORY, EVANESCENT or LINEAR
        wavenumber: k (oscillatory), kappa (evanescent) or 0 (linear)
        origin: Position where the local coordinate u is zero
        amplitudes: Optional (A, B) coefficient pair
    """
    index: int
    case: str
    wavenumber: float
    origin: float
    amplitudes: Optional[Tuple[complex, complex]] = None

    def values(self, x: np.ndarray) -> np.ndarray:
        """Evaluate A f+ + B f- at positions x (requires amplitudes)."""
        a, b = self.amplitudes
        u = np.asarray(x, dtype=float) - self.origin
        k = self.wavenumber
        if self.case == OSCILLATORY:
            return a * np.exp(1j * k * u) + b * np.exp(-1j * k * u)
        if self.case == EVANESCENT:
            return a * np.exp(k * u) + b * np.exp(-k * u)
        return a + b * u + 0j


def region_origin(seg: SegmentedProfile, j: int) -> float:
    """Reference point of region j: its left edge, or a_1 for region 1."""
    return seg.breakpoints[0] if j == 1 else seg.breakpoints[j - 2]


def classify_region(seg: SegmentedProfile, j: int, energy: float) -> RegionWave:
    """
    Select the wave case of region j at the given energy.

    Args:
        seg: Segmented profile
        j: 1-based region index
        energy: Energy E

    Returns:
        RegionWave without amplitudes
    """
    v = seg.potentials[j - 1]
    m = seg.masses[j - 1]
    hbar = seg.hbar

    band = CASE_TOLERANCE * max(abs(energy), abs(v), hbar ** 2 / (2.0 * m * seg.length_scale ** 2))
    detuning = energy - v
    origin = region_origin(seg, j)

    if abs(detuning) <= band:
        return RegionWave(j, LINEAR, 0.0, origin)
    if detuning > 0:
        return RegionWave(j, OSCILLATORY, math.sqrt(2.0 * m * detuning) / hbar, origin)
    return RegionWave(j, EVANESCENT, math.sqrt(-2.0 * m * detuning) / hbar, origin)


def basis_at_origin(wave: RegionWave) -> np.ndarray:
    """[[f+, f-], [f+', f-']] at u = 0."""
    k = wave.wavenumber
    if wave.case == OSCILLATORY:
        return np.array([[1.0, 1.0], [1j * k, -1j * k]], dtype=complex)
    if wave.case == EVANESCENT:
        return np.array([[1.0, 1.0], [k, -k]], dtype=complex)
    return np.eye(2, dtype=complex)


def inverse_basis(wave: RegionWave, u: float) -> Tuple[np.ndarray, float]:
    """
    Inverse of the basis matrix at local coordinate u.

    Returns:
        Tuple (mantissa, log_scale); the evanescent growth e^{ku} is carried
        in log_scale
    """
    k = wave.wavenumber
    if wave.case != LINEAR and k == 0.0:
        raise CaseSelectionError(
            f"Region {wave.index} has a singular {wave.case} basis (zero wavenumber)"
        )

    if wave.case == OSCILLATORY:
        phase = np.exp(1j * k * u)
        inverse = np.array([
            [0.5 / phase, 0.5 / (1j * k * phase)],
            [0.5 * phase, -0.5 * phase / (1j * k)],
        ], dtype=complex)
        return inverse, 0.0

    if wave.case == EVANESCENT:
        decay = math.exp(-2.0 * k * u)
        inverse = np.array([
            [0.5 * decay, 0.5 * decay / k],
            [0.5, -0.5 / k],
        ], dtype=complex)
        return inverse, k * u

    return np.array([[1.0, -u], [0.0, 1.0]], dtype=complex), 0.0


def junction_kick(seg: SegmentedProfile, junction: int, energy: float) -> np.ndarray:
    """
    Matrix J with [psi, psi']_left = J [psi, psi']_right across a junction.

    Args:
        seg: Segmented profile
        junction: 1-based (even) region index of the junction
        energy: Energy E
    """
    left, right = seg.breakpoints[junction - 2], seg.breakpoints[junction - 1]
    mass = seg.masses[junction - 1]
    jump = 2.0 * mass / seg.hbar ** 2 * (energy - seg.potentials[junction - 1]) * (right - left)
    return np.array([[1.0, 0.0], [jump, 1.0]], dtype=complex)
