"""
Laplace-domain propagation through a single ultra-short potential.

With q the principal root of 2 m i s / hbar (Im q > 0 for Re s > 0) the free
Green's function is G0(x, s | x0) = (m / (i hbar^2 q)) e^{iq|x - x0|} and the
transformed wavefunction is psi~(x, s) = i hbar * integral G~1(x, s | x0) psi(x0, 0) dx0.
"""

import cmath
import math
import logging
from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

import mpmath
import numpy as np
from scipy import integrate

from ..errors import AccuracyError, DomainError, PoleProximityError

# |D(s)| below this is treated as a pole of the dressed Green's function
POLE_TOLERANCE = 1e-12

QUAD_TOLERANCE = 1e-10
QUAD_LIMIT = 500

# Packet amplitude allowed outside its support window
PACKET_TAIL = 1e-12


@dataclass(frozen=True)
class LaplaceQuery:
    """
    Scatterer and units for Laplace-domain evaluations.

    Args:
        strength: Signed potential v0 inside the ultra-short region
        half_width: Half-width dx (0 switches the scatterer off together with v0 = 0)
        mass: Particle mass
        hbar: Reduced Planck constant
    """
    strength: float
    half_width: float
    mass: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not self.half_width >= 0:
            raise DomainError(f"half_width must be >= 0, got {self.half_width!r}")
        if not self.mass > 0:
            raise DomainError(f"mass must be > 0, got {self.mass!r}")
        if not self.hbar > 0:
            raise DomainError(f"hbar must be > 0, got {self.hbar!r}")


@dataclass(frozen=True)
class InitialPacket:
    """
    Initial wavefunction psi(x0, 0) supported on [x_a, x_b].

    Args:
        sampler: x -> complex amplitude
        x_a: Left edge of the support window
        x_b: Right edge of the support window
    """
    sampler: Callable[[float], complex]
    x_a: float
    x_b: float

    def __post_init__(self):
        if not self.x_a < self.x_b:
            raise DomainError(f"Packet window needs x_a < x_b, got ({self.x_a}, {self.x_b})")

        for edge in (self.x_a, self.x_b):
            if abs(self.sampler(edge)) > PACKET_TAIL:
                raise DomainError(f"Packet amplitude at window edge {edge} exceeds {PACKET_TAIL}")

        norm, _ = integrate.quad(lambda x: abs(self.sampler(x)) ** 2, self.x_a, self.x_b,
                                 epsabs=1e-12, limit=QUAD_LIMIT)
        if abs(norm - 1.0) > 1e-8:
            raise DomainError(f"Packet is not normalized: integral |psi|^2 = {norm!r}")

    def __call__(self, x: float) -> complex:
        return self.sampler(x)


def gaussian_packet(center: float = 0.0, width: float = 1.0, momentum: float = 0.0,
                    hbar: float = 1.0) -> InitialPacket:
    """
    Normalized Gaussian (2 pi w^2)^(-1/4) exp(-(x - c)^2 / (4 w^2) + i p x / hbar).

    Args:
        center: Packet center c
        width: Position spread w
        momentum: Mean momentum p
        hbar: Reduced Planck constant

    Returns:
        InitialPacket with a window where the amplitude has dropped below 1e-13
    """
    if not width > 0:
        raise DomainError(f"Packet width must be > 0, got {width!r}")

    amplitude = (2.0 * math.pi * width ** 2) ** -0.25
    reach = 2.0 * width * math.sqrt(math.log(amplitude * 1e13))

    def sampler(x: float) -> complex:
        return amplitude * cmath.exp(-(x - center) ** 2 / (4.0 * width ** 2) + 1j * momentum * x / hbar)

    return InitialPacket(sampler, center - reach, center + reach)


def _check_s(s: complex) -> complex:
    s = complex(s)
    if not s.real > 0:
        raise DomainError(f"Laplace variable needs Re(s) > 0, got s={s!r}")
    return s


def laplace_wavenumber(s: complex, mass: float = 1.0, hbar: float = 1.0) -> complex:
    """Principal root q of 2 m i s / hbar; e^{iq|x|} decays for Re s > 0."""
    return cmath.sqrt(2.0 * mass * 1j * _check_s(s) / hbar)


def free_green(x: float, s: complex, x0: float, mass: float = 1.0, hbar: float = 1.0) -> complex:
    """
    Free-particle Green's function in the Laplace domain.

    Args:
        x: Observation point
        s: Laplace variable (Re s > 0)
        x0: Source point
        mass: Particle mass
        hbar: Reduced Planck constant

    Returns:
        G0(x, s | x0)
    """
    q = laplace_wavenumber(s, mass, hbar)
    return mass / (1j * hbar ** 2 * q) * cmath.exp(1j * q * abs(x - x0))


def _scatterer_terms(s: complex, query: LaplaceQuery) -> Tuple[complex, complex, complex]:
    """Return (q, coupling X, amplitude P) with G0(x|x0) = P e^{iq|x - x0|}."""
    q = laplace_wavenumber(s, query.mass, query.hbar)
    coupling = (1j * query.hbar * s - query.strength) * 2.0 * query.half_width
    root = -1.0 / q
    amplitude = -query.mass / (1j * query.hbar ** 2) * root
    return q, coupling, amplitude


def green_denominator(s: complex, query: LaplaceQuery) -> complex:
    """D(s) = 1 + (m / (i hbar^2)) X r e^{-iq dx} with r = -1/q."""
    q, coupling, amplitude = _scatterer_terms(s, query)
    return 1.0 - coupling * amplitude * cmath.exp(-1j * q * query.half_width)


def dressed_green(x: float, s: complex, x0: float, query: LaplaceQuery) -> complex:
    """
    Green's function of the free particle dressed by the ultra-short scatterer.

    Args:
        x: Observation point
        s: Laplace variable (Re s > 0)
        x0: Source point
        query: Scatterer parameters

    Returns:
        G~1(x, s | x0)
    """
    q, coupling, amplitude = _scatterer_terms(s, query)
    denominator = 1.0 - coupling * amplitude * cmath.exp(-1j * q * query.half_width)
    if abs(denominator) < POLE_TOLERANCE:
        raise PoleProximityError(complex(s), abs(denominator))

    free = amplitude * cmath.exp(1j * q * abs(x - x0))
    if coupling == 0:
        return free

    correction = (coupling * amplitude ** 2
                  * cmath.exp(1j * q * (abs(x) + abs(x0) - query.half_width)) / denominator)
    return free + correction


def psi_laplace(x: float, s: complex, packet: InitialPacket, query: LaplaceQuery) -> complex:
    """
    Laplace-transformed wavefunction at x.

    Args:
        x: Observation point
        s: Laplace variable (Re s > 0)
        packet: Initial wavefunction
        query: Scatterer parameters

    Returns:
        psi~(x, s)
    """
    s = _check_s(s)
    green_denominator_value = green_denominator(s, query)
    if abs(green_denominator_value) < POLE_TOLERANCE:
        raise PoleProximityError(s, abs(green_denominator_value))

    points = sorted({p for p in (x, 0.0) if packet.x_a < p < packet.x_b})

    def integrand(x0: float) -> complex:
        return 1j * query.hbar * dressed_green(x, s, x0, query) * packet(x0)

    parts = []
    for component in (lambda x0: integrand(x0).real, lambda x0: integrand(x0).imag):
        result = integrate.quad(component, packet.x_a, packet.x_b, points=points or None,
                                epsabs=0.5 * QUAD_TOLERANCE, epsrel=QUAD_TOLERANCE,
                                limit=QUAD_LIMIT, full_output=1)
        if len(result) > 3:
            raise AccuracyError(f"Quadrature for psi~({x}, {s}) did not converge", result[1])
        parts.append(result[0])

    return complex(parts[0], parts[1])


def initial_value_errors(x_points: Sequence[float], s_values: Sequence[float],
                         packet: InitialPacket, query: LaplaceQuery) -> List[List[float]]:
    """
    |s psi~(x, s) - psi(x, 0)| for every (s, x) pair.

    Args:
        x_points: Observation points
        s_values: Real Laplace variables
        packet: Initial wavefunction
        query: Scatterer parameters

    Returns:
        errors[i][j] for s_values[i] and x_points[j]
    """
    errors = []
    for s in s_values:
        row = [abs(s * psi_laplace(x, s, packet, query) - packet(x)) for x in x_points]
        errors.append(row)
        logging.debug(f"Initial-value errors at s={s}: {row}")
    return errors


def _vanishes(signal: Callable, t: float) -> bool:
    """True when a component transform is zero on the sample points around 1/t."""
    points = [(1.0 + 0.0j) / t, 2.0 / t + 1j / t, 0.5 / t - 3j / t, 5.0 / t + 10j / t]
    return all(signal(mpmath.mpc(p)) == 0 for p in points)


def _invert_component(signal: Callable, t: float, label: str) -> float:
    if _vanishes(signal, t):
        return 0.0
    try:
        value = mpmath.invertlaplace(signal, t, method='dehoog')
    except (ZeroDivisionError, ValueError) as e:
        raise AccuracyError(f"de Hoog inversion of the {label} part failed at t={t}: {e}",
                            math.inf) from e
    return float(mpmath.re(value))


def invert_laplace(transform: Callable[[complex], complex], t: float,
                   precisions: Tuple[int, int] = (15, 30)) -> Tuple[complex, float]:
    """
    Numerical inverse Laplace transform on a Bromwich line (de Hoog acceleration).

    Real and imaginary parts of the time signal are inverted separately from
    the transforms (F(s) +- conj F(conj s)) / 2; a part whose transform
    vanishes is returned as zero. The transform itself is evaluated in double
    precision, so the difference between the two de Hoog passes estimates the
    truncation of the accelerated series, not the rounding of F.

    Args:
        transform: F(s), analytic for Re s > 0
        t: Time (> 0)
        precisions: Working decimal digits of the two de Hoog passes

    Returns:
        Tuple (f(t), estimated absolute error)
    """
    if not t > 0:
        raise DomainError(f"Inversion time must be > 0, got {t!r}")

    def real_signal(p) -> mpmath.mpc:
        c = complex(p)
        return mpmath.mpc(0.5 * (transform(c) + transform(c.conjugate()).conjugate()))

    def imag_signal(p) -> mpmath.mpc:
        c = complex(p)
        return mpmath.mpc((transform(c) - transform(c.conjugate()).conjugate()) / 2j)

    values = []
    for digits in precisions:
        with mpmath.workdps(digits):
            real = _invert_component(real_signal, t, 'real')
            imag = _invert_component(imag_signal, t, 'imaginary')
        values.append(complex(real, imag))

    estimate = abs(values[-1] - values[0])
    logging.debug(f"Inverse Laplace at t={t}: {values[-1]} (estimate {estimate:.2e})")
    return values[-1], estimate
