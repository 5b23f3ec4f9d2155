"""
Test closed-form single ultra-short potential results.
"""

import sys
import math
from pathlib import Path

import numpy as np
import pytest
from scipy import integrate

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.analytic.closed_form import (
    UltraShortParams,
    bound_condition_residual,
    bound_energy_ultrashort,
    bound_wavefunction_ultrashort,
    dirac_delta_bound,
    ramsauer_peak,
    transmission_barrier_ultrashort,
    transmission_dirac_delta,
    transmission_rectangular,
    transmission_well_ultrashort,
)
from src.errors import DomainError, NoBoundStateError


UNIT_WELL = UltraShortParams(mass=1.0, hbar=1.0, v0=1.0, half_width=0.07)


def test_bound_energy_reference_value():
    """V0 = 1, dx = 0.07 binds at E = -0.0096125."""
    bound = bound_energy_ultrashort(UNIT_WELL)

    assert bound.is_bound
    assert bound.energy == pytest.approx(-0.0096125, abs=1e-7)
    assert -UNIT_WELL.v0 < bound.energy < 0


def test_bound_energy_satisfies_matching_condition():
    """The bound energy solves the derivative-jump condition."""
    for v0, dx in [(1.0, 0.07), (20.0, 0.025), (0.3, 0.5), (1e4, 1e-3)]:
        p = UltraShortParams(1.0, 1.0, v0, dx)
        bound = bound_energy_ultrashort(p)
        assert bound_condition_residual(p, bound.energy) < 1e-12, f"V0={v0}, dx={dx}"


def test_zero_strength_has_no_bound_state():
    """V0 = 0 reports no bound state; the wavefunction builder refuses it."""
    p = UltraShortParams(1.0, 1.0, 0.0, 0.07)

    bound = bound_energy_ultrashort(p)
    assert bound.energy == 0.0
    assert not bound.is_bound

    with pytest.raises(NoBoundStateError):
        bound_wavefunction_ultrashort(p)


def test_bound_wavefunction_normalized_and_continuous():
    """The three-piece bound state has unit norm and no jumps."""
    psi = bound_wavefunction_ultrashort(UNIT_WELL)

    assert psi.norm_squared() == pytest.approx(1.0, abs=1e-10)
    assert psi.continuity_error() < 1e-12

    x = np.linspace(-50.0, 50.0, 200001)
    density = np.abs(psi(x)) ** 2
    assert integrate.trapezoid(density, x) == pytest.approx(1.0, abs=1e-4)
    assert psi(np.array([0.0]))[0].real == pytest.approx(psi(np.array([0.07]))[0].real)


def test_dirac_delta_bound_energies():
    """E = -m k0^2 / (2 hbar^2)."""
    energy, psi = dirac_delta_bound(1.0, 1.0, 0.14)
    assert energy == pytest.approx(-0.0098, rel=1e-12)
    assert psi.norm_squared() == pytest.approx(1.0, abs=1e-12)

    energy, _ = dirac_delta_bound(1.0, 1.0, 1.4)
    assert energy == pytest.approx(-0.98, rel=1e-12)

    with pytest.raises(DomainError):
        dirac_delta_bound(1.0, 1.0, 0.0)


def test_ultrashort_bound_tends_to_delta_bound():
    """Shrinking dx at fixed area 2 V0 dx approaches the delta bound state."""
    k0 = 0.14
    errors = []
    for dx in (0.07, 0.007, 0.0007):
        p = UltraShortParams(1.0, 1.0, k0 / (2.0 * dx), dx)
        errors.append(abs(bound_energy_ultrashort(p).energy - dirac_delta_bound(1.0, 1.0, k0)[0]))

    assert errors[0] > errors[1] > errors[2]


def test_barrier_transmission_reference_value():
    """V0 = 1, dx = 0.7, E = 2 gives T = 1/1.49."""
    p = UltraShortParams(1.0, 1.0, 1.0, 0.7)
    t, r = transmission_barrier_ultrashort(p, 2.0)

    assert t == pytest.approx(1.0 / 1.49, rel=1e-12)
    assert t + r == pytest.approx(1.0, abs=1e-15)


def test_well_transmission_peak():
    """The well transmission peaks at E = V0 with height 1 / (1 + 8 dx^2 m V0 / hbar^2)."""
    p = UltraShortParams(1.0, 1.0, 1.0, 0.7)
    energy, height = ramsauer_peak(p)

    assert energy == 1.0
    assert height == pytest.approx(1.0 / (1.0 + 8.0 * 0.49), rel=1e-12)
    assert transmission_well_ultrashort(p, energy)[0] == pytest.approx(height, rel=1e-12)


def test_scattering_rejects_non_positive_energy():
    """Scattering needs E > 0."""
    with pytest.raises(DomainError):
        transmission_barrier_ultrashort(UNIT_WELL, 0.0)
    with pytest.raises(DomainError):
        transmission_dirac_delta(1.0, 1.0, 0.1, -1.0)
    with pytest.raises(DomainError):
        transmission_rectangular(1.0, 1.0, 1.0, 0.1, 0.0)


def test_invalid_parameters():
    """Half-width, mass and hbar must be positive; V0 non-negative."""
    with pytest.raises(DomainError):
        UltraShortParams(1.0, 1.0, 1.0, 0.0)
    with pytest.raises(DomainError):
        UltraShortParams(0.0, 1.0, 1.0, 0.1)
    with pytest.raises(DomainError):
        UltraShortParams(1.0, -1.0, 1.0, 0.1)
    with pytest.raises(DomainError):
        UltraShortParams(1.0, 1.0, -1.0, 0.1)


def test_ultrashort_transmission_tends_to_delta():
    """At fixed k0 = 2 V0 dx the barrier transmission approaches the delta result."""
    k0 = 0.5
    p = UltraShortParams(1.0, 1.0, k0 / 2e-5, 1e-5)

    for energy in (0.1, 1.0, 10.0):
        expected = transmission_dirac_delta(1.0, 1.0, k0, energy)
        assert transmission_barrier_ultrashort(p, energy)[0] == pytest.approx(expected, abs=1e-3)


def test_rectangle_versus_ultrashort_converges_quadratically():
    """|T_rect - T_ultrashort| shrinks like dx^2 for a barrier of height 1."""
    dxs = (0.1, 0.05, 0.025)

    for energy in (0.5, 1.0, 5.0):
        errors = []
        for dx in dxs:
            p = UltraShortParams(1.0, 1.0, 1.0, dx)
            rect = transmission_rectangular(1.0, 1.0, 1.0, dx, energy)
            errors.append(abs(rect - transmission_barrier_ultrashort(p, energy)[0]))

        slopes = [math.log(errors[i] / errors[i + 1]) / math.log(dxs[i] / dxs[i + 1])
                  for i in range(len(dxs) - 1)]
        for slope in slopes:
            assert 1.8 <= slope <= 2.2, f"E={energy}: slopes {slopes}"


def test_rectangular_transmission_special_cases():
    """Zero height is transparent; a well resonance transmits fully."""
    assert transmission_rectangular(1.0, 1.0, 0.0, 0.5, 1.0) == 1.0

    # k2 * width = pi inside a well of depth 1 and width 2
    energy = math.pi ** 2 / 8.0 - 1.0
    assert transmission_rectangular(1.0, 1.0, -1.0, 1.0, energy) == pytest.approx(1.0, abs=1e-12)


def test_rectangular_transmission_continuous_at_barrier_top():
    """The series branch joins the sin and sinh branches at E = V0."""
    v0 = 2.0
    values = [transmission_rectangular(1.0, 1.0, v0, 0.6, e)
              for e in (v0 * (1 - 1e-6), v0 * (1 - 1e-10), v0, v0 * (1 + 1e-10), v0 * (1 + 1e-6))]

    assert max(values) - min(values) < 1e-5


def test_rectangular_transmission_thick_barrier():
    """Very thick barriers underflow smoothly instead of raising."""
    t = transmission_rectangular(1.0, 1.0, 10.0, 200.0, 1.0)

    assert 0.0 <= t < 1e-300


def test_bound_energy_inside_well_for_random_parameters():
    """E lies in (-V0, 0) over a seeded sweep of masses, depths and widths."""
    rng = np.random.default_rng(7)

    for _ in range(2000):
        mass, hbar = 10.0 ** rng.uniform(-1.0, 1.0, 2)
        v0 = 10.0 ** rng.uniform(-2.0, 3.0)
        dx = 10.0 ** rng.uniform(-3.0, 0.0)
        energy = bound_energy_ultrashort(UltraShortParams(mass, hbar, v0, dx)).energy

        assert -v0 < energy < 0, f"m={mass}, hbar={hbar}, V0={v0}, dx={dx}"


def test_bound_wavefunction_is_even():
    """psi(x) = psi(-x) for the single-well bound state."""
    psi = bound_wavefunction_ultrashort(UNIT_WELL)
    x = np.linspace(0.0, 30.0, 3001)

    np.testing.assert_allclose(psi(x).real, psi(-x).real, rtol=1e-12, atol=1e-15)


@pytest.mark.parametrize("dx", [0.07, 0.7])
def test_barrier_transparent_at_its_height(dx):
    """T = 1 at E = V0."""
    p = UltraShortParams(1.0, 1.0, 1.0, dx)
    t, r = transmission_barrier_ultrashort(p, p.v0)

    assert t == pytest.approx(1.0, abs=1e-12)
    assert r == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("dx", [0.07, 0.7])
def test_well_transmission_maximum_on_grid(dx):
    """On a 10^4-point grid the well transmission peaks at E = V0 with the predicted height."""
    p = UltraShortParams(1.0, 1.0, 1.0, dx)
    energies = np.linspace(0.0005, 5.0, 10000)
    values = np.array([transmission_well_ultrashort(p, e)[0] for e in energies])

    assert energies[np.argmax(values)] == pytest.approx(p.v0, abs=energies[1] - energies[0])
    assert transmission_well_ultrashort(p, p.v0)[0] == pytest.approx(
        1.0 / (1.0 + 8.0 * dx ** 2), rel=1e-12)
