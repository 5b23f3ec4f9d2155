"""
Test scaled transfer matrices, the junction chain and transmission.
"""

import sys
import math
from pathlib import Path

import numpy as np
import pytest

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.analytic.closed_form import (
    UltraShortParams,
    transmission_barrier_ultrashort,
    transmission_rectangular,
    transmission_well_ultrashort,
)
from src.errors import DomainError
from src.potential.builtins import builtin_profile
from src.potential.discretize import discretize
from src.potential.models import SegmentedProfile
from src.transfer.bound import bound_determinant
from src.transfer.chain import junction_pair_matrix, total_transfer
from src.transfer.matrices import (
    EVANESCENT, LINEAR, OSCILLATORY, TransferMatrix2, classify_region
)
from src.transfer.spectrum import transmission_point, transmission_spectrum

FLUX_PROFILES = 10000
FLUX_ENERGIES = 10


def random_profile(rng: np.random.Generator) -> SegmentedProfile:
    """Random junction chain with varying potentials and masses."""
    junctions = int(rng.integers(1, 7))
    half_width = float(rng.uniform(0.01, 0.1))
    spacings = rng.uniform(0.3, 1.5, junctions - 1)
    centers = np.concatenate([[0.0], np.cumsum(spacings)])

    breakpoints = np.empty(2 * junctions)
    breakpoints[0::2] = centers - half_width
    breakpoints[1::2] = centers + half_width

    n = 2 * junctions + 1
    potentials = rng.uniform(-5.0, 5.0, n)
    potentials[0], potentials[-1] = rng.uniform(-1.0, 1.0, 2)

    return SegmentedProfile(
        breakpoints=tuple(breakpoints.tolist()),
        potentials=tuple(potentials.tolist()),
        masses=tuple(rng.uniform(0.5, 2.0, n).tolist()),
        half_width=half_width,
    )


def test_rescaling_keeps_exact_logs():
    """Huge and tiny mantissas are renormalized without losing magnitude."""
    big = TransferMatrix2.from_mantissa(np.eye(2) * 1e200)

    assert np.abs(big.mantissa).max() <= 1.0
    assert big.log_abs(1, 1) == pytest.approx(200 * math.log(10.0), rel=1e-12)
    assert big.log_abs(1, 2) == -math.inf

    tiny = TransferMatrix2.from_mantissa(np.eye(2) * 1e-200)
    product = big @ tiny
    assert product.log_abs(2, 2) == pytest.approx(0.0, abs=1e-9)
    assert product.factor_count == 2
    assert product.t22 == pytest.approx(1.0, rel=1e-9)


def test_case_selection():
    """Regions are oscillatory above V, evanescent below and linear on V."""
    seg = SegmentedProfile.single_junction(1.0, 0.05)

    assert classify_region(seg, 1, 2.0).case == OSCILLATORY
    assert classify_region(seg, 1, 2.0).wavenumber == pytest.approx(2.0)
    assert classify_region(seg, 1, -0.5).case == EVANESCENT
    assert classify_region(seg, 1, 0.0).case == LINEAR
    assert classify_region(seg, 1, 1e-12).case == LINEAR


def test_junction_pair_indices():
    """Only odd wave-region indices left of a junction are accepted."""
    seg = SegmentedProfile.single_junction(1.0, 0.05)

    with pytest.raises(DomainError):
        junction_pair_matrix(seg, 2, 1.0)
    with pytest.raises(DomainError):
        junction_pair_matrix(seg, 3, 1.0)


def test_total_transfer_factor_count():
    """N regions multiply N - 1 matrix factors."""
    profile = builtin_profile('gaussian', {'v0': -2.0, 'width': 1.0}, -2.0, 2.0)
    for junctions, regions in [(1, 3), (2, 5), (3, 7), (4, 9), (50, 101)]:
        seg = discretize(profile, junctions, 0.01)
        assert seg.region_count == regions
        assert total_transfer(seg, 1.0).factor_count == regions - 1


def test_single_junction_matches_closed_form():
    """One junction reproduces the closed-form barrier and well transmissions."""
    p = UltraShortParams(1.0, 1.0, 1.0, 0.07)
    barrier = SegmentedProfile.single_junction(1.0, 0.07)
    well = SegmentedProfile.single_junction(-1.0, 0.07)

    for energy in (0.05, 0.5, 1.0, 2.0, 7.5):
        assert transmission_point(barrier, energy).transmission == pytest.approx(
            transmission_barrier_ultrashort(p, energy)[0], rel=1e-10)
        assert transmission_point(well, energy).transmission == pytest.approx(
            transmission_well_ultrashort(p, energy)[0], rel=1e-10)


def test_flux_conservation_on_random_chains():
    """|r|^2 + T = 1 and 0 <= T <= 1 for 10^5 random (chain, energy) pairs."""
    rng = np.random.default_rng(20240611)

    for _ in range(FLUX_PROFILES):
        seg = random_profile(rng)
        top = max(seg.potentials[0], seg.potentials[-1])
        for energy in top + rng.uniform(0.1, 10.0, FLUX_ENERGIES):
            energy = float(energy)
            point = transmission_point(seg, energy)
            product = total_transfer(seg, energy)
            reflected = abs(product.mantissa[1, 0] / product.mantissa[0, 0]) ** 2

            assert 0.0 <= point.transmission <= 1.0 + 1e-9
            assert reflected + point.transmission == pytest.approx(1.0, abs=1e-8)


def test_below_asymptote_is_flagged():
    """Energies under an asymptote give NaN and a flag instead of an error."""
    seg = SegmentedProfile((0.0, 0.1), (0.0, -1.0, 0.5), (1.0, 1.0, 1.0), 0.05)

    point = transmission_point(seg, 0.25)
    assert point.below_asymptote
    assert math.isnan(point.transmission) and math.isnan(point.reflection)

    points = transmission_spectrum(seg, [0.25, 1.0, 2.0])
    assert [p.below_asymptote for p in points] == [True, False, False]


def test_spectrum_is_ordered_with_workers():
    """Threaded evaluation returns the same points in grid order."""
    profile = builtin_profile('double-barrier', {'v0': 3.0, 'width': 0.4, 'separation': 1.0}, -2.0, 2.0)
    seg = discretize(profile, 10, 0.02)
    energies = np.linspace(0.1, 6.0, 60)

    serial = transmission_spectrum(seg, energies)
    threaded = transmission_spectrum(seg, energies, workers=4)

    assert [p.energy for p in threaded] == energies.tolist()
    assert [p.transmission for p in threaded] == [p.transmission for p in serial]


def aligned_barrier(junctions: int, half_width: float = 0.02) -> SegmentedProfile:
    """Barrier of height 2 and width 2.42 whose outer junction edges sit on the barrier edges."""
    spacing = (2.42 - 2.0 * half_width) / (junctions - 1)
    half_domain = 0.5 * junctions * spacing
    profile = builtin_profile('rectangular', {'v0': 2.0, 'width': 2.42}, -half_domain, half_domain)
    return discretize(profile, junctions, half_width)


def test_more_junctions_approach_rectangular_barrier():
    """Six junctions track the exact barrier more closely than three in the sup norm."""
    energies = np.linspace(2.2, 10.0, 2000)
    exact = np.array([transmission_rectangular(1.0, 1.0, 2.0, 1.21, e) for e in energies])

    error = {}
    for junctions in (3, 6):
        points = transmission_spectrum(aligned_barrier(junctions), energies)
        error[junctions] = np.abs(np.array([p.transmission for p in points]) - exact).max()

    assert error[6] < error[3]
    assert error[6] < 0.1


def test_deep_well_stays_finite():
    """A wide, deep well keeps its mantissas bounded while the scale grows."""
    profile = builtin_profile('rectangular', {'v0': -1000.0, 'width': 100.0}, -75.0, 75.0)
    seg = discretize(profile, 15, 0.02)

    product = total_transfer(seg, -500.0)
    assert product.peak_magnitude <= 1e150
    assert product.log_scale > 700
    assert np.all(np.isfinite(product.mantissa))
    assert math.isfinite(bound_determinant(seg, -500.0))
