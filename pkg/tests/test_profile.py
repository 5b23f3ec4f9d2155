"""
Test potential profiles, builtins, tabulated input and discretization.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.errors import ConfigurationError, DomainError, ProfileFormatError
from src.potential.builtins import builtin_profile, constant, double_barrier, gaussian, rectangular
from src.potential.discretize import discretize
from src.potential.models import PotentialProfile, SegmentedProfile
from src.potential.tabulated import load_tabulated, read_tabulated


TABULATED_FILE = """\
# x      V      m
-1.0    0.0    1.0
-0.5   -2.0    1.0

 0.0   -4.0    0.5   # bottom
 0.5   -2.0    1.0
 1.0    0.0    1.0
"""


def test_builtin_shapes():
    """Builtins evaluate to their documented values."""
    x = np.array([-1.0, -0.5, 0.0, 0.5, 1.0])

    assert rectangular(-3.0, 1.0)(x).tolist() == [0.0, -3.0, -3.0, -3.0, 0.0]
    assert gaussian(2.0, 1.0)(np.array([0.0]))[0] == 2.0
    assert gaussian(2.0, 1.0)(np.array([1.0]))[0] == pytest.approx(2.0 / np.e)

    barriers = double_barrier(1.0, 0.5, 1.0)(np.array([-0.75, 0.0, 0.75, 2.0]))
    assert barriers.tolist() == [1.0, 0.0, 1.0, 0.0]

    assert constant(1.5)(x).tolist() == [1.5] * 5


def test_builtin_profile_asymptotes():
    """Outside the domain the potential is the asymptote and the mass is held."""
    profile = builtin_profile('rectangular', {'v0': -5.0, 'width': 10.0}, -1.0, 1.0)

    assert profile.v_left == 0.0 and profile.v_right == 0.0
    assert profile.potential_at([-2.0, 0.0, 2.0]).tolist() == [0.0, -5.0, 0.0]
    assert profile.mass_at(5.0).tolist() == [1.0]
    assert profile.source == 'builtin:rectangular'


def test_builtin_profile_rejects_bad_parameters():
    """Unknown names and non-positive widths raise DomainError."""
    with pytest.raises(DomainError):
        builtin_profile('triangle', {}, -1.0, 1.0)
    with pytest.raises(DomainError):
        builtin_profile('gaussian', {'v0': 1.0, 'width': 0.0}, -1.0, 1.0)


def test_profile_validation():
    """Domains must be ordered and masses positive."""
    with pytest.raises(DomainError):
        PotentialProfile(constant(0.0), constant(1.0), 1.0, 1.0, 0.0, 0.0)
    with pytest.raises(DomainError):
        PotentialProfile(constant(0.0), constant(-1.0), 0.0, 1.0, 0.0, 0.0)


def test_read_tabulated(tmp_path):
    """Comments and blank lines are skipped; values interpolate linearly."""
    path = tmp_path / 'well.dat'
    path.write_text(TABULATED_FILE, encoding='utf-8')

    profile = read_tabulated(path)

    assert profile.x_min == -1.0 and profile.x_max == 1.0
    assert profile.potential_at(0.25).tolist() == [-3.0]
    assert profile.mass_at(0.0).tolist() == [0.5]
    assert profile.m_left == 1.0


def test_tabulated_errors_name_the_row(tmp_path):
    """Malformed rows are reported with their line number."""
    path = tmp_path / 'bad.dat'
    path.write_text("# header\n0.0 0.0 1.0\n0.5 oops 1.0\n", encoding='utf-8')

    with pytest.raises(ProfileFormatError) as info:
        read_tabulated(path)
    assert info.value.row == 3
    assert 'row 3' in str(info.value)

    with pytest.raises(ProfileFormatError) as info:
        load_tabulated([(0.0, 0.0, 1.0), (0.0, 1.0, 1.0)])
    assert info.value.row == 2

    with pytest.raises(ProfileFormatError):
        load_tabulated([(0.0, 0.0, 1.0), (1.0, 1.0, 0.0)])

    with pytest.raises(ProfileFormatError):
        load_tabulated([(0.0, 0.0, 1.0)])


def test_discretize_layout():
    """Junctions sit at cell centers; regions take midpoint values."""
    profile = builtin_profile('rectangular', {'v0': -20.0, 'width': 1.05}, -1.0, 1.0)
    seg = discretize(profile, 2, 0.025)

    assert seg.region_count == 5
    assert seg.junction_count == 2
    np.testing.assert_allclose(seg.junction_centers, [-0.5, 0.5])
    np.testing.assert_allclose(seg.breakpoints, [-0.525, -0.475, 0.475, 0.525])
    assert seg.potentials == (0.0, -20.0, -20.0, -20.0, 0.0)
    assert seg.masses == (1.0,) * 5
    assert seg.bound_window == (-20.0, 0.0)


def test_discretize_rejects_bad_layouts():
    """Junctions must fit inside their cells."""
    profile = builtin_profile('gaussian', {'v0': -1.0, 'width': 1.0}, -1.0, 1.0)

    with pytest.raises(ConfigurationError):
        discretize(profile, 0)
    with pytest.raises(ConfigurationError):
        discretize(profile, 4, 0.25)
    with pytest.raises(ConfigurationError):
        discretize(profile, 4, 0.0)


def test_segmented_profile_validation():
    """Region counts, junction widths and spacings are checked."""
    with pytest.raises(ConfigurationError):
        SegmentedProfile((0.0, 0.1, 1.0), (0.0, 1.0, 0.0, 1.0), (1.0,) * 4, 0.05)
    with pytest.raises(ConfigurationError):
        SegmentedProfile((0.0, 0.2), (0.0, 1.0, 0.0), (1.0,) * 3, 0.05)
    with pytest.raises(ConfigurationError):
        SegmentedProfile((0.0, 0.1, 0.05, 0.15), (0.0, 1.0, 0.0, 1.0, 0.0), (1.0,) * 5, 0.05)


def test_single_junction():
    """A single junction is three regions around its center."""
    seg = SegmentedProfile.single_junction(-1.0, 0.07, center=2.0)

    assert seg.region_count == 3
    assert seg.breakpoints == pytest.approx((1.93, 2.07))
    assert seg.region_bounds(1)[0] == -np.inf
    assert seg.region_bounds(3)[1] == np.inf
    assert seg.v_min == -1.0


def test_discretize_constant_profile():
    """A constant potential gives the same value in every region."""
    profile = PotentialProfile(constant(1.5), constant(1.0), -2.0, 2.0, 1.5, 1.5)
    seg = discretize(profile, 5, 0.02)

    assert seg.potentials == (1.5,) * 11


def test_discretize_even_profile_is_palindromic():
    """An even potential on a symmetric domain samples a palindromic V list."""
    profile = builtin_profile('gaussian', {'v0': -3.0, 'width': 1.2}, -3.0, 3.0)

    for junctions in (3, 6, 11):
        potentials = np.array(discretize(profile, junctions, 0.02).potentials)
        np.testing.assert_allclose(potentials, potentials[::-1], rtol=1e-12, atol=1e-15)


def test_discretize_reproduces_aligned_plateaus():
    """Plateaus that cover the region midpoints are sampled exactly."""
    rows = [(-2.0, 0.0, 1.0), (-1.6, 0.0, 1.0), (-1.4, 3.0, 1.0), (-0.6, 3.0, 1.0),
            (-0.4, -1.0, 1.0), (0.4, -1.0, 1.0), (0.6, 3.0, 1.0), (1.4, 3.0, 1.0),
            (1.6, 0.0, 1.0), (2.0, 0.0, 1.0)]
    seg = discretize(load_tabulated(rows), 2, 0.05)

    assert seg.potentials == (0.0, 3.0, -1.0, 3.0, 0.0)


def test_discretize_refinement_keeps_old_samples():
    """Doubling the junctions keeps the asymptotes and resamples old junction centers."""
    profile = builtin_profile('gaussian', {'v0': -2.0, 'width': 1.0}, -3.0, 3.0)
    coarse = discretize(profile, 4, 0.02)
    fine = discretize(profile, 8, 0.02)

    assert fine.potentials[0] == coarse.potentials[0]
    assert fine.potentials[-1] == coarse.potentials[-1]

    # Old junction i sits on the cell edge between new junctions 2i and 2i + 1
    for i in range(coarse.junction_count):
        assert fine.potentials[4 * i + 2] == pytest.approx(coarse.potentials[2 * i + 1], abs=1e-12)


@pytest.mark.parametrize("junctions", [3, 4, 6])
def test_discretize_barrier_aligned_to_rectangle(junctions):
    """A domain of J cells of (2.42 - 2 dx) / (J - 1) spans the whole 2.42 barrier."""
    half_width = 0.02
    spacing = (2.42 - 2.0 * half_width) / (junctions - 1)
    half_domain = 0.5 * junctions * spacing
    profile = builtin_profile('rectangular', {'v0': 2.0, 'width': 2.42}, -half_domain, half_domain)

    seg = discretize(profile, junctions, half_width)

    assert seg.potentials[0] == 0.0 and seg.potentials[-1] == 0.0
    assert all(v == 2.0 for v in seg.potentials[1:-1])
    assert seg.breakpoints[-1] - seg.breakpoints[0] == pytest.approx(2.42, abs=1e-12)
    np.testing.assert_allclose(np.diff(seg.junction_centers), spacing)
    if junctions == 4:
        assert spacing == pytest.approx(0.8, abs=0.01)
