"""
Decomposition of a continuous profile into ultra-short junctions.
"""

import logging

import numpy as np

from .models import PotentialProfile, SegmentedProfile
from ..errors import ConfigurationError

DEFAULT_HALF_WIDTH = 0.02


def discretize(profile: PotentialProfile, junction_count: int,
               half_width: float = DEFAULT_HALF_WIDTH) -> SegmentedProfile:
    """
    Place junctions uniformly over the profile domain.

    The domain is cut into junction_count equal cells of width h; junction i
    sits on [c_i - dx, c_i + dx] with c_i = x_min + (i + 1/2) h. Every region
    takes V and m at its midpoint, except the two asymptotic regions which
    take the profile asymptotes.

    Args:
        profile: Source profile
        junction_count: Number of ultra-short junctions (>= 1)
        half_width: Junction half-width dx

    Returns:
        SegmentedProfile with 2 * junction_count + 1 regions
    """
    if junction_count < 1:
        raise ConfigurationError(f"junction_count must be >= 1, got {junction_count}")
    if not half_width > 0:
        raise ConfigurationError(f"delta_x must be > 0, got {half_width!r}")

    spacing = profile.width / junction_count
    if not 2.0 * half_width < spacing:
        raise ConfigurationError(
            f"delta_x = {half_width!r} is too large for junction spacing {spacing!r} "
            f"(need 2*delta_x < spacing)"
        )

    centers = profile.x_min + (np.arange(junction_count) + 0.5) * spacing
    breakpoints = np.empty(2 * junction_count)
    breakpoints[0::2] = centers - half_width
    breakpoints[1::2] = centers + half_width

    # Region midpoints: junction centers and the cell edges between them
    midpoints = np.empty(2 * junction_count - 1)
    midpoints[0::2] = centers
    midpoints[1::2] = profile.x_min + np.arange(1, junction_count) * spacing

    interior_v = profile.potential_at(midpoints)
    interior_m = profile.mass_at(midpoints)

    potentials = (profile.v_left, *interior_v.tolist(), profile.v_right)
    masses = (profile.m_left, *interior_m.tolist(), profile.m_right)

    logging.debug(
        f"Discretized {profile.source} into {junction_count} junctions "
        f"(spacing {spacing}, delta_x {half_width})"
    )

    return SegmentedProfile(
        breakpoints=tuple(breakpoints.tolist()),
        potentials=tuple(float(v) for v in potentials),
        masses=tuple(float(m) for m in masses),
        half_width=half_width,
        hbar=profile.hbar,
    )
