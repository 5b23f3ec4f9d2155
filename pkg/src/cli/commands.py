"""
Subcommand implementations.
Each command turns a RunConfig into a Report; errors propagate to main().
"""

import logging
from dataclasses import replace
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from ..analytic.closed_form import (
    UltraShortParams,
    bound_energy_ultrashort,
    bound_wavefunction_ultrashort,
    dirac_delta_bound,
    ramsauer_peak,
    transmission_barrier_ultrashort,
    transmission_dirac_delta,
    transmission_rectangular,
    transmission_well_ultrashort,
)
from ..analytic.laplace import LaplaceQuery, gaussian_packet, initial_value_errors, psi_laplace
from ..errors import ConfigError, DomainError
from ..potential.builtins import builtin_profile, constant
from ..potential.discretize import discretize
from ..potential.models import PotentialProfile, SegmentedProfile
from ..potential.tabulated import read_tabulated
from ..transfer.bound import eigenfunction, eigenvalues
from ..transfer.spectrum import transmission_spectrum
from ..validation.finite_difference import direct_ode_eigenvalues
from ..validation.rectangular import RectangularWellSpec, rect_well_eigenfunction, rect_well_eigenvalues
from .config import RunConfig
from .report import Report

# Laplace variables used by the initial-value diagnostic
IVT_S_VALUES = (1e2, 1e3, 1e4)

# Eigenfunction plots extend this fraction of the domain width beyond each edge
PLOT_MARGIN = 0.25


def build_profile(config: RunConfig) -> PotentialProfile:
    """Continuous profile described by the run configuration."""
    mass_override = None
    if config.mass_file:
        mass_override = read_tabulated(config.mass_file, config.hbar).mass

    if config.potential == 'tabulated':
        profile = read_tabulated(config.potential_file, config.hbar)
        if mass_override is not None:
            profile = replace(profile, mass=mass_override)
        return profile

    params = {
        'v0': config.v0,
        'width': config.width,
        'center': config.center,
        'separation': config.separation,
    }
    try:
        return builtin_profile(config.potential, params, config.x_min, config.x_max,
                               mass=mass_override or constant(config.mass), hbar=config.hbar)
    except DomainError as e:
        raise ConfigError('potential', str(e))


def build_segments(config: RunConfig, profile: PotentialProfile) -> SegmentedProfile:
    seg = discretize(profile, config.junctions, config.delta_x)
    logging.info(f"Discretized {profile.source} into {seg.region_count} regions "
                 f"({seg.junction_count} junctions, delta_x={seg.half_width})")
    return seg


def _base_metadata(config: RunConfig) -> Dict[str, object]:
    return {
        'potential': config.potential,
        'junctions': config.junctions,
        'delta_x': config.delta_x,
        'mass': config.mass,
        'hbar': config.hbar,
    }


def _square_well(config: RunConfig) -> Optional[RectangularWellSpec]:
    """Analytic counterpart of a rectangular builtin well, or None."""
    if config.potential != 'rectangular' or not config.v0 < 0:
        return None
    return RectangularWellSpec(depth=-config.v0, width=config.width,
                               mass=config.mass, hbar=config.hbar)


def _padded(values: List[float], length: int) -> List[float]:
    return (list(values) + [np.nan] * length)[:length]


def cmd_sweep(config: RunConfig) -> Report:
    """Transmission and reflection over the configured energy grid."""
    seg = build_segments(config, build_profile(config))
    energies = np.linspace(config.e_min, config.e_max, config.e_points)
    points = transmission_spectrum(seg, energies, workers=config.workers)

    table = pd.DataFrame({
        'E [energy]': [p.energy for p in points],
        'T [1]': [p.transmission for p in points],
        'R [1]': [p.reflection for p in points],
        'below_asymptote': [p.below_asymptote for p in points],
    })

    metadata = _base_metadata(config)
    metadata['regions'] = seg.region_count
    return Report('sweep', table, metadata)


def cmd_bound(config: RunConfig) -> Report:
    """Bound eigenvalues with node counts and optional reference columns."""
    profile = build_profile(config)
    seg = build_segments(config, profile)
    energies = eigenvalues(seg, config.scan_points, workers=config.workers)
    count = len(energies)

    nodes = [eigenfunction(seg, e, []).node_count for e in energies]

    columns = {
        'level': list(range(count)),
        'E [energy]': energies,
        'E_bottom [energy]': [e - seg.v_min for e in energies],
        'nodes': nodes,
    }

    well = _square_well(config)
    if well is not None:
        columns['E_rect_bottom [energy]'] = _padded(rect_well_eigenvalues(well), count)

    if config.oracle and count:
        reference = direct_ode_eigenvalues(profile, config.oracle_grid_points, levels=count)
        columns['E_ode [energy]'] = _padded(reference, count)
    elif config.oracle:
        columns['E_ode [energy]'] = []

    metadata = _base_metadata(config)
    metadata['regions'] = seg.region_count
    metadata['states'] = count
    logging.info(f"Found {count} bound states")
    return Report('bound', pd.DataFrame(columns), metadata)


def cmd_eigenfunction(config: RunConfig) -> Report:
    """Sampled eigenfunction of the selected level with analytic overlays."""
    profile = build_profile(config)
    seg = build_segments(config, profile)
    energies = eigenvalues(seg, config.scan_points, workers=config.workers)

    if not energies:
        raise ConfigError('level', "the discretized potential has no bound states")
    if config.level >= len(energies):
        raise ConfigError('level', f"out of range; available levels are 0..{len(energies) - 1}")

    margin = PLOT_MARGIN * profile.width
    x = np.linspace(profile.x_min - margin, profile.x_max + margin, config.x_points)
    state = eigenfunction(seg, energies[config.level], x)

    columns = {'x [length]': x, 'psi [length^-1/2]': state.psi}

    well = _square_well(config)
    if well is not None and config.level < len(rect_well_eigenvalues(well)):
        columns['psi_rect [length^-1/2]'] = rect_well_eigenfunction(well, config.level, x, config.center)

    if config.junctions == 1 and config.level == 0 and seg.potentials[1] < seg.potentials[0]:
        params = UltraShortParams(seg.masses[1], seg.hbar, seg.potentials[0] - seg.potentials[1],
                                  seg.half_width)
        center = float(seg.junction_centers[0])
        columns['psi_ultrashort [length^-1/2]'] = bound_wavefunction_ultrashort(params)(x - center).real

    metadata = _base_metadata(config)
    metadata.update({
        'level': config.level,
        'energy': state.energy,
        'energy_from_bottom': state.energy_from_bottom,
        'nodes': state.node_count,
        'continuity_error': state.continuity_error,
    })
    return Report('eigenfunction', pd.DataFrame(columns), metadata)


def cmd_closed_form(config: RunConfig) -> Report:
    """Closed-form single ultra-short potential next to its rectangle and delta limits."""
    if not config.e_min > 0:
        raise ConfigError('e_min', f"closed-form scattering needs e_min > 0, got {config.e_min}")

    strength = abs(config.v0)
    params = UltraShortParams(config.mass, config.hbar, strength, config.delta_x)
    energies = np.linspace(config.e_min, config.e_max, config.e_points)

    barrier = [transmission_barrier_ultrashort(params, e) for e in energies]
    well = [transmission_well_ultrashort(params, e) for e in energies]

    table = pd.DataFrame({
        'E [energy]': energies,
        'T_barrier [1]': [t for t, _ in barrier],
        'R_barrier [1]': [r for _, r in barrier],
        'T_well [1]': [t for t, _ in well],
        'R_well [1]': [r for _, r in well],
        'T_rect_barrier [1]': [transmission_rectangular(config.mass, config.hbar, strength,
                                                        config.delta_x, e) for e in energies],
        'T_rect_well [1]': [transmission_rectangular(config.mass, config.hbar, -strength,
                                                     config.delta_x, e) for e in energies],
        'T_delta [1]': [transmission_dirac_delta(config.mass, config.hbar, params.k0, e)
                        for e in energies],
    })

    bound = bound_energy_ultrashort(params)
    peak_energy, peak_height = ramsauer_peak(params)
    metadata = {
        'v0': strength,
        'delta_x': config.delta_x,
        'mass': config.mass,
        'hbar': config.hbar,
        'k0': params.k0,
        'bound_energy': bound.energy if bound.is_bound else np.nan,
        'delta_bound_energy': (dirac_delta_bound(config.mass, config.hbar, params.k0)[0]
                               if params.k0 > 0 else np.nan),
        'well_peak_energy': peak_energy,
        'well_peak_transmission': peak_height,
    }
    return Report('closed-form', table, metadata)


def cmd_laplace(config: RunConfig) -> Report:
    """Laplace-domain wavefunction of a Gaussian packet on the configured x grid."""
    s = complex(config.laplace_s_re, config.laplace_s_im)
    query = LaplaceQuery(config.laplace_v0, config.laplace_delta_x, config.mass, config.hbar)
    packet = gaussian_packet(config.packet_center, config.packet_width,
                             config.packet_momentum, config.hbar)

    x = np.linspace(config.x_min, config.x_max, config.x_points)
    values = [psi_laplace(float(xi), s, packet, query) for xi in x]

    table = pd.DataFrame({
        'x [length]': x,
        'Re_psi [length^-1/2 time]': [v.real for v in values],
        'Im_psi [length^-1/2 time]': [v.imag for v in values],
    })

    metadata = {
        's_re': s.real,
        's_im': s.imag,
        'laplace_v0': config.laplace_v0,
        'laplace_delta_x': config.laplace_delta_x,
        'packet_center': config.packet_center,
        'packet_width': config.packet_width,
        'packet_momentum': config.packet_momentum,
    }

    if config.ivt:
        x_check = config.packet_center + config.packet_width
        errors = initial_value_errors([x_check], IVT_S_VALUES, packet, query)
        metadata['ivt_x'] = x_check
        for s_value, row in zip(IVT_S_VALUES, errors):
            metadata[f"ivt_error_s{int(s_value)}"] = row[0]
        logging.info(f"Initial-value errors at x={x_check}: {[row[0] for row in errors]}")

    return Report('laplace', table, metadata)


COMMANDS = {
    'sweep': cmd_sweep,
    'bound': cmd_bound,
    'eigenfunction': cmd_eigenfunction,
    'closed-form': cmd_closed_form,
    'laplace': cmd_laplace,
}
