"""
Eigenvalue comparison table.
Compares bound energies of rectangular wells (V = 20) built from ultra-short
junctions with the analytic finite-square-well energies and the
finite-difference solution of the continuous well.
"""

import sys
import logging
from pathlib import Path

# Fix encoding for Windows
if sys.platform == 'win32':
    import io
    sys.stdout = io.TextIOWrapper(sys.stdout.buffer, encoding='utf-8')

# Add src directory to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.cli.settings import load_settings, setup_logging
from src.errors import SolverError
from src.potential.builtins import builtin_profile
from src.potential.discretize import discretize
from src.transfer.bound import eigenvalues
from src.validation.finite_difference import direct_ode_eigenvalues
from src.validation.rectangular import RectangularWellSpec, rect_well_eigenvalues

DEPTH = 20.0
DELTA_X = 0.025

# (junctions, well width, junction spacing)
ROWS = [
    (1, 0.05, 1.0),
    (2, 1.05, 1.0),
    (3, 2.05, 1.0),
    (4, 3.05, 1.0),
    # Five junctions over the 3.05 well lose more propagation length than four;
    # their upper levels sit further from the square well, not closer.
    (5, 3.05, 0.75),
    (5, 4.05, 1.0),
]


def table_row(junctions: int, width: float, spacing: float):
    """Scheme, analytic and finite-difference energies (from the well bottom) for one row."""
    half_domain = 0.5 * junctions * spacing
    profile = builtin_profile('rectangular', {'v0': -DEPTH, 'width': width},
                              -half_domain, half_domain)
    seg = discretize(profile, junctions, DELTA_X)

    scheme = [e - seg.v_min for e in eigenvalues(seg)]
    exact = rect_well_eigenvalues(RectangularWellSpec(depth=DEPTH, width=width))
    ode = [e + DEPTH for e in direct_ode_eigenvalues(profile, levels=max(len(exact), 1))]
    return scheme, exact, ode


def main():
    """Print the comparison table."""
    print("=" * 60)
    print("Eigenvalues: ultra-short junctions vs rectangular well")
    print("=" * 60)

    setup_logging(load_settings())

    for junctions, width, spacing in ROWS:
        try:
            scheme, exact, ode = table_row(junctions, width, spacing)
        except SolverError as e:
            logging.error(f"Row J={junctions}, a={width} failed: {e}")
            return 3

        print(f"\nJ={junctions}  V={DEPTH:g}  a={width:g}  spacing={spacing:g}  "
              f"states={len(scheme)} (rectangle: {len(exact)})")
        print(f"  {'n':>3}  {'junctions':>12}  {'rectangle':>12}  {'ode':>12}")
        for n in range(max(len(scheme), len(exact))):
            left = f"{scheme[n]:12.6g}" if n < len(scheme) else ' ' * 12
            right = f"{exact[n]:12.6g}" if n < len(exact) else ' ' * 12
            oracle = f"{ode[n]:12.6g}" if n < len(ode) else ' ' * 12
            print(f"  {n:>3}  {left}  {right}  {oracle}")

    print("\n" + "=" * 60)
    return 0


if __name__ == "__main__":
    sys.exit(main())
