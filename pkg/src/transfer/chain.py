"""
Junction-pair factors and the total transfer product.
"""

import logging

from .matrices import (
    TransferMatrix2, classify_region, region_origin,
    basis_at_origin, inverse_basis, junction_kick
)
from ..errors import DomainError
from ..potential.models import SegmentedProfile


def junction_pair_matrix(seg: SegmentedProfile, j: int, energy: float) -> TransferMatrix2:
    """
    Factor relating the amplitudes of wave region j to those of region j + 2.

    Built as inverse(basis_j at a_j) times (junction kick times basis_{j+2}
    at a_{j+1}), so it accounts for two matrix factors.

    Args:
        seg: Segmented profile
        j: 1-based odd index of the left wave region (1 <= j <= N - 2)
        energy: Energy E

    Returns:
        TransferMatrix2 with (A_j, B_j) = P (A_{j+2}, B_{j+2})
    """
    if j % 2 == 0 or not 1 <= j <= seg.region_count - 2:
        raise DomainError(f"Region index {j} is not the left wave region of a junction")

    left = classify_region(seg, j, energy)
    right = classify_region(seg, j + 2, energy)

    u_left = seg.breakpoints[j - 1] - region_origin(seg, j)
    inverse, log_scale = inverse_basis(left, u_left)
    coupling = junction_kick(seg, j + 1, energy) @ basis_at_origin(right)

    return TransferMatrix2.from_mantissa(inverse @ coupling, log_scale, factor_count=2)


def total_transfer(seg: SegmentedProfile, energy: float) -> TransferMatrix2:
    """
    Ordered product of all junction-pair factors.

    Args:
        seg: Segmented profile
        energy: Energy E

    Returns:
        TransferMatrix2 with (A_1, B_1) = T (A_N, B_N); factor_count is N - 1
    """
    product = None
    for j in range(1, seg.region_count - 1, 2):
        pair = junction_pair_matrix(seg, j, energy)
        product = pair if product is None else product @ pair

    if product.log_scale != 0.0:
        logging.debug(f"Transfer product at E={energy} rescaled by exp({product.log_scale:.1f})")

    return product
