from psdo.quantization.circle import WEYL, order_gap_norm, quantize_circle
from psdo.quantization.matrix import (
    OperatorMatrix,
    commutator_i,
    compressed_norm,
    high_frequency_indices,
    lattice_size,
    op_norm,
)
from psdo.quantization.torus import quantize_torus2_weyl, torus_index

__all__ = [
    "WEYL",
    "OperatorMatrix",
    "commutator_i",
    "compressed_norm",
    "high_frequency_indices",
    "lattice_size",
    "op_norm",
    "order_gap_norm",
    "quantize_circle",
    "quantize_torus2_weyl",
    "torus_index",
]
