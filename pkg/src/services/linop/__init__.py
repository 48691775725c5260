"""Dense complex linear algebra on model operators."""

from .operator import EUCLIDEAN, EigenDecomposition, ModelOperator, VectorNormSpec
from .service import (
    OperatorNormBounds,
    eigendecompose,
    matrix_function_oracle,
    operator_norm,
    operator_norm_bounds,
    resolvent_apply,
    resolvent_apply_batch,
    resolvent_matrices,
    resolvent_norms,
    spectral_scale,
    stacked_norms,
)

__all__ = [
    'EUCLIDEAN',
    'EigenDecomposition',
    'ModelOperator',
    'VectorNormSpec',
    'OperatorNormBounds',
    'eigendecompose',
    'matrix_function_oracle',
    'operator_norm',
    'operator_norm_bounds',
    'resolvent_apply',
    'resolvent_apply_batch',
    'resolvent_matrices',
    'resolvent_norms',
    'spectral_scale',
    'stacked_norms',
]
