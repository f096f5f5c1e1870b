from psdo.mourre.models import LambdaMin, MourreReport, UnitaryExtras
from psdo.mourre.selfadjoint import commutator_symbol_residual, exact_commutator, mourre_check_selfadjoint
from psdo.mourre.unitary import arc_localization_constant, in_arc, mourre_check_unitary, unitarity_defect

__all__ = [
    "LambdaMin",
    "MourreReport",
    "UnitaryExtras",
    "arc_localization_constant",
    "commutator_symbol_residual",
    "exact_commutator",
    "in_arc",
    "mourre_check_selfadjoint",
    "mourre_check_unitary",
    "unitarity_defect",
]
