"""LDPC codes from mutually orthogonal Latin squares over GF(q)."""
__version__ = "0.1.0"

from .constraints import ConstraintReport, check_constraints, find_good_tuples, lattice_scale_factors
from .design import (
    ParityCheckMatrix,
    TransversalDesign,
    girth,
    incidence_matrix,
    read_alist,
    td_from_mols,
    truncate,
    write_alist,
)
from .errors import MolsError
from .gf import FieldContext, field_new
from .gf2 import Encoder, build_encoder, encode
from .latin import LatinSquare, MolsSet, are_orthogonal, build_mols, class_representative, is_latin
from .qc import QcLayout, qc_column_order, qc_matrix, qc_transform, verify_circulants
from .sim import SimConfig, SimResult, peel_decode, run_simulation, transmit_bec
from .stopping import (
    CorrelatingFamily,
    StoppingSetReport,
    Subrectangle,
    duplicate_to_full,
    enumerate_stopping_sets,
    family_to_configuration,
    is_full,
    polygon_check,
    structural_search_size8,
    translate,
)


def code(q: int, alphas, *, qc: bool = False) -> ParityCheckMatrix:
    """Parity-check matrix of the code on the reduced squares ``(alpha, 1)``."""
    ctx = field_new(q)
    if qc:
        return qc_matrix(ctx, alphas)
    return incidence_matrix(td_from_mols(build_mols(ctx, [(a, 1) for a in alphas])))
