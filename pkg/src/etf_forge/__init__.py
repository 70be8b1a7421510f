"""Sparse equiangular tight frames from Steiner systems."""
from .designs import (SteinerSystem, affine_lines, hermitian_unital, incidence_transpose,
                      make_design, pair_design, projective_lines, steiner_triple, verify_design)
from .estimator import SteinerETF
from .exceptions import EtfForgeError, ParameterError
from .finite_field import Field, field_of_order
from .flat import FlatMatrix, best_flat, dft_matrix, kronecker, paley_hadamard, sylvester
from .frame import (EtfMatrix, EtfParams, analysis_apply, assemble_etf, compute_params, gram,
                    naimark_complement, verify_equiangular, verify_tight)
from .io import read_etf, write_etf
from .parameters import admissible, enumerate_families, recover_design_params
from .rip import (RipReport, block_dependency_certificate, coherence, coherence_rip_sufficient,
                  gershgorin_K_bound, ric_exhaustive)

__version__ = "0.1.0"

__all__ = [
    "SteinerSystem", "affine_lines", "hermitian_unital", "incidence_transpose", "make_design",
    "pair_design", "projective_lines", "steiner_triple", "verify_design", "SteinerETF",
    "EtfForgeError", "ParameterError", "Field", "field_of_order", "FlatMatrix", "best_flat",
    "dft_matrix", "kronecker", "paley_hadamard", "sylvester", "EtfMatrix", "EtfParams",
    "analysis_apply", "assemble_etf", "compute_params", "gram", "naimark_complement",
    "verify_equiangular", "verify_tight", "read_etf", "write_etf", "admissible",
    "enumerate_families", "recover_design_params", "RipReport", "block_dependency_certificate",
    "coherence", "coherence_rip_sufficient", "gershgorin_K_bound", "ric_exhaustive",
]
