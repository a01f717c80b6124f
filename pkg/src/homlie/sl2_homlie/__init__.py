"""sl2-specific orbit machinery for (-1,1,1)-derivations and the extension sl2[D]."""

from .canonical import (LABELS, CanonicalFormResult, ClassLabel, Invariants, NoCanonicalForm,
                        OrbitComparison, Step, Verdict, ZeroDerivation, canonical_form, classify,
                        invariants, is_exceptional, orbit_equivalent, representative)
from .extension import (HomLieAlgebra, HomLieError, JacobiReport, check_homlie_jacobi, extend,
                        extend_sl2, from_lie, with_twist)
from .tuples import (J, K, L, AutElement, ClosedAction, Diag, Fm, G, GenDer5, GroupElement, Hm,
                     NotAGenDer, ZeroParameter, act, act_closed, act_conj, aut_matrix,
                     basis_matrices, matrix_to_tuple, preserves_bracket, printed_J, random_tuple,
                     scalar_json, tuple_to_matrix)

__all__ = [name for name in dir() if not name.startswith("_")]
