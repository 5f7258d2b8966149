"""Finite abelian heaps, trusses, affine spaces and ternary Lie brackets.

A workbench for the ternary algebra of heaps: exhaustive axiom validators,
all the constructions between heaps, trusses, affine spaces, Lie trusses,
heaps of Lie affebras, Lie affebras and Lie rings, a normal-form prover for
the free heap and free truss theories, and brute-force enumeration and
classification of small structures.
"""

from .affine import (
    AffineStructure,
    PrimeField,
    VectorSpaceView,
    affine_from_vector_action,
    arrow,
    linearize,
    validate_affine,
    validate_affine_hom,
    validate_vector_space,
    vector_space_at,
)
from .expressions import Bracket3, HeapOp, Mul, ParseError, Var, parse, parse_identity, to_text, variables
from .files import check_structure, dump_structure, load_structure, parse_structure, realize_structure
from .freealg import (
    FREE_HEAP,
    FREE_TRUSS,
    Counterexample,
    FreeElement,
    Verdict,
    eval_expr,
    eval_free_element,
    expand_lie_macro,
    normalize,
    normalize_free_heap,
    normalize_free_truss,
    prove_identity,
    random_falsify,
)
from .groups import AbelianGroup, validate_group_table
from .heaps import FiniteHeap, eval_word, heap_from_group, heap_word, retract_at, validate_heap, validate_heap_hom
from .lie import (
    DerivationAlgebra,
    LieAffebra,
    LieRingView,
    LieTernary,
    affebra_to_ternary,
    bracket_from_truss,
    derivations_lie_truss,
    linearized_bracket,
    retract_lie_ring,
    strengthen_bracket,
    ternary_to_affebra,
    validate_lie_affebra,
    validate_lie_ring,
    validate_lie_truss,
    validate_strong_jacobi,
)
from .reports import (
    BudgetError,
    CharacteristicTwoError,
    ClosureError,
    StructureError,
    TheoryError,
    ValidationFailure,
    Violation,
    ViolationReport,
)
from .search import (
    REFERENCE_SQUARE_CLASSES,
    SearchSpec,
    canonical_form,
    canonical_table,
    enumerate_lie_brackets,
    enumerate_rings,
    enumerate_trusses,
    reference_comparison,
    search_weak_not_strong,
)
from .truss import TrussStructure, enumerate_derivations, truss_from_ring, validate_derivation, validate_truss

__version__ = "0.1.0"
