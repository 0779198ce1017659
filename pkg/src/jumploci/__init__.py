"""Rank one twisted cohomology and jump loci of plane curve germ complements."""
from .braid import BraidWord, LinkingMatrix, artin_presentation, components, delete_component, linking_matrix
from .branches import Branch, Parametrization, intersection_multiplicity, linking_matrix_from_branches
from .characters import ScanReport, TorsionCoset, coset_contains, embed_deleted, enumerate_coset, galois_orbit, scan
from .cyclotomic import CycMatrix, CycScalar, rank, root_of_unity
from .deletion import (
    DeletionScenario,
    VerificationReport,
    meridian_scalar,
    predict_deleted_h1,
    predict_multi_deleted,
    transform_jump_locus,
    verify_deletion,
)
from .fox import CohomologyDims, Presentation, TorsionCharacter, fox_derivative, jump_membership, twisted_dims

__version__ = "0.1.0"
