"""Computational additive combinatorics: sumsets, structured sets,
small-doubling theorems over Z, Z x G and ordered non-abelian groups,
plus an exhaustive verification / counterexample-search engine."""

from .intsets import (
    APDescription,
    IntSet,
    NormalizationMap,
    SumsetStats,
    check_2_isomorphism,
    difference_set,
    is_ap_pair_with_common_difference,
    minimal_containing_ap,
    normalize,
    stats,
    sumset,
)
from .groups import (
    CyclicGroup,
    DirectSumGroup,
    GroupSpec,
    HeisenbergGroup,
    LatticeGroup,
    group_from_json,
    product_point_add,
)
from .structure import (
    ClosureTrace,
    ProductStructureCertificate,
    StructureCertificate,
    check_additive_implication,
    closure,
    closure_step,
    detect_structured_up_to_isomorphism,
    is_structured,
    recover_affine_witness,
    structure_certificate,
)
from .nonabelian import (
    GroupSubset,
    WeakStructureCertificate,
    is_weakly_structured,
    product_set,
    subgroup_conclusions,
)
from .verify import VerificationReport, verify as verify_instance
from .sweeps import SweepReport, SweepSpec, run_sweep

__version__ = "0.1.0"
