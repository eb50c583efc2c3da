"""kcb: exact crystal graphs and canonical bases for higher-level Fock
spaces in affine type A."""

from .laurent import (
    LaurentPoly,
    NotDivisibleError,
    bar,
    bar_symmetrize_nonpos,
    exact_div,
    qfact,
    qint,
)
from .partitions import (
    Multipartition,
    Partition,
    conjugate,
    dominates,
    is_e_regular,
    transpose,
    transpose_each,
    triangular,
    u_family,
    vee,
)
from .fock import (
    FockContext,
    FockVector,
    NodeRef,
    addable_nodes,
    apply_e,
    apply_f,
    apply_f_divided,
    content,
    removable_nodes,
    residue,
    symmetric_context,
)
from .crystal import (
    BlockReducedGraph,
    CrystalGraph,
    NotAVertexError,
    WeightInfo,
    block_reduced,
    e_tilde,
    f_tilde,
    generate_crystal,
    is_external,
    residue_collected_path,
    weight_info,
)
from .canonical import (
    CanonicalBasis,
    CanonicalElement,
    ReductionError,
    canonical_basis_at_weight,
    canonical_element,
    decomposition_entry,
    diamond,
    get_basis,
    is_svelte,
    monomial_element,
    shape_of,
)
from .closedform import (
    AmbiguousCaseError,
    ChoiceSequence,
    FamilySpec,
    choice_sequences,
    closed_canonical_family,
    closed_canonical_top,
    closed_canonical_weyl,
    defect_congruences,
    defect_top_row,
    inv,
    pi0,
    pin,
    shape_fn,
    shape_fn_closed,
    small_defect_families,
    tau,
)

__version__ = "0.1.0"
