"""Deterministic separating-family constructions and the exact solvers built
on top of them: bounded-multiplicity paths, set packing, monomial detection
and degree-bounded spanning trees, each paired with a brute-force oracle.
"""

from .errors import (
    BudgetExceeded,
    CircuitError,
    DimensionMismatch,
    FormatError,
    MultisepError,
    ParameterError,
)
from .multiset import (
    MultisetVector,
    WeightedUniverse,
    complement,
    dominates,
    fits_packed,
    is_rk_compatible,
    is_rk_consistent,
    packed_width,
    r_set,
    size,
    union,
    weight,
)
from .families import (
    FunctionFamily,
    HittingContract,
    OneVsManyContract,
    PairwiseContract,
    RectanglePointSet,
    TPerfectContract,
    build_one_vs_many_separator,
    build_pairwise_independent,
    build_perfect_hash,
    build_perfect_hash_small_range,
    build_rectangle_hitting_set,
    find_family_violation,
    verify_family,
)
from .separating import (
    MinimalSeparatingFamily,
    UniversalSetFamily,
    build_lopsided_universal,
    build_minimal_separating,
    choose_universal_set,
    explain_separation,
    find_separating_violation,
    find_universal_violation,
    verify_lopsided,
    verify_minimal_separating,
)
from .separator import (
    MultisetSeparator,
    build_cube_separator,
    build_multiset_separator,
    choose_separator_witness,
    find_separator_violation,
    verify_multiset_separator,
)
from .repsets import (
    WeightedMultisetFamily,
    compute_representative,
    family_bullet,
    family_bullet_element,
    family_from_vectors,
    family_union,
    find_representation_violation,
    make_family,
    representative_separator,
    trim,
    verify_representative,
)
from .graphs import Graph, check_simple_undirected, graph
from .solvers import (
    MonomialResult,
    PackingResult,
    RSimplePathResult,
    SetFamilyInstance,
    reduce_edge_weighted_path,
    reduce_set_weighted_packing,
    set_family_instance,
    solve_monomial_detection,
    solve_r_simple_k_path,
    solve_r_simple_k_path_edge_weighted,
    solve_rpq_packing,
)
from .circuits import (
    Circuit,
    TruncatedPolynomial,
    evaluate,
    parse_circuit,
    print_circuit,
    symbolic_expand,
)
from .spantree import (
    DBSTResult,
    SymbolicLaplacian,
    build_laplacian,
    degree_cofactor,
    hardness_gadget,
    kirchhoff_polynomial,
    solve_degree_bounded_spanning_tree,
    symbolic_determinant,
)
from .oracles import (
    oracle_degree_bounded_tree,
    oracle_hamiltonian_path,
    oracle_monomial_min_weight,
    oracle_monomial_witness,
    oracle_packing,
    oracle_packing_subfamily,
    oracle_r_simple_k_path,
    oracle_r_simple_k_path_dp,
    oracle_simple_kpath_min,
    oracle_spanning_trees,
    oracle_tree_count,
)
from .cli import cli_dispatch
from .kernels import backend_name

__version__ = "0.1.0"
