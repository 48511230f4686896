"""Rational Weyl group elements, their ν-sequences and rationality graphs,
plus the exact GL_n decomposition ``g = N B u N^{-1}``."""
from .atlas import (
    Atlas,
    BudgetExceeded,
    build_atlas,
    check_z2_symmetry,
    count_rational,
    coxeter_report,
    path_to_w0,
    rational_codes,
)
from .decompose import (
    DegenerateWitness,
    IterationTrace,
    NotStabilized,
    Solution,
    check_fiber_collision,
    conjugation_invariance_check,
    fixer_witness,
    iterate,
    n_from_b,
    ortho_cycle_witness,
    solve,
    w0_solution,
)
from .matgroup import (
    GaussPair,
    NotGeneric,
    QMatrix,
    chevalley_x,
    chevalley_y,
    gauss_decompose,
    is_unit_lower,
    is_upper_borel,
    representative,
    torus_h,
)
from .rationality import (
    gamma,
    has_loop,
    is_rational,
    len_boundary_rational,
    nu0_via_reduced_word,
    nu_sequence,
    relative_nu,
    sn_cycle_obstruction,
)
from .roots import ConfigurationError, LieType, RootSystem, adj, build_root_system, leq
from .weyl import (
    WeylElement,
    coxeter_elements,
    enumerate_group,
    epsilon,
    from_compact,
    from_word,
    longest_element,
    special_d_element,
    to_compact,
)

__version__ = "0.1.0"
