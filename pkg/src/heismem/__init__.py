"""heismem: compile integer polynomial equations into submonoid membership
instances over finite direct powers of the Heisenberg group, build and verify
membership witnesses, and cross-check everything with desk-scale oracles."""

from .dioph import (
    Assignment,
    DiophEquation,
    EquationError,
    ParseError,
    brute_solutions,
    brute_solve,
    eval_poly,
    nonnegativize,
    parse_equation,
    render_equation,
)
from .heis import (
    HeisElem,
    PowerElem,
    commutator,
    dp_inv,
    dp_mul,
    dp_pow,
    from_matrix,
    h_inv,
    h_mul,
    h_pow,
    render_elem,
    render_power,
    to_matrix,
)
from .reduction import (
    Generator,
    ReductionInstance,
    add_block_generators,
    apply_markers,
    block_table,
    compile_instance,
    instance_from_elements,
    mul_block_generators,
    target_element,
)
from .skolem import (
    NormalizedSkolem,
    SkolemAssignment,
    SkolemEquation,
    SkolemError,
    SkolemSystem,
    check_assignment,
    lift_solution,
    normalize,
    normalize_equation,
    ns_enumerate,
    render_normalized,
    skolemize,
    validate_normalized,
)
from .witness import (
    DiscrepancyReport,
    RoundtripReport,
    SearchResult,
    Word,
    bounded_membership_search,
    build_witness,
    evaluate_word,
    reduction_roundtrip,
    verify_witness,
)

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "DiophEquation",
    "DiscrepancyReport",
    "EquationError",
    "Generator",
    "HeisElem",
    "NormalizedSkolem",
    "ParseError",
    "PowerElem",
    "ReductionInstance",
    "RoundtripReport",
    "SearchResult",
    "SkolemAssignment",
    "SkolemEquation",
    "SkolemError",
    "SkolemSystem",
    "Word",
    "add_block_generators",
    "apply_markers",
    "block_table",
    "bounded_membership_search",
    "brute_solutions",
    "brute_solve",
    "build_witness",
    "check_assignment",
    "commutator",
    "compile_instance",
    "dp_inv",
    "dp_mul",
    "dp_pow",
    "eval_poly",
    "evaluate_word",
    "from_matrix",
    "h_inv",
    "h_mul",
    "h_pow",
    "instance_from_elements",
    "lift_solution",
    "mul_block_generators",
    "nonnegativize",
    "normalize",
    "normalize_equation",
    "ns_enumerate",
    "parse_equation",
    "reduction_roundtrip",
    "render_elem",
    "render_equation",
    "render_normalized",
    "render_power",
    "skolemize",
    "target_element",
    "to_matrix",
    "validate_normalized",
    "verify_witness",
]
