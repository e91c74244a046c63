"""smtlab: exact-arithmetic toolkit for standard monomial bases of
matrix-pairing invariant rings, their straightening relations, and the
lattice degeneration that witnesses their structure."""

from .errors import (
    BasisFailureError,
    InvariantViolation,
    ParameterError,
    ResourceCapError,
    TerminationFailureError,
)
from .generators import (
    Content,
    canonical_monomial,
    content,
    eval_element,
    eval_monomial,
    format_monomial,
    generator_elements,
    is_standard,
    lattice_elements,
    monomial_bidegree,
    parse_monomial,
    standard_monomials,
    standard_multichains,
)
from .hibi import (
    FiniteLattice,
    LatticeBinomial,
    check_degeneration_hypotheses,
    load_lattice,
    rank_dimension_report,
    save_lattice,
)
from .oracle import determinantal_dimension, invariant_dimension, poly_rank
from .polyring import PolyRing, SparsePoly, gl_basis, identity_matrix, lie_derive, parse_poly, sl_basis
from .poset import (
    BOT,
    TOP,
    Element,
    Space,
    element_leq,
    embed_chain,
    enumerate_tuples,
    format_element,
    lattice_join,
    lattice_meet,
    leq_tuple,
    maximal_chains,
    minor_by_reversal,
    minor_by_shift,
    p_gen,
    parse_element,
    poset_rank,
    u_gen,
    xi_gen,
)
from .straighten import (
    GRADED,
    PLAIN,
    Relation,
    RelationContext,
    Weight,
    dump_relations,
    load_relations,
    monomial_weight,
    presentation_check,
    relation_violations,
    straighten,
    straighten_pair,
)

__version__ = "0.1.0"
