"""Sesqui-pushout rewriting with global negative constraints."""
from .catops import (
    final_pullback_complement,
    is_final_pullback_complement,
    is_pullback_square,
    is_pushout_square,
    pullback,
    pushout,
    pushout_complement,
)
from .census import census, rigid_graphs
from .constraints import (
    ConstraintSet,
    ConstraintViolation,
    ForbiddenRelation,
    ForbiddenRelationSet,
    decompose_forbidden_relations,
    find_dpe,
    forbidden_relations,
    has_dpe,
    rigid_constraints,
    rigid_forbidden_relations,
    satisfies,
)
from .graph import (
    Cospan,
    Edge,
    Graph,
    MonicSpan,
    Morphism,
    MorphismError,
    enumerate_monos,
    find_isomorphism,
    is_homomorphism,
    is_isomorphic,
    validate_graph,
)
from .overlaps import (
    STRATEGIES,
    CuratedOverlap,
    SpanPredicate,
    curate,
    curate_direct,
    curate_dpe,
    curate_implicit,
    enumerate_spans,
)
from .rules import (
    ConditionalRule,
    NegativeCondition,
    Rule,
    apply_sqpo,
    builtin_rule,
    compose_sqpo,
    enumerate_rule_matches,
    match_satisfies,
    minimal_nacs,
    rules_isomorphic,
)

__version__ = "0.1.0"
