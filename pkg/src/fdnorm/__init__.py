"""Functional dependency analysis: closures, keys, normal forms, legitimate
2NF/3NF decompositions, and detection of schemas that cannot stop at 2NF."""

__version__ = "0.1.0"

from .closure import (
    ProjectedFDSet,
    attribute_closure,
    candidate_keys,
    equivalent,
    implies,
    minimal_cover,
    prime_attributes,
    project_fds,
)
from .config import Limits, size_limits
from .decomposition import (
    CaseAnalysis,
    PlanOutcome,
    analyze_case,
    decompose_2nf,
    infer_provenance,
    is_precisely_2nf,
    plan_precise_2nf,
    reject_illegitimate,
    synthesize_3nf,
)
from .diagnosis import ChainPair, Theorem1Verdict, TransitiveChain, find_chains, find_overlapping_pairs, theorem1_verdict
from .dsl import parse_decomposition, parse_schema, render_decomposition, render_schema
from .errors import (
    AssumptionViolated,
    CyclicCover,
    FDNormError,
    NotAttributePreserving,
    ParseError,
    SchemaError,
    SizeLimitExceeded,
    VariantInapplicable,
)
from .model import (
    FD,
    Decomposition,
    Provenance,
    RelationSchema,
    Schema,
    attrset,
    fdset,
    make_decomposition,
    render_attrs,
    validate_schema,
)
from .normal_forms import (
    NormalForm,
    NormalFormLabel,
    classify_database,
    classify_table,
    partial_dependency_witnesses,
    transitive_dependency_witnesses,
)
from .verification import (
    RelationInstance,
    binary_lossless,
    chase_lossless,
    chase_tableau,
    generate_instance,
    instance_join_test,
    preservation_check,
)
