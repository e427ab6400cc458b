"""Nominal OOP at desk scale: class signatures, record and object domains,
the ``filter`` projection, and class types."""
from .class_types import check_inheritance_is_subtyping, enumerate_members, member_of, witness
from .domains import DomainOracle, FiniteDomain, FlatNaturals, Inconsistent
from .objects import (
    METH_BOTTOM,
    OBJ_BOTTOM,
    SEQ_BOTTOM,
    FiniteMethod,
    RawObject,
    apply_method,
    filter_meth_sig,
    filter_obj_sig,
    filter_object,
    mk_method,
    mk_object,
    obj_approx,
    obj_consistent,
    obj_equal,
    obj_lub,
    rank,
    valid,
)
from .parser import parse, lower, parse_signatures, pretty_print
from .records import (
    REC_BOTTOM,
    RecordFunction,
    basis_element,
    basis_index,
    mk_record,
    rec_approx,
    rec_consistent,
    rec_lub,
)
from .signatures import (
    ClassSignature,
    FieldSignature,
    MethodSignature,
    SignatureClosure,
    SignatureEnvironment,
    closure_of,
    extends_env,
    immediate_subsign,
    lookup,
    shapes,
    sig_equals,
    subsign,
    validate_environment,
)

__version__ = "0.1.0"
