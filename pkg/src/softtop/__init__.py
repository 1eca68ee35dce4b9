"""Finite soft topological spaces: soft-set algebra, separation axioms, the
soft T0 reflection, morphism properties and exhaustive search over small
spaces.

The scikit-learn style wrappers live in :mod:`softtop.estimators` and are
not imported here, so the core and the command line stay free of that
dependency at import time.
"""

__version__ = "0.1.0"

from .exceptions import (
    ConsistencyError,
    IncompatibleUniverseError,
    NotContinuousError,
    NotT0Error,
    NotT0UError,
    SoftTopologyError,
    TopologyAxiomError,
    UnknownLabelError,
)
from .soft_core import (
    SoftMapping,
    SoftSet,
    Universe,
    absolute_soft_set,
    complement,
    compose,
    difference,
    image,
    intersection,
    member,
    null_soft_set,
    preimage,
    union,
)
from .topology import (
    SoftSpace,
    closure,
    generate_topology,
    interior,
    subspace,
    validate_topology,
)
from .separation import Axiom, AxiomProfile, check_axiom, classify
from .morphisms import MapProperty, check_map, map_report, two_of_three
from .reflection import (
    Alpha,
    Reflection,
    check_t0_alpha,
    check_t0_alpha_direct,
    compute_reflection,
    factor_through_reflection,
    induced_map,
)
from .explorer import (
    EnumerationSpec,
    enumerate_spaces,
    find_counterexample,
    map_census,
    mine_implication,
)
from .documents import parse_document, parse_space, serialize_space

__all__ = sorted(
    name for name, obj in globals().items()
    if not name.startswith("_") and not isinstance(obj, type(__import__("sys")))
)
