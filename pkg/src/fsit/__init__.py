"""Incremental fuzzy scene-knowledge engine.

Encodes symbolic scene observations into sigma-count belief
cardinalities, one-shot-learns scene categories as conjunctions of
minimum-cardinality shoulder restrictions, structures them into a
weighted implication graph, and classifies new scenes against that
memory.
"""

from .engine import (
    BeliefBag,
    Category,
    ClassificationGraph,
    MemoryGraph,
    bootstrap_step,
    category_subsumption,
    classification_degree,
    classify,
    encode,
    learn,
    run_sequence,
    similarity,
    structure,
)
from .fuzzy import (
    ShoulderRestriction,
    shoulder_eval,
    sigma_count,
    subsumption_degree,
    zadeh_and,
)
from .model import (
    Element,
    Fact,
    InputInterface,
    ReificationMode,
    RelationSymbol,
    RoleKey,
    SceneObservation,
    enumerate_keys,
    validate_scene,
)

__all__ = [
    "BeliefBag",
    "Category",
    "ClassificationGraph",
    "Element",
    "Fact",
    "InputInterface",
    "MemoryGraph",
    "ReificationMode",
    "RelationSymbol",
    "RoleKey",
    "SceneObservation",
    "ShoulderRestriction",
    "bootstrap_step",
    "category_subsumption",
    "classification_degree",
    "classify",
    "encode",
    "enumerate_keys",
    "learn",
    "run_sequence",
    "shoulder_eval",
    "sigma_count",
    "similarity",
    "structure",
    "subsumption_degree",
    "validate_scene",
    "zadeh_and",
]

__version__ = "0.1.0"
