"""Encoding, one-shot learning, memory structuring and classification.

The lifecycle mirrors the bootstrap loop: facts are encoded into a
:class:`BeliefBag` of sigma-count cardinalities per reified role, a
:class:`Category` is learned as one shoulder restriction per belief,
categories are structured into a weighted implication graph
(:class:`MemoryGraph`), and new scenes are classified against it into a
:class:`ClassificationGraph` carrying per-node degree and similarity.

A memory graph is single-writer: :func:`structure` and
:func:`bootstrap_step` need exclusive access, while :func:`classify` and
:func:`similarity` are read-only and may run concurrently with each
other.  Independent memories never interfere.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from typing import Iterable, Mapping, Sequence

from .errors import (
    DuplicateCategory,
    EmptyBeliefs,
    FuzzinessMismatch,
    InterfaceMismatch,
    ZeroSceneEnergy,
)
from .fuzzy import ShoulderRestriction, subsumption_degree
from .model import (
    InputInterface,
    ReificationMode,
    RoleKey,
    SceneObservation,
    validate_scene,
)

DEFAULT_FUZZINESS = 0.3
DEFAULT_MEMBERSHIP_THRESHOLD = 0.6
DEFAULT_SIMILARITY_THRESHOLD = 0.5


@dataclass(frozen=True)
class BeliefBag:
    """Sigma-count cardinalities per reified role for one scene instance.

    Zero-cardinality keys are omitted (open world); ``total_energy`` is
    the sum of all cardinalities and is the denominator of similarity.
    """

    scene_id: str
    entries: Mapping[RoleKey, float]
    mode: ReificationMode

    def __post_init__(self) -> None:
        ordered = dict(sorted(self.entries.items(), key=lambda kv: kv[0].sort_key()))
        for key, cardinality in ordered.items():
            if cardinality <= 0.0:
                raise EmptyBeliefs(
                    f"belief {key.to_string()} has non-positive cardinality {cardinality}"
                )
        object.__setattr__(self, "entries", ordered)

    @property
    def total_energy(self) -> float:
        return math.fsum(self.entries.values())

    def __len__(self) -> int:
        return len(self.entries)

    def is_empty(self) -> bool:
        return not self.entries


@dataclass(frozen=True)
class Provenance:
    """Which scene a category was learned from, and at which learning step."""

    scene_id: str
    timestamp: int


@dataclass(frozen=True)
class Category:
    """A learned scene concept: a conjunction of shoulder restrictions.

    All restrictions share the memory-wide fuzziness.  The restriction
    energy (sum of learned cardinalities) is the similarity numerator.
    """

    id: int
    restrictions: Mapping[RoleKey, ShoulderRestriction]
    fuzziness: float
    provenance: Provenance
    annotation: str | None = None

    def __post_init__(self) -> None:
        if not self.restrictions:
            raise EmptyBeliefs(f"category {self.id} has no restrictions")
        ordered = dict(
            sorted(self.restrictions.items(), key=lambda kv: kv[0].sort_key())
        )
        for key, restriction in ordered.items():
            if restriction.k <= 0.0:
                raise EmptyBeliefs(
                    f"category {self.id} restricts {key.to_string()} with k <= 0"
                )
            if restriction.fuzziness != self.fuzziness:
                raise FuzzinessMismatch(
                    f"category {self.id} mixes fuzziness values "
                    f"{restriction.fuzziness} and {self.fuzziness}"
                )
        object.__setattr__(self, "restrictions", ordered)

    @property
    def restriction_energy(self) -> float:
        return math.fsum(r.k for r in self.restrictions.values())


@dataclass(frozen=True)
class ClassifiedNode:
    """One memory category that classifies the current scene."""

    category_id: int
    degree: float
    similarity: float
    annotation: str | None = None


@dataclass(frozen=True)
class ClassificationGraph:
    """The sub-graph of memory categories with positive classification degree.

    Nodes carry classification degree and similarity; edges are the
    induced memory edges with their stored subsumption degrees.
    """

    scene_id: str
    nodes: Mapping[int, ClassifiedNode]
    edges: Mapping[tuple[int, int], float]

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", dict(sorted(self.nodes.items())))
        object.__setattr__(self, "edges", dict(sorted(self.edges.items())))

    def is_empty(self) -> bool:
        return not self.nodes

    def best_degree(self) -> float:
        return max((n.degree for n in self.nodes.values()), default=0.0)

    def best_similarity(self) -> float:
        return max((n.similarity for n in self.nodes.values()), default=0.0)


class MemoryGraph:
    """Weighted directed graph of learned categories.

    The empty-scene root is implicit: every category carries an edge to
    it with degree 1 and the root itself stores no restrictions, so only
    learned categories appear in ``categories`` and ``edges``.  Mutual
    edges (2-cycles) between near-identical categories are permitted.
    """

    def __init__(
        self,
        interface: InputInterface,
        fuzziness: float = DEFAULT_FUZZINESS,
        *,
        created_at: str | None = None,
    ) -> None:
        if not (0.0 <= fuzziness <= 1.0):
            raise FuzzinessMismatch(f"fuzziness {fuzziness} outside [0, 1]")
        self.interface = interface
        self.fuzziness = fuzziness
        self.categories: dict[int, Category] = {}
        self.edges: dict[tuple[int, int], float] = {}
        self.next_category_id = 1
        self.created_at = created_at or datetime.now(timezone.utc).isoformat()

    def __len__(self) -> int:
        return len(self.categories)

    def category(self, category_id: int) -> Category:
        try:
            return self.categories[category_id]
        except KeyError:
            raise KeyError(f"category {category_id} not present in the memory") from None

    def parents_of(self, category_id: int) -> dict[int, float]:
        return {
            parent: degree
            for (child, parent), degree in self.edges.items()
            if child == category_id
        }

    def children_of(self, category_id: int) -> dict[int, float]:
        return {
            child: degree
            for (child, parent), degree in self.edges.items()
            if parent == category_id
        }

    def annotate(self, category_id: int, label: str | None) -> None:
        self.categories[category_id] = replace(
            self.category(category_id), annotation=label
        )

    def clone(self) -> "MemoryGraph":
        copy = MemoryGraph(self.interface, self.fuzziness, created_at=self.created_at)
        copy.categories = dict(self.categories)
        copy.edges = dict(self.edges)
        copy.next_category_id = self.next_category_id
        return copy


# -- encoding ---------------------------------------------------------------


def encode(scene: SceneObservation, iface: InputInterface) -> BeliefBag:
    """Map a validated scene's facts into sigma-count beliefs.

    FULL mode: for each (relation, subject type, object type) key, the
    cardinality is the sum over facts of min(fact degree, subject type
    degree, object type degree).  SIMPLIFIED mode keeps the subject's
    type only and folds the object's types with a max before summing.
    Keys whose sum is zero are omitted.
    """
    validate_scene(scene, iface)
    elements = scene.element_map()
    contributions: dict[RoleKey, list[float]] = {}
    for fact in scene.facts:
        subject = elements[fact.subject]
        obj = elements[fact.object]
        for subject_type in sorted(subject.type_degrees):
            s_degree = subject.degree(subject_type)
            if iface.mode is ReificationMode.FULL:
                for object_type in sorted(obj.type_degrees):
                    value = min(fact.degree, s_degree, obj.degree(object_type))
                    if value > 0.0:
                        key = RoleKey(fact.relation, subject_type, object_type)
                        contributions.setdefault(key, []).append(value)
            else:
                best = max(
                    min(fact.degree, s_degree, obj.degree(object_type))
                    for object_type in sorted(obj.type_degrees)
                )
                if best > 0.0:
                    key = RoleKey(fact.relation, subject_type)
                    contributions.setdefault(key, []).append(best)
    entries = {
        key: math.fsum(values)
        for key, values in contributions.items()
        if math.fsum(values) > 0.0
    }
    return BeliefBag(scene.scene_id, entries, iface.mode)


# -- learning ---------------------------------------------------------------


def learn(
    beliefs: BeliefBag,
    fuzziness: float,
    *,
    category_id: int = 1,
    timestamp: int = 0,
) -> Category:
    """One-shot a category from a nonempty belief bag.

    Each belief key gets a shoulder restriction anchored at the observed
    cardinality, so the originating scene classifies back with degree 1.
    """
    if beliefs.is_empty():
        raise EmptyBeliefs(
            f"scene {beliefs.scene_id!r} produced no beliefs; nothing to learn"
        )
    restrictions = {
        key: ShoulderRestriction(cardinality, fuzziness)
        for key, cardinality in beliefs.entries.items()
    }
    return Category(
        id=category_id,
        restrictions=restrictions,
        fuzziness=fuzziness,
        provenance=Provenance(beliefs.scene_id, timestamp),
    )


# -- category-level degrees ---------------------------------------------------


def _check_key_shapes(keys: Iterable[RoleKey], mode: ReificationMode) -> None:
    for key in keys:
        simplified = key.object_type is None
        if simplified != (mode is ReificationMode.SIMPLIFIED):
            raise InterfaceMismatch(
                f"role key {key.to_string()} does not match {mode.value} mode"
            )


def category_subsumption(parent: Category, child: Category) -> float:
    """Degree to which any scene in ``child`` is also in ``parent``.

    A key restricted by the parent but absent from the child forces 0;
    keys restricted only by the child are disregarded (open world).
    Otherwise the degree is the minimum per-key implication over the
    parent's keys.
    """
    if parent.fuzziness != child.fuzziness:
        raise FuzzinessMismatch(
            f"categories {parent.id} and {child.id} have different fuzziness"
        )
    degrees = []
    for key, restriction in parent.restrictions.items():
        child_restriction = child.restrictions.get(key)
        if child_restriction is None:
            return 0.0
        degrees.append(subsumption_degree(restriction, child_restriction))
    return min(degrees)


def classification_degree(category: Category, beliefs: BeliefBag) -> float:
    """Minimum shoulder membership of the scene's cardinalities.

    Every key the category restricts is evaluated at the scene's
    cardinality (0 when the scene lacks the key); scene beliefs at
    unrestricted keys are ignored.
    """
    _check_key_shapes(category.restrictions, beliefs.mode)
    degrees = []
    for key, restriction in category.restrictions.items():
        cardinality = beliefs.entries.get(key, 0.0)
        degrees.append(restriction.evaluate(cardinality))
    return min(degrees)


def similarity(category: Category, beliefs: BeliefBag) -> float:
    """Ratio of the category's restricted energy to the scene's energy.

    Measures how much of the scene the category explains.  May exceed 1
    in the fuzzy domain (bounded by 1/(1 - fuzziness) whenever the scene
    is classified at all).
    """
    total = beliefs.total_energy
    if total <= 0.0:
        raise ZeroSceneEnergy(
            f"scene {beliefs.scene_id!r} has no belief energy"
        )
    return category.restriction_energy / total


# -- structuring -------------------------------------------------------------


def structure(memory: MemoryGraph, new_category: Category) -> MemoryGraph:
    """Insert a category and compute its implication edges incrementally.

    Both directions against every existing node are evaluated and
    recorded when positive; edges among pre-existing nodes are untouched.
    Requires exclusive access to the memory.
    """
    if new_category.id in memory.categories:
        raise DuplicateCategory(f"category {new_category.id} already in memory")
    if new_category.fuzziness != memory.fuzziness:
        raise FuzzinessMismatch(
            f"category fuzziness {new_category.fuzziness} != memory "
            f"fuzziness {memory.fuzziness}"
        )
    for key in new_category.restrictions:
        if not memory.interface.contains_key(key):
            raise InterfaceMismatch(
                f"role key {key.to_string()} outside the memory's interface"
            )
    for existing in memory.categories.values():
        upward = category_subsumption(existing, new_category)
        if upward > 0.0:
            memory.edges[(new_category.id, existing.id)] = upward
        downward = category_subsumption(new_category, existing)
        if downward > 0.0:
            memory.edges[(existing.id, new_category.id)] = downward
    memory.categories[new_category.id] = new_category
    memory.next_category_id = max(memory.next_category_id, new_category.id + 1)
    return memory


# -- classification -----------------------------------------------------------


def _check_beliefs(memory: MemoryGraph, beliefs: BeliefBag) -> None:
    if beliefs.mode is not memory.interface.mode:
        raise InterfaceMismatch(
            f"beliefs in {beliefs.mode.value} mode cannot be classified in a "
            f"{memory.interface.mode.value} memory"
        )
    for key in beliefs.entries:
        if not memory.interface.contains_key(key):
            raise InterfaceMismatch(
                f"belief key {key.to_string()} outside the memory's interface"
            )


def classify(memory: MemoryGraph, beliefs: BeliefBag) -> ClassificationGraph:
    """All categories classifying the scene with positive degree.

    Pure read: the memory is never modified, and an empty graph is a
    valid outcome (the scene is simply unclassified).
    """
    _check_beliefs(memory, beliefs)
    nodes: dict[int, ClassifiedNode] = {}
    for category in memory.categories.values():
        degree = classification_degree(category, beliefs)
        if degree > 0.0:
            nodes[category.id] = ClassifiedNode(
                category_id=category.id,
                degree=degree,
                similarity=similarity(category, beliefs),
                annotation=category.annotation,
            )
    edges = {
        (child, parent): degree
        for (child, parent), degree in memory.edges.items()
        if child in nodes and parent in nodes
    }
    return ClassificationGraph(beliefs.scene_id, nodes, edges)


def classify_with_fuzziness(
    memory: MemoryGraph, beliefs: BeliefBag, fuzziness: float
) -> ClassificationGraph:
    """Classify as if every restriction had been learned with ``fuzziness``.

    Used for what-if queries: the learned cardinalities stay fixed while
    the ramp width is re-parametrized, and the induced edge degrees are
    recomputed at the override value.  The memory is never modified.
    """
    _check_beliefs(memory, beliefs)
    reparametrized = {
        cid: Category(
            id=cat.id,
            restrictions={
                key: ShoulderRestriction(r.k, fuzziness)
                for key, r in cat.restrictions.items()
            },
            fuzziness=fuzziness,
            provenance=cat.provenance,
            annotation=cat.annotation,
        )
        for cid, cat in memory.categories.items()
    }
    nodes: dict[int, ClassifiedNode] = {}
    for cid, category in reparametrized.items():
        degree = classification_degree(category, beliefs)
        if degree > 0.0:
            nodes[cid] = ClassifiedNode(
                category_id=cid,
                degree=degree,
                similarity=similarity(category, beliefs),
                annotation=category.annotation,
            )
    edges: dict[tuple[int, int], float] = {}
    for child in nodes:
        for parent in nodes:
            if child == parent:
                continue
            degree = category_subsumption(
                reparametrized[parent], reparametrized[child]
            )
            if degree > 0.0:
                edges[(child, parent)] = degree
    return ClassificationGraph(beliefs.scene_id, nodes, edges)


# -- the bootstrap loop --------------------------------------------------------


def needs_learning(
    graph: ClassificationGraph, th_membership: float, th_similarity: float
) -> bool:
    """The learn-or-not guard over a classification graph.

    The maxima of degree and similarity are taken independently; an
    empty graph fails both tests and always triggers learning.
    """
    if graph.is_empty():
        return True
    return (
        graph.best_degree() < th_membership
        or graph.best_similarity() < th_similarity
    )


def bootstrap_step(
    memory: MemoryGraph,
    scene: SceneObservation,
    th_membership: float = DEFAULT_MEMBERSHIP_THRESHOLD,
    th_similarity: float = DEFAULT_SIMILARITY_THRESHOLD,
    *,
    fuzziness: float | None = None,
    force_learn: bool = False,
) -> tuple[MemoryGraph, ClassificationGraph, bool]:
    """Observe one scene: encode, classify, and learn when confidence is low.

    Implements the incremental loop: when the best classification degree
    falls below ``th_membership`` or the best similarity below
    ``th_similarity`` (or nothing classifies at all), a new category is
    learned, structured, and the scene is reclassified, so the returned
    graph is never empty for a nonempty scene.  When no learning occurs
    the memory is left bit-identical.
    """
    if fuzziness is not None and fuzziness != memory.fuzziness:
        raise FuzzinessMismatch(
            f"requested fuzziness {fuzziness} != memory fuzziness {memory.fuzziness}"
        )
    beliefs = encode(scene, memory.interface)
    graph = classify(memory, beliefs)
    learned = force_learn or needs_learning(graph, th_membership, th_similarity)
    if learned:
        category = learn(
            beliefs,
            memory.fuzziness,
            category_id=memory.next_category_id,
            timestamp=memory.next_category_id,
        )
        structure(memory, category)
        graph = classify(memory, beliefs)
    return memory, graph, learned


@dataclass(frozen=True)
class StepTiming:
    """Wall-clock phase timings for one observed scene."""

    step: int
    scene_id: str
    learned: bool
    encode_classify_seconds: float
    learn_structure_seconds: float
    memory_size: int
    best_degree: float
    best_similarity: float


def run_sequence(
    memory: MemoryGraph,
    scenes: Sequence[SceneObservation],
    th_membership: float = DEFAULT_MEMBERSHIP_THRESHOLD,
    th_similarity: float = DEFAULT_SIMILARITY_THRESHOLD,
    *,
    timing_repetitions: int = 1,
) -> tuple[MemoryGraph, list[ClassificationGraph], list[StepTiming]]:
    """Fold the bootstrap loop over a scene sequence with phase timing.

    Equivalent to repeated :func:`bootstrap_step` calls on the same
    memory; the loop is unrolled here so the encode+classify and
    learn+structure phases can be timed separately.  The pure phases are
    re-run ``timing_repetitions`` times and averaged; the mutating
    structure phase is repeated on throwaway clones before the real
    insertion so the final memory sees exactly one update per step.
    """
    if timing_repetitions < 1:
        raise ValueError("timing_repetitions must be >= 1")
    graphs: list[ClassificationGraph] = []
    timings: list[StepTiming] = []
    for index, scene in enumerate(scenes, start=1):
        durations = []
        for _ in range(timing_repetitions):
            started = time.perf_counter()
            beliefs = encode(scene, memory.interface)
            graph = classify(memory, beliefs)
            durations.append(time.perf_counter() - started)
        encode_classify_seconds = math.fsum(durations) / len(durations)

        learned = needs_learning(graph, th_membership, th_similarity)
        learn_structure_seconds = 0.0
        if learned:
            durations = []
            for repetition in range(timing_repetitions):
                target = (
                    memory
                    if repetition == timing_repetitions - 1
                    else memory.clone()
                )
                started = time.perf_counter()
                category = learn(
                    beliefs,
                    target.fuzziness,
                    category_id=target.next_category_id,
                    timestamp=target.next_category_id,
                )
                structure(target, category)
                durations.append(time.perf_counter() - started)
            learn_structure_seconds = math.fsum(durations) / len(durations)
            graph = classify(memory, beliefs)

        graphs.append(graph)
        timings.append(
            StepTiming(
                step=index,
                scene_id=scene.scene_id,
                learned=learned,
                encode_classify_seconds=encode_classify_seconds,
                learn_structure_seconds=learn_structure_seconds,
                memory_size=len(memory),
                best_degree=graph.best_degree(),
                best_similarity=graph.best_similarity(),
            )
        )
    return memory, graphs, timings
