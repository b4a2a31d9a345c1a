"""Scene vocabulary and observation data model.

An :class:`InputInterface` fixes a closed vocabulary of element types and
directed relations plus the reification mode.  Scenes are bags of fuzzy
facts over that vocabulary: each fact relates two typed elements with a
degree in [0, 1].  Every value here is immutable after construction and
safe to share between threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Mapping

from .errors import (
    DanglingFactEndpoint,
    DegreeOutOfRange,
    DuplicateFact,
    InvalidScene,
    UnknownSymbol,
)

# Symbol names end up in JSON keys, CSV cells and DOT labels; keeping them
# to this charset means no quoting layer is ever needed.
_NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")

KEY_SEPARATOR = "|"


def _check_name(name: str, what: str) -> str:
    if not isinstance(name, str) or not _NAME_RE.match(name):
        raise UnknownSymbol(f"{what} name {name!r} is not a valid identifier")
    return name


def _check_degree(value: float, what: str) -> float:
    if not isinstance(value, (int, float)) or not (0.0 <= float(value) <= 1.0):
        raise DegreeOutOfRange(f"{what} degree {value!r} outside [0, 1]")
    return float(value)


class ReificationMode(str, Enum):
    """How relation/type combinations collapse into role keys.

    FULL keeps both participant types (w*v^2 possible keys).  SIMPLIFIED
    keeps only the subject's type and folds the object's types with a
    max (w*v keys), trading expressiveness for a smaller key space.
    """

    FULL = "full"
    SIMPLIFIED = "simplified"


@dataclass(frozen=True)
class RelationSymbol:
    """A named directed relation, optionally paired with an inverse.

    ``symmetric_with_inverse`` declares that grounding emits the same
    degree for ``r(x, y)`` and ``inverse(y, x)``.
    """

    name: str
    inverse: str | None = None
    symmetric_with_inverse: bool = False

    def __post_init__(self) -> None:
        _check_name(self.name, "relation")
        if self.inverse is not None:
            _check_name(self.inverse, "inverse relation")
        if self.symmetric_with_inverse and self.inverse is None:
            raise InvalidScene(
                f"relation {self.name!r} marked symmetric but declares no inverse"
            )


@dataclass(frozen=True)
class RoleKey:
    """A reified role: relation plus participant type(s).

    ``object_type`` is None exactly in SIMPLIFIED mode.  Keys order
    lexicographically over (relation, subject_type, object_type) so every
    enumeration and serialization of a key set is deterministic.
    """

    relation: str
    subject_type: str
    object_type: str | None = None

    def sort_key(self) -> tuple[str, str, str]:
        return (self.relation, self.subject_type, self.object_type or "")

    def __lt__(self, other: "RoleKey") -> bool:
        return self.sort_key() < other.sort_key()

    def to_string(self) -> str:
        parts = [self.relation, self.subject_type]
        if self.object_type is not None:
            parts.append(self.object_type)
        return KEY_SEPARATOR.join(parts)

    @classmethod
    def from_string(cls, text: str) -> "RoleKey":
        parts = text.split(KEY_SEPARATOR)
        if len(parts) == 2:
            return cls(parts[0], parts[1])
        if len(parts) == 3:
            return cls(parts[0], parts[1], parts[2])
        raise InvalidScene(f"malformed role key {text!r}")


@dataclass(frozen=True)
class InputInterface:
    """The closed vocabulary a memory graph is built over.

    Types and relations are stored sorted by name, so two interfaces with
    the same symbols compare equal regardless of declaration order.  The
    reification mode is part of the interface and fixed for the lifetime
    of any memory built on it.
    """

    types: tuple[str, ...]
    relations: tuple[RelationSymbol, ...]
    mode: ReificationMode = ReificationMode.SIMPLIFIED

    def __post_init__(self) -> None:
        if not self.types:
            raise InvalidScene("interface declares no element types")
        if not self.relations:
            raise InvalidScene("interface declares no relations")
        for name in self.types:
            _check_name(name, "type")
        if len(set(self.types)) != len(self.types):
            raise InvalidScene("duplicate type names in interface")
        names = [r.name for r in self.relations]
        if len(set(names)) != len(names):
            raise InvalidScene("duplicate relation names in interface")
        by_name = {r.name: r for r in self.relations}
        for rel in self.relations:
            if rel.inverse is not None:
                partner = by_name.get(rel.inverse)
                if partner is None:
                    raise UnknownSymbol(
                        f"relation {rel.name!r} declares unknown inverse {rel.inverse!r}"
                    )
                if partner.inverse != rel.name:
                    raise InvalidScene(
                        f"inverse pair {rel.name!r}/{rel.inverse!r} is not mutual"
                    )
        object.__setattr__(self, "types", tuple(sorted(self.types)))
        object.__setattr__(
            self, "relations", tuple(sorted(self.relations, key=lambda r: r.name))
        )
        if not isinstance(self.mode, ReificationMode):
            object.__setattr__(self, "mode", ReificationMode(self.mode))

    @property
    def type_count(self) -> int:
        return len(self.types)

    @property
    def relation_count(self) -> int:
        return len(self.relations)

    def relation_names(self) -> tuple[str, ...]:
        return tuple(r.name for r in self.relations)

    def has_type(self, name: str) -> bool:
        return name in self.types

    def relation(self, name: str) -> RelationSymbol:
        for rel in self.relations:
            if rel.name == name:
                return rel
        raise UnknownSymbol(f"relation {name!r} not declared by the interface")

    def contains_key(self, key: RoleKey) -> bool:
        if key.relation not in self.relation_names():
            return False
        if key.subject_type not in self.types:
            return False
        if self.mode is ReificationMode.FULL:
            return key.object_type in self.types
        return key.object_type is None

    def key_space_size(self) -> int:
        v, w = self.type_count, self.relation_count
        return w * v * v if self.mode is ReificationMode.FULL else w * v


def enumerate_keys(iface: InputInterface) -> list[RoleKey]:
    """All role keys of the interface in lexicographic order.

    A pure function of the interface: repeated calls yield identical
    orderings.  FULL mode yields w*v^2 keys, SIMPLIFIED w*v.
    """
    keys: list[RoleKey] = []
    for rel in iface.relations:
        for subject_type in iface.types:
            if iface.mode is ReificationMode.FULL:
                for object_type in iface.types:
                    keys.append(RoleKey(rel.name, subject_type, object_type))
            else:
                keys.append(RoleKey(rel.name, subject_type))
    return keys


@dataclass(frozen=True)
class Element:
    """A scene element with fuzzy memberships in the interface types."""

    id: str
    type_degrees: Mapping[str, float]

    def __post_init__(self) -> None:
        _check_name(self.id, "element")
        object.__setattr__(self, "type_degrees", dict(self.type_degrees))

    def degree(self, type_name: str) -> float:
        return self.type_degrees.get(type_name, 0.0)


@dataclass(frozen=True)
class Fact:
    """One fuzzy relation instance between two elements of a scene."""

    subject: str
    relation: str
    object: str
    degree: float


@dataclass(frozen=True)
class SceneObservation:
    """A scene at one time instant: elements plus the facts among them."""

    scene_id: str
    elements: tuple[Element, ...]
    facts: tuple[Fact, ...]
    timestamp: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "facts", tuple(self.facts))

    def element_map(self) -> dict[str, Element]:
        return {e.id: e for e in self.elements}

    def __iter__(self) -> Iterator[Fact]:
        return iter(self.facts)


def validate_scene(scene: SceneObservation, iface: InputInterface) -> SceneObservation:
    """Check a scene against the interface and the model invariants.

    Returns the scene unchanged when every symbol is declared, all degrees
    sit in [0, 1], every fact endpoint resolves, no (subject, object,
    relation) triple repeats, and every element holds at least one
    positive type degree.  An empty scene is valid.
    """
    elements = scene.element_map()
    if len(elements) != len(scene.elements):
        raise InvalidScene(f"scene {scene.scene_id!r} repeats an element id")
    for element in scene.elements:
        positive = False
        for type_name, degree in element.type_degrees.items():
            if not iface.has_type(type_name):
                raise UnknownSymbol(
                    f"element {element.id!r} uses undeclared type {type_name!r}"
                )
            _check_degree(degree, f"element {element.id!r} type {type_name!r}")
            positive = positive or degree > 0.0
        if not positive:
            raise DegreeOutOfRange(
                f"element {element.id!r} has no type degree above 0"
            )
    seen: set[tuple[str, str, str]] = set()
    relation_names = set(iface.relation_names())
    for fact in scene.facts:
        if fact.relation not in relation_names:
            raise UnknownSymbol(
                f"fact uses undeclared relation {fact.relation!r}"
            )
        if fact.subject not in elements or fact.object not in elements:
            raise DanglingFactEndpoint(
                f"fact ({fact.subject!r} {fact.relation} {fact.object!r}) "
                "references an element missing from the scene"
            )
        if fact.subject == fact.object:
            raise InvalidScene(
                f"fact on {fact.subject!r} relates an element to itself"
            )
        _check_degree(fact.degree, f"fact {fact.subject}-{fact.relation}-{fact.object}")
        triple = (fact.subject, fact.object, fact.relation)
        if triple in seen:
            raise DuplicateFact(
                f"duplicate fact ({fact.subject!r} {fact.relation} {fact.object!r})"
            )
        seen.add(triple)
    return scene
