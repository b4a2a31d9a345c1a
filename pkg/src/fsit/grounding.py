"""Directional kernels: 2D tabletop layouts to fuzzy scene facts.

Objects live in a workbench frame measured in meters.  Each directional
relation owns a unit direction; the degree of ``r(x, y)`` combines the
angular alignment of the displacement ``y - x`` with that direction and
a radial falloff, so ``front(x, y)`` equals ``behind(y, x)`` exactly by
construction.  Optional noise injection perturbs positions and shape
confidences for experiment replication; noise-free grounding is a pure
function of the layout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import CoincidentPositions, InvalidScene
from .model import (
    Element,
    Fact,
    InputInterface,
    ReificationMode,
    RelationSymbol,
    SceneObservation,
    validate_scene,
)

DEFAULT_SHAPE_TYPES = ("CONE", "CYLINDER", "PLANE", "SPHERE")
DIRECTIONAL_RELATIONS = ("front", "right", "behind", "left")


def spatial_interface(
    mode: ReificationMode = ReificationMode.SIMPLIFIED,
    types: Sequence[str] = DEFAULT_SHAPE_TYPES,
) -> InputInterface:
    """The four-direction tabletop interface with inverse/symmetric pairs."""
    relations = (
        RelationSymbol("front", inverse="behind", symmetric_with_inverse=True),
        RelationSymbol("behind", inverse="front", symmetric_with_inverse=True),
        RelationSymbol("right", inverse="left", symmetric_with_inverse=True),
        RelationSymbol("left", inverse="right", symmetric_with_inverse=True),
    )
    return InputInterface(tuple(types), relations, mode)


@dataclass(frozen=True)
class GeometricObject:
    """An object with a 2D position and fuzzy shape confidences."""

    id: str
    x: float
    y: float
    shapes: Mapping[str, float]

    def __post_init__(self) -> None:
        object.__setattr__(self, "shapes", dict(self.shapes))
        if not any(confidence > 0.0 for confidence in self.shapes.values()):
            raise InvalidScene(f"object {self.id!r} has no positive shape confidence")

    @property
    def position(self) -> tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class KernelConfig:
    """Parameters of the separable angular-by-radial directional kernel.

    The four relations point at successive -pi/2 rotations of
    ``base_direction`` (front, right, behind, left for the default +y
    base).  Radial response is 1 out to ``distance_plateau``, decays
    linearly to 0 at ``distance_cutoff``, and is 0 beyond.  Facts whose
    degree is at or below ``degree_floor`` are dropped to keep belief
    bags sparse.
    """

    relations: tuple[str, str, str, str] = DIRECTIONAL_RELATIONS
    base_direction: tuple[float, float] = (0.0, 1.0)
    angular_exponent: float = 2.0
    distance_plateau: float = 0.3
    distance_cutoff: float = 1.0
    degree_floor: float = 0.01

    def __post_init__(self) -> None:
        if len(set(self.relations)) != 4:
            raise InvalidScene("kernel needs four distinct relation names")
        norm = math.hypot(*self.base_direction)
        if norm == 0.0:
            raise InvalidScene("kernel base direction must be nonzero")
        if self.angular_exponent < 1.0:
            raise InvalidScene("angular exponent must be >= 1")
        if not (0.0 < self.distance_plateau < self.distance_cutoff):
            raise InvalidScene("need 0 < distance_plateau < distance_cutoff")
        object.__setattr__(
            self,
            "base_direction",
            (self.base_direction[0] / norm, self.base_direction[1] / norm),
        )

    def direction(self, relation: str) -> tuple[float, float]:
        """Unit direction of a relation: successive clockwise quarter turns."""
        dx, dy = self.base_direction
        for name in self.relations:
            if name == relation:
                return (dx, dy)
            dx, dy = dy, -dx
        raise InvalidScene(f"relation {relation!r} is not a kernel relation")


@dataclass(frozen=True)
class NoiseConfig:
    """Perturbation model for replicating noisy perception.

    Position errors displace each object by a magnitude drawn as
    ``|N(position_mean, position_sigma)|`` in a uniformly random
    direction.  Shape errors add ``|N(shape_mean, shape_sigma)|`` with a
    random sign to each confidence, clipped back to [0, 1]; if clipping
    zeroes out every confidence of an object, its largest one is pinned
    to a small floor so the element stays expressible.
    """

    position_mean: float = 0.015
    position_sigma: float = 0.038
    shape_mean: float = 0.093
    shape_sigma: float = 0.195
    seed: int = 0

    def __post_init__(self) -> None:
        if self.position_sigma < 0 or self.shape_sigma < 0:
            raise InvalidScene("noise sigmas must be >= 0")


def relation_degree(
    cfg: KernelConfig,
    relation: str,
    from_position: tuple[float, float],
    to_position: tuple[float, float],
) -> float:
    """Degree to which ``to`` lies in ``relation``'s direction from ``from``."""
    dx = to_position[0] - from_position[0]
    dy = to_position[1] - from_position[1]
    distance = math.hypot(dx, dy)
    if distance == 0.0:
        raise CoincidentPositions(
            f"relation degree undefined for coincident positions {from_position}"
        )
    ux, uy = cfg.direction(relation)
    cosine = (dx * ux + dy * uy) / distance
    if cosine <= 0.0:
        return 0.0
    angular = cosine**cfg.angular_exponent
    if distance <= cfg.distance_plateau:
        radial = 1.0
    elif distance >= cfg.distance_cutoff:
        radial = 0.0
    else:
        radial = 1.0 - (distance - cfg.distance_plateau) / (
            cfg.distance_cutoff - cfg.distance_plateau
        )
    return angular * radial


def apply_noise(
    objects: Sequence[GeometricObject],
    noise: NoiseConfig,
    rng: np.random.Generator | None = None,
) -> list[GeometricObject]:
    """Perturb positions and shape confidences; deterministic per seed."""
    if rng is None:
        rng = np.random.default_rng(noise.seed)
    noised = []
    for obj in objects:
        angle = rng.uniform(0.0, 2.0 * math.pi)
        magnitude = abs(rng.normal(noise.position_mean, noise.position_sigma))
        x = obj.x + magnitude * math.cos(angle)
        y = obj.y + magnitude * math.sin(angle)
        shapes = {}
        for shape, confidence in sorted(obj.shapes.items()):
            delta = abs(rng.normal(noise.shape_mean, noise.shape_sigma))
            sign = 1.0 if rng.random() < 0.5 else -1.0
            shapes[shape] = min(1.0, max(0.0, confidence + sign * delta))
        if not any(value > 0.0 for value in shapes.values()):
            best = max(sorted(obj.shapes), key=lambda s: obj.shapes[s])
            shapes[best] = 0.01
        noised.append(GeometricObject(obj.id, x, y, shapes))
    return noised


def ground(
    objects: Sequence[GeometricObject],
    cfg: KernelConfig,
    iface: InputInterface,
    noise: NoiseConfig | None = None,
    *,
    rng: np.random.Generator | None = None,
    scene_id: str = "scene",
    timestamp: int = 0,
) -> SceneObservation:
    """Emit one fact per ordered object pair per relation above the floor.

    Element type degrees are copied from the (possibly noised) shape
    confidences.  Only relations declared by both the kernel and the
    interface are grounded; the result is validated before returning.
    """
    if not objects:
        raise InvalidScene("grounding needs at least one object")
    if noise is not None:
        objects = apply_noise(objects, noise, rng)
    elements = tuple(
        Element(obj.id, {s: c for s, c in sorted(obj.shapes.items()) if c > 0.0})
        for obj in objects
    )
    relations = [r for r in cfg.relations if r in iface.relation_names()]
    facts = []
    for subject in objects:
        for obj in objects:
            if subject.id == obj.id:
                continue
            for relation in relations:
                degree = relation_degree(cfg, relation, subject.position, obj.position)
                if degree > cfg.degree_floor:
                    facts.append(Fact(subject.id, relation, obj.id, degree))
    scene = SceneObservation(scene_id, elements, tuple(facts), timestamp)
    return validate_scene(scene, iface)


@dataclass(frozen=True)
class GeometricScene:
    """A geometric scene document: layout plus optional kernel/noise blocks."""

    scene_id: str
    objects: tuple[GeometricObject, ...]
    kernel: KernelConfig | None = None
    noise: NoiseConfig | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "objects", tuple(self.objects))
