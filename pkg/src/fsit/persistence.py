"""Versioned JSON documents and DOT export.

One self-describing textual format per artifact (scene, geometric scene,
memory snapshot), all serialized with sorted keys and stable float
repr so save -> load -> save is byte-identical.  DOT labels round
degrees to 2 decimals; persistence keeps full precision.  See
docs/FORMATS.md for the field-by-field reference.
"""

from __future__ import annotations

import json
from typing import Any, Iterable, Mapping

from .engine import (
    BeliefBag,
    Category,
    ClassificationGraph,
    MemoryGraph,
    Provenance,
)
from .errors import ParseError, SchemaVersionMismatch, ValidationError
from .fuzzy import ShoulderRestriction
from .grounding import GeometricObject, GeometricScene, KernelConfig, NoiseConfig
from .model import (
    Element,
    Fact,
    InputInterface,
    ReificationMode,
    RelationSymbol,
    RoleKey,
    SceneObservation,
)

SCENE_SCHEMA_VERSION = 1
GEOMETRIC_SCHEMA_VERSION = 1
MEMORY_SCHEMA_VERSION = 1


def dumps(doc: Mapping[str, Any]) -> str:
    """Canonical document text: sorted keys, 2-space indent, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def loads(text: str) -> dict[str, Any]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"malformed document at line {exc.lineno} column {exc.colno} "
            f"(offset {exc.pos}): {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise ValidationError("document root must be an object")
    return doc


def _field(doc: Mapping[str, Any], name: str, kind: type, path: str) -> Any:
    if name not in doc:
        raise ValidationError(f"{path}: missing field {name!r}")
    value = doc[name]
    if kind is float and isinstance(value, int):
        value = float(value)
    if not isinstance(value, kind):
        raise ValidationError(
            f"{path}.{name}: expected {kind.__name__}, got {type(value).__name__}"
        )
    return value


def _check_version(doc: Mapping[str, Any], expected: int, kind: str) -> None:
    version = _field(doc, "schema_version", int, kind)
    if version != expected:
        raise SchemaVersionMismatch(
            f"{kind} schema version {version} not supported (expected {expected})"
        )
    declared = _field(doc, "kind", str, kind)
    if declared != kind:
        raise ValidationError(f"expected a {kind!r} document, got {declared!r}")


# -- input interface -----------------------------------------------------------


def interface_to_doc(iface: InputInterface) -> dict[str, Any]:
    return {
        "types": list(iface.types),
        "relations": [
            {
                "name": rel.name,
                "inverse": rel.inverse,
                "symmetric_with_inverse": rel.symmetric_with_inverse,
            }
            for rel in iface.relations
        ],
        "mode": iface.mode.value,
    }


def interface_from_doc(doc: Mapping[str, Any], path: str = "interface") -> InputInterface:
    types = tuple(_field(doc, "types", list, path))
    relations = []
    for index, rel in enumerate(_field(doc, "relations", list, path)):
        rel_path = f"{path}.relations[{index}]"
        if not isinstance(rel, dict):
            raise ValidationError(f"{rel_path}: expected object")
        relations.append(
            RelationSymbol(
                name=_field(rel, "name", str, rel_path),
                inverse=rel.get("inverse"),
                symmetric_with_inverse=bool(rel.get("symmetric_with_inverse", False)),
            )
        )
    mode = _field(doc, "mode", str, path)
    try:
        return InputInterface(types, tuple(relations), ReificationMode(mode))
    except ValueError as exc:
        raise ValidationError(f"{path}.mode: unknown mode {mode!r}") from exc


# -- symbolic scenes -------------------------------------------------------------


def scene_to_doc(scene: SceneObservation, iface: InputInterface) -> dict[str, Any]:
    return {
        "schema_version": SCENE_SCHEMA_VERSION,
        "kind": "scene",
        "scene_id": scene.scene_id,
        "timestamp": scene.timestamp,
        "interface": interface_to_doc(iface),
        "elements": {
            element.id: {t: d for t, d in sorted(element.type_degrees.items())}
            for element in sorted(scene.elements, key=lambda e: e.id)
        },
        "facts": [
            [fact.subject, fact.relation, fact.object, fact.degree]
            for fact in sorted(
                scene.facts, key=lambda f: (f.subject, f.relation, f.object)
            )
        ],
    }


def save_scene(scene: SceneObservation, iface: InputInterface) -> str:
    return dumps(scene_to_doc(scene, iface))


def scene_from_doc(doc: Mapping[str, Any]) -> tuple[SceneObservation, InputInterface]:
    _check_version(doc, SCENE_SCHEMA_VERSION, "scene")
    iface = interface_from_doc(_field(doc, "interface", dict, "scene"))
    elements = []
    for element_id, degrees in sorted(_field(doc, "elements", dict, "scene").items()):
        if not isinstance(degrees, dict):
            raise ValidationError(f"elements.{element_id}: expected object")
        elements.append(Element(element_id, degrees))
    facts = []
    for index, row in enumerate(_field(doc, "facts", list, "scene")):
        if not (isinstance(row, list) and len(row) == 4):
            raise ValidationError(
                f"facts[{index}]: expected [subject, relation, object, degree]"
            )
        facts.append(Fact(row[0], row[1], row[2], float(row[3])))
    scene = SceneObservation(
        scene_id=_field(doc, "scene_id", str, "scene"),
        elements=tuple(elements),
        facts=tuple(facts),
        timestamp=int(doc.get("timestamp", 0)),
    )
    return scene, iface


def load_scene(text: str) -> tuple[SceneObservation, InputInterface]:
    return scene_from_doc(loads(text))


# -- geometric scenes -------------------------------------------------------------


def kernel_to_doc(cfg: KernelConfig) -> dict[str, Any]:
    return {
        "relations": list(cfg.relations),
        "base_direction": list(cfg.base_direction),
        "angular_exponent": cfg.angular_exponent,
        "distance_plateau": cfg.distance_plateau,
        "distance_cutoff": cfg.distance_cutoff,
        "degree_floor": cfg.degree_floor,
    }


def kernel_from_doc(doc: Mapping[str, Any], path: str = "kernel") -> KernelConfig:
    return KernelConfig(
        relations=tuple(_field(doc, "relations", list, path)),
        base_direction=tuple(_field(doc, "base_direction", list, path)),
        angular_exponent=_field(doc, "angular_exponent", float, path),
        distance_plateau=_field(doc, "distance_plateau", float, path),
        distance_cutoff=_field(doc, "distance_cutoff", float, path),
        degree_floor=_field(doc, "degree_floor", float, path),
    )


def noise_to_doc(noise: NoiseConfig) -> dict[str, Any]:
    return {
        "position_mean": noise.position_mean,
        "position_sigma": noise.position_sigma,
        "shape_mean": noise.shape_mean,
        "shape_sigma": noise.shape_sigma,
        "seed": noise.seed,
    }


def noise_from_doc(doc: Mapping[str, Any], path: str = "noise") -> NoiseConfig:
    return NoiseConfig(
        position_mean=_field(doc, "position_mean", float, path),
        position_sigma=_field(doc, "position_sigma", float, path),
        shape_mean=_field(doc, "shape_mean", float, path),
        shape_sigma=_field(doc, "shape_sigma", float, path),
        seed=_field(doc, "seed", int, path),
    )


def geometric_scene_to_doc(scene: GeometricScene) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "schema_version": GEOMETRIC_SCHEMA_VERSION,
        "kind": "geometric_scene",
        "scene_id": scene.scene_id,
        "objects": [
            {
                "id": obj.id,
                "x": obj.x,
                "y": obj.y,
                "shapes": {s: c for s, c in sorted(obj.shapes.items())},
            }
            for obj in scene.objects
        ],
    }
    if scene.kernel is not None:
        doc["kernel"] = kernel_to_doc(scene.kernel)
    if scene.noise is not None:
        doc["noise"] = noise_to_doc(scene.noise)
    return doc


def save_geometric_scene(scene: GeometricScene) -> str:
    return dumps(geometric_scene_to_doc(scene))


def geometric_scene_from_doc(doc: Mapping[str, Any]) -> GeometricScene:
    _check_version(doc, GEOMETRIC_SCHEMA_VERSION, "geometric_scene")
    objects = []
    for index, entry in enumerate(_field(doc, "objects", list, "geometric_scene")):
        path = f"objects[{index}]"
        if not isinstance(entry, dict):
            raise ValidationError(f"{path}: expected object")
        objects.append(
            GeometricObject(
                id=_field(entry, "id", str, path),
                x=_field(entry, "x", float, path),
                y=_field(entry, "y", float, path),
                shapes=_field(entry, "shapes", dict, path),
            )
        )
    kernel = kernel_from_doc(doc["kernel"]) if "kernel" in doc else None
    noise = noise_from_doc(doc["noise"]) if "noise" in doc else None
    return GeometricScene(
        scene_id=_field(doc, "scene_id", str, "geometric_scene"),
        objects=tuple(objects),
        kernel=kernel,
        noise=noise,
    )


def load_geometric_scene(text: str) -> GeometricScene:
    return geometric_scene_from_doc(loads(text))


# -- memory snapshots ---------------------------------------------------------------


def memory_to_doc(memory: MemoryGraph) -> dict[str, Any]:
    return {
        "schema_version": MEMORY_SCHEMA_VERSION,
        "kind": "memory",
        "created_at": memory.created_at,
        "interface": interface_to_doc(memory.interface),
        "fuzziness": memory.fuzziness,
        "next_category_id": memory.next_category_id,
        "categories": [
            {
                "id": category.id,
                "restrictions": {
                    key.to_string(): restriction.k
                    for key, restriction in category.restrictions.items()
                },
                "scene_id": category.provenance.scene_id,
                "timestamp": category.provenance.timestamp,
                "annotation": category.annotation,
            }
            for _, category in sorted(memory.categories.items())
        ],
        "edges": [
            {"child": child, "parent": parent, "degree": degree}
            for (child, parent), degree in sorted(memory.edges.items())
        ],
    }


def save_memory(memory: MemoryGraph) -> str:
    """Serialize a memory graph; save -> load -> save is byte-stable."""
    return dumps(memory_to_doc(memory))


def memory_from_doc(doc: Mapping[str, Any]) -> MemoryGraph:
    _check_version(doc, MEMORY_SCHEMA_VERSION, "memory")
    iface = interface_from_doc(_field(doc, "interface", dict, "memory"))
    memory = MemoryGraph(
        iface,
        _field(doc, "fuzziness", float, "memory"),
        created_at=_field(doc, "created_at", str, "memory"),
    )
    for index, entry in enumerate(_field(doc, "categories", list, "memory")):
        path = f"categories[{index}]"
        if not isinstance(entry, dict):
            raise ValidationError(f"{path}: expected object")
        restrictions = {}
        for key_text, k in _field(entry, "restrictions", dict, path).items():
            key = RoleKey.from_string(key_text)
            if not iface.contains_key(key):
                raise ValidationError(
                    f"{path}.restrictions: key {key_text!r} outside the interface"
                )
            restrictions[key] = ShoulderRestriction(float(k), memory.fuzziness)
        category = Category(
            id=_field(entry, "id", int, path),
            restrictions=restrictions,
            fuzziness=memory.fuzziness,
            provenance=Provenance(
                _field(entry, "scene_id", str, path),
                _field(entry, "timestamp", int, path),
            ),
            annotation=entry.get("annotation"),
        )
        if category.id in memory.categories:
            raise ValidationError(f"{path}: duplicate category id {category.id}")
        memory.categories[category.id] = category
    for index, entry in enumerate(_field(doc, "edges", list, "memory")):
        path = f"edges[{index}]"
        if not isinstance(entry, dict):
            raise ValidationError(f"{path}: expected object")
        child = _field(entry, "child", int, path)
        parent = _field(entry, "parent", int, path)
        degree = _field(entry, "degree", float, path)
        for endpoint in (child, parent):
            if endpoint not in memory.categories:
                raise ValidationError(f"{path}: unknown category {endpoint}")
        if not (0.0 < degree <= 1.0):
            raise ValidationError(f"{path}: edge degree {degree} outside (0, 1]")
        memory.edges[(child, parent)] = degree
    memory.next_category_id = _field(doc, "next_category_id", int, "memory")
    if memory.categories and memory.next_category_id <= max(memory.categories):
        raise ValidationError("memory.next_category_id must exceed every category id")
    return memory


def load_memory(text: str) -> MemoryGraph:
    return memory_from_doc(loads(text))


# -- experiment specs -----------------------------------------------------------------

SWEEP_SPEC_SCHEMA_VERSION = 1
BENCH_SPEC_SCHEMA_VERSION = 1


def sweep_spec_to_doc(spec) -> dict[str, Any]:
    from .experiments import SweepSpec  # local import to avoid a module cycle

    assert isinstance(spec, SweepSpec)
    return {
        "schema_version": SWEEP_SPEC_SCHEMA_VERSION,
        "kind": "sweep_spec",
        "interface": interface_to_doc(spec.interface),
        "kernel": kernel_to_doc(spec.kernel),
        "objects": [
            {"id": o.id, "x": o.x, "y": o.y, "shapes": dict(sorted(o.shapes.items()))}
            for o in spec.objects
        ],
        "moving_object": spec.moving_object_id,
        "bounds": list(spec.bounds),
        "resolution": list(spec.resolution),
        "fuzziness_values": list(spec.fuzziness_values),
        "noise": noise_to_doc(spec.noise) if spec.noise else None,
        "seed": spec.seed,
    }


def sweep_spec_from_doc(doc: Mapping[str, Any]):
    from .experiments import SweepSpec

    _check_version(doc, SWEEP_SPEC_SCHEMA_VERSION, "sweep_spec")
    objects = []
    for index, entry in enumerate(_field(doc, "objects", list, "sweep_spec")):
        path = f"objects[{index}]"
        objects.append(
            GeometricObject(
                id=_field(entry, "id", str, path),
                x=_field(entry, "x", float, path),
                y=_field(entry, "y", float, path),
                shapes=_field(entry, "shapes", dict, path),
            )
        )
    noise = doc.get("noise")
    return SweepSpec(
        interface=interface_from_doc(_field(doc, "interface", dict, "sweep_spec")),
        kernel=kernel_from_doc(_field(doc, "kernel", dict, "sweep_spec")),
        objects=tuple(objects),
        moving_object_id=_field(doc, "moving_object", str, "sweep_spec"),
        bounds=tuple(_field(doc, "bounds", list, "sweep_spec")),
        resolution=tuple(_field(doc, "resolution", list, "sweep_spec")),
        fuzziness_values=tuple(_field(doc, "fuzziness_values", list, "sweep_spec")),
        noise=noise_from_doc(noise) if noise else None,
        seed=int(doc.get("seed", 0)),
    )


def reseed_sweep_spec(spec, seed: int):
    from dataclasses import replace

    return replace(spec, seed=seed)


def bench_spec_to_doc(spec) -> dict[str, Any]:
    from .experiments import BenchSpec

    assert isinstance(spec, BenchSpec)
    return {
        "schema_version": BENCH_SPEC_SCHEMA_VERSION,
        "kind": "bench_spec",
        "v_values": list(spec.v_values),
        "w_values": list(spec.w_values),
        "scene_count": spec.scene_count,
        "repetitions": spec.repetitions,
        "seed": spec.seed,
        "fuzziness": spec.fuzziness,
        "mode": spec.mode.value,
    }


def bench_spec_from_doc(doc: Mapping[str, Any]):
    from .experiments import BenchSpec

    _check_version(doc, BENCH_SPEC_SCHEMA_VERSION, "bench_spec")
    return BenchSpec(
        v_values=tuple(_field(doc, "v_values", list, "bench_spec")),
        w_values=tuple(_field(doc, "w_values", list, "bench_spec")),
        scene_count=_field(doc, "scene_count", int, "bench_spec"),
        repetitions=_field(doc, "repetitions", int, "bench_spec"),
        seed=_field(doc, "seed", int, "bench_spec"),
        fuzziness=_field(doc, "fuzziness", float, "bench_spec"),
        mode=ReificationMode(_field(doc, "mode", str, "bench_spec")),
    )


# -- belief bags (service/debug payloads) ---------------------------------------------


def beliefs_to_doc(beliefs: BeliefBag) -> dict[str, Any]:
    return {
        "scene_id": beliefs.scene_id,
        "mode": beliefs.mode.value,
        "entries": {
            key.to_string(): cardinality
            for key, cardinality in beliefs.entries.items()
        },
        "total_energy": beliefs.total_energy,
    }


def classification_to_doc(graph: ClassificationGraph) -> dict[str, Any]:
    return {
        "scene_id": graph.scene_id,
        "nodes": [
            {
                "category_id": node.category_id,
                "degree": node.degree,
                "similarity": node.similarity,
                "annotation": node.annotation,
            }
            for _, node in sorted(graph.nodes.items())
        ],
        "edges": [
            {"child": child, "parent": parent, "degree": degree}
            for (child, parent), degree in sorted(graph.edges.items())
        ],
    }


# -- DOT export -----------------------------------------------------------------------


ROOT_NODE = "root"


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def _category_label(category_id: int, annotation: str | None) -> str:
    label = f"Phi{category_id}"
    if annotation:
        label += f"\\n{_dot_escape(annotation)}"
    return label


def _transitively_implied(
    edges: Mapping[tuple[int, int], float]
) -> set[tuple[int, int]]:
    # An edge of degree 1 is display-redundant when a 2+ step chain of
    # degree-1 edges connects the same pair.
    ones = {(c, p) for (c, p), d in edges.items() if d == 1.0}
    adjacency: dict[int, set[int]] = {}
    for child, parent in ones:
        adjacency.setdefault(child, set()).add(parent)
    implied = set()
    for child, parent in ones:
        stack = [n for n in adjacency.get(child, ()) if n != parent]
        seen = set(stack)
        while stack:
            node = stack.pop()
            if parent in adjacency.get(node, ()):
                implied.add((child, parent))
                break
            for nxt in adjacency.get(node, ()):
                if nxt not in seen and nxt != parent:
                    seen.add(nxt)
                    stack.append(nxt)
    return implied


def export_dot(
    graph: MemoryGraph | ClassificationGraph,
    *,
    reduce_transitive: bool = False,
    highlight: Iterable[int] = (),
) -> str:
    """Deterministic DOT text for a memory or classification graph.

    Memory graphs include the implicit root with its degree-1 edges;
    ``reduce_transitive`` drops display-redundant degree-1 edges (the
    stored graph is never modified).  Classification nodes carry the
    degree/similarity badge; ``highlight`` tints the listed categories.
    """
    highlighted = set(highlight)
    lines = ["digraph memory {", "  rankdir=BT;", '  node [shape=ellipse];']
    if isinstance(graph, MemoryGraph):
        lines.append(f'  {ROOT_NODE} [label="Phi", shape=doublecircle];')
        edges = dict(graph.edges)
        dropped = _transitively_implied(edges) if reduce_transitive else set()
        has_parent = {child for (child, _parent) in edges}
        for category_id, category in sorted(graph.categories.items()):
            style = ", style=filled, fillcolor=salmon" if category_id in highlighted else ""
            lines.append(
                f'  c{category_id} [label="{_category_label(category_id, category.annotation)}"{style}];'
            )
        for category_id in sorted(graph.categories):
            if not reduce_transitive or category_id not in has_parent:
                lines.append(f'  c{category_id} -> {ROOT_NODE} [label="1.00"];')
        for (child, parent), degree in sorted(edges.items()):
            if (child, parent) in dropped:
                continue
            lines.append(f'  c{child} -> c{parent} [label="{degree:.2f}"];')
    else:
        lines[0] = "digraph classification {"
        for category_id, node in sorted(graph.nodes.items()):
            label = _category_label(category_id, node.annotation)
            label += f"\\np={node.degree:.2f} d={node.similarity:.2f}"
            style = ", style=filled, fillcolor=salmon" if category_id in highlighted else ""
            lines.append(f'  c{category_id} [label="{label}"{style}];')
        for (child, parent), degree in sorted(graph.edges.items()):
            lines.append(f'  c{child} -> c{parent} [label="{degree:.2f}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
