"""Record service responses as frontend contract fixtures.

Drives the real HTTP service in-process and snapshots the responses the
console renders from.  Volatile fields (session ids, creation
timestamps) are normalized so re-recording is reproducible; every
degree/similarity/edge value is untouched.  Run from the repo root:

    python3 frontend/scripts/record_fixtures.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

from fastapi.testclient import TestClient

from fsit.scenarios import (
    ambiguous_pair_scene,
    cone_cylinder_plane_scene,
    sphere_line_scene,
    sphere_triangle_scene,
)
from fsit.service import create_app

FIXTURES = Path(__file__).parent.parent / "fixtures"

SESSION_PLACEHOLDER = "fixture-session"
CREATED_AT_PLACEHOLDER = "1970-01-01T00:00:00+00:00"


def normalize(document):
    if isinstance(document, dict):
        return {
            key: (
                SESSION_PLACEHOLDER
                if key == "session_id" and isinstance(value, str) and len(value) == 32
                else CREATED_AT_PLACEHOLDER
                if key == "created_at"
                else normalize(value)
            )
            for key, value in document.items()
        }
    if isinstance(document, list):
        return [normalize(item) for item in document]
    return document


def objects_payload(geo):
    return [
        {"id": o.id, "x": o.x, "y": o.y, "shapes": dict(o.shapes)} for o in geo.objects
    ]


def record() -> dict[str, dict]:
    client = TestClient(create_app())
    fixtures: dict[str, dict] = {}

    created = client.post("/sessions", json={"fuzziness": 0.3, "seed": 7})
    created.raise_for_status()
    fixtures["session"] = created.json()
    session = created.json()["session_id"]

    first = client.post(
        f"/sessions/{session}/scenes",
        json={"objects": objects_payload(cone_cylinder_plane_scene()), "scene_id": "e1"},
    )
    first.raise_for_status()
    fixtures["scene_first"] = first.json()

    second = client.post(
        f"/sessions/{session}/scenes",
        json={"objects": objects_payload(ambiguous_pair_scene()), "scene_id": "e2"},
    )
    second.raise_for_status()
    fixtures["scene_second"] = second.json()

    annotated = client.post(
        f"/sessions/{session}/annotations",
        json={"category_id": 1, "label": "full workbench"},
    )
    annotated.raise_for_status()

    what_if = client.post(
        f"/sessions/{session}/what-if",
        json={"objects": objects_payload(cone_cylinder_plane_scene()), "scene_id": "probe"},
    )
    what_if.raise_for_status()
    fixtures["what_if"] = what_if.json()

    memory = client.get(f"/sessions/{session}/memory")
    memory.raise_for_status()
    fixtures["memory"] = memory.json()

    # A high-fuzziness session whose two sphere configurations overlap
    # into mutual implication edges.
    mutual = client.post("/sessions", json={"fuzziness": 0.7, "seed": 7})
    mutual.raise_for_status()
    mutual_id = mutual.json()["session_id"]
    for geo in (sphere_triangle_scene(), sphere_line_scene()):
        response = client.post(
            f"/sessions/{mutual_id}/scenes",
            json={"objects": objects_payload(geo), "scene_id": geo.scene_id},
        )
        response.raise_for_status()
    memory_mutual = client.get(f"/sessions/{mutual_id}/memory")
    memory_mutual.raise_for_status()
    fixtures["memory_mutual"] = memory_mutual.json()

    empty = client.post("/sessions", json={"fuzziness": 0.3})
    empty.raise_for_status()
    empty_memory = client.get(f"/sessions/{empty.json()['session_id']}/memory")
    empty_memory.raise_for_status()
    fixtures["memory_empty"] = empty_memory.json()

    return {name: normalize(doc) for name, doc in fixtures.items()}


def main() -> int:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    for name, doc in record().items():
        path = FIXTURES / f"{name}.json"
        path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
