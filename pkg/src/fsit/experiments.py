"""Scripted experiment drivers: classification sweeps and timing benches.

A sweep learns one category from a reference layout, then re-grounds the
scene with one object moved across a grid and classifies every cell,
recording degree and similarity per fuzziness value.  The bench drives
random scene sequences through interfaces of growing size and reports
per-phase wall-clock timings.  Everything is deterministic under a
fixed seed; summaries use the population standard deviation so repeated
runs are bit-for-bit identical.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .engine import (
    Category,
    classification_degree,
    encode,
    learn,
    MemoryGraph,
    run_sequence,
    similarity,
)
from .errors import CoincidentPositions, InvalidScene
from .grounding import GeometricObject, KernelConfig, NoiseConfig, ground
from .model import (
    Element,
    Fact,
    InputInterface,
    ReificationMode,
    RelationSymbol,
    SceneObservation,
)

SWEEP_CSV_HEADER = ("fuzziness", "ix", "iy", "x", "y", "degree", "similarity", "classified")
SCATTER_CSV_HEADER = ("fuzziness", "degree", "similarity")
SUMMARY_CSV_HEADER = ("fuzziness", "classified_count", "mean_degree", "degree_stddev")
BENCH_CSV_HEADER = ("v", "w", "step", "phase", "seconds", "memory_size", "learned")


@dataclass(frozen=True)
class SweepSpec:
    """A grid of scenes derived from one reference layout.

    ``objects`` hold the layout at learning time, with ``moving_object_id``
    naming the object relocated to every grid cell afterwards.  Noise, when
    configured, perturbs the swept scenes only; the reference scene is
    grounded clean so the learned restrictions sit exactly at the layout's
    cardinalities.
    """

    interface: InputInterface
    kernel: KernelConfig
    objects: tuple[GeometricObject, ...]
    moving_object_id: str
    bounds: tuple[float, float, float, float]
    resolution: tuple[int, int]
    fuzziness_values: tuple[float, ...]
    noise: NoiseConfig | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.resolution[0] < 2 or self.resolution[1] < 2:
            raise InvalidScene("sweep resolution must be >= 2 per axis")
        if not any(obj.id == self.moving_object_id for obj in self.objects):
            raise InvalidScene(
                f"moving object {self.moving_object_id!r} not in the layout"
            )
        if not self.fuzziness_values:
            raise InvalidScene("sweep needs at least one fuzziness value")

    def grid(self) -> tuple[np.ndarray, np.ndarray]:
        x_min, x_max, y_min, y_max = self.bounds
        return (
            np.linspace(x_min, x_max, self.resolution[0]),
            np.linspace(y_min, y_max, self.resolution[1]),
        )


@dataclass(frozen=True)
class CellResult:
    fuzziness: float
    ix: int
    iy: int
    x: float
    y: float
    degree: float
    similarity: float
    classified: bool


@dataclass(frozen=True)
class SweepSummary:
    fuzziness: float
    classified_count: int
    mean_degree: float
    degree_stddev: float


@dataclass(frozen=True)
class SweepResult:
    cells: tuple[CellResult, ...]
    summaries: tuple[SweepSummary, ...]
    categories: tuple[Category, ...]

    def classified(self, fuzziness: float) -> list[CellResult]:
        return [
            c for c in self.cells if c.fuzziness == fuzziness and c.classified
        ]

    def peak_cell(self, fuzziness: float) -> CellResult:
        candidates = [c for c in self.cells if c.fuzziness == fuzziness]
        return max(candidates, key=lambda c: (c.degree, -c.ix, -c.iy))


def distribution_sweep(spec: SweepSpec) -> SweepResult:
    """Learn from the reference layout, then classify one scene per cell."""
    reference = ground(
        spec.objects, spec.kernel, spec.interface, scene_id="reference"
    )
    reference_beliefs = encode(reference, spec.interface)
    categories = tuple(
        learn(reference_beliefs, fuzziness, category_id=index + 1)
        for index, fuzziness in enumerate(spec.fuzziness_values)
    )
    fixed = [o for o in spec.objects if o.id != spec.moving_object_id]
    mover = next(o for o in spec.objects if o.id == spec.moving_object_id)
    xs, ys = spec.grid()
    rng = np.random.default_rng(spec.seed)
    cells: list[CellResult] = []
    for ix, x in enumerate(xs):
        for iy, y in enumerate(ys):
            layout = fixed + [GeometricObject(mover.id, float(x), float(y), mover.shapes)]
            try:
                scene = ground(
                    layout,
                    spec.kernel,
                    spec.interface,
                    spec.noise,
                    rng=rng,
                    scene_id=f"cell_{ix}_{iy}",
                )
            except CoincidentPositions:
                # The mover landed exactly on a fixed object; the cell is
                # not arrangeable and counts as unclassified.
                for fuzziness in spec.fuzziness_values:
                    cells.append(
                        CellResult(fuzziness, ix, iy, float(x), float(y), 0.0, 0.0, False)
                    )
                continue
            beliefs = encode(scene, spec.interface)
            for fuzziness, category in zip(spec.fuzziness_values, categories):
                degree = (
                    classification_degree(category, beliefs)
                    if not beliefs.is_empty()
                    else 0.0
                )
                cells.append(
                    CellResult(
                        fuzziness=fuzziness,
                        ix=ix,
                        iy=iy,
                        x=float(x),
                        y=float(y),
                        degree=degree,
                        similarity=similarity(category, beliefs) if degree > 0.0 else 0.0,
                        classified=degree > 0.0,
                    )
                )
    summaries = []
    for fuzziness in spec.fuzziness_values:
        degrees = np.array(
            [c.degree for c in cells if c.fuzziness == fuzziness and c.classified]
        )
        summaries.append(
            SweepSummary(
                fuzziness=fuzziness,
                classified_count=int(degrees.size),
                mean_degree=float(degrees.mean()) if degrees.size else 0.0,
                degree_stddev=float(degrees.std()) if degrees.size else 0.0,
            )
        )
    return SweepResult(tuple(cells), tuple(summaries), categories)


def similarity_scatter(spec: SweepSpec) -> list[tuple[float, float, float]]:
    """(fuzziness, degree, similarity) for every classified sweep cell."""
    result = distribution_sweep(spec)
    return [
        (cell.fuzziness, cell.degree, cell.similarity)
        for cell in result.cells
        if cell.classified
    ]


# -- random scenes and the timing bench ------------------------------------------


def synthetic_interface(
    type_count: int,
    relation_count: int,
    mode: ReificationMode = ReificationMode.SIMPLIFIED,
) -> InputInterface:
    """A throwaway vocabulary of the requested size for bench runs."""
    types = tuple(f"T{i}" for i in range(1, type_count + 1))
    relations = tuple(RelationSymbol(f"r{i}") for i in range(1, relation_count + 1))
    return InputInterface(types, relations, mode)


def random_scene(
    rng: np.random.Generator,
    iface: InputInterface,
    scene_id: str,
    *,
    min_elements: int = 3,
    max_elements: int = 6,
    fact_probability: float = 0.5,
    crisp: bool = False,
) -> SceneObservation:
    """A random valid scene over the interface; crisp mode uses {0,1} degrees."""
    count = int(rng.integers(min_elements, max_elements + 1))
    elements = []
    for index in range(count):
        picks = rng.choice(
            len(iface.types),
            size=1 if crisp else int(rng.integers(1, min(2, len(iface.types)) + 1)),
            replace=False,
        )
        degrees = {
            iface.types[int(t)]: 1.0 if crisp else float(rng.uniform(0.3, 1.0))
            for t in np.atleast_1d(picks)
        }
        elements.append(Element(f"g{index}", degrees))
    relation_names = iface.relation_names()
    facts = []
    for subject in elements:
        for obj in elements:
            if subject.id == obj.id:
                continue
            if rng.random() < fact_probability:
                relation = relation_names[int(rng.integers(len(relation_names)))]
                degree = 1.0 if crisp else float(rng.uniform(0.2, 1.0))
                facts.append(Fact(subject.id, relation, obj.id, degree))
    if not facts:
        facts.append(Fact(elements[0].id, relation_names[0], elements[1].id, 1.0))
    return SceneObservation(scene_id, tuple(elements), tuple(facts))


@dataclass(frozen=True)
class BenchRow:
    v: int
    w: int
    step: int
    phase: str
    seconds: float
    memory_size: int
    learned: bool


@dataclass(frozen=True)
class BenchSpec:
    """Configuration of a complexity bench run; defaults match the (v, w)
    sweep over {2, 4, ..., 10} with 22 scenes and 4 timing repetitions."""

    v_values: tuple[int, ...] = (2, 4, 6, 8, 10)
    w_values: tuple[int, ...] = (2, 4, 6, 8, 10)
    scene_count: int = 22
    repetitions: int = 4
    seed: int = 0
    fuzziness: float = 0.3
    mode: ReificationMode = ReificationMode.SIMPLIFIED


def complexity_bench(
    v_values: Sequence[int] = (2, 4, 6, 8, 10),
    w_values: Sequence[int] = (2, 4, 6, 8, 10),
    scene_count: int = 22,
    repetitions: int = 4,
    seed: int = 0,
    fuzziness: float = 0.3,
    mode: ReificationMode = ReificationMode.SIMPLIFIED,
) -> list[BenchRow]:
    """Per-phase timings for random scene sequences over a (v, w) sweep.

    Absolute times are machine-specific; consumers should assert shape
    (schema, memory growth, coarse trends), never values.
    """
    if scene_count < 1:
        raise InvalidScene("bench needs at least one scene")
    rows: list[BenchRow] = []
    for v in v_values:
        for w in w_values:
            iface = synthetic_interface(v, w, mode)
            rng = np.random.default_rng([seed, v, w])
            scenes = [
                random_scene(rng, iface, f"bench_{v}_{w}_{index}")
                for index in range(scene_count)
            ]
            memory = MemoryGraph(iface, fuzziness)
            _, _, timings = run_sequence(
                memory, scenes, timing_repetitions=repetitions
            )
            for timing in timings:
                rows.append(
                    BenchRow(
                        v=v,
                        w=w,
                        step=timing.step,
                        phase="encode_classify",
                        seconds=timing.encode_classify_seconds,
                        memory_size=timing.memory_size,
                        learned=timing.learned,
                    )
                )
                if timing.learned:
                    rows.append(
                        BenchRow(
                            v=v,
                            w=w,
                            step=timing.step,
                            phase="learn_structure",
                            seconds=timing.learn_structure_seconds,
                            memory_size=timing.memory_size,
                            learned=True,
                        )
                    )
    return rows


# -- CSV rendering -----------------------------------------------------------------


def render_csv(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def sweep_csv(result: SweepResult) -> str:
    return render_csv(
        SWEEP_CSV_HEADER,
        [
            (c.fuzziness, c.ix, c.iy, c.x, c.y, c.degree, c.similarity, int(c.classified))
            for c in result.cells
        ],
    )


def summary_csv(result: SweepResult) -> str:
    return render_csv(
        SUMMARY_CSV_HEADER,
        [
            (s.fuzziness, s.classified_count, s.mean_degree, s.degree_stddev)
            for s in result.summaries
        ],
    )


def scatter_csv(points: Sequence[tuple[float, float, float]]) -> str:
    return render_csv(SCATTER_CSV_HEADER, points)


def bench_csv(rows: Sequence[BenchRow]) -> str:
    return render_csv(
        BENCH_CSV_HEADER,
        [
            (r.v, r.w, r.step, r.phase, r.seconds, r.memory_size, int(r.learned))
            for r in rows
        ],
    )
