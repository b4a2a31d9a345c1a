import numpy as np
import pytest

from fsit.engine import encode, learn
from fsit.errors import InvalidScene
from fsit.experiments import (
    BENCH_CSV_HEADER,
    BenchSpec,
    SWEEP_CSV_HEADER,
    SweepSpec,
    bench_csv,
    complexity_bench,
    distribution_sweep,
    random_scene,
    scatter_csv,
    similarity_scatter,
    summary_csv,
    sweep_csv,
    synthetic_interface,
)
from fsit.grounding import GeometricObject, KernelConfig, ground, spatial_interface
from fsit.model import validate_scene


def small_spec(fuzziness_values=(0.3, 0.7), noise=None, resolution=(9, 9), seed=0):
    objects = (
        GeometricObject("ball_near", 0.0, 0.0, {"SPHERE": 1.0}),
        GeometricObject("ball_far", 0.7, 0.5, {"SPHERE": 1.0}),
        GeometricObject("glass", 0.35, 0.25, {"CYLINDER": 1.0}),
    )
    return SweepSpec(
        interface=spatial_interface(),
        kernel=KernelConfig(),
        objects=objects,
        moving_object_id="glass",
        bounds=(0.0, 0.7, 0.0, 0.5),
        resolution=resolution,
        fuzziness_values=fuzziness_values,
        noise=noise,
        seed=seed,
    )


class TestDistributionSweep:
    def test_deterministic_given_seed(self):
        first = distribution_sweep(small_spec())
        second = distribution_sweep(small_spec())
        assert first.cells == second.cells
        assert first.summaries == second.summaries

    def test_cell_count_matches_resolution(self):
        result = distribution_sweep(small_spec())
        assert len(result.cells) == 9 * 9 * 2

    def test_classified_counts_grow_with_fuzziness(self):
        result = distribution_sweep(small_spec())
        by_a = {s.fuzziness: s.classified_count for s in result.summaries}
        assert by_a[0.7] >= by_a[0.3]

    def test_crisp_zero_noise_region_matches_per_key_check(self):
        spec = small_spec(fuzziness_values=(0.0,), resolution=(7, 7))
        result = distribution_sweep(spec)
        reference = ground(spec.objects, spec.kernel, spec.interface, scene_id="ref")
        learned = learn(encode(reference, spec.interface), 0.0)
        fixed = [o for o in spec.objects if o.id != "glass"]
        for cell in result.cells:
            try:
                scene = ground(
                    fixed + [GeometricObject("glass", cell.x, cell.y, {"CYLINDER": 1.0})],
                    spec.kernel,
                    spec.interface,
                    scene_id="probe",
                )
            except Exception:
                assert not cell.classified
                continue
            beliefs = encode(scene, spec.interface)
            satisfied = all(
                beliefs.entries.get(key, 0.0) >= restriction.k
                for key, restriction in learned.restrictions.items()
            )
            assert cell.classified == satisfied

    def test_resolution_must_be_at_least_two(self):
        with pytest.raises(InvalidScene):
            small_spec(resolution=(1, 5))

    def test_moving_object_must_exist(self):
        spec = small_spec()
        with pytest.raises(InvalidScene):
            SweepSpec(
                interface=spec.interface,
                kernel=spec.kernel,
                objects=spec.objects,
                moving_object_id="ghost",
                bounds=spec.bounds,
                resolution=spec.resolution,
                fuzziness_values=spec.fuzziness_values,
            )

    def test_csv_headers(self):
        result = distribution_sweep(small_spec(resolution=(3, 3)))
        assert sweep_csv(result).splitlines()[0] == ",".join(SWEEP_CSV_HEADER)
        assert summary_csv(result).splitlines()[0].startswith("fuzziness,")


class TestSimilarityScatter:
    def test_only_classified_cells_recorded(self):
        spec = small_spec(fuzziness_values=(0.5,))
        points = similarity_scatter(spec)
        result = distribution_sweep(spec)
        assert len(points) == sum(1 for c in result.cells if c.classified)
        for fuzziness, degree, sim in points:
            assert degree > 0.0
            assert sim <= 1.0 / (1.0 - fuzziness) + 1e-9

    def test_crisp_similarities_bounded_by_one(self):
        points = similarity_scatter(small_spec(fuzziness_values=(0.0,)))
        assert all(sim <= 1.0 + 1e-12 for _, _, sim in points)

    def test_scatter_csv_header(self):
        text = scatter_csv([(0.5, 1.0, 1.0)])
        assert text.splitlines()[0] == "fuzziness,degree,similarity"


class TestRandomScene:
    def test_scenes_are_valid_and_nonempty(self):
        iface = synthetic_interface(4, 3)
        rng = np.random.default_rng(0)
        for index in range(50):
            scene = random_scene(rng, iface, f"s{index}")
            validate_scene(scene, iface)
            assert scene.facts

    def test_crisp_scenes_use_unit_degrees(self):
        iface = synthetic_interface(3, 2)
        rng = np.random.default_rng(1)
        scene = random_scene(rng, iface, "s", crisp=True)
        assert all(fact.degree == 1.0 for fact in scene.facts)
        for element in scene.elements:
            assert set(element.type_degrees.values()) == {1.0}


class TestComplexityBench:
    def test_schema_and_memory_growth(self):
        rows = complexity_bench(
            v_values=(2, 4), w_values=(2,), scene_count=6, repetitions=2, seed=0
        )
        assert {row.phase for row in rows} == {"encode_classify", "learn_structure"}
        for (v, w) in {(r.v, r.w) for r in rows}:
            steps = [r for r in rows if (r.v, r.w) == (v, w) and r.phase == "encode_classify"]
            assert len(steps) == 6
            size = 0
            for row in sorted(steps, key=lambda r: r.step):
                assert row.memory_size == size + 1 if row.learned else size
                size = row.memory_size
        header = bench_csv(rows).splitlines()[0]
        assert header == ",".join(BENCH_CSV_HEADER)

    def test_single_repetition_allowed(self):
        rows = complexity_bench(
            v_values=(2,), w_values=(2,), scene_count=2, repetitions=1, seed=0
        )
        assert all(row.seconds >= 0.0 for row in rows)

    def test_larger_key_space_takes_longer_to_structure(self):
        rows = complexity_bench(
            v_values=(2, 10), w_values=(2, 10), scene_count=10, repetitions=3, seed=4
        )
        def median_structure(v, w):
            values = sorted(
                r.seconds for r in rows
                if (r.v, r.w) == (v, w) and r.phase == "learn_structure"
            )
            return values[len(values) // 2] if values else 0.0
        # Coarse trend only: the big configuration does 25x the per-key
        # work, so even with scheduler noise it should not be faster than
        # half the small configuration's median.
        assert median_structure(10, 10) >= 0.5 * median_structure(2, 2)

    def test_bench_spec_defaults(self):
        spec = BenchSpec()
        assert spec.scene_count == 22
        assert spec.repetitions == 4
        assert set(spec.v_values) == {2, 4, 6, 8, 10}
