"""Batch command line: observe scene sequences, classify, run experiments.

Every command is reproducible from its inputs plus ``--seed``; the
resolved configuration is echoed into the output directory as
``config.json``.  Options accept environment overrides with the
``FSIT_`` prefix (``FSIT_<COMMAND>_<OPTION>``, e.g.
``FSIT_OBSERVE_FUZZINESS``).
"""

from __future__ import annotations

import sys
from pathlib import Path

import click
import numpy as np

from . import experiments, persistence, scenarios
from .engine import (
    DEFAULT_FUZZINESS,
    DEFAULT_MEMBERSHIP_THRESHOLD,
    DEFAULT_SIMILARITY_THRESHOLD,
    MemoryGraph,
    bootstrap_step,
    classify,
    encode,
)
from .errors import FsitError
from .grounding import KernelConfig, NoiseConfig, ground, spatial_interface
from .model import InputInterface, ReificationMode

_MODES = click.Choice([m.value for m in ReificationMode])


def _engine_options(command):
    options = [
        click.option(
            "--fuzziness", "-a", type=click.FloatRange(0.0, 1.0),
            default=DEFAULT_FUZZINESS, show_default=True,
            help="Ramp width of learned restrictions (0 = crisp).",
        ),
        click.option(
            "--th-membership", type=click.FloatRange(0.0, 1.0),
            default=DEFAULT_MEMBERSHIP_THRESHOLD, show_default=True,
            help="Learn when the best classification degree is below this.",
        ),
        click.option(
            "--th-similarity", type=click.FloatRange(min=0.0),
            default=DEFAULT_SIMILARITY_THRESHOLD, show_default=True,
            help="Learn when the best similarity is below this.",
        ),
        click.option(
            "--mode", type=_MODES, default=ReificationMode.SIMPLIFIED.value,
            show_default=True, help="Reification mode for fresh memories.",
        ),
        click.option("--seed", type=int, default=0, show_default=True),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def _echo_config(out_dir: Path, **config) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "config.json").write_text(persistence.dumps(config))


def _load_kernel(path: str | None) -> KernelConfig:
    if path is None:
        return KernelConfig()
    return persistence.kernel_from_doc(persistence.loads(Path(path).read_text()))


def _load_noise(path: str | None) -> NoiseConfig | None:
    if path is None:
        return None
    return persistence.noise_from_doc(persistence.loads(Path(path).read_text()))


def _read_scene(
    path: Path,
    iface: InputInterface | None,
    kernel: KernelConfig,
    noise: NoiseConfig | None,
    rng: np.random.Generator,
    mode: ReificationMode,
):
    """Load a symbolic or geometric scene file; returns (scene, interface)."""
    doc = persistence.loads(path.read_text())
    kind = doc.get("kind")
    if kind == "scene":
        scene, declared = persistence.scene_from_doc(doc)
        if iface is not None and declared != iface:
            raise FsitError(f"{path}: scene interface differs from the memory's")
        return scene, declared
    if kind == "geometric_scene":
        geo = persistence.geometric_scene_from_doc(doc)
        target = iface or spatial_interface(mode)
        scene = ground(
            geo.objects,
            geo.kernel or kernel,
            target,
            geo.noise or noise,
            rng=rng,
            scene_id=geo.scene_id,
        )
        return scene, target
    raise FsitError(f"{path}: expected a scene or geometric_scene document")


@click.group()
def cli() -> None:
    """Incremental fuzzy scene-knowledge engine."""


@cli.command()
@click.argument("scene_files", nargs=-1, required=True, type=click.Path(exists=True))
@click.option("--memory", "memory_path", type=click.Path(), required=True,
              help="Memory file; loaded when present, created otherwise.")
@click.option("--out", "out_dir", type=click.Path(), required=True)
@click.option("--kernel", "kernel_path", type=click.Path(exists=True), default=None)
@click.option("--noise", "noise_path", type=click.Path(exists=True), default=None)
@_engine_options
def observe(scene_files, memory_path, out_dir, kernel_path, noise_path,
            fuzziness, th_membership, th_similarity, mode, seed) -> None:
    """Fold the bootstrap loop over scene files and update the memory."""
    out = Path(out_dir)
    memory_file = Path(memory_path)
    kernel = _load_kernel(kernel_path)
    noise = _load_noise(noise_path)
    rng = np.random.default_rng(seed)
    mode = ReificationMode(mode)
    _echo_config(
        out, command="observe", scene_files=list(scene_files),
        memory=str(memory_file), fuzziness=fuzziness,
        th_membership=th_membership, th_similarity=th_similarity,
        mode=mode.value, seed=seed,
        kernel=persistence.kernel_to_doc(kernel),
        noise=persistence.noise_to_doc(noise) if noise else None,
    )
    memory: MemoryGraph | None = None
    if memory_file.exists():
        memory = persistence.load_memory(memory_file.read_text())
        if memory.fuzziness != fuzziness:
            raise click.ClickException(
                f"memory fuzziness {memory.fuzziness} != requested {fuzziness}"
            )
    step_rows = []
    for index, name in enumerate(scene_files, start=1):
        scene, iface = _read_scene(
            Path(name), memory.interface if memory else None, kernel, noise, rng, mode
        )
        if memory is None:
            memory = MemoryGraph(iface, fuzziness)
        memory, graph, learned = bootstrap_step(
            memory, scene, th_membership, th_similarity
        )
        stem = f"step_{index:03d}_{scene.scene_id}"
        (out / f"{stem}.csv").write_text(_classification_csv(graph))
        (out / f"{stem}.dot").write_text(persistence.export_dot(graph))
        step_rows.append(
            (index, scene.scene_id, int(learned), graph.best_degree(),
             graph.best_similarity(), len(memory))
        )
        click.echo(
            f"step {index} {scene.scene_id}: learned={'yes' if learned else 'no'} "
            f"p={graph.best_degree():.2f} d={graph.best_similarity():.2f} |M|={len(memory)}"
        )
    assert memory is not None
    memory_file.parent.mkdir(parents=True, exist_ok=True)
    memory_file.write_text(persistence.save_memory(memory))
    header = ("step", "scene_id", "learned", "best_degree", "best_similarity", "memory_size")
    (out / "steps.csv").write_text(experiments.render_csv(header, step_rows))
    click.echo(f"memory with {len(memory)} categories written to {memory_file}")


def _classification_csv(graph) -> str:
    rows = [
        (graph.scene_id, node.category_id, node.annotation or "", node.degree, node.similarity)
        for _, node in sorted(graph.nodes.items())
    ]
    return experiments.render_csv(
        ("scene_id", "category_id", "annotation", "degree", "similarity"), rows
    )


@cli.command("classify")
@click.argument("scene_file", type=click.Path(exists=True))
@click.option("--memory", "memory_path", type=click.Path(exists=True), required=True)
@click.option("--out", "out_dir", type=click.Path(), required=True)
@click.option("--kernel", "kernel_path", type=click.Path(exists=True), default=None)
@click.option("--noise", "noise_path", type=click.Path(exists=True), default=None)
@click.option("--seed", type=int, default=0, show_default=True)
def classify_cmd(scene_file, memory_path, out_dir, kernel_path, noise_path, seed) -> None:
    """Classify one scene against an existing memory (no memory writes)."""
    out = Path(out_dir)
    memory = persistence.load_memory(Path(memory_path).read_text())
    kernel = _load_kernel(kernel_path)
    noise = _load_noise(noise_path)
    rng = np.random.default_rng(seed)
    _echo_config(
        out, command="classify", scene_file=scene_file, memory=memory_path,
        seed=seed, kernel=persistence.kernel_to_doc(kernel),
        noise=persistence.noise_to_doc(noise) if noise else None,
    )
    scene, _ = _read_scene(
        Path(scene_file), memory.interface, kernel, noise, rng, memory.interface.mode
    )
    graph = classify(memory, encode(scene, memory.interface))
    (out / "classification.csv").write_text(_classification_csv(graph))
    (out / "classification.dot").write_text(persistence.export_dot(graph))
    if graph.is_empty():
        click.echo(f"scene {scene.scene_id!r} is unclassified")
    else:
        click.echo(
            f"scene {scene.scene_id!r}: {len(graph.nodes)} categories, "
            f"best p={graph.best_degree():.2f} best d={graph.best_similarity():.2f}"
        )


@cli.command()
@click.argument("spec_file", type=click.Path(exists=True))
@click.option("--out", "out_dir", type=click.Path(), required=True)
@click.option("--seed", type=int, default=None, help="Override the spec's seed.")
def sweep(spec_file, out_dir, seed) -> None:
    """Classification-distribution sweep over a grid of scenes."""
    out = Path(out_dir)
    spec = persistence.sweep_spec_from_doc(
        persistence.loads(Path(spec_file).read_text())
    )
    if seed is not None:
        spec = persistence.reseed_sweep_spec(spec, seed)
    _echo_config(out, command="sweep", spec=persistence.sweep_spec_to_doc(spec))
    result = experiments.distribution_sweep(spec)
    (out / "sweep.csv").write_text(experiments.sweep_csv(result))
    (out / "summary.csv").write_text(experiments.summary_csv(result))
    for summary in result.summaries:
        grid_rows = [
            (c.ix, c.iy, c.x, c.y, c.degree, c.similarity, int(c.classified))
            for c in result.cells
            if c.fuzziness == summary.fuzziness
        ]
        (out / f"grid_a{summary.fuzziness:g}.csv").write_text(
            experiments.render_csv(
                ("ix", "iy", "x", "y", "degree", "similarity", "classified"), grid_rows
            )
        )
        click.echo(
            f"a={summary.fuzziness:g}: classified {summary.classified_count} cells "
            f"(mean p={summary.mean_degree:.3f}, sd={summary.degree_stddev:.3f})"
        )


@cli.command()
@click.argument("spec_file", type=click.Path(exists=True))
@click.option("--out", "out_dir", type=click.Path(), required=True)
@click.option("--seed", type=int, default=None, help="Override the spec's seed.")
def scatter(spec_file, out_dir, seed) -> None:
    """Degree/similarity pairs over the classified cells of a sweep."""
    out = Path(out_dir)
    spec = persistence.sweep_spec_from_doc(
        persistence.loads(Path(spec_file).read_text())
    )
    if seed is not None:
        spec = persistence.reseed_sweep_spec(spec, seed)
    _echo_config(out, command="scatter", spec=persistence.sweep_spec_to_doc(spec))
    points = experiments.similarity_scatter(spec)
    (out / "scatter.csv").write_text(experiments.scatter_csv(points))
    click.echo(f"{len(points)} classified cells written")


@cli.command()
@click.option("--spec", "spec_file", type=click.Path(exists=True), default=None,
              help="Bench spec document; defaults to the built-in sweep.")
@click.option("--out", "out_dir", type=click.Path(), required=True)
def bench(spec_file, out_dir) -> None:
    """Per-phase timing bench over growing vocabularies and memories."""
    out = Path(out_dir)
    if spec_file is None:
        spec = experiments.BenchSpec()
    else:
        spec = persistence.bench_spec_from_doc(
            persistence.loads(Path(spec_file).read_text())
        )
    _echo_config(out, command="bench", spec=persistence.bench_spec_to_doc(spec))
    rows = experiments.complexity_bench(
        spec.v_values, spec.w_values, spec.scene_count, spec.repetitions,
        spec.seed, spec.fuzziness, spec.mode,
    )
    (out / "bench.csv").write_text(experiments.bench_csv(rows))
    click.echo(f"{len(rows)} timing rows written to {out / 'bench.csv'}")


@cli.command()
@click.option("--memory", "memory_path", type=click.Path(exists=True), required=True)
@click.option("--out", "out_path", type=click.Path(), default=None,
              help="Output DOT file; stdout when omitted.")
@click.option("--reduce", "reduce_transitive", is_flag=True,
              help="Drop display-redundant degree-1 edges.")
def export(memory_path, out_path, reduce_transitive) -> None:
    """Export a memory graph as DOT."""
    memory = persistence.load_memory(Path(memory_path).read_text())
    dot = persistence.export_dot(memory, reduce_transitive=reduce_transitive)
    if out_path is None:
        click.echo(dot, nl=False)
    else:
        Path(out_path).write_text(dot)
        click.echo(f"DOT written to {out_path}")


@cli.command("init-examples")
@click.option("--out", "out_dir", type=click.Path(), required=True)
def init_examples(out_dir) -> None:
    """Write the built-in reference layouts and experiment specs."""
    out = Path(out_dir)
    scenes_dir = out / "scenes"
    specs_dir = out / "specs"
    scenes_dir.mkdir(parents=True, exist_ok=True)
    specs_dir.mkdir(parents=True, exist_ok=True)
    for geo in scenarios.bootstrap_sequence():
        (scenes_dir / f"{geo.scene_id}.json").write_text(
            persistence.save_geometric_scene(geo)
        )
    balanced = scenarios.glass_between_balls_scene()
    (scenes_dir / "balanced.json").write_text(persistence.save_geometric_scene(balanced))
    spec = experiments.SweepSpec(
        interface=spatial_interface(),
        kernel=KernelConfig(),
        objects=balanced.objects,
        moving_object_id="glass",
        bounds=scenarios.SWEEP_BOUNDS,
        resolution=scenarios.SWEEP_RESOLUTION,
        fuzziness_values=(0.3, 0.5, 0.7),
    )
    (specs_dir / "balanced_sweep.json").write_text(
        persistence.dumps(persistence.sweep_spec_to_doc(spec))
    )
    (specs_dir / "bench.json").write_text(
        persistence.dumps(persistence.bench_spec_to_doc(experiments.BenchSpec()))
    )
    click.echo(f"examples written under {out}")


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8765, show_default=True)
def serve(host, port) -> None:
    """Run the interactive teaching service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


def main() -> None:
    try:
        cli(auto_envvar_prefix="FSIT")
    except FsitError as error:
        click.echo(f"error: {error}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
