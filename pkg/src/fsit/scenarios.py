"""Reference tabletop layouts used by the CLI, tests, and experiment specs.

The five-scene bootstrapping sequence reproduces the canonical memory
shape: two cone/cylinder/plane scenes (the second with an ambiguous
cone-or-cylinder object), their union with a sphere triangle, and two
sphere-only scenes whose configurations overlap only at high fuzziness.
The sweep layout places a glass between two balls and moves it across
the rectangle they span.  All coordinates are meters in the workbench
frame; layouts are noise-free so every derived quantity is
deterministic.
"""

from __future__ import annotations

import numpy as np

from .grounding import GeometricObject, GeometricScene, KernelConfig

# Unit displacement used for the plane in the two-object scene: the
# squared components split the kernel degree into 0.16 right / 0.84
# behind, matching the two-decimal fact profile the layouts reconstruct.
_TILT_X = 0.4
_TILT_Y = -float(np.sqrt(1.0 - _TILT_X**2))


def ambiguous_pair_scene(scene_id: str = "e2") -> GeometricScene:
    """One cone-or-cylinder object with a plane behind-right of it."""
    objects = (
        GeometricObject("obj", 0.0, 0.0, {"CONE": 0.82, "CYLINDER": 1.0}),
        GeometricObject("board", 0.25 * _TILT_X, 0.25 * _TILT_Y, {"PLANE": 1.0}),
    )
    return GeometricScene(scene_id, objects)


def cone_cylinder_plane_scene(scene_id: str = "e1") -> GeometricScene:
    """Distinct cone and cylinder with a plane behind-right of both."""
    objects = (
        GeometricObject("cone", 0.03, 0.32, {"CONE": 0.94}),
        GeometricObject("cylinder", 0.05, 0.26, {"CYLINDER": 0.9}),
        GeometricObject(
            "board",
            0.05 + 0.42 * _TILT_X,
            0.26 + 0.42 * _TILT_Y,
            {"PLANE": 1.0},
        ),
    )
    return GeometricScene(scene_id, objects)


def _sphere_triangle(
    base_x: float, base_y: float, apex_dx: float, apex_dy: float
) -> tuple[GeometricObject, GeometricObject, GeometricObject]:
    return (
        GeometricObject("ball_a", base_x, base_y, {"SPHERE": 1.0}),
        GeometricObject("ball_b", base_x + 0.26, base_y, {"SPHERE": 1.0}),
        GeometricObject("ball_c", base_x + apex_dx, base_y + apex_dy, {"SPHERE": 1.0}),
    )


def combined_scene(scene_id: str = "e3") -> GeometricScene:
    """The cone/cylinder/plane trio (slightly rearranged) plus a sphere
    triangle far enough away that no cross facts arise."""
    objects = (
        GeometricObject("cone", 0.04, 0.325, {"CONE": 0.94}),
        GeometricObject("cylinder", 0.06, 0.265, {"CYLINDER": 0.9}),
        GeometricObject("board", 0.235, -0.1, {"PLANE": 1.0}),
        *_sphere_triangle(1.55, 1.3, 0.13, 0.16),
    )
    return GeometricScene(scene_id, objects)


def sphere_triangle_scene(scene_id: str = "e4") -> GeometricScene:
    """Three spheres in a near-equilateral triangle."""
    return GeometricScene(scene_id, _sphere_triangle(0.2, 0.1, 0.13, 0.22))


def sphere_line_scene(scene_id: str = "e5") -> GeometricScene:
    """Three spheres along a slightly tilted line.

    Relative to the triangle of :func:`sphere_triangle_scene` this trades
    front/behind energy for right/left energy, so at low fuzziness the
    two configurations are distinct categories while at high fuzziness
    their restrictions overlap into mutual implications.
    """
    cos_t = float(np.sqrt(1.0 - 0.17))
    sin_t = float(np.sqrt(0.17))
    objects = tuple(
        GeometricObject(
            name, 0.9 + step * 0.25 * cos_t, 0.2 + step * 0.25 * sin_t, {"SPHERE": 1.0}
        )
        for step, name in enumerate(("ball_a", "ball_b", "ball_c"))
    )
    return GeometricScene(scene_id, objects)


def bootstrap_sequence() -> list[GeometricScene]:
    """The five-scene observation sequence, in presentation order."""
    return [
        cone_cylinder_plane_scene("e1"),
        ambiguous_pair_scene("e2"),
        combined_scene("e3"),
        sphere_triangle_scene("e4"),
        sphere_line_scene("e5"),
    ]


# -- sweep layout -------------------------------------------------------------

SWEEP_BOUNDS = (0.0, 0.7, 0.0, 0.5)
SWEEP_RESOLUTION = (50, 50)


def sweep_grid() -> tuple[np.ndarray, np.ndarray]:
    """Cell-center coordinates of the sweep grid, endpoints included."""
    x_min, x_max, y_min, y_max = SWEEP_BOUNDS
    return (
        np.linspace(x_min, x_max, SWEEP_RESOLUTION[0]),
        np.linspace(y_min, y_max, SWEEP_RESOLUTION[1]),
    )


def glass_between_balls_scene(scene_id: str = "balanced") -> GeometricScene:
    """Two balls spanning the sweep rectangle with a glass at the middle cell.

    The glass sits exactly on a grid cell so the cell-resolved peak of a
    noise-free classification sweep is unique.
    """
    xs, ys = sweep_grid()
    glass_x = float(xs[SWEEP_RESOLUTION[0] // 2])
    glass_y = float(ys[SWEEP_RESOLUTION[1] // 2])
    objects = (
        GeometricObject("ball_near", 0.0, 0.0, {"SPHERE": 1.0}),
        GeometricObject("ball_far", 0.7, 0.5, {"SPHERE": 1.0}),
        GeometricObject("glass", glass_x, glass_y, {"CYLINDER": 1.0}),
    )
    return GeometricScene(scene_id, objects, kernel=KernelConfig())
