"""Preferential flow directions on triangulated crack surfaces."""

import json as _json
from typing import NamedTuple, Optional

from . import _fissura
from ._fissura import (  # noqa: F401
    Error,
    FluidParams,
    LiftedTriangulation,
    Mesh2D,
    SurfaceSpec,
    apply_G,
    apply_V,
    average_V,
    compute_weights,
    atomic_entropy,
    dissipation_curv,
    dissipation_grav,
    element_matrix,
    external_energy,
    friction_functional,
    generate_mesh,
    lift,
    make_mesh,
    max_chord,
)


def validate_mesh(mesh):
    return _json.loads(_fissura.validate_mesh(mesh))


def analyze_curvature(tri, fluid=None):
    return _json.loads(_fissura.analyze_curvature(tri, fluid or FluidParams()))


def analyze_gravity(tri, fluid=None):
    return _json.loads(_fissura.analyze_gravity(tri, fluid or FluidParams()))


def analyze_friction(tri, fluid=None, dense_scan=8192):
    return _json.loads(_fissura.analyze_friction(tri, fluid or FluidParams(), dense_scan))


def transmission_matrix(grid):
    """Dense transmission matrix for a grid dict {nx, ny, cell_size, cells}."""
    return _fissura.transmission_matrix(_json.dumps(grid))


class RunOutput(NamedTuple):
    report: dict
    report_text: str
    directions_csv: str
    energy_profile_csv: str
    network_mtx: Optional[str]


def run(config, seed=None, base_dir="."):
    """Runs the full pipeline on a config dict; artifacts are returned as text."""
    report, directions, profile, mtx = _fissura.run(_json.dumps(config), seed, base_dir)
    return RunOutput(_json.loads(report), report, directions, profile, mtx)
