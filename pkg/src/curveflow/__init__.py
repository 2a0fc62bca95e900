"""Parametric finite elements for forced curve shortening flow with
orthogonal wall contact, coupled to reaction-diffusion on the curve."""
from .boundary import (BoundaryMap, EndpointBoundaries, cosine_channel_left,
                       cosine_channel_right, half_plane, project_to_boundary,
                       tangent_direction, vertical_lines)
from .curve import curve_step
from .eoc import (LADDER_PRESETS, ErrorAccumulators, EocTable, eoc, eoc_study, format_table,
                  run_preset, run_with_errors)
from .evolve import simulate, time_steps
from .kernels import BACKEND
from .mesh import (ElementGeometry, ElementVelocities, Mesh, ScalarField, VectorField,
                   element_geometry, element_velocities, h1_seminorm_sq, interpolate_scalar,
                   interpolate_vector, l2_norm_sq, lumped_inner, make_uniform_mesh)
from .scenarios import Scenario, example1, example2, example3, get_scenario
from .solute import solute_step

__version__ = "0.1.0"
