"""Minimum-flight-time neighborhood tours for a curvature-constrained,
variable-speed vehicle.

The heavy lifting lives in the compiled extension; this package adds thin
dict-based conveniences on top of the JSON-string core API.
"""

import json as _json

from dtspn._core import (  # noqa: F401
    ParameterError,
    PlanningError,
    VehicleParams,
    export_tsplib,
    generate_instance,
    halton,
    min_time_path,
    plan,
    plot_svg,
    shortest_dubins,
    solve_atsp,
    turn_radius,
)

__all__ = [
    "ParameterError",
    "PlanningError",
    "VehicleParams",
    "export_tsplib",
    "generate_instance",
    "generate_instance_dict",
    "halton",
    "min_time_path",
    "plan",
    "plan_dict",
    "plot_svg",
    "shortest_dubins",
    "solve_atsp",
    "turn_radius",
]


def generate_instance_dict(n, area=10.0, radius=1.0, seed=1):
    """Random instance as a dict."""
    return _json.loads(generate_instance(n, area, radius, seed))


def plan_dict(instance, config=None):
    """Runs the planner on an instance dict; returns the solution dict."""
    instance_json = _json.dumps(instance)
    config_json = _json.dumps(config) if config else ""
    return _json.loads(plan(instance_json, config_json))
