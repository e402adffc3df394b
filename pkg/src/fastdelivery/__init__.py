"""Exact solvers for single-package delivery by heterogeneous mobile agents."""
from .combined import minimal_agent, solve_combined_3approx
from .errors import DeliveryError, GuardExceeded, Infeasible, InputError
from .fast import solve_fast
from .gadgets import EmbeddedFormula, assignment_to_schedule, build_delivery_instance, schedule_to_assignment
from .metric import apsp, point_distance
from .model import Agent, EdgePoint, Graph, Instance, NodePoint, Schedule, make_instance
from .path import solve_path
from .schedule import evaluate_schedule, validate_schedule
from .uniform import solve_uniform

__all__ = [
    "Agent", "DeliveryError", "EdgePoint", "EmbeddedFormula", "Graph", "GuardExceeded", "Infeasible",
    "InputError", "Instance", "NodePoint", "Schedule", "apsp", "assignment_to_schedule",
    "build_delivery_instance", "evaluate_schedule", "make_instance", "minimal_agent", "point_distance",
    "schedule_to_assignment", "solve_combined_3approx", "solve_fast", "solve_path", "solve_uniform",
    "validate_schedule",
]
