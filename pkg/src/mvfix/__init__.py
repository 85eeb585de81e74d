"""Hausdorff metrics, contraction-condition checks, and fixed-point iteration for set-valued maps."""
from mvfix._backend import BACKEND
from mvfix.corpus import build_example, run_example_orbit, verify_example
from mvfix.errors import MvfixError
from mvfix.gauges import (Constant, Rule, Tabulated, beta_of, check_geraghty_class,
                          check_mizoguchi_takahashi, estimate_nadler_constant, evaluate)
from mvfix.hausdorff import (FiniteSet, directed_hausdorff, hausdorff, hausdorff_accelerated,
                             hyperspace_distance)
from mvfix.maps import RuleMap, TableMap
from mvfix.metric import (Euclidean, ExplicitTable, Point, SupNorm, distance, point_to_set_distance,
                          validate_metric_table)
from mvfix.numeric import Mode
from mvfix.solver import iterate, select_next, verify_orbit_conditions
from mvfix.taunum import TauNumber, tau

__all__ = [
    "BACKEND", "Constant", "Euclidean", "ExplicitTable", "FiniteSet", "Mode", "MvfixError", "Point",
    "Rule", "RuleMap", "SupNorm", "TableMap", "Tabulated", "TauNumber", "beta_of", "build_example",
    "check_geraghty_class", "check_mizoguchi_takahashi", "directed_hausdorff", "distance",
    "estimate_nadler_constant", "evaluate", "hausdorff", "hausdorff_accelerated",
    "hyperspace_distance", "iterate", "point_to_set_distance", "run_example_orbit", "select_next",
    "tau", "validate_metric_table", "verify_example", "verify_orbit_conditions",
]
