"""Polychromatic, conflict-free and list colorings of hypergraphs defined
by homothets of a convex polygon, with exact rational arithmetic."""
from .coloring import (Coloring, Graph, color_planar_4, color_planar_5, degeneracy_order,
                       greedy_color, list_color_planar_5, planarity_check)
from .conflict_free import (CFInstance, cf_color, dominance_instance, dual_instance,
                            k_strong_cf_color, triangle_dual_instance, verify_cf)
from .dominance import (Realizer3D, build_Gk, color_k, enumerate_hyperedges, extreme_stats,
                        triangle_dual_realizer, verify_polychromatic)
from .dual import (build_dual_graph, color_dual, cone_contains, dual_hyperedges, lift, verify_dual,
                   z_height)
from .errors import (GeometryError, GuardrailError, InstanceError, InternalConsistencyError,
                     PolycolorError, SearchBudgetExceeded)
from .geometry import (Containment, ConvexRange, Homothet, PointSet, convex_distance, gauge_value,
                       homothet_contains, reflect)
from .lowerbound import (LowerBoundInstance, check_lowerbound, gen_lowerbound_dual,
                         gen_lowerbound_primal)
from .primal import build_delaunay, color_primal, edge_witness, verify_primal
from .report import Report

__version__ = "0.1.0"

__all__ = [
    "CFInstance", "Coloring", "Containment", "ConvexRange", "GeometryError", "Graph",
    "GuardrailError", "Homothet", "InstanceError", "InternalConsistencyError",
    "LowerBoundInstance", "PointSet", "PolycolorError", "Realizer3D", "Report",
    "SearchBudgetExceeded", "build_Gk", "build_delaunay", "build_dual_graph", "cf_color",
    "check_lowerbound", "color_dual", "color_k", "color_planar_4", "color_planar_5",
    "color_primal", "cone_contains", "convex_distance", "degeneracy_order", "dominance_instance",
    "dual_hyperedges", "dual_instance", "edge_witness", "enumerate_hyperedges", "extreme_stats",
    "gauge_value", "gen_lowerbound_dual", "gen_lowerbound_primal", "greedy_color",
    "homothet_contains", "k_strong_cf_color", "lift", "list_color_planar_5", "planarity_check",
    "reflect", "triangle_dual_instance", "triangle_dual_realizer", "verify_cf", "verify_dual",
    "verify_polychromatic", "verify_primal", "z_height",
]
