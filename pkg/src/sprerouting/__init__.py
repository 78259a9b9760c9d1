"""Reachability between shortest paths under single-vertex rerouting.

The public entry points are re-exported here; see the README for a tour.
"""

from .encoding import dp_decide_low_degree, dp_decide_rspr
from .graph import PlaneGraph, trace_faces
from .instance import LayeredInstance, Target, Verdict, build_layered_instance
from .oracle import oracle_decide
from .reduction import complete_layers, lift_witness, reduce_instance
from .sprg import parse_sprg, read_sprg, write_sprg
from .standard_form import check_standard_form, decide_tspr, to_standard_form
from .switches import decide_reachable_target, decide_spr_planar, enumerate_switches

__all__ = [
    "LayeredInstance", "PlaneGraph", "Target", "Verdict",
    "build_layered_instance", "check_standard_form", "complete_layers",
    "decide_reachable_target", "decide_spr_planar", "decide_tspr",
    "dp_decide_low_degree", "dp_decide_rspr", "enumerate_switches",
    "lift_witness", "oracle_decide", "parse_sprg", "read_sprg",
    "reduce_instance", "to_standard_form", "trace_faces", "write_sprg",
]
__version__ = "0.1.0"
