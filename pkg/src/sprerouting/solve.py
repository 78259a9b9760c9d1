"""Route a parsed instance to the right decision procedure."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Any

from .encoding import DEFAULT_CAP, dp_decide_rspr
from .errors import InvalidTarget, InvariantViolation, NoEmbedding
from .instance import LayeredInstance, Target, Verdict, validate_target
from .oracle import DEFAULT_MAX_PATHS, RESTRICTED, TOPOLOGICAL, UNRESTRICTED, oracle_decide
from .reduction import complete_layers
from .sprg import SprgDocument
from .standard_form import decide_tspr
from .switches import Stats, _is_switch_pair, decide_reachable_target, decide_spr_planar

ORACLE_VARIANT = {"SPR": UNRESTRICTED, "GSPR": UNRESTRICTED, "RSPR": RESTRICTED, "TSPR": TOPOLOGICAL}


class OracleDisagreement(InvariantViolation):
    """The fast answer and the brute-force answer differ."""


@dataclass
class Query:
    inst: LayeredInstance
    P: tuple[int, ...]
    target: Target
    variant: str


def query_from_document(doc: SprgDocument, variant: str | None = None) -> Query:
    variant = (variant or doc.variant or "SPR").upper()
    if variant not in ORACLE_VARIANT:
        raise InvalidTarget(f"unknown variant {variant!r}")
    inst = doc.instance()
    if doc.path is None:
        raise InvalidTarget("the instance has no PATH line")
    P = tuple(doc.path)
    if not inst.is_spath(P):
        raise InvalidTarget(f"PATH {list(P)} is not a shortest st-path")
    if doc.target is None:
        raise InvalidTarget("the instance has no TARGET line")
    if variant == "SPR" and doc.target.kind != "path":
        raise InvalidTarget("SPR needs a TARGET PATH")
    if not validate_target(inst, doc.target):
        raise InvalidTarget(f"target {list(doc.target.vertices)} is not an S-subpath")
    return Query(inst, P, doc.target, variant)


def _general(inst: LayeredInstance, P, Q, cap: int) -> Verdict:
    """Unrestricted steps equal restricted steps once every layer is a clique."""
    verdict, diag = dp_decide_rspr(complete_layers(inst), P, Q, cap)
    verdict.diagnostics = {"method": "completed-layers dp", "dp": diag.to_json()}
    return verdict


def decide(q: Query, cap: int = DEFAULT_CAP) -> Verdict:
    inst, P, target = q.inst, q.P, q.target
    Q = target.vertex_set - {inst.s, inst.t}
    plane = inst.graph.rotation is not None
    if q.variant == "RSPR":
        verdict, diag = dp_decide_rspr(inst, P, Q, cap)
        verdict.diagnostics = {"method": "restricted dp", "dp": diag.to_json()}
        return verdict
    if q.variant == "TSPR":
        if not plane:
            raise NoEmbedding("TSPR needs a rotation system")
        v = decide_tspr(inst, P, Q, cap)
        v.diagnostics["method"] = "standard form dp"
        return v
    # unrestricted adjacency
    stats = Stats(cap)
    if plane and target.kind == "path":
        v = decide_spr_planar(inst, P, target.vertices, cap, stats)
        v.diagnostics["method"] = "switch decomposition"
        return v
    if plane and (len(Q) <= 1 or (len(Q) == 2 and _is_switch_pair(inst, *sorted(Q, key=inst.layer_of.get)))):
        v = decide_reachable_target(inst, P, Q, cap, stats)
        v.diagnostics["method"] = "switch decomposition"
        return v
    return _general(inst, P, Q, cap)


def run_query(q: Query, cap: int = DEFAULT_CAP, check_oracle: bool = False,
              max_paths: int = DEFAULT_MAX_PATHS) -> dict[str, Any]:
    """Decide, optionally cross-check with the oracle, and return the JSON verdict."""
    t0 = time.perf_counter()
    verdict = decide(q, cap)
    timings = {"decide_s": time.perf_counter() - t0}
    out = verdict.to_json()
    if check_oracle:
        t1 = time.perf_counter()
        truth = oracle_decide(q.inst, q.P, q.target, ORACLE_VARIANT[q.variant], max_paths=max_paths)
        timings["oracle_s"] = time.perf_counter() - t1
        out["oracle"] = {"reachable": truth.reachable, "agrees": truth.reachable == verdict.reachable}
        if truth.reachable != verdict.reachable:
            raise OracleDisagreement(
                f"decision {verdict.reachable} but the oracle says {truth.reachable}")
    out["timings"] = timings
    return out
