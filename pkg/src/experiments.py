"""
Experiment tables: the curves survey and the relative hyperbolicity δ trend.

Both build pandas DataFrames; the command layer writes them as CSV or JSON.
"""

import multiprocessing
import time
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from src.curves.classification import classify_graph_of_multicurves
from src.curves.surfaces import SurfaceType, WitnessKind, exclusion_reason
from src.curves.witnesses import disjoint_witness_pairs, unique_disjoint_pairs, witness_types
from src.metric.delta import four_point_delta
from src.metric.gates import gate_image_diameter
from src.metric.horoball import (
    AuditReport, build_cusped, build_factored, build_horoball, default_depth, epsilon_net, log_distance_audit,
)
from src.metric.metric_graph import DistanceMatrix, shortest_paths
from src.racg.caprace import find_peripheral_collection, peripheral_sets
from src.racg.cayley import cayley_ball, coset_partition
from src.racg.defining_graph import SimplicialGraph
from src.reports import Status
from src.utils.error_handler import InputError, ResourceCapError, safe_operation
from src.utils.logger import get_logger
from src.utils.toolkit_config import ToolkitConfig

logger = get_logger()

SURVEY_COLUMNS = ["kind", "g", "n", "complexity", "verdict", "witness_types", "disjoint_pairs", "udp", "note"]
DELTA_COLUMNS = ["radius", "ball_size", "regions", "delta_plain", "delta_factored", "delta_cusped",
                 "cusped_size", "gate_diameter", "audit_constant", "seconds", "warning"]
ERROR_VERDICT = "error"


def survey_surfaces(kind: WitnessKind, max_bound: int) -> List[SurfaceType]:
    """Surfaces with 2g + n <= max_bound that get a survey row for kind."""
    surfaces = []
    for g in range(max_bound // 2 + 1):
        for n in range(max_bound - 2 * g + 1):
            surface = SurfaceType(g, n)
            if kind is WitnessKind.SEPARATING and 2 * g + n >= 4:
                surfaces.append(surface)
            elif kind is WitnessKind.PANTS and surface.complexity >= 1:
                surfaces.append(surface)
            elif kind is WitnessKind.CUT and n == 0 and g >= 1:
                surfaces.append(surface)
    return sorted(surfaces)


@safe_operation(default_return=None)
def _verdict_columns(kind: WitnessKind, surface: SurfaceType, config: ToolkitConfig) -> Dict[str, Any]:
    """Verdict, counts, and note of one surveyed surface; a cap becomes a note."""
    try:
        report = classify_graph_of_multicurves(kind, surface, config)
        bound = config.enumeration_bound
        note = ""
        if report.status is Status.INCONCLUSIVE:
            note = (report.counterexample or {}).get("reason") or (report.certificate or {}).get("reason", "")
        return {
            "witness_types": len(witness_types(surface, kind, bound)),
            "disjoint_pairs": len(disjoint_witness_pairs(surface, kind, bound)),
            "udp": unique_disjoint_pairs(surface, kind, bound)[0],
            "verdict": report.status.value,
            "note": note,
        }
    except ResourceCapError as e:
        return {"verdict": "capped", "note": str(e)}


def survey_row(kind: str, genus: int, punctures: int, config: ToolkitConfig) -> Dict[str, Any]:
    """One survey row; exclusions, caps, and failures become notes instead of errors."""
    kind = WitnessKind(kind)
    surface = SurfaceType(genus, punctures)
    row: Dict[str, Any] = {
        "kind": kind.value, "g": genus, "n": punctures, "complexity": surface.complexity,
        "verdict": "", "witness_types": None, "disjoint_pairs": None, "udp": None, "note": "",
    }
    reason = exclusion_reason(kind, surface)
    if reason is not None:
        row["verdict"] = "excluded"
        row["note"] = reason
        return row
    columns = _verdict_columns(kind, surface, config)
    if columns is None:
        columns = {"verdict": ERROR_VERDICT, "note": f"classification of {surface} failed; see the log"}
    row.update(columns)
    logger.debug(f"Survey {kind.value} {surface}: {row['verdict']}")
    return row


def curves_survey(kind: WitnessKind, max_bound: int, config: Optional[ToolkitConfig] = None) -> pd.DataFrame:
    """Classify every surface in range; rows sorted by (g, n)."""
    config = config or ToolkitConfig()
    args = [(kind.value, s.genus, s.punctures, config) for s in survey_surfaces(kind, max_bound)]
    logger.info(f"Surveying {len(args)} surfaces for the {kind.value} graph up to 2g + n = {max_bound}")
    if config.parallel_survey and len(args) > 1:
        num_workers = min(config.num_workers, len(args))
        logger.debug(f"Running survey with {num_workers} workers")
        with multiprocessing.Pool(processes=num_workers) as pool:
            rows = pool.starmap(survey_row, args)
    else:
        rows = [survey_row(*a) for a in args]
    frame = pd.DataFrame(rows, columns=SURVEY_COLUMNS)
    return frame.sort_values(["g", "n"]).reset_index(drop=True)


def peripheral_regions(graph: SimplicialGraph, ball) -> List[List[Any]]:
    """Star-coset classes of every peripheral subgraph with at least two ball elements."""
    verdict = find_peripheral_collection(graph)
    if verdict.status is not Status.RELATIVELY_HYPERBOLIC:
        return []
    regions = []
    for omega in peripheral_sets(verdict):
        for members in coset_partition(ball, omega).values():
            if len(members) > 1:
                regions.append(sorted(members))
    return regions


def parse_radii(text: str) -> List[int]:
    """Read '2..5' or '2,3,4'."""
    text = text.strip()
    try:
        if ".." in text:
            low, high = (int(p) for p in text.split("..", 1))
            radii = list(range(low, high + 1))
        else:
            radii = [int(p) for p in text.split(",") if p]
    except ValueError:
        raise InputError(f"radii must look like '2..5' or '2,3,4', got '{text}'")
    if not radii or min(radii) < 0:
        raise InputError(f"radii must be non-negative and non-empty, got '{text}'")
    return radii


def max_gate_diameter(distances: DistanceMatrix, regions: Sequence[Sequence[Any]],
                      tolerance: float = 0.0) -> Optional[float]:
    """Largest gate image of one region onto another; None for fewer than two regions."""
    if len(regions) < 2:
        return None
    return max(float(gate_image_diameter(distances, u, v, tolerance))
               for u in regions for v in regions if u is not v)


def audit_largest_region(ball_graph, distances: DistanceMatrix, regions: Sequence[Sequence[Any]],
                         config: ToolkitConfig, depth: Optional[int], prune: bool) -> Optional[AuditReport]:
    """Log-distance audit of the horoball over the largest region's net."""
    if not regions:
        return None
    region = max(regions, key=len)
    net, _ = epsilon_net(ball_graph, config.net_epsilon, distances.submatrix(region))
    depth = depth if depth is not None else default_depth(distances)
    horoball = build_horoball(ball_graph, net, depth, prune, distances, config.horoball_depth_limit)
    return log_distance_audit(horoball, cap=config.audit_cap)


@safe_operation(default_return=None)
def _delta_row(graph: SimplicialGraph, radius: int, config: ToolkitConfig, depth: Optional[int],
               prune: bool) -> Tuple[Dict[str, Any], bool]:
    """One radius of the δ trend, and whether a cap stopped it."""
    start = time.perf_counter()
    tolerance = config.float_tolerance
    try:
        ball = cayley_ball(graph, radius, config.ball_cap)
        regions = peripheral_regions(graph, ball)
        cap = config.delta_vertex_cap
        if len(ball) > cap:
            raise ResourceCapError(f"exact δ is capped at {cap} vertices, got {len(ball)}")
        distances = shortest_paths(ball.graph)
        plain = four_point_delta(distances, vertex_cap=cap, tolerance=tolerance)
        factored = four_point_delta(build_factored(ball.graph, regions), vertex_cap=cap, tolerance=tolerance)
        cusped_graph = build_cusped(ball.graph, regions, depth, config.net_epsilon, prune,
                                    config.horoball_depth_limit)
        cusped = four_point_delta(cusped_graph, vertex_cap=cap, tolerance=tolerance)
        audit = audit_largest_region(ball.graph, distances, regions, config, depth, prune)
    except ResourceCapError as e:
        logger.warning(f"Stopping at radius {radius}: {e}")
        return {"radius": radius, "warning": str(e)}, True

    warning = ""
    if audit is not None and not audit.within_cap:
        warning = f"horoball fit constant {audit.constant:.3f} exceeds the audit cap {audit.cap}"
        logger.warning(f"Radius {radius}: {warning}")
    logger.info(f"Radius {radius}: δ plain {plain.delta}, factored {factored.delta}, cusped {cusped.delta}")
    return {
        "radius": radius,
        "ball_size": len(ball),
        "regions": len(regions),
        "delta_plain": float(plain.delta),
        "delta_factored": float(factored.delta),
        "delta_cusped": float(cusped.delta),
        "cusped_size": len(cusped_graph),
        "gate_diameter": max_gate_diameter(distances, regions, tolerance),
        "audit_constant": audit.constant if audit is not None else None,
        "seconds": round(time.perf_counter() - start, 3),
        "warning": warning,
    }, False


def rh_delta_rows(graph: SimplicialGraph, radii: Sequence[int], config: Optional[ToolkitConfig] = None,
                  depth: Optional[int] = None, prune: bool = True) -> Tuple[pd.DataFrame, bool]:
    """
    Exact δ of the plain, factored, and cusped Cayley balls at each radius,
    with the largest gate image between peripheral regions and the horoball
    audit constant.

    A cap hit stops the run: the rows computed so far are kept and a warning
    row names the radius that failed. Any other failure at one radius leaves
    a warning row and the run moves on.

    Returns:
        (table, truncated)
    """
    config = config or ToolkitConfig()
    rows: List[Dict[str, Any]] = []
    truncated = False
    for radius in radii:
        result = _delta_row(graph, radius, config, depth, prune)
        if result is None:
            rows.append({"radius": radius, "warning": f"radius {radius} failed; see the log"})
            continue
        row, capped = result
        rows.append(row)
        if capped:
            truncated = True
            break
    return pd.DataFrame(rows, columns=DELTA_COLUMNS), truncated
