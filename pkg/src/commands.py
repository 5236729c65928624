"""
Command implementations behind main.py.

Each command reads its inputs, runs an engine, and returns the text written
to stdout. Errors propagate to main, which maps them to exit codes.
"""

import json
from typing import Optional

import pandas as pd

from src.curves.classification import classify_graph_of_multicurves
from src.curves.surfaces import SurfaceType, WitnessKind
from src.experiments import curves_survey, parse_radii, rh_delta_rows
from src.hhs.index_structure import IndexStructure, complexity, rank
from src.hhs.isolation import derive_relative_skeleton, find_isolating_collection
from src.hhs.validation import validate_structure
from src.metric.delta import EXACT, four_point_delta
from src.metric.metric_graph import load_metric_graph
from src.racg.caprace import find_peripheral_collection
from src.racg.defining_graph import SimplicialGraph
from src.reports import Provenance, input_hash
from src.utils.error_handler import InputError, handle_file_operations
from src.utils.logger import get_logger
from src.utils.toolkit_config import ToolkitConfig

logger = get_logger()

JSON = "json"
CSV = "csv"


@handle_file_operations
def read_input(path: str) -> str:
    with open(path, 'r', encoding='utf-8') as f:
        return f.read()


def render_table(frame: pd.DataFrame, fmt: str) -> str:
    if fmt == JSON:
        return json.dumps(json.loads(frame.to_json(orient="records")), sort_keys=True, indent=2)
    return frame.to_csv(index=False)


def dump(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)


def cmd_racg_classify(path: str, command: Optional[str] = None) -> str:
    """Classify W_Γ for the defining graph in a text file."""
    text = read_input(path)
    graph = SimplicialGraph.from_text(text)
    report = find_peripheral_collection(graph)
    return report.with_provenance(Provenance(command or "racg-classify", input_hash(text))).to_json()


def cmd_curves_classify(kind: str, surface: str, config: ToolkitConfig, command: Optional[str] = None) -> str:
    """Classify one graph of multicurves."""
    witness_kind = WitnessKind.parse(kind)
    surface_type = SurfaceType.parse(surface)
    report = classify_graph_of_multicurves(witness_kind, surface_type, config)
    key = f"{witness_kind.value}:{surface_type.genus},{surface_type.punctures}"
    provenance = Provenance(command or "curves-classify", input_hash(key))
    return report.with_provenance(provenance).to_json()


def cmd_curves_survey(kind: str, max_bound: Optional[int], config: ToolkitConfig, fmt: str = CSV) -> str:
    """Survey table for one witness kind over every surface with 2g + n <= max_bound."""
    bound = max_bound if max_bound is not None else config.survey_bound
    if bound > config.enumeration_bound:
        raise InputError(f"survey bound {bound} exceeds the enumeration bound {config.enumeration_bound}")
    return render_table(curves_survey(WitnessKind.parse(kind), bound, config), fmt)


def cmd_experiment_rh_delta(path: str, radii: str, config: ToolkitConfig, depth: Optional[int] = None,
                            prune: bool = True, fmt: str = CSV) -> str:
    """δ trend of plain, factored, and cusped Cayley balls; partial tables end in a warning row."""
    graph = SimplicialGraph.from_text(read_input(path))
    frame, truncated = rh_delta_rows(graph, parse_radii(radii), config, depth, prune)
    if truncated:
        logger.warning("Experiment stopped early; the table ends with a warning row")
    return render_table(frame, fmt)


def cmd_metric_delta(path: str, config: ToolkitConfig, mode: str = EXACT, seed: Optional[int] = None,
                     command: Optional[str] = None) -> str:
    """Four-point δ of a metric graph document."""
    graph = load_metric_graph(path, exact=config.exact_rational)
    report = four_point_delta(graph, mode, seed, config.sample_size, config.delta_vertex_cap,
                               0.0 if config.exact_rational else config.float_tolerance)
    payload = report.to_dict()
    payload["provenance"] = Provenance(command or "metric-delta", input_hash(read_input(path))).to_dict()
    return dump(payload)


def cmd_hhs(action: str, path: str, config: ToolkitConfig, clean_containers: bool = False,
            command: Optional[str] = None) -> str:
    """
    validate: every index-level axiom with complexity and rank.
    isolate: the lexicographically least isolating collection and its skeleton.
    """
    text = read_input(path)
    structure = IndexStructure.from_json(text)
    provenance = Provenance(command or f"hhs {action}", input_hash(text)).to_dict()

    if action == "validate":
        report = validate_structure(structure, clean_containers=clean_containers)
        payload = report.to_dict()
        if report.ok:
            size, witness = rank(structure)
            payload["complexity"] = complexity(structure)
            payload["rank"] = size
            payload["rank_witness"] = sorted(witness)
        payload["provenance"] = provenance
        return dump(payload)

    if action == "isolate":
        certificate = find_isolating_collection(structure, config.isolation_pool_limit)
        payload = {"found": certificate is not None, "provenance": provenance}
        if certificate is not None:
            payload["certificate"] = certificate.to_dict()
            payload["isolating_set"] = sorted(certificate.isolating_set)
            payload["skeleton"] = derive_relative_skeleton(structure, certificate).to_dict()
        return dump(payload)

    raise InputError(f"unknown hhs action '{action}'; expected validate or isolate")
