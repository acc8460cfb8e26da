import hashlib
import json
import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from os.path import join
from typing import Optional

from gapsource.instance import GapBicliqueInstance
from gapsource.wrappers import attach_colorings
from graphs.graph import Graph
from graphs.io import bipartite_from_dict, parse_graph, write_graph
from utils.basic_utils import digest_of, save_json
from utils.errors import InputError

logger = logging.getLogger(__name__)


@dataclass
class RunReport:
    """What a subcommand did. `timing` is the only field allowed to differ between identical runs."""

    command: str
    parameters: dict
    inputs_digest: str = ""
    outputs: dict = field(default_factory=dict)
    result: dict = field(default_factory=dict)
    gap: Optional[dict] = None
    timing: dict = field(default_factory=dict)
    exit_code: int = 0
    error: Optional[str] = None

    def set_gap(self, ds_yes_bound, ds_no_value):
        ratio = Fraction(ds_no_value, ds_yes_bound) if ds_yes_bound else None
        self.gap = {
            "ds_yes_bound": ds_yes_bound,
            "ds_no_value": ds_no_value,
            "ratio": None if ratio is None else float(ratio),
            "ratio_exact": None if ratio is None else str(ratio),
        }

    def to_dict(self):
        return {
            "command": self.command,
            "parameters": self.parameters,
            "inputs_digest": self.inputs_digest,
            "outputs": self.outputs,
            "result": self.result,
            "gap": self.gap,
            "timing": self.timing,
            "exit_code": self.exit_code,
            "error": self.error,
        }


def read_text(path):
    if path is None:
        raise InputError("this command needs --in")
    if not os.path.isfile(path):
        raise FileNotFoundError(f"input file not found: {path}")
    with open(path, "r") as f:
        return f.read()


def file_digest(path):
    with open(path, "rb") as f:
        return hashlib.sha256(f.read()).hexdigest()


def read_json_input(path):
    try:
        data = json.loads(read_text(path))
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: not valid JSON ({e})") from None
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object, got {type(data).__name__}")
    return data


def read_graph_input(path) -> Graph:
    return parse_graph(read_text(path))


def read_colored_input(path, a_colors=None, b_colors=None, config=None):
    """A colored bipartite graph, either stored directly or derived from a gap
    instance by attaching colorings with (a_colors, b_colors), defaulting to (s, d)."""
    data = read_json_input(path)
    if "alpha" in data:
        return bipartite_from_dict(data), None
    inst = GapBicliqueInstance.from_dict(data)
    caps = config.caps if config is not None else {}
    kwargs = {}
    if caps:
        kwargs = dict(vertex_cap=caps.vertices, subset_cap=caps.subsets, entry_cap=caps.family_entries)
    colored = attach_colorings(inst, a_colors or inst.s, b_colors or inst.d, **kwargs)
    return colored, inst


def write_graph_artifact(path, G: Graph, source_digest):
    with open(path, "w") as f:
        f.write(write_graph(G, comments=[f"digest {source_digest}"]))
    return path


def write_json_artifact(path, payload: dict, source_digest):
    save_json(dict(payload, source_digest=source_digest), path)
    return path


def write_report(report: RunReport, output_dir):
    path = join(output_dir, "report.json")
    report.outputs = dict(report.outputs, report=path)
    save_json(report.to_dict(), path)
    return path


def inputs_digest(command, parameters, input_paths):
    files = {p: file_digest(p) for p in input_paths if p is not None and os.path.isfile(p)}
    return digest_of({"command": command, "parameters": parameters, "files": files})
