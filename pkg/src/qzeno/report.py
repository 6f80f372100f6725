"""Machine-readable command reports (JSON and CSV)."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass
from importlib import resources

import numpy as np

SCHEMA_VERSION = "1.0"

CSV_HEADERS = {
    "matrix": ["row", "col", "value"],
    "trajectory": ["k", "theta", "initial", "trials", "seed", "mean", "stderr", "analytic"],
    "robustness": ["k", "eps_max", "theta", "mean", "stderr", "trials"],
    "cluster": ["n_from", "n_to", "success_prob", "oracle_fidelity", "corrections"],
    "phys": ["delta", "tau", "total_time", "theta", "n_steps", "bell_time", "status",
             "click_step", "cumulative_prob", "analytic_success", "fidelity_psi_plus"],
}


def plain(obj):
    """Recursively turn numpy scalars/arrays and tuples into JSON-native values."""
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return plain(obj.tolist())
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


@dataclass
class Report:
    command: str
    inputs: dict
    results: dict
    timing: dict | None = None
    schema_version: str = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return plain(asdict(self))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls(**json.loads(text))

    def csv_rows(self) -> list[dict]:
        r = self.results
        if self.command == "matrix":
            return [{"row": i, "col": j, "value": v}
                    for i, row in enumerate(r["matrix"]) for j, v in enumerate(row)]
        if self.command == "robustness":
            return list(r["cells"])
        if self.command == "cluster":
            return list(r["steps"])
        if self.command == "phys":
            return [{**{k: self.inputs[k] for k in ("delta", "tau", "total_time")}, **r}]
        return [r]

    def to_csv(self) -> str:
        header = CSV_HEADERS[self.command]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=header, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in self.csv_rows():
            writer.writerow({k: _csv_value(v) for k, v in plain(row).items()})
        return buf.getvalue()


def _csv_value(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return v


def load_schema() -> dict:
    return json.loads(resources.files("qzeno").joinpath("report.schema.json").read_text())
