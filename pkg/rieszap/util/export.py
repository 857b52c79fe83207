from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Union

import numpy as np

from rieszap.util.checks import ScenarioReport
from rieszap.util.circle_set import ArcSet, normalize
from rieszap.util.errors import InvalidInputError
from rieszap.util.multiplicity import StepProfile
from rieszap.util.riesz_bounds import GramMatrix
from rieszap.util.trig_poly import TrigPoly

PathLike = Union[str, Path]

COUNTING_COLUMNS = ["x", "N", "rho", "count", "ratio"]
REPORT_COLUMNS = ["name", "passed", "value", "bound", "tolerance", "informational", "detail"]


def _json_default(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError("Object of type %s is not JSON serializable" % type(value).__name__)


def write_json(path: PathLike, payload: Dict[str, Any]) -> None:
    with open(path, "wt", encoding="UTF-8") as f:
        json.dump(payload, f, indent=2, default=_json_default)
        f.write("\n")


def read_json(path: PathLike) -> Dict[str, Any]:
    with open(path, "rt", encoding="UTF-8") as f:
        data = json.load(f)
    if not isinstance(data, dict):
        raise InvalidInputError("%s does not hold a JSON object" % path)
    return data


def read_arc_set(path: PathLike) -> ArcSet:
    return ArcSet.from_json_dict(read_json(path))


def read_trig_poly(path: PathLike) -> TrigPoly:
    return TrigPoly.from_json_dict(read_json(path))


def read_profile(path: PathLike) -> StepProfile:
    return StepProfile.from_json_dict(read_json(path))


def read_gram_json(path: PathLike) -> GramMatrix:
    return GramMatrix.from_json_dict(read_json(path))


def write_arc_csv(path: PathLike, arc_set: ArcSet) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["start", "end"])
        for s, e in zip(arc_set.starts, arc_set.ends):
            writer.writerow([repr(float(s)), repr(float(e))])


def read_arc_csv(path: PathLike) -> ArcSet:
    with open(path, "r", newline="") as f:
        reader = csv.DictReader(f)
        return normalize([(float(row["start"]), float(row["end"])) for row in reader])


def write_gram_csv(path: PathLike, G: GramMatrix) -> None:
    """Row-major, one "re,im" cell per entry."""
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        for row in G.entries:
            writer.writerow(["%r,%r" % (float(z.real), float(z.imag)) for z in row])


def read_gram_csv(path: PathLike) -> GramMatrix:
    rows: List[List[complex]] = []
    with open(path, "r", newline="") as f:
        for cells in csv.reader(f):
            row: List[complex] = []
            for cell in cells:
                re, im = cell.split(",")
                row.append(complex(float(re), float(im)))
            rows.append(row)
    return GramMatrix.from_array(np.array(rows, dtype=np.complex128))


def write_profile_csv(path: PathLike, profile: StepProfile) -> None:
    edges = np.append(profile.breakpoints, profile.period)
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["start", "end", "value"])
        for k, value in enumerate(profile.values):
            writer.writerow([repr(float(edges[k])), repr(float(edges[k + 1])), int(value)])


def write_counting_csv(path: PathLike, rows: Iterable[Dict[str, Any]]) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=COUNTING_COLUMNS)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: repr(row[k]) if isinstance(row[k], float) else row[k] for k in COUNTING_COLUMNS})


def read_counting_csv(path: PathLike) -> List[Dict[str, Any]]:
    with open(path, "r", newline="") as f:
        return [
            {
                "x": float(row["x"]),
                "N": int(row["N"]),
                "rho": float(row["rho"]),
                "count": int(row["count"]),
                "ratio": float(row["ratio"]),
            }
            for row in csv.DictReader(f)
        ]


def write_report_csv(path: PathLike, report: ScenarioReport) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=REPORT_COLUMNS)
        writer.writeheader()
        for check in report.checks:
            writer.writerow(check.to_json_dict())
