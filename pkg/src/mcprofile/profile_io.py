"""Reading and writing profile points, MCAP results and fit tables."""

import csv
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import MalformedRow, MissingHeader, NonFiniteValue, TooFewPoints

MIN_POINTS = 5
PROFILE_HEADER = ("parameter", "loglik")
FIT_TABLE_HEADER = ("parameter", "smoothed", "quadratic")
RESULT_KEYS = (
    "confidence", "lambda", "ngrid", "mle", "quadratic_max", "ci", "delta",
    "se_stat", "se_mc", "se_total", "warnings",
)


def _frozen(values):
    arr = np.array(values, dtype=float).reshape(-1)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class ProfilePoints:
    """Monte Carlo evaluations of a profile log likelihood.

    Each evaluation is the true profile at ``parameters[k]`` plus a Monte
    Carlo bias and a mean-zero Monte Carlo error; neither term is observable,
    so only the sums are stored. File order is preserved.
    """

    parameters: np.ndarray
    loglik: np.ndarray

    def __post_init__(self):
        parameters = _frozen(self.parameters)
        loglik = _frozen(self.loglik)
        if parameters.shape != loglik.shape:
            raise ValueError("parameters and loglik must have the same length")
        if len(parameters) < MIN_POINTS:
            raise TooFewPoints(len(parameters), MIN_POINTS)
        if not (np.all(np.isfinite(parameters)) and np.all(np.isfinite(loglik))):
            raise NonFiniteValue(0, "profile values must be finite")
        object.__setattr__(self, "parameters", parameters)
        object.__setattr__(self, "loglik", loglik)

    def __len__(self):
        return len(self.parameters)

    def __eq__(self, other):
        if not isinstance(other, ProfilePoints):
            return NotImplemented
        return (np.array_equal(self.parameters, other.parameters)
                and np.array_equal(self.loglik, other.loglik))

    def shifted(self, offset=0.0, slope=0.0):
        """Return a copy with ``offset + slope * parameter`` added to loglik."""
        return ProfilePoints(self.parameters, self.loglik + offset + slope * self.parameters)


def _parse_float(text, line, field):
    try:
        value = float(text)
    except ValueError:
        raise MalformedRow(line, f"{field} {text!r} is not a number") from None
    if not math.isfinite(value):
        raise NonFiniteValue(line, f"{field} is {text.strip()!r}")
    return value


def read_profile_csv(path):
    """Parse a ``parameter,loglik`` CSV file into :class:`ProfilePoints`.

    Blank lines are skipped. Line numbers in errors count from 1 at the header.
    """
    parameters, loglik = [], []
    with open(path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != PROFILE_HEADER:
            raise MissingHeader(f"expected header 'parameter,loglik' in {path}")
        for row in reader:
            line = reader.line_num
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != 2:
                raise MalformedRow(line, f"expected 2 fields, got {len(row)}")
            parameters.append(_parse_float(row[0], line, "parameter"))
            loglik.append(_parse_float(row[1], line, "loglik"))
    if len(parameters) < MIN_POINTS:
        raise TooFewPoints(len(parameters), MIN_POINTS)
    return ProfilePoints(parameters, loglik)


def write_profile_csv(points, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(PROFILE_HEADER)
        for p, ll in zip(points.parameters, points.loglik):
            writer.writerow((repr(float(p)), repr(float(ll))))


def result_to_dict(result):
    """JSON-ready mapping of an :class:`~mcprofile.core.McapResult`."""
    budget = result.budget
    return {
        "confidence": float(budget.confidence),
        "lambda": float(result.config.span),
        "ngrid": int(result.config.ngrid),
        "mle": float(result.mle),
        "quadratic_max": float(result.quadratic_max),
        "ci": [float(result.ci[0]), float(result.ci[1])],
        "delta": float(budget.delta),
        "se_stat": float(budget.se_stat),
        "se_mc": float(budget.se_mc),
        "se_total": float(budget.se_total),
        "warnings": list(result.warnings),
    }


def dump_json(obj, path):
    text = json.dumps(obj, indent=2) + "\n"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def write_result(result, path):
    dump_json(result_to_dict(result), path)


def read_result(path):
    """Load a result JSON written by :func:`write_result` as a plain dict."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    missing = [k for k in RESULT_KEYS if k not in data]
    if missing:
        raise ValueError(f"result file {path} lacks keys {missing}")
    return data


def write_fit_table(result, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(FIT_TABLE_HEADER)
        for row in result.fit_table:
            writer.writerow([repr(float(v)) for v in row])
