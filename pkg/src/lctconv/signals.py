"""Test-signal generators and the JSON / CSV signal file formats.

JSON::

    {"grid": {"start": float, "step": float, "count": int},
     "values": [[re, im], ...]}

CSV: an optional ``# start=...,step=...,count=...`` line, then the header
``t,re,im`` and one row per sample.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.special import erf

from .core import SampledSignal, SampleGrid, Spectrum, LctParams
from .errors import GridMismatch, ParseError

KINDS = ("gaussian", "chirp", "rect", "smoothrect", "noise")


@dataclass(frozen=True)
class GeneratorSpec:
    """``kind`` plus its keyword parameters.

    gaussian(center=0, width=1, amplitude=1)  exp(-(t-center)^2 / (2 width^2))
    chirp(rate=1, width=None, center=0)       exp(j rate t^2 / 2), Gaussian window if width
    rect(left=-1, right=1)                    1 on [left, right), 0 elsewhere
    smoothrect(left=-1, right=1, edge=0.25)   rect blurred by a Gaussian of width edge
    noise(seed=0)                             complex white Gaussian noise
    """

    kind: str
    grid: SampleGrid
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown signal kind {self.kind!r}; choose from {KINDS}")
        p = self.params
        if p.get("width") is not None and p["width"] <= 0:
            raise ValueError("width must be positive")
        if self.kind in ("rect", "smoothrect") and not p.get("left", -1) < p.get("right", 1):
            raise ValueError("need left < right")
        if self.kind == "smoothrect" and p.get("edge", 0.25) <= 0:
            raise ValueError("edge must be positive")


def generate(spec: GeneratorSpec) -> SampledSignal:
    t = spec.grid.points
    p = spec.params
    if spec.kind == "gaussian":
        c, w = p.get("center", 0.0), p.get("width", 1.0)
        v = p.get("amplitude", 1.0) * np.exp(-((t - c) ** 2) / (2 * w**2))
    elif spec.kind == "chirp":
        v = np.exp(0.5j * p.get("rate", 1.0) * t**2).astype(complex)
        if p.get("width") is not None:
            v *= np.exp(-((t - p.get("center", 0.0)) ** 2) / (2 * p["width"] ** 2))
    elif spec.kind == "rect":
        v = ((t >= p.get("left", -1.0)) & (t < p.get("right", 1.0))).astype(float)
    elif spec.kind == "smoothrect":
        lft, rgt, e = p.get("left", -1.0), p.get("right", 1.0), p.get("edge", 0.25)
        s = e * math.sqrt(2)
        v = 0.5 * (erf((t - lft) / s) - erf((t - rgt) / s))
    else:
        rng = np.random.default_rng(int(p.get("seed", 0)))
        v = (rng.standard_normal(t.size) + 1j * rng.standard_normal(t.size)) / math.sqrt(2)
    return SampledSignal(spec.grid, v)


def parse_signal_spec(text: str, grid: SampleGrid) -> GeneratorSpec:
    """``"gaussian"``, ``"gaussian:center=1,width=0.5"``, ``"noise:seed=7"`` ..."""
    kind, _, rest = text.strip().partition(":")
    params = {}
    for item in filter(None, rest.split(",")):
        key, eq, val = item.partition("=")
        if not eq:
            raise ValueError(f"expected key=value in {text!r}, got {item!r}")
        params[key.strip()] = float(val)
    return GeneratorSpec(kind.strip().lower(), grid, params)


def _grid_from_mapping(obj, where):
    try:
        return SampleGrid(float(obj["start"]), float(obj["step"]), int(obj["count"]))
    except KeyError as exc:
        raise ParseError(f"{where}: grid is missing field {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{where}: bad grid ({exc})") from None


def _read_json(text: str, path):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict) or "grid" not in doc or "values" not in doc:
        raise ParseError(f"{path}: expected an object with 'grid' and 'values'")
    grid = _grid_from_mapping(doc["grid"], f"{path}: field 'grid'")
    raw = doc["values"]
    if not isinstance(raw, list):
        raise ParseError(f"{path}: field 'values' must be a list")
    values = np.empty(len(raw), dtype=complex)
    for i, pair in enumerate(raw):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise ParseError(f"{path}: values[{i}] must be [re, im]")
        try:
            re, im = float(pair[0]), float(pair[1])
        except (TypeError, ValueError):
            raise ParseError(f"{path}: values[{i}] is not numeric") from None
        if not (math.isfinite(re) and math.isfinite(im)):
            raise ParseError(f"{path}: values[{i}] is not finite ({pair[0]}, {pair[1]})")
        values[i] = complex(re, im)
    if values.size != grid.count:
        raise GridMismatch(f"{path}: grid says {grid.count} samples, found {values.size}")
    params = doc.get("params")
    if params is not None:
        try:
            return Spectrum(grid, values, LctParams(*params))
        except (TypeError, ValueError) as exc:
            raise ParseError(f"{path}: field 'params': {exc}") from None
    return SampledSignal(grid, values)


def _read_csv(text: str, path):
    lines = text.splitlines()
    header_grid = None
    lineno = 0
    if lines and lines[0].startswith("#"):
        fields = {}
        for item in lines[0][1:].split(","):
            key, _, val = item.partition("=")
            fields[key.strip()] = val.strip()
        header_grid = _grid_from_mapping(fields, f"{path}: line 1")
        lineno = 1
    reader = csv.reader(lines[lineno:])
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError(f"{path}: missing 't,re,im' header") from None
    lineno += 1
    if [h.strip() for h in header] != ["t", "re", "im"]:
        raise ParseError(f"{path}: line {lineno}: expected header 't,re,im', got {header}")
    t, values = [], []
    for row in reader:
        lineno += 1
        if not row:
            continue
        if len(row) != 3:
            raise ParseError(f"{path}: line {lineno}: expected 3 fields, got {len(row)}")
        nums = []
        for name, cell in zip(("t", "re", "im"), row):
            try:
                x = float(cell)
            except ValueError:
                raise ParseError(f"{path}: line {lineno}, field {name!r}: not a number: {cell!r}") from None
            if not math.isfinite(x):
                raise ParseError(f"{path}: line {lineno}, field {name!r}: not finite")
            nums.append(x)
        t.append(nums[0])
        values.append(complex(nums[1], nums[2]))
    if header_grid is not None:
        if len(values) != header_grid.count:
            raise GridMismatch(
                f"{path}: header says {header_grid.count} samples, found {len(values)} rows"
            )
        return SampledSignal(header_grid, values)
    if len(t) < 2:
        raise ParseError(f"{path}: need at least 2 samples")
    t = np.asarray(t)
    step = (t[-1] - t[0]) / (t.size - 1)
    if step <= 0 or np.max(np.abs(np.diff(t) - step)) > 1e-9 * step:
        raise ParseError(f"{path}: column 't' is not uniformly increasing")
    return SampledSignal(SampleGrid(t[0], step, t.size), values)


def read_signal(path) -> SampledSignal:
    """Load a signal; JSON unless the suffix is ``.csv``.

    A JSON file with a ``params`` entry comes back as a :class:`Spectrum`.
    """
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".csv":
        return _read_csv(text, path)
    return _read_json(text, path)


def signal_to_json(signal: SampledSignal) -> str:
    doc = {
        "grid": signal.grid.summary(),
        "values": [[float(v.real), float(v.imag)] for v in signal.values],
    }
    if isinstance(signal, Spectrum):
        doc["params"] = list(signal.params.as_tuple())
    return json.dumps(doc)


def signal_to_csv(signal: SampledSignal) -> str:
    g = signal.grid
    buf = io.StringIO()
    buf.write(f"# start={g.start!r},step={g.step!r},count={g.count}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "re", "im"])
    for t, v in zip(g.points, signal.values):
        w.writerow([repr(float(t)), repr(float(v.real)), repr(float(v.imag))])
    return buf.getvalue()


def write_signal(signal: SampledSignal, path, fmt=None) -> None:
    """Write ``signal``; ``fmt`` is "json" or "csv" (default: from the suffix)."""
    if len(signal.values) == 0:
        raise ValueError("refusing to write an empty signal")
    path = Path(path)
    fmt = fmt or ("csv" if path.suffix.lower() == ".csv" else "json")
    if fmt == "json":
        text = signal_to_json(signal)
    elif fmt == "csv":
        text = signal_to_csv(signal)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    path.write_text(text)


def write_plot_data(signal: SampledSignal, path) -> None:
    """CSV of axis, magnitude and phase, ready for any plotting tool."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["axis", "abs", "phase"])
        for x, v in zip(signal.grid.points, signal.values):
            w.writerow([repr(float(x)), repr(float(abs(v))), repr(float(np.angle(v)))])
