"""Parameter scans over named state families and the two figure tables.

A scan sweeps one real parameter of a family on a uniform grid and writes
one CSV row per grid node.  Configurations are INI files::

    [scan]
    family = w0_even
    observables = p, Y
    trunc = 3000
    output = fig1.csv

    [sweep]
    name = x
    lo = 0.0
    hi = 5.0
    points = 251

    [params]
    z_re = 1.0
"""

from __future__ import annotations

import cmath
import configparser
import io
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .errors import DomainError, NotNormalizableError, TruncationError
from .moments import k_moments, squeeze_flags
from .representation import TAIL_THRESHOLD, ReprIndex, SqueezeParam
from .states import AcsParams, solve_acs, squeezed_cat_params

__all__ = [
    "Family",
    "FAMILIES",
    "OBSERVABLES",
    "ScanConfig",
    "ScanRow",
    "evaluate",
    "run_scan",
    "format_csv",
    "figure_config",
    "figure_csv",
    "FIGURE_TRUNC",
]

log = logging.getLogger(__name__)

OBSERVABLES = ("q", "p", "X", "Y", "K1", "K2", "mandel_q", "schrodinger")

_COLUMNS = {
    "q": ("var_q",),
    "p": ("var_p",),
    "X": ("var_X",),
    "Y": ("var_Y",),
    "K1": ("var_K1",),
    "K2": ("var_K2",),
    "mandel_q": ("mandel_q",),
    "schrodinger": ("schrodinger_lhs", "schrodinger_rhs"),
}


@dataclass(frozen=True)
class Family:
    """A state family with fixed parameters and one swept real parameter."""

    name: str
    swept: str
    defaults: Mapping[str, float]
    build: Callable[[float, Mapping[str, float]], AcsParams]

    def params_at(self, x, params):
        merged = dict(self.defaults)
        unknown = set(params) - set(merged)
        if unknown:
            raise DomainError(f"family {self.name!r} has no parameters {sorted(unknown)}")
        merged.update(params)
        return self.build(x, merged)


def _w0_even(x, P):
    # |z, sqrt(1+x^2), sign*x; +>
    z = complex(P["z_re"], P["z_im"])
    return AcsParams(z, math.sqrt(1 + x * x), P["v_sign"] * x, 0.0, ReprIndex.even())


def _squeezed_cat_d(x, P):
    # S(xi)|alpha_+> with z = d e^{i phase}
    z = x * cmath.exp(1j * P["z_phase"])
    xi = SqueezeParam.polar(P["r"], P["theta"])
    return squeezed_cat_params(z, xi, int(P["parity"]))


def _squeezed_cat_r(x, P):
    z = P["d"] * cmath.exp(1j * P["z_phase"])
    return squeezed_cat_params(z, SqueezeParam.polar(x, P["theta"]), int(P["parity"]))


def _general(x, P):
    vals = {key: P[key] for key in ("z_re", "z_im", "u_re", "u_im", "v_re", "v_im", "w_re", "w_im")}
    target = P["sweep_target"]
    names = ["z_re", "z_im", "u_re", "u_im", "v_re", "v_im", "w_re", "w_im"]
    vals[names[int(target)]] = x
    k = P["k"]
    rep = ReprIndex.even() if k == 0.25 else ReprIndex.odd() if k == 0.75 else ReprIndex(k)
    return AcsParams(
        complex(vals["z_re"], vals["z_im"]),
        complex(vals["u_re"], vals["u_im"]),
        complex(vals["v_re"], vals["v_im"]),
        complex(vals["w_re"], vals["w_im"]),
        rep,
    )


FAMILIES = {
    f.name: f
    for f in (
        Family("w0_even", "x", {"z_re": 1.0, "z_im": 0.0, "v_sign": -1.0}, _w0_even),
        Family(
            "squeezed_cat",
            "d",
            {"r": 0.31, "theta": 0.0, "z_phase": math.pi, "parity": 0.0},
            _squeezed_cat_d,
        ),
        Family(
            "squeezed_cat_r",
            "r",
            {"d": 1.0, "z_phase": math.pi / 2, "theta": math.pi / 2, "parity": 0.0},
            _squeezed_cat_r,
        ),
        # sweep_target indexes z_re, z_im, u_re, u_im, v_re, v_im, w_re, w_im
        Family(
            "acs",
            "t",
            {
                "k": 0.25, "sweep_target": 0.0,
                "z_re": 0.0, "z_im": 0.0, "u_re": 1.0, "u_im": 0.0,
                "v_re": 0.0, "v_im": 0.0, "w_re": 0.0, "w_im": 0.0,
            },
            _general,
        ),
    )
}


@dataclass(frozen=True)
class ScanConfig:
    family: str
    lo: float
    hi: float
    points: int
    observables: tuple = ("q", "p", "X", "Y")
    params: Mapping[str, float] = field(default_factory=dict)
    trunc: int = 400
    output: str | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown family {self.family!r}; choose from {sorted(FAMILIES)}")
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))
        object.__setattr__(self, "observables", tuple(self.observables))
        object.__setattr__(self, "params", {k: float(v) for k, v in dict(self.params).items()})
        if not self.lo < self.hi:
            raise DomainError(f"sweep needs lo < hi, got {self.lo} >= {self.hi}")
        if int(self.points) != self.points or self.points < 2:
            raise DomainError(f"sweep needs at least 2 points, got {self.points}")
        if self.trunc < 50:
            raise DomainError(f"truncation must be at least 50, got {self.trunc}")
        unknown = set(self.params) - set(FAMILIES[self.family].defaults)
        if unknown:
            raise DomainError(f"family {self.family!r} has no parameters {sorted(unknown)}")
        bad = [o for o in self.observables if o not in OBSERVABLES]
        if bad or not self.observables:
            raise DomainError(f"observables must be a non-empty subset of {OBSERVABLES}, got {bad}")

    @property
    def swept(self):
        return FAMILIES[self.family].swept

    def grid(self):
        return np.linspace(self.lo, self.hi, int(self.points))

    def columns(self):
        cols = [self.swept]
        for obs in self.observables:
            cols.extend(_COLUMNS[obs])
        return cols + ["q_sq", "p_sq", "x_sq", "y_sq", "tail_norm", "certified"]

    def to_ini(self):
        cp = configparser.ConfigParser(interpolation=None)
        cp.optionxform = str
        cp["scan"] = {
            "family": self.family,
            "observables": ", ".join(self.observables),
            "trunc": str(self.trunc),
        }
        if self.output is not None:
            cp["scan"]["output"] = self.output
        cp["sweep"] = {"name": self.swept, "lo": repr(self.lo), "hi": repr(self.hi), "points": str(self.points)}
        cp["params"] = {k: repr(v) for k, v in self.params.items()}
        buf = io.StringIO()
        cp.write(buf)
        return buf.getvalue()

    @classmethod
    def from_ini(cls, text):
        cp = configparser.ConfigParser(interpolation=None)
        cp.optionxform = str
        cp.read_string(text)
        scan, sweep = cp["scan"], cp["sweep"]
        family = scan["family"]
        if family in FAMILIES and sweep.get("name", FAMILIES[family].swept) != FAMILIES[family].swept:
            raise DomainError(f"family {family!r} sweeps {FAMILIES[family].swept!r}, not {sweep['name']!r}")
        return cls(
            family=family,
            lo=float(sweep["lo"]),
            hi=float(sweep["hi"]),
            points=int(sweep["points"]),
            observables=tuple(o.strip() for o in scan.get("observables", "q, p, X, Y").split(",") if o.strip()),
            params={k: float(v) for k, v in cp["params"].items()} if cp.has_section("params") else {},
            trunc=int(scan.get("trunc", "400")),
            output=scan.get("output"),
        )

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.from_ini(fh.read())


@dataclass(frozen=True)
class ScanRow:
    value: float
    values: tuple
    certified: bool


def evaluate(params, N):
    """Solve and take moments without failing on truncation; returns ``(report, tail)``."""
    state = solve_acs(params, N, tol=math.inf, tail_tol=math.inf)
    return k_moments(state), state.tail_norm


def _row(config, x):
    fam = FAMILIES[config.family]
    nan = float("nan")
    ncols = len(config.columns()) - 1
    try:
        report, tail = evaluate(fam.params_at(x, config.params), config.trunc)
    except (NotNormalizableError, DomainError, TruncationError) as exc:
        log.warning("%s = %r: %s", config.swept, x, exc)
        return ScanRow(float(x), (nan,) * (ncols - 1) + (0,), False)
    vals = []
    for obs in config.observables:
        for name in _COLUMNS[obs]:
            v = getattr(report, name)
            vals.append(nan if v is None else float(v))
    if report.var_q is not None:
        f = squeeze_flags(report)
        vals.extend(int(b) for b in (f.q_sq, f.p_sq, f.x_sq, f.y_sq))
    else:
        vals.extend([0, 0, 0, 0])
    certified = tail <= TAIL_THRESHOLD
    if not certified:
        log.warning("%s = %r: tail weight %.3g exceeds %.1g at N=%d", config.swept, x, tail, TAIL_THRESHOLD, config.trunc)
    vals.extend([tail, int(certified)])
    return ScanRow(float(x), tuple(vals), certified)


def run_scan(config):
    return [_row(config, float(x)) for x in config.grid()]


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def format_csv(columns, rows):
    lines = [",".join(columns)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def scan_csv(config):
    rows = run_scan(config)
    return format_csv(config.columns(), [(r.value, *r.values) for r in rows])


# Truncations for the figure families; fig1 approaches |v/u| = 0.98 at x = 5.
FIGURE_TRUNC = {"fig1": 3000, "fig2": 400}


def figure_config(which):
    if which == "fig1":
        return ScanConfig("w0_even", 0.0, 5.0, 251, ("p", "Y"), {"z_re": 1.0}, FIGURE_TRUNC["fig1"])
    if which == "fig2":
        return ScanConfig("squeezed_cat", 0.0, 0.6, 241, ("q", "X"), {"r": 0.31}, FIGURE_TRUNC["fig2"])
    raise DomainError(f"unknown figure {which!r}; choose fig1 or fig2")


def figure_csv(which):
    """Figure table: fig1 ``x, var_p, var_Y``; fig2 ``d, two_var_q, var_X``."""
    config = figure_config(which)
    fam = FAMILIES[config.family]
    rows = []
    for x in map(float, config.grid()):
        report, tail = evaluate(fam.params_at(x, config.params), config.trunc)
        if tail > TAIL_THRESHOLD:
            raise TruncationError(f"{which}: tail {tail:.3g} at {fam.swept} = {x}", tail_norm=tail, dimension=config.trunc)
        if which == "fig1":
            rows.append((x, report.var_p, report.var_Y))
        else:
            rows.append((x, 2 * report.var_q, report.var_X))
    header = ["x", "var_p", "var_Y"] if which == "fig1" else ["d", "two_var_q", "var_X"]
    return format_csv(header, rows)
