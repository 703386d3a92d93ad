"""Tabulated data for the six standard plots of the potential.

1. amplitude ``V0`` against the nontrivial zero angle ``theta0``
2. parametric curves ``(x, V)`` for several amplitudes
3. exact vs 10-term series, ``V0 = 3.1``
4. exact vs 10-term series, ``V0 = 7.1``
5. exact vs 10-term critical series, ``V0 = 2pi``
6. exact vs large-|x| approximant on a log grid

Rows are produced sequentially, so identical specs give identical output.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .asymptotics import asym_V
from .errors import DomainError
from .expansions import eval_case1, eval_case2
from .solver import TWO_PI, Regime, classify, invert_V, principal_V, theta_to_xV, v0_of_theta0

DEFAULT_V0_LIST = (1.0, 3.1, TWO_PI, 7.1, 10.0)


@dataclass(frozen=True)
class FigureSpec:
    id: int
    v0: float | None = None
    v0_list: tuple[float, ...] = ()
    x_range: tuple[float, float] | None = None
    theta_range: tuple[float, float] | None = None
    samples: int = 0
    order: int = 10


_DEFAULTS = {
    1: FigureSpec(1, theta_range=(0.01, 1.55), samples=100),
    2: FigureSpec(2, v0_list=DEFAULT_V0_LIST, theta_range=(-1.4, 1.4), samples=401),
    3: FigureSpec(3, v0=3.1, x_range=(-0.25, 0.25), samples=201),
    # the 7.1 series only converges for |x| < ~0.0169 (complex singularity)
    4: FigureSpec(4, v0=7.1, x_range=(-0.015, 0.015), samples=201),
    5: FigureSpec(5, v0=TWO_PI, x_range=(-0.25, 0.25), samples=201),
    6: FigureSpec(6, v0=7.1, x_range=(1.0, 1000.0), samples=101),
}


def default_spec(fig_id: int, **overrides) -> FigureSpec:
    if fig_id not in _DEFAULTS:
        raise DomainError(f"figure id must be 1..6, got {fig_id!r}")
    overrides = {k: v for k, v in overrides.items() if v is not None}
    if fig_id == 5 and "v0" in overrides:
        raise DomainError("figure 5 is fixed at the critical amplitude 2*pi")
    return replace(_DEFAULTS[fig_id], **overrides)


@dataclass
class FigureData:
    columns: list[str]
    rows: list[tuple[float, ...]] = field(default_factory=list)


def _principal_or_nan(x: float, V0: float) -> float:
    try:
        return principal_V(x, V0)
    except DomainError:
        return math.nan


def build(spec: FigureSpec) -> FigureData:
    if spec.samples < 2:
        raise DomainError("need at least 2 samples")
    if spec.id == 1:
        data = FigureData(["theta0", "V0"])
        for th in np.linspace(*spec.theta_range, spec.samples):
            data.rows.append((float(th), v0_of_theta0(float(th))))
        return data
    if spec.id == 2:
        data = FigureData(["v0", "x", "V"])
        for v0 in spec.v0_list:
            classify(v0)
            for th in np.linspace(*spec.theta_range, spec.samples):
                p = theta_to_xV(float(th), v0)
                data.rows.append((v0, p.x, p.V))
        return data
    if spec.id in (3, 4, 5):
        params = classify(spec.v0)
        data = FigureData(["x", "V_exact", f"V_series{spec.order}"])
        for x in np.linspace(*spec.x_range, spec.samples):
            x = float(x)
            if params.regime is Regime.CRITICAL:
                series = eval_case2(x, spec.order)
            else:
                series = eval_case1(x, spec.v0, spec.order)
            data.rows.append((x, _principal_or_nan(x, spec.v0), series))
        return data
    if spec.id == 6:
        lo, hi = spec.x_range
        if lo <= 0:
            raise DomainError("figure 6 uses a log grid; x range must be positive")
        data = FigureData(["x", "V_exact", "V_asym"])
        for x in np.geomspace(lo, hi, spec.samples):
            x = float(x)
            data.rows.append((x, invert_V(x, spec.v0), asym_V(x)))
        return data
    raise DomainError(f"figure id must be 1..6, got {spec.id!r}")


def fmt(value: float) -> str:
    return f"{value:.17g}"


def to_csv(data: FigureData) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(data.columns)
    for row in data.rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def to_json(data: FigureData) -> str:
    rows = [[None if math.isnan(v) else v for v in row] for row in data.rows]
    return json.dumps({"columns": data.columns, "rows": rows}) + "\n"
