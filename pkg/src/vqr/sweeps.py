"""Figure-data sweeps and deterministic table emission.

Each sweep consumes a SweepSpec and yields an ordered list of row dicts.
CSV output uses 12 significant digits, '.' as the decimal separator and
'\\n' line endings; every row carries a short hash of the sweep spec so a
table is traceable to the exact parameters that produced it.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field

import numpy as np

from . import metrics
from .errors import NumericalFailure, OutOfRange
from .realism import realism, realism_max
from .states import computational_observable, mu_state, spin_observable, werner

DEFAULT_SEED = 20240
WERNER_KINDS = ("vn", "tr", "hs", "bu", "he")
RMAX_KINDS = ("tr", "hs", "bu", "he", "vn")
MU_KINDS = ("bu", "he")
MU_PHIS = (0.0, np.pi / 4, np.pi / 2)
THETA_INVARIANCE_POINTS = 8
THETA_INVARIANCE_TOL = 1e-9


def parse_kind(token: str):
    """Map a CLI token (tr, hs, bu, he, vn, lp<p>) to a kind object."""
    token = token.strip().lower()
    simple = {
        "tr": metrics.TRACE,
        "hs": metrics.HILBERT_SCHMIDT,
        "bu": metrics.BURES,
        "he": metrics.HELLINGER,
        "vn": metrics.VON_NEUMANN,
    }
    if token in simple:
        return simple[token]
    if token.startswith("lp"):
        try:
            return metrics.lp(float(token[2:]))
        except ValueError as exc:
            raise OutOfRange(f"cannot parse L_p order from {token!r}") from exc
    raise OutOfRange(f"unknown kind token {token!r}")


@dataclass(frozen=True)
class SweepSpec:
    """Parameters of one harness run; its hash stamps every output row."""

    experiment: str
    grid: dict = field(default_factory=dict)
    kinds: tuple[str, ...] = ()
    seed: int = DEFAULT_SEED
    output_path: str | None = None
    format: str = "csv"

    def spec_hash(self) -> str:
        payload = json.dumps(
            {
                "experiment": self.experiment,
                "grid": self.grid,
                "kinds": list(self.kinds),
                "seed": self.seed,
            },
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:12]


def fmt(value) -> str:
    """12-significant-digit decimal formatting for floats."""
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def rows_to_csv(rows: list[dict], fieldnames: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fieldnames)
    for row in rows:
        writer.writerow([fmt(row[name]) for name in fieldnames])
    return buf.getvalue()


def write_table(rows: list[dict], fieldnames: list[str], spec: SweepSpec) -> str:
    if spec.format == "json":
        text = json.dumps(rows, indent=2, sort_keys=True) + "\n"
    else:
        text = rows_to_csv(rows, fieldnames)
    if spec.output_path:
        with open(spec.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text


# --------------------------------------------------------------------------
# Sweeps
# --------------------------------------------------------------------------

WERNER_FIELDS = ["spec_hash", "epsilon", "kind", "r_value", "r_max", "delta_i"]
RMAX_FIELDS = ["spec_hash", "d_e", "kind", "r_max"]
MU_FIELDS = ["spec_hash", "mu", "phi", "kind", "r_value"]


def run_werner_sweep(spec: SweepSpec) -> list[dict]:
    """Realism of a computational-basis qubit observable on the Werner
    family, for every requested kind over the epsilon grid."""
    steps = int(spec.grid.get("eps_steps", 101))
    if steps < 2:
        raise OutOfRange(f"need at least 2 grid points, got {steps}")
    kinds = [parse_kind(t) for t in (spec.kinds or WERNER_KINDS)]
    obs = computational_observable(2, 0, (2, 2))
    stamp = spec.spec_hash()
    rows = []
    for eps in np.linspace(0.0, 1.0, steps):
        rho = werner(float(eps))
        for kind in kinds:
            report = realism(rho, obs, kind)
            rows.append(
                {
                    "spec_hash": stamp,
                    "epsilon": float(eps),
                    "kind": kind.token(),
                    "r_value": report.r_value,
                    "r_max": report.r_max,
                    "delta_i": report.delta_i,
                }
            )
    return rows


def run_rmax_sweep(spec: SweepSpec) -> list[dict]:
    """Maximum realism value per kind as a function of the outcome count."""
    d_max = int(spec.grid.get("d_max", 16))
    if d_max < 2:
        raise OutOfRange(f"d_max must be >= 2, got {d_max}")
    kinds = [parse_kind(t) for t in (spec.kinds or RMAX_KINDS)]
    stamp = spec.spec_hash()
    rows = []
    for d_e in range(2, d_max + 1):
        for kind in kinds:
            rows.append(
                {
                    "spec_hash": stamp,
                    "d_e": d_e,
                    "kind": kind.token(),
                    "r_max": realism_max(kind, d_e),
                }
            )
    return rows


def _theta_invariance_check(mu: float, phi: float, kinds) -> None:
    spreads = []
    for kind in kinds:
        values = [
            realism(
                mu_state(mu),
                spin_observable(theta, phi, subsystem=0, dims=(2, 2)),
                kind,
            ).r_value
            for theta in np.linspace(0.0, 2 * np.pi, THETA_INVARIANCE_POINTS, endpoint=False)
        ]
        spreads.append(max(values) - min(values))
    if max(spreads) > THETA_INVARIANCE_TOL:
        raise NumericalFailure(
            f"polar-angle invariance violated at mu={mu}, phi={phi}: "
            f"spread {max(spreads):.3e}"
        )


def run_mu_sweep(spec: SweepSpec) -> list[dict]:
    """Bures/Hellinger realism on the mu family for each azimuthal angle,
    at polar angle zero, with a polar-invariance spot check."""
    steps = int(spec.grid.get("mu_steps", 101))
    if steps < 2:
        raise OutOfRange(f"need at least 2 grid points, got {steps}")
    phis = tuple(float(p) for p in spec.grid.get("phis", MU_PHIS))
    kinds = [parse_kind(t) for t in (spec.kinds or MU_KINDS)]
    stamp = spec.spec_hash()
    rows = []
    for mu in np.linspace(0.0, 1.0, steps):
        rho = mu_state(float(mu))
        for phi in phis:
            obs = spin_observable(0.0, phi, subsystem=0, dims=(2, 2))
            for kind in kinds:
                report = realism(rho, obs, kind)
                rows.append(
                    {
                        "spec_hash": stamp,
                        "mu": float(mu),
                        "phi": float(phi),
                        "kind": kind.token(),
                        "r_value": report.r_value,
                    }
                )
    for phi in phis:
        _theta_invariance_check(0.8, phi, kinds)
    return rows


GNUPLOT_TEMPLATE = """\
# gnuplot companion for {csv}
set datafile separator ","
set key autotitle columnheader outside
set xlabel "{xlabel}"
set ylabel "{ylabel}"
plot for [k in "{kinds}"] "{csv}" \\
    using {xcol}:(strcol({kindcol}) eq k ? column({ycol}) : NaN) \\
    with lines title k
"""


def gnuplot_script(spec: SweepSpec, csv_path: str) -> str:
    layout = {
        "werner": ("epsilon", "realism", 2, 3, 4),
        "rmax": ("d_E", "max realism", 2, 3, 4),
        "mu": ("mu", "realism", 2, 4, 5),
    }[spec.experiment]
    xlabel, ylabel, xcol, kindcol, ycol = layout
    kinds = " ".join(spec.kinds) if spec.kinds else " ".join(
        {"werner": WERNER_KINDS, "rmax": RMAX_KINDS, "mu": MU_KINDS}[spec.experiment]
    )
    return GNUPLOT_TEMPLATE.format(
        csv=csv_path, xlabel=xlabel, ylabel=ylabel, kinds=kinds,
        xcol=xcol, kindcol=kindcol, ycol=ycol,
    )
