"""Convergence sweeps, order estimates and table output."""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple, Sequence

from ..solver import run
from .config import RunConfig
from .presets import PRESETS, build_case, merged_params

__all__ = [
    "CSV_COLUMNS",
    "ConvergenceRow",
    "ConvergenceReport",
    "convergence_orders",
    "convergence_study",
    "run_point",
    "emit",
    "parse_csv",
]

CSV_COLUMNS = ("sweep_value", "E", "CO", "E_c", "CO_c", "E_energy", "CO_energy")


class ConvergenceRow(NamedTuple):
    value: int
    E: float
    CO: float | None
    E_c: float
    CO_c: float | None
    E_energy: float
    CO_energy: float | None


@dataclass
class ConvergenceReport:
    axis: str
    rows: list[ConvergenceRow]
    metadata: dict = field(default_factory=dict)
    failure: str | None = None

    @property
    def complete(self) -> bool:
        return self.failure is None

    def column(self, name: str) -> list:
        return [getattr(r, name) for r in self.rows]


def convergence_orders(values: Sequence[float], errors: Sequence[float]) -> list[float | None]:
    """CO_i = log(E_{i-1} / E_i) / log(v_i / v_{i-1}); None for the first entry.

    ``values`` are refinement counts (N or M), so the step ratio is
    v_{i-1} / v_i.
    """
    if len(values) != len(errors):
        raise ValueError("values and errors differ in length")
    out: list[float | None] = [None] * min(1, len(values))
    for i in range(1, len(values)):
        out.append(math.log(errors[i - 1] / errors[i]) / math.log(values[i] / values[i - 1]))
    return out


def run_point(cfg: RunConfig, value: int) -> tuple[float, float, float]:
    """Errors (E, E_c, E_energy) of one sweep point."""
    kw = {"N": value} if cfg.sweep == "temporal" else {"M": value}
    case = build_case(cfg, **kw)
    res = run(case.problem, case.sgrid, case.tgrid, exact=case.solution,
              start=cfg.start, elliptic=case.elliptic)
    e = res.errors
    return e.E, e.E_c, e.E_energy


def _rows(values, errs) -> list[ConvergenceRow]:
    cols = list(zip(*errs)) if errs else [(), (), ()]
    cos = [convergence_orders(values, c) for c in cols]
    return [ConvergenceRow(v, e[0], cos[0][i], e[1], cos[1][i], e[2], cos[2][i])
            for i, (v, e) in enumerate(zip(values, errs))]


def _metadata(cfg: RunConfig) -> dict:
    meta = {"preset": cfg.preset, "block": cfg.block, "T": cfg.T, "start": cfg.start, "forcing": cfg.forcing}
    if cfg.preset is not None:
        pre = PRESETS[cfg.preset]
        meta["params"] = merged_params(cfg)
        meta["fixed"] = ({"M": cfg.M or pre.M} if cfg.sweep == "temporal" else {"N": cfg.N or pre.N})
    else:
        meta["problem"] = cfg.problem
    return meta


def convergence_study(cfg: RunConfig) -> ConvergenceReport:
    """One run per sweep value with the other resolution fixed.

    A failing run stops the sweep; the report keeps the rows computed so
    far and records the failure.
    """
    values = cfg.values
    if values is None:
        if cfg.preset is None:
            raise ValueError("an explicit problem needs sweep values")
        values = PRESETS[cfg.preset].values
    errs: list[tuple[float, float, float]] = []
    failure = None
    if cfg.jobs > 1 and len(values) > 1:
        with ProcessPoolExecutor(max_workers=min(cfg.jobs, len(values))) as pool:
            futures = [pool.submit(run_point, cfg, v) for v in values]
            for v, fut in zip(values, futures):
                try:
                    errs.append(fut.result())
                except Exception as exc:  # noqa: BLE001 - reported, sweep stops
                    failure = f"{cfg.sweep} value {v}: {type(exc).__name__}: {exc}"
                    break
    else:
        for v in values:
            try:
                errs.append(run_point(cfg, v))
            except Exception as exc:  # noqa: BLE001
                failure = f"{cfg.sweep} value {v}: {type(exc).__name__}: {exc}"
                break
    done = list(values[: len(errs)])
    return ConvergenceReport(cfg.sweep, _rows(done, errs), _metadata(cfg), failure)


def _fmt_e(x: float) -> str:
    return f"{x:.4e}"


def _fmt_co(x: float | None, digits: int) -> str:
    return "" if x is None else f"{x:.{digits}f}"


def emit(report: ConvergenceReport, fmt: str = "csv", path=None) -> str:
    """Render ``report`` as CSV or a markdown table; also write it to ``path`` if given.

    CSV cells carry 5 significant digits for errors (``3.1565e-06``) and CO;
    the first row has empty CO cells.
    """
    if not report.rows:
        raise ValueError("cannot emit an empty report")
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in report.rows:
            w.writerow([r.value, _fmt_e(r.E), _fmt_co(r.CO, 4), _fmt_e(r.E_c), _fmt_co(r.CO_c, 4),
                        _fmt_e(r.E_energy), _fmt_co(r.CO_energy, 4)])
        text = buf.getvalue()
    elif fmt == "markdown":
        head = "N" if report.axis == "temporal" else "M"
        lines = [f"| {head} | E | CO | E_c | CO_c | E_A | CO_A |",
                 "|---:|---:|---:|---:|---:|---:|---:|"]
        for r in report.rows:
            lines.append(f"| {r.value} | {_fmt_e(r.E)} | {_fmt_co(r.CO, 4)} | {_fmt_e(r.E_c)} | "
                         f"{_fmt_co(r.CO_c, 4)} | {_fmt_e(r.E_energy)} | {_fmt_co(r.CO_energy, 4)} |")
        if report.failure:
            lines.append("")
            lines.append(f"sweep stopped early: {report.failure}")
        text = "\n".join(lines) + "\n"
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is not None:
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc}") from exc
    return text


def parse_csv(text: str) -> list[ConvergenceRow]:
    """Inverse of the CSV branch of :func:`emit`."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != CSV_COLUMNS:
        raise ValueError(f"unexpected header {header}")

    def opt(s):
        return float(s) if s else None

    rows = []
    for rec in reader:
        if not rec:
            continue
        v, e, co, ec, coc, ea, coa = rec
        rows.append(ConvergenceRow(int(v), float(e), opt(co), float(ec), opt(coc), float(ea), opt(coa)))
    return rows
