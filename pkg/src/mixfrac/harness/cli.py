"""Command line entry point.

Subcommands: ``solve``, ``converge``, ``regress``, ``check-kernels`` and
``stability``.  Exit status is 0 on success, 1 when a check or regression
fails and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from ..solver import START_MODES, run
from .checks import kernel_property_suite, parse_nu_range, stability_ladder, stability_verdict
from .config import FORCING_MODES, FORMATS, SWEEP_AXES, ConfigError, RunConfig
from .presets import PRESETS, build_case
from .regression import TolerancePolicy, regression_check
from .study import convergence_study, emit

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _int_list(text: str) -> list[int]:
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON run configuration")
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--block", type=int, help="parameter block of the preset (1-based)")
    p.add_argument("--M", type=int, help="spatial intervals per direction")
    p.add_argument("--N", type=int, help="time steps")
    p.add_argument("--T", type=float, help="final time")
    p.add_argument("--start", choices=START_MODES, help="first-layer rule")
    p.add_argument("--forcing", choices=FORCING_MODES, help="analytic or discrete elliptic term in the forcing")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mixfrac", description="Second-order scheme for mixed fractional diffusion")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="single run, print errors")
    _common(p)
    p.add_argument("--out", help="write per-layer errors as CSV")

    p = sub.add_parser("converge", help="refinement sweep, emit a table")
    _common(p)
    p.add_argument("--sweep", choices=SWEEP_AXES)
    p.add_argument("--values", type=_int_list, help="e.g. 20,40,80,160,320")
    p.add_argument("--out")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--jobs", type=int)

    p = sub.add_parser("regress", help="compare against the published tables")
    p.add_argument("target", nargs="?", default="all",
                   help="table1..table4, a preset name, or 'all' (default)")
    p.add_argument("--block", type=int, action="append", help="restrict to a block (repeatable)")
    p.add_argument("--full", action="store_true", help="run the 2D temporal table at the published grid")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--error-rel", type=float, default=0.10)
    p.add_argument("--quiet", action="store_true", help="only print failures and the summary")

    p = sub.add_parser("check-kernels", help="weight-sequence property suite")
    p.add_argument("--nu", default="0.05:0.95:0.05", help="start:stop:step or comma list")
    p.add_argument("--j", type=int, default=200)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("stability", help="perturbation growth over a ladder of N")
    _common(p)
    p.add_argument("--values", type=_int_list, default=[4, 20, 40, 80, 160])
    p.add_argument("--amplitude", type=float, default=1e-3)
    p.add_argument("--reference", type=int, default=20, help="N whose ratio bounds the finer rungs")
    return ap


def _config(args) -> RunConfig:
    cfg = RunConfig.load(args.config) if args.config else RunConfig()
    changes = {k: getattr(args, k, None) for k in
               ("preset", "block", "M", "N", "T", "start", "forcing", "sweep", "format", "out", "jobs")}
    if getattr(args, "values", None) is not None and args.command == "converge":
        changes["values"] = tuple(args.values)
    if args.preset and args.preset != cfg.preset:
        # switching preset drops the config's block and explicit problem
        cfg = replace(cfg, preset=args.preset, block=args.block or 1, problem=None, params={})
    return cfg.updated(**changes)


def _solve(args) -> int:
    cfg = _config(args)
    case = build_case(cfg)
    res = run(case.problem, case.sgrid, case.tgrid, exact=case.solution, start=cfg.start, elliptic=case.elliptic)
    e = res.errors
    print(f"{cfg.preset or 'custom'} block {cfg.block}: M={case.sgrid.M} N={case.tgrid.N} "
          f"E={e.E:.4e} E_c={e.E_c:.4e} E_energy={e.E_energy:.4e}")
    if args.out:
        res.dump_csv(args.out)
    return EXIT_OK


def _converge(args) -> int:
    cfg = _config(args)
    rep = convergence_study(cfg)
    text = emit(rep, cfg.format, cfg.out)
    if not cfg.out:
        sys.stdout.write(text)
    if rep.failure:
        print(f"sweep stopped early: {rep.failure}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _regress(args) -> int:
    targets = ["table1", "table2", "table3", "table4"] if args.target == "all" else [args.target]
    ok = True
    policy = TolerancePolicy(error_rel=args.error_rel)
    for t in targets:
        res = regression_check(t, policy, blocks=args.block, full=args.full, jobs=args.jobs)
        for c in res.cells:
            if not args.quiet or not c.ok:
                print(c.line())
        for f in res.failures:
            print(f"FAIL     {f}")
        bad = sum(1 for c in res.cells if not c.ok and not c.advisory) + len(res.failures)
        print(f"{t}: {len(res.cells)} cells, {bad} failing")
        ok &= res.passed
    return EXIT_OK if ok else EXIT_FAIL


def _check_kernels(args) -> int:
    try:
        nus = parse_nu_range(args.nu)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    results = kernel_property_suite(nus, j=args.j, samples=args.samples, seed=args.seed)
    for r in results:
        print(r.line())
    ok = all(r.ok for r in results)
    print("all kernel checks passed" if ok else "kernel checks FAILED")
    return EXIT_OK if ok else EXIT_FAIL


def _stability(args) -> int:
    cfg = _config(args)
    rows = stability_ladder(cfg, args.values, args.amplitude)
    for r in rows:
        print(f"N={r.N:5d} ratio={r.ratio:.4e} max|diff|={r.max_diff:.4e} |mu|={r.mu_norm:.4e}")
    verdict = stability_verdict(rows, reference_N=args.reference)
    print(verdict.line())
    return EXIT_OK if verdict.ok else EXIT_FAIL


_HANDLERS = {"solve": _solve, "converge": _converge, "regress": _regress,
             "check-kernels": _check_kernels, "stability": _stability}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        return _HANDLERS[args.command](args)
    except (ConfigError, KeyError) as exc:
        print(f"mixfrac {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"mixfrac {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
