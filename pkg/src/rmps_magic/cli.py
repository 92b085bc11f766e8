"""Command line entry point.

Precedence: built-in defaults, then the ``--config`` JSON file, then flags.
Exit status is 0 when every check passes, 1 when a check fails and 2 on a
usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import DomainError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_span(text: str) -> tuple[int, int]:
    """``"2..10"`` -> ``(2, 10)``; a single integer means a one-point span."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected LO..HI") from None
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise UsageError(f"bad integer list {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rmps-magic", description="Magic of random matrix product states.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, sampling=True):
        sp.add_argument("--config", help="JSON file with defaults for this run")
        sp.add_argument("--out", help="output file (CSV, or JSON for .json)")
        sp.add_argument("--json", action="store_true", help="also print records as JSON")
        if sampling:
            sp.add_argument("--d", type=int)
            sp.add_argument("--bond", help="bond dimension(s), comma separated")
            sp.add_argument("--n-min", type=int)
            sp.add_argument("--n-max", type=int)
            sp.add_argument("--samples", type=int)
            sp.add_argument("--seed", type=int)
            sp.add_argument("--workers", type=int)

    common(sub.add_parser("fig1", help="magic growth of normalized RMPS"))
    cv = sub.add_parser("crossval", help="Monte-Carlo vs transfer-matrix moments")
    common(cv)
    cv.add_argument("--instances", help="semicolon separated d,B,n triples")

    for name, hlp in (("bounds", "spectral-radius bounds on a grid"),
                      ("appendix-polys", "exact check of the inequality polynomials")):
        sp = sub.add_parser(name, help=hlp)
        common(sp, sampling=False)
        sp.add_argument("--grid", help="LO..HI for both d and B")
        if name == "bounds":
            sp.add_argument("--variant", choices=("gram", "table"))

    wg = sub.add_parser("wg-check", help="exact Weingarten inverse identity")
    common(wg, sampling=False)
    wg.add_argument("--q", help="LO..HI")

    db = sub.add_parser("dump-blocks", help="write the three interaction blocks")
    common(db, sampling=False)
    db.add_argument("--d", type=int)
    db.add_argument("--bond", type=int)
    db.add_argument("--variant", choices=("gram", "table"))
    return p


def _load_config(path) -> dict:
    if not path:
        return {}
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    return data


def _merge(args, cfg: dict, keys: dict) -> dict:
    """Flag values win over config entries; ``keys`` maps flag -> config key."""
    out = dict(cfg)
    for flag, key in keys.items():
        v = getattr(args, flag, None)
        if v is not None:
            out[key] = v
    return out


def _emit(rows, args, writer) -> None:
    from .harness import records_to_json

    if args.out:
        if args.out.endswith(".json"):
            Path(args.out).write_text(records_to_json(rows))
        else:
            writer(rows, args.out)
    if args.json:
        sys.stdout.write(records_to_json(rows))


def _experiment_config(args, mode: str, **defaults):
    from .harness import ExperimentConfig

    cfg = {**defaults, **_load_config(args.config)}
    merged = _merge(args, cfg, {"d": "d", "bond": "B_list", "samples": "samples_per_point",
                                "seed": "root_seed", "workers": "worker_count"})
    if isinstance(merged.get("B_list"), str):
        merged["B_list"] = _int_list(merged["B_list"])
    if isinstance(merged.get("B_list"), int):
        merged["B_list"] = [merged["B_list"]]
    lo, hi = merged.pop("n_range", (2, 8))
    merged["n_range"] = (args.n_min if args.n_min is not None else lo,
                         args.n_max if args.n_max is not None else hi)
    merged["mode"] = mode
    merged.pop("output_path", None)
    try:
        return ExperimentConfig(**merged)
    except TypeError as exc:
        raise UsageError(f"bad config: {exc}") from None


def _cmd_fig1(args) -> int:
    from .harness import run_fig1, write_records_csv

    config = _experiment_config(args, "fig1")
    res = run_fig1(config)
    _emit(res.records, args, write_records_csv)
    ok = True
    for B in config.B_list:
        if len(list(config.ns)) >= 3:
            slope, _, r2 = res.slope(B)
            print(f"B={B}: slope={slope:.4f} r2={r2:.5f}")
            ok &= r2 >= 0.98
    for r in res.records:
        ok &= r.bound_violations == 0
        if config.d == 2 and r.B == 2:
            ok &= r.log_d_mean_magic >= 0.1 * r.n - 3 * r.log_d_stderr
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_crossval(args) -> int:
    from .harness import CrossvalRecord, run_crossval, write_dataclass_csv

    config = _experiment_config(args, "crossval", samples_per_point=100_000, n_range=(2, 2), B_list=(2,))
    inst = None
    if args.instances:
        try:
            inst = [tuple(int(x) for x in t.split(",")) for t in args.instances.split(";") if t]
        except ValueError:
            raise UsageError(f"bad --instances {args.instances!r}") from None
        if any(len(t) != 3 for t in inst):
            raise UsageError("each instance needs d,B,n")
    recs = run_crossval(config, inst)
    _emit(recs, args, lambda rows, path: write_dataclass_csv(rows, path, CrossvalRecord))
    for r in recs:
        print(f"d={r.d} B={r.B} n={r.n} {r.quantity}: mean={r.mean:.6g} +- {r.stderr:.2g} "
              f"analytic={r.analytic:.6g} z={r.z:+.2f}")
    return EXIT_OK if all(r.passed for r in recs) else EXIT_FAIL


def _cmd_bounds(args) -> int:
    from .spectra import verify_bounds_grid, write_spectral_csv

    cfg = _load_config(args.config)
    lo, hi = parse_span(args.grid) if args.grid else tuple(cfg.get("grid", (2, 10)))
    variant = args.variant or cfg.get("variant", "gram")
    grid = verify_bounds_grid(range(lo, hi + 1), range(lo, hi + 1), variant)
    if args.out:
        write_spectral_csv(grid.reports, args.out)
    for r in grid.violations:
        print(f"VIOLATION {r.site_class.value} d={r.d} B={r.B}: rho={r.spectral_radius:.12g} > {r.bound:.12g}")
    for r in grid.d2_violations:
        print(f"VIOLATION O1 d=2 B={r.B}: rho={r.spectral_radius:.12g} > 1/4")
    for r in grid.negative_eigenvalues:
        print(f"NEGATIVE {r.site_class.value} d={r.d} B={r.B}: min={r.min_eigenvalue:.3g}")
    bad_sub = [s for s in grid.subadditivity if not s.holds]
    for s in bad_sub:
        print(f"SUBADDITIVITY d={s.d} B={s.B}: {s.radius_sum_block:.12g} > {s.radius_bound:.12g}")
    print(f"{len(grid.reports)} blocks checked ({variant} Weingarten)")
    return EXIT_OK if grid.all_hold else EXIT_FAIL


def _cmd_appendix(args) -> int:
    from .spectra import verify_appendix_polynomials

    cfg = _load_config(args.config)
    lo, hi = parse_span(args.grid) if args.grid else tuple(cfg.get("grid", (2, 12)))
    rep = verify_appendix_polynomials(range(lo, hi + 1), range(lo, hi + 1))
    if args.out:
        Path(args.out).write_text(json.dumps({
            "evaluations": rep.evaluations,
            "failures": [f.__dict__ for f in rep.failures],
        }, indent=1) + "\n")
    for f in rep.failures:
        print(f"NEGATIVE {f.name} at d={f.d}, B={f.B}: {f.value}")
    print(f"{rep.evaluations} evaluations, {len(rep.failures)} failures")
    return EXIT_OK if rep.all_nonnegative else EXIT_FAIL


def _cmd_wg(args) -> int:
    from .weingarten import consistency_probe, is_exact_inverse

    cfg = _load_config(args.config)
    lo, hi = parse_span(args.q) if args.q else tuple(cfg.get("q", (4, 16)))
    if lo < 4:
        raise UsageError("q must be >= 4")
    rows, ok = [], True
    for q in range(lo, hi + 1):
        exact = is_exact_inverse(q)
        ok &= exact
        ratios = {row.ratio for row in consistency_probe(q)}
        factor = str(next(iter(ratios))) if len(ratios) == 1 else "not proportional"
        rows.append({"q": q, "exact_inverse": exact, "table_over_gram": factor})
        print(f"q={q}: Wg*G == I {'yes' if exact else 'NO'}; printed table / Gram inverse = {factor}")
    if args.out:
        Path(args.out).write_text(json.dumps(rows, indent=1) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_dump(args) -> int:
    from .blocks import dump_blocks

    cfg = _load_config(args.config)
    d = args.d if args.d is not None else cfg.get("d", 2)
    B = args.bond if args.bond is not None else cfg.get("B", 2)
    variant = args.variant or cfg.get("variant", "gram")
    out = args.out or f"blocks_d{d}_B{B}_{variant}.csv"
    print(dump_blocks(out, d, B, variant))
    return EXIT_OK


_COMMANDS = {"fig1": _cmd_fig1, "crossval": _cmd_crossval, "bounds": _cmd_bounds,
             "appendix-polys": _cmd_appendix, "wg-check": _cmd_wg, "dump-blocks": _cmd_dump}


def cli_main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args)
    except (UsageError, DomainError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(cli_main())
