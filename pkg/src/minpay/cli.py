"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 domain error (bad currency, a check
that failed, ...). Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import automata, changemaking, currency as cur, export, fractal, payment, simulate
from .errors import DomainError

class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _currency_opts(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--currency", help="built-in name: JPY, KRW, USD, SEK, MODEL6, BINARY(n), GEOMETRIC(r,n)")
    g.add_argument("--currency-file", type=Path, help='JSON file {"name", "coins", "banknote"}')


def _price_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--steps", type=_positive, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--prices", choices=("uniform", "triangular"), default="uniform")
    p.add_argument("--peak", type=float, help="mode of the triangular price density")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="minpay", description="Minimal-payment simulator and fractal checks.")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    p = sub.add_parser("simulate", help="run seeded minimal-payment simulations")
    _currency_opts(p)
    _price_opts(p)
    p.add_argument("--runs", type=_positive, default=1, help="independent runs with seeds seed..seed+runs-1")
    p.add_argument("--out", type=Path, help="series CSV (t,price,change_value,purse_size)")
    p.add_argument("--stats-out", type=Path, help="write stats JSON here as well as stdout")

    p = sub.add_parser("delay-plot", help="delay plot of the simulated change series")
    _currency_opts(p)
    _price_opts(p)
    p.add_argument("--format", choices=("csv", "pbm", "pgm", "svg"), default="csv")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("admissible", help="lattice points allowed by the digit inequalities")
    _currency_opts(p)
    p.add_argument("--method", choices=("digits", "recursive"), default="digits")
    p.add_argument("--format", choices=("csv", "pbm", "svg"), default="csv")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("dimension", help="box-counting dimension of the admissible set")
    _currency_opts(p)
    p.add_argument("--base", type=_positive)
    p.add_argument("--levels", type=_positive)

    p = sub.add_parser("stats", help="exact coin-count statistics of a currency")
    _currency_opts(p)
    p.add_argument("--out", type=Path, help="per-amount CSV of least-coin counts")

    p = sub.add_parser("ca", help="elementary cellular automaton from a single seed cell")
    p.add_argument("--rows", type=_positive, default=64)
    p.add_argument("--rule", type=int, default=60)
    p.add_argument("--format", choices=("pbm", "svg"), default="pbm")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("pascal", help="Pascal's triangle coloured by non-divisibility")
    p.add_argument("--base", type=_positive, required=True, help="modulus r")
    p.add_argument("--rows", type=_positive, default=100)
    p.add_argument("--format", choices=("pbm", "svg"), default="pbm")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("compare", help="compare two gasket grids cell by cell")
    p.add_argument("--rule60", action="store_true")
    p.add_argument("--pascal", type=_positive, action="append", default=[], metavar="R")
    p.add_argument("--geometric", type=_positive, action="append", default=[], metavar="R",
                   help="sheared admissible set of coins 1, R, R^2, ...")
    p.add_argument("--rows", type=_positive, default=64)

    p = sub.add_parser("oracle-check", help="minimal payment vs. full search")
    _currency_opts(p)
    p.add_argument("--cases", type=_positive, help="random cases instead of the exhaustive sweep")
    p.add_argument("--seed", type=int, default=0)
    return parser


def _load_currency(args) -> cur.CurrencySpec:
    if args.currency_file is not None:
        return cur.load(args.currency_file)
    return cur.builtin(args.currency)


def _price_model(args) -> simulate.PriceModel:
    if args.prices == "triangular":
        if args.peak is None:
            raise UsageError("--prices triangular needs --peak")
        return simulate.PriceModel.triangular(args.peak)
    if args.peak is not None:
        raise UsageError("--peak only applies to --prices triangular")
    return simulate.PriceModel.uniform()


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8", newline="\n")


def _render(grid: automata.BinaryGrid, fmt: str) -> str:
    return export.svg(grid) if fmt == "svg" else export.pbm(grid)


def _one_run(job):
    currency, model, steps, seed = job
    return simulate.run(currency, model, steps, seed)


def cmd_simulate(args) -> int:
    currency = _load_currency(args)
    model = _price_model(args)
    model.check(currency)
    seeds = [args.seed + i for i in range(args.runs)]
    jobs = [(currency, model, args.steps, s) for s in seeds]
    if args.runs > 1:
        with ProcessPoolExecutor() as pool:
            runs = list(pool.map(_one_run, jobs))
    else:
        runs = [_one_run(jobs[0])]

    if args.out is not None:
        for run in runs:
            path = args.out
            if args.runs > 1:
                path = args.out.with_name(f"{args.out.stem}-seed{run.seed}{args.out.suffix}")
            buf = io.StringIO()
            export.series_csv(run, buf)
            _emit(buf.getvalue(), path)

    per_run = [simulate.coin_count_stats(r) for r in runs]
    stats = simulate.merge_stats(per_run, [r.steps for r in runs])
    report = {
        "currency": currency.to_dict(),
        "prices": model.describe(),
        "steps": args.steps,
        "seeds": seeds,
        "rng": simulate.RNG_ALGORITHM,
        "expected_mean": float(simulate.expected_avg_coins(currency)),
        "change_violations": sum(r.change_violations for r in runs),
        "digit_violations": sum(r.digit_violations for r in runs),
        **stats.to_dict(),
    }
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    sys.stdout.write(text)
    if args.stats_out is not None:
        _emit(text, args.stats_out)
    return 0


def cmd_delay_plot(args) -> int:
    currency = _load_currency(args)
    model = _price_model(args)
    if args.steps < 2:
        raise UsageError("a delay plot needs --steps >= 2")
    model.check(currency)
    run = simulate.run(currency, model, args.steps, args.seed)
    plot = fractal.delay_plot(run)
    if args.format == "csv":
        buf = io.StringIO()
        export.points_csv(plot, buf)
        text = buf.getvalue()
    elif args.format == "pgm":
        counts = fractal.visit_counts(run.change_values, currency.banknote)
        text = export.pgm(np.flipud(counts.T))
    else:
        text = _render(export.plot_to_grid(plot), args.format)
    _emit(text, args.out)
    msg = f"{len(plot)} distinct points from {run.steps} steps"
    if cur.classify(currency).multiplicable:
        bad = fractal.violations(plot, fractal.admissible_set(currency))
        msg += f"; {len(bad)} outside the admissible set"
    print(msg, file=sys.stderr)
    return 0


def cmd_admissible(args) -> int:
    currency = _load_currency(args)
    build = fractal.admissible_set if args.method == "digits" else fractal.admissible_set_recursive
    plot = build(currency)
    if args.format == "csv":
        buf = io.StringIO()
        export.points_csv(plot, buf)
        text = buf.getvalue()
    else:
        text = _render(export.plot_to_grid(plot), args.format)
    _emit(text, args.out)
    print(f"{len(plot)} admissible points", file=sys.stderr)
    return 0


def cmd_dimension(args) -> int:
    currency = _load_currency(args)
    klass = cur.classify(currency)
    base = args.base or klass.geometric_ratio
    if base is None:
        raise UsageError("--base is required for non-geometric currencies")
    levels = args.levels
    if levels is None:
        levels = 0
        while base ** (levels + 1) <= currency.banknote:
            levels += 1
    result = fractal.box_count_dimension(fractal.admissible_set(currency), base, levels)
    report = {
        "currency": currency.name,
        "base": base,
        "sizes": list(result.sizes),
        "counts": list(result.counts),
        "slope": result.slope,
        "predicted": fractal.predicted_dimension(klass.geometric_ratio) if klass.geometric_ratio else None,
    }
    sys.stdout.write(json.dumps(report, indent=2) + "\n")
    return 0


def cmd_stats(args) -> int:
    currency = _load_currency(args)
    table = changemaking.repr_table(currency)
    amounts = list(currency.amounts())
    counts = table.min_count[amounts]
    mean = simulate.expected_avg_coins(currency, method="table")
    klass = cur.classify(currency)
    hist = np.bincount(counts)
    report = {
        "currency": currency.to_dict(),
        "multiplicable": klass.multiplicable,
        "geometric_ratio": klass.geometric_ratio,
        "canonical": changemaking.is_canonical(currency),
        "mean": float(mean),
        "mean_exact": f"{mean.numerator}/{mean.denominator}",
        "max": int(counts.max()),
        "histogram": {str(k): int(n) for k, n in enumerate(hist) if n},
    }
    sys.stdout.write(json.dumps(report, indent=2) + "\n")
    if args.out is not None:
        lines = ["amount,min_count," + ",".join(f"n{c}" for c in currency.coins)]
        for a in amounts:
            vec = ",".join(map(str, table.vectors[a].tolist()))
            lines.append(f"{a},{table.min_count[a]},{vec}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_ca(args) -> int:
    if not 0 <= args.rule <= 255:
        raise UsageError("--rule must be in 0..255")
    initial = np.zeros(args.rows, dtype=np.uint8)
    initial[0] = 1
    grid = automata.evolve(args.rule, initial, args.rows)
    _emit(_render(grid, args.format), args.out)
    return 0


def cmd_pascal(args) -> int:
    if args.base < 2:
        raise UsageError("--base must be at least 2")
    _emit(_render(automata.pascal_mod(args.base, args.rows), args.format), args.out)
    return 0


def _geometric_grid(r: int, rows: int) -> automata.BinaryGrid:
    n = 1
    while r**n < rows:
        n += 1
    plot = fractal.admissible_set(cur.geometric(r, n))
    return automata.map_delayplot_to_triangle(plot).crop(rows)


def cmd_compare(args) -> int:
    grids = []
    if args.rule60:
        grids.append(("rule60", automata.rule60(args.rows)))
    for r in args.pascal:
        if r < 2:
            raise UsageError("--pascal needs r >= 2")
        grids.append((f"pascal{r}", automata.pascal_mod(r, args.rows)))
    for r in args.geometric:
        if r < 2:
            raise UsageError("--geometric needs r >= 2")
        grids.append((f"geometric{r}", _geometric_grid(r, args.rows)))
    if len(grids) != 2:
        raise UsageError("compare needs exactly two of --rule60, --pascal R, --geometric R")
    (na, a), (nb, b) = grids
    diff = automata.compare_grids(a, b)
    if diff.equal:
        print("equal")
    else:
        print(f"differ: {diff.diff_count} cells ({na} vs {nb}, {args.rows} rows)")
    return 0


def cmd_oracle_check(args) -> int:
    currency = _load_currency(args)
    table = changemaking.repr_table(currency)
    B = currency.banknote
    amounts = list(currency.amounts())
    prices = list(range(currency.gcd, B + 1, currency.gcd))
    if args.cases is None:
        cases = [(a, p) for a in amounts for p in prices]
    else:
        rng = np.random.Generator(np.random.PCG64(args.seed))
        cases = [
            (int(rng.choice(amounts)), int(rng.integers(0, 3 * B // currency.gcd + 1)) * currency.gcd)
            for _ in range(args.cases)
        ]
    mismatches = 0
    for a, p in cases:
        purse = table[a]
        fast = payment.minimal_payment(purse, p, currency)
        slow = payment.full_search_payment(purse, p, currency)
        fast.check(currency)
        if fast.after.size != slow.after.size:
            mismatches += 1
            print(f"mismatch: purse {a}, price {p}: {fast.after.size} vs {slow.after.size}", file=sys.stderr)
    print(f"{len(cases)} cases, {mismatches} mismatches")
    return 2 if mismatches else 0


COMMANDS = {
    "simulate": cmd_simulate,
    "delay-plot": cmd_delay_plot,
    "admissible": cmd_admissible,
    "dimension": cmd_dimension,
    "stats": cmd_stats,
    "ca": cmd_ca,
    "pascal": cmd_pascal,
    "compare": cmd_compare,
    "oracle-check": cmd_oracle_check,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.verb](args)
    except UsageError as exc:
        print(parser.format_usage().rstrip(), file=sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
