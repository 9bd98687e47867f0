"""Command-line front end: ``culminating {count,gf,sample,bench,verify}``.

Exit codes: 0 ok, 1 runtime failure, 2 usage or validation error,
3 empty class, 4 sampler gave up.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .analysis import measure_cost
from .core import StepSystem, ValidationError
from .counting import (
    culminating_counts,
    culminating_height_counts,
    excursion_counts,
    positive_counts,
    quasi_excursion_counts,
)
from .genfunc import ck_coeffs, dk_nk, format_poly
from .grammar import GrammarError
from .rng import Rng, child_seed
from .samplers import METHODS, EmptyClassError, GiveUpError, SamplingError, make_sampler

SEED_ENV = "CULMINATING_SEED"
EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, EXIT_EMPTY, EXIT_GIVE_UP = 0, 1, 2, 3, 4
BENCH_COLUMNS = ["method", "a", "b", "n", "trials", "mean_attempts", "mean_steps", "stddev"]
COUNT_KINDS = ("culminating", "positive", "excursion", "quasi-excursion")
DEFAULT_BENCH_NS = (200, 500, 1000)


class ConfigError(ValidationError):
    pass


@dataclass
class Config:
    command: str
    a: int = 1
    b: int = 1
    n: Optional[int] = None
    k: Optional[int] = None
    method: Optional[str] = None
    seed: int = 0
    samples: int = 1
    epsilon: float = 0.1
    format: Optional[str] = None
    output: Optional[str] = None
    workers: int = 1
    positive: bool = False
    kinds: list[str] = field(default_factory=list)
    ns: list[int] = field(default_factory=list)
    methods: list[str] = field(default_factory=list)
    trials: int = 200
    positive_method: str = "auto"
    quick: bool = False

    @property
    def system(self) -> StepSystem:
        return StepSystem(self.a, self.b)

    def validate(self) -> "Config":
        self.system  # coprimality, positivity
        if self.workers < 1:
            raise ConfigError("--workers must be >= 1")
        if self.seed < 0:
            raise ConfigError("--seed must be non-negative")
        cmd = self.command
        if cmd in ("count", "sample") and self.n is None:
            raise ConfigError(f"{cmd} needs --n")
        if self.n is not None and self.n < 0:
            raise ConfigError("--n must be >= 0")
        if self.k is not None and self.k < 1:
            raise ConfigError("--k must be >= 1")
        if cmd == "gf":
            if self.k is None:
                raise ConfigError("gf needs --k")
            if self.k < self.a:
                raise ConfigError(f"gf needs k >= a (got k={self.k}, a={self.a})")
        if cmd == "sample":
            if self.method is None:
                raise ConfigError("sample needs --method")
            if self.method not in METHODS:
                raise ConfigError(f"unknown method {self.method!r}")
            if self.method == "fixed-height" and self.k is None:
                raise ConfigError("fixed-height sampling needs --k")
            if self.samples < 0:
                raise ConfigError("--samples must be >= 0")
        if cmd in ("sample", "bench") and not 0 <= self.epsilon < 1:
            raise ConfigError("--epsilon must lie in [0, 1)")
        if cmd == "bench":
            for m in self.methods:
                if m not in METHODS:
                    raise ConfigError(f"unknown method {m!r}")
            if self.trials < 1:
                raise ConfigError("--trials must be >= 1")
            if any(n < 1 for n in self.ns):
                raise ConfigError("bench sizes must be >= 1")
        return self


# ------------------------------------------------------------ output


def _open_out(cfg: Config):
    if cfg.output is None:
        return sys.stdout
    return open(cfg.output, "w", newline="")


def _write_rows(out, fmt: str, columns: Sequence[str], rows: list[dict]) -> None:
    if fmt == "json":
        for r in rows:
            out.write(json.dumps(r) + "\n")
        return
    w = csv.DictWriter(out, fieldnames=list(columns), lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    w.writerows(rows)


# ------------------------------------------------------------ commands


def cmd_count(cfg: Config, out) -> int:
    s, n = cfg.system, cfg.n
    kinds = list(cfg.kinds) or ["culminating"]
    if cfg.positive and "positive" not in kinds:
        kinds.append("positive")
    cols = {}
    for kind in kinds:
        if kind == "culminating" and cfg.k is not None:
            cols[f"height_{cfg.k}"] = culminating_height_counts(s, n, cfg.k)
        elif kind == "culminating":
            cols["culminating"] = culminating_counts(s, n)
        elif kind == "positive":
            cols["positive"] = positive_counts(s, n)
        elif kind == "excursion":
            cols["excursion"] = excursion_counts(s, n)
        else:
            cols["quasi_excursion"] = quasi_excursion_counts(s, n)
    if len(cols) == 1:
        cols = {"count": next(iter(cols.values()))}
    rows = [{"n": i, **{name: seq[i] for name, seq in cols.items()}} for i in range(1, n + 1)]
    _write_rows(out, cfg.format or "csv", ["n", *cols], rows)
    return EXIT_OK


def cmd_gf(cfg: Config, out) -> int:
    s, k = cfg.system, cfg.k
    n = 20 if cfg.n is None else cfg.n
    d, num = dk_nk(s, k)
    coeffs = ck_coeffs(s, k, n)
    if (cfg.format or "text") == "json":
        out.write(json.dumps({"a": s.a, "b": s.b, "k": k, "D": format_poly(d), "t2N": format_poly(num),
                              "coefficients": coeffs}) + "\n")
    else:
        out.write(f"a={s.a} b={s.b} k={k}\n")
        out.write(f"D = {format_poly(d)}\n")
        out.write(f"t^2*N = {format_poly(num)}\n")
        out.write(f"C[0..{n}] = {','.join(map(str, coeffs))}\n")
    return EXIT_OK


def _sampler_for(cfg: Config):
    return make_sampler(cfg.method, cfg.system, cfg.n, k=cfg.k, epsilon=cfg.epsilon,
                        positive_method=cfg.positive_method, positive=cfg.positive)


def _sample_block(cfg: Config, lo: int, hi: int) -> list[dict]:
    sampler = _sampler_for(cfg)
    return [sampler(Rng(child_seed(cfg.seed, i))).to_dict() for i in range(lo, hi)]


def _blocks(total: int, workers: int) -> list[tuple[int, int]]:
    size = -(-total // workers) if total else 0
    return [(lo, min(lo + size, total)) for lo in range(0, total, size)] if size else []


def cmd_sample(cfg: Config, out) -> int:
    fmt = cfg.format or "json"
    cols = ["a", "b", "n", "k", "method", "seed", "word", "final_height", "height", "attempts", "steps"]
    if cfg.workers == 1:
        # build tables once and stream records as they are drawn
        sampler = _sampler_for(cfg)
        if fmt == "csv":
            w = csv.DictWriter(out, fieldnames=cols, lineterminator="\n")
            w.writeheader()
        for i in range(cfg.samples):
            rec = sampler(Rng(child_seed(cfg.seed, i))).to_dict()
            if fmt == "csv":
                w.writerow(rec)
            else:
                out.write(json.dumps(rec) + "\n")
            out.flush()
        return EXIT_OK
    _sampler_for(cfg)  # surface empty-class errors before forking
    blocks = _blocks(cfg.samples, cfg.workers)
    with ProcessPoolExecutor(cfg.workers) as ex:
        futures = [ex.submit(_sample_block, cfg, lo, hi) for lo, hi in blocks]
        rows = [r for f in futures for r in f.result()]
    _write_rows(out, fmt, cols, rows)
    return EXIT_OK


def _bench_one(cfg: Config, method: str, n: int, idx: int) -> dict:
    stats = measure_cost(method, cfg.system, n, cfg.trials, Rng(child_seed(cfg.seed, idx)),
                         epsilon=cfg.epsilon, positive_method=cfg.positive_method)
    return stats.csv_row()


def cmd_bench(cfg: Config, out) -> int:
    methods = cfg.methods or ["anticipated"]
    ns = cfg.ns or list(DEFAULT_BENCH_NS)
    jobs = [(m, n, i) for i, (m, n) in enumerate((m, n) for m in methods for n in ns)]
    if cfg.workers == 1:
        rows = [_bench_one(cfg, m, n, i) for m, n, i in jobs]
    else:
        with ProcessPoolExecutor(cfg.workers) as ex:
            futures = [ex.submit(_bench_one, cfg, m, n, i) for m, n, i in jobs]
            rows = [f.result() for f in futures]
    _write_rows(out, cfg.format or "csv", BENCH_COLUMNS, rows)
    return EXIT_OK


def cmd_verify(cfg: Config, out) -> int:
    from .checks import run_all

    ok = run_all(cfg.quick, out=lambda line: (out.write(line + "\n"), out.flush()))
    out.write("all checks passed\n" if ok else "some checks FAILED\n")
    return EXIT_OK if ok else EXIT_RUNTIME


COMMANDS = {"count": cmd_count, "gf": cmd_gf, "sample": cmd_sample, "bench": cmd_bench, "verify": cmd_verify}


# ------------------------------------------------------------ parsing


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV, "0")
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{SEED_ENV} must be an integer, got {raw!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="culminating", description="Count and sample culminating lattice paths.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=False, fmt=("json", "csv")):
        sp.add_argument("--a", type=int, default=1, help="up-step size")
        sp.add_argument("--b", type=int, default=1, help="down-step size")
        sp.add_argument("--format", choices=fmt)
        sp.add_argument("--output", "-o", help="write to this file instead of stdout")
        if seed:
            sp.add_argument("--seed", type=int, default=None, help=f"master seed (default ${SEED_ENV} or 0)")
            sp.add_argument("--workers", type=int, default=1)
            sp.add_argument("--epsilon", type=float, default=0.1, help="boltzmann size tolerance")
            sp.add_argument("--positive-method", default="auto",
                            choices=("auto", "recursive", "anticipated"),
                            help="positive-word generator used inside rejection methods")

    sp = sub.add_parser("count", help="exact counts for lengths 1..n")
    common(sp)
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int, help="restrict culminating counts to final height k")
    sp.add_argument("--positive", action="store_true", help="also print positive-word counts")
    sp.add_argument("--kind", dest="kinds", action="append", choices=COUNT_KINDS)

    sp = sub.add_parser("gf", help="generating function of culminating walks of height k")
    common(sp, fmt=("text", "json"))
    sp.add_argument("--k", type=int)
    sp.add_argument("--n", type=int, help="number of series coefficients (default 20)")

    sp = sub.add_parser("sample", help="uniform random words as NDJSON")
    common(sp, seed=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--method", choices=METHODS)
    sp.add_argument("--samples", type=int, default=1)
    sp.add_argument("--positive", action="store_true", help="recursive: sample positive words instead")

    sp = sub.add_parser("bench", help="cost statistics as CSV")
    common(sp, seed=True)
    sp.add_argument("--method", dest="methods", action="append", choices=METHODS)
    sp.add_argument("--n", dest="ns", type=_int_list, default=None, help="comma-separated sizes")
    sp.add_argument("--trials", type=int, default=200)

    sp = sub.add_parser("verify", help="run the acceptance checks")
    sp.add_argument("--quick", action="store_true")
    sp.add_argument("--output", "-o")
    return p


def config_from_args(ns: argparse.Namespace) -> Config:
    d = {k: v for k, v in vars(ns).items() if v is not None}
    if "seed" not in d and ns.command in ("sample", "bench"):
        d["seed"] = _default_seed()
    d.setdefault("kinds", [])
    d.setdefault("methods", [])
    d["ns"] = d.get("ns") or []
    return Config(**d).validate()


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
    except (ValidationError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    out = _open_out(cfg)
    try:
        return COMMANDS[cfg.command](cfg, out)
    except EmptyClassError as e:
        print(f"empty class: {e}", file=sys.stderr)
        return EXIT_EMPTY
    except GiveUpError as e:
        print(f"gave up: {e}", file=sys.stderr)
        return EXIT_GIVE_UP
    except (ValidationError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (SamplingError, GrammarError, RuntimeError, OverflowError) as e:
        print(f"runtime failure: {e}", file=sys.stderr)
        return EXIT_RUNTIME
    finally:
        if out is not sys.stdout:
            out.close()
