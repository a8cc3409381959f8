"""Command line front end.

    segre-syzygies betti --a 3 --b 3 --p 11 --q 1
    segre-syzygies bidegree --a 3 --b 4 --p 14 --q 1 --rotate
    segre-syzygies verify relres --a 3 --b 3 --max-deg 4
    segre-syzygies cache stats --cache DIR

Exit codes: 0 success, 1 a verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from . import cocycles
from .cache import cache_from_env
from .errors import (InvalidParameters, InvalidPointSet, OutOfImplementedRange,
                     OutOfTheoremRange)
from .grids import dumps, render_ascii, render_csv, render_json, table_record
from .koszul import METHODS, KoszulEngine, closed_form_a2, closed_form_first_row
from .linalg import Field, parse_field
from .resolutions import (verify_chain_map_squares, verify_en_exactness,
                          verify_kernel_lemma, verify_relative_exactness)
from .rings import segre

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SUITES = ("en", "relres", "chainmap", "kernel", "cocycles")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    a: int | None = None
    b: int | None = None
    e: tuple | None = None
    c: int = 0
    p: int | None = None
    q: int = 1
    full: bool = False
    max_p: int | None = None
    max_deg: int = 3
    field: Field = parse_field(None)
    threads: int = 1
    cache: str | None = None
    fmt: str = "ascii"
    method: str = "auto"
    rotate: bool = False
    pad: int = 0

    def engine(self) -> KoszulEngine:
        return KoszulEngine(self.field, threads=self.threads, cache=cache_from_env(self.cache))


def _field(text: str) -> Field:
    try:
        return parse_field(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def _elist(text: str) -> tuple:
    try:
        e = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None
    if not e or any(x < 1 for x in e):
        raise argparse.ArgumentTypeError("scroll invariants must be positive")
    return e


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--a", type=int)
    common.add_argument("--b", type=int)
    common.add_argument("--field", type=_field, default=parse_field(None),
                        help="odd prime below 2**31, or 'rational' (default 32003)")
    common.add_argument("--threads", type=_positive, default=1)
    common.add_argument("--cache", default=None, help="block cache directory (BETTI_CACHE_DIR wins)")
    common.add_argument("--format", dest="fmt", choices=("ascii", "csv", "json"), default="ascii")
    common.add_argument("--method", choices=METHODS, default="auto")

    parser = argparse.ArgumentParser(prog="segre-syzygies",
                                     description="Koszul cohomology of Segre embeddings of P1 x P1")
    sub = parser.add_subparsers(dest="command", required=True)

    pb = sub.add_parser("betti", parents=[common], help="Betti numbers kappa_{p,q}")
    pb.add_argument("--p", type=int)
    pb.add_argument("--q", type=int, default=1)
    pb.add_argument("--full", action="store_true", help="whole table up to --max-p")
    pb.add_argument("--max-p", type=int, default=None)

    pd = sub.add_parser("bidegree", parents=[common], help="bidegree decomposition of K_{p,q}")
    pd.add_argument("--p", type=int, required=True)
    pd.add_argument("--q", type=int, default=1)
    pd.add_argument("--rotate", action="store_true")
    pd.add_argument("--pad", type=int, default=0)

    pv = sub.add_parser("verify", parents=[common], help="run a verification suite")
    pv.add_argument("suite", choices=SUITES)
    pv.add_argument("--e", type=_elist, default=None)
    pv.add_argument("--c", type=int, default=0)
    pv.add_argument("--p", type=int, default=None, help="chain map index (default: all)")
    pv.add_argument("--max-deg", type=int, default=3)

    pc = sub.add_parser("cache", help="manage the block cache")
    pc.add_argument("action", choices=("clear", "stats"))
    pc.add_argument("--cache", default=None)
    return parser


def _config(ns) -> RunConfig:
    cfg = RunConfig()
    for name in ("a", "b", "e", "c", "p", "q", "full", "max_p", "max_deg", "field",
                 "threads", "cache", "fmt", "method", "rotate", "pad"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    return cfg


def _need_ab(cfg: RunConfig):
    if cfg.a is None or cfg.b is None:
        raise UsageError("--a and --b are required")
    if not 1 <= cfg.a <= cfg.b:
        raise UsageError(f"need 1 <= a <= b, got a={cfg.a}, b={cfg.b}")


def _top(cfg: RunConfig) -> int:
    return (cfg.a + 1) * (cfg.b + 1) - 3


def _closed_form(cfg: RunConfig, p: int, q: int):
    if q == 1 and 3 <= cfg.a <= cfg.b and p >= cfg.a * cfg.b + cfg.a - 1:
        return closed_form_first_row(cfg.a, cfg.b, p)
    return None


def cmd_betti(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    _need_ab(cfg)
    alg, engine = segre(cfg.a, cfg.b), cfg.engine()
    if cfg.full:
        max_p = _top(cfg) if cfg.max_p is None else cfg.max_p
        if not 0 <= max_p <= _top(cfg):
            raise UsageError(f"--max-p must lie in 0..{_top(cfg)}")
        table = engine.full_betti_table(alg, max_p, method=cfg.method)
        agree = None
        if cfg.a == 2:
            agree = all(k == closed_form_a2(cfg.b, p, q) for (p, q), k in table.entries.items())
        if cfg.fmt == "json":
            rec = dict(table.algebra)
            rec.update({"field": table.field, "max_p": max_p,
                        "table": [[p, q, k] for (p, q), k in sorted(table.entries.items())]})
            if agree is not None:
                rec["closed_form_agrees"] = agree
            print(dumps(rec), file=out)
        elif cfg.fmt == "csv":
            print("p,q,betti", file=out)
            for (p, q), k in sorted(table.entries.items()):
                print(f"{p},{q},{k}", file=out)
        else:
            print(table.format(), file=out)
            if agree is not None:
                print(f"closed form (a=2): {'AGREE' if agree else 'DISAGREE'}", file=out)
        return EXIT_OK

    if cfg.p is None:
        raise UsageError("give --p (and --q) or --full")
    if cfg.p < 0 or cfg.q < 0:
        raise UsageError("p and q must be non-negative")
    table = engine.bidegree_table(alg, cfg.p, cfg.q, cfg.method)
    closed = _closed_form(cfg, cfg.p, cfg.q)
    if cfg.fmt == "json":
        rec = table_record(table)
        if closed is not None:
            rec["closed_form"] = closed
            rec["agree"] = closed == table.total
        print(dumps(rec), file=out)
    elif cfg.fmt == "csv":
        print("p,q,betti,closed_form", file=out)
        print(f"{cfg.p},{cfg.q},{table.total},{'' if closed is None else closed}", file=out)
    else:
        print(f"kappa[{cfg.p},{cfg.q}] = {table.total}", file=out)
        if closed is not None:
            flag = "AGREE" if closed == table.total else "DISAGREE"
            print(f"closed form = {closed}  {flag}", file=out)
    return EXIT_OK


def cmd_bidegree(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    _need_ab(cfg)
    if cfg.p is None or cfg.p < 0 or cfg.q < 0:
        raise UsageError("p and q must be non-negative")
    if cfg.pad < 0:
        raise UsageError("--pad must be non-negative")
    table = cfg.engine().bidegree_table(segre(cfg.a, cfg.b), cfg.p, cfg.q, cfg.method)
    if cfg.fmt == "json":
        print(render_json(table), file=out)
    elif cfg.fmt == "csv":
        print(render_csv(table), file=out)
    else:
        print(render_ascii(table, rotate=cfg.rotate, pad=cfg.pad), file=out)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, suite: str, out=None) -> int:
    out = out or sys.stdout
    if cfg.max_deg < 0:
        raise UsageError("--max-deg must be non-negative")
    if suite == "en":
        if cfg.e is None:
            raise UsageError("--e is required, e.g. --e 1,2")
        reports = [verify_en_exactness(cfg.e, cfg.c, cfg.max_deg, cfg.field)]
    else:
        _need_ab(cfg)
        a, b = cfg.a, cfg.b
        if suite == "relres":
            reports = [verify_relative_exactness(a, b, cfg.max_deg, cfg.field)]
        elif suite == "chainmap":
            indices = range(2, a + 1) if cfg.p is None else [cfg.p]
            reports = [verify_chain_map_squares(a, b, i, cfg.max_deg, cfg.field) for i in indices]
        elif suite == "kernel":
            reports = [verify_kernel_lemma(a, b, cfg.field)]
        else:
            kappa = cfg.engine().betti_number(segre(a, b), a * b + a - 1, 1, cfg.method)
            reports = [cocycles.cocycle_report(a, b, cfg.field, kappa)]
    ok = True
    for rep in reports:
        print(rep.format(), file=out)
        ok = ok and rep.passed
    return EXIT_OK if ok else EXIT_FAIL


def cmd_cache(action: str, directory: str | None, out=None) -> int:
    out = out or sys.stdout
    cache = cache_from_env(directory)
    if cache is None:
        raise UsageError("no cache directory: pass --cache or set BETTI_CACHE_DIR")
    if action == "clear":
        print(f"removed {cache.clear()} records from {cache.directory}", file=out)
    else:
        print(dumps(cache.stats()), file=out)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if ns.command == "cache":
            return cmd_cache(ns.action, ns.cache)
        cfg = _config(ns)
        if ns.command == "betti":
            return cmd_betti(cfg)
        if ns.command == "bidegree":
            return cmd_bidegree(cfg)
        return cmd_verify(cfg, ns.suite)
    except (UsageError, InvalidParameters, InvalidPointSet, OutOfImplementedRange,
            OutOfTheoremRange) as exc:
        print(f"segre-syzygies: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
