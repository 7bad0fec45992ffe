"""
Command-line surface.

Subcommands: enumerate, map, stats, verify, table, gamma, series, render.
Exit codes: 0 success / verified, 1 a verification check failed, 2 usage
error (unknown check, bad patterns or kind), 3 size limit exceeded.
Identical invocations produce byte-identical output regardless of worker
count: sweeps partition by canonical prefix and merge in prefix order.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from . import checks as checks_mod
from . import mfs, outline, series, statistics, svg
from .bijections import phi, phi_inverse, psi, psi_inverse
from .core import InversionSequence, Permutation, ValidationError
from .patterns import (
    Pattern,
    cache_directory,
    enumerate_avoiding_inversion_sequences,
    enumerate_avoiding_permutations,
    parse_patterns,
    write_cache,
)
from .statistics import (
    asc_set,
    des_set,
    dist_set,
    ema_set,
    lma_set,
    lmi_set,
    rma_set,
    rmi_seq_set,
    rmi_set,
    vid_set,
    zero_set,
)

__all__ = ["main", "RunConfig"]

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3

LIMIT_RESTRICTED = 12  # avoidance-class sweeps
LIMIT_UNRESTRICTED = 10  # full S_n / I_n sweeps


@dataclass
class RunConfig:
    """Parsed command configuration."""

    subcommand: str
    n: int | None = None
    patterns: tuple[Pattern, ...] = ()
    kind: str = "perm"
    output_format: str = "text"
    cache_dir: str | None = None
    jobs: int = 1
    list_objects: bool = False
    limit: int | None = None
    extra: dict = field(default_factory=dict)


def _default_jobs() -> int:
    return os.cpu_count() or 1


def _limit_for(cfg: RunConfig) -> int:
    if cfg.limit is not None:
        return cfg.limit
    return LIMIT_RESTRICTED if cfg.patterns else LIMIT_UNRESTRICTED


def _fail_usage(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _decode_object(kind: str, text: str):
    if kind == "perm":
        return Permutation.decode(text)
    if kind == "invseq":
        return InversionSequence.decode(text)
    if kind == "path":
        return outline.TwoColoredDyckPath.decode(text)
    raise ValidationError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# subcommands

def cmd_enumerate(cfg: RunConfig) -> int:
    if cfg.kind not in ("perm", "invseq"):
        return _fail_usage(f"unknown kind {cfg.kind!r}")
    if cfg.n is None:
        return _fail_usage("--n is required")
    if cfg.n > _limit_for(cfg):
        print(f"error: n={cfg.n} exceeds the safety limit", file=sys.stderr)
        return EXIT_LIMIT

    if cfg.list_objects:
        objects = list(_stream(cfg.kind, cfg.n, cfg.patterns))
        count = len(objects)
    else:
        prefixes = checks_mod._partition_prefixes(cfg.kind, cfg.n)
        args = [(cfg.kind, cfg.n, tuple(p.word for p in cfg.patterns), pfx) for pfx in prefixes]
        if cfg.jobs > 1 and len(prefixes) > 1:
            import concurrent.futures

            with concurrent.futures.ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
                count = sum(pool.map(checks_mod._count_worker, args))
        else:
            count = sum(map(checks_mod._count_worker, args))
        objects = None

    if cfg.cache_dir is not None:
        write_cache(cfg.cache_dir, cfg.kind, cfg.n, cfg.patterns)

    avoid = [str(p) for p in cfg.patterns]
    if cfg.output_format == "json":
        payload = {"kind": cfg.kind, "n": cfg.n, "avoid": avoid, "count": count}
        if objects is not None:
            payload["objects"] = [o.encode() for o in objects]
        print(json.dumps(payload))
    elif cfg.output_format == "csv":
        print("object" if objects is not None else "count")
        if objects is not None:
            for o in objects:
                print(o.encode())
        else:
            print(count)
    else:
        print(count)
        if objects is not None:
            for o in objects:
                print(o.encode())
    return EXIT_OK


def _stream(kind: str, n: int, pats):
    if kind == "perm":
        return enumerate_avoiding_permutations(n, pats)
    return enumerate_avoiding_inversion_sequences(n, pats)


_PERM_SET_STATS = {
    "VID": vid_set, "DES": des_set, "LMA": lma_set,
    "LMI": lmi_set, "RMA": rma_set, "RMI": rmi_set,
}
_SEQ_SET_STATS = {
    "DIST": dist_set, "ASC": asc_set, "ZERO": zero_set,
    "EMA": ema_set, "RMI": rmi_seq_set, "EXPO": outline.expo_set,
}


def cmd_map(cfg: RunConfig) -> int:
    via = cfg.extra["via"]
    text = cfg.extra["input"]
    maps = {
        "psi": (InversionSequence, psi),
        "psi-inv": (Permutation, psi_inverse),
        "phi": (Permutation, phi),
        "phi-inv": (InversionSequence, phi_inverse),
    }
    if via not in maps:
        return _fail_usage(f"unknown map {via!r}")
    cls, fn = maps[via]
    try:
        obj = cls.decode(text)
        image = fn(obj)
    except ValidationError as exc:
        return _fail_usage(str(exc))
    if not cfg.extra.get("stats"):
        print(image.encode())
        return EXIT_OK

    def side_stats(x):
        table = _SEQ_SET_STATS if isinstance(x, InversionSequence) else _PERM_SET_STATS
        if via in ("phi", "phi-inv"):
            keys = (
                ["ASC", "ZERO", "EMA", "RMI"]
                if isinstance(x, InversionSequence)
                else ["DES", "LMA", "LMI", "RMA"]
            )
        else:
            keys = list(table)
        return {k: table[k](x).encode() for k in keys}

    payload = {
        "input": obj.encode(),
        "image": image.encode(),
        "input_stats": side_stats(obj),
        "image_stats": side_stats(image),
    }
    print(json.dumps(payload))
    return EXIT_OK


def cmd_stats(cfg: RunConfig) -> int:
    kind = cfg.kind
    try:
        obj = _decode_object(kind, cfg.extra["input"])
    except ValidationError as exc:
        return _fail_usage(str(exc))
    if kind == "perm":
        payload = {k: fn(obj).encode() for k, fn in _PERM_SET_STATS.items()}
        payload["des"] = len(des_set(obj))
        payload["ides"] = statistics.ides(obj)
    elif kind == "invseq":
        payload = {k: fn(obj).encode() for k, fn in _SEQ_SET_STATS.items()}
        payload["asc"] = statistics.asc(obj)
        payload["dist"] = statistics.dist(obj)
    else:
        payload = {
            "turn": outline.turn(obj),
            "segment": outline.segment(obj),
            "red": outline.red(obj),
            "return": outline.return_(obj),
            "classes": [c for c in ("A", "B", "R") if outline.is_in_class(obj, c)],
        }
    print(json.dumps(payload))
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    name = cfg.extra["check"]
    if name != "all" and name not in checks_mod.CHECKS:
        known = ", ".join(sorted(checks_mod.CHECKS) + ["all"])
        return _fail_usage(f"unknown check {name!r}; known: {known}")
    names = sorted(checks_mod.CHECKS) if name == "all" else [name]
    worst = EXIT_OK
    for check_name in names:
        result = checks_mod.run_check(check_name, cfg.n, jobs=cfg.jobs)
        status = "PASS" if result.ok else "FAIL"
        line = {"check": check_name, "n": result.n, "status": status}
        if not result.ok:
            line["counterexample"] = result.detail
            worst = EXIT_CHECK_FAILED
        if cfg.output_format == "json":
            print(json.dumps(line))
        else:
            print(f"{status} {check_name} (n={result.n})")
            if not result.ok:
                print(json.dumps(result.detail))
    return worst


_POLY_STATS = {
    "perm": {"des": statistics.des, "ides": statistics.ides},
    "invseq": {
        "asc": statistics.asc,
        "dist": statistics.dist,
        "zero": statistics.zero,
        "ema": statistics.ema,
    },
}


def cmd_table(cfg: RunConfig) -> int:
    if cfg.n is None:
        return _fail_usage("--n is required")
    if cfg.n > _limit_for(cfg):
        print(f"error: n={cfg.n} exceeds the safety limit", file=sys.stderr)
        return EXIT_LIMIT
    if cfg.extra.get("gamma"):
        return _print_gamma(cfg)
    poly_name = cfg.extra.get("poly")
    if poly_name is None:
        return _fail_usage("--poly or --gamma is required")
    if poly_name == "full":
        if cfg.kind != "invseq":
            return _fail_usage("--poly full is defined for --kind invseq")
        stats = [
            ("s", statistics.dist),
            ("t", statistics.asc),
            ("u", statistics.zero),
            ("v", statistics.ema),
        ]
        poly = statistics.distribution(_stream(cfg.kind, cfg.n, cfg.patterns), stats)
        if cfg.output_format == "csv":
            print(poly.to_csv(), end="")
        else:
            print(poly.to_json())
        return EXIT_OK
    table = _POLY_STATS.get(cfg.kind, {})
    if poly_name not in table:
        return _fail_usage(f"unknown statistic {poly_name!r} for kind {cfg.kind!r}")
    poly = statistics.distribution(
        _stream(cfg.kind, cfg.n, cfg.patterns), [("t", table[poly_name])]
    )
    coeffs = poly.univariate_coefficients()
    if cfg.output_format == "csv":
        print("exponent,coeff")
        for k, c in enumerate(coeffs):
            print(f"{k},{c}")
    else:
        print(json.dumps({f"t^{k}": c for k, c in enumerate(coeffs) if c}))
    return EXIT_OK


def _print_gamma(cfg: RunConfig) -> int:
    if cfg.kind == "invseq":
        gamma = mfs.gamma_from_tilde(cfg.n)
    elif cfg.kind == "perm":
        pats = cfg.patterns or checks_mod.PSI_PATTERNS
        gamma = mfs.gamma_via_orbits(enumerate_avoiding_permutations(cfg.n, pats))
    else:
        return _fail_usage(f"unknown kind {cfg.kind!r}")
    print(json.dumps(list(gamma)))
    return EXIT_OK


def cmd_gamma(cfg: RunConfig) -> int:
    return _print_gamma(cfg)


def cmd_series(cfg: RunConfig) -> int:
    order = cfg.extra.get("order")
    if order is None:
        return _fail_usage("--order is required")
    sol = series.solve_gs_system(order)
    if cfg.extra.get("verify_cubic"):
        report = series.verify_cubic(sol.s)
        for label, ok, first in (
            ("cubic", report.main_ok, report.main_first_fail),
            ("ascent-specialization", report.sepe_ok, report.sepe_first_fail),
            ("dist-specialization", report.dist_ok, report.dist_first_fail),
        ):
            suffix = "" if ok else f" (first failing order {first})"
            print(f"{'PASS' if ok else 'FAIL'} {label}{suffix}")
        return EXIT_OK if report.ok else EXIT_CHECK_FAILED
    spec = cfg.extra.get("spec", "full")
    s = sol.s
    if spec in ("st", "s", "t"):
        s = s.substitute_one("u").substitute_one("v")
    if spec == "s":
        s = s.substitute_one("t")
    elif spec == "t":
        s = s.substitute_one("s")
    payload = [
        {"z": k, "poly": s.coefficient(k).to_records()} for k in range(1, order + 1)
    ]
    print(json.dumps(payload))
    return EXIT_OK


def cmd_render(cfg: RunConfig) -> int:
    text = cfg.extra["input"]
    try:
        if "r" in text:
            path = outline.TwoColoredDyckPath.decode(text)
        else:
            path = outline.outline_of(InversionSequence.decode(text))
    except ValidationError as exc:
        return _fail_usage(str(exc))
    markup = svg.outline_svg(path)
    out = cfg.extra.get("out")
    if out:
        with open(out, "w") as fh:
            fh.write(markup)
        print(out)
    else:
        print(markup)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="invperm",
        description="Exhaustive verification tools for pattern-avoiding "
        "permutations and inversion sequences.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, kinds=("perm", "invseq")):
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--avoid", default="", help="comma-separated patterns")
        p.add_argument("--kind", choices=kinds, default=kinds[0])
        p.add_argument("--format", choices=("json", "csv", "text"), default="text")
        p.add_argument("--jobs", type=int, default=_default_jobs())
        p.add_argument("--limit", type=int, default=None, help="override size limit")

    p = sub.add_parser("enumerate", help="count or list an avoidance class")
    common(p)
    p.add_argument("--list", action="store_true", dest="list_objects")
    p.add_argument("--cache", nargs="?", const="", default=None,
                   help="write the class to the cache directory")

    p = sub.add_parser("map", help="apply a bijection to one object")
    p.add_argument("--via", required=True,
                   choices=("psi", "psi-inv", "phi", "phi-inv"))
    p.add_argument("--input", required=True)
    p.add_argument("--stats", action="store_true")

    p = sub.add_parser("stats", help="all statistics of one object")
    p.add_argument("--kind", choices=("perm", "invseq", "path"), required=True)
    p.add_argument("--input", required=True)

    p = sub.add_parser("verify", help="run a named verification check")
    common(p)
    p.add_argument("--check", required=True)

    p = sub.add_parser("table", help="distribution polynomial of a class")
    common(p, kinds=("invseq", "perm"))
    p.add_argument("--poly", default=None)
    p.add_argument("--gamma", action="store_true")

    p = sub.add_parser("gamma", help="gamma vector of a class")
    p.add_argument("--class", dest="kind", choices=("perms", "invseq"), required=True)
    p.add_argument("--avoid", default="")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--limit", type=int, default=None)

    p = sub.add_parser("series", help="solved generating function")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--spec", choices=("st", "s", "t", "full"), default="full")
    p.add_argument("--verify-cubic", action="store_true", dest="verify_cubic")

    p = sub.add_parser("render", help="SVG of an outline with its lines")
    p.add_argument("--input", required=True,
                   help="path encoding '0r,1,1r' or an inversion sequence")
    p.add_argument("--out", default=None)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    patterns = parse_patterns(getattr(args, "avoid", "") or "")
    kind = getattr(args, "kind", "perm")
    if kind == "perms":
        kind = "perm"
    cache_dir = getattr(args, "cache", None)
    if cache_dir == "":
        cache_dir = str(cache_directory())
    extra = {
        key: getattr(args, key)
        for key in ("via", "input", "stats", "check", "poly", "gamma",
                    "order", "spec", "verify_cubic", "out")
        if hasattr(args, key)
    }
    return RunConfig(
        subcommand=args.subcommand,
        n=getattr(args, "n", None),
        patterns=patterns,
        kind=kind,
        output_format=getattr(args, "format", "text"),
        cache_dir=cache_dir,
        jobs=getattr(args, "jobs", 1),
        list_objects=getattr(args, "list_objects", False),
        limit=getattr(args, "limit", None),
        extra=extra,
    )


_DISPATCH = {
    "enumerate": cmd_enumerate,
    "map": cmd_map,
    "stats": cmd_stats,
    "verify": cmd_verify,
    "table": cmd_table,
    "gamma": cmd_gamma,
    "series": cmd_series,
    "render": cmd_render,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
    except ValidationError as exc:
        return _fail_usage(str(exc))
    try:
        return _DISPATCH[cfg.subcommand](cfg)
    except ValidationError as exc:
        return _fail_usage(str(exc))


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
