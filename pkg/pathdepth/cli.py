"""Command line interface: ``pathdepth {depth,sdepth,betti,sweep,check,explore-stefan}``."""

import argparse
import json
import logging
import sys

import fsspec

from . import __version__
from . import families
from .betti import betti_table
from .cache import ResultCache
from .cache import cache_key
from .checks import CHECKS
from .checks import run_check
from .exceptions import MalformedInputError
from .exceptions import PathDepthError
from .exceptions import SearchTimeout
from .ideal_format import format_ideal
from .ideal_format import read_ideal
from .monomials import MonomialIdeal
from .monomials import power
from .sdepth import PosetMode
from .sdepth import sdepth
from .sdepth import verify_certificate
from .settings import EngineSettings
from .settings import cache_location
from .sweep import FORMATS
from .sweep import explore_stefan
from .sweep import grid
from .sweep import render
from .sweep import run_sweep

log = logging.getLogger("pathdepth")

EXIT_CHECK_FAILED = 1


def _int_range(text: str) -> range:
    """``4`` or ``2-6`` (inclusive)."""
    try:
        if "-" in text:
            lo, hi = (int(p) for p in text.split("-", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A-B, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def _engine_parser() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group("engine settings")
    group.add_argument("--timeout-secs", type=float, help="wall-clock budget of one Stanley depth search (60)")
    group.add_argument("--max-poset", type=int, help="largest characteristic poset bounding box (2000000)")
    group.add_argument("--max-gens", type=int, help="most minimal generators for the lcm lattice (22)")
    group.add_argument("--max-lattice", type=int, help="largest lcm lattice (200000)")
    group.add_argument("--max-vertices", type=int, help="largest upper Koszul complex vertex set (20)")
    group.add_argument("--field", choices=["QQ", "GF2"], help="homology coefficients (QQ)")
    group.add_argument("--solver", choices=["cpsat", "backtrack"], help="exact cover search (cpsat)")
    group.add_argument("--no-reconfirm", action="store_true", help="skip the fresh search at sdepth + 1")
    group.add_argument("--cache-dir", help="result cache location, any fsspec URL (default: $PATHDEPTH_CACHE)")
    group.add_argument("--paranoid", action="store_true", help="re-verify certificates read from the cache")
    parent.add_argument("-v", "--verbose", action="count", default=0, help="log INFO, -vv for DEBUG")
    parent.add_argument("-q", "--quiet", action="store_true", help="log warnings and errors only")
    return parent


def _ideal_parser() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    source = parent.add_mutually_exclusive_group(required=True)
    source.add_argument("--path", nargs=2, type=int, metavar=("N", "M"), help="the path ideal I_{N,M}")
    source.add_argument("--file", help="an ideal in the text format (any fsspec URL)")
    parent.add_argument("--t", type=int, default=1, help="take the t-th power (1)")
    parent.add_argument("--format", choices=["text", "json"], default="text")
    return parent


def build_parser() -> argparse.ArgumentParser:
    engine, ideal = _engine_parser(), _ideal_parser()
    parser = argparse.ArgumentParser(prog="pathdepth", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("depth", parents=[engine, ideal], help="depth and projective dimension of S/I")
    sub.add_parser("betti", parents=[engine, ideal], help="multigraded Betti numbers of S/I")

    p = sub.add_parser("sdepth", parents=[engine, ideal], help="Stanley depth with a certificate")
    p.add_argument("--mode", choices=[m.value for m in PosetMode], default=PosetMode.QUOTIENT.value)
    p.add_argument("--sub", help="the ideal J of I/J in pair mode (text format file)")
    p.add_argument("--g", type=_vector, help="bounding multidegree, e.g. 1,2,1 (default: lcm of generators)")
    p.add_argument("--lower-bound", type=int, help="start the scan at this value")
    p.add_argument("--certificate", help="write the certificate JSON here")
    p.add_argument("--verify", metavar="CERT", help="check a certificate JSON against the ideal instead")

    p = sub.add_parser("sweep", parents=[engine], help="compare computed values with the closed forms")
    p.add_argument("--n", type=_int_range, required=True, metavar="A-B")
    p.add_argument("--m", type=_int_range, metavar="A-B", help="default: every 1 <= m <= n")
    p.add_argument("--t", type=_int_range, default=range(1, 2), metavar="A-B")
    p.add_argument("--sdepth", action="store_true", help="also compute Stanley depths")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--format", choices=FORMATS, default="markdown")

    p = sub.add_parser("check", parents=[engine], help="check a named identity or lemma")
    p.add_argument("check", choices=sorted(CHECKS))
    for name in ("n", "m", "t", "k", "q", "r"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--no-sdepth", action="store_true", help="skip the Stanley depth parts of umt and lemma13")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("explore-stefan", parents=[engine], help="EXPLORATORY: sdepth(S/I_{n,2}^t) vs a formula")
    p.add_argument("--n", type=_int_range, required=True, metavar="A-B")
    p.add_argument("--t", type=_int_range, default=range(1, 2), metavar="A-B")
    p.add_argument("--format", choices=FORMATS, default="markdown")
    return parser


def _configure_logging(args):
    level = logging.WARNING
    if not args.quiet and args.verbose:
        level = logging.DEBUG if args.verbose > 1 else logging.INFO
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def _settings(args) -> EngineSettings:
    return EngineSettings.from_options(
        max_gens=args.max_gens,
        max_lattice=args.max_lattice,
        max_vertices=args.max_vertices,
        max_poset=args.max_poset,
        timeout_secs=args.timeout_secs,
        field=args.field,
        solver=args.solver,
        reconfirm=False if args.no_reconfirm else None,
        paranoid=args.paranoid or None,
    )


def _load_ideal(args) -> MonomialIdeal:
    if args.t < 1:
        raise MalformedInputError(f"--t must be at least 1, got {args.t}")
    if args.path:
        n, m = args.path
        return families.path_power(n, m, args.t)
    ideal = read_ideal(args.file)
    return ideal if args.t == 1 else power(ideal, args.t)


def _emit(args, text: str, data: dict):
    if args.format == "json":
        print(json.dumps(data, sort_keys=True))
    else:
        sys.stdout.write(text)


def _cached(cache, kind, payload, settings, compute, required, verify=None):
    if cache is None:
        return compute()
    key = cache_key(kind, payload, settings.fingerprint())
    value = cache.load(key, required, verify)
    if value is not None:
        return value
    value = compute()
    cache.save(key, value)
    return value


def cmd_depth(args, settings, cache) -> int:
    ideal = _load_ideal(args)
    ideal.require_proper_nonzero("depth(S/I)")

    def compute():
        table = betti_table(ideal, settings)
        return {"n": ideal.n, "depth": table.depth, "pd": table.pd, "depth_ideal": table.depth + 1}

    out = _cached(cache, "depth", {"ideal": format_ideal(ideal)}, settings, compute, ("depth", "pd", "depth_ideal"))
    _emit(args, f"depth={out['depth']}\npd={out['pd']}\ndepth(I)={out['depth_ideal']}\n", out)
    return 0


def cmd_betti(args, settings, cache) -> int:
    ideal = _load_ideal(args)
    table = betti_table(ideal, settings)
    _emit(args, table.to_text(), table.to_dict())
    return 0


def _certificate_holds(ideal, sub, value, settings) -> bool:
    if value["certificate"].get("min_rho") != value["value"]:
        return False
    return bool(verify_certificate(ideal, value["certificate"], sub, settings.max_poset))


def cmd_sdepth(args, settings, cache) -> int:
    ideal = _load_ideal(args)
    sub = read_ideal(args.sub) if args.sub else None
    if args.verify:
        with fsspec.open(args.verify, "rt") as f:
            data = json.load(f)
        check = verify_certificate(ideal, data, sub, settings.max_poset)
        verdict = "accepted" if check else "rejected: " + ", ".join(check.reasons)
        _emit(args, f"certificate {verdict}\n", {"ok": check.ok, "reasons": list(check.reasons)})
        return 0 if check else EXIT_CHECK_FAILED

    def compute():
        result = sdepth(ideal, args.mode, sub, args.g, settings, args.lower_bound)
        return result.to_dict()

    payload = {
        "ideal": format_ideal(ideal),
        "mode": args.mode,
        "sub": format_ideal(sub) if sub else None,
        "g": list(args.g) if args.g else None,
    }
    out = _cached(
        cache,
        "sdepth",
        payload,
        settings,
        compute,
        ("value", "certificate"),
        verify=lambda value: _certificate_holds(ideal, sub, value, settings),
    )
    text = f"sdepth={out['value']}\n"
    if args.certificate:
        with fsspec.open(args.certificate, "wt") as f:
            json.dump(out["certificate"], f, sort_keys=True)
        text += f"certificate={args.certificate}\n"
    else:
        text += f"intervals={len(out['certificate']['intervals'])}\n"
    _emit(args, text, out)
    return 0


def cmd_sweep(args, settings, cache) -> int:
    cells = list(grid(args.n, args.m, args.t))
    report = run_sweep(cells, settings, args.sdepth, cache, args.jobs)
    sys.stdout.write(render([r.to_dict() for r in report.rows], args.format, report.metadata))
    return EXIT_CHECK_FAILED if report.failed else 0


def cmd_check(args, settings, cache) -> int:
    params = {name: getattr(args, name) for name in ("n", "m", "t", "k", "q", "r")}
    result = run_check(args.check, settings, not args.no_sdepth, **params)
    _emit(args, result.to_text(), result.to_dict())
    if not result.passed:
        return EXIT_CHECK_FAILED
    return 0 if result.complete else SearchTimeout.exit_code


def cmd_explore_stefan(args, settings, cache) -> int:
    rows = explore_stefan(args.n, args.t, settings)
    metadata = {"label": "EXPLORATORY", "m": 2, "formula": "max(ceil((n+t-1)/3), 1)"}
    sys.stdout.write(render([r.to_dict() for r in rows], args.format, metadata, leading=("n", "t")))
    return 0


COMMANDS = {
    "depth": cmd_depth,
    "betti": cmd_betti,
    "sdepth": cmd_sdepth,
    "sweep": cmd_sweep,
    "check": cmd_check,
    "explore-stefan": cmd_explore_stefan,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args)
    try:
        settings = _settings(args)
        cache = ResultCache.from_location(cache_location(args.cache_dir), paranoid=settings.paranoid)
        return COMMANDS[args.command](args, settings, cache)
    except PathDepthError as e:
        log.error("%s", e)
        return e.exit_code
    except FileNotFoundError as e:
        log.error("%s", e)
        return MalformedInputError.exit_code


if __name__ == "__main__":
    sys.exit(main())
