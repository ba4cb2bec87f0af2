"""Command-line entry point.

Exit codes: 0 success / all checks passed, 1 property violation or
theorem-region counterexample (or an I/O failure while reporting), 2 usage
error.  Every report echoes the full parameter set so a run can be reproduced
from its own output.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import __version__
from .counting import (
    check_theorem1,
    check_theorem2,
    count_ap_solutions,
    count_gp_solutions,
    verify_cauchy_step,
    verify_counting_identity_ap,
)
from .characters import (
    verify_gp_structure_bound,
    verify_orthogonality,
    verify_weil_bound_ap,
)
from .errors import ConfigError, IoError, ProgsetError, VerificationError
from .experiments import (
    SweepConfig,
    growth_experiment,
    qr_experiment,
    threshold_sweep,
)
from .field import build_field, factorize, is_prime
from .generators import GenSpec, make_set
from .productsets import (
    load_set,
    productset,
    save_set,
    shifted_productset,
    verify_rep_charsum,
)
from .progressions import find_ap_of_length, find_gp_of_length, longest_ap, longest_gp
from .reports import ReportEnvelope, jsonable, write_report
from .rng import derive_seed


def _default_workers() -> int:
    raw = os.environ.get("PROGSET_WORKERS")
    if raw is None:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _add_field_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", type=int, required=True, help="prime characteristic")
    p.add_argument("--n", type=int, default=1, help="extension degree (default 1)")
    p.add_argument(
        "--modulus",
        type=str,
        default=None,
        help="comma-separated modulus coefficients a_0,...,a_n (low degree first)",
    )
    p.add_argument("--max-q", type=int, default=None, help="override the field-size cap")


def _add_set_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--set-a", type=str, default=None, help="element-set file for A")
    p.add_argument("--set-b", type=str, default=None, help="element-set file for B")
    p.add_argument(
        "--gen",
        type=str,
        default=None,
        choices=["random", "qr", "subgroup", "interval", "full", "full-nonzero"],
        help="generator for sets not given as files",
    )
    p.add_argument("--density", type=float, default=None, help="density for --gen random")
    p.add_argument("--d", type=int, default=None, help="subgroup size for --gen subgroup")
    p.add_argument("--lo", type=int, default=None, help="interval lower bound")
    p.add_argument("--hi", type=int, default=None, help="interval upper bound")


def _add_out_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", type=str, default=None, help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="progset", description=__doc__)
    ap.add_argument("--version", action="version", version=f"progset {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def cmd(name: str, *, field=True, sets=False, out=True):
        sp = sub.add_parser(name)
        if field:
            _add_field_args(sp)
        if sets:
            _add_set_args(sp)
        if out:
            _add_out_args(sp)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--workers", type=int, default=_default_workers())
        return sp

    cmd("field-info")

    sp = cmd("gen-set", sets=True)
    sp.add_argument("--set-format", choices=["set", "report"], default="set",
                    help="emit the element-set file format or a report envelope")

    sp = cmd("product", sets=True)
    sp.add_argument("--h", type=int, default=None, help="optional shift")
    sp.add_argument("--set-format", choices=["set", "report"], default="set")

    for name in ("search-ap", "search-gp"):
        sp = cmd(name, sets=True)
        sp.add_argument("--k", type=int, default=None,
                        help="progression length; omit to search for the longest")
        sp.add_argument("--h", type=int, default=None,
                        help="shift applied when searching a productset")

    sp = cmd("count-ap", sets=True)
    sp.add_argument("--k", type=int, required=True)

    sp = cmd("count-gp", sets=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--h", type=int, default=1)

    sp = cmd("check-thm1", sets=True)
    sp.add_argument("--k", type=int, required=True)

    sp = cmd("check-thm2", sets=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--h", type=int, default=1)

    sp = cmd("verify", sets=True)
    sp.add_argument("--suite", required=True,
                    choices=["orthogonality", "weil", "gp-structure", "cauchy",
                             "identity", "repfn"])
    sp.add_argument("--k", type=int, default=3)
    sp.add_argument("--h", type=int, default=1)
    sp.add_argument("--tol", type=float, default=None)
    sp.add_argument("--mode", choices=["auto", "exhaustive", "sampled"], default="auto")
    sp.add_argument("--trials", type=int, default=10000,
                    help="sample count for sampled suites")

    sp = cmd("sweep")
    sp.add_argument("--kind", choices=["ap", "gp"], required=True)
    sp.add_argument("--k", type=int, default=3)
    sp.add_argument("--h", type=int, default=1)
    sp.add_argument("--densities", type=str, default="0.3,0.5,0.7,0.82,1.0")
    sp.add_argument("--trials", type=int, default=20)

    sp = cmd("growth", field=False)
    sp.add_argument("--kind", choices=["ap", "gp"], required=True)
    sp.add_argument("--qs", type=str, required=True, help="comma-separated field sizes")
    sp.add_argument("--alpha", type=float, default=0.5)
    sp.add_argument("--beta", type=float, default=0.5)
    sp.add_argument("--h", type=int, default=1)
    sp.add_argument("--trials", type=int, default=5)

    sp = cmd("qr-experiment", field=False)
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--primes", type=str, default=None, help="comma-separated primes")
    group.add_argument("--pmax", type=int, default=None, help="all odd primes <= pmax")

    return ap


def _parse_modulus(raw: str | None) -> tuple[int, ...] | None:
    if raw is None:
        return None
    try:
        return tuple(int(c) for c in raw.split(","))
    except ValueError as exc:
        raise ConfigError(f"--modulus: cannot parse {raw!r}") from exc


def _build_field(args) -> "FieldTables":
    return build_field(args.p, args.n, _parse_modulus(args.modulus), max_q=args.max_q)


def _gen_spec(args, seed: int) -> GenSpec:
    if args.gen is None:
        raise ConfigError("--gen: a generator kind or --set-a/--set-b file is required")
    return GenSpec(kind=args.gen, density=args.density, d=args.d,
                   lo=args.lo, hi=args.hi, seed=seed)


def _load_pair(t, args):
    """Resolve (A, B) from files or the generator flags."""
    if args.set_a is not None:
        a = load_set(args.set_a)
    else:
        a = make_set(t, _gen_spec(args, derive_seed(args.seed, 1)))
    if args.set_b is not None:
        b = load_set(args.set_b)
    else:
        b = make_set(t, _gen_spec(args, derive_seed(args.seed, 2)))
    return a, b


def _load_search_target(t, args):
    """One set to search: the A input, or A*B (+h) when B is also given."""
    if args.set_a is not None and args.set_b is None:
        return load_set(args.set_a)
    if args.set_a is None and args.set_b is None and args.gen is not None:
        return make_set(t, _gen_spec(args, derive_seed(args.seed, 1)))
    a, b = _load_pair(t, args)
    h = getattr(args, "h", None)
    if h:
        return shifted_productset(t, a, b, h)
    return productset(t, a, b)


def _field_echo(t) -> dict:
    return {
        "p": t.p,
        "n": t.n,
        "q": t.q,
        "modulus": list(t.spec.modulus) if t.spec.modulus else None,
        "generator": t.g,
    }


def _run_command(args) -> tuple[object, dict | None]:
    """Execute a subcommand; returns (payload, field echo)."""
    name = args.command

    if name == "field-info":
        t = _build_field(args)
        info = dict(_field_echo(t))
        info["order_factorization"] = {
            str(f): e for f, e in sorted(factorize(t.order).items())
        }
        return info, _field_echo(t)

    if name == "gen-set":
        t = _build_field(args)
        s = make_set(t, _gen_spec(args, args.seed))
        return s, _field_echo(t)

    if name == "product":
        t = _build_field(args)
        a, b = _load_pair(t, args)
        if args.h:
            s = shifted_productset(t, a, b, args.h)
        else:
            s = productset(t, a, b)
        return s, _field_echo(t)

    if name in ("search-ap", "search-gp"):
        t = _build_field(args)
        s = _load_search_target(t, args)
        finder = find_ap_of_length if name == "search-ap" else find_gp_of_length
        longest = longest_ap if name == "search-ap" else longest_gp
        if args.k is not None:
            w = finder(t, s, args.k)
            payload = {"k": args.k, "found": w is not None, "witness": w,
                       "set_card": s.card}
        else:
            k, w = longest(t, s)
            payload = {"longest": k, "witness": w, "set_card": s.card}
        return payload, _field_echo(t)

    if name == "count-ap":
        t = _build_field(args)
        a, b = _load_pair(t, args)
        return count_ap_solutions(t, a, b, args.k), _field_echo(t)

    if name == "count-gp":
        t = _build_field(args)
        a, b = _load_pair(t, args)
        return count_gp_solutions(t, a, b, args.k, args.h), _field_echo(t)

    if name == "check-thm1":
        t = _build_field(args)
        a, b = _load_pair(t, args)
        return check_theorem1(t, a, b, args.k), _field_echo(t)

    if name == "check-thm2":
        t = _build_field(args)
        a, b = _load_pair(t, args)
        return check_theorem2(t, a, b, args.k, args.h), _field_echo(t)

    if name == "verify":
        t = _build_field(args)
        if args.suite == "orthogonality":
            rep = verify_orthogonality(t, tol=args.tol)
        elif args.suite == "weil":
            rep = verify_weil_bound_ap(t, args.k, mode=args.mode,
                                       samples=args.trials, seed=args.seed)
        elif args.suite == "gp-structure":
            rep = verify_gp_structure_bound(t, args.k, args.h, mode=args.mode,
                                            samples=args.trials, seed=args.seed)
        else:
            if args.gen is None and args.set_a is None:
                args.gen = "full-nonzero"
            a, b = _load_pair(t, args)
            if args.suite == "cauchy":
                rep = verify_cauchy_step(t, a, b, tol=args.tol)
            elif args.suite == "repfn":
                rep = verify_rep_charsum(t, a, b, tol=args.tol if args.tol else 1e-6)
            else:
                rep = verify_counting_identity_ap(
                    t, a, b, args.k, tol=args.tol if args.tol else 1e-5
                )
        return rep, _field_echo(t)

    if name == "sweep":
        cfg = SweepConfig(
            kind=args.kind,
            p=args.p,
            n=args.n,
            modulus=_parse_modulus(args.modulus),
            k=args.k,
            h=args.h,
            densities=tuple(float(x) for x in args.densities.split(",")),
            trials=args.trials,
            seed=args.seed,
            workers=args.workers,
        )
        return threshold_sweep(cfg), None

    if name == "growth":
        qs = [int(x) for x in args.qs.split(",")]
        table = growth_experiment(args.kind, qs, args.alpha, args.beta,
                                  args.trials, args.seed, h=args.h,
                                  workers=args.workers)
        return table, None

    if name == "qr-experiment":
        if args.pmax is not None:
            primes = [p for p in range(3, args.pmax + 1, 2) if is_prime(p)]
        else:
            primes = [int(x) for x in args.primes.split(",")]
        return qr_experiment(primes), None

    raise ConfigError(f"unknown command {name!r}")


def _params_echo(args) -> dict:
    # workers and out do not affect the computed result (worker-count
    # independence is itself a tested invariant), so reports stay
    # byte-identical across schedules
    skip = {"command", "workers", "out"}
    return {k: jsonable(v) for k, v in sorted(vars(args).items()) if k not in skip}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        payload, field_echo = _run_command(args)
    except VerificationError as exc:
        env = ReportEnvelope(
            command=args.command,
            params=_params_echo(args),
            field=None,
            seed=getattr(args, "seed", None),
            version=__version__,
            timing_ms=(time.perf_counter() - started) * 1000.0,
            result={"passed": False, "violation": str(exc),
                    "dump": getattr(exc, "dump", None)},
        )
        try:
            write_report(env, getattr(args, "format", "json"), getattr(args, "out", None))
        except IoError as io_exc:
            print(f"progset: {io_exc}", file=sys.stderr)
        return 1
    except IoError as exc:
        print(f"progset: {exc}", file=sys.stderr)
        return 1
    except ProgsetError as exc:
        print(f"progset {args.command}: {exc}", file=sys.stderr)
        return 2

    # set-format output writes the shared element-set text format directly
    if getattr(args, "set_format", None) == "set":
        try:
            if args.out is None:
                save_set(payload, sys.stdout)
            else:
                try:
                    save_set(payload, args.out)
                except OSError as exc:
                    raise IoError(f"cannot write set to {args.out}: {exc}") from exc
        except IoError as exc:
            print(f"progset: {exc}", file=sys.stderr)
            return 1
        return 0

    env = ReportEnvelope(
        command=args.command,
        params=_params_echo(args),
        field=field_echo,
        seed=getattr(args, "seed", None),
        version=__version__,
        timing_ms=(time.perf_counter() - started) * 1000.0,
        result=payload,
    )
    try:
        write_report(env, getattr(args, "format", "json"), getattr(args, "out", None))
    except IoError as exc:
        print(f"progset: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
