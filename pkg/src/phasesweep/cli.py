"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or validation
error, 3 domain error (e.g. SNR boost undefined because ``|h0| = 0``).
"""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import bench as bench_mod
from .channel import load_document
from .errors import ConfigError, InvalidArgumentError, ParseError, SizeLimitError, UndefinedBoostError
from .golden import FAIL, TYPO, golden_checks
from .oracle import DEFAULT_LIMIT, solve_brute_force
from .phasecore import PhaseAlphabet
from .sweep import BRUTE_FORCE, LEMMA1_BASELINE, SWEEP_OPTIMAL, solve, solve_sweep

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3

ALGORITHM_ALIASES = {
    "sweep": SWEEP_OPTIMAL,
    SWEEP_OPTIMAL: SWEEP_OPTIMAL,
    "lemma1": LEMMA1_BASELINE,
    "lemma1-baseline": LEMMA1_BASELINE,
    LEMMA1_BASELINE: LEMMA1_BASELINE,
    "brute": BRUTE_FORCE,
    "brute-force": BRUTE_FORCE,
    BRUTE_FORCE: BRUTE_FORCE,
}


class UsageError(Exception):
    pass


def _int_list(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _algorithm(text):
    try:
        return ALGORITHM_ALIASES[text]
    except KeyError:
        raise argparse.ArgumentTypeError(f"unknown algorithm {text!r}")


def _algorithm_list(text):
    return [_algorithm(t.strip()) for t in text.split(",") if t.strip()]


def _u64(text):
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError(f"seed must fit in an unsigned 64-bit integer, got {text}")
    return v


def _fmt_angle(x, degrees):
    return f"{math.degrees(x):.6g} deg" if degrees else f"{x:.6g}"


def _load(path, K_flag):
    instance, hint = load_document(path)
    K = K_flag if K_flag is not None else hint
    if K is None:
        raise UsageError("no --K given and the instance document has no K hint")
    if K_flag is not None and hint is not None and hint != K_flag:
        print(f"warning: --K {K_flag} overrides K={hint} from {path}", file=sys.stderr)
    return instance, PhaseAlphabet(K)


def _print_solution(sol, degrees):
    print(f"algorithm: {sol.algorithm}")
    print(f"K: {sol.K}")
    print("indices: " + " ".join(str(k) for k in sol.indices))
    print("theta: " + " ".join(_fmt_angle(t, degrees) for t in sol.phases))
    print(f"|g|: {sol.g_abs:.6g}")
    print(f"phase(mu): {_fmt_angle(sol.mu_phase, degrees)}")
    try:
        print(f"boost: {sol.boost:.6g} ({sol.boost_db:.6g} dB)")
    except UndefinedBoostError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def cmd_solve(args):
    instance, alphabet = _load(args.instance, args.K)
    sol = solve(instance, alphabet, args.algorithm)
    return _print_solution(sol, args.degrees)


def cmd_oracle(args):
    instance, alphabet = _load(args.instance, args.K)
    brute = solve_brute_force(instance, alphabet, args.limit)
    code = _print_solution(brute, args.degrees)
    sweep = solve_sweep(instance, alphabet)
    rel = abs(sweep.g_abs - brute.g_abs) / max(brute.g_abs, np.finfo(float).tiny)
    agree = rel <= 1e-9
    print(f"sweep |g|: {sweep.g_abs:.6g}  relative difference: {rel:.3g}  agree: {'yes' if agree else 'no'}")
    if not agree:
        return EXIT_VERIFY
    return code


def cmd_verify_golden(args):
    checks = golden_checks(use_printed_h2=args.use_printed_h2)
    for c in checks:
        print(c.line())
    n_fail = sum(c.status == FAIL for c in checks)
    n_typo = sum(c.status == TYPO for c in checks)
    print(f"{len(checks)} checks: {len(checks) - n_fail - n_typo} pass, "
          f"{n_typo} known misprint(s), {n_fail} fail")
    return EXIT_OK if n_fail == 0 else EXIT_VERIFY


def cmd_bench(args):
    try:
        run = bench_mod.BenchRun(
            alphabet_sizes=args.K,
            element_counts=args.N,
            realizations=args.realizations,
            algorithms=args.algorithms,
            master_seed=args.seed,
            direct_scale=args.direct_scale,
            reflect_scale=args.reflect_scale,
        )
    except ConfigError as exc:
        raise UsageError(str(exc))
    table = bench_mod.run(run)
    cdf_path, summary_path = table.write(args.out)
    print(",".join(bench_mod.SUMMARY_HEADER))
    for row in table.summary_rows():
        print(",".join(str(v) for v in row))
    print(f"wrote {cdf_path} and {summary_path}")
    return EXIT_OK


def cmd_timing(args):
    if args.repeats < 0:
        raise UsageError("--repeats must be >= 0")
    if any(N < 1 for N in args.N):
        raise UsageError("every N must be >= 1")
    rows = bench_mod.timing_scan(PhaseAlphabet(args.K), sorted(args.N), args.repeats)
    print("N,median_solve_us,ratio_to_previous")
    prev = None
    for N, t in rows:
        ratio = "" if prev is None else f"{t / prev:.3f}"
        print(f"{N},{t * 1e6:.1f},{ratio}")
        prev = t
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="phasesweep", description="Optimal discrete phase-shift beamforming.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve one instance")
    s.add_argument("--instance", required=True)
    s.add_argument("--K", type=int)
    s.add_argument("--algorithm", type=_algorithm, default=SWEEP_OPTIMAL,
                   help="sweep | lemma1-baseline | brute")
    s.add_argument("--degrees", action="store_true", help="display angles in degrees")
    s.set_defaults(func=cmd_solve)

    o = sub.add_parser("oracle", help="exhaustive search, cross-checked against the sweep")
    o.add_argument("--instance", required=True)
    o.add_argument("--K", type=int)
    o.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    o.add_argument("--degrees", action="store_true")
    o.set_defaults(func=cmd_oracle)

    v = sub.add_parser("verify-golden", help="recompute the two-element sample calculation")
    v.add_argument("--use-printed-h2", action="store_true",
                   help="use Im(h2) exactly as printed instead of the corrected value")
    v.set_defaults(func=cmd_verify_golden)

    b = sub.add_parser("bench", help="Monte Carlo SNR-boost campaign")
    b.add_argument("--K", type=_int_list, required=True)
    b.add_argument("--N", type=_int_list, required=True)
    b.add_argument("--realizations", type=int, required=True)
    b.add_argument("--algorithms", type=_algorithm_list, default=[SWEEP_OPTIMAL, LEMMA1_BASELINE])
    b.add_argument("--seed", type=_u64, default=0)
    b.add_argument("--direct-scale", type=float, default=1.0)
    b.add_argument("--reflect-scale", type=float, default=None)
    b.add_argument("--out", required=True)
    b.set_defaults(func=cmd_bench)

    t = sub.add_parser("timing", help="median sweep solve time versus N")
    t.add_argument("--K", type=int, required=True)
    t.add_argument("--N", type=_int_list, required=True)
    t.add_argument("--repeats", type=int, default=5)
    t.set_defaults(func=cmd_timing)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError, SizeLimitError, InvalidArgumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UndefinedBoostError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
