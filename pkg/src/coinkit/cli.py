"""The ``coinkit`` command line.

Every subcommand takes ``--json`` for a single machine-readable object and
prints a reproduction seed whenever it consumed randomness. With ``--seed``
all randomness is derived from the given hex seed, so identical invocations
produce byte-identical output; without it the operating system supplies
entropy and the seed actually used is printed.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
from fractions import Fraction

from . import __version__, exprlang, extractor, loadbalance, numtheory, pairwise, sampling
from .bits import BitString
from .errors import CoinkitError, TrialBudgetError
from .rng import BitStream


# ---------------------------------------------------------------- arg types


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def open_probability(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a probability, got {text!r}")
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError(f"expected a value in (0, 1), got {value}")
    return value


def closed_probability(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a probability, got {text!r}")
    if not 0 <= value <= 1:
        raise argparse.ArgumentTypeError(f"expected a value in [0, 1], got {value}")
    return value


def hex_arg(text: str) -> str:
    stripped = text.removeprefix("0x")
    try:
        int(stripped, 16) if stripped else 0
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected hex digits, got {text!r}")
    return stripped


def position_list(text: str) -> list[int]:
    if not text.strip():
        return []
    out = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece.isdigit():
            raise argparse.ArgumentTypeError(
                f"expected comma-separated nonnegative integers, got {piece!r}"
            )
        out.append(int(piece))
    if len(set(out)) != len(out):
        raise argparse.ArgumentTypeError("positions must be distinct")
    return sorted(out)


# ---------------------------------------------------------------- helpers


def frac(value: Fraction) -> dict:
    return {"exact": str(value), "float": float(value)}


def make_stream(seed_hex: str | None, label: str) -> BitStream:
    return BitStream(bytes.fromhex(seed_hex) if seed_hex else None, label=label)


def parse_bitstring(hex_text: str, length: int, what: str) -> BitString:
    try:
        return BitString.from_hex(hex_text, length)
    except ValueError as exc:
        raise CoinkitError(f"{what}: {exc}") from exc


# ---------------------------------------------------------------- handlers
# Each handler returns (inputs, result, seed_used, text_lines).


def cmd_eqtest(args):
    lhs = exprlang.parse(args.lhs)
    rhs = exprlang.parse(args.rhs)
    inputs = {
        "lhs": args.lhs,
        "rhs": args.rhs,
        "trials": args.trials,
        "target_error": args.target_error,
        "precheck": not args.no_precheck,
    }
    modulus_range = exprlang.choose_modulus_range(lhs, rhs)
    rng = make_stream(args.seed, "eqtest")
    verdict = exprlang.equality_test(
        lhs,
        rhs,
        trials=args.trials,
        target_error=args.target_error,
        rng=rng,
        precheck=not args.no_precheck,
    )
    if isinstance(verdict, exprlang.Unequal):
        result = {
            "verdict": "unequal",
            "witness_modulus": verdict.witness_modulus,
            "lhs_residue": verdict.lhs_residue,
            "rhs_residue": verdict.rhs_residue,
            "trials": verdict.trials,
            "modulus_range": modulus_range,
        }
        lines = [
            "unequal (certified)",
            f"witness modulus: {verdict.witness_modulus}",
            f"residues: {verdict.lhs_residue} vs {verdict.rhs_residue}",
            f"random trials used: {verdict.trials}",
            f"modulus range: [2, {modulus_range}]",
        ]
    else:
        result = {
            "verdict": "probably_equal",
            "error_bound": frac(verdict.error_bound),
            "trials": verdict.trials,
            "modulus_range": modulus_range,
        }
        lines = [
            "probably equal",
            f"error bound: {verdict.error_bound} (= {float(verdict.error_bound):.3e})",
            f"trials: {verdict.trials}",
            f"modulus range: [2, {modulus_range}]",
        ]
    return inputs, result, rng.seed_hex, lines


def cmd_prime(args):
    if args.test is not None:
        rng = make_stream(args.seed, "prime")
        verdict = numtheory.miller_rabin(args.test, rounds=args.rounds, rng=rng)
        inputs = {"n": args.test, "rounds": args.rounds}
        if isinstance(verdict, numtheory.Composite):
            result = {"verdict": "composite", "witness": verdict.witness}
            lines = [f"{args.test} is composite (witness {verdict.witness})"]
        else:
            result = {
                "verdict": "probably_prime",
                "error_bound": frac(verdict.error_bound),
                "rounds": args.rounds,
            }
            lines = [
                f"{args.test} is probably prime "
                f"(error <= 4^-{args.rounds} = {float(verdict.error_bound):.3e})"
            ]
        return inputs, result, rng.seed_hex, lines
    lo, hi = args.random
    rng = make_stream(args.seed, "prime")
    p = numtheory.random_prime(lo, hi, rng)
    inputs = {"lo": lo, "hi": hi}
    result = {"prime": p}
    return inputs, result, rng.seed_hex, [f"random prime in [{lo}, {hi}]: {p}"]


def cmd_factor(args):
    outcome = numtheory.trial_division_factor(args.n, budget=args.budget)
    inputs = {"n": args.n, "budget": args.budget}
    result = {
        "factors": list(outcome.factors),
        "complete": outcome.complete,
        "cofactor": outcome.cofactor,
        "candidates_tried": outcome.candidates_tried,
    }
    if outcome.complete:
        lines = [f"{args.n} = {' * '.join(map(str, outcome.factors))}"]
    else:
        lines = [
            f"timeout after {outcome.candidates_tried} candidate primes",
            f"partial factors: {list(outcome.factors)}",
            f"unfactored cofactor: {outcome.cofactor}",
        ]
    return inputs, result, None, lines


def cmd_pairwise(args):
    inputs = {"k": args.k}
    if args.verify:
        report = pairwise.verify_pairwise(args.k)
        result = {
            "mode": "verify",
            "passed": report.passed,
            "pairs_checked": report.pairs_checked,
            "expected_count": report.expected_count,
            "violations": [list(v) for v in report.violations],
        }
        lines = [
            f"pairwise check over all {2**args.k} seeds: "
            f"{'pass' if report.passed else 'FAIL'} "
            f"({report.pairs_checked} index pairs, "
            f"each cell must count {report.expected_count})"
        ]
        return inputs, result, None, lines
    if args.verify_triple:
        report = pairwise.verify_not_threewise(args.k)
        result = {
            "mode": "verify-triple",
            "passed": report.passed,
            "triple": list(report.triple) if report.triple else None,
            "counts": report.counts,
        }
        lines = [
            f"non-uniform triple: {report.triple}"
            if report.passed
            else "no non-uniform triple found",
            f"outcome counts: {report.counts}",
        ]
        return inputs, result, None, lines
    # emission
    count = args.emit
    total = pairwise.output_length(args.k)
    if count > total:
        raise CoinkitError(f"stream holds only {total} bits for k={args.k}")
    seed_used = None
    if args.bits is not None:
        seed_bits = parse_bitstring(args.bits, args.k, "--bits")
    else:
        rng = make_stream(args.seed, "pairwise")
        seed_bits = rng.bitstring(args.k)
        seed_used = rng.seed_hex
    stream = pairwise.PairwiseStream(seed_bits)
    emitted = stream.emit(count)
    inputs["emit"] = count
    inputs["seed_bits"] = seed_bits.to_hex()
    result = {"mode": "emit", "count": count, "seed_bits": seed_bits.to_hex()}
    if args.format == "hex":
        payload = pairwise.pack_bits(emitted).hex()
        result["hex"] = payload
    else:
        payload = "".join(map(str, emitted.tolist()))
        result["bits"] = payload
    lines = [f"seed bits (hex, {args.k} bits): {seed_bits.to_hex()}", payload]
    return inputs, result, seed_used, lines


def cmd_extract(args):
    diag = parse_bitstring(args.seed, args.n + args.m - 1, "--seed")
    x = parse_bitstring(args.input, args.n, "--input")
    ext = extractor.ToeplitzExtractor(args.n, args.m, diag)
    out = ext.extract(x)
    inputs = {"n": args.n, "m": args.m, "seed": args.seed, "input": args.input}
    result = {"output_bits": str(out), "output_hex": out.to_hex()}
    return inputs, result, None, [f"output ({args.m} bits): {out.to_hex()} [{out}]"]


def cmd_prg_enum(args):
    x = parse_bitstring(args.input, args.n, "--input")
    outputs = extractor.enumerate_prg(args.n, args.m, x)
    limit = args.limit if args.limit is not None else len(outputs)
    shown = outputs[:limit]
    inputs = {"n": args.n, "m": args.m, "input": args.input, "limit": args.limit}
    result = {
        "count": len(outputs),
        "outputs": [o.to_hex() for o in shown],
        "truncated": limit < len(outputs),
    }
    lines = [f"{len(outputs)} outputs of {args.m} bits (seed order)"]
    lines.extend(o.to_hex() for o in shown)
    if limit < len(outputs):
        lines.append(f"... ({len(outputs) - limit} more suppressed by --limit)")
    return inputs, result, None, lines


def cmd_keyrecover(args):
    key_bits = args.key_bits if args.key_bits is not None else 4 * len(args.key)
    key = parse_bitstring(args.key, key_bits, "--key")
    seed = parse_bitstring(args.seed, key_bits + args.m - 1, "--seed")
    out = extractor.key_recover(key, args.leaked, args.m, seed, slack=args.slack)
    free_count = key_bits - len(args.leaked)
    inputs = {
        "key_bits": key_bits,
        "leaked": args.leaked,
        "m": args.m,
        "seed": args.seed,
        "slack": args.slack,
    }
    result = {
        "output_bits": str(out),
        "output_hex": out.to_hex(),
        "free_count": free_count,
        "achievable_m": extractor.achievable_output_bits(
            key_bits, len(args.leaked), args.slack
        ),
    }
    lines = [
        f"{key_bits}-bit key, {len(args.leaked)} positions leaked, "
        f"{free_count} unknown to the adversary",
        f"recovered {args.m} bits: {out.to_hex()} [{out}]",
    ]
    return inputs, result, None, lines


def cmd_area(args):
    region = sampling.REGIONS[args.region]
    rng = make_stream(args.seed, "area")
    est = sampling.estimate_area(region, args.n, confidence=args.confidence, rng=rng)
    inputs = {"region": args.region, "n": args.n, "confidence": args.confidence}
    result = {
        "value": est.value,
        "half_width": est.half_width,
        "confidence": est.confidence,
        "samples": est.samples,
        "method": est.method,
    }
    lines = [
        f"area of {args.region} ~= {est.value:.6f} "
        f"+- {est.half_width:.6f} at {est.confidence:.0%} confidence "
        f"({est.samples} samples)"
    ]
    return inputs, result, rng.seed_hex, lines


def cmd_poll(args):
    rng = make_stream(args.seed, "poll")
    inputs = {"p": args.p, "n": args.n, "runs": args.runs}
    if args.runs == 1:
        est = sampling.poll_simulate(args.p, args.n, rng)
        result = {
            "estimate": est.value,
            "half_width": est.half_width,
            "confidence": est.confidence,
            "samples": est.samples,
        }
        lines = [
            f"poll of {args.n}: estimate {est.value:.4f} "
            f"+- {est.half_width:.4f} (true fraction {args.p})"
        ]
        return inputs, result, rng.seed_hex, lines
    estimates = [sampling.poll_simulate(args.p, args.n, rng) for _ in range(args.runs)]
    hw = estimates[0].half_width
    within = sum(1 for e in estimates if abs(e.value - args.p) <= hw)
    result = {
        "runs": args.runs,
        "half_width": hw,
        "mean_estimate": sum(e.value for e in estimates) / args.runs,
        "within_half_width_fraction": within / args.runs,
    }
    lines = [
        f"{args.runs} polls of {args.n}: "
        f"{within / args.runs:.2%} within +-{hw:.4f} of {args.p}"
    ]
    return inputs, result, rng.seed_hex, lines


def cmd_samplesize(args):
    n = sampling.required_samples(args.eps, args.delta, method=args.method)
    inputs = {"epsilon": args.eps, "delta": args.delta, "method": args.method}
    result = {"samples": n}
    lines = [
        f"{n} samples for error <= {args.eps} "
        f"with probability >= {1 - args.delta:g} ({args.method})"
    ]
    return inputs, result, None, lines


def _read_durations(path: str) -> list[Fraction]:
    durations = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            text = line.strip()
            if not text:
                continue
            try:
                value = Fraction(text)
            except (ValueError, ZeroDivisionError) as exc:
                raise CoinkitError(f"{path}:{lineno}: not a number: {text!r}") from exc
            if value < 0:
                raise CoinkitError(f"{path}:{lineno}: negative duration {text!r}")
            durations.append(value)
    return durations


def cmd_balance(args):
    if args.durations:
        durations = _read_durations(args.durations)
    else:
        durations = [1] * args.tasks
    rng = make_stream(args.seed, "balance")
    inputs = {
        "tasks": len(durations),
        "machines": args.machines,
        "runs": args.runs,
        "durations_file": args.durations,
    }
    if args.runs == 1:
        assignment = loadbalance.assign_random(durations, args.machines, rng)
        stats = loadbalance.imbalance(assignment)
        result = {
            "loads": [str(l) for l in assignment.loads],
            "max_load": frac(stats.max_load),
            "mean_load": frac(stats.mean_load),
            "ratio": frac(stats.ratio) if stats.ratio is not None else None,
        }
        lines = [
            f"{len(durations)} tasks over {args.machines} machines",
            f"max load {stats.max_load} vs mean {stats.mean_load}"
            + (
                f", ratio {float(stats.ratio):.4f}"
                if stats.ratio is not None
                else " (all loads zero, ratio undefined)"
            ),
        ]
        return inputs, result, rng.seed_hex, lines
    ratios = []
    for _ in range(args.runs):
        stats = loadbalance.imbalance(
            loadbalance.assign_random(durations, args.machines, rng)
        )
        if stats.ratio is None:
            raise CoinkitError("all loads zero; ratio undefined")
        ratios.append(stats.ratio)
    median = statistics.median(ratios)
    result = {
        "runs": args.runs,
        "median_ratio": frac(Fraction(median)),
        "min_ratio": frac(min(ratios)),
        "max_ratio": frac(max(ratios)),
    }
    lines = [
        f"{args.runs} runs: max/mean ratio median {float(median):.4f} "
        f"(min {float(min(ratios)):.4f}, max {float(max(ratios)):.4f})"
    ]
    return inputs, result, rng.seed_hex, lines


# ---------------------------------------------------------------- wiring

HANDLERS = {
    "eqtest": cmd_eqtest,
    "prime": cmd_prime,
    "factor": cmd_factor,
    "pairwise": cmd_pairwise,
    "extract": cmd_extract,
    "prg-enum": cmd_prg_enum,
    "keyrecover": cmd_keyrecover,
    "area": cmd_area,
    "poll": cmd_poll,
    "samplesize": cmd_samplesize,
    "balance": cmd_balance,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coinkit",
        description="Randomized algorithms with reproducible seeding.",
    )
    parser.add_argument(
        "--version", action="version", version=f"coinkit {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, seeded=True):
        p = sub.add_parser(name, help=help_text)
        if seeded:
            p.add_argument("--seed", type=hex_arg, default=None,
                           help="hex seed; all randomness derives from it")
        p.add_argument("--json", action="store_true",
                       help="emit a single JSON object")
        return p

    p = add("eqtest", "equality of two huge expressions via prime fingerprints")
    p.add_argument("--lhs", required=True, help="left expression")
    p.add_argument("--rhs", required=True, help="right expression")
    p.add_argument("--trials", type=positive_int, default=10)
    p.add_argument("--target-error", type=open_probability, default=None)
    p.add_argument("--no-precheck", action="store_true",
                   help="skip the deterministic parity pre-check")

    p = add("prime", "randomized primality testing / random prime generation")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--test", type=positive_int, default=None, metavar="N")
    group.add_argument("--random", type=positive_int, nargs=2, default=None,
                       metavar=("LO", "HI"))
    p.add_argument("--rounds", type=positive_int, default=numtheory.DEFAULT_ROUNDS)

    p = add("factor", "trial-division factoring baseline", seeded=False)
    p.add_argument("n", type=positive_int)
    p.add_argument("--budget", type=positive_int, default=10**6,
                   help="max candidate primes to divide by")

    p = add("pairwise", "pairwise-independent bit generator")
    p.add_argument("--k", type=positive_int, required=True, help="seed length in bits")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--emit", type=positive_int, default=None, metavar="N",
                       help="emit the first N stream bits")
    group.add_argument("--verify", action="store_true",
                       help="exhaustively verify pairwise independence")
    group.add_argument("--verify-triple", action="store_true",
                       help="exhibit a non-uniform index triple")
    p.add_argument("--bits", type=hex_arg, default=None,
                   help="explicit k-bit seed (hex); otherwise drawn from --seed")
    p.add_argument("--format", choices=("bits", "hex"), default="bits")

    p = add("extract", "apply a Toeplitz extractor", seeded=False)
    p.add_argument("--n", type=positive_int, required=True, help="source bits")
    p.add_argument("--m", type=positive_int, required=True, help="output bits")
    p.add_argument("--seed", type=hex_arg, required=True,
                   help="extractor seed, n+m-1 bits in hex")
    p.add_argument("--input", type=hex_arg, required=True, help="source, n bits in hex")

    p = add("prg-enum", "cycle one sample through every extractor seed", seeded=False)
    p.add_argument("--n", type=positive_int, required=True)
    p.add_argument("--m", type=positive_int, required=True)
    p.add_argument("--input", type=hex_arg, required=True)
    p.add_argument("--limit", type=nonneg_int, default=None,
                   help="print at most this many outputs")

    p = add("keyrecover", "distill secret bits from a partially leaked key",
            seeded=False)
    p.add_argument("--key", type=hex_arg, required=True)
    p.add_argument("--key-bits", type=positive_int, default=None,
                   help="key length in bits (default: 4 per hex digit)")
    p.add_argument("--leaked", type=position_list, default=[],
                   help="comma-separated 0-based leaked positions")
    p.add_argument("--m", type=positive_int, required=True)
    p.add_argument("--seed", type=hex_arg, required=True,
                   help="shared extraction seed, key_bits+m-1 bits in hex")
    p.add_argument("--slack", type=nonneg_int, default=extractor.KEY_SLACK_BITS)

    p = add("area", "Monte Carlo area estimation on the unit square")
    p.add_argument("--region", choices=sorted(sampling.REGIONS), default="quarter-disk")
    p.add_argument("--n", type=positive_int, default=100_000)
    p.add_argument("--confidence", type=open_probability, default=0.95)

    p = add("poll", "simulate polling a biased population")
    p.add_argument("--p", type=closed_probability, required=True,
                   help="true supporter fraction")
    p.add_argument("--n", type=positive_int, required=True, help="sample size")
    p.add_argument("--runs", type=positive_int, default=1)

    p = add("samplesize", "required sample size for (epsilon, delta)", seeded=False)
    p.add_argument("--eps", type=open_probability, required=True)
    p.add_argument("--delta", type=open_probability, required=True)
    p.add_argument("--method", choices=("hoeffding", "normal"), default="hoeffding")

    p = add("balance", "random task-to-machine load balancing")
    p.add_argument("--tasks", type=positive_int, default=None,
                   help="number of unit tasks (ignored with --durations)")
    p.add_argument("--machines", type=positive_int, required=True)
    p.add_argument("--durations", default=None,
                   help="file with one nonnegative decimal duration per line")
    p.add_argument("--runs", type=positive_int, default=1)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "balance" and not args.durations and args.tasks is None:
        parser.error("balance needs --tasks or --durations")
    handler = HANDLERS[args.command]
    try:
        inputs, result, seed_used, lines = handler(args)
    except TrialBudgetError as exc:
        return _fail(args, exc, extra={
            "trials": exc.trials,
            "error_bound": frac(exc.error_bound),
            "target_error": exc.target_error,
        })
    except (CoinkitError, ValueError, OSError) as exc:
        return _fail(args, exc)
    if args.json:
        payload = {
            "command": args.command,
            "version": __version__,
            "seed_used": seed_used,
            "inputs": inputs,
            "result": result,
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)
        if seed_used is not None:
            print(f"seed: {seed_used}")
    return 0


def _fail(args, exc, extra=None) -> int:
    if getattr(args, "json", False):
        payload = {
            "command": args.command,
            "version": __version__,
            "error": {"type": type(exc).__name__, "message": str(exc)},
        }
        if extra:
            payload["error"].update(extra)
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"error ({type(exc).__name__}): {exc}", file=sys.stderr)
    return 1


def entry() -> None:
    sys.exit(main())
