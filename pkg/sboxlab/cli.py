"""
Command-line front end.

    sboxlab sbox gen | batch | analyze
    sboxlab count d1|d2|d3|factorial|oracle N
    sboxlab keyexp IK_HEX --rounds R --width W [--keyed]
    sboxlab dyn lyapunov|se|k2|cd|bifurcation|bits
    sboxlab crypt aes|sm4 expand|recover

Exit codes: 0 success, 1 usage error, 2 computation failure.
"""

import argparse
import logging
import sys
from collections.abc import Sequence
from itertools import islice
from typing import TextIO

import numpy as np
from dotenv import load_dotenv

from sboxlab import combinatorics
from sboxlab.chaos.chaos_core import (
    TRANSIENT,
    EcmParams,
    MapKind,
    SeedMapParams,
    State2D,
    iter_ecm,
    seed_from_key,
)
from sboxlab.chaos.dynamics import (
    DEFAULT_GAIN_EXPONENT,
    GAIN_EXPONENTS,
    Channel,
    DynamicsReport,
    SeConfig,
    bifurcation_scan,
    bit_balance,
    correlation_dimension,
    ecm_series,
    extract_bitstream,
    k2_entropy,
    lyapunov_scan,
    sample_entropy,
    seed_map_lyapunov,
    seed_map_series,
)
from sboxlab.errors import InvalidInputError, SboxLabError
from sboxlab.keys.aes import aes_expand, aes_recover
from sboxlab.keys.key_expansion import (
    ROUND_KEY_WIDTHS,
    InitialKey,
    expand_keys,
    hamming_distance,
    pairwise_hamming_mean,
    render_schedule,
)
from sboxlab.keys.sm4 import sm4_expand, sm4_recover
from sboxlab.sbox.codec import read_sbox, serialize_sbox, write_sbox
from sboxlab.sbox.construction import construct_sbox, random_seeds
from sboxlab.sbox.sbox import SBox, format_ring, structural_report
from sboxlab.sbox.sbox_metrics import batch_stats, full_report, render_table
from sboxlab.sbox.tables import builtin_sbox
from sboxlab.utils.logging_config import setup_logger
from sboxlab.utils.output_helpers import (
    dump_structured,
    format_csv,
    parse_hex_key,
    write_bytes_atomic,
    write_csv,
    write_text_atomic,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILURE = 2

DEFAULT_X0 = 0.414213562373095
DEFAULT_Y0 = 0.732050807568877
DEFAULT_GAMMA = 5.385164807134504
DEFAULT_K = 7

# Rings up to this length are listed in the text report.
SHORT_RING_MAX = 16


class UsageError(Exception):
    """Raised instead of argparse's own exit so run() controls exit codes."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_seed_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--x0", type=float, default=DEFAULT_X0)
    p.add_argument("--y0", type=float, default=DEFAULT_Y0)
    p.add_argument("--gamma", type=float, default=DEFAULT_GAMMA)
    p.add_argument("--k", type=int, default=DEFAULT_K)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sboxlab", description="Chaos-based S-Box workbench")
    parser.add_argument("--format", choices=["text", "json", "yaml"], default="text")
    parser.add_argument("--log-file", default=None)
    parser.add_argument("--log-level", default=None)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    # sbox
    sbox = sub.add_parser("sbox", help="construct and analyse S-Boxes")
    sbox_sub = sbox.add_subparsers(dest="action", required=True, parser_class=_Parser)
    gen = sbox_sub.add_parser("gen", help="construct a strong S-Box")
    _add_seed_args(gen)
    gen.add_argument("--key", default=None, help="64 hex digits; overrides the seed flags")
    gen.add_argument("--restart-cap", type=int, default=None)
    gen.add_argument("--output", "-o", default=None)
    gen.add_argument("--out-format", choices=["grid", "json", "yaml"], default="grid")
    batch = sbox_sub.add_parser("batch", help="metrics over many constructed S-Boxes")
    batch.add_argument("--count", type=int, default=100)
    batch.add_argument("--rng-seed", type=int, default=0)
    batch.add_argument("--workers", type=int, default=1)
    analyze = sbox_sub.add_parser("analyze", help="structural report and six-criteria metrics")
    analyze.add_argument("source", help="file path or builtin:<name>")

    # count
    count = sub.add_parser("count", help="exact permutation class counts")
    count.add_argument("which", choices=["d1", "d2", "d3", "factorial", "ratio", "oracle"])
    count.add_argument("n", type=int)
    count.add_argument("--no-fixed", action="store_true")
    count.add_argument("--no-reverse", action="store_true")
    count.add_argument("--full-cycle", action="store_true")
    count.add_argument("--workers", type=int, default=1)

    # keyexp
    keyexp = sub.add_parser("keyexp", help="chaotic irreversible key expansion")
    keyexp.add_argument("ik", help="initial key, 64 hex digits")
    keyexp.add_argument("--rounds", type=int, default=16)
    keyexp.add_argument("--width", type=int, choices=ROUND_KEY_WIDTHS, default=32)
    keyexp.add_argument("--keyed", action="store_true")
    keyexp.add_argument("--output", "-o", default=None)

    # dyn
    dyn = sub.add_parser("dyn", help="dynamics of the seed maps and the 2D-ECM")
    dyn_sub = dyn.add_subparsers(dest="action", required=True, parser_class=_Parser)
    lyap = dyn_sub.add_parser("lyapunov")
    lyap.add_argument("--map", choices=["ecm", "logistic", "quadratic"], default="ecm")
    _add_seed_args(lyap)
    lyap.add_argument("--gamma-min", type=float, default=0.36)
    lyap.add_argument("--gamma-max", type=float, default=18.0)
    lyap.add_argument("--steps", type=int, default=50)
    lyap.add_argument("--n", type=int, default=10_000)
    lyap.add_argument("--mu", type=float, default=4.0)
    lyap.add_argument("--gamma1d", type=float, default=2.0)
    lyap.add_argument("--workers", type=int, default=1)
    lyap.add_argument("--output", "-o", default=None)
    for name in ("se", "k2"):
        est = dyn_sub.add_parser(name)
        est.add_argument("--map", choices=["ecm", "logistic", "quadratic"], default="ecm")
        _add_seed_args(est)
        est.add_argument("--mu", type=float, default=4.0)
        est.add_argument("--gamma1d", type=float, default=2.0)
        est.add_argument("--n", type=int, default=5000)
        est.add_argument("--m", type=int, default=2)
        est.add_argument("--r-factor", type=float, default=0.2)
        est.add_argument("--channel", choices=["x", "y"], default="x")
    cd = dyn_sub.add_parser("cd")
    _add_seed_args(cd)
    cd.add_argument("--n", type=int, default=10_000)
    bif = dyn_sub.add_parser("bifurcation")
    bif.add_argument("--map", choices=["logistic", "quadratic"], default="logistic")
    bif.add_argument("--min", type=float, dest="param_min", default=0.0)
    bif.add_argument("--max", type=float, dest="param_max", default=None)
    bif.add_argument("--steps", type=int, default=400)
    bif.add_argument("--samples", type=int, default=100)
    bif.add_argument("--output", "-o", default=None)
    bits = dyn_sub.add_parser("bits")
    _add_seed_args(bits)
    bits.add_argument("--n-bytes", type=int, required=True)
    bits.add_argument("--channel", choices=["x", "y"], default="x")
    bits.add_argument("--gain", type=int, choices=GAIN_EXPONENTS, default=DEFAULT_GAIN_EXPONENT)
    bits.add_argument("--output", "-o", required=True)

    # crypt
    crypt = sub.add_parser("crypt", help="reversible AES-128 / SM4 key schedules")
    crypt.add_argument("cipher", choices=["aes", "sm4"])
    crypt.add_argument("action", choices=["expand", "recover"])
    crypt.add_argument("keys", nargs="+", help="master key, or round key(s) for recover")
    crypt.add_argument("--index", type=int, default=None, help="round index of the first key")
    return parser


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def _ecm_seed(args: argparse.Namespace) -> tuple[EcmParams, State2D]:
    return EcmParams(args.gamma, args.k), State2D(args.x0, args.y0)


def _emit(out: TextIO, fmt: str, data: dict, text: str) -> None:
    out.write(text if fmt == "text" else dump_structured(data, fmt))


def _load_sbox(source: str) -> SBox:
    if source.startswith("builtin:"):
        return builtin_sbox(source.split(":", 1)[1])
    return read_sbox(source)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _cmd_sbox(args: argparse.Namespace, out: TextIO) -> None:
    if args.action == "gen":
        if args.key is not None:
            params, s0 = seed_from_key(parse_hex_key(args.key, 32))
        else:
            params, s0 = _ecm_seed(args)
        kwargs = {} if args.restart_cap is None else {"restart_cap": args.restart_cap}
        sbox, trace = construct_sbox(params, s0, **kwargs)
        logger.info("constructed S-Box: ctr=%d restarts=%d", trace.ctr, trace.restarts)
        if args.output:
            write_sbox(args.output, sbox, args.out_format)
        text = serialize_sbox(sbox, args.out_format) + (
            f"# ctr={trace.ctr} N={trace.N} restarts={trace.restarts}\n"
        )
        data = {"table": [f"{v:02X}" for v in sbox.table], "trace": trace.as_dict()}
        _emit(out, args.format, data, text)
    elif args.action == "batch":
        stats = batch_stats(args.count, random_seeds(args.rng_seed), args.workers)
        text = (
            f"count {stats.count}\n"
            f"nl_avg mean {stats.nl_avg_mean:.4f} min {stats.nl_avg_min:.4f} "
            f"max {stats.nl_avg_max:.4f}\n"
            f"dap mean {stats.dap_mean:.4f}\n"
        )
        _emit(out, args.format, stats.as_dict(), text)
    else:
        sbox = _load_sbox(args.source)
        structure = structural_report(sbox)
        metrics = full_report(sbox)
        short_rings = [c for c in structure.cycles.cycles if c.length <= SHORT_RING_MAX]
        lines = [
            f"S-Box: {sbox.name or args.source}",
            "fixed points: " + (" ".join(f"{v:02X}" for v in structure.fixed_points) or "none"),
            "reverse fixed points: "
            + (" ".join(f"{v:02X}" for v in structure.reverse_fixed_points) or "none"),
            "cycle lengths: " + ", ".join(str(n) for n in structure.cycles.lengths),
            *(f"ring: {format_ring(c.members)}" for c in short_rings),
            "",
            render_table([metrics]).rstrip("\n"),
        ]
        data = {"name": sbox.name, "structure": structure.as_dict(), "metrics": metrics.as_dict()}
        _emit(out, args.format, data, "\n".join(lines) + "\n")


def _exact_text(value: int) -> str:
    """Decimal digits of value, past the interpreter's int-to-str digit limit."""
    limit = sys.get_int_max_str_digits()
    sys.set_int_max_str_digits(0)
    try:
        return str(value)
    finally:
        sys.set_int_max_str_digits(limit)


def _cmd_count(args: argparse.Namespace, out: TextIO) -> None:
    n = args.n
    if args.which == "ratio":
        ratio = float(combinatorics.strong_fraction(n))
        data: dict = {"which": "ratio", "n": n, "value": ratio, "percent": 100 * ratio}
        _emit(out, args.format, data, f"{ratio:.6e}\n{100 * ratio:.5f}%\n")
        return
    if args.which == "oracle":
        conds = combinatorics.ConditionSet(args.no_fixed, args.no_reverse, args.full_cycle)
        value = combinatorics.brute_force_count(n, conds, args.workers)
    else:
        value = {
            "d1": combinatorics.count_d1,
            "d2": combinatorics.count_d2,
            "d3": combinatorics.count_d3,
            "factorial": combinatorics.count_factorial,
        }[args.which](n)
    exact = _exact_text(value)
    data = {"which": args.which, "n": n, "value": exact}
    text = f"{exact}\n"
    if value >= 1:
        sci = combinatorics.to_scientific(value)
        data["scientific"] = str(sci)
        text += f"{sci}\n"
    _emit(out, args.format, data, text)


def _cmd_keyexp(args: argparse.Namespace, out: TextIO) -> None:
    ik = InitialKey.from_hex(args.ik)
    schedule = expand_keys(ik, args.rounds, args.width, args.keyed)
    text = render_schedule(schedule, ik)
    if args.output:
        write_text_atomic(args.output, text)
    data: dict = {
        "rounds": schedule.rounds,
        "width": schedule.width_bytes,
        "keyed": schedule.keyed_sbox,
        "round_keys": [rk.hex for rk in schedule],
    }
    if schedule.width_bytes == len(ik.data):
        distances = [hamming_distance(rk.data, ik.data) for rk in schedule]
        data["hamming_to_ik"] = distances
        data["hamming_mean"] = sum(distances) / len(distances)
    if schedule.rounds > 1:
        data["pairwise_hamming_mean"] = pairwise_hamming_mean(schedule)
    _emit(out, args.format, data, text)


def _seed_map(args: argparse.Namespace) -> SeedMapParams:
    kind = MapKind(args.map)
    return SeedMapParams(kind, mu=args.mu, gamma1d=args.gamma1d)


def _write_or_print(out: TextIO, path: str | None, header: list[str], rows: list) -> None:
    if path:
        write_csv(path, header, rows)
        logger.info("wrote %d rows to %s", len(rows), path)
    else:
        out.write(format_csv(header, rows))


def _cmd_dyn(args: argparse.Namespace, out: TextIO) -> None:
    if args.action == "lyapunov":
        if args.map == "ecm":
            gammas = np.linspace(args.gamma_min, args.gamma_max, args.steps)
            rows = lyapunov_scan(gammas, args.k, State2D(args.x0, args.y0), args.n, args.workers)
            _write_or_print(out, args.output, ["gamma", "lambda1", "lambda2"], rows)
        else:
            start = 0.3 if args.map == "logistic" else 0.1
            value = seed_map_lyapunov(_seed_map(args), start, args.n)
            _emit(out, args.format, {"lyapunov": value}, f"{value!r}\n")
    elif args.action in ("se", "k2"):
        if args.map == "ecm":
            series = ecm_series(*_ecm_seed(args), args.n, Channel(args.channel))
        else:
            series = seed_map_series(_seed_map(args), args.x0, args.n)
        cfg = SeConfig(args.m, args.r_factor)
        if args.action == "se":
            report = DynamicsReport(sample_entropy=sample_entropy(series, cfg))
            value = report.sample_entropy
        else:
            report = DynamicsReport(k2_entropy=k2_entropy(series, cfg))
            value = report.k2_entropy
        _emit(out, args.format, report.as_dict(), f"{value!r}\n")
    elif args.action == "cd":
        points = np.array(list(islice(iter_ecm(*_ecm_seed(args), TRANSIENT), args.n)))
        report = DynamicsReport(correlation_dimension=correlation_dimension(points))
        _emit(out, args.format, report.as_dict(), f"{report.correlation_dimension!r}\n")
    elif args.action == "bifurcation":
        kind = MapKind(args.map)
        hi = args.param_max
        if hi is None:
            hi = 4.0 if kind is MapKind.LOGISTIC else 2.0
        rows = bifurcation_scan(kind, args.param_min, hi, args.steps, args.samples)
        _write_or_print(out, args.output, ["param", "x"], rows)
    else:
        data = extract_bitstream(
            *_ecm_seed(args), args.n_bytes, Channel(args.channel), args.gain
        )
        write_bytes_atomic(args.output, data)
        total, per_bit = bit_balance(data)
        summary = {"bytes": len(data), "ones_fraction": total, "per_bit": per_bit}
        _emit(out, args.format, summary, f"wrote {len(data)} bytes, ones {total:.6f}\n")


def _cmd_crypt(args: argparse.Namespace, out: TextIO) -> None:
    if args.action == "expand":
        if len(args.keys) != 1:
            raise InvalidInputError("expand takes exactly one master key")
        key = parse_hex_key(args.keys[0], 16)
        round_keys = aes_expand(key) if args.cipher == "aes" else sm4_expand(key)
        hexes = [rk.hex().upper() for rk in round_keys]
        text = "".join(f"{i:>2}  {h}\n" for i, h in enumerate(hexes))
        _emit(out, args.format, {"cipher": args.cipher, "round_keys": hexes}, text)
        return

    if args.index is None:
        raise InvalidInputError("recover needs --index")
    if args.cipher == "aes":
        if len(args.keys) != 1:
            raise InvalidInputError("AES recovery takes exactly one round key")
        key = aes_recover(parse_hex_key(args.keys[0], 16), args.index)
    else:
        key = sm4_recover([parse_hex_key(k, 4) for k in args.keys], args.index)
    recovered = key.hex().upper()
    _emit(out, args.format, {"cipher": args.cipher, "key": recovered}, f"{recovered}\n")


_COMMANDS = {
    "sbox": _cmd_sbox,
    "count": _cmd_count,
    "keyexp": _cmd_keyexp,
    "dyn": _cmd_dyn,
    "crypt": _cmd_crypt,
}


def run(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    """Parse argv, dispatch, and map failures to exit codes."""
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    try:
        setup_logger("sboxlab", args.log_level, args.log_file)
        logger.info("command: %s", " ".join(argv if argv is not None else sys.argv[1:]))
        _COMMANDS[args.command](args, out)
    except InvalidInputError as exc:
        print(parser.format_usage(), end="", file=sys.stderr)
        print(f"sboxlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SboxLabError as exc:
        logger.error("%s failed: %s", args.command, exc)
        print(f"sboxlab: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except OSError as exc:
        target = exc.filename or args.command
        logger.error("%s failed: %s", args.command, exc)
        print(f"sboxlab: {target}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


def main() -> None:
    load_dotenv()
    sys.exit(run())


if __name__ == "__main__":
    main()
