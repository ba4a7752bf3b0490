"""Command-line front end.

Subcommands: encode, decode, oracle-decode, inject-errors, ber-sweep,
power-compare.  Bit frames travel as ASCII lines of '0'/'1', one frame per
line, which keeps fixtures diffable.  Code parameters are global flags and
must precede the subcommand, e.g.::

    convfec -K 3 --generators 7,5 -L 5 encode -i payloads.txt -o coded.txt
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from typing import Sequence

from . import __version__
from .decoder import (
    REGISTER_EXCHANGE,
    TRACEBACK,
    decode_frame,
    decode_frame_register_exchange,
)
from .encoder import encode_stream
from .channel import inject_errors
from .harness import (
    SweepConfig,
    ber_sweep,
    format_ber_csv,
    format_power_csv,
    power_compare,
)
from .oracle import MAX_PAYLOAD_BITS, ml_decode
from .trellis import CodeSpec, build_trellis

_ACTIVITY_CSV_HEADER = "scheme,frames,survivor_bit_writes,metric_writes,traceback_reads"


class CliError(Exception):
    """A user-facing failure; rendered as a one-line diagnostic."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="convfec",
        description=(
            "Rate-1/2 convolutional coding toolkit. Default code: K=7, "
            "generators 171/133 octal, 40-stage frames (34 payload bits "
            "plus a 6-bit zero tail)."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "-K", "--constraint-length", type=int, default=7, metavar="K",
        help="constraint length (default 7)",
    )
    parser.add_argument(
        "-L", "--frame-stages", type=int, default=40, metavar="L",
        help="encoder inputs per frame including the zero tail (default 40)",
    )
    parser.add_argument(
        "--generators", default="171,133", metavar="OCT,OCT",
        help="octal generator pair (default 171,133)",
    )
    parser.add_argument(
        "--spec-dump", action="store_true",
        help="print the resolved code spec and exit",
    )

    sub = parser.add_subparsers(dest="command", metavar="command")

    encode = sub.add_parser("encode", help="encode payload frames")
    _add_io(encode)

    decode = sub.add_parser("decode", help="Viterbi-decode coded frames to payloads")
    _add_io(decode)
    decode.add_argument(
        "--scheme", choices=("traceback", "regex"), default="traceback",
        help="survivor storage: trace-back or register exchange (regex)",
    )
    decode.add_argument(
        "--activity", metavar="PATH",
        help="also write aggregated switching-activity CSV to PATH",
    )

    oracle = sub.add_parser(
        "oracle-decode", help="exhaustive ML decode (small codes only)"
    )
    _add_io(oracle)

    inject = sub.add_parser("inject-errors", help="flip fixed bit positions per frame")
    _add_io(inject)
    inject.add_argument(
        "--positions", required=True, metavar="N,N,...",
        help="comma-separated bit indices to flip in every frame",
    )

    ber = sub.add_parser("ber-sweep", help="Monte-Carlo BER sweep over Eb/N0")
    ber.add_argument(
        "--ebno", required=True, metavar="SPEC",
        help="Eb/N0 dB points: 'start:step:stop' or a comma list",
    )
    ber.add_argument("--min-bits", default="1e5", metavar="N",
                     help="minimum information bits per point (default 1e5)")
    ber.add_argument("--max-bits", default="1e7", metavar="N",
                     help="information-bit budget per point (default 1e7)")
    ber.add_argument("--stop-errors", type=int, default=200, metavar="N",
                     help="stop a point after this many bit errors (default 200)")
    ber.add_argument("--seed", type=int, default=0, help="sweep seed (default 0)")
    ber.add_argument("-o", "--out", default="-", metavar="PATH",
                     help="CSV output path ('-' for stdout)")

    power = sub.add_parser(
        "power-compare", help="survivor-activity comparison of both schemes"
    )
    power.add_argument("--frames", type=int, default=1000, metavar="N",
                       help="frames to decode under each scheme (default 1000)")
    power.add_argument("--ebno", type=float, default=4.0, metavar="DB",
                       help="channel Eb/N0 in dB (default 4)")
    power.add_argument("--seed", type=int, default=0, help="run seed (default 0)")
    power.add_argument("-o", "--out", default="-", metavar="PATH",
                       help="CSV output path ('-' for stdout)")

    return parser


def _add_io(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-i", "--in", dest="input", default="-", metavar="PATH",
                        help="input frames, one per line ('-' for stdin)")
    parser.add_argument("-o", "--out", dest="output", default="-", metavar="PATH",
                        help="output path ('-' for stdout)")


def _resolve_spec(args: argparse.Namespace) -> CodeSpec:
    try:
        return CodeSpec.from_octal(
            args.generators,
            constraint_length=args.constraint_length,
            frame_stages=args.frame_stages,
        )
    except ValueError as exc:
        raise CliError(f"bad code parameters (-K/--generators/-L): {exc}") from exc


def _read_frames(path: str, expected_len: int, what: str) -> list[list[int]]:
    if path == "-":
        frames = _parse_lines(sys.stdin, expected_len, what)
    else:
        try:
            with open(path, "r", encoding="ascii") as fp:
                frames = _parse_lines(fp, expected_len, what)
        except OSError as exc:
            raise CliError(f"cannot read {path}: {exc.strerror}") from exc
    return frames


def _parse_lines(fp, expected_len: int, what: str) -> list[list[int]]:
    frames: list[list[int]] = []
    for lineno, raw in enumerate(fp, 1):
        line = raw.rstrip("\r\n")
        if not line:
            continue
        bits: list[int] = []
        for ch in line:
            if ch not in "01":
                raise CliError(
                    f"line {lineno}: invalid character {ch!r} "
                    "(frames are lines of '0'/'1')"
                )
            bits.append(ord(ch) - 48)
        if len(bits) != expected_len:
            raise CliError(
                f"line {lineno}: {what} frame must be {expected_len} bits, "
                f"got {len(bits)}"
            )
        frames.append(bits)
    return frames


def _format_frames(frames: Sequence[Sequence[int]]) -> str:
    return "".join("".join(str(b) for b in frame) + "\n" for frame in frames)


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    target = os.path.abspath(path)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(target), prefix=".convfec-")
    try:
        with os.fdopen(fd, "w", encoding="ascii") as fp:
            fp.write(text)
        os.replace(tmp, target)  # no partial output files
    except OSError as exc:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise CliError(f"cannot write {path}: {exc.strerror}") from exc


def _spec_summary(spec: CodeSpec) -> str:
    return (
        f"constraint_length={spec.constraint_length} "
        f"generators_octal={spec.generators_octal} "
        f"frame_stages={spec.frame_stages} "
        f"payload_bits={spec.payload_length} "
        f"tail_bits={spec.tail_length} "
        f"states={spec.num_states}"
    )


def _cmd_encode(args: argparse.Namespace, spec: CodeSpec) -> int:
    trellis = build_trellis(spec)
    payloads = _read_frames(args.input, spec.payload_length, "payload")
    try:
        coded = encode_stream(payloads, trellis)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    _write_text(args.output, _format_frames(coded))
    return 0


def _cmd_decode(args: argparse.Namespace, spec: CodeSpec) -> int:
    trellis = build_trellis(spec)
    frames = _read_frames(args.input, 2 * spec.frame_stages, "coded")
    if args.scheme == "traceback":
        decode, scheme_name = decode_frame, TRACEBACK
    else:
        decode, scheme_name = decode_frame_register_exchange, REGISTER_EXCHANGE
    payloads = []
    survivor = metric = reads = 0
    for frame in frames:
        result = decode(frame, trellis)
        payloads.append(result.decoded[: spec.payload_length])
        survivor += result.activity.survivor_bit_writes
        metric += result.activity.metric_writes
        reads += result.activity.traceback_reads
    _write_text(args.output, _format_frames(payloads))
    if args.activity is not None:
        row = f"{scheme_name},{len(frames)},{survivor},{metric},{reads}"
        _write_text(args.activity, f"{_ACTIVITY_CSV_HEADER}\n{row}\n")
    return 0


def _cmd_oracle_decode(args: argparse.Namespace, spec: CodeSpec) -> int:
    if spec.payload_length > MAX_PAYLOAD_BITS:
        raise CliError(
            f"oracle-decode enumerates 2^{spec.payload_length} payloads; "
            f"the guard is {MAX_PAYLOAD_BITS} payload bits (use 'decode')"
        )
    frames = _read_frames(args.input, 2 * spec.frame_stages, "coded")
    payloads = [list(ml_decode(frame, spec).best_payload) for frame in frames]
    _write_text(args.output, _format_frames(payloads))
    return 0


def _cmd_inject_errors(args: argparse.Namespace, spec: CodeSpec) -> int:
    try:
        positions = {int(p) for p in args.positions.split(",") if p.strip() != ""}
    except ValueError:
        raise CliError(f"--positions must be comma-separated integers, got {args.positions!r}")
    frames = _read_frames(args.input, 2 * spec.frame_stages, "coded")
    out = []
    for i, frame in enumerate(frames):
        try:
            out.append(inject_errors(frame, positions))
        except ValueError as exc:
            raise CliError(f"frame {i}: {exc}") from exc
    _write_text(args.output, _format_frames(out))
    return 0


def _parse_ebno(text: str) -> tuple[float, ...]:
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise CliError(f"--ebno range must be start:step:stop, got {text!r}")
        try:
            start, step, stop = (float(p) for p in parts)
        except ValueError:
            raise CliError(f"--ebno range must be numeric, got {text!r}") from None
        if step <= 0:
            raise CliError("--ebno range step must be positive")
        points = []
        value = start
        while value <= stop + 1e-9:
            points.append(round(value, 9))
            value += step
        return tuple(points)
    try:
        return tuple(float(p) for p in text.split(","))
    except ValueError:
        raise CliError(f"--ebno must be numeric, got {text!r}") from None


def _parse_bit_count(text: str, flag: str) -> int:
    try:
        value = int(float(text))
    except ValueError:
        raise CliError(f"{flag} must be a number, got {text!r}") from None
    if value < 0:
        raise CliError(f"{flag} must be nonnegative")
    return value


def _cmd_ber_sweep(args: argparse.Namespace, spec: CodeSpec) -> int:
    cfg_kwargs = dict(
        ebno_points=_parse_ebno(args.ebno),
        min_info_bits=_parse_bit_count(args.min_bits, "--min-bits"),
        max_info_bits=_parse_bit_count(args.max_bits, "--max-bits"),
        stop_at_errors=args.stop_errors,
        seed=args.seed,
        spec=spec,
    )
    try:
        cfg = SweepConfig(**cfg_kwargs)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    _write_text(args.out, format_ber_csv(ber_sweep(cfg)))
    return 0


def _cmd_power_compare(args: argparse.Namespace, spec: CodeSpec) -> int:
    if args.frames < 0:
        raise CliError("--frames must be nonnegative")
    bits = args.frames * spec.payload_length
    cfg = SweepConfig(
        ebno_points=(args.ebno,),
        min_info_bits=bits,
        max_info_bits=bits,
        stop_at_errors=0,
        seed=args.seed,
        spec=spec,
    )
    _write_text(args.out, format_power_csv(power_compare(cfg)))
    return 0


_COMMANDS = {
    "encode": _cmd_encode,
    "decode": _cmd_decode,
    "oracle-decode": _cmd_oracle_decode,
    "inject-errors": _cmd_inject_errors,
    "ber-sweep": _cmd_ber_sweep,
    "power-compare": _cmd_power_compare,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --version/--help or usage errors
        return int(exc.code or 0)
    try:
        spec = _resolve_spec(args)
        if args.spec_dump:
            print(_spec_summary(spec))
            return 0
        if args.command is None:
            parser.print_usage(sys.stderr)
            print("convfec: error: a command is required", file=sys.stderr)
            return 2
        return _COMMANDS[args.command](args, spec)
    except (CliError, ValueError) as exc:
        print(f"convfec: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
