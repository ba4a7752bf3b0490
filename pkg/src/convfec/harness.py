"""Monte-Carlo BER harness and survivor-activity comparison.

Sweeps run both schemes per Eb/N0 point: uncoded BPSK as the reference
curve and the convolutionally coded chain (encode, BPSK, AWGN, 1-bit
quantize, Viterbi).  Results serialize to CSV; plotting stays external.

Reproducibility: each (point, scheme) cell draws from its own generator
spawned from the sweep seed, batches have a fixed size, and the stopping
rule is checked on batch boundaries only, so identical configs give
byte-identical CSV output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import IO, Iterable

import numpy as np

from .channel import NoiseConfig, add_awgn, bpsk_modulate, hard_quantize
from .decoder import (
    REGISTER_EXCHANGE,
    TRACEBACK,
    ActivityReport,
    decode_frame,
    decode_frame_register_exchange,
    decode_frames,
)
from .encoder import encode_frames
from .trellis import DEFAULT_SPEC, CodeSpec, build_trellis

UNCODED_BPSK = "uncoded-bpsk"
CODED_VITERBI = "coded-viterbi"

BER_CSV_HEADER = "scheme,ebno_db,info_bits,bit_errors,frame_errors,ber,seed"
POWER_CSV_HEADER = (
    "scheme,frames,survivor_bit_writes,metric_writes,traceback_reads,survivor_write_ratio"
)

# frames per Monte-Carlo batch; fixed so stopping decisions are reproducible
_BATCH_FRAMES = 2048


@dataclass(frozen=True)
class BerPoint:
    scheme: str
    ebno_db: float
    info_bits: int
    bit_errors: int
    frame_errors: int
    ber: float
    seed: int


@dataclass(frozen=True)
class SweepConfig:
    """One sweep: Eb/N0 points, a stopping rule, and the master seed.

    Each point accumulates at least ``min_info_bits`` information bits and
    stops at ``stop_at_errors`` bit errors or ``max_info_bits``, whichever
    comes first.  ``noiseless`` skips the AWGN stage entirely (debug and
    sanity runs).
    """

    ebno_points: tuple[float, ...]
    min_info_bits: int
    max_info_bits: int
    stop_at_errors: int
    seed: int
    spec: CodeSpec = DEFAULT_SPEC
    noiseless: bool = False

    def __post_init__(self) -> None:
        if self.min_info_bits < 0:
            raise ValueError("min_info_bits must be nonnegative")
        if self.min_info_bits > self.max_info_bits:
            raise ValueError("min_info_bits must not exceed max_info_bits")
        if self.stop_at_errors < 0:
            raise ValueError("stop_at_errors must be nonnegative")


def theoretical_uncoded_ber(ebno_db: float) -> float:
    """Uncoded coherent BPSK error rate, Q(sqrt(2 * Eb/N0))."""
    if not math.isfinite(ebno_db):
        raise ValueError(f"ebno_db must be finite, got {ebno_db!r}")
    # Q(sqrt(2x)) == erfc(sqrt(x)) / 2
    return 0.5 * math.erfc(math.sqrt(10.0 ** (ebno_db / 10.0)))


def _stop(cfg: SweepConfig, info_bits: int, bit_errors: int) -> bool:
    if info_bits < cfg.min_info_bits:
        return False
    return bit_errors >= cfg.stop_at_errors or info_bits >= cfg.max_info_bits


def _run_uncoded(cfg: SweepConfig, ebno_db: float, rng: np.random.Generator) -> BerPoint:
    # framed in payload-sized blocks so frame_errors is comparable to the
    # coded scheme
    block = cfg.spec.payload_length
    noise = NoiseConfig(ebno_db, code_rate=1.0, seed=cfg.seed)
    info_bits = bit_errors = frame_errors = 0
    while True:
        remaining = -(-(cfg.max_info_bits - info_bits) // block)
        n = max(1, min(_BATCH_FRAMES, remaining))
        bits = rng.integers(0, 2, size=(n, block), dtype=np.uint8)
        symbols = bpsk_modulate(bits.ravel())
        if not cfg.noiseless:
            symbols = add_awgn(symbols, noise, rng)
        decided = hard_quantize(symbols).reshape(n, block)
        wrong = decided != bits
        info_bits += n * block
        bit_errors += int(np.count_nonzero(wrong))
        frame_errors += int(np.count_nonzero(wrong.any(axis=1)))
        if _stop(cfg, info_bits, bit_errors):
            break
    return BerPoint(
        UNCODED_BPSK, ebno_db, info_bits, bit_errors, frame_errors,
        bit_errors / info_bits, cfg.seed,
    )


def _run_coded(
    cfg: SweepConfig, trellis, ebno_db: float, rng: np.random.Generator
) -> BerPoint:
    spec = trellis.spec
    payload_len = spec.payload_length
    noise = NoiseConfig(ebno_db, code_rate=0.5, seed=cfg.seed)
    info_bits = bit_errors = frame_errors = 0
    while True:
        remaining = -(-(cfg.max_info_bits - info_bits) // payload_len)
        n = max(1, min(_BATCH_FRAMES, remaining))
        payloads = rng.integers(0, 2, size=(n, payload_len), dtype=np.uint8)
        coded = encode_frames(payloads, trellis)
        symbols = bpsk_modulate(coded.ravel())
        if not cfg.noiseless:
            symbols = add_awgn(symbols, noise, rng)
        received = hard_quantize(symbols).reshape(coded.shape)
        decoded, _ = decode_frames(received, trellis)
        # tail bits never count toward BER
        wrong = decoded[:, :payload_len] != payloads
        info_bits += n * payload_len
        bit_errors += int(np.count_nonzero(wrong))
        frame_errors += int(np.count_nonzero(wrong.any(axis=1)))
        if _stop(cfg, info_bits, bit_errors):
            break
    return BerPoint(
        CODED_VITERBI, ebno_db, info_bits, bit_errors, frame_errors,
        bit_errors / info_bits, cfg.seed,
    )


def ber_sweep(cfg: SweepConfig) -> list[BerPoint]:
    """Run the sweep; two :class:`BerPoint` rows per Eb/N0 value."""
    trellis = build_trellis(cfg.spec)
    children = np.random.SeedSequence(cfg.seed).spawn(2 * len(cfg.ebno_points))
    points: list[BerPoint] = []
    for i, ebno_db in enumerate(cfg.ebno_points):
        points.append(_run_uncoded(cfg, ebno_db, np.random.default_rng(children[2 * i])))
        points.append(
            _run_coded(cfg, trellis, ebno_db, np.random.default_rng(children[2 * i + 1]))
        )
    return points


@dataclass(frozen=True)
class PowerCompareResult:
    """Aggregated activity for the same frames decoded under both schemes.

    ``survivor_write_ratio`` is register-exchange writes over trace-back
    writes, exactly ``(frame_stages + 1) / 2``; ``None`` when no frames ran.
    """

    traceback: ActivityReport
    register_exchange: ActivityReport
    frames: int
    survivor_write_ratio: float | None


def power_compare(cfg: SweepConfig) -> PowerCompareResult:
    """Decode one noisy frame set under both survivor schemes and compare.

    The frame count is ``max_info_bits // payload_length`` and the channel
    runs at ``ebno_points[0]``.  Any mismatch between the two schemes'
    outputs is an invariant breach and raises.
    """
    spec = cfg.spec
    trellis = build_trellis(spec)
    payload_len = spec.payload_length
    frames = cfg.max_info_bits // payload_len
    if frames == 0:
        return PowerCompareResult(
            traceback=ActivityReport(TRACEBACK, 0, 0, 0),
            register_exchange=ActivityReport(REGISTER_EXCHANGE, 0, 0, 0),
            frames=0,
            survivor_write_ratio=None,
        )
    rng = np.random.default_rng(cfg.seed)
    noise = NoiseConfig(cfg.ebno_points[0], code_rate=0.5, seed=cfg.seed)

    tb_survivor = tb_metric = tb_reads = 0
    re_survivor = re_metric = re_reads = 0
    done = 0
    while done < frames:
        n = min(_BATCH_FRAMES, frames - done)
        payloads = rng.integers(0, 2, size=(n, payload_len), dtype=np.uint8)
        coded = encode_frames(payloads, trellis)
        symbols = bpsk_modulate(coded.ravel())
        if not cfg.noiseless:
            symbols = add_awgn(symbols, noise, rng)
        received = hard_quantize(symbols).reshape(coded.shape)
        for row in received:
            tb = decode_frame(row, trellis)
            re = decode_frame_register_exchange(row, trellis)
            if tb.decoded != re.decoded or tb.final_metric != re.final_metric:
                raise RuntimeError(
                    f"survivor schemes disagree on frame {done}: "
                    f"{tb.final_metric} vs {re.final_metric}"
                )
            tb_survivor += tb.activity.survivor_bit_writes
            tb_metric += tb.activity.metric_writes
            tb_reads += tb.activity.traceback_reads
            re_survivor += re.activity.survivor_bit_writes
            re_metric += re.activity.metric_writes
            re_reads += re.activity.traceback_reads
            done += 1

    ratio = re_survivor / tb_survivor
    return PowerCompareResult(
        traceback=ActivityReport(TRACEBACK, tb_survivor, tb_metric, tb_reads),
        register_exchange=ActivityReport(REGISTER_EXCHANGE, re_survivor, re_metric, re_reads),
        frames=frames,
        survivor_write_ratio=ratio,
    )


def format_ber_csv(points: Iterable[BerPoint]) -> str:
    lines = [BER_CSV_HEADER]
    for p in points:
        lines.append(
            f"{p.scheme},{p.ebno_db!r},{p.info_bits},{p.bit_errors},"
            f"{p.frame_errors},{p.ber!r},{p.seed}"
        )
    return "\n".join(lines) + "\n"


def format_power_csv(result: PowerCompareResult) -> str:
    ratio = "" if result.survivor_write_ratio is None else repr(result.survivor_write_ratio)
    lines = [POWER_CSV_HEADER]
    for report in (result.traceback, result.register_exchange):
        lines.append(
            f"{report.scheme},{result.frames},{report.survivor_bit_writes},"
            f"{report.metric_writes},{report.traceback_reads},{ratio}"
        )
    return "\n".join(lines) + "\n"


def write_ber_csv(points: Iterable[BerPoint], fp: IO[str]) -> None:
    fp.write(format_ber_csv(points))


def write_power_csv(result: PowerCompareResult, fp: IO[str]) -> None:
    fp.write(format_power_csv(result))
