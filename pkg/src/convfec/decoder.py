"""Hard-decision Viterbi decoder with two survivor-memory organizations.

The add-compare-select recursion is shared; what differs is how survivor
information is stored and read out:

* trace-back: one survivor word per stage (bit ``s`` of stage word ``t`` is
  1 when state ``s``'s survivor at stage ``t`` arrived via its upper-branch
  predecessor).  A stage word is written exactly once per frame, at the
  ring-counter position, which is what makes the scheme cheap in register
  switching activity.  Decoding walks the words backward from state 0.
* register exchange: every state keeps a register with its full decoded
  prefix, all of which are copied forward each stage.  No trace-back pass,
  but far more register writes.

Both produce bit-identical decoded frames and metrics; the activity
counters quantify the difference.  Ties between equal path metrics always
go to the lower-branch predecessor (survivor bit 0), a fixed rule that
keeps every result reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .trellis import Trellis

TRACEBACK = "trace-back"
REGISTER_EXCHANGE = "register-exchange"

# Path metrics are bounded by 2 * frame_stages, so any huge sentinel is safe
# from overflow at frame scale.
_UNREACHABLE = np.int64(1) << np.int64(40)

# Bit-metric lookup: Hamming distance between packed 2-bit symbols.
_SYMBOL_HAMMING = np.array(
    [[bin(a ^ b).count("1") for b in range(4)] for a in range(4)], dtype=np.uint8
)


def _pack_symbol(symbol: Sequence[int]) -> int:
    first, second = symbol
    if first not in (0, 1) or second not in (0, 1):
        raise ValueError(f"expected a 2-bit symbol of 0/1 values, got {tuple(symbol)!r}")
    return (first << 1) | second


def branch_metric(received: Sequence[int], expected: Sequence[int]) -> int:
    """Hamming distance between two 2-bit symbols, in {0, 1, 2}."""
    return int(_SYMBOL_HAMMING[_pack_symbol(received), _pack_symbol(expected)])


@dataclass
class PathMetricBank:
    """Per-state accumulated Hamming metrics with reachability flags.

    ``metric[s]`` is meaningful only where ``reachable[s]`` is set;
    unreachable entries hold a large sentinel.
    """

    metric: np.ndarray
    reachable: np.ndarray

    @classmethod
    def initial(cls, num_states: int) -> "PathMetricBank":
        """Stage-0 bank: the encoder provably starts in state 0."""
        metric = np.full(num_states, _UNREACHABLE, dtype=np.int64)
        metric[0] = 0
        reachable = np.zeros(num_states, dtype=bool)
        reachable[0] = True
        return cls(metric, reachable)


@dataclass
class SurvivorMemory:
    """Stage-addressed survivor storage with a ring-counter write pointer.

    ``stage_words[t]`` is an integer whose bit ``s`` records state ``s``'s
    survivor decision at stage ``t``.  The clock-gating contract: each word
    is written once per frame, only at ``stage_pointer``, and never touched
    again, so total bit writes are exactly ``num_states * frame_stages``.
    """

    num_states: int
    frame_stages: int
    stage_words: list[int | None] = field(repr=False)
    stage_pointer: int = 0
    write_count: int = 0

    @classmethod
    def for_frame(cls, trellis: Trellis) -> "SurvivorMemory":
        spec = trellis.spec
        return cls(spec.num_states, spec.frame_stages, [None] * spec.frame_stages)

    def write_stage(self, word: int) -> None:
        if self.stage_pointer >= self.frame_stages:
            raise ValueError(
                f"survivor memory already holds {self.frame_stages} stage words"
            )
        if self.stage_words[self.stage_pointer] is not None:
            raise ValueError(f"stage word {self.stage_pointer} written twice")
        self.stage_words[self.stage_pointer] = word
        self.stage_pointer += 1
        self.write_count += self.num_states


@dataclass(frozen=True)
class ActivityReport:
    """Switching-activity counters used as a power proxy."""

    scheme: str
    survivor_bit_writes: int
    metric_writes: int
    traceback_reads: int

    def __post_init__(self) -> None:
        for name in ("survivor_bit_writes", "metric_writes", "traceback_reads"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")


class DecodeResult(NamedTuple):
    decoded: list[int]
    final_metric: int
    activity: ActivityReport


def _branch_metrics(rsym: "int | np.ndarray", trellis: Trellis) -> tuple[np.ndarray, np.ndarray]:
    """Bit-metric lookups for every state's lower and upper incoming branch.

    ``rsym`` may be a packed symbol or an array of them; the results gain a
    trailing state axis.
    """
    r = np.asarray(rsym)[..., np.newaxis]
    return _SYMBOL_HAMMING[r, trellis.lower_sym], _SYMBOL_HAMMING[r, trellis.upper_sym]


def _acs_core(
    metric: np.ndarray,
    reachable: np.ndarray,
    bm_lo: np.ndarray,
    bm_hi: np.ndarray,
    trellis: Trellis,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """One add-compare-select stage over all states.

    Returns ``(new_metric, new_reachable, upper_wins)``.
    """
    m_lo = metric[..., trellis.lower_pred] + bm_lo
    m_hi = metric[..., trellis.upper_pred] + bm_hi
    v_lo = reachable[..., trellis.lower_pred]
    v_hi = reachable[..., trellis.upper_pred]
    # The upper branch wins only strictly; ties keep the lower predecessor.
    upper_wins = v_hi & (~v_lo | (m_hi < m_lo))
    new_metric = np.where(upper_wins, m_hi, m_lo)
    new_reachable = v_lo | v_hi
    np.copyto(new_metric, _UNREACHABLE, where=~new_reachable)
    return new_metric, new_reachable, upper_wins


def _pack_word(upper_wins: np.ndarray) -> int:
    packed = np.packbits(upper_wins, bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def acs_step(
    bank: PathMetricBank, received: Sequence[int], trellis: Trellis
) -> tuple[PathMetricBank, int]:
    """Advance the metric bank by one received symbol.

    Returns the new bank plus the survivor word for the consumed stage.
    States whose predecessors are both unreachable stay unreachable and get
    survivor bit 0.
    """
    rsym = _pack_symbol(received)
    bm_lo, bm_hi = _branch_metrics(rsym, trellis)
    metric, reachable, wins = _acs_core(bank.metric, bank.reachable, bm_lo, bm_hi, trellis)
    return PathMetricBank(metric, reachable), _pack_word(wins)


def _frame_symbols(coded: Sequence[int], trellis: Trellis) -> np.ndarray:
    spec = trellis.spec
    raw = np.asarray(coded)
    expect = 2 * spec.frame_stages
    if raw.ndim != 1 or raw.size != expect:
        raise ValueError(f"coded frame must be {expect} bits, got {raw.size}")
    if np.any((raw != 0) & (raw != 1)):
        raise ValueError("coded frame must contain only 0/1 bits")
    arr = raw.astype(np.uint8, copy=False)
    return (arr[0::2] << 1) | arr[1::2]


def _check_terminal(metric: np.ndarray, reachable: np.ndarray, stages: int) -> int:
    if not reachable[0]:
        # cannot happen once frame_stages >= K-1; guards internal breakage
        raise RuntimeError("terminal state 0 unreachable after a full frame")
    # documented bound: every reachable metric is at most 2 bits per stage
    assert int(metric[reachable].max()) <= 2 * stages, "path metric bound breached"
    return int(metric[0])


def decode_frame(coded: Sequence[int], trellis: Trellis) -> DecodeResult:
    """Decode one frame with trace-back survivor storage.

    The zero tail pins the traceback start to state 0; the decoded frame is
    the full ``frame_stages`` bits (payload plus tail) and ``final_metric``
    is the Hamming distance between the input and the re-encoded decision.
    """
    spec = trellis.spec
    rsyms = _frame_symbols(coded, trellis)
    bm_lo, bm_hi = _branch_metrics(rsyms, trellis)
    bank = PathMetricBank.initial(spec.num_states)
    metric, reachable = bank.metric, bank.reachable
    mem = SurvivorMemory.for_frame(trellis)
    for t in range(spec.frame_stages):
        metric, reachable, wins = _acs_core(metric, reachable, bm_lo[t], bm_hi[t], trellis)
        mem.write_stage(_pack_word(wins))
    final_metric = _check_terminal(metric, reachable, spec.frame_stages)
    decoded = output_map(traceback(mem, 0))
    activity = ActivityReport(
        scheme=TRACEBACK,
        survivor_bit_writes=mem.write_count,
        metric_writes=spec.num_states * spec.frame_stages,
        traceback_reads=spec.frame_stages,
    )
    return DecodeResult(decoded, final_metric, activity)


def traceback(mem: SurvivorMemory, start_state: int) -> list[int]:
    """Walk survivor words backward from ``start_state`` at the final stage.

    For current state ``s`` the previous state is ``s >> 1`` plus half the
    state count when the stored survivor bit is 1 (upper branch), else just
    ``s >> 1``.  Returns the full state path, newest first, length
    ``frame_stages + 1``.
    """
    if mem.stage_pointer != mem.frame_stages:
        raise ValueError(
            f"traceback needs a complete frame: {mem.stage_pointer} of "
            f"{mem.frame_stages} stage words written"
        )
    half = mem.num_states >> 1
    path = [start_state]
    state = start_state
    for t in range(mem.frame_stages - 1, -1, -1):
        word = mem.stage_words[t]
        if (word >> state) & 1:
            state = (state >> 1) + half
        else:
            state = state >> 1
        path.append(state)
    return path


def output_map(state_path: Sequence[int]) -> list[int]:
    """Decoded bits from a newest-first state path.

    The input bit that enters a state is that state's LSB (odd state means
    1, even means 0); the parallel-to-serial reordering emits them oldest
    first.
    """
    return [s & 1 for s in state_path[-2::-1]]


def decode_frame_register_exchange(coded: Sequence[int], trellis: Trellis) -> DecodeResult:
    """Decode one frame with register-exchange survivor storage.

    Identical decisions and output as :func:`decode_frame`; the survivor
    activity differs because every state's prefix register is rewritten at
    every stage: ``num_states * (t + 1)`` bit writes at stage ``t``.
    """
    spec = trellis.spec
    rsyms = _frame_symbols(coded, trellis)
    bm_lo, bm_hi = _branch_metrics(rsyms, trellis)
    num_states, stages = spec.num_states, spec.frame_stages
    bank = PathMetricBank.initial(num_states)
    metric, reachable = bank.metric, bank.reachable
    prefixes = np.zeros((num_states, stages), dtype=np.uint8)
    state_lsb = (np.arange(num_states, dtype=np.uint8) & 1).astype(np.uint8)
    writes = 0
    for t in range(stages):
        metric, reachable, wins = _acs_core(metric, reachable, bm_lo[t], bm_hi[t], trellis)
        winner = np.where(wins, trellis.upper_pred, trellis.lower_pred)
        prefixes = prefixes[winner]
        prefixes[:, t] = state_lsb
        writes += num_states * (t + 1)
    final_metric = _check_terminal(metric, reachable, stages)
    decoded = [int(b) for b in prefixes[0]]
    activity = ActivityReport(
        scheme=REGISTER_EXCHANGE,
        survivor_bit_writes=writes,
        metric_writes=num_states * stages,
        traceback_reads=0,
    )
    return DecodeResult(decoded, final_metric, activity)


def decode_frames(coded: np.ndarray, trellis: Trellis) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized trace-back decode of a ``(n, 2 * frame_stages)`` array.

    Returns ``(decoded, final_metrics)`` with shapes ``(n, frame_stages)``
    and ``(n,)``.  Decision-for-decision identical to :func:`decode_frame`;
    this is the Monte-Carlo fast path.
    """
    spec = trellis.spec
    raw = np.asarray(coded)
    if raw.ndim != 2 or raw.shape[1] != 2 * spec.frame_stages:
        raise ValueError(
            f"coded frames must have shape (n, {2 * spec.frame_stages}), got {raw.shape}"
        )
    if np.any((raw != 0) & (raw != 1)):
        raise ValueError("coded frames must contain only 0/1 bits")
    arr = np.ascontiguousarray(raw, dtype=np.uint8)
    n = arr.shape[0]
    num_states, stages = spec.num_states, spec.frame_stages
    rsym = (arr[:, 0::2] << 1) | arr[:, 1::2]

    # Saturating-sentinel recursion: unreachable states simply carry a huge
    # metric.  Survivor bits can then differ from acs_step on states whose
    # predecessors are both unreachable, but a trace from state 0 only ever
    # visits reachable states (a reachable state's winner is reachable), so
    # decoded output and final metrics match acs_step exactly.
    sentinel = np.int32(1) << np.int32(28)
    bm_lo = _SYMBOL_HAMMING[rsym[:, :, np.newaxis], trellis.lower_sym]
    bm_hi = _SYMBOL_HAMMING[rsym[:, :, np.newaxis], trellis.upper_sym]
    metric = np.full((n, num_states), sentinel, dtype=np.int32)
    metric[:, 0] = 0
    lo, hi = trellis.lower_pred, trellis.upper_pred
    wins_stack = np.empty((stages, n, num_states), dtype=bool)
    for t in range(stages):
        m_lo = metric[:, lo] + bm_lo[:, t]
        m_hi = metric[:, hi] + bm_hi[:, t]
        wins = m_hi < m_lo  # ties keep the lower predecessor
        metric = np.where(wins, m_hi, m_lo)
        wins_stack[t] = wins

    final_metrics = metric[:, 0].astype(np.int64)
    if n and int(final_metrics.max()) > 2 * stages:
        raise RuntimeError("terminal state 0 unreachable after a full frame")
    decoded = np.empty((n, stages), dtype=np.uint8)
    states = np.zeros(n, dtype=np.int64)
    rows = np.arange(n)
    half = num_states >> 1
    for t in range(stages - 1, -1, -1):
        decoded[:, t] = (states & 1).astype(np.uint8)
        upper = wins_stack[t][rows, states]
        states = (states >> 1) + np.where(upper, half, 0)
    return decoded, final_metrics


@dataclass(frozen=True)
class StreamedFrame:
    """One decoded frame plus its availability on the symbol clock."""

    index: int
    decoded: list[int]
    final_metric: int
    available_at_clock: int
    latency_clocks: int


def stream_decode(frames: Sequence[Sequence[int]], trellis: Trellis) -> list[StreamedFrame]:
    """Decode a sequence of whole coded frames with the streaming contract.

    Frame ``i`` occupies symbol clocks ``[i*L, (i+1)*L)`` and its decoded
    bits exist only once its last symbol is consumed, so every frame
    reports ``available_at_clock = (i+1)*L`` and a pipeline latency of
    exactly ``L`` symbol clocks.  Metric recursion for frame ``i+1`` may
    overlap frame ``i``'s trace-back, which is why the latency stays at one
    frame.
    """
    spec = trellis.spec
    stages = spec.frame_stages
    frame_list = list(frames)
    out: list[StreamedFrame] = []
    for i, frame in enumerate(frame_list):
        if len(frame) != 2 * stages:
            if i == len(frame_list) - 1 and len(frame) < 2 * stages:
                raise ValueError(
                    f"frame {i}: truncated final frame "
                    f"({len(frame)} of {2 * stages} coded bits)"
                )
            raise ValueError(
                f"frame {i}: expected {2 * stages} coded bits, got {len(frame)}"
            )
        result = decode_frame(frame, trellis)
        out.append(
            StreamedFrame(
                index=i,
                decoded=result.decoded,
                final_metric=result.final_metric,
                available_at_clock=(i + 1) * stages,
                latency_clocks=stages,
            )
        )
    return out
