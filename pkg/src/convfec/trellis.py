"""Code definition and trellis precomputation for rate-1/2 convolutional codes.

Conventions shared by every module in this package:

* A generator is a tap vector ``g[0..K-1]`` where ``g[0]`` applies to the
  newest input bit.  The octal form reads taps MSB-first, so octal 171 at
  K=7 is binary ``1111001`` and means taps ``(1,1,1,1,0,0,1)``.
* The encoder state holds the last K-1 input bits with the newest bit in
  the LSB.  Stepping with input ``b`` maps state ``p`` to
  ``(2*p + b) mod 2^(K-1)``, so the LSB of a state is the input bit that
  produced it.
* A branch emits the 2-bit symbol ``(first generator bit, second generator
  bit)``, packed internally as ``first << 1 | second``.
* Each state ``s`` has exactly two predecessors: ``s >> 1`` (lower branch)
  and ``(s >> 1) + 2^(K-2)`` (upper branch).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class CodeSpec:
    """A rate-1/2 feedforward convolutional code plus frame geometry.

    ``frame_stages`` is the total number of encoder input bits per frame,
    tail included; the tail is always K-1 zero bits, so the payload carries
    ``frame_stages - (K-1)`` bits.
    """

    constraint_length: int
    generators: tuple[tuple[int, ...], tuple[int, ...]]
    frame_stages: int

    def __post_init__(self) -> None:
        k = self.constraint_length
        if not isinstance(k, int) or k < 2:
            raise ValueError(f"constraint length must be an integer >= 2, got {k!r}")
        if len(self.generators) != 2:
            raise ValueError("rate-1/2 code needs exactly two generators")
        for i, taps in enumerate(self.generators):
            if len(taps) != k:
                raise ValueError(
                    f"generator {i} has {len(taps)} taps, constraint length {k} requires {k}"
                )
            if any(t not in (0, 1) for t in taps):
                raise ValueError(f"generator {i} taps must be 0/1, got {taps!r}")
        if self.frame_stages < k:
            raise ValueError(
                f"frame_stages must be >= constraint length ({k}), got {self.frame_stages}"
            )

    @property
    def tail_length(self) -> int:
        return self.constraint_length - 1

    @property
    def payload_length(self) -> int:
        return self.frame_stages - self.tail_length

    @property
    def num_states(self) -> int:
        return 1 << (self.constraint_length - 1)

    @classmethod
    def from_octal(
        cls,
        generators: str = "171,133",
        constraint_length: int = 7,
        frame_stages: int = 40,
    ) -> "CodeSpec":
        """Build a spec from comma-separated octal generators, e.g. ``"171,133"``."""
        parts = [p.strip() for p in generators.split(",")]
        if len(parts) != 2:
            raise ValueError(f"expected two comma-separated octal generators, got {generators!r}")
        taps = []
        for part in parts:
            try:
                value = int(part, 8)
            except ValueError:
                raise ValueError(f"invalid octal generator {part!r}") from None
            if value <= 0 or value.bit_length() > constraint_length:
                raise ValueError(
                    f"generator {part!r} does not fit constraint length {constraint_length}"
                )
            taps.append(
                tuple((value >> i) & 1 for i in range(constraint_length - 1, -1, -1))
            )
        return cls(constraint_length, (taps[0], taps[1]), frame_stages)

    @property
    def generators_octal(self) -> str:
        """The generators rendered back as comma-separated octal strings."""
        values = []
        for taps in self.generators:
            v = 0
            for t in taps:
                v = (v << 1) | t
            values.append(format(v, "o"))
        return ",".join(values)


#: The shipped default: the 802.16 standard K=7 pair (octal 171/133), 40-stage
#: frames of 34 payload bits plus a 6-bit zero tail.
DEFAULT_SPEC = CodeSpec.from_octal("171,133", constraint_length=7, frame_stages=40)


class Trellis:
    """Precomputed transitions, branch symbols and butterfly predecessors.

    Instances are immutable after :func:`build_trellis` and safe to share
    across threads.  The flat numpy tables are the vectorized form consumed
    by the encoder and decoder hot paths:

    * ``next_state_table[2*p + b]`` is the successor of state ``p`` on input
      ``b`` (int64, length ``2 * num_states``).
    * ``symbol_table[2*p + b]`` is the packed branch symbol (uint8).
    * ``lower_pred[s]`` / ``upper_pred[s]`` index the two predecessors of
      ``s``; ``lower_sym[s]`` / ``upper_sym[s]`` are the packed symbols on
      those incoming branches.
    """

    __slots__ = (
        "spec",
        "num_states",
        "next_state_table",
        "symbol_table",
        "lower_pred",
        "upper_pred",
        "lower_sym",
        "upper_sym",
    )

    def __init__(self, spec: CodeSpec):
        self.spec = spec
        s = spec.num_states
        self.num_states = s

        next_table = np.empty(2 * s, dtype=np.int64)
        sym_table = np.empty(2 * s, dtype=np.uint8)
        for p in range(s):
            for b in (0, 1):
                next_table[2 * p + b] = (2 * p + b) % s
                sym_table[2 * p + b] = _branch_bits(spec, p, b)

        half = s // 2
        succ = np.arange(s, dtype=np.int64)
        lower = succ >> 1
        upper = lower + half
        self.next_state_table = next_table
        self.symbol_table = sym_table
        self.lower_pred = lower
        self.upper_pred = upper
        self.lower_sym = sym_table[2 * lower + (succ & 1)].astype(np.uint8)
        self.upper_sym = sym_table[2 * upper + (succ & 1)].astype(np.uint8)
        for arr in (
            self.next_state_table,
            self.symbol_table,
            self.lower_pred,
            self.upper_pred,
            self.lower_sym,
            self.upper_sym,
        ):
            arr.setflags(write=False)

    def next_state(self, state: int, bit: int) -> int:
        return int(self.next_state_table[2 * state + bit])

    def branch_symbol(self, state: int, bit: int) -> tuple[int, int]:
        """Output symbol on the branch from ``state`` with input ``bit``."""
        packed = int(self.symbol_table[2 * state + bit])
        return (packed >> 1, packed & 1)

    def predecessors(self, state: int) -> tuple[int, int]:
        """``(lower, upper)`` predecessor pair of ``state``."""
        return (int(self.lower_pred[state]), int(self.upper_pred[state]))


def _branch_bits(spec: CodeSpec, state: int, bit: int) -> int:
    # Register contents newest-first: input bit, then the K-1 state bits.
    full = (state << 1) | bit
    packed = 0
    for taps in spec.generators:
        acc = 0
        for j, tap in enumerate(taps):
            if tap:
                acc ^= (full >> j) & 1
        packed = (packed << 1) | acc
    return packed


def build_trellis(spec: CodeSpec) -> Trellis:
    """Precompute the full trellis for ``spec``.

    The structure is one butterfly pattern tiled over all states: states
    ``j`` and ``j + 2^(K-2)`` feed the successor pair ``{2j, 2j+1}``.
    """
    if not isinstance(spec, CodeSpec):
        raise TypeError(f"expected CodeSpec, got {type(spec).__name__}")
    return Trellis(spec)


def free_distance(spec: CodeSpec, weight_cap: int) -> int | None:
    """Minimum Hamming weight over nonzero paths that leave and re-merge with
    state 0, found by best-first search over the trellis.

    Returns ``None`` when every such path weighs more than ``weight_cap``
    (a value, not an error: the cap bounds the search).
    """
    if weight_cap < 1:
        raise ValueError(f"weight_cap must be >= 1, got {weight_cap}")
    trellis = build_trellis(spec)
    next_table = trellis.next_state_table
    weights = [int(v).bit_count() for v in trellis.symbol_table]

    # Force the diverging branch (input 1 from state 0); expand until the
    # first re-merge with state 0.  State 0 is terminal, never expanded.
    start = int(next_table[1])
    start_w = weights[1]
    best: dict[int, int] = {start: start_w}
    heap: list[tuple[int, int]] = []
    if start_w <= weight_cap:
        heap.append((start_w, start))
    while heap:
        w, state = heapq.heappop(heap)
        if state == 0:
            return w
        if w > best.get(state, weight_cap + 1):
            continue
        for b in (0, 1):
            idx = 2 * state + b
            nw = w + weights[idx]
            if nw > weight_cap:
                continue
            ns = int(next_table[idx])
            if nw < best.get(ns, weight_cap + 1):
                best[ns] = nw
                heapq.heappush(heap, (nw, ns))
    return None
