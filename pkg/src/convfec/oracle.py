"""Exhaustive maximum-likelihood decoding for small code instances.

Plain enumeration of every payload, kept deliberately simple so it can act
as ground truth for the trellis decoder.  Guarded to 24 payload bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .encoder import encode_frames
from .trellis import CodeSpec, build_trellis

MAX_PAYLOAD_BITS = 24

# full codebooks are cached only while they stay small
_CACHE_PAYLOAD_BITS = 16
_codebooks: dict[CodeSpec, np.ndarray] = {}


@dataclass(frozen=True)
class MlResult:
    """Outcome of exhaustive minimum-distance decoding.

    ``best_payload`` is the lexicographically smallest minimizer (payload
    bit 0 most significant), so ties resolve deterministically and
    ``minimizer_unique`` tells whether the tie rule mattered at all.
    """

    best_payload: tuple[int, ...]
    best_distance: int
    minimizer_unique: bool
    num_minimizers: int


def _payload_matrix(spec: CodeSpec, start: int, count: int) -> np.ndarray:
    shifts = np.arange(spec.payload_length - 1, -1, -1, dtype=np.uint32)
    indices = np.arange(start, start + count, dtype=np.uint32)
    return ((indices[:, np.newaxis] >> shifts) & 1).astype(np.uint8)


def _codebook(spec: CodeSpec) -> np.ndarray:
    book = _codebooks.get(spec)
    if book is None:
        trellis = build_trellis(spec)
        book = encode_frames(_payload_matrix(spec, 0, 1 << spec.payload_length), trellis)
        book.setflags(write=False)
        _codebooks[spec] = book
    return book


def ml_decode(received: Sequence[int], spec: CodeSpec) -> MlResult:
    """Decode by comparing the received word against every codeword.

    Enumerates all ``2^payload_length`` payloads and returns the codeword at
    minimum Hamming distance.  Refuses payloads beyond
    :data:`MAX_PAYLOAD_BITS` since the enumeration doubles per bit.
    """
    p = spec.payload_length
    if p > MAX_PAYLOAD_BITS:
        raise ValueError(
            f"payload space 2^{p} exceeds the exhaustive-search guard "
            f"of {MAX_PAYLOAD_BITS} bits"
        )
    raw = np.asarray(received)
    if raw.ndim != 1 or raw.size != 2 * spec.frame_stages:
        raise ValueError(
            f"received word must be {2 * spec.frame_stages} bits, got {raw.size}"
        )
    if np.any((raw != 0) & (raw != 1)):
        raise ValueError("received word must contain only 0/1 bits")
    arr = raw.astype(np.uint8, copy=False)

    if p <= _CACHE_PAYLOAD_BITS:
        distances = np.count_nonzero(_codebook(spec) != arr, axis=1)
        best = int(distances.min())
        best_index = int(distances.argmin())  # first minimum = lexicographic winner
        count = int(np.count_nonzero(distances == best))
    else:
        trellis = build_trellis(spec)
        chunk = 1 << _CACHE_PAYLOAD_BITS
        best, best_index, count = 2 * spec.frame_stages + 1, -1, 0
        for start in range(0, 1 << p, chunk):
            block = encode_frames(_payload_matrix(spec, start, chunk), trellis)
            distances = np.count_nonzero(block != arr, axis=1)
            block_best = int(distances.min())
            if block_best < best:
                best = block_best
                best_index = start + int(distances.argmin())
                count = 0
            if block_best == best:
                count += int(np.count_nonzero(distances == best))

    payload = tuple((best_index >> (p - 1 - j)) & 1 for j in range(p))
    return MlResult(payload, best, count == 1, count)
