"""Character map, seeded codeword sampling, and the sampled signal matrix.

The additive character sends a symbol x in F_q to exp(2*pi*i*x/q); applied
component-wise it turns codewords into unit-modulus rows.  Binary rows are
stored as real +-1 so all downstream spectral work stays in real
arithmetic when q = 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .codes import LinearCode
from .errors import ParameterError
from .rng import SeedContract, XorShift64Star

MODE_DISTINCT = "distinct"
MODE_WITH_REPLACEMENT = "with_replacement"


def char_map(word, q: int) -> np.ndarray:
    """Component-wise additive character; for q = 2 this is 0 -> +1, 1 -> -1."""
    w = np.asarray(word, dtype=np.int64) % q
    if q == 2:
        return 1.0 - 2.0 * w
    return np.exp(2j * np.pi * w / q)


@dataclass(frozen=True)
class SignalMatrix:
    """p x n matrix of character-mapped sampled codewords."""

    entries: np.ndarray
    mode: str
    seed: SeedContract
    q: int
    code_label: str = ""

    def __post_init__(self) -> None:
        e = np.asarray(self.entries)
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def p(self) -> int:
        return self.entries.shape[0]

    @property
    def n(self) -> int:
        return self.entries.shape[1]


def index_to_message(index: int, q: int, k: int) -> np.ndarray:
    """Base-q digits of a message index, least significant first."""
    digits = np.empty(k, dtype=np.int64)
    for i in range(k):
        index, digits[i] = divmod(index, q)
    return digits


def sample_message_indices(
    code: LinearCode, p: int, mode: str, rng: XorShift64Star
) -> list[int]:
    """Uniform message indices; distinct mode rejects repeats.

    Rejection terminates fast for p <= N/2; beyond that the whole message
    space is enumerated and partially Fisher-Yates shuffled, which also
    covers p = N.
    """
    if p < 1:
        raise ParameterError(f"need p >= 1, got {p}")
    big_n = code.N
    if mode == MODE_WITH_REPLACEMENT:
        return [rng.below(big_n) for _ in range(p)]
    if mode != MODE_DISTINCT:
        raise ParameterError(f"unknown sampling mode: {mode!r}")
    if p > big_n:
        raise ParameterError(f"cannot draw {p} distinct codewords from {big_n}")
    if 2 * p > big_n:
        pool = list(range(big_n))
        for i in range(p):
            j = i + rng.below(big_n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:p]
    seen: set[int] = set()
    out: list[int] = []
    while len(out) < p:
        idx = rng.below(big_n)
        if idx not in seen:
            seen.add(idx)
            out.append(idx)
    return out


def sample_codewords(
    code: LinearCode, p: int, mode: str, seed: int, stream_index: int = 0
) -> SignalMatrix:
    """Draw p codewords (per `mode`) and return their character-map rows."""
    rng = XorShift64Star(seed, stream_index)
    indices = sample_message_indices(code, p, mode, rng)
    messages = np.stack([index_to_message(i, code.q, code.k) for i in indices])
    words = messages @ code.generator % code.q
    return SignalMatrix(
        entries=char_map(words, code.q),
        mode=mode,
        seed=SeedContract(seed, stream_index),
        q=code.q,
        code_label=code.label,
    )


def dump_csv(sig: SignalMatrix, path: str | Path) -> None:
    """Matrix dump: one row per line, entries as "re" or "re+imj" decimals."""
    lines = []
    complex_entries = np.iscomplexobj(sig.entries)
    for row in sig.entries:
        if complex_entries:
            cells = [f"{v.real:.17g}{v.imag:+.17g}j" for v in row]
        else:
            cells = [f"{v:.17g}" for v in row]
        lines.append(",".join(cells))
    Path(path).write_text("\n".join(lines) + "\n")
