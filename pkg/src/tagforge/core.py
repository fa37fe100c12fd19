"""Reference evolution of first-element tag systems.

These are the slow, obviously-correct steppers.  The packed fast engine in
:mod:`tagforge.fast` must agree with them bit for bit; tests enforce that.
"""

from __future__ import annotations

from typing import Iterator, Optional

from .errors import MalformedStateError
from .rules import POST, TagRule
from .states import CompressedState, compress

# One compressed step of the 00/1101 system, keyed by (phase, first word
# symbol): new phase and the symbols appended to the rest of the word.
COMPRESSED_RULES: dict[tuple[int, int], tuple[int, tuple[int, ...]]] = {
    (0, 0): (2, (0,)),
    (1, 0): (0, ()),
    (2, 0): (1, (0,)),
    (0, 1): (1, (1, 1)),
    (1, 1): (2, (0,)),
    (2, 1): (0, (1,)),
}


def step_uncompressed(rule: TagRule, symbols: tuple[int, ...]) -> Optional[tuple[int, ...]]:
    """One tag step; returns None when the string is too short to step."""
    if len(symbols) < rule.deletion:
        return None
    head = symbols[0]
    if not 0 <= head < rule.alphabet_size:
        raise MalformedStateError(f"symbol {head} outside alphabet of size {rule.alphabet_size}")
    return symbols[rule.deletion:] + rule.appends[head]


def evolve_uncompressed(rule: TagRule, symbols: tuple[int, ...],
                        max_steps: int) -> Iterator[tuple[int, ...]]:
    """Yield the initial string and up to ``max_steps`` successors."""
    yield symbols
    for _ in range(max_steps):
        nxt = step_uncompressed(rule, symbols)
        if nxt is None:
            return
        symbols = nxt
        yield symbols


def step_compressed(state: CompressedState) -> Optional[CompressedState]:
    """One 00/1101 step in compressed form; None when already halted."""
    if state.is_halted:
        return None
    phase, appended = COMPRESSED_RULES[(state.phase, state.word[0])]
    return CompressedState(phase, state.word[1:] + appended)


def evolve_compressed(state: CompressedState, max_steps: int) -> Iterator[CompressedState]:
    yield state
    for _ in range(max_steps):
        nxt = step_compressed(state)
        if nxt is None:
            return
        state = nxt
        yield state


def trajectory_compressed(rule: TagRule, symbols: tuple[int, ...],
                          max_steps: int) -> list[CompressedState]:
    """Compressed view of an uncompressed run (used for agreement checks)."""
    return [compress(s) for s in evolve_uncompressed(rule, symbols, max_steps)]


def post_step_length_change(leading_symbol: int) -> int:
    """Uncompressed length delta of one 00/1101 step: +1 on a 1, -1 on a 0."""
    return 1 if leading_symbol else -1


__all__ = [
    "COMPRESSED_RULES",
    "POST",
    "evolve_compressed",
    "evolve_uncompressed",
    "post_step_length_change",
    "step_compressed",
    "step_uncompressed",
    "trajectory_compressed",
]
