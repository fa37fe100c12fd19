"""Packed fast evolution for the 00/1101 system.

The word travels in a Python integer used as a bit deque: bit ``i`` is word
symbol ``i``, the head is bit 0, appends go at bit ``length``.  A 256-entry
table per phase applies 8 compressed steps at once by consuming the leading
byte; a composed 65536-entry table applies 16.  Macro steps only run while
the word is long enough that no halt can occur inside them (halting needs
an uncompressed length below 3), so agreement with the single-step rules is
exact, including the step count.
"""

from __future__ import annotations

import time

from .core import COMPRESSED_RULES
from .states import CompressedState, packed_to_state, state_to_packed

_PHASE_DEFICIT = (0, 2, 1)

# Minimum word lengths at which an 8- / 16-step macro cannot halt mid-way.
_SAFE8 = 10
_SAFE16 = 18


def _block_effect(phase: int, bits: int, count: int) -> tuple[int, int, int]:
    """Net effect of ``count`` steps consuming ``bits`` (LSB first)."""
    appended = 0
    acount = 0
    for i in range(count):
        phase, block = COMPRESSED_RULES[(phase, (bits >> i) & 1)]
        for sym in block:
            appended |= sym << acount
            acount += 1
    return appended, acount, phase


def _block_maxrise(bits: int, count: int) -> int:
    """Peak prefix sum of per-step uncompressed length changes (+1 per 1, -1 per 0)."""
    best = -count - 1
    cur = 0
    for i in range(count):
        cur += 1 if (bits >> i) & 1 else -1
        if cur > best:
            best = cur
    return best


def _build_tables():
    t8 = tuple(
        tuple(_block_effect(p, b, 8) for b in range(256)) for p in (0, 1, 2)
    )
    rise8 = tuple(_block_maxrise(b, 8) for b in range(256))
    net8 = tuple(2 * bin(b).count("1") - 8 for b in range(256))

    t16 = []
    for p in (0, 1, 2):
        entries: list[tuple[int, int, int] | None] = [None] * 65536
        t8p = t8[p]
        for low in range(256):
            v0, c0, p0 = t8p[low]
            t8mid = t8[p0]
            for high in range(256):
                v1, c1, p1 = t8mid[high]
                entries[(high << 8) | low] = (v0 | (v1 << c0), c0 + c1, p1)
        t16.append(tuple(entries))
    rise16 = [0] * 65536
    for low in range(256):
        r0 = rise8[low]
        n0 = net8[low]
        for high in range(256):
            r = n0 + rise8[high]
            rise16[(high << 8) | low] = r0 if r0 > r else r
    return t8, t16, rise8, tuple(rise16)


_TABLE8, _TABLE16, _RISE8, _RISE16 = _build_tables()


def step_packed(p: int, w: int, L: int) -> tuple[int, int, int] | None:
    """Single compressed step on a packed triple; None when halted."""
    if L == 0 or (L == 1 and p != 0):
        return None
    s = w & 1
    w >>= 1
    L -= 1
    if s:
        if p == 0:
            w |= 3 << L
            return 1, w, L + 2
        if p == 1:
            return 2, w, L + 1
        return 0, w | (1 << L), L + 1
    if p == 0:
        return 2, w, L + 1
    if p == 1:
        return 0, w, L
    return 1, w, L + 1


def advance(p: int, w: int, L: int, nsteps: int) -> tuple[int, int, int, int, bool]:
    """Apply exactly ``nsteps`` steps or stop at a halt.

    Returns (phase, word, length, steps_done, halted).
    """
    t16 = _TABLE16
    t8 = _TABLE8
    rem = nsteps
    while rem:
        if rem >= 16 and L >= _SAFE16:
            while rem >= 16 and L >= _SAFE16:
                av, ac, p = t16[p][w & 0xFFFF]
                w = (w >> 16) | (av << (L - 16))
                L += ac - 16
                rem -= 16
        elif rem >= 8 and L >= _SAFE8:
            av, ac, p = t8[p][w & 0xFF]
            w = (w >> 8) | (av << (L - 8))
            L += ac - 8
            rem -= 8
        else:
            if L == 0 or (L == 1 and p != 0):
                return p, w, L, nsteps - rem, True
            s = w & 1
            w >>= 1
            L -= 1
            if s:
                if p == 0:
                    w |= 3 << L
                    L += 2
                    p = 1
                elif p == 1:
                    L += 1
                    p = 2
                else:
                    w |= 1 << L
                    L += 1
                    p = 0
            else:
                if p == 0:
                    L += 1
                    p = 2
                elif p == 1:
                    p = 0
                else:
                    L += 1
                    p = 1
            rem -= 1
    halted = L == 0 or (L == 1 and p != 0)
    return p, w, L, nsteps, halted


def advance_tracked(p: int, w: int, L: int, nsteps: int,
                    max_n: int) -> tuple[int, int, int, int, bool, int]:
    """Like :func:`advance` but also tracks the peak uncompressed length.

    ``max_n`` is the running peak (the caller accounts for the start state);
    the returned peak is exact at single-step granularity.
    """
    t16 = _TABLE16
    t8 = _TABLE8
    r16 = _RISE16
    r8 = _RISE8
    deficit = _PHASE_DEFICIT
    rem = nsteps
    while rem:
        if rem >= 16 and L >= _SAFE16:
            while rem >= 16 and L >= _SAFE16:
                b = w & 0xFFFF
                peak = 3 * L - deficit[p] + r16[b]
                if peak > max_n:
                    max_n = peak
                av, ac, p = t16[p][b]
                w = (w >> 16) | (av << (L - 16))
                L += ac - 16
                rem -= 16
        elif rem >= 8 and L >= _SAFE8:
            b = w & 0xFF
            peak = 3 * L - deficit[p] + r8[b]
            if peak > max_n:
                max_n = peak
            av, ac, p = t8[p][b]
            w = (w >> 8) | (av << (L - 8))
            L += ac - 8
            rem -= 8
        else:
            if L == 0 or (L == 1 and p != 0):
                return p, w, L, nsteps - rem, True, max_n
            nxt = step_packed(p, w, L)
            assert nxt is not None
            p, w, L = nxt
            n = 3 * L - deficit[p]
            if n > max_n:
                max_n = n
            rem -= 1
    halted = L == 0 or (L == 1 and p != 0)
    return p, w, L, nsteps, halted, max_n


def evolve_fast(state: CompressedState, max_steps: int) -> tuple[CompressedState, int]:
    """Run up to ``max_steps`` compressed steps via the packed tables.

    Returns (final state, steps taken); fewer steps than asked means the
    run halted (``final.is_halted``).  Bit-exact with iterated
    :func:`tagforge.core.step_compressed`.
    """
    if max_steps < 0:
        raise ValueError("max_steps must be >= 0")
    p, w, L = state_to_packed(state)
    p, w, L, done, _halted = advance(p, w, L, max_steps)
    return packed_to_state(p, w, L), done


def iter_lengths(state: CompressedState, max_steps: int):
    """Yield uncompressed lengths at steps 0, 1, ... until halt or cap.

    Lengths inside macro steps are reconstructed from the consumed bits
    (+1 per consumed 1, -1 per consumed 0), so the stream is exact.
    """
    p, w, L = state_to_packed(state)
    n = max(3 * L - _PHASE_DEFICIT[p], 0)
    yield n
    rem = max_steps
    while rem:
        if rem >= 16 and L >= _SAFE16:
            bits = w & 0xFFFF
            av, ac, p = _TABLE16[p][bits]
            w = (w >> 16) | (av << (L - 16))
            L += ac - 16
            rem -= 16
            for i in range(16):
                n += 1 if (bits >> i) & 1 else -1
                yield n
        else:
            nxt = step_packed(p, w, L)
            if nxt is None:
                return
            n += 1 if w & 1 else -1
            p, w, L = nxt
            rem -= 1
            yield n


def benchmark(state: CompressedState, nsteps: int) -> tuple[float, int]:
    """Time a straight-line run; returns (steps per second, steps done)."""
    p, w, L = state_to_packed(state)
    start = time.perf_counter()
    _, _, _, done, _ = advance(p, w, L, nsteps)
    elapsed = time.perf_counter() - start
    return (done / elapsed if elapsed > 0 else float("inf")), done


# --- packed uncompressed engine --------------------------------------------
#
# Halting-step and transient semantics live on the full uncompressed string
# (don't-care symbols keep two states distinct until the appends overwrite
# them), so the halting detector evolves the uncompressed string directly:
# bit i of the packed integer is string position i, each step consumes 3
# bits and appends 00 or 1101.  A 4096-entry table applies 4 steps at once
# (12 consumed bits); two lookups give 8.  With 12 or more bits present no
# halt can occur inside a 4-step macro.

def _unc_block_effect(bits: int) -> tuple[int, int]:
    appended = 0
    count = 0
    for j in (0, 3, 6, 9):
        if (bits >> j) & 1:
            appended |= 0b1011 << count  # 1,1,0,1 little-position-first
            count += 4
        else:
            count += 2
    return appended, count


def _unc_block_maxrise(bits: int) -> int:
    best = -5
    cur = 0
    for j in (0, 3, 6, 9):
        cur += 1 if (bits >> j) & 1 else -1
        if cur > best:
            best = cur
    return best


_UTAB12 = tuple(_unc_block_effect(b) for b in range(4096))
_URISE12 = tuple(_unc_block_maxrise(b) for b in range(4096))


def step_unc(w: int, L: int) -> tuple[int, int] | None:
    """Single uncompressed 00/1101 step on packed bits; None when length < 3."""
    if L < 3:
        return None
    s = w & 1
    w >>= 3
    L -= 3
    if s:
        return w | (0b1011 << L), L + 4
    return w, L + 2


def advance_unc(w: int, L: int, nsteps: int) -> tuple[int, int, int, bool]:
    """Apply exactly ``nsteps`` uncompressed steps or stop when length < 3.

    Returns (word, length, steps_done, halted).
    """
    tab = _UTAB12
    rem = nsteps
    while rem:
        if rem >= 8 and L >= 24:
            while rem >= 8 and L >= 24:
                v0, c0 = tab[w & 0xFFF]
                v1, c1 = tab[(w >> 12) & 0xFFF]
                base = L - 24
                w = (w >> 24) | (v0 << base) | (v1 << (base + c0))
                L = base + c0 + c1
                rem -= 8
        elif rem >= 4 and L >= 12:
            v0, c0 = tab[w & 0xFFF]
            w = (w >> 12) | (v0 << (L - 12))
            L += c0 - 12
            rem -= 4
        else:
            if L < 3:
                return w, L, nsteps - rem, True
            s = w & 1
            w >>= 3
            L -= 3
            if s:
                w |= 0b1011 << L
                L += 4
            else:
                L += 2
            rem -= 1
    return w, L, nsteps, L < 3


def advance_unc_tracked(w: int, L: int, nsteps: int,
                        max_n: int) -> tuple[int, int, int, bool, int]:
    """:func:`advance_unc` plus exact peak string length tracking."""
    tab = _UTAB12
    rise = _URISE12
    rem = nsteps
    while rem:
        if rem >= 4 and L >= 12:
            while rem >= 4 and L >= 12:
                b = w & 0xFFF
                peak = L + rise[b]
                if peak > max_n:
                    max_n = peak
                v0, c0 = tab[b]
                w = (w >> 12) | (v0 << (L - 12))
                L += c0 - 12
                rem -= 4
        else:
            if L < 3:
                return w, L, nsteps - rem, True, max_n
            s = w & 1
            w >>= 3
            L -= 3
            if s:
                w |= 0b1011 << L
                L += 4
            else:
                L += 2
            if L > max_n:
                max_n = L
            rem -= 1
    return w, L, nsteps, L < 3, max_n


def pack_uncompressed(symbols: tuple[int, ...]) -> tuple[int, int]:
    w = 0
    for i, s in enumerate(symbols):
        w |= s << i
    return w, len(symbols)


def unpack_uncompressed(w: int, L: int) -> tuple[int, ...]:
    return tuple((w >> i) & 1 for i in range(L))
