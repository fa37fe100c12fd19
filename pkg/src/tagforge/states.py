"""State representations for the 00/1101 system.

The canonical search key is the compressed state: the symbols at positions
1, 4, 7, ... of the uncompressed string (its "word"), plus the phase
(uncompressed length mod 3).  Uncompressed strings are plain tuples of
0/1 symbols; the fast evolution engine packs words into integers with bit
``i`` holding word symbol ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import HaltedError, StateFormatError

# Uncompressed length for word length m is 3m - _PHASE_DEFICIT[phase].
_PHASE_DEFICIT = (0, 2, 1)


@dataclass(frozen=True)
class CompressedState:
    """Phase (uncompressed length mod 3) plus every-third-symbol word."""

    phase: int
    word: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.phase not in (0, 1, 2):
            raise ValueError(f"phase must be 0, 1 or 2, not {self.phase}")
        if any(s not in (0, 1) for s in self.word):
            raise ValueError("word symbols must be 0 or 1")

    def __len__(self) -> int:
        return len(self.word)

    @property
    def uncompressed_length(self) -> int:
        """Length of the uncompressed string this state stands for."""
        n = 3 * len(self.word) - _PHASE_DEFICIT[self.phase]
        return max(n, 0)

    @property
    def is_halted(self) -> bool:
        """True when the uncompressed string is too short to step (< 3)."""
        m = len(self.word)
        return m == 0 or (m == 1 and self.phase != 0)

    @property
    def value(self) -> int:
        """Word bits read big-endian as an integer (leading zeros via len)."""
        v = 0
        for s in self.word:
            v = (v << 1) | s
        return v

    def id(self) -> str:
        return format_state_id(self)

    def __str__(self) -> str:
        bits = "".join(str(s) for s in self.word)
        return f"{bits}:{self.phase}" if bits else f":{self.phase}"


def state_from_value(length: int, value: int, phase: int) -> CompressedState:
    """Build a compressed state from (word length, big-endian value, phase)."""
    if length < 0:
        raise ValueError("length must be >= 0")
    if not 0 <= value < (1 << length):
        raise ValueError(f"value {value} does not fit in {length} bits")
    word = tuple((value >> (length - 1 - i)) & 1 for i in range(length))
    return CompressedState(phase, word)


def format_state_id(state: CompressedState) -> str:
    """Canonical ``len:value:phase`` text form."""
    return f"{len(state.word)}:{state.value}:{state.phase}"


def parse_state_id(text: str) -> CompressedState:
    """Parse ``len:value:phase`` or literal ``bits:phase`` into a state."""
    parts = text.strip().split(":")
    try:
        if len(parts) == 3:
            length, value, phase = (int(p) for p in parts)
            if not 0 <= value < (1 << length):
                raise ValueError(f"value {value} needs more than {length} bits")
            if phase not in (0, 1, 2):
                raise ValueError(f"bad phase {phase}")
            return state_from_value(length, value, phase)
        if len(parts) == 2:
            bits, phase_text = parts
            if bits and set(bits) - {"0", "1"}:
                raise ValueError(f"bad bits {bits!r}")
            phase = int(phase_text)
            if phase not in (0, 1, 2):
                raise ValueError(f"bad phase {phase}")
            return CompressedState(phase, tuple(int(b) for b in bits))
    except ValueError as exc:
        raise StateFormatError(f"bad state id {text!r}: {exc}") from exc
    raise StateFormatError(f"bad state id {text!r}")


def compress(symbols: tuple[int, ...]) -> CompressedState:
    """Compress an uncompressed string: every third symbol plus length mod 3."""
    return CompressedState(len(symbols) % 3, tuple(symbols[0::3]))


def uncompress(state: CompressedState, pad: int = 0) -> tuple[int, ...]:
    """Rebuild an uncompressed string, filling don't-care positions with ``pad``.

    ``compress(uncompress(s)) == s`` for every geometrically realizable
    state; a stray empty word with nonzero phase has no uncompressed form.
    """
    if pad not in (0, 1):
        raise ValueError("pad must be 0 or 1")
    m = len(state.word)
    if m == 0:
        if state.phase != 0:
            raise ValueError("empty word with nonzero phase has no uncompressed form")
        return ()
    out: list[int] = []
    for s in state.word[:-1]:
        out += [s, pad, pad]
    out.append(state.word[-1])
    out += [pad] * (2, 0, 1)[state.phase]
    return tuple(out)


# --- packed word representation used by the fast engine --------------------

def pack_word(word: tuple[int, ...]) -> int:
    """Little-position-first packing: bit i of the result is word[i]."""
    w = 0
    for i, s in enumerate(word):
        w |= s << i
    return w


def unpack_word(w: int, length: int) -> tuple[int, ...]:
    return tuple((w >> i) & 1 for i in range(length))


def state_to_packed(state: CompressedState) -> tuple[int, int, int]:
    """(phase, packed word, word length) triple for the fast engine."""
    return state.phase, pack_word(state.word), len(state.word)


def packed_to_state(phase: int, w: int, length: int) -> CompressedState:
    return CompressedState(phase, unpack_word(w, length))


def packed_is_halted(phase: int, length: int) -> bool:
    return length == 0 or (length == 1 and phase != 0)


def packed_uncompressed_length(phase: int, length: int) -> int:
    return max(3 * length - _PHASE_DEFICIT[phase], 0)


# --- binary serialization (checkpoint files) -------------------------------

def write_varint(value: int) -> bytes:
    """Unsigned LEB128."""
    if value < 0:
        raise ValueError("varint must be nonnegative")
    out = bytearray()
    while True:
        byte = value & 0x7F
        value >>= 7
        if value:
            out.append(byte | 0x80)
        else:
            out.append(byte)
            return bytes(out)


def read_varint(buf: bytes, offset: int) -> tuple[int, int]:
    """Decode an unsigned LEB128 value, returning (value, next offset)."""
    result = 0
    shift = 0
    while True:
        if offset >= len(buf):
            raise StateFormatError("truncated varint")
        byte = buf[offset]
        offset += 1
        result |= (byte & 0x7F) << shift
        if not byte & 0x80:
            return result, offset
        shift += 7


def serialize_packed_state(phase: int, w: int, length: int) -> bytes:
    """Header byte (phase), varint word length, then packed bits."""
    nbytes = (length + 7) // 8
    return bytes([phase]) + write_varint(length) + w.to_bytes(nbytes, "little")


def deserialize_packed_state(buf: bytes, offset: int = 0) -> tuple[tuple[int, int, int], int]:
    """Inverse of :func:`serialize_packed_state`; returns (triple, next offset)."""
    if offset >= len(buf):
        raise StateFormatError("truncated packed state")
    phase = buf[offset]
    if phase not in (0, 1, 2):
        raise StateFormatError(f"bad phase byte {phase}")
    length, offset = read_varint(buf, offset + 1)
    nbytes = (length + 7) // 8
    if offset + nbytes > len(buf):
        raise StateFormatError("truncated packed word")
    w = int.from_bytes(buf[offset:offset + nbytes], "little")
    if w >> length:
        raise StateFormatError("packed word has bits beyond its length")
    return (phase, w, length), offset + nbytes


# --- integer-pair form of the uncompressed string --------------------------

@dataclass(frozen=True)
class IntegerPairState:
    """Uncompressed string as (length n, integer i with the string as binary digits)."""

    n: int
    i: int

    def __post_init__(self) -> None:
        if self.n < 0 or not 0 <= self.i < (1 << self.n if self.n else 1):
            raise ValueError(f"i={self.i} does not fit in {self.n} binary digits")

    def symbols(self) -> tuple[int, ...]:
        return tuple((self.i >> (self.n - 1 - k)) & 1 for k in range(self.n))

    @classmethod
    def from_symbols(cls, symbols: tuple[int, ...]) -> IntegerPairState:
        i = 0
        for s in symbols:
            i = (i << 1) | s
        return cls(len(symbols), i)


def integer_pair_step(state: IntegerPairState) -> IntegerPairState:
    """One tag step on the integer-pair form (leading digit picks the branch)."""
    n, i = state.n, state.i
    if n < 3:
        raise HaltedError(f"cannot step a length-{n} string")
    j = (8 * i % (1 << n)) // 2
    if i < 1 << (n - 1):
        return IntegerPairState(n - 1, j)
    return IntegerPairState(n + 1, 4 * j + 13)
