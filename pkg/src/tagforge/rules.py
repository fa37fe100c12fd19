"""Tag rule definitions and the textual rule-literal format.

Rule literals:

* first-element rules:  ``k=2 r=3 0:00 1:1101``
* block rules:          ``r=2 00:0 10:101 01:000 11:011``
* cyclic rules:         ``cyclic 01,0,011``

Digits in appended blocks are single symbols (bases above 10 are not
needed here).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .errors import StateFormatError

Symbols = tuple[int, ...]


def _parse_block(text: str) -> Symbols:
    return tuple(int(ch) for ch in text)


def _format_block(block: Symbols) -> str:
    return "".join(str(s) for s in block)


@dataclass(frozen=True)
class TagRule:
    """First-element tag rule: drop ``deletion`` symbols, append by leading symbol.

    ``appends`` must have one entry per alphabet symbol, and appended blocks
    may only use symbols below ``alphabet_size``.
    """

    alphabet_size: int
    deletion: int
    appends: tuple[Symbols, ...]

    def __post_init__(self) -> None:
        if self.alphabet_size < 2:
            raise ValueError("alphabet_size must be >= 2")
        if self.deletion < 1:
            raise ValueError("deletion must be >= 1")
        if len(self.appends) != self.alphabet_size:
            raise ValueError("appends must have exactly one block per symbol")
        for block in self.appends:
            if any(s < 0 or s >= self.alphabet_size for s in block):
                raise ValueError("append block contains symbol outside alphabet")

    def literal(self) -> str:
        parts = [f"k={self.alphabet_size}", f"r={self.deletion}"]
        parts += [f"{s}:{_format_block(b)}" for s, b in enumerate(self.appends)]
        return " ".join(parts)


#: Post's 00/1101 system: drop 3, 0 -> 00, 1 -> 1101.
POST = TagRule(alphabet_size=2, deletion=3, appends=((0, 0), (1, 1, 0, 1)))


@dataclass(frozen=True)
class BlockRule:
    """Tag rule whose appended block depends on the whole deleted block."""

    deletion: int
    appends: dict[Symbols, Symbols] = field(hash=False)
    alphabet_size: int = 2

    def __post_init__(self) -> None:
        expected = set(product(range(self.alphabet_size), repeat=self.deletion))
        if set(self.appends) != expected:
            raise ValueError("block rule must map every deleted block")

    def literal(self) -> str:
        parts = [f"r={self.deletion}"]
        parts += [
            f"{_format_block(k)}:{_format_block(v)}"
            for k, v in sorted(self.appends.items())
        ]
        return " ".join(parts)


@dataclass(frozen=True)
class CyclicRule:
    """Cyclic tag rule: drop one symbol, append the cursor's block on 1."""

    blocks: tuple[Symbols, ...]
    alphabet_size: int = 2

    def __post_init__(self) -> None:
        if not self.blocks:
            raise ValueError("cyclic rule needs at least one block")

    def literal(self) -> str:
        return "cyclic " + ",".join(_format_block(b) for b in self.blocks)


GeneralRule = TagRule | BlockRule | CyclicRule


def parse_rule_literal(text: str) -> GeneralRule:
    """Parse a rule literal back into a rule object."""
    text = text.strip()
    if text.startswith("cyclic"):
        body = text[len("cyclic"):].strip()
        if not body:
            raise StateFormatError(f"empty cyclic rule: {text!r}")
        blocks = tuple(_parse_block(b) for b in body.split(","))
        k = max((max(b) for b in blocks if b), default=1) + 1
        return CyclicRule(blocks=blocks, alphabet_size=max(k, 2))

    parts = text.split()
    if not parts:
        raise StateFormatError("empty rule literal")
    try:
        if parts[0].startswith("k="):
            k = int(parts[0][2:])
            if not parts[1].startswith("r="):
                raise ValueError("missing r=")
            r = int(parts[1][2:])
            appends: dict[int, Symbols] = {}
            for p in parts[2:]:
                sym, _, block = p.partition(":")
                appends[int(sym)] = _parse_block(block)
            if sorted(appends) != list(range(k)):
                raise ValueError("appends must cover symbols 0..k-1")
            return TagRule(k, r, tuple(appends[s] for s in range(k)))
        if parts[0].startswith("r="):
            r = int(parts[0][2:])
            block_map: dict[Symbols, Symbols] = {}
            for p in parts[1:]:
                key, _, block = p.partition(":")
                block_map[_parse_block(key)] = _parse_block(block)
            syms = [s for kv in block_map.items() for part in kv for s in part]
            k = max(syms, default=1) + 1
            return BlockRule(deletion=r, appends=block_map, alphabet_size=max(k, 2))
    except StateFormatError:
        raise
    except (ValueError, KeyError, IndexError) as exc:
        raise StateFormatError(f"bad rule literal {text!r}: {exc}") from exc
    raise StateFormatError(f"unrecognized rule literal: {text!r}")
