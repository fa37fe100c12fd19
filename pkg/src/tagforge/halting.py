"""Exact halting and cycle detection for the 00/1101 system.

Semantics: states are compared as full uncompressed strings (canonical
pad-0 representative of the compressed initial condition), because the
don't-care positions keep two strings distinct until appends overwrite
them.  A run that drops below 3 symbols terminates; its halting step
counts the final emptying of the leftover short string, so a run reaching
``00`` after t steps halts at step t+1 with the empty string as its final
state.  For a run entering a cycle the halting step is the first step
whose state lies on the cycle, and the period is the exact minimal one.

Detection is Brent's algorithm over the state sequence sampled every
``stride`` steps (a cycle of period p appears in the sampled sequence with
period p/gcd(p, stride)), followed by an exact minimal-period refinement
and one more pass locating the first on-cycle step.  All comparisons are
exact big-integer equality; nothing is probabilistic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fast import (advance_unc, advance_unc_tracked, pack_uncompressed,
                   step_unc, unpack_uncompressed)
from .states import CompressedState, compress, uncompress

EMPTY_STATE = CompressedState(0, ())

_BRENT, _REFINE, _COLLECT, _TRANSIENT, _DONE = range(5)


@dataclass(frozen=True)
class HaltReport:
    """Exact outcome of one evolution."""

    halting_step: int
    period: int              # 0 = termination
    transient: int           # = halting_step (steps-to-empty on termination)
    final_state: CompressedState
    max_length_seen: int

    def record(self, state_id: str) -> dict:
        return {
            "id": state_id,
            "steps": self.halting_step,
            "period": self.period,
            "transient": self.transient,
            "maxlen": self.max_length_seen,
        }


@dataclass
class Undecided:
    """Step budget ran out; carries the resumable detector."""

    detector: "HaltDetector"

    @property
    def steps_done(self) -> int:
        return self.detector.steps


@dataclass
class HaltDetector:
    """Resumable halting detector over packed uncompressed states.

    All progress lives in plain integer fields so a detector can be
    serialized into a checkpoint and resumed bit-identically.
    """

    start_w: int
    start_len: int
    stride: int = 64

    # current cursor (Brent pass) and step count
    w: int = 0
    length: int = 0
    steps: int = 0
    max_n: int = 0
    # Brent bookkeeping (in samples)
    tort_w: int = 0
    tort_len: int = 0
    tort_step: int = 0
    power: int = 1
    lam: int = 0
    stage: int = _BRENT
    # after Brent
    sampled_period: int = 0
    period: int = 0
    refine_w: int = 0
    refine_len: int = 0
    refine_count: int = 0
    cycle_states: list[tuple[int, int]] = field(default_factory=list)
    # transient pass
    t_w: int = 0
    t_len: int = 0
    t_step: int = 0

    @classmethod
    def from_state(cls, state: CompressedState, stride: int = 64) -> "HaltDetector":
        if len(state.word) == 0 and state.phase != 0:
            symbols: tuple[int, ...] = ()  # geometrically unrealizable; halts at once
        else:
            symbols = uncompress(state, 0)
        w, length = pack_uncompressed(symbols)
        det = cls(start_w=w, start_len=length, stride=stride)
        det.w, det.length = w, length
        det.tort_w, det.tort_len = w, length
        det.max_n = length
        return det

    # -- helpers ------------------------------------------------------------

    def _termination_report(self) -> HaltReport:
        # the leftover short string (if any) empties in one final step
        extra = 1 if self.length > 0 else 0
        return HaltReport(
            halting_step=self.steps + extra,
            period=0,
            transient=self.steps + extra,
            final_state=EMPTY_STATE,
            max_length_seen=self.max_n,
        )

    def _final_state(self, w: int, length: int) -> CompressedState:
        return compress(unpack_uncompressed(w, length))

    # -- driver ---------------------------------------------------------------

    def run(self, budget: int) -> HaltReport | None:
        """Advance by at most ``budget`` evolution steps; None = not done yet.

        The Brent pass pauses only at sample boundaries, so interrupted and
        uninterrupted runs follow identical sample grids.
        """
        if self.stage == _BRENT:
            report = self._run_brent(budget)
            if report is not None:
                return report
            if self.stage == _BRENT:
                return None
        if self.stage == _REFINE:
            self._run_refine()
        if self.stage == _COLLECT:
            self._run_collect()
        if self.stage == _TRANSIENT:
            return self._run_transient()
        raise AssertionError("detector already finished")

    def _run_brent(self, budget: int) -> HaltReport | None:
        if self.length < 3:
            self.stage = _DONE
            return self._termination_report()
        stride = self.stride
        while budget >= stride:
            w, length, done, halted, self.max_n = advance_unc_tracked(
                self.w, self.length, stride, self.max_n
            )
            self.w, self.length = w, length
            self.steps += done
            budget -= done
            if halted:
                self.stage = _DONE
                return self._termination_report()
            self.lam += 1
            if w == self.tort_w and length == self.tort_len:
                self.sampled_period = self.lam
                self.stage = _REFINE
                self.refine_w, self.refine_len = w, length
                self.refine_count = 0
                return None
            if self.lam == self.power:
                self.tort_w, self.tort_len = w, length
                self.tort_step = self.steps
                self.power *= 2
                self.lam = 0
        return None

    def _run_refine(self) -> None:
        # minimal period of the on-cycle tortoise state; bounded by
        # sampled_period * stride
        target = (self.tort_w, self.tort_len)
        w, length = target
        count = 0
        while True:
            nxt = step_unc(w, length)
            assert nxt is not None
            w, length = nxt
            count += 1
            if (w, length) == target:
                break
        self.period = count
        self.stage = _COLLECT

    def _run_collect(self) -> None:
        states = []
        w, length = self.tort_w, self.tort_len
        for _ in range(self.period):
            states.append((w, length))
            w, length = step_unc(w, length)  # type: ignore[misc]
        self.cycle_states = states
        self.t_w, self.t_len = self.start_w, self.start_len
        self.t_step = 0
        self.stage = _TRANSIENT

    def _run_transient(self) -> HaltReport:
        cyc = set(self.cycle_states)
        w, length, t = self.t_w, self.t_len, self.t_step
        stride = self.stride
        if (w, length) in cyc:
            self.stage = _DONE
            return HaltReport(t, self.period, t, self._final_state(w, length), self.max_n)
        while True:
            prev_w, prev_len = w, length
            w, length, done, halted = advance_unc(w, length, stride)
            assert not halted
            t += done
            if (w, length) in cyc:
                w2, len2, t2 = prev_w, prev_len, t - done
                while (w2, len2) not in cyc:
                    w2, len2 = step_unc(w2, len2)  # type: ignore[misc]
                    t2 += 1
                self.stage = _DONE
                return HaltReport(t2, self.period, t2,
                                  self._final_state(w2, len2), self.max_n)


def detect_halt(state: CompressedState, max_steps: int,
                stride: int = 64) -> HaltReport | Undecided:
    """Exact (transient, period) of a compressed initial condition.

    Returns :class:`Undecided` carrying the resumable detector when the
    cycle/termination was not found within ``max_steps`` evolution steps.
    """
    det = HaltDetector.from_state(state, stride)
    report = det.run(max_steps)
    if report is None:
        return Undecided(det)
    return report


@dataclass(frozen=True)
class LengthTrace:
    """Uncompressed lengths along a run, possibly thinned by a power-of-2 stride."""

    values: tuple[int, ...]
    stride: int = 1
    halted: bool = False

    def __len__(self) -> int:
        return len(self.values)


def length_trace(state: CompressedState, max_steps: int,
                 max_points: int = 1 << 22) -> LengthTrace:
    """Lengths at steps 0, 1, ... (ending with the final emptying 0 on halt).

    When the trace would exceed ``max_points`` entries, every other kept
    entry is dropped and the stride doubles; the final entry is always kept.
    """
    from .fast import iter_lengths

    values: list[int] = []
    stride = 1
    pending = 0
    emitted = 0
    last = 0
    for n in iter_lengths(state, max_steps):
        if pending == 0:
            values.append(n)
            pending = stride
            if len(values) > max_points:
                values = values[::2]
                stride *= 2
        pending -= 1
        emitted += 1
        last = n
    halted = emitted < max_steps + 1  # the iterator stops early only on halt
    if halted and last > 0:
        values.append(0)  # the leftover short string empties in one final step
    return LengthTrace(tuple(values), stride, halted)


def generation_trace(state: CompressedState,
                     max_generations: int) -> tuple[list[CompressedState], bool]:
    """Compressed states at generation boundaries; True when the run halted.

    A generation consumes every symbol present at its start: ceil(n/3)
    steps, which equals the compressed word length.
    """
    from .fast import advance
    from .states import packed_to_state, state_to_packed

    states = [state]
    p, w, length = state_to_packed(state)
    halted = state.is_halted
    for _ in range(max_generations):
        if halted:
            break
        p, w, length, _done, halted = advance(p, w, length, length)
        states.append(packed_to_state(p, w, length))
    return states, halted
