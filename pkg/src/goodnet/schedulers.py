"""Activation-set policies and trace-level fairness checks.

A scheduler produces, per step, the set of units activated together.
Central schedulers emit singletons; the synchronous scheduler fires
everyone at once; the fair-exclusion scheduler emits random subsets
interleaved with round-robin singletons so that, within any window of
2n steps, every unit runs at least once and every ordered neighbor
pair (i without j) occurs at least once.

Infinite-schedule notions ("activated infinitely often") are made
falsifiable on finite traces by sliding-window obligations; the window
is a parameter, conventionally 2n.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .network import Network


@dataclass(frozen=True)
class ActivationEvent:
    step: int
    ids: frozenset[int]


class Scheduler:
    kind = "abstract"

    def next_set(self, n: int) -> frozenset[int]:
        raise NotImplementedError


class CentralRoundRobin(Scheduler):
    """Singletons cycling through a fixed order (ascending ids by default)."""

    kind = "central-rr"

    def __init__(self, order: Sequence[int] | None = None):
        self.order = tuple(order) if order is not None else None
        self._cursor = 0

    def next_set(self, n: int) -> frozenset[int]:
        order = self.order if self.order is not None else tuple(range(1, n + 1))
        for i in order:
            if not 1 <= i <= n:
                raise ValueError(f"round-robin order references node {i} outside 1..{n}")
        pick = order[self._cursor % len(order)]
        self._cursor += 1
        return frozenset({pick})


class CentralRandom(Scheduler):
    """Uniform random singletons."""

    kind = "central-random"

    def __init__(self, seed: int):
        self._rng = random.Random(seed)

    def next_set(self, n: int) -> frozenset[int]:
        return frozenset({self._rng.randint(1, n)})


class SynchronousAll(Scheduler):
    """Every unit, every step."""

    kind = "sync-all"

    def next_set(self, n: int) -> frozenset[int]:
        return frozenset(range(1, n + 1))


class FairExclusion(Scheduler):
    """Random nonempty subsets alternating with round-robin singletons.

    Odd steps are forced singletons from an ascending cycle, so any 2n
    consecutive steps contain a full pass of solo activations; even
    steps are uniform random nonempty subsets.  This yields both
    fairness and fair exclusion with window 2n by construction.

    With `exclude_adjacent_in` set, random subsets are thinned to
    independent sets of that network, so two neighbors never run in
    the same event.  Sequential activations can never produce mutual
    parent pointers (a unit never adopts a neighbor that already
    points at it), so this regime keeps the pointer protocol's
    legality invariants intact; co-executing neighbors can transiently
    break them.
    """

    kind = "fair-excl"

    def __init__(self, seed: int, exclude_adjacent_in: Network | None = None):
        self._rng = random.Random(seed)
        self._step = 0
        self._cursor = 0
        self._net = exclude_adjacent_in

    def next_set(self, n: int) -> frozenset[int]:
        forced = self._step % 2 == 1
        self._step += 1
        if forced:
            pick = self._cursor % n + 1
            self._cursor += 1
            return frozenset({pick})
        size = self._rng.randint(1, n)
        chosen = self._rng.sample(range(1, n + 1), size)
        if self._net is None:
            return frozenset(chosen)
        picked: set[int] = set()
        for i in chosen:
            if not any(j in picked for j, _ in self._net.neighbors(i)):
                picked.add(i)
        return frozenset(picked)


class Scripted(Scheduler):
    """Replays a fixed singleton sequence cyclically."""

    kind = "scripted"

    def __init__(self, sequence: Sequence[int]):
        if not sequence:
            raise ValueError("scripted sequence must be nonempty")
        self.sequence = tuple(sequence)
        self._cursor = 0

    def next_set(self, n: int) -> frozenset[int]:
        pick = self.sequence[self._cursor % len(self.sequence)]
        if not 1 <= pick <= n:
            raise ValueError(f"scripted sequence references node {pick} outside 1..{n}")
        self._cursor += 1
        return frozenset({pick})


def parse_scheduler(text: str, seed: int = 0) -> Scheduler:
    """Build a scheduler from its CLI name.

    Accepted: ``central-rr``, ``central-rr:<ids>``, ``central-random``,
    ``sync-all``, ``fair-excl``, ``scripted:<ids>`` with ids comma-separated.
    """
    name, _, arg = text.partition(":")
    if name == "central-rr":
        order = [int(t) for t in arg.split(",")] if arg else None
        return CentralRoundRobin(order)
    if name == "central-random":
        return CentralRandom(seed)
    if name == "sync-all":
        return SynchronousAll()
    if name == "fair-excl":
        return FairExclusion(seed)
    if name == "scripted":
        if not arg:
            raise ValueError("scripted scheduler needs ids, e.g. scripted:1,4,2")
        return Scripted([int(t) for t in arg.split(",")])
    raise ValueError(f"unknown scheduler {text!r}")


# ---------------------------------------------------------------------------
# fairness checks on finite traces


def _ids_of(event) -> frozenset[int]:
    return event.ids if isinstance(event, ActivationEvent) else frozenset(event)


def _every_window_hits(flags: list[bool], window: int) -> bool:
    """True iff every length-`window` contiguous span contains a True."""
    if window <= 0:
        raise ValueError("window must be positive")
    if len(flags) < window:
        return any(flags)
    last_hit = -1
    for t, f in enumerate(flags):
        if f:
            last_hit = t
        if t >= window - 1 and last_hit <= t - window:
            return False
    return True


def check_fairness(trace: Iterable, window: int, n: int | None = None) -> bool:
    """Every node appears in every length-`window` span of the trace.

    `n` defaults to the highest id observed; pass it explicitly to catch
    nodes the trace never activates at all.
    """
    events = [_ids_of(e) for e in trace]
    if not events:
        raise ValueError("trace is empty")
    if n is None:
        nodes = set().union(*events)
        n = max(nodes) if nodes else 0
    for i in range(1, n + 1):
        if not _every_window_hits([i in ids for ids in events], window):
            return False
    return True


def check_fair_exclusion(trace: Iterable, net: Network, window: int) -> bool:
    """For every edge {i,j}, both 'i without j' and 'j without i' occur in
    every length-`window` span."""
    events = [_ids_of(e) for e in trace]
    if not events:
        raise ValueError("trace is empty")
    for i, j, _ in net.edges():
        solo_i = [i in ids and j not in ids for ids in events]
        solo_j = [j in ids and i not in ids for ids in events]
        if not _every_window_hits(solo_i, window) or not _every_window_hits(solo_j, window):
            return False
    return True
