"""Executes a unit rule over a network under a scheduler.

Registers follow the multi-reader single-writer discipline: within one
scheduled event every activated unit reads the pre-event snapshot and
computes its whole update (pointer step, then goodness, then
activation); all writes commit together afterwards.  A singleton event
therefore behaves exactly like one sequential activation.

A run is declared stable after a full quiet window: no register
changed for `window` consecutive events (default 2n) and every unit
was re-activated on the final state at least once.  Stochastic rules
simply exhaust their pass budget and report stable=False.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Mapping, Sequence

from .network import Network
from .rules import (
    ActivationRegister,
    Legality,
    LocalView,
    NeighborView,
    activation_step,
    boltzmann_step,
    cutset_goodness_step,
    goodness_step,
    hopfield_step,
    legality_map,
    tree_direct_step,
    zero_register,
)
from .schedulers import Scheduler
from .weights import Weight

RULES = ("hopfield", "boltzmann", "activate", "activate-with-cutset")


@dataclass(frozen=True)
class TraceEvent:
    """One scheduled event: who ran, what changed, running measurements."""

    step: int
    pass_idx: int
    ids: frozenset[int]
    goodness: Weight | None
    illegal: int | None
    deltas: tuple[tuple[int, str, object], ...]


@dataclass
class RunResult:
    assignment: tuple[int, ...]
    stable: bool
    passes_used: int
    goodness_final: Weight
    events: int
    last_change_step: int
    converged_pass: int
    registers: list
    trace: list[TraceEvent] | None = None


def build_view(
    net: Network,
    regs: Sequence[ActivationRegister],
    i: int,
    cutset: frozenset[int],
    own: ActivationRegister | None = None,
) -> LocalView:
    nbs = tuple(NeighborView(j, w, regs[j]) for j, w in net.neighbors(i))
    return LocalView(i, net.bias(i), i in cutset, own if own is not None else regs[i], nbs)


def _unit_update(
    net: Network,
    regs: Sequence[ActivationRegister],
    i: int,
    rule: str,
    cutset: frozenset[int],
    rng: random.Random | None,
    temperature,
) -> ActivationRegister:
    view = build_view(net, regs, i, cutset)
    if rule == "hopfield":
        return replace(view.own, x=hopfield_step(view))
    if rule == "boltzmann":
        return replace(view.own, x=boltzmann_step(view, temperature, rng))
    # tree-optimizing rule: pointer step feeds the goodness and activation steps
    new_points = tree_direct_step(view)
    view = replace(view, own=replace(view.own, points_to=new_points))
    if view.is_cutset:
        g0, pairs = cutset_goodness_step(view)
        x = activation_step(view)
        return ActivationRegister(x=x, g0=g0, g1=Weight(0), points_to=new_points, cutset_g1=pairs)
    g0, g1 = goodness_step(view)
    x = activation_step(view)
    return ActivationRegister(x=x, g0=g0, g1=g1, points_to=new_points, cutset_g1=None)


_DELTA_FIELDS = ("x", "g0", "g1", "points_to", "cutset_g1")


def apply_event(
    net: Network,
    regs: list,
    ids: frozenset[int],
    rule: str,
    cutset: frozenset[int] = frozenset(),
    rng: random.Random | None = None,
    temperature=None,
) -> tuple[tuple[int, str, object], ...]:
    """Activate `ids` synchronously against the current snapshot.

    Mutates the register list in place (only at the activated indices)
    and returns the field-level deltas.
    """
    updates = {i: _unit_update(net, regs, i, rule, cutset, rng, temperature) for i in sorted(ids)}
    deltas = []
    for i, new in updates.items():
        old = regs[i]
        if new != old:
            for field in _DELTA_FIELDS:
                if getattr(new, field) != getattr(old, field):
                    deltas.append((i, field, getattr(new, field)))
            regs[i] = new
    return tuple(deltas)


def replay_deltas(initial_regs: Sequence, trace: Sequence[TraceEvent]) -> list:
    """Reconstruct the final registers from the initial ones plus deltas."""
    regs = list(initial_regs)
    for ev in trace:
        for node, field, value in ev.deltas:
            regs[node] = replace(regs[node], **{field: value})
    return regs


def initial_registers(
    net: Network,
    init: str = "zeros",
    cutset: frozenset[int] = frozenset(),
    seed: int | None = None,
    preset=None,
) -> list:
    """Build the starting register list (index 0 unused).

    init 'zeros' clears everything (the explicit initialization step);
    'random' randomizes only the activation bits; 'preset' takes either
    a full register list or a mapping node -> pointer set.
    """
    regs: list = [None] + [zero_register(net, i, cutset) for i in net.nodes()]
    if init == "zeros":
        return regs
    if init == "random":
        rng = random.Random(seed)
        for i in net.nodes():
            regs[i] = replace(regs[i], x=rng.randint(0, 1))
        return regs
    if init == "preset":
        if preset is None:
            raise ValueError("init='preset' requires a preset")
        if isinstance(preset, Mapping):
            for i in net.nodes():
                regs[i] = replace(regs[i], points_to=frozenset(preset.get(i, frozenset())))
            return regs
        return list(preset)
    raise ValueError(f"unknown init mode {init!r}")


def perturb(net: Network, regs: Sequence, seed: int, g_range: tuple[Weight, Weight] | None = None) -> list:
    """Randomize every register field; deterministic per seed.

    Goodness values default to the attainable envelope
    [-(sum|w| + sum|theta|), +(sum|w| + sum|theta|)].
    """
    rng = random.Random(seed)
    if g_range is None:
        m = sum(abs(w.micros) for _, _, w in net.edges())
        m += sum(abs(net.bias(i).micros) for i in net.nodes())
        lo, hi = -m, m
    else:
        lo, hi = g_range[0].micros, g_range[1].micros
    out: list = [None]
    for i in net.nodes():
        old = regs[i]
        x = rng.randint(0, 1)
        g0 = Weight(rng.randint(lo, hi))
        g1 = Weight(rng.randint(lo, hi))
        points = frozenset(j for j, _ in net.neighbors(i) if rng.random() < 0.5)
        cutset_g1 = None
        if old.cutset_g1 is not None:
            cutset_g1 = tuple((j, Weight(rng.randint(lo, hi))) for j, _ in net.neighbors(i))
        out.append(ActivationRegister(x=x, g0=g0, g1=g1, points_to=points, cutset_g1=cutset_g1))
    return out


def pointer_snapshot(regs: Sequence) -> dict[int, frozenset[int]]:
    return {i: regs[i].points_to for i in range(1, len(regs))}


def illegal_count(net: Network, regs: Sequence) -> int:
    """Number of nodes whose pointer-state classification is not legal."""
    lmap = legality_map(net, pointer_snapshot(regs))
    return sum(1 for v in lmap.values() if v is not Legality.LEGAL)


def assignment_of(regs: Sequence) -> tuple[int, ...]:
    return tuple(regs[i].x for i in range(1, len(regs)))


def run(
    net: Network,
    rule: str,
    scheduler: Scheduler,
    init: str = "zeros",
    *,
    max_passes: int = 100,
    seed: int | None = None,
    rule_seed: int | None = None,
    temperature=None,
    cutset: frozenset[int] | None = None,
    preset=None,
    window: int | None = None,
    collect_trace: bool = False,
    track_illegal: bool = False,
) -> RunResult:
    """Iterate scheduler events until a quiet window or the pass budget.

    `cutset` defaults to the network's declared cutset for the
    activate-with-cutset rule and to the empty set otherwise.
    """
    if rule not in RULES:
        raise ValueError(f"unknown rule {rule!r}")
    if rule == "boltzmann" and temperature is None:
        raise ValueError("boltzmann rule needs a temperature")
    if cutset is None:
        cutset = net.cutset if rule == "activate-with-cutset" else frozenset()
    n = net.n
    window = window if window is not None else 2 * n
    regs = initial_registers(net, init, cutset, seed, preset)
    rng = random.Random(rule_seed if rule_seed is not None else seed)

    trace: list[TraceEvent] | None = [] if collect_trace else None
    last_change = -1
    last_activated = {i: -1 for i in net.nodes()}
    stable = False
    step = -1
    illegal = illegal_count(net, regs) if track_illegal else None
    pointers_dirty = False

    max_events = max_passes * n
    for step in range(max_events):
        ids = scheduler.next_set(n)
        if not ids:
            raise ValueError("scheduler produced an empty event")
        deltas = apply_event(net, regs, ids, rule, cutset, rng, temperature)
        if deltas:
            last_change = step
        for i in ids:
            last_activated[i] = step
        if trace is not None:
            if track_illegal:
                pointers_dirty = pointers_dirty or any(f == "points_to" for _, f, _ in deltas)
                if pointers_dirty:
                    illegal = illegal_count(net, regs)
                    pointers_dirty = False
            trace.append(
                TraceEvent(
                    step=step,
                    pass_idx=step // n + 1,
                    ids=ids,
                    goodness=net.goodness(assignment_of(regs)),
                    illegal=illegal,
                    deltas=deltas,
                )
            )
        quiet = step - last_change
        if quiet >= window and all(t > last_change for t in last_activated.values()):
            stable = True
            break

    events = step + 1
    assignment = assignment_of(regs)
    return RunResult(
        assignment=assignment,
        stable=stable,
        passes_used=(events + n - 1) // n,
        goodness_final=net.goodness(assignment),
        events=events,
        last_change_step=last_change,
        converged_pass=(last_change // n + 1) if last_change >= 0 else 0,
        registers=regs,
        trace=trace,
    )


# ---------------------------------------------------------------------------
# paired-run experiments


@dataclass(frozen=True)
class DominancePair:
    """Paired stable goodness values plus whether the pair is comparable
    (both stable and agreeing on the reference node set)."""

    g_better: Weight
    g_base: Weight
    comparable: bool
    reference_nodes: frozenset[int]


def non_tree_nodes(net: Network, regs: Sequence) -> frozenset[int]:
    """Nodes left outside any directed tree: two or more non-pointing neighbors."""
    out = set()
    for i in net.nodes():
        non_pointing = sum(1 for j, _ in net.neighbors(i) if i not in regs[j].points_to)
        if non_pointing >= 2:
            out.add(i)
    return frozenset(out)


def dominance_experiment(net: Network, seed: int, scheduler_factory, max_passes: int = 200) -> DominancePair:
    """Tree rule vs threshold rule from one shared random start.

    Comparable means both runs went stable and agree on every node the
    tree rule left outside its trees; for such pairs the tree rule's
    goodness is guaranteed to be at least the threshold rule's.
    """
    base = run(net, "hopfield", scheduler_factory(), init="random", seed=seed, max_passes=max_passes)
    tree = run(net, "activate", scheduler_factory(), init="random", seed=seed, max_passes=max_passes)
    ref = non_tree_nodes(net, tree.registers)
    comparable = (
        base.stable
        and tree.stable
        and all(base.assignment[i - 1] == tree.assignment[i - 1] for i in ref)
    )
    return DominancePair(tree.goodness_final, base.goodness_final, comparable, ref)


def cutset_dominance_experiment(
    net: Network,
    members: frozenset[int],
    seed: int,
    scheduler_factory,
    max_passes: int = 200,
) -> DominancePair:
    """Cutset-conditioned rule vs plain tree rule on matched cutset values."""
    base = run(net, "activate", scheduler_factory(), init="random", seed=seed, max_passes=max_passes)
    cut = run(
        net,
        "activate-with-cutset",
        scheduler_factory(),
        init="random",
        seed=seed,
        max_passes=max_passes,
        cutset=members,
    )
    comparable = (
        base.stable
        and cut.stable
        and all(base.assignment[i - 1] == cut.assignment[i - 1] for i in members)
    )
    return DominancePair(cut.goodness_final, base.goodness_final, comparable, members)


# ---------------------------------------------------------------------------
# trace formatting (External interface: one TSV line per event)


def _delta_text(node: int, field: str, value) -> str:
    if field == "points_to":
        return f"{node}:p={'|'.join(str(j) for j in sorted(value)) or '-'}"
    if field == "cutset_g1":
        body = "|".join(f"{j}:{w}" for j, w in value)
        return f"{node}:cg1={body}"
    return f"{node}:{field}={value}"


def trace_line(ev: TraceEvent) -> str:
    ids = ",".join(str(i) for i in sorted(ev.ids))
    deltas = ",".join(_delta_text(*d) for d in ev.deltas)
    illegal = "" if ev.illegal is None else str(ev.illegal)
    goodness = "" if ev.goodness is None else str(ev.goodness)
    return f"{ev.step}\t{ev.pass_idx}\t{ids}\t{goodness}\t{illegal}\t{deltas}"


def result_line(result: RunResult) -> str:
    bits = "".join(str(b) for b in result.assignment)
    return (
        f"RESULT stable={int(result.stable)} passes={result.passes_used} "
        f"goodness={result.goodness_final} assignment={bits}"
    )
