"""Per-unit update rules over shared activation registers.

Each unit owns one register that everyone may read but only the unit
itself writes.  The register holds the activation bit, a pair of
conditional goodness values, and one parent-pointer bit per neighbor.
Units designated as cycle-cutset members publish a separate goodness
pair per neighbor instead of the single (g0, g1) pair, and always
update their activation by the plain threshold rule.

Every function here is pure: it maps a unit's local view (its own
register plus its neighbors' published registers) to the new field
values.  Committing writes, scheduling and snapshot semantics are the
simulation engine's business.

The tree protocol, in one paragraph: a unit that sees exactly one
neighbor not pointing at it adopts that neighbor as its parent; with
zero non-pointing neighbors it is a root, with two or more it is off
the tree (on a cycle) and falls back to the threshold rule.  Goodness
pairs flow from leaves toward the root -- g0/g1 are the best achievable
subtree goodness given the parent off/on -- and activation values flow
back down, so a settled tree carries its exact conditional optimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from .network import Network
from .weights import Weight, ZERO


@dataclass(frozen=True)
class ActivationRegister:
    """One unit's shared state: activation bit, goodness pair, pointers.

    ``points_to`` holds the ids of neighbors this unit sees as parents
    (at most one for a settled non-cutset unit).  ``cutset_g1`` is the
    per-neighbor conditional goodness published by designated cutset
    units, and None everywhere else.
    """

    x: int = 0
    g0: Weight = ZERO
    g1: Weight = ZERO
    points_to: frozenset[int] = frozenset()
    cutset_g1: tuple[tuple[int, Weight], ...] | None = None

    def g1_toward(self, reader: int) -> Weight:
        """Goodness-if-reader-on as published to a particular neighbor."""
        if self.cutset_g1 is None:
            return self.g1
        for j, value in self.cutset_g1:
            if j == reader:
                return value
        return ZERO


def zero_register(net: Network, i: int, cutset: frozenset[int]) -> ActivationRegister:
    if i in cutset:
        pairs = tuple((j, ZERO) for j, _ in net.neighbors(i))
        return ActivationRegister(cutset_g1=pairs)
    return ActivationRegister()


@dataclass(frozen=True)
class NeighborView:
    id: int
    weight: Weight
    reg: ActivationRegister


@dataclass(frozen=True)
class LocalView:
    """Everything unit ``node`` may legally read in one activation."""

    node: int
    bias: Weight
    is_cutset: bool
    own: ActivationRegister
    neighbors: tuple[NeighborView, ...]

    def points_at_me(self, nb: NeighborView) -> bool:
        return self.node in nb.reg.points_to

    def non_pointing(self) -> list[NeighborView]:
        return [nb for nb in self.neighbors if not self.points_at_me(nb)]


class NodeRole(Enum):
    LEAF = "leaf"
    ROOT = "root"
    INTERNAL = "internal"
    NON_TREE = "non-tree"
    CUTSET = "cutset"


class Legality(Enum):
    LEGAL = "legal"
    CANDIDATE = "candidate"
    ILLEGAL = "illegal"


# ---------------------------------------------------------------------------
# tree directing


def tree_direct_step(view: LocalView) -> frozenset[int]:
    """New pointer set: adopt the unique non-pointing neighbor as parent.

    Cutset units instead point at every neighbor that is not pointing
    at them, so they can serve several trees as a shared leaf.
    """
    non_pointing = view.non_pointing()
    if view.is_cutset:
        return frozenset(nb.id for nb in non_pointing)
    if len(non_pointing) == 1:
        return frozenset({non_pointing[0].id})
    return frozenset()


# ---------------------------------------------------------------------------
# goodness propagation


def goodness_step(view: LocalView) -> tuple[Weight, Weight]:
    """Recompute (g0, g1) from pointing neighbors; meaningful on tree units.

    With no pointing neighbors this degenerates to the leaf values
    (max(0, theta) and max(0, w + theta)).  Pointing cutset neighbors
    contribute their per-neighbor published pair.
    """
    s0 = 0
    s1 = 0
    for nb in view.neighbors:
        if view.points_at_me(nb):
            s0 += nb.reg.g0.micros
            s1 += nb.reg.g1_toward(view.node).micros
    parent_w = sum(nb.weight.micros for nb in view.neighbors if nb.id in view.own.points_to)
    theta = view.bias.micros
    g0 = max(s0, s1 + theta)
    g1 = max(s0, s1 + theta + parent_w)
    return Weight(g0), Weight(g1)


def cutset_goodness_step(view: LocalView) -> tuple[Weight, tuple[tuple[int, Weight], ...]]:
    """Cutset units publish fixed-activation goodness: g0 = x*theta and,
    toward each neighbor j, x*(theta + w_ij)."""
    x = view.own.x
    g0 = view.bias * x
    pairs = tuple((nb.id, (view.bias + nb.weight) * x) for nb in view.neighbors)
    return g0, pairs


# ---------------------------------------------------------------------------
# activation


def hopfield_step(view: LocalView) -> int:
    """Threshold rule: on iff the weighted input meets -theta (ties on)."""
    field = sum(nb.weight.micros * nb.reg.x for nb in view.neighbors)
    return 1 if field >= -view.bias.micros else 0


def activation_step(view: LocalView) -> int:
    """Tree units combine children's goodness gaps with the parent link;
    cutset units and units on cycles use the plain threshold rule.

    The combined inequality

        sum_j ((g1_j - g0_j) * P_j_i  +  w_ij * x_j * P_i_j)  >=  -theta_i

    specializes to the root rule (all neighbors pointing), the internal
    rule (children plus one parent) and, for leaves, the threshold rule
    itself.
    """
    if view.is_cutset or len(view.non_pointing()) > 1:
        return hopfield_step(view)
    s = 0
    for nb in view.neighbors:
        if view.points_at_me(nb):
            s += nb.reg.g1_toward(view.node).micros - nb.reg.g0.micros
        if nb.id in view.own.points_to:
            s += nb.weight.micros * nb.reg.x
    return 1 if s >= -view.bias.micros else 0


def boltzmann_step(view: LocalView, temperature: Weight | float, rng) -> int:
    """Stochastic rule: on with probability sigmoid((field + theta) / T).

    The only rule allowed to leave exact arithmetic; the sigmoid is
    evaluated in binary floating point against a uniform draw.
    """
    t = float(temperature)
    if t <= 0:
        raise ValueError(f"temperature must be positive, got {t}")
    field = sum(nb.weight.micros * nb.reg.x for nb in view.neighbors)
    s = (field + view.bias.micros) / 1e6
    p = 1.0 / (1.0 + math.exp(-s / t))
    return 1 if rng.random() < p else 0


# ---------------------------------------------------------------------------
# classification


def classify_role(view: LocalView) -> NodeRole:
    """Role implied by the pointer pattern; designation trumps topology."""
    if view.is_cutset:
        return NodeRole.CUTSET
    if len(view.neighbors) == 1:
        return NodeRole.LEAF
    k = len(view.non_pointing())
    if k == 0:
        return NodeRole.ROOT
    if k == 1:
        return NodeRole.INTERNAL
    return NodeRole.NON_TREE


def legality_map(net: Network, pointers: Mapping[int, frozenset[int]]) -> dict[int, Legality]:
    """Classify every node as legal / candidate / illegal for a pointer snapshot.

    A node is legal if it is a root (points at nobody, every neighbor
    points at it and is legal) or an intermediate (points at exactly one
    neighbor, every other neighbor points at it and is legal).  Legality
    is taken as the least fixed point, i.e. it must be derivable from
    the leaves up; mutually-supporting pointer rings do not count.  A
    candidate is an illegal node with at most one non-pointing neighbor.
    """
    legal: set[int] = set()
    changed = True
    while changed:
        changed = False
        for i in net.nodes():
            if i in legal:
                continue
            own = pointers.get(i, frozenset())
            nbs = [j for j, _ in net.neighbors(i)]
            if len(own) == 0:
                ok = all(i in pointers.get(j, frozenset()) and j in legal for j in nbs)
            elif len(own) == 1 and next(iter(own)) in nbs:
                parent = next(iter(own))
                ok = all(
                    i in pointers.get(j, frozenset()) and j in legal
                    for j in nbs
                    if j != parent
                )
            else:
                ok = False
            if ok:
                legal.add(i)
                changed = True
    result = {}
    for i in net.nodes():
        if i in legal:
            result[i] = Legality.LEGAL
        else:
            pointing = sum(1 for j, _ in net.neighbors(i) if i in pointers.get(j, frozenset()))
            non_pointing = net.degree(i) - pointing
            result[i] = Legality.CANDIDATE if non_pointing <= 1 else Legality.ILLEGAL
    return result


def classify_legality(net: Network, pointers: Mapping[int, frozenset[int]], i: int) -> Legality:
    return legality_map(net, pointers)[i]
