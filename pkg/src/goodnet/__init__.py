"""goodnet: simulator and exact solvers for symmetric 0/1 energy networks.

The library models networks of threshold units with symmetric weights
that collectively maximize a quadratic goodness function (equivalently,
minimize energy).  It provides:

* exact fixed-point arithmetic and a line-oriented network file format;
* brute-force and cutset-conditioned exact solvers as ground truth;
* classic per-unit rules (threshold, stochastic) and the
  tree-optimizing rule that finds exact optima on acyclic regions,
  plus its cycle-cutset extension;
* scheduler models (central, synchronous, fair-exclusion, scripted)
  with fairness checkers, a deterministic simulation engine, and
  experiment harnesses for the known negative results and guarantees.
"""

from .weights import Weight, ZERO, wsum
from .network import Assignment, Network, ParseError, parse_network, serialize_network
from .fixtures import (
    chain2i,
    example51,
    fig1,
    fixture,
    illegal_ring,
    random_network,
    ring6,
)
from .oracle import (
    CutsetPlan,
    OptimumReport,
    brute_force_optima,
    conditioned_optimum,
    cutset_exact_optimize,
    greedy_cutset,
    hopfield_local_optima,
    is_acyclic_without,
    is_hopfield_stable,
    plan_from_members,
    tree_conditioned_max,
)
from .rules import (
    ActivationRegister,
    Legality,
    LocalView,
    NeighborView,
    NodeRole,
    activation_step,
    boltzmann_step,
    classify_legality,
    classify_role,
    cutset_goodness_step,
    goodness_step,
    hopfield_step,
    legality_map,
    tree_direct_step,
)
from .schedulers import (
    ActivationEvent,
    CentralRandom,
    CentralRoundRobin,
    FairExclusion,
    Scheduler,
    Scripted,
    SynchronousAll,
    check_fair_exclusion,
    check_fairness,
    parse_scheduler,
)
from .engine import (
    DominancePair,
    RunResult,
    TraceEvent,
    apply_event,
    assignment_of,
    build_view,
    cutset_dominance_experiment,
    dominance_experiment,
    illegal_count,
    initial_registers,
    non_tree_nodes,
    perturb,
    replay_deltas,
    result_line,
    run,
    trace_line,
)

__version__ = "0.1.0"
