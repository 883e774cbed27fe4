"""
Weak and naive weak bisimilarity by partition refinement.

PURPOSE:
- tangible_fixpoint: split the states into tangible ones and vanishing ones (with a
  stored representation ν) under the current partition.
- find_weak_split / refine: locate a block whose members disagree on some
  restricted-then-quotiented convex set S(s,α) and split it.
- refine_partition: outer loop; decide_weak / decide_naive / decide_within wrap it into
  a DecisionReport.
- preprocess: always-tangible flags and up-front elimination of trivially vanishing states.

CONTEXT:
- The restriction set during the fixpoint is dom(vanishing); at a fixpoint it is exactly
  the complement of the tangible set.
- S_ν(s,α) is compared for the modified state s only.
- Iteration order is fixed (state index, action_key order, scheduler construction order)
  so runs are reproducible.

NOTE:
- S(s,α) is computed once per automaton; S_ν(s,α) is memoized on first use.
- Projected views are memoized per partition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

import structlog

from src.config import load_settings
from src.errors import MaBisimError
from src.model_impl.chi_mapping import as_pa
from src.model_impl.elimination import EliminationResult, Eliminator, to_named
from src.model_impl.polytope import ConvexSet, quotient_project, restrict_zero, set_equal
from src.model_impl.transforms import direct_sum, modified_automaton
from src.model_impl.weak_reach import dirac_det_tau_targets, generator_set
from src.model_interface.automaton import MarkovAutomaton, ProbAutomaton
from src.model_interface.distribution import SubDistribution, as_vector
from src.model_interface.partition import Partition
from src.model_interface.report import DecisionReport, NamedDistribution
from src.model_interface.types import TAU, Action, ChiMode, Semantics
from src.observability import timed_segment

log = structlog.get_logger(__name__)

TANGIBLE = "tangible"
TRIVIALLY_VANISHING = "trivially-vanishing"
NN_VANISHING = "nn-vanishing"


@dataclass(frozen=True)
class RefinementState:
    partition: Partition
    tangible: FrozenSet[int] = frozenset()
    vanishing: Dict[int, SubDistribution] = field(default_factory=dict)


@dataclass(frozen=True)
class Splitter:
    """Block `class_index` must be split: `witness` disagree on `action`."""

    class_index: int
    action: Action
    witness: Tuple[int, int]


# -------------------- convex-set cache -------------------- #

class GeneratorCache:
    """
    Generator sets of one automaton.

    - strong_set(s, α): S(s,α) as vectors over the automaton's states
    - modified_set(s, ν, α): S_ν(s,α), i.e. S(s,α) in modified_automaton(p, s, ν)
    - candidates(s): DiracDet(s,τ) in scheduler construction order
    - view(...): restrict_zero then quotient_project, memoized for the current partition
    """

    def __init__(self, p: ProbAutomaton, limit: Optional[int] = None):
        self.p = p
        self.limit = limit
        self.actions: Tuple[Action, ...] = p.action_alphabet
        self._strong: Dict[Tuple[int, Action], ConvexSet] = {}
        self._modified: Dict[Tuple[int, SubDistribution, Action], ConvexSet] = {}
        self._candidates: Dict[int, List[SubDistribution]] = {}
        self._views: Dict[tuple, ConvexSet] = {}
        self._view_partition: Optional[Partition] = None

    def _as_set(self, dists: Iterable[SubDistribution]) -> ConvexSet:
        return ConvexSet(self.p.size, tuple(as_vector(mu, self.p.size) for mu in dists))

    def warm(self, with_candidates: bool = True) -> None:
        for s in range(self.p.size):
            for alpha in self.actions:
                self.strong_set(s, alpha)
            if with_candidates:
                self.candidates(s)
        log.debug("refine.cache_warm", states=self.p.size, actions=len(self.actions), sets=len(self._strong))

    def strong_set(self, s: int, alpha: Action) -> ConvexSet:
        key = (s, alpha)
        if key not in self._strong:
            self._strong[key] = self._as_set(generator_set(self.p, s, alpha, self.limit))
        return self._strong[key]

    def modified_set(self, s: int, nu: SubDistribution, alpha: Action) -> ConvexSet:
        key = (s, nu, alpha)
        if key not in self._modified:
            q = modified_automaton(self.p, s, nu)
            self._modified[key] = self._as_set(generator_set(q, s, alpha, self.limit))
        return self._modified[key]

    def candidates(self, s: int) -> List[SubDistribution]:
        if s not in self._candidates:
            self._candidates[s] = dirac_det_tau_targets(self.p, s, self.limit)
        return self._candidates[s]

    def view(self, s: int, alpha: Action, zero: FrozenSet[int], part: Partition,
             nu: Optional[SubDistribution] = None) -> ConvexSet:
        if part != self._view_partition:
            self._views.clear()
            self._view_partition = part
        key = (s, alpha, zero, nu)
        if key not in self._views:
            base = self.strong_set(s, alpha) if nu is None else self.modified_set(s, nu, alpha)
            self._views[key] = quotient_project(restrict_zero(base, zero), part)
        return self._views[key]


# -------------------- fixpoint -------------------- #

def _leaves_class(part: Partition, s: int, nu: SubDistribution) -> bool:
    home = part.block_of(s)
    return any(part.block_of(x) != home for x in nu.support)


def _representation_holds(cache: GeneratorCache, s: int, nu: SubDistribution, zero: FrozenSet[int],
                          part: Partition) -> bool:
    return all(
        set_equal(cache.view(s, alpha, zero, part), cache.view(s, alpha, zero, part, nu))
        for alpha in cache.actions
    )


def find_vanishing_representation(p: ProbAutomaton, s: int, rs: RefinementState,
                                  cache: GeneratorCache) -> Optional[SubDistribution]:
    """
    First ν ∈ DiracDet(s,τ) that leaves s's block and leaves every restricted-quotiented
    set of s unchanged when s is rewired to (s,τ,ν); None if no candidate passes.
    """
    part = rs.partition
    zero = frozenset(rs.vanishing) - {s}
    for nu in cache.candidates(s):
        if not _leaves_class(part, s, nu):
            continue
        if _representation_holds(cache, s, nu, zero, part):
            return nu
    return None


def tangible_fixpoint(p: ProbAutomaton, part: Partition, cache: GeneratorCache,
                      always_tangible: FrozenSet[int] = frozenset()) -> RefinementState:
    """
    Classify every state as tangible or vanishing under `part`.

    notes:
    - Each pass first re-validates stored representations (zero set = dom(vanishing)
      minus the state itself) and returns failures to the undetermined pool, then looks
      for a representation of every undetermined state; states without one turn tangible.
    - Tangible only grows; a repeated (tangible, vanishing) snapshot ends the loop.
    """
    tangible: Set[int] = set(always_tangible)
    vanishing: Dict[int, SubDistribution] = {}
    seen: Set[tuple] = set()

    def snapshot() -> tuple:
        return frozenset(tangible), tuple(sorted(vanishing.items(), key=lambda kv: kv[0]))

    while True:
        before = snapshot()
        seen.add(before)

        for s in sorted(vanishing):
            zero = frozenset(vanishing) - {s}
            if not _representation_holds(cache, s, vanishing[s], zero, part):
                log.debug("refine.demoted", state=p.name(s))
                del vanishing[s]

        for s in range(p.size):
            if s in tangible or s in vanishing:
                continue
            current = RefinementState(part, frozenset(tangible), dict(vanishing))
            nu = find_vanishing_representation(p, s, current, cache)
            if nu is None:
                tangible.add(s)
            else:
                vanishing[s] = nu

        after = snapshot()
        if after == before:
            break
        if after in seen:
            log.warning("refine.fixpoint_cycle", blocks=len(part), vanishing=len(vanishing))
            break

    return RefinementState(part, frozenset(tangible), dict(vanishing))


# -------------------- splitting -------------------- #

def find_weak_split(p: ProbAutomaton, rs: RefinementState, cache: GeneratorCache) -> Optional[Splitter]:
    """First (block, action, pair) whose restricted-quotiented sets differ, by block then action."""
    part = rs.partition
    zero = frozenset(rs.vanishing)
    for index, block in enumerate(part.blocks):
        if len(block) < 2:
            continue
        for alpha in cache.actions:
            first = cache.view(block[0], alpha, zero, part)
            for t in block[1:]:
                if not set_equal(first, cache.view(t, alpha, zero, part)):
                    return Splitter(index, alpha, (block[0], t))
    return None


def refine(part: Partition, p: ProbAutomaton, splitter: Splitter, rs: RefinementState,
           cache: GeneratorCache) -> Partition:
    """Split the named block into the classes of equal view for the splitter's action."""
    zero = frozenset(rs.vanishing)
    block = part.blocks[splitter.class_index]
    groups: List[List[int]] = []
    views: List[ConvexSet] = []
    for s in block:
        v = cache.view(s, splitter.action, zero, part)
        for group, rep in zip(groups, views):
            if set_equal(rep, v):
                group.append(s)
                break
        else:
            groups.append([s])
            views.append(v)
    if len(groups) < 2:
        raise MaBisimError(f"splitter on {splitter.action} does not split block {splitter.class_index}")
    return part.replace_block(splitter.class_index, groups)


# -------------------- preprocessing -------------------- #

def always_tangible_states(p: ProbAutomaton) -> FrozenSet[int]:
    """States whose only tau transition is a tau self-loop."""
    out = set()
    for s in range(p.size):
        taus = [t for t in p.outgoing(s) if t.action == TAU]
        if len(taus) == 1 and taus[0].target.is_dirac(s):
            out.add(s)
    return frozenset(out)


def is_trivially_vanishing(p: ProbAutomaton, s: int) -> bool:
    out = p.outgoing(s)
    return len(out) == 1 and out[0].action == TAU and not out[0].target.is_dirac(s)


def preprocess_with_plan(p: ProbAutomaton, keep: Iterable[str] = ()) -> EliminationResult:
    """
    Eliminate trivially vanishing states one at a time, lowest index first.

    notes:
    - States named in `keep` and the initial state are never eliminated.
    """
    keep = set(keep) | {p.name(p.initial)}
    eliminator = Eliminator(p)
    while True:
        q = eliminator.automaton
        skip = keep | set(eliminator.kept)
        candidate = next(
            (s for s in range(q.size) if q.name(s) not in skip and is_trivially_vanishing(q, s)), None
        )
        if candidate is None:
            break
        eliminator.eliminate(q.name(candidate), to_named(q, q.outgoing(candidate)[0].target))
    result = eliminator.result()
    if result.representations:
        log.debug("refine.preprocessed", eliminated=sorted(result.representations))
    return result


def preprocess(p: ProbAutomaton, keep: Iterable[str] = ()) -> ProbAutomaton:
    return preprocess_with_plan(p, keep).automaton


# -------------------- outer loop -------------------- #

@dataclass(frozen=True)
class RefinementOutcome:
    """
    attributes:
    - automaton: the automaton refined (after preprocessing, when enabled)
    - state: final partition with its tangible/vanishing classification
    - rounds: number of outer iterations (the last one finds no splitter)
    - history: partition after every refinement, starting from the single block
    - eliminated: representations of states removed by preprocessing
    """

    automaton: ProbAutomaton
    state: RefinementState
    rounds: int
    history: Tuple[Partition, ...]
    eliminated: Dict[str, NamedDistribution] = field(default_factory=dict)
    always_tangible: FrozenSet[int] = frozenset()
    preprocessed: bool = False

    @property
    def partition(self) -> Partition:
        return self.state.partition


def refine_partition(p: ProbAutomaton, semantics: Semantics = Semantics.WEAK, *,
                     protected: Sequence[str] = (), preprocess: bool = False,
                     limit: Optional[int] = None,
                     timings: Optional[Dict[str, float]] = None) -> RefinementOutcome:
    """
    Coarsest weak (or naive weak) bisimulation partition of `p`.

    parameters:
    - protected: state names preprocessing must keep (e.g. the two compared roots)
    - preprocess: eliminate trivially vanishing states first and pin tau self-loop states as
      tangible (weak semantics only)
    - limit: scheduler cap per (state, label); None reads MABISIM_SCHED_LIMIT
    """
    weak = semantics == Semantics.WEAK
    eliminated: Dict[str, NamedDistribution] = {}
    preprocessed = False
    if weak and preprocess:
        with timed_segment("preprocess", timings):
            result = preprocess_with_plan(p, keep=protected)
        p = result.automaton
        eliminated = result.representations
        preprocessed = True
    always = always_tangible_states(p) if weak and preprocess else frozenset()

    cache = GeneratorCache(p, limit)
    with timed_segment("precompute", timings):
        cache.warm(with_candidates=weak)

    part = Partition.single(p.size)
    history = [part]
    rounds = 0
    with timed_segment("refine", timings):
        while True:
            rounds += 1
            if weak:
                rs = tangible_fixpoint(p, part, cache, always)
            else:
                rs = RefinementState(part, frozenset(range(p.size)), {})
            splitter = find_weak_split(p, rs, cache)
            log.debug(
                "refine.round",
                round=rounds,
                blocks=len(part),
                tangible=len(rs.tangible),
                vanishing=len(rs.vanishing),
                splitter=None if splitter is None else str(splitter.action),
            )
            if splitter is None:
                break
            part = refine(part, p, splitter, rs, cache)
            history.append(part)
            if len(history) > p.size:
                raise MaBisimError("refinement exceeded |S|-1 splits")

    return RefinementOutcome(
        automaton=p,
        state=rs,
        rounds=rounds,
        history=tuple(history),
        eliminated=eliminated,
        always_tangible=always,
        preprocessed=preprocessed,
    )


def vanishing_kind(p: ProbAutomaton, s: int, rs: RefinementState) -> str:
    """
    nn-vanishing when the run stored a representation for s; otherwise trivially-vanishing
    if s has a single tau as its only transition (it stays in its class), else tangible.
    """
    if s in rs.vanishing:
        return NN_VANISHING
    return TRIVIALLY_VANISHING if is_trivially_vanishing(p, s) else TANGIBLE


# -------------------- decisions -------------------- #

def resolve_mode(mode: Optional[ChiMode]) -> ChiMode:
    return mode if mode is not None else ChiMode.from_flag(load_settings().chi_zero)


def report_from_outcome(outcome: RefinementOutcome, roots: Tuple[str, str], semantics: Semantics,
                        mode: ChiMode, timings: Dict[str, float]) -> DecisionReport:
    q = outcome.automaton
    rs = outcome.state
    a, b = q.index_of(roots[0]), q.index_of(roots[1])
    return DecisionReport(
        semantics=semantics,
        chi_mode=mode,
        bisimilar=rs.partition.same_block(a, b),
        initial=roots,
        partition=rs.partition.named(q.states),
        tangible=tuple(q.name(s) for s in sorted(rs.tangible)),
        vanishing={q.name(s): to_named(q, nu) for s, nu in sorted(rs.vanishing.items(), key=lambda kv: kv[0])},
        eliminated=dict(outcome.eliminated),
        rounds=outcome.rounds,
        preprocessed=outcome.preprocessed,
        timings=dict(timings),
    )


def _decide(p: ProbAutomaton, roots: Tuple[int, int], semantics: Semantics, mode: ChiMode,
            preprocess: Optional[bool], limit: Optional[int],
            timings: Dict[str, float]) -> DecisionReport:
    if preprocess is None:
        preprocess = load_settings().preprocess
    names = (p.name(roots[0]), p.name(roots[1]))
    outcome = refine_partition(p, semantics, protected=names, preprocess=preprocess, limit=limit, timings=timings)
    report = report_from_outcome(outcome, names, semantics, mode, timings)
    log.info(
        "decide.done",
        semantics=semantics.value,
        verdict=report.verdict,
        rounds=report.rounds,
        blocks=len(report.partition),
    )
    return report


def decide(m1: MarkovAutomaton, m2: MarkovAutomaton, semantics: Semantics = Semantics.WEAK,
           mode: Optional[ChiMode] = None, *, preprocess: Optional[bool] = None,
           limit: Optional[int] = None) -> DecisionReport:
    """
    Compare the initial states of m1 and m2 in the direct sum PA(m1) ⊕ PA(m2).

    notes:
    - State names in the report carry the P1./P2. summand prefixes.
    - mode None reads MABISIM_CHI_ZERO; preprocess None reads MABISIM_PREPROCESS.
    """
    mode = resolve_mode(mode)
    timings: Dict[str, float] = {}
    with timed_segment("to_pa", timings):
        p1, p2 = as_pa(m1, mode), as_pa(m2, mode)
        summed, offset = direct_sum(p1, p2)
    return _decide(summed, (p1.initial, offset + p2.initial), semantics, mode, preprocess, limit, timings)


def decide_weak(m1: MarkovAutomaton, m2: MarkovAutomaton, mode: Optional[ChiMode] = None, *,
                preprocess: Optional[bool] = None, limit: Optional[int] = None) -> DecisionReport:
    return decide(m1, m2, Semantics.WEAK, mode, preprocess=preprocess, limit=limit)


def decide_naive(m1: MarkovAutomaton, m2: MarkovAutomaton, mode: Optional[ChiMode] = None, *,
                 limit: Optional[int] = None) -> DecisionReport:
    return decide(m1, m2, Semantics.NAIVE, mode, preprocess=False, limit=limit)


def decide_within(m: Union[MarkovAutomaton, ProbAutomaton], s: str, t: str,
                  semantics: Semantics = Semantics.WEAK, mode: Optional[ChiMode] = None, *,
                  preprocess: Optional[bool] = None, limit: Optional[int] = None) -> DecisionReport:
    """Compare two states of one automaton (no direct sum, names unprefixed)."""
    mode = resolve_mode(mode)
    timings: Dict[str, float] = {}
    with timed_segment("to_pa", timings):
        p = as_pa(m, mode)
    return _decide(p, (p.index_of(s), p.index_of(t)), semantics, mode, preprocess, limit, timings)


__all__ = [
    "TANGIBLE",
    "TRIVIALLY_VANISHING",
    "NN_VANISHING",
    "RefinementState",
    "Splitter",
    "GeneratorCache",
    "RefinementOutcome",
    "modified_automaton",
    "find_vanishing_representation",
    "tangible_fixpoint",
    "find_weak_split",
    "refine",
    "always_tangible_states",
    "is_trivially_vanishing",
    "preprocess",
    "preprocess_with_plan",
    "refine_partition",
    "vanishing_kind",
    "report_from_outcome",
    "resolve_mode",
    "decide",
    "decide_weak",
    "decide_naive",
    "decide_within",
]
