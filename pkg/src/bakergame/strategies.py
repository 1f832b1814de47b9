"""Winning strategies for the deleting side, built compositionally.

Each strategy is a small state machine: next_action(state) proposes a
move, observe(action, reply, new_state) advances the private memory
once the referee has resolved it, and fork() duplicates the memory so
adversarial search and branching solvers can explore replies
independently.  Graphs and sequences are immutable, so forking only
copies the mutable bookkeeping.

The composite strategies mimic an inner game: the clique-sum strategy
simulates play on its base, the quotient strategy simulates play on
the contracted graph and translates contracted moves into a Restrict
plus a burst of padding Deletes.  Round bounds for each composition
are computed from descriptors by round_bound.
"""

import copy
import math
from collections import deque
from dataclasses import dataclass
from functools import partial

from .game import Action, GameState, DELETE, apply_delete, apply_restrict
from .graph import (
    GeodesicPartition,
    GraphError,
    OrderedGraph,
    check_chordal_ordering,
    check_geodesic_partition,
    extend_geodesic_layering,
    quotient,
    spread_componentwise_layering,
    bfs_layering,
    validate_embedding,
)
from .sequences import PairedSeq, SequenceError, ThinnedSeq


class StrategyError(RuntimeError):
    pass


# A sequence index this large can only be reached after more rounds
# than any refereed game allows; treat queries beyond it as divergence.
SEQUENCE_INDEX_LIMIT = 10**7


class DestroyerStrategy:
    descriptor = None

    def next_action(self, state):
        raise NotImplementedError

    def observe(self, action, reply, new_state):
        pass

    def fork(self):
        return copy.deepcopy(self)


# ---------------------------------------------------------------------------
# descriptors and round bounds


@dataclass(frozen=True)
class EdgelessD:
    pass


@dataclass(frozen=True)
class ChordalD:
    d: int


@dataclass(frozen=True)
class ChainD:
    """k consecutive layers, each inducing a chordal piece of
    left-degree <= d, glued bottom-up along cliques."""

    d: int
    k: int


@dataclass(frozen=True)
class CliqueSumD:
    base: object
    leaf: object


@dataclass(frozen=True)
class QuotientD:
    inner: object
    d: int


@dataclass(frozen=True)
class DistortionD:
    dim: int
    beta: float


@dataclass(frozen=True)
class SubgraphD:
    host: object


def minor_free_descriptor(k):
    return QuotientD(ChordalD(k - 2), k - 2)


def _sat(v, cap):
    return v if cap is None else min(v, cap + 1)


def _rb(desc, r, cap):
    if isinstance(desc, EdgelessD):
        return 2
    if isinstance(desc, ChordalD):
        if desc.d <= 0:
            return 2
        k = r.at(2)
        if cap is not None and k > cap:
            return cap + 1
        return _sat(_rb(ChainD(desc.d - 1, k), r.tail(2), cap) + 2, cap)
    if isinstance(desc, ChainD):
        if desc.k <= 1:
            return _rb(ChordalD(desc.d), r, cap)
        t1 = _rb(ChainD(desc.d, desc.k - 1), PairedSeq(r), cap)
        if cap is not None and t1 > cap:
            return cap + 1
        t2 = _rb(ChordalD(desc.d), r.tail(2 * t1 + 1), cap)
        return _sat(2 * t1 + t2 + 1, cap)
    if isinstance(desc, CliqueSumD):
        t1 = _rb(desc.base, PairedSeq(r), cap)
        if cap is not None and t1 > cap:
            return cap + 1
        t2 = _rb(desc.leaf, r.tail(2 * t1 + 1), cap)
        return _sat(2 * t1 + t2 + 1, cap)
    if isinstance(desc, QuotientD):
        th = ThinnedSeq(r, desc.d)
        m = _rb(desc.inner, th, cap)
        if cap is not None and m > cap:
            return cap + 1
        return _sat(th.index(m), cap)
    if isinstance(desc, DistortionD):
        prod = 1
        for i in range(1, desc.dim + 1):
            prod *= desc.beta * r.at(i) + 1
        return desc.dim + math.floor(prod)
    if isinstance(desc, SubgraphD):
        return _rb(desc.host, r, cap)
    raise StrategyError("unknown descriptor %r" % (desc,))


def round_bound(desc, rseq, cap=None):
    """Rounds within which the described strategy wins, at worst.

    With cap given, any value above cap is reported as cap + 1 and the
    computation short-circuits, which also keeps sequence queries from
    diverging on fast-growing schedules.
    """
    try:
        return _rb(desc, rseq, cap)
    except (SequenceError, OverflowError):
        if cap is None:
            raise
        return cap + 1


# ---------------------------------------------------------------------------
# elementary strategies


class EdgelessStrategy(DestroyerStrategy):
    """Restrict once with labels spaced head apart (at most one vertex
    per reply window), then delete."""

    descriptor = EdgelessD()

    def __init__(self):
        self.phase = "restrict"

    def next_action(self, state):
        if self.phase == "restrict":
            if state.graph.m:
                raise StrategyError("graph has edges")
            if state.graph.n <= 1:
                # nothing to separate
                self.phase = "delete"
                return Action.delete()
            try:
                h = state.rseq.head
            except SequenceError:
                # the window dwarfs any label spacing we could write down
                self.phase = "delete"
                return Action.delete()
            lam = {v: (i + 1) * h for i, v in enumerate(state.graph.vertices)}
            return Action.restrict(lam)
        return Action.delete()

    def observe(self, action, reply, new_state):
        if action.kind != DELETE:
            self.phase = "delete"


def strategy_edgeless():
    return EdgelessStrategy()


def strategy_chordal(d):
    if d <= 0:
        return EdgelessStrategy()
    return ChordalStrategy(d)


def _make_chain(layers, d):
    """Strategy for a graph split into consecutive layers, each layer
    inducing a chordal piece of left-degree <= d-1, with every lower
    prefix acting as a clique-sum base for the components above it."""
    layers = [frozenset(p) for p in layers if p]
    if len(layers) <= 1:
        return strategy_chordal(d - 1)
    base = frozenset().union(*layers[:-1])
    return CliqueSumStrategy(
        base=base,
        inner=_make_chain(layers[:-1], d),
        leaf_factory=partial(strategy_chordal, d - 1),
        inner_descriptor=ChainD(d - 1, len(layers) - 1),
    )


class ChordalStrategy(DestroyerStrategy):
    """For chordal ordered graphs of left-degree <= d: isolate one
    component, restrict to few levels of a breadth-first layering, then
    peel the surviving levels as a chain of clique-sums over pieces of
    left-degree <= d-1."""

    def __init__(self, d):
        if d < 1:
            raise StrategyError("use strategy_edgeless for d = 0")
        self.d = d
        self.descriptor = ChordalD(d)
        self.phase = "spread"
        self.bfs_lam = None
        self.delegate = None
        self.checked = False

    def next_action(self, state):
        if self.delegate is not None:
            return self.delegate.next_action(state)
        g = state.graph
        if not self.checked:
            ok, ld = check_chordal_ordering(g)
            if not ok:
                raise StrategyError("ordering is not chordal")
            if ld > self.d:
                raise StrategyError("left-degree %d exceeds %d" % (ld, self.d))
            self.checked = True
        if self.phase == "spread":
            if g.is_connected():
                # the spread Restrict could not separate anything
                self.phase = "bfs"
            else:
                lam = spread_componentwise_layering(g, state.rseq.head)
                return Action.restrict(lam)
        # one component remains, so g is connected
        lam = bfs_layering(g, g.smallest())
        span = max(lam.values()) - min(lam.values()) + 1
        try:
            fits = span <= state.rseq.head
        except SequenceError:
            fits = True
        if fits:
            # every level already fits one window, peel them directly
            labels = sorted(set(lam.values()))
            layers = [
                frozenset(v for v in g.vertices if lam[v] == lab) for lab in labels
            ]
            self.delegate = _make_chain(layers, self.d)
            return self.delegate.next_action(state)
        self.bfs_lam = lam
        return Action.restrict(lam)

    def observe(self, action, reply, new_state):
        if self.delegate is not None:
            self.delegate.observe(action, reply, new_state)
            return
        if self.phase == "spread":
            self.phase = "bfs"
            return
        live = new_state.graph.vertex_set
        labels = sorted({self.bfs_lam[v] for v in live})
        layers = [
            frozenset(v for v in live if self.bfs_lam[v] == lab) for lab in labels
        ]
        self.delegate = _make_chain(layers, self.d)


class CliqueSumStrategy(DestroyerStrategy):
    """For graphs glued from a base class along cliques: alternate a
    componentwise Restrict with one simulated move on the base.  When
    the surviving component misses the base entirely, hand over to a
    fresh leaf strategy for the attached piece.  All strategies here
    read the sequence from the state, so no alignment padding is
    needed before the handover."""

    def __init__(self, base, inner, leaf_factory, inner_descriptor=None):
        self.base = frozenset(base)
        self.inner = inner
        self.leaf_factory = leaf_factory
        self.inner_descriptor = inner_descriptor
        self.descriptor = CliqueSumD(
            inner_descriptor if inner_descriptor is not None else getattr(inner, "descriptor", None),
            None,
        )
        self.sim_rseq = None
        self.j = 0
        self.phase = "spread"
        self.pending = None
        self.leaf = None
        self.exhausted = False

    def next_action(self, state):
        if self.exhausted:
            return Action.delete()
        if self.leaf is not None:
            return self.leaf.next_action(state)
        if self.sim_rseq is None:
            self.sim_rseq = PairedSeq(state.rseq)
        g = state.graph
        bp = self.base & g.vertex_set
        if not bp:
            self.leaf = self.leaf_factory()
            return self.leaf.next_action(state)
        try:
            if self.phase == "spread":
                if g.is_connected():
                    # nothing to separate, go straight to the simulation
                    self.phase = "mimic"
                else:
                    lam = spread_componentwise_layering(g, state.rseq.head)
                    self.pending = ("spread", None)
                    return Action.restrict(lam)
            sim_state = GameState(g.induced(bp), self.sim_rseq.tail(self.j), self.j)
            a = self.inner.next_action(sim_state)
        except SequenceError:
            # the simulated windows grew past anything computable;
            # plain deletions still finish the game
            self.exhausted = True
            return Action.delete()
        if a.kind == DELETE:
            if g.smallest() != min(bp):
                raise StrategyError("smallest vertex lies outside the base")
            self.pending = ("inner-delete", a)
            return Action.delete()
        lam_star = a.layering
        lam = dict(lam_star)
        for comp in g.induced(g.vertex_set - bp).components():
            anchors = sorted(z for z in bp if g.adj[z] & comp)
            if not anchors:
                raise StrategyError("component not attached to the base")
            for v in comp:
                lam[v] = lam_star[anchors[0]]
        self.pending = ("inner-restrict", a)
        return Action.restrict(lam)

    def observe(self, action, reply, new_state):
        if self.exhausted:
            return
        if self.leaf is not None:
            self.leaf.observe(action, reply, new_state)
            return
        tag, inner_action = self.pending if self.pending else (None, None)
        self.pending = None
        if tag == "spread":
            self.phase = "mimic"
            return
        live = new_state.graph.vertex_set
        self.j += 1
        sim_new = GameState(
            new_state.graph.induced(self.base & live), self.sim_rseq.tail(self.j), self.j
        )
        inner_reply = None if tag == "inner-delete" else reply
        try:
            self.inner.observe(inner_action, inner_reply, sim_new)
        except SequenceError:
            self.exhausted = True
        self.base &= live
        self.phase = "spread"


def strategy_cliquesum(base, inner, leaf_factory, inner_descriptor=None):
    return CliqueSumStrategy(base, inner, leaf_factory, inner_descriptor)


class QuotientStrategy(DestroyerStrategy):
    """Plays on a graph carrying a width-d geodesic partition by
    simulating a game on the quotient.  A contracted Restrict lifts
    through the partition; a contracted Delete of the first part turns
    into a Restrict on the extension of that part's stored layering.
    Either way a burst of d * head padding Deletes keeps the real
    sequence aligned with the thinned one the simulation reads."""

    def __init__(self, inner, gp, d):
        self.inner = inner
        self.gp = gp
        self.d = d
        self.descriptor = QuotientD(getattr(inner, "descriptor", None), d)
        self.part_of = {v: i for i, p in enumerate(gp.parts) for v in p}
        self.h = gp.quotient_graph
        self.sim_rseq = None
        self.j = 0
        self.padding = 0
        self.pending = None
        self.exhausted = False

    def next_action(self, state):
        if self.exhausted:
            return Action.delete()
        if self.sim_rseq is None:
            if not check_geodesic_partition(state.graph, self.gp, self.d):
                raise StrategyError("not a width-%d geodesic partition" % self.d)
            self.sim_rseq = ThinnedSeq(state.rseq, self.d)
        if self.padding > 0:
            return Action.delete()
        sim_state = GameState(self.h, self.sim_rseq.tail(self.j), self.j)
        try:
            a = self.inner.next_action(sim_state)
            head = state.rseq.head
        except SequenceError:
            # windows past anything computable; deletions still finish
            self.exhausted = True
            return Action.delete()
        if a.kind == DELETE:
            p = self.h.smallest()
            live = self.gp.parts[p] & state.graph.vertex_set
            lam_p = {v: self.gp.part_layerings[p][v] for v in live}
            ext = extend_geodesic_layering(state.graph, live, lam_p)
            self.pending = ("inner-delete", a, head)
            return Action.restrict(ext)
        lam_h = a.layering
        lam = {v: lam_h[self.part_of[v]] for v in state.graph.vertices}
        self.pending = ("inner-restrict", a, head)
        return Action.restrict(lam)

    def observe(self, action, reply, new_state):
        if self.exhausted:
            return
        if self.padding > 0:
            self.padding -= 1
            return
        tag, a, head = self.pending
        self.pending = None
        self.j += 1
        try:
            if tag == "inner-delete":
                new_h = self.h.induced(self.h.vertex_set - {self.h.smallest()})
                self.inner.observe(
                    a, None, GameState(new_h, self.sim_rseq.tail(self.j), self.j)
                )
            else:
                lo, hi = reply
                keep = [p for p in self.h.vertices if lo <= a.layering[p] <= hi]
                new_h = self.h.induced(keep)
                self.inner.observe(
                    a, reply, GameState(new_h, self.sim_rseq.tail(self.j), self.j)
                )
        except SequenceError:
            self.exhausted = True
            return
        self.h = new_h
        self.padding = self.d * head


def strategy_quotient(inner, gp, d):
    return QuotientStrategy(inner, gp, d)


class DistortionStrategy(DestroyerStrategy):
    """One coordinate Restrict per embedding axis, then deletes; the
    embedding guarantees few survivors once every axis is pinned."""

    def __init__(self, embedding):
        self.emb = embedding
        self.descriptor = DistortionD(embedding.dim, embedding.beta)
        self.axis = 0
        self.heads = []
        self.checked = False

    def next_action(self, state):
        if not self.checked:
            validate_embedding(state.graph, self.emb)
            self.checked = True
        if self.axis < self.emb.dim:
            lam = self.emb.coordinate_layering(state.graph, self.axis)
            self.heads.append(state.rseq.head)
            return Action.restrict(lam)
        return Action.delete()

    def observe(self, action, reply, new_state):
        if action.kind == DELETE or self.axis >= self.emb.dim:
            return
        self.axis += 1
        if self.axis == self.emb.dim:
            cap = 1
            for h in self.heads:
                cap *= self.emb.beta * h + 1
            if new_state.graph.n > cap:
                raise StrategyError(
                    "%d survivors exceed the %d guaranteed by the embedding"
                    % (new_state.graph.n, math.floor(cap))
                )


def strategy_distortion(embedding):
    return DistortionStrategy(embedding)


class SubgraphStrategy(DestroyerStrategy):
    """Drives a host strategy on a supergraph with a dominating
    sequence and copies its moves down to the actual game."""

    def __init__(self, host_strategy, host_state):
        self.host = host_strategy
        self.host_state = host_state
        self.descriptor = SubgraphD(getattr(host_strategy, "descriptor", None))
        self.pending = None
        self.checked = False

    def next_action(self, state):
        hg = self.host_state.graph
        if not self.checked:
            if not state.graph.vertex_set <= hg.vertex_set:
                raise StrategyError("vertices missing from the host graph")
            for u, v in state.graph.edge_list():
                if not hg.has_edge(u, v):
                    raise StrategyError("edge (%d,%d) missing from the host" % (u, v))
            self.checked = True
        if state.rseq.head > self.host_state.rseq.head:
            raise StrategyError("sequence not dominated by the host sequence")
        a = self.host.next_action(self.host_state)
        self.pending = a
        if a.kind == DELETE:
            return Action.delete()
        lam = {v: a.layering[v] for v in state.graph.vertices}
        return Action.restrict(lam)

    def observe(self, action, reply, new_state):
        a = self.pending
        self.pending = None
        if a.kind == DELETE:
            ns = apply_delete(self.host_state)
            self.host.observe(a, None, ns)
        else:
            ns = apply_restrict(self.host_state, a.layering, reply)
            self.host.observe(a, reply, ns)
        self.host_state = ns
        self.checked = False  # subgraph may shrink arbitrarily; recheck


def strategy_subgraph(host_strategy, host_state):
    return SubgraphStrategy(host_strategy, host_state)


# ---------------------------------------------------------------------------
# geodesic partition construction for graphs without a small clique minor


@dataclass(frozen=True)
class MinorWitness:
    """k connected, pairwise adjacent branch sets in the input graph."""

    k: int
    branch_sets: tuple


def verify_minor_witness(graph, witness):
    sets = [frozenset(s) for s in witness.branch_sets]
    if len(sets) != witness.k:
        return False
    for i, a in enumerate(sets):
        if not a or not graph.induced(a).is_connected():
            return False
        for b in sets[i + 1 :]:
            if a & b:
                return False
            if not any(graph.adj[v] & b for v in a):
                return False
    return True


@dataclass(frozen=True)
class PartitionResult:
    graph: OrderedGraph  # reordered copy of the input
    perm: dict  # old id -> new id
    gp: GeodesicPartition


def chordal_geodesic_partition(graph, k):
    """Build a width-(k-2) geodesic partition whose quotient is chordal
    with left-degree <= k-2, or return a MinorWitness showing K_k is a
    minor.  The input is reordered; perm maps old ids to new ids.

    Each processed piece carries at most k-2 pairwise adjacent boundary
    parts.  The new part is the union of breadth-first tree paths from
    one shallowest contact per boundary part down to the root, so its
    depth layering has width at most max(k-2, 1).
    """
    if k < 3:
        raise GraphError("need k >= 3, got %d" % k)
    d = k - 2
    part_sets = []
    part_depths = []
    queue = deque((comp, ()) for comp in graph.components())
    while queue:
        comp, boundary = queue.popleft()
        if boundary:
            last = part_sets[boundary[-1]]
            cand = sorted(v for v in comp if graph.adj[v] & last)
            root = cand[0]
        else:
            root = min(comp)
        sub = graph.induced(comp)
        depth = sub.bfs_distances(root)
        parent = {}
        for v in sorted(comp):
            if v != root:
                parent[v] = min(w for w in sub.adj[v] if depth[w] == depth[v] - 1)
        part = {root}
        for q in boundary:
            qset = part_sets[q]
            x = min(
                (v for v in comp if graph.adj[v] & qset),
                key=lambda v: (depth[v], v),
            )
            while x != root:
                part.add(x)
                x = parent[x]
        idx = len(part_sets)
        part_sets.append(frozenset(part))
        part_depths.append({v: depth[v] for v in part})
        rest = sub.induced(comp - part)
        for child in rest.components():
            near = tuple(
                q
                for q in list(boundary) + [idx]
                if any(graph.adj[v] & child for v in part_sets[q])
            )
            if len(near) > d:
                branch = tuple(part_sets[q] for q in near[: k - 1]) + (child,)
                return MinorWitness(k, branch)
            queue.append((child, near))
    order = []
    for i, p in enumerate(part_sets):
        order.extend(sorted(p, key=lambda v: (part_depths[i][v], v)))
    perm = {v: i for i, v in enumerate(order)}
    adj = {
        perm[v]: frozenset(perm[w] for w in graph.adj[v]) for v in graph.vertices
    }
    newg = OrderedGraph(range(graph.n), _adj=adj)
    newg.annotations.update(
        {name: frozenset(perm[v] for v in s) for name, s in graph.annotations.items()}
    )
    parts = tuple(frozenset(perm[v] for v in p) for p in part_sets)
    layerings = tuple(
        {perm[v]: dep for v, dep in part_depths[i].items()} for i in range(len(parts))
    )
    gp = GeodesicPartition(parts, layerings, quotient(newg, parts))
    return PartitionResult(newg, perm, gp)


def strategy_minor_free(graph, k):
    """Return (reordered graph, strategy, perm) or a MinorWitness."""
    res = chordal_geodesic_partition(graph, k)
    if isinstance(res, MinorWitness):
        return res
    return res.graph, QuotientStrategy(strategy_chordal(k - 2), res.gp, k - 2), res.perm


# ---------------------------------------------------------------------------
# descriptor text grammar used by the command line


def _split_args(text):
    depth = 0
    out = []
    cur = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def parse_descriptor(text, embedding=None):
    """Text form -> descriptor; minorfree:<k> maps to its quotient form."""
    text = text.strip()
    if text == "edgeless":
        return EdgelessD()
    if text.startswith("chordal:"):
        return ChordalD(int(text.split(":", 1)[1]))
    if text.startswith("minorfree:"):
        return minor_free_descriptor(int(text.split(":", 1)[1]))
    if text == "distortion":
        if embedding is None:
            raise StrategyError("distortion needs an embedding")
        return DistortionD(embedding.dim, embedding.beta)
    if text.startswith("cliquesum(") and text.endswith(")"):
        a, b = _split_args(text[len("cliquesum(") : -1])
        return CliqueSumD(parse_descriptor(a, embedding), parse_descriptor(b, embedding))
    if text.startswith("quotient(") and text.endswith(")"):
        a, b = _split_args(text[len("quotient(") : -1])
        return QuotientD(parse_descriptor(a, embedding), int(b))
    raise StrategyError("unknown strategy descriptor %r" % text)


def build_strategy(text, graph, embedding=None):
    """Instantiate the described strategy for graph.

    Returns (graph_to_play_on, strategy, perm or None).  minorfree may
    reorder the graph; a MinorWitness is returned instead when the
    requested clique minor exists.
    """
    text = text.strip()
    if text == "edgeless":
        return graph, EdgelessStrategy(), None
    if text.startswith("chordal:"):
        return graph, strategy_chordal(int(text.split(":", 1)[1])), None
    if text.startswith("minorfree:"):
        res = strategy_minor_free(graph, int(text.split(":", 1)[1]))
        if isinstance(res, MinorWitness):
            return res
        g2, strat, perm = res
        return g2, strat, perm
    if text == "distortion":
        if embedding is None:
            raise StrategyError("distortion needs an embedding")
        return graph, DistortionStrategy(embedding), None
    if text.startswith("cliquesum(") and text.endswith(")"):
        a, b = _split_args(text[len("cliquesum(") : -1])
        _, inner, _ = build_strategy(a, graph, embedding)
        leaf_factory = partial(_build_fresh, b, graph, embedding)
        strat = CliqueSumStrategy(
            graph.vertex_set, inner, leaf_factory, parse_descriptor(a, embedding)
        )
        strat.descriptor = parse_descriptor(text, embedding)
        return graph, strat, None
    if text.startswith("quotient(") and text.endswith(")"):
        a, b = _split_args(text[len("quotient(") : -1])
        d = int(b)
        parts = tuple(frozenset([v]) for v in graph.vertices)
        layerings = tuple({v: 0} for v in graph.vertices)
        gp = GeodesicPartition(parts, layerings, quotient(graph, parts))
        _, inner, _ = build_strategy(a, graph, embedding)
        strat = QuotientStrategy(inner, gp, d)
        strat.descriptor = parse_descriptor(text, embedding)
        return graph, strat, None
    raise StrategyError("unknown strategy descriptor %r" % text)


def _build_fresh(text, graph, embedding):
    return build_strategy(text, graph, embedding)[1]
