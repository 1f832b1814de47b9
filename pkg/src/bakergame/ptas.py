"""Game-driven approximation solvers with exact baselines.

Each solver follows a strategy move by move.  A Delete splits the
problem into "smallest vertex chosen / not chosen" branches on the
shrunken graph; a Restrict tries every interval cover of the proposed
layering, solves the slices independently one level deeper, and keeps
the best combination.  Margins make the slice unions legal: demand is
split along mid-margins (which tile the label line), and existential
requirements are confined to core margins, far enough from interval
ends that distinct slices cannot interfere.

The accumulated loss is one (1 +/- eps_level) factor per Restrict, and
the window schedule makes those products converge to 1 +/- 1/k.
"""

import pickle
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .covers import Cover, margin, occupied_intervals, plan_dp
from .game import DELETE, GameState, apply_delete, apply_restrict
from .graph import OrderedGraph
from .sequences import ScheduleSeq

INFEASIBLE = None


class PtasError(ValueError):
    pass


class OracleError(PtasError):
    pass


class BudgetExceededError(RuntimeError):
    pass


@dataclass(frozen=True)
class DomSetInstance:
    """Minimize |A|: A must dominate every demand vertex (closed
    neighborhoods) and intersect every hit-set."""

    graph: OrderedGraph
    demand: frozenset
    hits: tuple = ()

    def __post_init__(self):
        vs = self.graph.vertex_set
        if not frozenset(self.demand) <= vs:
            raise PtasError("demand outside the graph")
        for h in self.hits:
            if not frozenset(h) <= vs:
                raise PtasError("hit-set outside the graph")

    @staticmethod
    def full(graph):
        return DomSetInstance(graph, graph.vertex_set, ())


@dataclass(frozen=True)
class ISInstance:
    """Maximize |A|: A independent and disjoint from forbidden."""

    graph: OrderedGraph
    forbidden: frozenset = frozenset()

    def __post_init__(self):
        if not frozenset(self.forbidden) <= self.graph.vertex_set:
            raise PtasError("forbidden set outside the graph")

    @staticmethod
    def full(graph):
        return ISInstance(graph, frozenset())


@dataclass(frozen=True)
class ColorInstance:
    """Maximize the vertices of an induced subgraph properly colored
    with one color from each vertex's list."""

    graph: OrderedGraph
    colors: int
    lists: tuple  # tuple of (vertex, frozenset of colors), sorted by vertex

    def __post_init__(self):
        if dict(self.lists).keys() != set(self.graph.vertex_set):
            raise PtasError("lists do not match the vertex set")

    @staticmethod
    def full(graph, c):
        full = frozenset(range(1, c + 1))
        return ColorInstance(graph, c, tuple((v, full) for v in graph.vertices))

    def list_of(self, v):
        return dict(self.lists)[v]


@dataclass(frozen=True)
class EpsSchedule:
    """Per-round slack: eps_i = 2**(-i) / (k+1), so that the products
    prod(1 + eps_i) and prod(1 - eps_i) stay within 1 +/- 1/k."""

    k: int

    def eps(self, i):
        return Fraction(1, (self.k + 1) * 2**i)

    def ell(self, problem, i):
        return ScheduleSeq(problem, self.k).at(i)

    def check_products(self, levels=64):
        up = Fraction(1)
        down = Fraction(1)
        for i in range(1, levels + 1):
            up *= 1 + self.eps(i)
            down *= 1 - self.eps(i)
        return up <= 1 + Fraction(1, self.k) and down >= 1 - Fraction(1, self.k)


def ratio_bound(problem, k):
    """Guaranteed ratio against the optimum: an upper bound factor for
    minimization, a lower bound factor for maximization."""
    if problem == "domset":
        return 1 + Fraction(1, k)
    if problem in ("mis", "ccolorable"):
        return 1 - Fraction(1, k)
    raise PtasError("unknown problem %r" % problem)


@dataclass
class Solution:
    problem: str
    feasible: bool
    vertices: frozenset = frozenset()
    colors: dict | None = None
    provenance: list = field(default_factory=list)

    @property
    def size(self):
        return len(self.vertices)


class _Limits:
    __slots__ = ("deadline", "max_nodes", "nodes")

    def __init__(self, deadline=None, max_nodes=None):
        self.deadline = deadline
        self.max_nodes = max_nodes
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise BudgetExceededError("node budget exhausted")
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceededError("time budget exhausted")


# ---------------------------------------------------------------------------
# cover enumeration shared by the solvers

_SENSITIVE_OFFSETS = (0, 1, 2)


def _candidate_residues(ell, r, labels):
    """Residues whose covers can slice the occupied label range in
    distinct ways.  For windows much longer than the range, all but a
    handful of residues see every label deep inside a single interval,
    so only boundary-crossing alignments (plus one representative of
    the generic alignment, which the offset 2r produces) are listed."""
    lo, hi = min(labels), max(labels)
    span = hi - lo
    step = ell - 2 * r
    if step <= 6 * (span + 4 * r + 4):
        return list(range(step))
    offs = set(_SENSITIVE_OFFSETS)
    offs.update((r, r + 1, 2 * r, 2 * r + 1))
    offs.update((ell - 1, ell - 2, ell - 3, ell - 1 - r, ell - 1 - 2 * r, ell - 2 - 2 * r))
    cands = set()
    for off in offs:
        for pos in range(lo - 1, hi + 2):
            s = pos - off
            if lo - ell + 1 <= s <= hi:
                cands.add(s % step)
    return sorted(cands)


def _dedup_covers(ell, r, lam):
    """Yield (residue, intervals) with distinct slicing signatures,
    smallest residue first."""
    labels = sorted(set(lam.values()))
    by_label = {}
    for v, lab in lam.items():
        by_label.setdefault(lab, []).append(v)
    seen = set()
    for residue in _candidate_residues(ell, r, labels):
        cover = Cover(ell, r, residue)
        intervals = occupied_intervals(cover, lam)
        sig = []
        for iv in intervals:
            sl = frozenset(
                v for lab in labels if iv[0] <= lab <= iv[1] for v in by_label[lab]
            )
            mlo, mhi = margin(iv, r)
            mid = frozenset(
                v for lab in labels if mlo <= lab <= mhi for v in by_label[lab]
            )
            clo, chi = margin(iv, 2 * r)
            core = frozenset(
                v for lab in labels if clo <= lab <= chi for v in by_label[lab]
            )
            # one-label trim matters when r = 0 (interior-keeping slices)
            ilo, ihi = margin(iv, 1)
            interior = frozenset(
                v for lab in labels if ilo <= lab <= ihi for v in by_label[lab]
            )
            sig.append((sl, mid, core, interior))
        sig = tuple(sig)
        if sig not in seen:
            seen.add(sig)
            yield residue, intervals


def _preimage(lam, graph, lo, hi):
    return frozenset(v for v in graph.vertices if lo <= lam[v] <= hi)


# ---------------------------------------------------------------------------
# dominating set


def slice_domset(inst, lam, interval, r, assigned_hits):
    """Restrict a dominating-set instance to one cover interval:
    demand shrinks to the mid-margin, and each hit-set assigned to this
    interval must be met inside the core margin."""
    g = inst.graph
    keep = _preimage(lam, g, *interval)
    mid = _preimage(lam, g, *margin(interval, r))
    core = _preimage(lam, g, *margin(interval, 2 * r))
    hits = []
    for h in assigned_hits:
        h2 = frozenset(h) & core
        if not h2:
            return INFEASIBLE
        hits.append(h2)
    return DomSetInstance(g.induced(keep), frozenset(inst.demand) & mid, tuple(hits))


def _dom_rec(inst, strat, state, memo, limits):
    limits.tick()
    g = state.graph
    if g.n == 0:
        if inst.hits:
            return INFEASIBLE
        return (0, frozenset(), [])
    key = None
    if memo is not None:
        key = (
            pickle.dumps((strat, state.round, g.vertices)),
            inst.demand,
            frozenset(inst.hits),
        )
        if key in memo:
            return memo[key]
    action = strat.next_action(state)
    if action.kind == DELETE:
        v = g.smallest()
        ns = apply_delete(state)
        strat_a = strat.fork()
        strat_a.observe(action, None, ns)
        strat.observe(action, None, ns)
        live = ns.graph.vertex_set
        # branch: v chosen
        dem_a = inst.demand - g.adj[v] - {v}
        hits_a = tuple(h for h in inst.hits if v not in h)
        res_a = _dom_rec(
            DomSetInstance(ns.graph, dem_a, hits_a), strat_a, ns, memo, limits
        )
        if res_a is not INFEASIBLE:
            res_a = (res_a[0] + 1, res_a[1] | {v}, res_a[2])
        # branch: v not chosen
        res_b = INFEASIBLE
        hits_b = [h - {v} for h in inst.hits]
        if all(hits_b):
            ok = True
            if v in inst.demand:
                newhit = g.adj[v] & live
                if newhit:
                    hits_b.append(newhit)
                else:
                    ok = False
            if ok:
                res_b = _dom_rec(
                    DomSetInstance(ns.graph, inst.demand - {v}, tuple(hits_b)),
                    strat,
                    ns,
                    memo,
                    limits,
                )
        if res_a is INFEASIBLE:
            out = res_b
        elif res_b is INFEASIBLE or res_a[0] < res_b[0]:
            out = res_a
        else:
            out = res_b
    else:
        out = _dom_restrict(inst, strat, state, action, memo, limits)
    if memo is not None:
        memo[key] = out
    return out


def _dom_restrict(inst, strat, state, action, memo, limits):
    lam = action.layering
    ell = state.rseq.head
    r = 1
    t = len(inst.hits)
    best = INFEASIBLE
    best_residue = None
    for residue, intervals in _dedup_covers(ell, r, lam):
        # which hit-sets can be met inside which interval's core
        avail = []
        for j in range(t):
            opts = []
            for i, iv in enumerate(intervals):
                core = _preimage(lam, state.graph, *margin(iv, 2 * r))
                if inst.hits[j] & core:
                    opts.append(i)
            avail.append(opts)
        if any(not o for o in avail):
            continue
        tables = []
        feasible_cover = True
        for i, iv in enumerate(intervals):
            slice_state = apply_restrict(state, lam, iv)
            table = {}
            for tup in _tuples_for_interval(t, i, avail):
                assigned = [inst.hits[j] for j in range(t) if tup[j]]
                sub = slice_domset(inst, lam, iv, r, assigned)
                if sub is INFEASIBLE:
                    continue
                fork = strat.fork()
                fork.observe(action, iv, slice_state)
                res = _dom_rec(
                    sub,
                    fork,
                    slice_state,
                    memo,
                    limits,
                )
                if res is not INFEASIBLE:
                    table[tup] = res
            if not table:
                feasible_cover = False
                break
            tables.append((iv, table))
        if not feasible_cover:
            continue
        plan = plan_dp(
            [(iv, {tup: res[0] for tup, res in tbl.items()}) for iv, tbl in tables],
            (1,) * t,
            "min",
        )
        if plan is INFEASIBLE:
            continue
        assignment, _total = plan
        union = frozenset()
        prov = []
        for iv, tbl in tables:
            res = tbl[assignment[iv]]
            union |= res[1]
            prov.extend(res[2])
        cand = (len(union), union, prov)
        if best is INFEASIBLE or cand[0] < best[0]:
            best = cand
            best_residue = residue
    if best is INFEASIBLE:
        return INFEASIBLE
    for x in inst.demand:
        assert x in best[1] or state.graph.adj[x] & best[1], (
            "combined slices fail to dominate vertex %d" % x
        )
    entry = {"round": state.round + 1, "ell": ell, "residue": best_residue}
    return (best[0], best[1], [entry] + best[2])


def _tuples_for_interval(t, i, avail):
    """0/1 tuples over the hit-sets where j may be 1 only if interval i
    can host hit-set j."""
    tuples = [()]
    for j in range(t):
        opts = (0, 1) if i in avail[j] else (0,)
        tuples = [tup + (b,) for tup in tuples for b in opts]
    return tuples


# ---------------------------------------------------------------------------
# independent set


def slice_mis(inst, lam, interval, r):
    g = inst.graph
    keep = _preimage(lam, g, *interval)
    core = _preimage(lam, g, *margin(interval, 2 * r))
    forb = (frozenset(inst.forbidden) | (keep - core)) & keep
    return ISInstance(g.induced(keep), forb)


def _mis_rec(inst, strat, state, memo, limits):
    limits.tick()
    g = state.graph
    if g.n == 0:
        return (0, frozenset(), [])
    key = None
    if memo is not None:
        key = (pickle.dumps((strat, state.round, g.vertices)), inst.forbidden)
        if key in memo:
            return memo[key]
    action = strat.next_action(state)
    if action.kind == DELETE:
        v = g.smallest()
        ns = apply_delete(state)
        strat_a = strat.fork()
        strat_a.observe(action, None, ns)
        strat.observe(action, None, ns)
        live = ns.graph.vertex_set
        res_a = None
        if v not in inst.forbidden:
            sub = ISInstance(ns.graph, (inst.forbidden | g.adj[v]) & live)
            ra = _mis_rec(sub, strat_a, ns, memo, limits)
            res_a = (ra[0] + 1, ra[1] | {v}, ra[2])
        sub_b = ISInstance(ns.graph, inst.forbidden - {v})
        res_b = _mis_rec(sub_b, strat, ns, memo, limits)
        out = res_a if res_a is not None and res_a[0] > res_b[0] else res_b
    else:
        lam = action.layering
        ell = state.rseq.head
        r = 1
        best = None
        best_residue = None
        for residue, intervals in _dedup_covers(ell, r, lam):
            union = frozenset()
            prov = []
            for iv in intervals:
                slice_state = apply_restrict(state, lam, iv)
                fork = strat.fork()
                fork.observe(action, iv, slice_state)
                sub = slice_mis(inst, lam, iv, r)
                res = _mis_rec(
                    sub, fork, slice_state, memo, limits
                )
                union |= res[1]
                prov.extend(res[2])
            if best is None or len(union) > best[0]:
                best = (len(union), union, prov)
                best_residue = residue
        assert best is not None
        chosen = best[1]
        assert not (chosen & inst.forbidden)
        for u in chosen:
            assert not (g.adj[u] & chosen), "combined slices are not independent"
        entry = {"round": state.round + 1, "ell": ell, "residue": best_residue}
        out = (best[0], chosen, [entry] + best[2])
    if memo is not None:
        memo[key] = out
    return out


# ---------------------------------------------------------------------------
# induced c-colorable subgraph


def slice_ccolorable(inst, lam, interval):
    """Keep the interior of the interval: one label trimmed from both
    ends, so unions over a non-overlapping cover stay non-adjacent."""
    g = inst.graph
    keep = _preimage(lam, g, *margin(interval, 1))
    lists = dict(inst.lists)
    return ColorInstance(
        g.induced(keep), inst.colors, tuple((v, lists[v]) for v in sorted(keep))
    )


def _col_rec(inst, strat, state, memo, limits):
    limits.tick()
    g = state.graph
    if g.n == 0:
        return (0, {}, [])
    key = None
    if memo is not None:
        key = (pickle.dumps((strat, state.round, g.vertices)), inst.lists)
        if key in memo:
            return memo[key]
    action = strat.next_action(state)
    lists = dict(inst.lists)
    if action.kind == DELETE:
        v = g.smallest()
        ns = apply_delete(state)
        live = sorted(ns.graph.vertex_set)
        strat.observe(action, None, ns)
        # colors with identical occurrence pattern are interchangeable
        groups = {}
        for a in sorted(lists[v]):
            occ = frozenset(u for u in live if a in lists[u])
            groups.setdefault(occ, a)
        best = None
        for a in sorted(groups.values()):
            new_lists = tuple(
                (u, lists[u] - {a} if u in g.adj[v] else lists[u]) for u in live
            )
            fork = strat.fork()
            res = _col_rec(
                ColorInstance(ns.graph, inst.colors, new_lists),
                fork,
                ns,
                memo,
                limits,
            )
            col = dict(res[1])
            col[v] = a
            cand = (res[0] + 1, col, res[2])
            if best is None or cand[0] > best[0]:
                best = cand
        skip_lists = tuple((u, lists[u]) for u in live)
        res = _col_rec(
            ColorInstance(ns.graph, inst.colors, skip_lists),
            strat,
            ns,
            memo,
            limits,
        )
        if best is None or res[0] > best[0]:
            best = res
        out = best
    else:
        lam = action.layering
        ell = state.rseq.head
        best = None
        best_residue = None
        for residue, intervals in _dedup_covers(ell, 0, lam):
            combined = {}
            prov = []
            for iv in intervals:
                inner = margin(iv, 1)
                if inner[0] > inner[1]:
                    continue
                slice_state = apply_restrict(state, lam, inner)
                fork = strat.fork()
                fork.observe(action, inner, slice_state)
                sub = slice_ccolorable(inst, lam, iv)
                res = _col_rec(
                    sub, fork, slice_state, memo, limits
                )
                combined.update(res[1])
                prov.extend(res[2])
            if best is None or len(combined) > best[0]:
                best = (len(combined), combined, prov)
                best_residue = residue
        assert best is not None
        coloring = best[1]
        for u, a in coloring.items():
            assert a in lists[u]
            for w in g.adj[u]:
                assert coloring.get(w) != a, "combined slices collide on an edge"
        entry = {"round": state.round + 1, "ell": ell, "residue": best_residue}
        out = (best[0], coloring, [entry] + best[2])
    if memo is not None:
        memo[key] = out
    return out


# ---------------------------------------------------------------------------
# public solver entry points


def _make_limits(deadline_seconds=None, max_nodes=None):
    # long delete stretches recurse one level per round
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 100000))
    dl = None if deadline_seconds is None else time.monotonic() + deadline_seconds
    return _Limits(dl, max_nodes)


def solve_domset(inst, strategy, k, memo=False, deadline_seconds=None, max_nodes=None):
    state = GameState(inst.graph, ScheduleSeq("domset", k))
    limits = _make_limits(deadline_seconds, max_nodes)
    res = _dom_rec(inst, strategy.fork(), state, {} if memo else None, limits)
    if res is INFEASIBLE:
        return Solution("domset", False)
    return Solution("domset", True, res[1], None, res[2])


def solve_mis(inst, strategy, k, memo=False, deadline_seconds=None, max_nodes=None):
    state = GameState(inst.graph, ScheduleSeq("mis", k))
    limits = _make_limits(deadline_seconds, max_nodes)
    res = _mis_rec(inst, strategy.fork(), state, {} if memo else None, limits)
    return Solution("mis", True, res[1], None, res[2])


def solve_ccolorable(
    inst, strategy, k, memo=False, deadline_seconds=None, max_nodes=None
):
    state = GameState(inst.graph, ScheduleSeq("ccolorable", k))
    limits = _make_limits(deadline_seconds, max_nodes)
    res = _col_rec(inst, strategy.fork(), state, {} if memo else None, limits)
    return Solution(
        "ccolorable", True, frozenset(res[1]), dict(sorted(res[1].items())), res[2]
    )


def verify_solution(problem, inst, solution):
    """Polynomial feasibility check; never trusts the solver."""
    g = inst.graph
    if not solution.feasible:
        return problem == "domset"
    if not solution.vertices <= g.vertex_set:
        return False
    if problem == "domset":
        for x in inst.demand:
            if x not in solution.vertices and not (g.adj[x] & solution.vertices):
                return False
        for h in inst.hits:
            if not (frozenset(h) & solution.vertices):
                return False
        return True
    if problem == "mis":
        if solution.vertices & inst.forbidden:
            return False
        for u in solution.vertices:
            if g.adj[u] & solution.vertices:
                return False
        return True
    if problem == "ccolorable":
        col = solution.colors or {}
        if frozenset(col) != solution.vertices:
            return False
        lists = dict(inst.lists)
        for u, a in col.items():
            if a not in lists[u]:
                return False
            for w in g.adj[u]:
                if col.get(w) == a:
                    return False
        return True
    raise PtasError("unknown problem %r" % problem)


# ---------------------------------------------------------------------------
# exact baselines (small inputs only)


def oracle_domset(inst, cap=25):
    """Exact minimum size, or INFEASIBLE.  Branches over the smallest
    unmet requirement, which is complete for hitting-set search."""
    g = inst.graph
    if g.n > cap:
        raise OracleError("baseline limited to %d vertices" % cap)
    constraints = [frozenset([x]) | g.adj[x] for x in sorted(inst.demand)]
    constraints += [frozenset(h) for h in inst.hits]
    if any(not c for c in constraints):
        return INFEASIBLE
    best = [None]

    def go(chosen, cons):
        if not cons:
            if best[0] is None or len(chosen) < len(best[0]):
                best[0] = frozenset(chosen)
            return
        if best[0] is not None and len(chosen) + 1 >= len(best[0]):
            return
        c = min(cons, key=lambda s: (len(s), sorted(s)))
        for v in sorted(c):
            chosen.append(v)
            go(chosen, [s for s in cons if v not in s])
            chosen.pop()

    go([], constraints)
    if best[0] is None:
        return INFEASIBLE
    return best[0]


def oracle_mis(inst, cap=25):
    """Exact maximum independent set avoiding the forbidden vertices."""
    g = inst.graph
    if g.n > cap:
        raise OracleError("baseline limited to %d vertices" % cap)
    allowed = frozenset(g.vertex_set - inst.forbidden)
    best = [frozenset()]

    def go(chosen, remaining):
        if len(chosen) + len(remaining) <= len(best[0]):
            return
        if not remaining:
            if len(chosen) > len(best[0]):
                best[0] = frozenset(chosen)
            return
        v = max(sorted(remaining), key=lambda u: len(g.adj[u] & remaining))
        go(chosen | {v}, remaining - g.adj[v] - {v})
        go(chosen, remaining - {v})

    go(frozenset(), allowed)
    return best[0]


def _list_colorable(g, vs, lists):
    order = sorted(vs, key=lambda v: -len(g.adj[v] & vs))
    assignment = {}

    def go(i):
        if i == len(order):
            return True
        v = order[i]
        for a in sorted(lists[v]):
            if any(assignment.get(w) == a for w in g.adj[v]):
                continue
            assignment[v] = a
            if go(i + 1):
                return True
            del assignment[v]
        return False

    if go(0):
        return dict(assignment)
    return None


def oracle_ccolorable(inst, cap=15):
    """Exact largest induced subgraph colorable from the lists."""
    from itertools import combinations

    g = inst.graph
    if g.n > cap:
        raise OracleError("baseline limited to %d vertices" % cap)
    lists = dict(inst.lists)
    vs = list(g.vertices)
    for size in range(g.n, -1, -1):
        for combo in combinations(vs, size):
            sub = frozenset(combo)
            col = _list_colorable(g.induced(sub), sub, lists)
            if col is not None:
                return sub, col
    return frozenset(), {}
