"""The two-player delete/restrict game: states, refereed play, minimax.

One side (the strategy) either Deletes the smallest vertex or proposes
a layering; the other side (the preserver) answers a Restrict with an
interval of at most head(r) consecutive labels, and play continues on
the induced subgraph with the tail of the sequence.  The strategy wins
when the graph is empty.
"""

import copy
import random
from dataclasses import dataclass, field

from .graph import OrderedGraph, require_layering


class GameError(ValueError):
    pass


class IllegalActionError(GameError):
    pass


DELETE = "delete"
RESTRICT = "restrict"


@dataclass(frozen=True)
class Action:
    kind: str
    layering: dict | None = None

    @staticmethod
    def delete():
        return Action(DELETE)

    @staticmethod
    def restrict(layering):
        return Action(RESTRICT, dict(layering))


@dataclass(frozen=True)
class GameState:
    graph: OrderedGraph
    rseq: object
    round: int = 0

    @property
    def finished(self):
        return self.graph.n == 0


def apply_delete(state):
    if state.finished:
        raise IllegalActionError("game already over")
    return GameState(state.graph.delete_smallest(), state.rseq.tail(1), state.round + 1)


def apply_restrict(state, layering, interval):
    """Preserver chose interval (lo, hi); keep exactly those labels."""
    if state.finished:
        raise IllegalActionError("game already over")
    require_layering(state.graph, layering, "proposed layering")
    lo, hi = interval
    if hi - lo + 1 > state.rseq.head:
        raise IllegalActionError(
            "interval length %d exceeds head %d" % (hi - lo + 1, state.rseq.head)
        )
    keep = [v for v in state.graph.vertices if lo <= layering[v] <= hi]
    return GameState(state.graph.induced(keep), state.rseq.tail(1), state.round + 1)


def legal_replies(state, layering):
    """Canonical preserver replies: intervals of length exactly head
    starting in [minLabel - head + 1, maxLabel], deduplicated by the
    vertex set they keep (first start wins).

    The start range is walked via the label positions where the kept
    set changes, so huge heads cost nothing.
    """
    require_layering(state.graph, layering, "proposed layering")
    head = state.rseq.head
    labels = sorted(set(layering.values()))
    lo, hi = labels[0], labels[-1]
    starts = set()
    for lab in labels:
        for s in (lab, lab - head + 1):
            if lo - head + 1 <= s <= hi:
                starts.add(s)
    starts.add(lo - head + 1)
    out = []
    seen = set()
    for s in sorted(starts):
        iv = (s, s + head - 1)
        kept = frozenset(v for v in state.graph.vertices if s <= layering[v] <= iv[1])
        if kept and kept not in seen:
            seen.add(kept)
            out.append((iv, kept))
    return out


@dataclass
class TranscriptEntry:
    round: int
    action: str
    layering: dict | None
    reply: tuple | None
    vertices_after: tuple

    def to_json(self):
        d = {
            "round": self.round,
            "action": self.action,
            "n": len(self.vertices_after),
            "vertices": list(self.vertices_after),
        }
        if self.action == RESTRICT:
            d["reply"] = list(self.reply)
            d["layering"] = {str(v): lab for v, lab in sorted(self.layering.items())}
        return d

    def to_line(self):
        reply = "-" if self.reply is None else "[%d,%d]" % self.reply
        return "round %d | action %s | reply %s | n %d" % (
            self.round,
            self.action,
            reply,
            len(self.vertices_after),
        )


@dataclass
class Transcript:
    initial_vertices: tuple
    entries: list = field(default_factory=list)
    outcome: str = "unfinished"  # win | budget_exceeded | invalid
    diagnostic: str = ""

    @property
    def rounds(self):
        return len(self.entries)

    def to_lines(self):
        lines = [e.to_line() for e in self.entries]
        lines.append("outcome %s" % self.outcome)
        return lines

    def to_json(self):
        return {
            "initial_vertices": list(self.initial_vertices),
            "rounds": self.rounds,
            "outcome": self.outcome,
            "diagnostic": self.diagnostic,
            "entries": [e.to_json() for e in self.entries],
        }

    def replay(self, state):
        """Re-apply the recorded moves and check the vertex sets match."""
        for e in self.entries:
            if e.action == DELETE:
                state = apply_delete(state)
            else:
                lam = {int(v): lab for v, lab in e.layering.items()}
                state = apply_restrict(state, lam, tuple(e.reply))
            if tuple(state.graph.vertices) != tuple(e.vertices_after):
                raise GameError("replay diverges at round %d" % e.round)
        return state


class Preserver:
    def choose(self, state, layering, replies):
        raise NotImplementedError


class FirstPreserver(Preserver):
    def choose(self, state, layering, replies):
        return replies[0][0]


class LastPreserver(Preserver):
    def choose(self, state, layering, replies):
        return replies[-1][0]


class MaxKeepPreserver(Preserver):
    """Keeps as many vertices as possible (first such interval)."""

    def choose(self, state, layering, replies):
        return max(replies, key=lambda p: (len(p[1]), -p[0][0]))[0]


class RandomPreserver(Preserver):
    def __init__(self, seed):
        self.rng = random.Random(seed)

    def choose(self, state, layering, replies):
        return self.rng.choice(replies)[0]


def parse_preserver(text):
    if text == "first":
        return FirstPreserver()
    if text == "last":
        return LastPreserver()
    if text == "max":
        return MaxKeepPreserver()
    if text.startswith("random:"):
        return RandomPreserver(int(text.split(":", 1)[1]))
    raise GameError("unknown preserver %r" % text)


DEFAULT_BUDGET = 10**4


def play(strategy, preserver, state, budget=DEFAULT_BUDGET):
    """Referee a full game; returns a Transcript."""
    t = Transcript(initial_vertices=tuple(state.graph.vertices))
    while not state.finished:
        if t.rounds >= budget:
            t.outcome = "budget_exceeded"
            t.diagnostic = "no win within %d rounds" % budget
            return t
        try:
            action = strategy.next_action(state)
        except Exception as exc:  # structural violation inside a strategy
            t.outcome = "invalid"
            t.diagnostic = "strategy error: %s" % exc
            return t
        if action.kind == DELETE:
            new_state = apply_delete(state)
            reply = None
            lam = None
        elif action.kind == RESTRICT:
            lam = action.layering
            try:
                replies = legal_replies(state, lam)
            except GameError as exc:
                t.outcome = "invalid"
                t.diagnostic = str(exc)
                return t
            reply = preserver.choose(state, lam, replies)
            new_state = apply_restrict(state, lam, reply)
        else:
            t.outcome = "invalid"
            t.diagnostic = "unknown action kind %r" % action.kind
            return t
        try:
            strategy.observe(action, reply, new_state)
        except Exception as exc:
            t.outcome = "invalid"
            t.diagnostic = "strategy error: %s" % exc
            return t
        t.entries.append(
            TranscriptEntry(
                round=new_state.round,
                action=action.kind,
                layering=lam,
                reply=reply,
                vertices_after=tuple(new_state.graph.vertices),
            )
        )
        state = new_state
    t.outcome = "win"
    return t


def minimax_rounds(strategy, state, cap=DEFAULT_BUDGET):
    """Worst case number of rounds over all canonical preserver replies.

    Returns cap + 1 when some line of play exceeds cap rounds.
    """
    memo = {}

    def key_of(strat, st):
        import pickle

        try:
            blob = pickle.dumps((strat, st.rseq), protocol=4)
        except Exception:
            return None
        return (st.graph.vertices, blob)

    def go(strat, st, remaining):
        if st.finished:
            return 0
        if remaining <= 0:
            return 1  # saturate: one more round than allowed
        k = key_of(strat, st)
        if k is not None and k in memo:
            cached_rem, cached_val = memo[k]
            # cached value is exact if it was computed with enough headroom
            if cached_val <= cached_rem or cached_rem >= remaining:
                return cached_val
        action = strat.next_action(st)
        if action.kind == DELETE:
            ns = apply_delete(st)
            strat.observe(action, None, ns)
            val = 1 + go(strat, ns, remaining - 1)
        else:
            lam = action.layering
            worst = 0
            for iv, _kept in legal_replies(st, lam):
                fork = strat.fork()
                ns = apply_restrict(st, lam, iv)
                fork.observe(action, iv, ns)
                worst = max(worst, 1 + go(fork, ns, remaining - 1))
                if worst > remaining:
                    break
            val = worst
        if k is not None:
            memo[k] = (remaining, val)
        return val

    val = go(strategy.fork(), state, cap)
    return min(val, cap + 1)
