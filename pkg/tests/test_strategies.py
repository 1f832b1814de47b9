import pytest

from bakergame.game import GameState, minimax_rounds, parse_preserver, play
from bakergame.generators import gen_diag_grid, gen_grid, gen_ktree
from bakergame.graph import OrderedGraph, check_chordal_ordering, check_geodesic_partition
from bakergame.sequences import ConstSeq, ScheduleSeq
from bakergame.strategies import (
    ChordalD,
    EdgelessD,
    MinorWitness,
    StrategyError,
    build_strategy,
    chordal_geodesic_partition,
    minor_free_descriptor,
    parse_descriptor,
    round_bound,
    strategy_chordal,
    strategy_distortion,
    strategy_minor_free,
    strategy_subgraph,
    verify_minor_witness,
)


def path(n):
    return OrderedGraph(range(n), [(i, i + 1) for i in range(n - 1)])


def complete(n):
    return OrderedGraph(range(n), [(i, j) for i in range(n) for j in range(i + 1, n)])


def test_round_bound_edgeless():
    assert round_bound(EdgelessD(), ConstSeq(1)) == 2  # [PAPER] restrict + delete


def test_round_bound_chordal_frozen():
    # [DERIVED] from the recurrence bound(d) = chain(d-1, r.at(2)) + 2
    assert round_bound(ChordalD(1), ConstSeq(1)) == 4
    assert round_bound(ChordalD(1), ConstSeq(2)) == 9
    assert round_bound(ChordalD(2), ConstSeq(1)) == 6


def test_round_bound_saturation():
    desc = minor_free_descriptor(5)
    cap = 50
    assert round_bound(desc, ScheduleSeq("mis", 2), cap) == cap + 1


def test_minimax_meets_bounds():
    cases = [
        ("chordal:1", path(5), 1),
        ("chordal:1", path(5), 2),
        ("chordal:2", complete(3), 1),
        ("chordal:2", complete(3), 2),
        ("minorfree:5", gen_grid(3, 3), 1),
    ]
    for text, g, c in cases:
        g2, strat, _ = build_strategy(text, g)
        bound = round_bound(strat.descriptor, ConstSeq(c))
        assert minimax_rounds(strat, GameState(g2, ConstSeq(c))) <= bound


def test_chordal_rejects_wrong_graph():
    c4 = OrderedGraph(range(4), [(0, 1), (1, 2), (2, 3), (0, 3)])
    strat = strategy_chordal(2)
    t = play(strat, parse_preserver("max"), GameState(c4, ConstSeq(1)))
    assert t.outcome == "invalid"
    assert "chordal" in t.diagnostic


def test_chordal_rejects_large_left_degree():
    k4 = complete(4)
    t = play(strategy_chordal(2), parse_preserver("max"), GameState(k4, ConstSeq(1)))
    assert t.outcome == "invalid"
    assert "left-degree" in t.diagnostic


def test_strategies_win_against_every_preserver():
    graphs = {
        "chordal:2": gen_ktree(9, 2, seed=1),
        "minorfree:5": gen_grid(3, 4),
    }
    for text, g in graphs.items():
        for pres in ("first", "last", "max", "random:5"):
            g2, strat, _ = build_strategy(text, g)
            t = play(strat, parse_preserver(pres), GameState(g2, ConstSeq(2)))
            assert t.outcome == "win", (text, pres, t.diagnostic)


def test_schedule_sequences_still_win():
    g = gen_grid(3, 3)
    g2, strat, _ = build_strategy("minorfree:5", g)
    t = play(strat, parse_preserver("max"), GameState(g2, ScheduleSeq("mis", 2)))
    assert t.outcome == "win"


def test_minor_witness_on_complete_graph():
    res = strategy_minor_free(complete(4), 4)
    assert isinstance(res, MinorWitness)
    assert verify_minor_witness(complete(4), res)
    assert res.k == 4


def test_verify_minor_witness_rejects_bad_sets():
    g = path(4)
    bad = MinorWitness(2, (frozenset({0}), frozenset({3})))  # not adjacent
    assert not verify_minor_witness(g, bad)


def test_decomposition_of_grid():
    g = gen_grid(4, 4)
    res = chordal_geodesic_partition(g, 5)
    assert not isinstance(res, MinorWitness)
    assert check_geodesic_partition(res.graph, res.gp, 3)
    ok, d = check_chordal_ordering(res.gp.quotient_graph)
    assert ok and d <= 3
    # the permutation is a bijection preserving adjacency
    inv = {n: o for o, n in res.perm.items()}
    for u, v in res.graph.edge_list():
        assert g.has_edge(inv[u], inv[v])


def test_distortion_strategy_on_unit_grid():
    g, emb = gen_diag_grid(2)
    strat = strategy_distortion(emb)
    t = play(strat, parse_preserver("max"), GameState(g, ConstSeq(1)))
    assert t.outcome == "win"
    # [PAPER] dim + prod(beta * r_i + 1) = 2 + 4 rounds at most
    assert t.rounds <= 6


def test_distortion_rejects_wrong_embedding():
    g = complete(4)  # K4 cannot sit at unit spacing in this square
    from bakergame.graph import Embedding

    emb = Embedding(2, 1, {0: (0.0, 0.0), 1: (0.0, 2.0), 2: (2.0, 0.0), 3: (2.0, 2.0)})
    t = play(strategy_distortion(emb), parse_preserver("max"), GameState(g, ConstSeq(1)))
    assert t.outcome == "invalid"


def test_subgraph_strategy():
    host, host_strat, _ = build_strategy("minorfree:5", gen_grid(3, 3))
    sub = host.induced({0, 1, 2, 4, 7})
    strat = strategy_subgraph(host_strat, GameState(host, ConstSeq(2)))
    t = play(strat, parse_preserver("max"), GameState(sub, ConstSeq(2)))
    assert t.outcome == "win"


def test_parse_descriptor():
    assert parse_descriptor("edgeless") == EdgelessD()
    assert parse_descriptor("chordal:3") == ChordalD(3)
    nested = parse_descriptor("quotient(chordal:2,2)")
    assert nested.inner == ChordalD(2) and nested.d == 2
    with pytest.raises(StrategyError):
        parse_descriptor("nonsense")


def test_fork_independence():
    g = path(6)
    _, strat, _ = build_strategy("chordal:1", g)
    state = GameState(g, ConstSeq(2))
    a = strat.next_action(state)
    fork = strat.fork()
    assert fork.next_action(state).kind == a.kind
