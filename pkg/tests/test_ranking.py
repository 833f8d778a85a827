"""Rankings, grid sweeps, threshold detection, and comparisons."""
import itertools
import math
import random

import pytest

from lsentropy import (
    DEFAULT_GRID_SPEC,
    Graph,
    Ranking,
    ScoreTable,
    SweepResult,
    compare_rankings,
    default_grid,
    detect_threshold,
    label_sort_key,
    load_edge_list,
    parse_grid,
    rank,
    refine_threshold,
    score_all,
    sweep,
    three_states,
)


def _fake_sweep(grid, orders):
    labels = tuple(sorted({lab for order in orders for lab in order}))
    tables = tuple(
        ScoreTable(q=float(q), labels=labels, scores=(0.0,) * len(labels))
        for q in grid
    )
    return SweepResult(
        grid=tuple(float(q) for q in grid),
        score_tables=tables,
        rankings=tuple(Ranking(tuple(order)) for order in orders),
    )


def _swap(order, i):
    out = list(order)
    out[i], out[i + 1] = out[i + 1], out[i]
    return tuple(out)


def test_label_sort_key_numeric_then_lexicographic():
    labels = ["10", "2", "1a", "b"]
    assert sorted(labels, key=label_sort_key) == ["2", "10", "1a", "b"]


def test_rank_descending_by_score():
    table = ScoreTable(q=1.0, labels=("1", "2", "3"), scores=(3.0, 1.0, 2.0))
    assert rank(table).ordered_labels == ("1", "3", "2")


def test_rank_ties_ascend_numerically():
    table = ScoreTable(q=1.0, labels=("2", "10", "1"), scores=(7.0, 7.0, 7.0))
    assert rank(table).ordered_labels == ("1", "2", "10")


def test_score_table_rejects_length_mismatch():
    with pytest.raises(ValueError):
        ScoreTable(q=1.0, labels=("a",), scores=(1.0, 2.0))


def test_ranking_rejects_duplicates():
    with pytest.raises(ValueError):
        Ranking(("a", "a"))


def test_score_all_matches_pointwise(karate):
    table = score_all(karate, 0.0)
    assert table.scores == tuple(float(d) for d in karate.degrees)


def test_triangle_scores_identical_at_any_q():
    g = load_edge_list("a b\nb c\nc a\n")
    for q in (0.0, 0.7, 1.0, 3.0):
        table = score_all(g, q)
        assert len(set(table.scores)) == 1


def test_q0_first_is_max_degree_node():
    rng = random.Random(9)
    for _ in range(25):
        n = rng.randint(2, 30)
        edges = {(u, rng.randrange(u + 1, n)) for u in range(n - 1)}
        g = Graph.from_edge_labels((str(u), str(v)) for u, v in sorted(edges))
        first = rank(score_all(g, 0.0)).ordered_labels[0]
        assert g.degrees[g.labels.index(first)] == max(g.degrees)


def test_sweep_lengths_and_consistency(karate):
    grid = (0.0, 1.0, 2.0)
    result = sweep(karate, grid)
    assert result.grid == grid
    assert len(result.score_tables) == len(result.rankings) == 3
    for table, ranking in zip(result.score_tables, result.rankings):
        assert rank(table) == ranking


def test_sweep_rejects_bad_grids(karate):
    with pytest.raises(ValueError):
        sweep(karate, ())
    with pytest.raises(ValueError):
        sweep(karate, (1.0, 1.0))
    with pytest.raises(ValueError):
        sweep(karate, (2.0, 1.0))
    with pytest.raises(ValueError):
        sweep(karate, (-1.0, 0.0))
    with pytest.raises(ValueError):
        sweep(karate, (0.0, math.nan))


def test_sweep_parallel_equals_serial(karate):
    grid = parse_grid("0:2:0.5")
    assert sweep(karate, grid, jobs=2) == sweep(karate, grid, jobs=1)


def test_threshold_all_identical_starts_at_first_point():
    order = ("a", "b", "c")
    result = _fake_sweep((0.0, 1.0, 2.0), [order, order, order])
    report = detect_threshold(result)
    assert report.p_value == 0.0
    assert report.suffix_length == 3
    assert report.stable_ranking == Ranking(order)


def test_threshold_suffix_rule_picks_fourth_point():
    base = ("a", "b", "c")
    orders = [("c", "b", "a"), ("b", "a", "c"), ("a", "c", "b"), base, base]
    report = detect_threshold(_fake_sweep((0.0, 0.5, 1.0, 1.5, 2.0), orders))
    assert report.p_value == 1.5
    assert report.suffix_length == 2


def test_threshold_single_final_point_never_counts():
    orders = [("a", "b"), ("b", "a")]
    report = detect_threshold(_fake_sweep((0.0, 1.0), orders))
    assert report.p_value is None
    assert report.stable_ranking is None
    assert report.suffix_length == 1


def test_threshold_requires_two_grid_points():
    with pytest.raises(ValueError):
        detect_threshold(_fake_sweep((1.0,), [("a", "b")]))


def test_threshold_relaxed_tolerates_sporadic_adjacent_swaps():
    base = tuple(str(i) for i in range(30))
    orders = [
        tuple(reversed(base)),  # far from stable
        base,
        _swap(base, 0),  # single adjacent swap: tau = 433/435
        _swap(base, 10),
        base,
    ]
    grid = (0.0, 1.0, 2.0, 3.0, 4.0)
    exact = detect_threshold(_fake_sweep(grid, orders))
    assert exact.p_value is None
    # two swaps apart (tau = 431/435) exceeds the 0.005 budget, one does not
    relaxed = detect_threshold(_fake_sweep(grid, orders), relaxed_tau=0.005)
    assert relaxed.p_value == 3.0
    assert relaxed.suffix_length == 2
    looser = detect_threshold(_fake_sweep(grid, orders), relaxed_tau=0.01)
    assert looser.p_value == 1.0
    assert looser.suffix_length == 4


def test_threshold_relaxed_tau_bounds():
    result = _fake_sweep((0.0, 1.0), [("a", "b"), ("a", "b")])
    for bad in (0.0, -0.01, 0.051, 1.0):
        with pytest.raises(ValueError):
            detect_threshold(result, relaxed_tau=bad)


def test_refine_at_first_grid_point_returns_it():
    g = load_edge_list(
        "\n".join(f"{u} {v}" for u, v in itertools.combinations("12345", 2))
    )
    result = sweep(g, (0.0, 1.0, 2.0))
    report = detect_threshold(result)
    assert report.p_value == 0.0
    assert refine_threshold(g, result, report) == 0.0


def test_refine_without_threshold_returns_none():
    g = load_edge_list("a b\n")
    result = _fake_sweep((0.0, 1.0), [("a", "b"), ("b", "a")])
    report = detect_threshold(result)
    assert refine_threshold(g, result, report) is None


def test_refine_narrows_between_grid_points(karate):
    # coarse grid: stability is only known somewhere inside (0, 9]
    result = sweep(karate, (0.0, 9.0, 10.0))
    report = detect_threshold(result)
    assert report.p_value == 9.0
    refined = refine_threshold(karate, result, report)
    assert refined < 9.0
    assert rank(score_all(karate, refined)) == report.stable_ranking


def test_three_states_path_center_first():
    g = load_edge_list("a b\nb c\n")
    states = three_states(g, (0.0, 1.0, 2.0, 3.0))
    for order in (states.order_q0, states.order_q1, states.order_stable):
        assert order.ordered_labels[0] == "b"


def test_three_states_complete_graph_all_identical():
    g = load_edge_list(
        "\n".join(f"{u} {v}" for u, v in itertools.combinations("12345", 2))
    )
    states = three_states(g, (0.0, 1.0, 2.0))
    assert states.order_q0 == states.order_q1 == states.order_stable


def test_three_states_requires_zero_and_one(karate):
    with pytest.raises(ValueError):
        three_states(karate, (0.5, 1.0))
    with pytest.raises(ValueError):
        three_states(karate, (0.0, 0.5))


def test_extending_grid_never_lowers_p_value(karate):
    base = default_grid()
    extended = base + (11.0, 12.0, 15.0, 20.0)
    p_base = detect_threshold(sweep(karate, base)).p_value
    p_ext = detect_threshold(sweep(karate, extended)).p_value
    assert p_ext >= p_base


def _tau_oracle(a, b):
    pos_a = {lab: i for i, lab in enumerate(a)}
    pos_b = {lab: i for i, lab in enumerate(b)}
    concordant = discordant = 0
    for x, y in itertools.combinations(list(pos_a), 2):
        sign = (pos_a[x] - pos_a[y]) * (pos_b[x] - pos_b[y])
        if sign > 0:
            concordant += 1
        else:
            discordant += 1
    return (concordant - discordant) / (concordant + discordant)


def test_compare_identity():
    ranking = Ranking(("1", "2", "3", "4"))
    result = compare_rankings(ranking, ranking)
    assert result.kendall_tau == 1.0
    assert result.top_k_overlap == {5: 1.0, 10: 1.0}


def test_compare_reversal():
    a = Ranking(tuple(str(i) for i in range(1, 13)))
    b = Ranking(tuple(reversed(a.ordered_labels)))
    result = compare_rankings(a, b)
    assert result.kendall_tau == pytest.approx(-1.0)
    assert result.top_k_overlap[5] == 0.0
    assert result.top_k_overlap[10] == pytest.approx(0.8)


def test_compare_single_swap_matches_pair_enumeration():
    a = Ranking(("1", "2", "3", "4"))
    b = Ranking(("1", "3", "2", "4"))
    result = compare_rankings(a, b)
    assert result.kendall_tau == pytest.approx(_tau_oracle(a.ordered_labels, b.ordered_labels))
    assert result.kendall_tau == pytest.approx(4 / 6, abs=1e-12)


def test_compare_random_permutations_match_pair_enumeration():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(2, 12)
        labels = [str(i) for i in range(n)]
        a, b = labels[:], labels[:]
        rng.shuffle(a)
        rng.shuffle(b)
        got = compare_rankings(Ranking(tuple(a)), Ranking(tuple(b))).kendall_tau
        assert got == pytest.approx(_tau_oracle(a, b), abs=1e-12)


def test_compare_overlap_caps_at_node_count():
    a = Ranking(("1", "2", "3"))
    b = Ranking(("3", "2", "1"))
    result = compare_rankings(a, b)
    # top-5 and top-10 both degrade to top-3 here
    assert result.top_k_overlap == {5: 1.0, 10: 1.0}


def test_compare_single_node_tau_convention():
    ranking = Ranking(("a",))
    assert compare_rankings(ranking, ranking).kendall_tau == 1.0


def test_compare_rejects_mismatched_label_sets():
    with pytest.raises(ValueError, match="b, c"):
        compare_rankings(Ranking(("a", "b")), Ranking(("a", "c")))


def test_parse_grid_default_has_43_points():
    grid = default_grid()
    assert grid == parse_grid(DEFAULT_GRID_SPEC)
    assert len(grid) == 43
    assert grid[0] == 0.0
    assert grid[-1] == 10.0
    assert all(a < b for a, b in zip(grid, grid[1:]))
    # segment boundaries: 0..2 by 0.1, 2.2..4 by 0.2, 4.5..10 by 0.5
    assert grid[1] == 0.1
    assert 2.0 in grid and 2.2 in grid and 2.1 not in grid
    assert 4.5 in grid and 4.25 not in grid


def test_parse_grid_values_and_ranges():
    assert parse_grid("1") == (1.0,)
    assert parse_grid("0,0.5,2") == (0.0, 0.5, 2.0)
    assert parse_grid("0:1:0.25") == (0.0, 0.25, 0.5, 0.75, 1.0)
    # endpoint excluded when the step does not land on it
    assert parse_grid("0:1:0.3") == (0.0, 0.3, 0.6, 0.9)
    assert parse_grid("0,0.5:1.5:0.5,9") == (0.0, 0.5, 1.0, 1.5, 9.0)


def test_parse_grid_rejects_malformed_specs():
    for bad in ("", "abc", "1:2", "1:2:0", "1:2:-1", "2,1", "1,1", "0:1:0.5:2"):
        with pytest.raises(ValueError):
            parse_grid(bad)
