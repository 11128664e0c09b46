import numpy as np
import pytest

from kplexls.bandit import BanditState
from kplexls.forbid import DtccTracker, OpenTracker
from kplexls.graph import Graph
from kplexls.oracle import exact_max_kplex
from kplexls.search import SearchConfig, construct_init, search, solve_bdcc
from kplexls.solution import Action, CandidateSolution, Move, is_kplex

from conftest import complete_graph, cycle_graph, path_graph, random_graph


def two_triangles():
    return Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


def fresh_state(g, k=1, seed=0, strategy="dtcc"):
    rng = np.random.default_rng(seed)
    tracker = DtccTracker(g) if strategy == "dtcc" else OpenTracker(g)
    tracker.reset()
    bandit = BanditState(g.n)
    op_times = np.zeros(g.n, dtype=np.int64)
    return rng, tracker, bandit, op_times


class TestConstructInit:
    def test_complete_graph_builds_everything(self):
        g = complete_graph(5)
        rng, _, _, op_times = fresh_state(g)
        sol = construct_init(g, 1, op_times, rng)
        assert sol.members_set() == set(range(5))

    def test_single_vertex_graph(self):
        g = Graph(1, [])
        rng, _, _, op_times = fresh_state(g)
        sol = construct_init(g, 2, op_times, rng)
        assert sol.members_set() == {0}

    def test_small_graph_sample_capped(self):
        g = path_graph(5)  # fewer than 100 live vertices
        rng, _, _, op_times = fresh_state(g)
        sol = construct_init(g, 1, op_times, rng)
        assert is_kplex(sol.members_set(), g, 1)

    def test_seed_prefers_min_op_times(self):
        g = Graph(3, [])  # no edges: the seed is the whole solution
        rng = np.random.default_rng(0)
        op_times = np.array([5, 0, 5], dtype=np.int64)
        for _ in range(10):
            sol = construct_init(g, 1, op_times, rng)
            assert sol.members_set() == {1}

    def test_result_is_add_maximal(self):
        rng = np.random.default_rng(61)
        for _ in range(50):
            g = random_graph(int(rng.integers(2, 15)), 0.5, rng)
            k = int(rng.integers(1, 4))
            op_times = np.zeros(g.n, dtype=np.int64)
            sol = construct_init(g, k, op_times, rng)
            assert is_kplex(sol.members_set(), g, k)
            from kplexls.solution import classify
            assert len(classify(sol, g).add) == 0

    def test_empty_graph_rejected(self):
        g = Graph(2, [(0, 1)])
        g.kill(0)
        g.kill(1)
        rng = np.random.default_rng(0)
        with pytest.raises(ValueError, match="no live"):
            construct_init(g, 1, np.zeros(2, dtype=np.int64), rng)


class TestSearch:
    def test_k5_reached_quickly(self):
        g = complete_graph(5)
        rng, tracker, bandit, op_times = fresh_state(g)
        sol = CandidateSolution.from_members(g, 1, {0})
        tracker.begin_search()
        result = search(g, sol, tracker, bandit, op_times, depth=100, rng=rng)
        assert result.best == set(range(5))
        assert result.steps <= 4
        assert op_times.sum() == result.steps  # one bump per applied action

    def test_disjoint_triangle_returns_immediately(self):
        g = two_triangles()
        rng, tracker, bandit, op_times = fresh_state(g)
        sol = CandidateSolution.from_members(g, 1, {0, 1, 2})
        tracker.begin_search()
        result = search(g, sol, tracker, bandit, op_times, depth=100, rng=rng)
        assert result.best == {0, 1, 2}
        assert result.steps == 0

    def test_zero_depth_returns_init(self):
        g = complete_graph(5)
        rng, tracker, bandit, op_times = fresh_state(g)
        sol = CandidateSolution.from_members(g, 1, {2})
        result = search(g, sol, tracker, bandit, op_times, depth=0, rng=rng)
        assert result.best == {2}
        assert result.steps == 0

    def test_all_forbidden_returns_immediately(self):
        class NothingAllowedTracker(OpenTracker):
            def allowed_mask(self):
                return np.zeros(self.g.n, dtype=bool)

        g = complete_graph(5)
        tracker = NothingAllowedTracker(g)
        tracker.reset()
        bandit = BanditState(g.n)
        op_times = np.zeros(g.n, dtype=np.int64)
        sol = CandidateSolution.from_members(g, 1, {0})
        result = search(g, sol, tracker, bandit, op_times, depth=100,
                        rng=np.random.default_rng(0))
        assert result.best == {0}  # boundary nonempty, everything forbidden
        assert result.steps == 0

    def test_only_allowed_vertices_are_chosen(self):
        class EvenOnlyTracker(OpenTracker):
            def allowed_mask(self):
                mask = np.zeros(self.g.n, dtype=bool)
                mask[::2] = True
                return mask

        rng = np.random.default_rng(67)
        g = random_graph(12, 0.6, rng)
        tracker = EvenOnlyTracker(g)
        tracker.reset()
        bandit = BanditState(g.n)
        op_times = np.zeros(g.n, dtype=np.int64)
        sol = CandidateSolution(g, 2)
        sol.add_vertex(0)
        search(g, sol, tracker, bandit, op_times, depth=200, rng=rng)
        assert (op_times[1::2] == 0).all()

    def test_stale_walk_discarded_at_entry(self):
        g = complete_graph(4)
        rng, tracker, bandit, op_times = fresh_state(g)
        bandit.record(Action(Move.PERTURB, 0))  # leftover from a dead episode
        sol = CandidateSolution.from_members(g, 1, {1})
        search(g, sol, tracker, bandit, op_times, depth=0, rng=rng)
        assert bandit.walk == []
        assert (bandit.q == 0).all()

    def test_peeled_vertices_never_touched(self):
        # clique 0..4 with a pendant path 5-6; threshold 4 kills the path
        edges = [(u, v) for u in range(5) for v in range(u + 1, 5)]
        edges += [(4, 5), (5, 6)]
        g = Graph(7, edges)
        from kplexls.graph import peel
        peel(g, k=1, lb=4)
        assert set(g.live_vertices().tolist()) == {0, 1, 2, 3, 4}
        rng, tracker, bandit, op_times = fresh_state(g)
        for _ in range(5):
            sol = construct_init(g, 1, op_times, rng)
            assert sol.members_set() <= {0, 1, 2, 3, 4}
            tracker.begin_search()
            search(g, sol, tracker, bandit, op_times, depth=50, rng=rng)
        assert op_times[5] == 0 and op_times[6] == 0

    def test_intermediate_states_feasible_with_checks_on(self):
        rng = np.random.default_rng(71)
        for _ in range(10):
            g = random_graph(14, 0.5, rng)
            tracker = DtccTracker(g)
            tracker.reset()
            bandit = BanditState(g.n)
            op_times = np.zeros(g.n, dtype=np.int64)
            sol = construct_init(g, 2, op_times, rng)
            search(g, sol, tracker, bandit, op_times, depth=300, rng=rng,
                   check_invariants=True)


class TestSolveBdcc:
    def test_k4(self):
        report = solve_bdcc(complete_graph(4), SearchConfig(k=2, cutoff=5.0, seed=1))
        assert report.best_size == 4
        assert report.proven_optimal
        assert report.total_time < 1.0

    def test_cycle(self):
        report = solve_bdcc(cycle_graph(5), SearchConfig(k=2, cutoff=1.0, seed=2))
        assert report.best_size == 3

    def test_edgeless(self):
        report = solve_bdcc(Graph(5, []), SearchConfig(k=2, cutoff=1.0, seed=1))
        assert report.best_size == 2
        assert report.proven_optimal

    def test_best_is_kplex_of_original_graph(self):
        rng = np.random.default_rng(73)
        for _ in range(20):
            g = random_graph(int(rng.integers(2, 15)), 0.5, rng)
            k = int(rng.integers(1, 4))
            report = solve_bdcc(
                g, SearchConfig(k=k, cutoff=0.3, seed=int(rng.integers(1, 100)))
            )
            assert is_kplex(report.best, g, k)
            assert len(report.best) == report.best_size
            assert g.live_count == g.n  # caller's graph is untouched

    def test_trajectory_strictly_increasing(self):
        rng = np.random.default_rng(79)
        for _ in range(10):
            g = random_graph(14, 0.6, rng)
            report = solve_bdcc(g, SearchConfig(k=2, cutoff=0.5, seed=7))
            sizes = [s for _, s in report.size_trajectory]
            assert sizes == sorted(set(sizes))
            assert sizes[-1] == report.best_size

    def test_never_exceeds_oracle(self):
        rng = np.random.default_rng(83)
        for _ in range(25):
            g = random_graph(int(rng.integers(4, 14)), 0.5, rng)
            k = int(rng.integers(1, 5))
            opt = exact_max_kplex(g, k).opt_size
            report = solve_bdcc(g, SearchConfig(k=k, cutoff=0.5, seed=11))
            assert report.best_size <= opt

    def test_matches_oracle_on_most_small_graphs(self):
        rng = np.random.default_rng(89)
        hits = 0
        for _ in range(20):
            g = random_graph(int(rng.integers(6, 14)), 0.5, rng)
            k = int(rng.integers(1, 5))
            opt = exact_max_kplex(g, k).opt_size
            report = solve_bdcc(g, SearchConfig(k=k, cutoff=2.0, seed=13))
            hits += report.best_size == opt
        assert hits >= 19

    def test_seed_determinism_on_proof_terminating_instance(self):
        g = complete_graph(6)
        reports = [
            solve_bdcc(g, SearchConfig(k=2, cutoff=5.0, seed=42)) for _ in range(2)
        ]
        a, b = reports
        assert a.best == b.best
        assert a.iterations == b.iterations
        assert a.restarts == b.restarts
        assert a.proven_optimal and b.proven_optimal

    def test_max_restarts_budget(self):
        report = solve_bdcc(
            cycle_graph(7),
            SearchConfig(k=1, cutoff=30.0, seed=1, max_restarts=5),
        )
        assert report.restarts == 5

    def test_scc_strategy_runs(self):
        report = solve_bdcc(
            complete_graph(4), SearchConfig(k=2, cutoff=2.0, seed=1, strategy="scc")
        )
        assert report.best_size == 4

    def test_ablation_strategies_diverge(self):
        # same seed, different forbidding strength: the search trajectories
        # must actually differ somewhere across a batch of instances
        rng = np.random.default_rng(97)
        differed = False
        for _ in range(10):
            g = random_graph(16, 0.5, rng)
            seed = int(rng.integers(1, 1000))
            runs = {
                s: solve_bdcc(
                    g, SearchConfig(k=2, cutoff=5.0, seed=seed, strategy=s,
                                    max_restarts=3)
                )
                for s in ("dtcc", "scc")
            }
            assert all(is_kplex(r.best, g, 2) for r in runs.values())
            if runs["dtcc"].iterations != runs["scc"].iterations:
                differed = True
        assert differed

    def test_config_validation(self):
        with pytest.raises(ValueError):
            SearchConfig(k=0)
        with pytest.raises(ValueError):
            SearchConfig(k=2, cutoff=0.0)
        with pytest.raises(ValueError):
            SearchConfig(k=2, depth=0)
        with pytest.raises(ValueError):
            SearchConfig(k=2, strategy="tabu")

    def test_empty_graph(self):
        report = solve_bdcc(Graph(0, []), SearchConfig(k=2, cutoff=1.0, seed=1))
        assert report.best_size == 0
        assert report.proven_optimal
        assert report.size_trajectory == []

    def test_k_larger_than_graph(self):
        report = solve_bdcc(path_graph(3), SearchConfig(k=5, cutoff=1.0, seed=1))
        assert report.best_size == 3
        assert report.proven_optimal
