import math

import numpy as np
import pytest
from mock import Mock, patch

import egretswarm.esoa as esoa
from egretswarm.harness import RunConfig
from egretswarm.helpers import ConfigError, DomainError
from egretswarm.metrics import Metrics
from egretswarm.problems import Fitness, evaluate
from egretswarm.problems.benchmarks import make_benchmark
from egretswarm.rng import RandomSource


def _squad(x, w=None, problem=None):
    x = np.array(x, dtype=float)
    problem = problem or make_benchmark(1, len(x))
    w = np.zeros(len(x)) if w is None else np.array(w, dtype=float)
    return esoa.SquadState(x, evaluate(problem, x), w)


def _swarm(squads, t_max=10):
    streams = [RandomSource(0).split(i) for i in range(len(squads))]
    return esoa.SwarmState(squads, streams, t_max)


def _draws(*values):
    rng = Mock()
    rng.uniform.side_effect = list(values)
    return rng


def _config(population=5, max_iterations=20):
    return RunConfig(population=population, max_iterations=max_iterations)


def test_estimate():
    assert esoa.estimate(np.zeros(3), [4.0, 5.0, 6.0]) == 0
    assert esoa.estimate([1, 1, 1], [2, 3, 4]) == 9
    assert esoa.estimate([2], [-3]) == -6
    with pytest.raises(DomainError):
        esoa.estimate([1, 2], [1, 2, 3])


def test_practical_gradient():
    g_hat, d_hat = esoa.practical_gradient([0.0, 0.0], [1.0, 2.0], -1.0)
    assert list(g_hat) == [1.0, 2.0]
    assert list(d_hat) == pytest.approx([1 / math.sqrt(5), 2 / math.sqrt(5)])


def test_practical_gradient_exact_estimate():
    g_hat, d_hat = esoa.practical_gradient([1.0, 2.0], [1.0, 2.0], 5.0)
    assert not np.any(g_hat)
    assert not np.any(d_hat)


def test_practical_gradient_non_finite():
    with pytest.raises(DomainError):
        esoa.practical_gradient([1.0], [1.0], float('inf'))
    with pytest.raises(DomainError):
        esoa.practical_gradient([float('nan')], [1.0], 0.0)


def test_practical_gradient_matches_finite_differences():
    rng = np.random.default_rng(2022)
    for _ in range(100):
        n = rng.integers(1, 12)
        w = rng.uniform(-1, 1, n)
        x = rng.uniform(-2, 2, n)
        y = rng.uniform(-2, 2)

        def error(w):
            return (np.dot(w, x) - y) ** 2 / 2

        fd = np.empty(n)
        for k in range(n):
            h = 1e-6 * max(1.0, abs(w[k]))
            up, down = w.copy(), w.copy()
            up[k] += h
            down[k] -= h
            fd[k] = (error(up) - error(down)) / (2 * h)
        g_hat, d_hat = esoa.practical_gradient(w, x, y)
        np.testing.assert_allclose(g_hat, fd, rtol=1e-6, atol=1e-6)
        assert abs(np.linalg.norm(d_hat) - 1) <= 1e-12


def test_unit_vector_large_values():
    d = esoa.unit_vector(np.array([3e200, 4e200]))
    assert list(d) == pytest.approx([0.6, 0.8])
    assert not np.any(esoa.unit_vector(np.zeros(4)))


def test_direction_correction():
    d = esoa.direction_correction([0.0, 0.0], 2.0, [1.0, 0.0], 0.0,
                                  [0.0, 0.0])
    assert list(d) == [-2.0, 0.0]


def test_direction_correction_degenerate_distance():
    d_best = np.array([0.5, -0.5])
    d = esoa.direction_correction([3.0, 4.0], 7.0, [3.0, 4.0], 1.0, d_best)
    assert list(d) == [0.5, -0.5]
    d[0] = 9.0
    assert d_best[0] == 0.5


def test_direction_correction_linear_in_gap():
    d_best = np.array([0.25, 0.25])
    once = esoa.direction_correction([0.0, 1.0], 4.0, [2.0, 3.0], 1.0, d_best)
    twice = esoa.direction_correction([0.0, 1.0], 7.0, [2.0, 3.0], 1.0,
                                      d_best)
    np.testing.assert_allclose(twice - d_best, 2 * (once - d_best))


def test_integrated_gradient():
    d_hat, d_h, d_g = np.array([1.0, 0.0]), np.array([0.0, 1.0]), np.zeros(2)
    assert list(esoa.integrated_gradient(d_hat, d_h, d_g, 0, 0)) == [1.0, 0.0]
    g = esoa.integrated_gradient(d_hat, d_h, d_g, 0.5 - 1e-9, 0)
    assert list(g) == pytest.approx([0.5, 0.5])
    u = np.array([0.3, -0.7])
    assert list(esoa.integrated_gradient(u, u, u, 0.2, 0.45)) == \
        pytest.approx(list(u))


def test_integrated_gradient_out_of_range():
    u = np.ones(2)
    with pytest.raises(DomainError):
        esoa.integrated_gradient(u, u, u, 0.5, 0.0)
    with pytest.raises(DomainError):
        esoa.integrated_gradient(u, u, u, 0.0, -0.1)


def test_update_weights_first_step():
    squad = _squad([0.0])
    esoa.update_weights(squad, np.array([1.0]))
    assert squad.m[0] == pytest.approx(0.1)
    assert squad.v[0] == pytest.approx(0.01)
    assert squad.w[0] == pytest.approx(-0.1 / math.sqrt(0.01 + 1e-8))


def test_update_weights_zero_gradient():
    squad = _squad([1.0, 2.0], w=[0.5, -0.5])
    esoa.update_weights(squad, np.zeros(2))
    assert list(squad.w) == [0.5, -0.5]


def test_update_weights_constant_gradient():
    squad = _squad([1.0, 2.0])
    g = np.array([2.0, -0.5])
    for _ in range(2000):
        before = squad.w.copy()
        esoa.update_weights(squad, g)
    assert list(squad.w - before) == pytest.approx([-1.0, 1.0], rel=1e-6)


def test_sit_and_wait_first_iteration():
    problem = make_benchmark(1, 2)
    squad = _squad([10.0, -20.0], w=[0.3, 0.1])
    swarm = _swarm([squad])
    _, d_hat = esoa.practical_gradient(squad.w, squad.x, squad.y)

    x_a, y_a = esoa.sit_and_wait(squad, swarm, problem, _draws(0.0, 0.0))
    np.testing.assert_allclose(x_a, [10.0, -20.0] + 0.1 * 200.0 * d_hat)
    assert y_a.value == evaluate(problem, x_a).value
    assert list(squad.d_hat) == list(d_hat)
    assert list(squad.m) == pytest.approx(list(0.1 * d_hat))


def test_sit_and_wait_last_iteration():
    problem = make_benchmark(1, 2)
    squad = _squad([10.0, -20.0], w=[0.3, 0.1])
    swarm = _swarm([squad], t_max=10)
    swarm.t = 10
    _, d_hat = esoa.practical_gradient(squad.w, squad.x, squad.y)

    x_a, _ = esoa.sit_and_wait(squad, swarm, problem, _draws(0.0, 0.0))
    np.testing.assert_allclose(
        x_a - [10.0, -20.0], math.exp(-10) * 0.1 * 200.0 * d_hat)


def test_sit_and_wait_zero_gradient():
    problem = make_benchmark(1, 2)
    squad = _squad([1.0, 2.0], w=[1.0, 2.0])
    swarm = _swarm([squad])
    x_a, y_a = esoa.sit_and_wait(squad, swarm, problem, RandomSource(1))
    assert list(x_a) == [1.0, 2.0]
    assert y_a.value == squad.y == 5.0
    assert list(squad.w) == [1.0, 2.0]


def test_random_walk():
    problem = make_benchmark(1, 2)
    squad = _squad([0.0, 0.0])
    swarm = _swarm([squad])
    rng = Mock()

    rng.angles.return_value = np.zeros(2)
    x_b, y_b = esoa.random_walk(squad, swarm, problem, rng)
    assert list(x_b) == [0.0, 0.0]
    assert y_b.value == 0.0

    rng.angles.return_value = np.full(2, 0.1)
    near, _ = esoa.random_walk(squad, swarm, problem, rng)
    swarm.t = 9
    far, _ = esoa.random_walk(squad, swarm, problem, rng)
    np.testing.assert_allclose(near, 10 * far)
    assert near[0] == pytest.approx(math.tan(0.1) * 200.0)


def test_random_walk_stays_in_bounds():
    problem = make_benchmark(1, 3)
    squad = _squad([99.0, -99.0, 0.0])
    swarm = _swarm([squad])
    rng = RandomSource(4)
    for _ in range(200):
        x_b, _ = esoa.random_walk(squad, swarm, problem, rng)
        assert problem.bounds.contains(x_b)


def test_encircle():
    problem = make_benchmark(1, 1)
    squad = _squad([0.0])
    swarm = _swarm([squad])
    squad.x_ibest = np.array([1.0])
    swarm.x_gbest = np.array([1.0])
    x_c, y_c = esoa.encircle(squad, swarm, problem, _draws(0.25, 0.25))
    assert list(x_c) == [0.5]
    assert y_c.value == 0.25


def test_encircle_no_attraction():
    problem = make_benchmark(1, 2)
    squad = _squad([3.0, 4.0])
    swarm = _swarm([squad])
    squad.x_ibest = np.array([1.0, 1.0])
    x_c, _ = esoa.encircle(squad, swarm, problem, _draws(0.0, 0.0))
    assert list(x_c) == [3.0, 4.0]


def test_encircle_at_the_best():
    problem = make_benchmark(1, 2)
    squad = _squad([10.0, -20.0])
    swarm = _swarm([squad])
    x_c, _ = esoa.encircle(squad, swarm, problem, _draws(0.1, 0.2))
    assert list(x_c) == pytest.approx([7.0, -14.0])


def _judged_squad(y=5.0):
    squad = esoa.SquadState(np.zeros(2), Fitness(y, y), np.zeros(2))
    squad.d_hat = np.array([0.6, 0.8])
    return squad


def _candidates(y_a, y_b, y_c):
    return esoa.CandidateSet(np.array([1.0, 1.0]), y_a,
                             np.array([2.0, 2.0]), y_b,
                             np.array([3.0, 3.0]), y_c)


def test_discriminant_improvement():
    squad = _judged_squad()
    rng = Mock()
    esoa.discriminant(squad, _candidates(3.0, 1.0, 2.0), rng)
    assert list(squad.x) == [2.0, 2.0]
    assert squad.y == 1.0
    assert squad.f_ibest == 1.0
    assert list(squad.x_ibest) == [2.0, 2.0]
    assert list(squad.d_ibest) == [0.6, 0.8]
    assert rng.uniform.mock_calls == []


def test_discriminant_rejects_worse():
    squad = _judged_squad()
    rng = Mock()
    rng.uniform.return_value = 0.9
    esoa.discriminant(squad, _candidates(9.0, 8.0, 7.0), rng)
    assert list(squad.x) == [0.0, 0.0]
    assert squad.y == 5.0
    assert squad.f_ibest == 5.0


def test_discriminant_accepts_worse():
    squad = _judged_squad()
    rng = Mock()
    rng.uniform.return_value = 0.2
    esoa.discriminant(squad, _candidates(9.0, 8.0, 7.0), rng)
    assert list(squad.x) == [3.0, 3.0]
    assert squad.y == 7.0
    assert squad.f_ibest == 5.0
    assert list(squad.x_ibest) == [0.0, 0.0]
    assert list(squad.d_ibest) == [0.0, 0.0]


def test_discriminant_ties_pick_lowest_index():
    squad = _judged_squad()
    esoa.discriminant(squad, _candidates(2.0, 2.0, 2.0), Mock())
    assert list(squad.x) == [1.0, 1.0]


def test_discriminant_non_finite():
    with pytest.raises(DomainError):
        esoa.discriminant(_judged_squad(),
                          _candidates(1.0, float('nan'), 2.0), Mock())


def test_discriminant_acceptance_rate():
    rng = RandomSource(42)
    cands = _candidates(1.0, 2.0, 3.0)
    moves = 0
    for _ in range(10 ** 4):
        squad = _judged_squad(y=0.0)
        esoa.discriminant(squad, cands, rng)
        assert any(np.array_equal(squad.x, x)
                   for x in cands.positions + [np.zeros(2)])
        moves += squad.y != 0.0
    assert abs(moves / 10.0 ** 4 - 0.3) <= 0.02


def test_init_swarm_streams_independent_of_population():
    problem = make_benchmark(1, 4)
    small = esoa.init_swarm(problem, _config(population=3), RandomSource(1))
    large = esoa.init_swarm(problem, _config(population=7), RandomSource(1))
    for a, b in zip(small.squads, large.squads):
        assert list(a.x) == list(b.x)
        assert list(a.w) == list(b.w)
    for squad in large.squads:
        assert problem.bounds.contains(squad.x)
        assert np.all(np.abs(squad.w) <= 1)
        assert not np.any(squad.m) and not np.any(squad.v)
        assert not np.any(squad.d_ibest)
    assert large.f_gbest == min(s.f_ibest for s in large.squads)


def test_step():
    problem = make_benchmark(5, 6)
    problem.metrics = Metrics()
    swarm = esoa.init_swarm(problem, _config(population=4), RandomSource(3))
    for t in range(1, 21):
        gbest = swarm.f_gbest
        ibest = [s.f_ibest for s in swarm.squads]
        evaluations = problem.metrics.evaluations
        esoa.step(swarm, problem)
        assert swarm.t == t
        assert problem.metrics.evaluations == evaluations + 3 * 4
        assert swarm.f_gbest <= gbest
        assert swarm.f_gbest == min(s.f_ibest for s in swarm.squads)
        assert all(s.f_ibest <= b for s, b in zip(swarm.squads, ibest))
        assert all(problem.bounds.contains(s.x) for s in swarm.squads)
    with pytest.raises(DomainError):
        esoa.step(swarm, problem)


def test_step_deterministic():
    problem = make_benchmark(7, 5)
    swarms = [esoa.init_swarm(problem, _config(), RandomSource(8))
              for _ in range(2)]
    for swarm in swarms:
        for _ in range(5):
            esoa.step(swarm, problem)
    a, b = swarms
    assert list(a.x_gbest) == list(b.x_gbest)
    for sa, sb in zip(a.squads, b.squads):
        assert list(sa.x) == list(sb.x)
        assert list(sa.w) == list(sb.w)


def test_optimize_single_iteration():
    report = esoa.optimize(make_benchmark(2, 5), _config(max_iterations=1),
                           RandomSource(5))
    assert len(report.trace) == 1
    assert report.trace[0] <= report.initial_best
    assert report.best_fitness == report.trace[-1]


def test_optimize_deterministic():
    a = esoa.optimize(make_benchmark(7, 5), _config(), RandomSource(42))
    b = esoa.optimize(make_benchmark(7, 5), _config(), RandomSource(42))
    c = esoa.optimize(make_benchmark(7, 5), _config(), RandomSource(43))
    assert a == b
    assert a != c


def test_optimize_budget_and_containment():
    for key in (1, 5, 6):
        problem = make_benchmark(key, 8)
        report = esoa.optimize(problem, _config(population=6,
                                                max_iterations=15),
                               RandomSource(key))
        assert report.evaluations == 6 + 3 * 6 * 15
        assert report.out_of_bounds == 0
        assert np.all(np.diff(report.trace) <= 0)
        assert problem.bounds.contains(report.best_position)
        assert evaluate(problem, report.best_position).value == \
            report.best_fitness


def test_optimize_config_errors():
    problem = make_benchmark(1, 3)
    problem.metrics = Metrics()
    for config in (_config(population=0), _config(max_iterations=0),
                   RunConfig(accept_prob=1.5)):
        with pytest.raises(ConfigError):
            esoa.optimize(problem, config, RandomSource(1))
    assert problem.metrics.evaluations == 0


def test_optimize_never_accepting_worse():
    config = _config()
    config.accept_prob = 0.0
    problem = make_benchmark(1, 4)
    swarm = esoa.init_swarm(problem, config, RandomSource(6))
    for _ in range(10):
        ys = [s.y for s in swarm.squads]
        esoa.step(swarm, problem)
        assert all(s.y <= y for s, y in zip(swarm.squads, ys))


def test_step_skips_argument_checks():
    problem = make_benchmark(5, 6)
    swarm = esoa.init_swarm(problem, _config(population=3), RandomSource(4))
    reference = esoa.init_swarm(problem, _config(population=3),
                                RandomSource(4))
    with patch('egretswarm.esoa.as_vector') as esoa_as_vector, \
            patch('egretswarm.esoa.check_same_length') as esoa_lengths, \
            patch('egretswarm.problems.as_vector') as problems_as_vector, \
            patch('egretswarm.problems.clamp_to_bounds') as clamp:
        esoa.step(swarm, problem)
    esoa_as_vector.assert_not_called()
    esoa_lengths.assert_not_called()
    problems_as_vector.assert_not_called()
    clamp.assert_not_called()
    esoa.step(reference, problem)
    assert list(swarm.x_gbest) == list(reference.x_gbest)
    for a, b in zip(swarm.squads, reference.squads):
        assert list(a.x) == list(b.x)
        assert list(a.w) == list(b.w)


def test_optimize_leaves_problem_metrics_alone():
    problem = make_benchmark(1, 3)
    assert problem.metrics is None
    report = esoa.optimize(problem, _config(population=2, max_iterations=4),
                           RandomSource(9))
    assert problem.metrics is None
    assert report.evaluations == 2 + 3 * 2 * 4

    metrics = Metrics()
    problem.metrics = metrics
    esoa.optimize(problem, _config(population=2, max_iterations=4),
                  RandomSource(9))
    assert problem.metrics is metrics
    assert metrics.evaluations == 2 + 3 * 2 * 4
