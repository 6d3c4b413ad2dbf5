import warnings

import numpy as np
from scipy.spatial.transform import Rotation

from sphere_dubins import (DomainError, as_turn_radius, chord_tolerance, make_grid, oracle_search, oracle_words,
                           path_endpoint, plan, resolution_bound)
from sphere_dubins.oracle import DEFAULT_GRID, search_word


def random_instance(prng):
    R0 = Rotation.random(random_state=prng).as_matrix()
    X_f = prng.randn(3)
    X_f /= np.linalg.norm(X_f)
    return R0, X_f, prng.uniform(0.1, 0.5)


def test_words():
    words = oracle_words(3)
    assert len(words) == 21
    assert len(set(words)) == 21
    for w in words:
        assert all(a != b for a, b in zip(w, w[1:])), w
    assert oracle_words(1) == ['L', 'R', 'G']
    assert len(oracle_words(2)) == 9


def test_antipode():
    res = oracle_search(np.eye(3), np.array([-1.0, 0, 0]), 0.3)
    assert res.feasible
    assert res.words_searched == 21
    assert abs(res.candidate.length - np.pi) <= res.resolution_bound


def test_trivial():
    res = oracle_search(np.eye(3), np.array([1.0, 0, 0]), 0.3)
    assert res.feasible
    assert res.word == ''
    assert res.candidate.length == 0


def test_planner_is_never_beaten():
    prng = np.random.RandomState(0)
    for _ in range(500):
        R0, X_f, r = random_instance(prng)
        p = plan(R0, X_f, r)
        res = oracle_search(R0, X_f, r)
        assert res.feasible
        assert p.optimal_candidate.length <= res.candidate.length + res.resolution_bound, (X_f, r)

        distance = np.arccos(np.clip(np.dot(R0[:, 0], X_f), -1, 1))
        assert res.candidate.length >= distance - 1e-7

        assert res.candidate.residual <= res.chord_tolerance
        end = path_endpoint(R0, res.candidate.segments, r)
        assert np.linalg.norm(end - X_f) <= 1e-8


def test_processes_agree():
    prng = np.random.RandomState(1)
    R0, X_f, r = random_instance(prng)
    a = oracle_search(R0, X_f, r, processes=1)
    b = oracle_search(R0, X_f, r, processes=2)
    assert a.word == b.word
    assert a.candidate.length == b.candidate.length


def test_resolution_bound():
    grid = make_grid(angle_step=0.01)
    half = make_grid(angle_step=0.005)
    assert abs(resolution_bound(half, 0.3) - resolution_bound(grid, 0.3) / 2) <= 1e-15
    assert abs(resolution_bound(grid, 0.3) - 3 * 0.01) <= 1e-15
    assert chord_tolerance(half) < chord_tolerance(grid)
    assert abs(chord_tolerance(grid) - 2 * np.sin(0.005)) <= 1e-15


def test_refinement_never_lengthens():
    prng = np.random.RandomState(2)
    grid = make_grid(angle_step=0.01)
    found = 0
    for _ in range(20):
        x = prng.randn(3)
        x /= np.linalg.norm(x)
        radius = as_turn_radius(prng.uniform(0.1, 0.5))
        for word in ['LRL', 'LGR', 'GLG']:
            res = search_word(word, x, radius, grid)
            if res is None:
                continue
            found += 1
            assert res.length <= res.grid_length + 1e-12
    assert found > 0


def test_refinement_objective_stays_finite():
    prng = np.random.RandomState(2)
    grid = make_grid(angle_step=0.01)
    with warnings.catch_warnings():
        warnings.simplefilter('error', RuntimeWarning)
        for _ in range(20):
            x = prng.randn(3)
            x /= np.linalg.norm(x)
            radius = as_turn_radius(prng.uniform(0.1, 0.5))
            for word in ['LRL', 'LGR', 'GLG', 'RGL']:
                res = search_word(word, x, radius, grid)
                if res is not None:
                    assert np.isfinite(res.length)


def test_bad_grids():
    for kwargs in [dict(angle_step=0.0), dict(max_segments=0), dict(refine_tol=-1.0)]:
        try:
            make_grid(**kwargs)
        except DomainError:
            pass
        else:
            raise AssertionError(kwargs)
    assert make_grid() == DEFAULT_GRID


if __name__ == '__main__':
    import pytest

    pytest.main([__file__])
