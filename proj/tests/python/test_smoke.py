"""End-to-end smoke tests for the python bindings.

The exhaustive property suites live in the C++ tests; these only check that
the bound pipeline holds together and stays deterministic.
"""

import math
from pathlib import Path

import pytest

import mvmrfs

DATA = Path(__file__).resolve().parents[2] / "data"


@pytest.fixture(scope="module")
def iris():
    return mvmrfs.load_csv(str(DATA / "iris.csv"), "species")


def test_load_csv_shape(iris):
    assert iris.rows == 150
    assert iris.cols == 4
    assert iris.class_count == 3
    assert iris.feature_names == ["SL", "SW", "PL", "PW"]
    assert iris.class_sizes() == [50, 50, 50]


def test_normalize_bounds(iris):
    norm = mvmrfs.min_max_normalize(iris)
    for col in range(norm.cols):
        values = norm.column(col)
        assert min(values) == 0.0
        assert max(values) == 1.0


def test_artificial_iris_doubles_first_column(iris):
    art = mvmrfs.make_artificial_iris(iris)
    assert art.cols == 5
    assert art.feature_names[-1] == "2SL"
    sl, dbl = art.column(0), art.column(4)
    assert all(b == 2.0 * a for a, b in zip(sl, dbl))


def test_split_partitions_rows(iris):
    split = mvmrfs.stratified_split(iris, 0.2, seed=1)
    assert split.train.rows + split.test.rows == iris.rows
    assert split.test.class_sizes() == [10, 10, 10]


def test_cache_and_score(iris):
    cache = mvmrfs.build_cache(iris, bandwidth=1.0, points=256, normalize=True)
    assert cache.feature_count == 4
    assert all(0.0 <= s <= 1.0 for s in cache.sim)
    assert cache.red_at(1, 2) == cache.red_at(2, 1)
    assert cache.red_at(3, 3) == 0.0
    single = mvmrfs.mvmr_score(cache, [0, 0, 0, 1])
    assert math.isclose(single, cache.sim[3], rel_tol=1e-12)
    matrix = mvmrfs.pairwise_mvmr_matrix(cache)
    assert math.isclose(matrix[3][3], cache.sim[3], rel_tol=1e-12)


def test_score_rejects_empty_mask(iris):
    cache = mvmrfs.build_cache(iris, points=256)
    with pytest.raises(ValueError):
        mvmrfs.mvmr_score(cache, [0, 0, 0, 0])


def test_search_is_deterministic(iris):
    cache = mvmrfs.build_cache(iris, points=256)
    cfg = mvmrfs.GaConfig()
    cfg.seed = 7
    first = mvmrfs.run(cache, cfg)
    second = mvmrfs.run(cache, cfg)
    assert first.best.mask == second.best.mask
    assert first.best.fitness == second.best.fitness
    assert first.trace.termination_reason in ("stagnation", "max_generations")
    best_series = [g.best_fitness for g in first.trace.generations]
    assert best_series == sorted(best_series, reverse=True) or all(
        a >= b for a, b in zip(best_series, best_series[1:])
    )


def test_evaluation_harness(iris):
    norm = mvmrfs.min_max_normalize(iris)
    split = mvmrfs.stratified_split(norm, 0.2, seed=1)
    report = mvmrfs.evaluate_subset(split, [1, 1, 1, 1], seed=1)
    for acc in (report.knn_acc, report.gnb_acc, report.dt_acc):
        assert 0.0 <= acc <= 1.0
    assert math.isclose(
        report.avg_acc, (report.knn_acc + report.gnb_acc + report.dt_acc) / 3.0, rel_tol=1e-12
    )
    assert report.selected == [0, 1, 2, 3]
    assert report.knn_acc >= 0.9
