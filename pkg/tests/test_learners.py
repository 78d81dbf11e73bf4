import random

import pytest

from bftest import boolfn
from bftest import learners
from bftest.oracle import TargetOracle
from bftest.pipeline import LearnFailed


def _dist(a, b):
    return float((a.truth_table() != b.truth_table()).mean())


def test_find_minterm():
    spec = boolfn.MonotoneDnf(6, ((1, 3),))
    a = 0b111111
    assert learners.find_minterm(spec.evaluate, a, 6) == 0b000101


def test_learn_monotone_recovers_small_dnf():
    rng = random.Random(0)
    for _ in range(10):
        spec = boolfn.MonotoneDnf(10, ((1, 4), (7,), (2, 9)))
        o = TargetOracle(spec)
        hyp = learners.learn_monotone(o.mq, o.exq, 10, 0.05, 0.1, 3, 2, rng)
        assert isinstance(hyp, boolfn.MonotoneDnf)
        assert _dist(spec, hyp) <= 0.05
        assert hyp.max_term_size() <= 2 and hyp.term_count() <= 3


def test_learn_polynomial_recovers_sparse_poly():
    rng = random.Random(1)
    spec = boolfn.SparsePolyF2(10, ((1, 2), (5,), (8, 9, 10)))
    for _ in range(5):
        o = TargetOracle(spec)
        hyp = learners.learn_polynomial(o.mq, o.exq, 10, 0.05, 0.1, 3, 3, rng)
        assert _dist(spec, hyp) <= 0.05
        assert hyp.sparsity() <= 3 and hyp.degree() <= 3


def test_learn_polynomial_distribution_free():
    # product-law examples: the learner must fit where the mass actually is
    rng = random.Random(2)
    spec = boolfn.SparsePolyF2(8, ((1, 2), (6,)))
    dist = boolfn.ProductBias((0.8, 0.7, 0.5, 0.5, 0.5, 0.3, 0.5, 0.5))
    o = TargetOracle(spec, dist=dist)
    hyp = learners.learn_polynomial(o.mq, o.exq, 8, 0.05, 0.1, 2, 2, rng)
    assert boolfn.distance(spec, hyp, dist) <= 0.05


def test_learn_poly_unif_recovers_sparse_poly():
    rng = random.Random(3)
    spec = boolfn.SparsePolyF2(10, ((2, 3), (7, 8)))
    for _ in range(5):
        o = TargetOracle(spec)
        hyp = learners.learn_poly_unif(o.mq, o.exq, 10, 0.05, 0.1, 2, rng)
        assert _dist(spec, hyp) <= 0.05


def test_fit_decision_list_consistent():
    rng = random.Random(4)
    spec = boolfn.DecisionList(6, ((2, 1, 0), (5, 0, 1), (1, 1, 1)), 0)
    samples = [(x, spec.evaluate(x)) for x in range(64)]
    hyp = learners.fit_decision_list(samples, 6)
    assert all(hyp.evaluate(x) == y for x, y in samples)


def test_fit_decision_list_fails_on_parity():
    spec = boolfn.LinearF2(4, frozenset({1, 2, 3, 4}))
    samples = [(x, spec.evaluate(x)) for x in range(16)]
    with pytest.raises(LearnFailed):
        learners.fit_decision_list(samples, 4)


def test_learn_decision_list_pac():
    rng = random.Random(5)
    spec = boolfn.DecisionList(10, ((3, 0, 1), (7, 1, 0), (1, 0, 0), (9, 1, 1)), 0)
    for _ in range(5):
        o = TargetOracle(spec)
        hyp = learners.learn_decision_list(o.exq, 10, 0.05, 0.1, rng)
        assert isinstance(hyp, boolfn.DecisionList)
        assert _dist(spec, hyp) <= 0.05


def test_fit_r_decision_list():
    spec = boolfn.RDecisionList(5, (((1, -2), 1, 1), ((3,), 0, 0)), 1)
    samples = [(x, spec.evaluate(x)) for x in range(32)]
    hyp = learners.fit_r_decision_list(samples, 5, 2)
    assert all(hyp.evaluate(x) == y for x, y in samples)
    assert hyp.max_term_size() <= 2


def test_learn_r_decision_list_pac():
    rng = random.Random(6)
    spec = boolfn.RDecisionList(6, (((2, 4), 1, 0), ((-1,), 1, 1)), 0)
    o = TargetOracle(spec)
    hyp = learners.learn_r_decision_list(o.exq, 6, 2, 0.1, 0.1, rng)
    assert _dist(spec, hyp) <= 0.1


def test_extract_term_finds_least_monomial():
    spec = boolfn.SparsePolyF2(6, ((1, 3), (2, 3, 5)))
    mono = learners._extract_term(spec.evaluate, 0b111111, 6)
    assert mono == 0b000101  # x1*x3 is the lexicographically least monomial
