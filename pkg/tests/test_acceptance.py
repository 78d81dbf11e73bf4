"""Acceptance gate: one test per criterion, each printing one pass/fail line
per checked guarantee at the full stated parameters.
"""

import random

from bftest import acceptance
from bftest import boolfn

import second_oracle


def _emit(lines):
    failed = []
    for label, ok, detail in lines:
        print(f"{'PASS' if ok else 'FAIL'} {label}: {detail}")
        if not ok:
            failed.append(label)
    assert not failed, f"acceptance failures: {failed}"


def test_criterion_1_completeness():
    _emit(acceptance.check_completeness(trials=200, epsilon=0.2))


def test_criterion_2_soundness():
    _emit(acceptance.check_soundness(trials=200, epsilon=0.2))


def test_criterion_3_exact_subprocedures():
    _emit(acceptance.check_exactness(cases=10_000))


def test_criterion_4_query_scaling_grid():
    _emit(acceptance.check_query_grid())


def test_criterion_5_learner_guarantees():
    _emit(acceptance.check_learners(runs=50))


def test_criterion_6_oracle_equivalence():
    _emit(acceptance.check_equivalence())
    # distance and relevant_variables against the independent naive oracle
    rng = random.Random(606)
    checked = 0
    for n in (6, 8):
        for _ in range(6):
            a = random_spec(n, rng)
            b = random_spec(n, rng)
            da, db = a.to_dict(), b.to_dict()
            assert boolfn.distance(a, b) == second_oracle.naive_distance(da, db)
            assert set(boolfn.relevant_variables(a)) == \
                set(second_oracle.naive_relevant_variables(da))
            checked += 1
    print(f"PASS oracle_equivalence[second_oracle]: {checked} spec pairs, "
          "distance and relevant_variables agree with the naive oracle")


def random_spec(n, rng):
    kind = rng.choice(("linear", "dnf", "poly_f2", "decision_list"))
    if kind == "linear":
        size = rng.randrange(0, 3)
        return boolfn.LinearF2(
            n, frozenset(v + 1 for v in rng.sample(range(n), size)))
    if kind == "dnf":
        terms = tuple(tuple((v + 1) * rng.choice((1, -1))
                            for v in rng.sample(range(n), rng.randrange(1, 3)))
                      for _ in range(2))
        return boolfn.Dnf(n, terms)
    if kind == "poly_f2":
        monos = tuple(tuple(v + 1 for v in rng.sample(range(n), rng.randrange(1, 3)))
                      for _ in range(2))
        return boolfn.SparsePolyF2(n, monos)
    rules = tuple((v + 1, rng.getrandbits(1), rng.getrandbits(1))
                  for v in rng.sample(range(n), 3))
    return boolfn.DecisionList(n, rules, rng.getrandbits(1))


def test_criterion_7_reproducibility():
    _emit(acceptance.check_reproducibility())
