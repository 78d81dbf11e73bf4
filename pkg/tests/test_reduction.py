import itertools
import random

from bftest import boolfn
from bftest import reduction
from bftest.junta import Reject
from bftest.oracle import TargetOracle
from bftest.reduction import (BoundedDnfCandidates, ReductionParams,
                              Restriction, approx_C, approx_general_C)


def test_restriction_apply():
    r = Restriction(X=0b0011, w=0b1100)
    assert r.apply(0b1111) == 0b1111
    assert r.apply(0b0000) == 0b1100


def test_approx_C_keeps_relevant_variables_of_small_dnf():
    rng = random.Random(0)
    spec = boolfn.Dnf(16, ((1, -5, 9), (3, 12),))
    params = ReductionParams(s=2, lam=6.0, c=2, lead=4.0)
    hits = 0
    for _ in range(10):
        res = approx_C(TargetOracle(spec).mq, 16, 0.2, params, rng)
        assert not isinstance(res, Reject)
        rel = boolfn.mask_of(v - 1 for v in boolfn.relevant_variables(spec))
        hits += (res.X & rel) == rel
    assert hits >= 8  # whp every relevant variable survives the restriction


def test_approx_general_C_on_decision_list():
    rng = random.Random(1)
    spec = boolfn.DecisionList(16, ((2, 1, 1), (9, 0, 0), (14, 1, 0)), 1)
    params = ReductionParams(c=2, c1=2.0)
    res = approx_general_C(TargetOracle(spec).mq, 16, 4, 0.2, 1.0 / 6,
                           params, rng)
    assert not isinstance(res, Reject)


def test_bounded_dnf_candidates_against_brute_force():
    rng = random.Random(2)
    q, s, cap = 3, 2, 2
    cands = BoundedDnfCandidates(q, s, cap)

    def term_val(pos, neg, z):
        return int((z & pos) == pos and (z & neg) == 0)

    # mirror of the candidate set as explicit (pos, neg) term pairs
    terms = [(0, 0)]
    for size in (1, 2):
        for sub in itertools.combinations(range(q), size):
            for signs in itertools.product((0, 1), repeat=size):
                p = ng = 0
                for b, i in zip(signs, sub):
                    if b:
                        ng |= 1 << i
                    else:
                        p |= 1 << i
                terms.append((p, ng))
    explicit = []
    for combo in itertools.combinations_with_replacement(range(-1, len(terms)), s):
        explicit.append(combo)

    def explicit_val(combo, z):
        return int(any(term_val(*terms[i], z) for i in combo if i >= 0))

    for _ in range(12):
        z = tuple(rng.getrandbits(1) for _ in range(q))
        zi = sum(b << i for i, b in enumerate(z))
        Fz = rng.getrandbits(1)
        cands.eliminate(z, Fz)
        explicit = [c for c in explicit if explicit_val(c, zi) == Fz]
        assert cands.is_empty() == (not explicit)
        assert len(cands.alive) == len(explicit)
        if cands.is_empty():
            break


def test_tester_approx_C_single_runs():
    rng = random.Random(3)
    params = ReductionParams(s=2, lam=6.0, c=2, lead=4.0, term_cap=3)
    member = boolfn.Dnf(16, ((2, -7, 11), (4, 15)))
    accepts = sum(reduction.tester_approx_C(TargetOracle(member), 0.2, params,
                                            rng) == "accept"
                  for _ in range(5))
    assert accepts >= 4
    far = boolfn.LinearF2(16, frozenset({1, 3, 5, 7, 9}))
    rejects = sum(isinstance(reduction.tester_approx_C(TargetOracle(far), 0.2,
                                                       params, rng), Reject)
                  for _ in range(5))
    assert rejects == 5


def test_tester_decision_list_single_runs():
    rng = random.Random(4)
    params = ReductionParams(c=2, c1=2.0, c_prime=2.0)
    member = boolfn.DecisionList(16, ((3, 1, 0), (8, 0, 1), (12, 1, 1)), 0)
    accepts = sum(reduction.tester_decision_list(
        TargetOracle(member), 0.2, params, rng, s=4) == "accept"
        for _ in range(5))
    assert accepts >= 4
    far = boolfn.LinearF2(16, frozenset({2, 5, 9, 11, 13}))
    rejects = sum(isinstance(reduction.tester_decision_list(
        TargetOracle(far), 0.2, params, rng, s=4), Reject) for _ in range(5))
    assert rejects == 5


def test_tester_r_decision_list_r1_matches_plain():
    rng = random.Random(5)
    params = ReductionParams(c=2, c1=2.0, c_prime=2.0)
    member = boolfn.DecisionList(12, ((1, 0, 1), (6, 1, 0)), 1)
    res = reduction.tester_r_decision_list(TargetOracle(member), 0.2, params,
                                           rng, r=1, s=4)
    assert res == "accept"


def test_dl_k_schedule():
    assert reduction.dl_k_schedule(0.2, 1.0 / 6, 4, 2.0) == 4
    assert reduction.dl_k_schedule(0.2, 1.0 / 6, 0, 2.0) == 10
    assert reduction.dl_k_schedule(0.2, 1.0 / 6, 30, 2.0) == 10
