import random

import pytest

from bftest import boolfn
from bftest import partition as pt
from bftest import junta
from bftest.junta import (Reject, RelevantSetRecord, approx_target, eval_F,
                          rel_var_values, uniform_junta)
from bftest.oracle import TargetOracle


def counted(spec):
    o = TargetOracle(spec)
    return o


def test_uniform_junta_accepts_juntas():
    rng = random.Random(0)
    for _ in range(20):
        vars_ = rng.sample(range(10), 3)
        tbl = [rng.getrandbits(1) for _ in range(8)]

        def f(x):
            key = sum(boolfn.bit(x, v) << j for j, v in enumerate(vars_))
            return tbl[key]

        assert uniform_junta(f, 10, 3, 0.2, 1.0 / 15, rng) == "accept"


def test_uniform_junta_rejects_parity_whp():
    rng = random.Random(1)
    spec = boolfn.LinearF2(10, frozenset(range(1, 11)))
    rejects = 0
    for _ in range(30):
        res = uniform_junta(spec.evaluate, 10, 2, 0.2, 1.0 / 15, rng)
        if isinstance(res, Reject):
            rejects += 1
            assert len(res.evidence) == 3
            # evidence pairs actually witness relevance of disjoint blocks
            seen = 0
            for blk, (a, b) in res.evidence:
                assert spec.evaluate(a) != spec.evaluate(b)
                assert (a ^ b) & ~blk == 0
                assert seen & blk == 0
                seen |= blk
    assert rejects >= 25


def test_approx_target_record_invariants():
    rng = random.Random(2)
    spec = boolfn.Dnf(12, ((1, 4, -7),))
    for improved in (False, True):
        o = TargetOracle(spec)
        rec = approx_target(o, junta.TesterParams(k=3, epsilon=0.1), rng,
                            improved=improved)
        assert not isinstance(rec, Reject)
        assert rec.q <= 3
        assert rec.X == rec.partition.mask_of(rec.I)
        assert set(rec.witnesses) == set(rec.I)
        assert rec.check_witnesses(o.mq)


def test_approx_target_rejects_far_function():
    rng = random.Random(3)
    spec = boolfn.LinearF2(10, frozenset(range(1, 11)))
    rejects = 0
    for _ in range(20):
        o = TargetOracle(spec)
        res = approx_target(o, junta.TesterParams(k=2, epsilon=0.2), rng)
        rejects += isinstance(res, Reject)
    assert rejects >= 17


def _literal_record(n, taus, rng):
    """Partition with each chosen variable alone in its own block."""
    part = pt.random_partition(n, 2 * len(taus), rng)
    blocks = [b & ~sum(1 << t for t in taus) for b in part.blocks]
    blocks += [1 << t for t in taus]
    part = pt.Partition(n, tuple(blocks))
    I = list(range(len(blocks) - len(taus), len(blocks)))
    return RelevantSetRecord(part, part.mask_of(I), I,
                             {ell: part.blocks[ell] for ell in I})


def test_rel_var_values_reads_literal_values():
    rng = random.Random(4)
    n = 10
    taus = [1, 4, 8]
    spec = boolfn.LinearF2(n, frozenset(t + 1 for t in taus))
    rec = _literal_record(n, taus, rng)
    for _ in range(50):
        w = rng.getrandbits(n)
        z = rel_var_values(spec.evaluate, w, rec, 3, 0.05, rng)
        assert z == {ell: boolfn.bit(w, taus[j]) for j, ell in enumerate(rec.I)}


def test_rel_var_values_rejects_two_variable_block():
    rng = random.Random(5)
    n = 8
    # one block holds two genuinely relevant variables of a parity
    blocks = [0b00000011, 0b00000100, (1 << n) - 1 - 0b00000111]
    part = pt.Partition(n, tuple(blocks))
    spec = boolfn.LinearF2(n, frozenset({1, 2, 3}))
    rec = RelevantSetRecord(part, 0b111, [0, 1], {0: 0b01, 1: 0b100})
    rejects = 0
    for _ in range(30):
        z = rel_var_values(spec.evaluate, rng.getrandbits(n), rec, 2, 0.05, rng)
        rejects += isinstance(z, Reject)
    assert rejects >= 20


def test_eval_F_single_query_and_value():
    rng = random.Random(6)
    n = 9
    taus = [0, 3, 7]
    spec = boolfn.SparsePolyF2(n, ((1, 4), (8,)))
    rec = _literal_record(n, taus, rng)
    o = TargetOracle(spec)
    for _ in range(30):
        z = {ell: rng.getrandbits(1) for ell in rec.I}
        before = o.ledger.mq
        val = eval_F(o.mq, rec, z)
        assert o.ledger.mq == before + 1
        x = 0
        for j, ell in enumerate(rec.I):
            x |= z[ell] << taus[j]
        assert val == spec.evaluate(x)


def test_test_sets_accepts_literal_blocks_and_rejects_pair_block():
    rng = random.Random(7)
    n = 8
    spec = boolfn.LinearF2(n, frozenset({1, 2, 3}))
    # literal blocks accept
    rec = _literal_record(n, [0, 1, 2], rng)
    assert junta.test_sets(spec.evaluate, n, rec, rng) == "ok"
    # a block with two relevant variables of the parity rejects (whp)
    blocks = [0b011, 0b100, (1 << n) - 1 - 0b111]
    part = pt.Partition(n, tuple(blocks))
    rec2 = RelevantSetRecord(part, 0b111, [0, 1], {0: 0b001, 1: 0b100})
    rejects = sum(isinstance(junta.test_sets(spec.evaluate, n, rec2, rng), Reject)
                  for _ in range(20))
    assert rejects >= 15
