"""Membership/example-query learners: monotone DNF, sparse polynomials over
F2 (distribution-free and uniform schedules), and decision lists.

All learners work over n packed-int variables with mq: point -> bit and
exq: rng -> (point, bit).  Failure to stay within the promised structure
raises LearnFailed; testers treat that as a Reject.
"""

import math

import numpy as np

from . import boolfn
from .pipeline import LearnFailed


def find_minterm(mq, a: int, n: int) -> int:
    """Minimal b <= a (bitwise) with f(b)=1, flipping candidate bits in
    ascending index order.  Requires f(a)=1."""
    for i in range(n):
        b = 1 << i
        if a & b and mq(a & ~b):
            a &= ~b
    return a


def _sparse_point(n, keep_prob, rng):
    """Point with each bit 1 independently with probability keep_prob."""
    x = 0
    for i in range(n):
        if rng.random() < keep_prob:
            x |= 1 << i
    return x


def learn_monotone(mq, exq, n, epsilon, delta, s, r, rng):
    """Learn a monotone DNF with at most s terms of size at most r: walk each
    positive counterexample down to a light point, minimize it to a minterm,
    and add the corresponding term."""
    terms = []

    def h_val(x):
        for t in terms:
            if (x & t) == t:
                return 1
        return 0

    rounds = math.ceil(4.0 * (s / epsilon) * math.log(1.0 / delta))
    alpha = math.ceil(4.0 * r * math.log(2.0 * n * s / delta))
    for _ in range(rounds):
        a, fa = exq(rng)
        if fa == 1 and h_val(a) == 0:
            t = 0
            while t <= alpha and boolfn.wt(a) > r:
                t += 1
                if t == alpha + 1:
                    raise LearnFailed("weight reduction stalled")
                y = _sparse_point(n, 1.0 - 1.0 / r, rng)
                if mq(a & y) == 1:
                    a &= y
            if boolfn.wt(a) > r:
                raise LearnFailed("weight reduction stalled")
            a = find_minterm(mq, a, n)
            terms.append(a)
    return boolfn.MonotoneDnf(
        n, tuple(tuple(i + 1 for i in boolfn.indices_of(t)) for t in terms))


def _extract_term(mq_plus_h, a: int, n: int) -> int:
    """The lexicographically least monomial of (f+h) restricted to the subcube
    below a: full truth table over a's set bits, Mobius transform to the
    algebraic normal form, smallest-mask nonzero coefficient."""
    free = boolfn.indices_of(a)
    m = len(free)
    tt = np.zeros(1 << m, dtype=np.uint8)
    for y in range(1 << m):
        x = 0
        for j, i in enumerate(free):
            if (y >> j) & 1:
                x |= 1 << i
        tt[y] = mq_plus_h(x)
    # in-place Mobius/ANF butterfly
    for i in range(m):
        step = 1 << i
        for j in range(0, 1 << m, step << 1):
            for t in range(step):
                tt[j + t + step] ^= tt[j + t]
    for y in range(1 << m):
        if tt[y]:
            mono = 0
            for j, i in enumerate(free):
                if (y >> j) & 1:
                    mono |= 1 << i
            return mono
    raise LearnFailed("no monomial in the restricted function")


def learn_polynomial(mq, exq, n, epsilon, delta, s, d, rng):
    """Learn an s-sparse F2 polynomial of degree at most d in the
    distribution-free model: correct (f+h) on sampled disagreement points by
    extracting one monomial at a time."""
    monos = []

    def h_val(x):
        v = 0
        for mmask in monos:
            v ^= (x & mmask) == mmask
        return int(v)

    def plus_h(x):
        return mq(x) ^ h_val(x)

    rounds = math.ceil((s / epsilon) * math.log(3.0 * s / delta))
    alpha = math.ceil(16.0 * (2 ** d) * (2.0 * math.log(s / delta) + math.log(max(n, 2))))
    settle = math.ceil((1.0 / epsilon) * math.log(3.0 * s / delta))
    th = 0
    for _ in range(rounds):
        a, fa = exq(rng)
        th += 1
        if fa ^ h_val(a):
            m = 0
            while m <= alpha and boolfn.wt(a) > d:
                m += 1
                y = rng.getrandbits(n)
                if plus_h(a & y):
                    a &= y
            if boolfn.wt(a) > d:
                raise LearnFailed("weight reduction stalled")
            monos.append(_extract_term(plus_h, a, n))
            th = 0
        if th >= settle:
            break
    return boolfn.SparsePolyF2(
        n, tuple(tuple(i + 1 for i in boolfn.indices_of(mk)) for mk in monos))


def learn_poly_unif(mq, exq, n, epsilon, delta, s, rng):
    """Uniform-distribution s-sparse polynomial learner; no degree bound is
    needed because heavy disagreement points are simply skipped, and a streak
    of skipped positives certifies the sparse part is already learned."""
    monos = []

    def h_val(x):
        v = 0
        for mmask in monos:
            v ^= (x & mmask) == mmask
        return int(v)

    def plus_h(x):
        return mq(x) ^ h_val(x)

    ls = math.log(3.0 * s / delta)
    rounds = math.ceil((s / epsilon) * ls * math.log2(3.0 * s / delta))
    alpha = math.ceil(16.0 * (8.0 * s / epsilon)
                      * (2.0 * math.log(s / delta) + math.log(max(n, 2))))
    cap = math.log2(s / epsilon) + 3
    settle = math.ceil((1.0 / epsilon) * ls)
    heavy_limit = math.ceil(math.log2(3.0 * s / delta))
    th = 0
    w = 0
    for _ in range(rounds):
        a, fa = exq(rng)
        th += 1
        if fa ^ h_val(a):
            m = 0
            w += 1
            if w >= heavy_limit:
                break
            while m <= alpha and boolfn.wt(a) > cap:
                m += 1
                y = rng.getrandbits(n)
                if plus_h(a & y):
                    a &= y
            th = 0
            if boolfn.wt(a) > cap:
                continue  # heavy point skipped; w keeps its count
            w = 0
            monos.append(_extract_term(plus_h, a, n))
        if th >= settle:
            break
    return boolfn.SparsePolyF2(
        n, tuple(tuple(i + 1 for i in boolfn.indices_of(mk)) for mk in monos))


def fit_decision_list(samples, n, max_len=0):
    """Greedy consistent decision list from labeled samples (Rivest's cover
    argument): repeatedly pick a literal whose fired samples share one label.
    Raises LearnFailed when no rule fires on the remaining samples."""
    remaining = list(samples)
    rules = []
    while remaining:
        labels = {lab for _, lab in remaining}
        if len(labels) == 1:
            return boolfn.DecisionList(n, tuple(rules), labels.pop())
        if max_len and len(rules) >= max_len:
            raise LearnFailed("list length budget exhausted")
        picked = None
        for v in range(1, n + 1):
            for xi in (0, 1):
                fired = [(x, lab) for x, lab in remaining
                         if boolfn.bit(x, v - 1) == xi]
                if fired and len({lab for _, lab in fired}) == 1:
                    picked = (v, xi, fired[0][1])
                    covered = {x for x, _ in fired}
                    remaining = [(x, lab) for x, lab in remaining
                                 if x not in covered or boolfn.bit(x, v - 1) != xi]
                    break
            if picked:
                break
        if picked is None:
            raise LearnFailed("no consistent decision list")
        rules.append(picked)
    return boolfn.DecisionList(n, tuple(rules), 0)


def fit_r_decision_list(samples, n, r, max_len=0):
    """Greedy consistent r-decision list: like fit_decision_list, but rules
    test a term of at most r literals."""
    def term_val(term, x):
        for lit in term:
            b = boolfn.bit(x, abs(lit) - 1)
            if (lit > 0) != (b == 1):
                return 0
        return 1

    from itertools import combinations, product
    terms = []
    for size in range(1, r + 1):
        for sub in combinations(range(1, n + 1), size):
            for signs in product((1, -1), repeat=size):
                terms.append(tuple(s * v for s, v in zip(signs, sub)))
    remaining = list(samples)
    rules = []
    while remaining:
        labels = {lab for _, lab in remaining}
        if len(labels) == 1:
            return boolfn.RDecisionList(n, tuple(rules), labels.pop())
        if max_len and len(rules) >= max_len:
            raise LearnFailed("list length budget exhausted")
        picked = None
        for term in terms:
            for xi in (0, 1):
                fired = [(x, lab) for x, lab in remaining if term_val(term, x) == xi]
                if fired and len({lab for _, lab in fired}) == 1:
                    picked = (term, xi, fired[0][1])
                    covered = {x for x, _ in fired}
                    remaining = [(x, lab) for x, lab in remaining
                                 if x not in covered or term_val(term, x) != xi]
                    break
            if picked:
                break
        if picked is None:
            raise LearnFailed("no consistent r-decision list")
        rules.append(picked)
    return boolfn.RDecisionList(n, tuple(rules), 0)


def learn_decision_list(exq, n, epsilon, delta, rng, max_len=0):
    """PAC decision-list learner from examples (Occam bound on the greedy
    fitter)."""
    m = math.ceil((4.0 * (n * math.log(max(n, 2)) + math.log(2.0 / delta)))
                  / epsilon)
    samples = [exq(rng) for _ in range(m)]
    return fit_decision_list(samples, n, max_len=max_len)


def learn_r_decision_list(exq, n, r, epsilon, delta, rng, max_len=0):
    """PAC r-decision-list learner from examples; sample size scales with the
    n^r candidate terms."""
    m = math.ceil((4.0 * ((n ** r) * math.log(max(n, 2)) + math.log(2.0 / delta)))
                  / epsilon)
    samples = [exq(rng) for _ in range(m)]
    return fit_r_decision_list(samples, n, r, max_len=max_len)
