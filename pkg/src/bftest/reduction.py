"""Front-end reductions for classes that are only close to k-juntas: restrict
the target to a union of relevant blocks with a random background, so the
junta pipeline can run on a function with few relevant variables.
"""

from dataclasses import dataclass
import math
from itertools import combinations, combinations_with_replacement

import numpy as np

from . import boolfn
from . import partition as pt
from . import learners
from .junta import Reject, TesterParams, approx_target, test_sets, eval_F
from .pipeline import close_fF, ClassConfig, test_via_learner


@dataclass(frozen=True)
class ReductionParams:
    s: int = 1  # term/size bound of the class
    lam: float = 4.0 / 3  # closeness divisor (> 1)
    c: int = 2  # block-count exponent / term-size constant
    c1: float = 8.0  # closeness constant for the general reduction
    c_prime: float = 4.0  # decision-list k-schedule constant
    lead: float = 100.0  # leading constant of the DNF-reduction schedule
    term_cap: int = 0  # explicit term-size cap for the final stage (0: c*log2(s/eps))


@dataclass(frozen=True)
class Restriction:
    """Keep the coordinates of X free; pin the rest to the bits of w."""
    X: int
    w: int

    def apply(self, x: int) -> int:
        return (x & self.X) | (self.w & ~self.X)


class UniformRestrictedOracle:
    """Oracle view of h = f(x_X ∘ w) under the uniform distribution.  Every
    query (including example draws) costs membership queries on the parent."""

    def __init__(self, parent, restriction):
        self.parent = parent
        self.n = parent.n
        self.restriction = restriction
        self.ledger = parent.ledger

    def mq(self, x: int) -> int:
        return self.parent.mq(self.restriction.apply(x))

    def exq(self, rng):
        u = rng.getrandbits(self.n)
        return u, self.mq(u)


def _restriction_search_loop(mq, n, partition, M, window, k_cap, rng, stage):
    """Shared skeleton of the two restriction finders: draw uniform pairs,
    binary-search discrepancies into new relevant blocks, and stop after a
    long streak of agreement."""
    X = 0
    I = []
    t = 0
    for _ in range(M):
        u = rng.getrandbits(n)
        v = rng.getrandbits(n)
        t += 1
        fu = mq(u)
        mixed = pt.compose(u, X, v)
        if mq(mixed) != fu:
            cands = [ell for ell in range(partition.r)
                     if ell not in I and (u ^ v) & ~X & partition.blocks[ell]]
            ell, _a, _b, _ = pt.binary_search_relevant_block(
                mq, u, fu, mixed, partition, cands)
            X |= partition.blocks[ell]
            I.append(ell)
            if len(I) > k_cap:
                return Reject(stage, f"more than {k_cap} relevant blocks")
            t = 0
        if t >= window:
            break
    w = rng.getrandbits(n)
    return Restriction(X, w)


def approx_C(mq, n, epsilon, params, rng):
    """DNF-oriented restriction finder: variables appearing only in large
    terms end up pinned, so the restriction keeps few relevant variables while
    staying (epsilon/lambda)-close to the target."""
    m = max(1, math.ceil(params.c * math.log2(max(params.s / epsilon, 2.0))))
    r = 8 * m * params.s
    k_cap = 3 * m * params.s
    partition = pt.random_partition(n, r, rng)
    window = math.ceil(params.lead * params.lam
                       * math.log(params.lead * k_cap) / epsilon)
    M = k_cap * window
    return _restriction_search_loop(mq, n, partition, M, window, k_cap, rng,
                                    "approx_C")


def approx_general_C(mq, n, k, epsilon, delta, params, rng):
    """Generic restriction finder for classes with good truncations: valid
    whenever the class admits a k-junta proxy accurate under the half-free
    restriction law."""
    r = max(2, k ** (params.c + 1))
    partition = pt.random_partition(n, r, rng)
    window = math.ceil((4.0 * params.c1 / (delta * epsilon))
                       * math.log(4.0 * k / delta))
    M = k * window
    return _restriction_search_loop(mq, n, partition, M, window, k, rng,
                                    "approx_general_C")


# ---------------------------------------------------------------------------
# Bounded-term-size DNF candidate set for the final elimination stage
# ---------------------------------------------------------------------------

class BoundedDnfCandidates:
    """All DNFs with at most s terms of size <= cap over q variables, held as
    numpy index pairs into a shared table of term masks; elimination keeps a
    shrinking survivor index array."""

    def __init__(self, q, s, cap):
        self.q = q
        pos_list, neg_list = [0], [0]  # empty term = constant 1
        varset = range(q)
        for size in range(1, min(cap, q) + 1):
            for sub in combinations(varset, size):
                for signs in range(1 << size):
                    p = ng = 0
                    for j, i in enumerate(sub):
                        if (signs >> j) & 1:
                            ng |= 1 << i
                        else:
                            p |= 1 << i
                    pos_list.append(p)
                    neg_list.append(ng)
        self.tpos = np.array(pos_list, dtype=np.int64)
        self.tneg = np.array(neg_list, dtype=np.int64)
        nt = len(pos_list)
        # candidate = multiset of term indices; -1 marks an absent term, so
        # the same array shape covers every list length up to s
        idx = list(combinations_with_replacement(range(-1, nt), s))
        self.cands = np.array(idx, dtype=np.int64)
        self.alive = np.arange(len(self.cands))
        self.bound = max(2, len(self.cands))

    def _values(self, z_int):
        sat = ((z_int & self.tpos) == self.tpos) & ((z_int & self.tneg) == 0)
        sat = np.concatenate([[False], sat])  # index -1 -> absent term
        rows = self.cands[self.alive]
        return sat[rows + 1].any(axis=1) if rows.size else np.zeros(0, bool)

    def eliminate(self, z, Fz):
        z_int = 0
        for i, zi in enumerate(z):
            z_int |= zi << i
        vals = self._values(z_int)
        self.alive = self.alive[vals == bool(Fz)]

    def is_empty(self):
        return self.alive.size == 0

    def survivors(self):
        return [tuple(int(t) for t in self.cands[i] if t >= 0) for i in self.alive]


def tester_approx_C(oracle, epsilon, params, rng, tester_c=6.0):
    """Uniform-model tester for s-term DNF: restrict away the large terms,
    run the junta pipeline on the restriction, and finish by eliminating the
    bounded-term-size DNF candidates."""
    res = approx_C(oracle.mq, oracle.n, epsilon, params, rng)
    if isinstance(res, Reject):
        return res
    h = UniformRestrictedOracle(oracle, res)
    m = max(1, math.ceil(params.c * math.log2(max(params.s / epsilon, 2.0))))
    k_cap = 3 * m * params.s
    tp = TesterParams(k=k_cap, epsilon=epsilon, c=tester_c)
    rec = approx_target(h, tp, rng, improved=False)
    if isinstance(rec, Reject):
        return rec
    r2 = test_sets(h.mq, h.n, rec, rng)
    if isinstance(r2, Reject):
        return r2
    r3 = close_fF(h, rec, k_cap, epsilon, 1.0 / 15, rng, mode="basic")
    if isinstance(r3, Reject):
        return r3
    cap = params.term_cap or math.ceil(
        params.c * math.log2(max(params.s / epsilon, 2.0)))
    cands = BoundedDnfCandidates(rec.q, params.s, cap)
    tau = math.ceil((3.0 / epsilon) * math.log(30.0 * cands.bound))
    for _ in range(tau):
        z = tuple(rng.getrandbits(1) for _ in range(rec.q))
        Fz = eval_F(h.mq, rec, dict(zip(rec.I, z)))
        cands.eliminate(z, Fz)
        if cands.is_empty():
            return Reject("close_FC", "every bounded-term DNF eliminated")
    return "accept"


# ---------------------------------------------------------------------------
# Decision lists through the general reduction
# ---------------------------------------------------------------------------

def dl_k_schedule(epsilon, delta, s, c_prime):
    k = math.ceil(c_prime * math.log2(1.0 / (epsilon * delta)))
    if s:
        k = min(s, k)
    return max(1, k)


def tester_decision_list(oracle, epsilon, params, rng, s=0, lam_junta=2,
                         tester_c=6.0, r=1):
    """Uniform-model tester for (r-)decision lists: generic restriction, then
    the junta pipeline with a greedy proper list learner as the final stage."""
    delta = 1.0 / 6
    k = dl_k_schedule(epsilon, delta, s, params.c_prime)
    if r > 1:
        k = max(1, math.ceil(k * (math.log2(2.0 / epsilon)) ** (r - 1)))
    res = approx_general_C(oracle.mq, oracle.n, k, epsilon, delta, params, rng)
    if isinstance(res, Reject):
        return res
    h = UniformRestrictedOracle(oracle, res)
    kj = lam_junta * k  # the restriction is close to a (lam*k)-junta
    tp = TesterParams(k=kj, epsilon=epsilon, c=tester_c)
    rec = approx_target(h, tp, rng, improved=False)
    if isinstance(rec, Reject):
        return rec
    r2 = test_sets(h.mq, h.n, rec, rng)
    if isinstance(r2, Reject):
        return r2
    r3 = close_fF(h, rec, kj, epsilon, 1.0 / 15, rng, mode="basic")
    if isinstance(r3, Reject):
        return r3

    def pac_learner(fview, q, eps, dlt, lrng, _rec):
        def exq(rr):
            z, Fz = fview.exq(rr)
            x = 0
            for i, zi in enumerate(z):
                x |= zi << i
            return x, Fz
        if r == 1:
            return learners.learn_decision_list(exq, q, eps, dlt, lrng)
        return learners.learn_r_decision_list(exq, q, r, eps, dlt, lrng)

    hyp_desc = (boolfn.ClassDesc("decision_list", s=0) if r == 1
                else boolfn.ClassDesc("r_decision_list", r=r))
    cls = ClassConfig(name="decision_list", k=kj, pac_learner=pac_learner,
                      hyp_class=lambda q: hyp_desc)
    r4 = test_via_learner(h, rec, cls, epsilon, 1.0 / 15, rng, kind="pac",
                          model="uniform")
    if isinstance(r4, Reject):
        return r4
    return "accept"


def tester_r_decision_list(oracle, epsilon, params, rng, r, s=0):
    return tester_decision_list(oracle, epsilon, params, rng, s=s, r=r)
