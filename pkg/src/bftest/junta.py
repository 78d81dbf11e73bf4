"""Relevant-set discovery for junta-like testing.

The procedures here find a small union X of partition blocks such that
f(x_X ∘ 0) approximates the target, certify that each found block behaves like
a single literal, and read off the values of the hidden relevant variables of
any point -- all through membership/example queries only.
"""

from dataclasses import dataclass, field
import math

from . import partition as pt


@dataclass
class Reject:
    stage: str
    reason: str
    evidence: object = None


@dataclass(frozen=True)
class TesterParams:
    k: int
    epsilon: float
    delta: float = 1.0 / 15
    c: float = 3.0  # closeness factor: the kept restriction is (epsilon/c)-close
    beta: float = 1.0 / 30  # literal-closeness radius

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise ValueError("epsilon must lie in (0,1)")
        if not 0 < self.beta <= 1.0 / 30:
            raise ValueError("beta must lie in (0, 1/30]")
        if self.k < 1:
            raise ValueError("k must be >= 1")


@dataclass
class RelevantSetRecord:
    """Found relevant blocks of f(x_X ∘ 0).

    X is the union mask of the blocks indexed by I; witnesses[ℓ] is a point v
    with zeros outside X such that zeroing block ℓ flips f."""
    partition: pt.Partition
    X: int
    I: list  # block indices, in discovery order
    witnesses: dict  # block index -> witness point

    @property
    def q(self):
        return len(self.I)

    def check_witnesses(self, mq) -> bool:
        """Verify the two-query witness invariant for every block."""
        for ell in self.I:
            v = self.witnesses[ell]
            if v & ~self.X:
                return False
            if mq(v) == mq(v & ~self.partition.blocks[ell]):
                return False
        return True


# ---------------------------------------------------------------------------
# Uniform junta testing (used standalone and inside test_sets)
# ---------------------------------------------------------------------------

def uniform_junta(mq, n, k, epsilon, delta, rng, free_mask=None):
    """One-sided uniform-distribution k-junta tester.

    Operates on the coordinates of `free_mask` (default: all n).  Accepts
    every k-junta with certainty; rejects functions epsilon-far from every
    k-junta with probability >= 1-delta, returning k+1 disjoint relevant
    blocks with witness pairs as evidence.
    """
    if free_mask is None:
        free_mask = (1 << n) - 1
    coords = [i for i in range(n) if (free_mask >> i) & 1]
    if not coords:
        return "accept"
    r = min(len(coords), 2 * (k + 1) * (k + 1))
    blocks = [0] * r
    for i in coords:
        blocks[rng.randrange(r)] |= 1 << i
    part = pt.Partition(n, tuple(blocks))

    window = max(1, math.ceil((2.0 / epsilon) * math.log(3.0 * (k + 1) / delta)))
    found = []  # (block index, witness pair (a, b))
    X = 0
    streak = 0
    while True:
        u = rng.getrandbits(n)
        w = (u & X) | (rng.getrandbits(n) & free_mask & ~X) | (u & ~free_mask)
        fu = mq(u)
        if mq(w) == fu:
            streak += 1
            if streak >= window:
                return "accept"
            continue
        cands = [ell for ell in range(r)
                 if blocks[ell] & ~X and (u ^ w) & blocks[ell]]
        ell, a, b, _ = pt.binary_search_relevant_block(mq, u, fu, w, part, cands)
        found.append((ell, (a, b)))
        X |= blocks[ell]
        streak = 0
        if len(found) > k:
            return Reject("uniform_junta",
                          f"found {len(found)} disjoint relevant blocks",
                          evidence=[(part.blocks[e], ab) for e, ab in found])


# ---------------------------------------------------------------------------
# ApproxTarget
# ---------------------------------------------------------------------------

def _discrepancy_rounds(mq, partition, state, u, fu, k):
    """Handle one observed discrepancy f(u) != f(u_X ∘ 0): binary-search new
    relevant blocks and settle the witness pool until every found block has a
    witness of f(x_X ∘ 0).  Mutates state = [X, I, witnesses].  Returns None
    or a Reject."""
    blocks = partition.blocks
    W = []  # pending (block, point) pairs, processed last-in-first-out
    pending = (u, fu)  # point with f(pending) != f(pending_X ∘ 0)
    while True:
        if pending is not None:
            u, fu = pending
            pending = None
            cands = [ell for ell in range(partition.r)
                     if ell not in state[1] and (u & ~state[0]) & blocks[ell]]
            ell, a, _b, _ = pt.binary_search_relevant_block(
                mq, u, fu, u & state[0], partition, cands)
            # a keeps u's bits on the found block; zeroing that block flips f
            state[0] |= blocks[ell]
            state[1].append(ell)
            if len(state[1]) > k:
                return Reject("approx_target",
                              f"more than {k} disjoint relevant blocks")
            W.append((ell, a))
        if not W:
            return None
        blk, w = W[-1]
        X = state[0]
        p1 = w & X
        f1 = mq(p1)
        f2 = mq(p1 & ~blocks[blk])
        if f1 != f2:
            W.pop()
            state[2][blk] = p1
            continue
        fw = mq(w)
        if f1 != fw:
            pending = (w, fw)
        else:
            # f(w) != f(w with blk zeroed) held when w was found, so the
            # zeroed point disagrees with its own X-restriction here
            pending = (w & ~blocks[blk], 1 - f1)


def approx_target(oracle, params, rng, improved=False):
    """Find (X, I, witnesses) such that f(x_X ∘ 0) is (epsilon/c)-close to f
    under the oracle's distribution, or Reject after exceeding k blocks.

    The improved schedule replaces the agreement window by a fixed number of
    main iterations, snapshots X after each one, and keeps the snapshot whose
    restriction empirically disagrees with f least often.
    """
    n = oracle.n
    k, eps, c = params.k, params.epsilon, params.c
    partition = pt.random_partition(n, 2 * k * k, rng)
    state = [0, [], {}]  # X mask, I, witnesses

    if not improved:
        M = math.ceil(c * k * math.log(15.0 * k) / eps)
        window = math.ceil(c * math.log(15.0 * k) / eps)
        t = 0
        for _ in range(M):
            u, fu = oracle.exq(rng)
            t += 1
            if oracle.mq(u & state[0]) != fu:
                rej = _discrepancy_rounds(oracle.mq, partition, state, u, fu, k)
                if rej is not None:
                    return rej
                t = 0
            if t >= window:
                break
        return RelevantSetRecord(partition, state[0], list(state[1]),
                                 dict(state[2]))

    M = math.ceil(16.0 * c * k / eps)
    snapshots = [(0, 0, {})]  # (X, |I|, witnesses) before any iteration
    for _ in range(M):
        u, fu = oracle.exq(rng)
        if oracle.mq(u & state[0]) != fu:
            rej = _discrepancy_rounds(oracle.mq, partition, state, u, fu, k)
            if rej is not None:
                return rej
        if state[0] != snapshots[-1][0]:
            snapshots.append((state[0], len(state[1]), dict(state[2])))
    N = math.ceil((96.0 * c / eps) * math.log(60.0 * k))
    errors = [0] * len(snapshots)
    for _ in range(N):
        u, fu = oracle.exq(rng)
        for i, (X, _, _) in enumerate(snapshots):
            if oracle.mq(u & X) != fu:
                errors[i] += 1
    best = min(range(len(snapshots)), key=lambda i: (errors[i], i))
    X, qlen, wit = snapshots[best]
    return RelevantSetRecord(partition, X, state[1][:qlen], wit)


# ---------------------------------------------------------------------------
# TestSets
# ---------------------------------------------------------------------------

def test_sets(mq, n, rec, rng, beta=1.0 / 30):
    """Check that every found block restricted at its witness behaves like a
    single literal: a 1-junta test at radius beta plus a complement check."""
    for ell in rec.I:
        Xl = rec.partition.blocks[ell]
        v = rec.witnesses[ell]
        base = v & ~Xl

        def slice_mq(x, _b=base, _m=Xl):
            return mq((x & _m) | _b)

        res = uniform_junta(slice_mq, n, 1, beta, 1.0 / 15, rng, free_mask=Xl)
        if isinstance(res, Reject):
            return Reject("test_sets", f"block {ell} is not close to a 1-junta",
                          evidence=res.evidence)
        b = rng.getrandbits(n) & Xl
        if mq(b | base) == mq((b ^ Xl) | base):
            return Reject("test_sets",
                          f"block {ell} fails the complement check")
    return "ok"


# ---------------------------------------------------------------------------
# RelVarValues and F-evaluation
# ---------------------------------------------------------------------------

def rel_var_values(mq, w, rec, k, delta, rng, beta=None):
    """Read off z_ℓ = w_{τ(ℓ)} for the hidden literal variable of every block,
    or Reject with a certificate that some block holds two relevant variables.

    With beta set, uses the generalized repeat count valid for blocks only
    beta-close to literals."""
    if beta is None:
        h = max(1, math.ceil(math.log(k / delta) / math.log(4.0 / 3)))
    else:
        h = max(1, math.ceil(math.log(k / delta)
                             / math.log(1.0 / (3.0 * math.sqrt(beta)))))
    z = {}
    for ell in rec.I:
        Xl = rec.partition.blocks[ell]
        v = rec.witnesses[ell]
        base_out = v & ~Xl
        Y1 = Xl & w
        Y0 = Xl & ~w
        G0 = G1 = 0
        for _ in range(h):
            b = rng.getrandbits(rec.partition.n) & Xl
            fb = mq(b | base_out)
            if mq((b ^ Y0) | base_out) != fb:
                G0 += 1
            if mq((b ^ Y1) | base_out) != fb:
                G1 += 1
        if {G0, G1} != {0, h}:
            return Reject("rel_var_values",
                          f"block {ell} counters ({G0},{G1}) out of h={h}")
        z[ell] = 0 if G0 == h else 1
    return z


def eval_F(mq, rec, z) -> int:
    """Value of the collapsed function F at the block assignment z, with one
    membership query: every coordinate of block ℓ is set to z_ℓ, 0 elsewhere."""
    x = 0
    for ell in rec.I:
        if z[ell]:
            x |= rec.partition.blocks[ell]
    return mq(x)
