import math
import random

from hypothesis import given, settings, strategies as st

from bftest import boolfn
from bftest import partition as pt


@given(st.integers(1, 16), st.integers(1, 10), st.integers(0, 2 ** 32))
@settings(max_examples=100, deadline=None)
def test_random_partition_covers_each_coordinate_once(n, r, seed):
    part = pt.random_partition(n, r, random.Random(seed))
    assert part.r == r
    union = 0
    for b in part.blocks:
        assert union & b == 0
        union |= b
    assert union == (1 << n) - 1


@given(st.integers(0, 2 ** 12 - 1), st.integers(0, 2 ** 12 - 1),
       st.integers(0, 2 ** 12 - 1))
@settings(max_examples=100, deadline=None)
def test_compose(u, mask, w):
    y = pt.compose(u, mask, w)
    assert y & mask == u & mask
    assert y & ~mask == w & ~mask


def test_block_of_and_mask_of():
    part = pt.Partition(4, (0b0011, 0b1100))
    assert part.block_of(0) == 0 and part.block_of(3) == 1
    assert part.mask_of([0, 1]) == 0b1111


@given(st.integers(2, 12), st.integers(0, 2 ** 32), st.integers(2, 8))
@settings(max_examples=200, deadline=None)
def test_binary_search_bound_and_correctness(n, seed, r):
    rng = random.Random(seed)
    part = pt.random_partition(n, r, rng)
    i = rng.randrange(n)

    count = [0]

    def mq(x):
        count[0] += 1
        return boolfn.bit(x, i)

    u = rng.getrandbits(n)
    w = u ^ (1 << i) ^ (rng.getrandbits(n) & ~(1 << i))
    cands = [ell for ell in range(r) if (u ^ w) & part.blocks[ell]]
    ell, a, b, q = pt.binary_search_relevant_block(
        mq, u, boolfn.bit(u, i), w, part, cands)
    bound = math.ceil(math.log2(len(cands))) if len(cands) > 1 else 0
    assert q == count[0] <= bound
    assert (part.blocks[ell] >> i) & 1
    assert (a ^ b) & ~part.blocks[ell] == 0
    assert boolfn.bit(a, i) != boolfn.bit(b, i)
    # the a endpoint carries the f(u) side
    assert boolfn.bit(a, i) == boolfn.bit(u, i)
