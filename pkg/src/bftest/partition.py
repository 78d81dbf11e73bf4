"""Random coordinate partitions and the block-level binary search that turns a
single discrepancy pair into a relevant block.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Partition:
    """Partition of the n coordinates into r blocks, stored as bitmasks.
    Blocks may be empty."""
    n: int
    blocks: tuple  # tuple of int masks, disjoint, union = (1<<n)-1

    @property
    def r(self):
        return len(self.blocks)

    def block_of(self, i: int) -> int:
        for ell, b in enumerate(self.blocks):
            if (b >> i) & 1:
                return ell
        raise ValueError(f"coordinate {i} not covered")

    def mask_of(self, block_indices) -> int:
        m = 0
        for ell in block_indices:
            m |= self.blocks[ell]
        return m


def random_partition(n: int, r: int, rng) -> Partition:
    """Each coordinate lands in a uniformly random one of r blocks,
    independently."""
    blocks = [0] * r
    for i in range(n):
        blocks[rng.randrange(r)] |= 1 << i
    return Partition(n, tuple(blocks))


def compose(u: int, mask: int, w: int) -> int:
    """Point taking u's bits on `mask` and w's bits elsewhere."""
    return (u & mask) | (w & ~mask)


def binary_search_relevant_block(mq, u: int, fu: int, w: int,
                                 partition: Partition, candidates):
    """Given f(u) = fu != f(w), find a block on which flipping between the two
    endpoints changes f.

    `candidates` is a sequence of block indices covering every block where u
    and w differ.  Splits ascending: at each step the first half of the
    remaining candidates is moved from u toward w.  Since both endpoint values
    are known to the caller, at most ceil(log2(len(candidates))) membership
    queries are made.  Every intermediate point agrees with u and w wherever
    they agree.

    Returns (block_index, a, b, queries) with a, b differing only inside the
    found block and f(a) != f(b); a carries the fu side's value.
    """
    cands = list(candidates)
    queries = 0
    while len(cands) > 1:
        half = cands[: (len(cands) + 1) // 2]
        mid = compose(w, partition.mask_of(half), u)
        fmid = mq(mid)
        queries += 1
        if fmid != fu:
            w = mid
            cands = half
        else:
            u = mid
            cands = cands[len(half):]
    return cands[0], u, w, queries
