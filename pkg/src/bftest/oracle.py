"""Query oracles over a hidden target function with per-kind ledgers.

Three access modes: membership queries (mq), random examples from a fixed
distribution (exq), and weak examples (wexq) which flip a fair coin between a
distribution draw and an adversarially chosen point.  Every call hits the
target afresh -- nothing is memoized, so ledgers reflect true query counts.
"""

from dataclasses import dataclass, field

from . import boolfn


@dataclass
class QueryLedger:
    mq: int = 0
    exq: int = 0
    wexq: int = 0

    def total(self) -> int:
        return self.mq + self.exq + self.wexq

    def snapshot(self) -> dict:
        return {"mq": self.mq, "exq": self.exq, "wexq": self.wexq}


class TargetOracle:
    """Oracle access to a target function under a sampling distribution.

    `adversary`, when given, is a callable (rng, history) -> point used for the
    adversarial half of weak-example queries; history is the list of points the
    adversary has supplied so far.  Defaults to uniform (a vacuous adversary).
    """

    def __init__(self, spec, dist=None, adversary=None):
        self.spec = spec
        self.n = spec.n
        self.dist = dist if dist is not None else boolfn.Uniform(spec.n)
        self.adversary = adversary
        self.ledger = QueryLedger()
        self._adv_history = []

    def mq(self, x: int) -> int:
        self.ledger.mq += 1
        return boolfn.evaluate(self.spec, x)

    def exq(self, rng):
        self.ledger.exq += 1
        x = self.dist.sample(rng)
        return x, boolfn.evaluate(self.spec, x)

    def wexq(self, rng):
        self.ledger.wexq += 1
        if rng.getrandbits(1):
            x = self.dist.sample(rng)
        elif self.adversary is not None:
            x = self.adversary(rng, tuple(self._adv_history))
            self._adv_history.append(x)
        else:
            x = rng.getrandbits(self.n) if self.n else 0
        return x, boolfn.evaluate(self.spec, x)

    def as_function(self):
        """Membership access as a plain callable (still counted)."""
        return self.mq


class RestrictedOracle:
    """View of an oracle with the coordinates outside `free_mask` pinned to the
    bits of `base`.  Queries are forwarded (and counted) on the parent."""

    def __init__(self, parent, free_mask: int, base: int):
        self.parent = parent
        self.n = parent.n
        self.free_mask = free_mask
        self.base = base & ~free_mask

    def mq(self, x: int) -> int:
        return self.parent.mq((x & self.free_mask) | self.base)
