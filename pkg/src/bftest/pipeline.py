"""The composed tester for subclasses of k-juntas.

After relevant-set discovery the target is collapsed to a function F over one
abstract variable per found block.  The stages here check that the restriction
f(x_X ∘ 0) agrees with F, and that F itself is close to the class -- either by
streaming elimination of an explicit candidate set or through a learning
algorithm run against F.
"""

from dataclasses import dataclass
import math

from . import boolfn
from .junta import Reject, approx_target, test_sets, rel_var_values, eval_F


@dataclass
class ClassConfig:
    """How the final stage handles a specific class.

    enumerator(q) must return a candidate set over q abstract variables;
    learners receive an FView and return a hypothesis FunctionSpec over q
    variables (or raise LearnFailed)."""
    name: str
    k: int
    enumerator: object = None
    consistency_checker: object = None
    exact_learner: object = None
    pac_learner: object = None
    witness_hints: bool = False
    hyp_class: object = None  # ClassDesc over q vars, or callable q -> ClassDesc
    learner_budget: object = None  # callable (q, eps, delta) -> max query count

    def __post_init__(self):
        if not any([self.enumerator, self.consistency_checker,
                    self.exact_learner, self.pac_learner]):
            raise ValueError("class config needs an enumerator, checker or learner")


class ListCandidates:
    """Materialized candidate set: callables over a q-bit tuple."""

    def __init__(self, funcs, bound=None):
        self.funcs = list(funcs)
        self.bound = bound if bound is not None else max(1, len(self.funcs))

    def eliminate(self, z, Fz):
        self.funcs = [g for g in self.funcs if g(z) == Fz]

    def is_empty(self):
        return not self.funcs

    def survivors(self):
        return list(self.funcs)


class PolarityTermCandidates:
    """The 2^q full-support polarity terms over q variables, kept implicitly.

    A polarity term with sign vector p accepts exactly the point z = p, so
    elimination needs only O(1) state: a positive observation pins the single
    survivor, a negative one removes at most one."""

    def __init__(self, q):
        self.q = q
        self.pinned = None  # the only possible survivor once F(z)=1 seen
        self.removed = set()
        self.dead = False
        self.bound = max(1, 2 ** q)

    def eliminate(self, z, Fz):
        if self.dead:
            return
        if Fz == 1:
            if z in self.removed or (self.pinned is not None and self.pinned != z):
                self.dead = True
            else:
                self.pinned = z
        else:
            if self.pinned == z:
                self.dead = True
            self.removed.add(z)
            if self.pinned is None and len(self.removed) >= 2 ** self.q:
                self.dead = True

    def is_empty(self):
        return self.dead

    def survivors(self):
        if self.dead:
            return []
        if self.pinned is not None:
            return [self.pinned]
        return [tuple((p >> i) & 1 for i in range(self.q))
                for p in range(2 ** self.q)
                if tuple((p >> i) & 1 for i in range(self.q)) not in self.removed]


class FView:
    """Query access to F for learners: q abstract variables, one f-MQ per
    F-MQ, simulated examples per the chosen model."""

    def __init__(self, oracle, rec, k, rng, model, rvv_delta=0.5, beta=None):
        self.oracle = oracle
        self.rec = rec
        self.k = k
        self.rng = rng
        self.model = model
        self.rvv_delta = rvv_delta
        self.beta = beta
        self.q = rec.q
        self.rejected = None  # set if a simulation certifies a bad block

    def _zdict(self, ztuple):
        return dict(zip(self.rec.I, ztuple))

    def mq(self, ztuple) -> int:
        return eval_F(self.oracle.mq, self.rec, self._zdict(ztuple))

    def mq_point(self, z_int) -> int:
        return self.mq(tuple((z_int >> i) & 1 for i in range(self.q)))

    def exq(self, rng):
        if self.model == "uniform":
            z = tuple(rng.getrandbits(1) for _ in range(self.q))
            return z, self.mq(z)
        u, _fu = self.oracle.exq(rng)
        zd = rel_var_values(self.oracle.mq, u, self.rec, self.k,
                            self.rvv_delta, rng, beta=self.beta)
        if isinstance(zd, Reject):
            self.rejected = zd
            raise SimulationReject(zd)
        z = tuple(zd[ell] for ell in self.rec.I)
        return z, self.mq(z)


class SimulationReject(Exception):
    def __init__(self, reject):
        self.reject = reject


class LearnFailed(Exception):
    pass


# ---------------------------------------------------------------------------
# Close f-to-F
# ---------------------------------------------------------------------------

def close_fF(oracle, rec, k, epsilon, delta, rng, mode="basic", beta=None):
    """Check that f(x_X ∘ 0) agrees with F on sampled points.

    basic: one rel-var-values readout per distribution draw.
    improved: the same schedule with the generalized readout repeat count.
    uniform_pairwise: spans many uniform test points from few seed readouts
    via XOR combinations (valid under the uniform distribution only)."""
    if mode in ("basic", "improved"):
        b = beta if mode == "improved" else None
        t = max(1, math.ceil((3.0 / epsilon) * math.log(2.0 / delta)))
        for _ in range(t):
            u, _fu = oracle.exq(rng)
            zd = rel_var_values(oracle.mq, u, rec, k, delta / (2 * t), rng, beta=b)
            if isinstance(zd, Reject):
                return zd
            if oracle.mq(u & rec.X) != eval_F(oracle.mq, rec, zd):
                return Reject("close_fF", "restriction disagrees with F")
        return "ok"

    if mode != "uniform_pairwise":
        raise ValueError(f"unknown mode {mode!r}")
    t = max(1, math.ceil(math.log2(12.0 / (epsilon * delta))))
    seeds = []
    readouts = []
    n = oracle.n
    for _ in range(t):
        w = rng.getrandbits(n)
        zd = rel_var_values(oracle.mq, w, rec, k, delta / (2 * t), rng, beta=beta)
        if isinstance(zd, Reject):
            return zd
        seeds.append(w)
        readouts.append(zd)
    m = min(math.ceil(6.0 / (epsilon * delta)), (1 << t) - 1)
    xis = rng.sample(range(1, 1 << t), m)
    for xi in xis:
        u = 0
        zd = {ell: 0 for ell in rec.I}
        for j in range(t):
            if (xi >> j) & 1:
                u ^= seeds[j]
                for ell in rec.I:
                    zd[ell] ^= readouts[j][ell]
        if oracle.mq(u & rec.X) != eval_F(oracle.mq, rec, zd):
            return Reject("close_fF", "pairwise span point disagrees with F")
    return "ok"


# ---------------------------------------------------------------------------
# Close F-to-class by candidate elimination
# ---------------------------------------------------------------------------

def close_FC(oracle, rec, cls, epsilon, delta, rng, model="distribution_free"):
    """Streaming elimination: every sampled point kills the candidates that
    disagree with F there; Reject exactly when no candidate survives."""
    cands = cls.enumerator(rec.q)
    bound = max(2, cands.bound)
    if model == "uniform":
        tau = math.ceil((3.0 / epsilon) * math.log(2.0 * bound / delta))
    else:
        tau = math.ceil((12.0 / epsilon) * math.log(2.0 * bound / delta))
    for _ in range(tau):
        if model == "uniform":
            z = tuple(rng.getrandbits(1) for _ in range(rec.q))
        else:
            u, _fu = oracle.exq(rng)
            zd = rel_var_values(oracle.mq, u, rec, cls.k, 0.5, rng)
            if isinstance(zd, Reject):
                return zd
            z = tuple(zd[ell] for ell in rec.I)
        Fz = eval_F(oracle.mq, rec, dict(zip(rec.I, z)))
        cands.eliminate(z, Fz)
        if cands.is_empty():
            return Reject("close_FC", "every candidate eliminated")
    return "ok"


# ---------------------------------------------------------------------------
# Close F-to-class via learning
# ---------------------------------------------------------------------------

def _hyp_in_class(cls, hyp, q) -> bool:
    """Loose membership: the hypothesis lies in the class over (a subset of)
    the q abstract variables."""
    if cls.hyp_class is None:
        return True
    desc = cls.hyp_class(q) if callable(cls.hyp_class) else cls.hyp_class
    return boolfn.is_member(hyp, desc)


def _estimate_hyp_distance(fview, hyp, t, rng):
    """Fraction of t sampled points where the hypothesis disagrees with F."""
    bad = 0
    for _ in range(t):
        z, Fz = fview.exq(rng)
        x = 0
        for i, zi in enumerate(z):
            x |= zi << i
        if boolfn.evaluate(hyp, x) != Fz:
            bad += 1
    return bad / t


def test_via_learner(oracle, rec, cls, epsilon, delta, rng, kind,
                     model="distribution_free"):
    """Run a consistency checker / exact learner / PAC learner against F and
    accept iff it succeeds within budget with a hypothesis close to F."""
    q = rec.q
    try:
        if kind == "consistency":
            t = math.ceil((12.0 if model != "uniform" else 3.0)
                          / epsilon * math.log(2.0 / delta))
            fview = FView(oracle, rec, cls.k, rng, model)
            samples = []
            for _ in range(t):
                z, Fz = fview.exq(rng)
                samples.append((z, Fz))
            if not cls.consistency_checker(samples, q):
                return Reject("test_via_learner", "no consistent class member")
            return "ok"

        fview = FView(oracle, rec, cls.k, rng, model)
        start = oracle.ledger.total()
        if kind == "exact":
            eps_run, delta_run = epsilon, delta / 3
            try:
                hyp = cls.exact_learner(fview, q, delta_run, rng, rec)
            except LearnFailed:
                return Reject("test_via_learner", "exact learner failed")
        elif kind == "pac":
            eps_run, delta_run = epsilon / 12, 1.0 / 24
            try:
                hyp = cls.pac_learner(fview, q, eps_run, delta_run, rng, rec)
            except LearnFailed:
                return Reject("test_via_learner", "learner declared failure")
        else:
            raise ValueError(f"unknown kind {kind!r}")
        if cls.learner_budget is not None:
            if oracle.ledger.total() - start > cls.learner_budget(q, eps_run, delta_run):
                return Reject("test_via_learner", "learner exceeded its budget")
        if not _hyp_in_class(cls, hyp, q):
            return Reject("test_via_learner", "hypothesis outside the class")

        if kind == "exact":
            if model == "uniform":
                t = math.ceil((3.0 / epsilon) * math.log(3.0 / delta))
            else:
                t = math.ceil((12.0 / epsilon) * math.log(2.0 / delta))
            d = _estimate_hyp_distance(fview, hyp, t, rng)
            if d > 0:
                return Reject("test_via_learner", "hypothesis disagrees with F")
            return "ok"
        # pac: threshold between accuracy eps/12 (in class) and eps/3 (far)
        t = math.ceil((60.0 / epsilon) * math.log(2.0 / delta))
        d = _estimate_hyp_distance(fview, hyp, t, rng)
        if d > epsilon / 5:
            return Reject("test_via_learner", "hypothesis too far from F")
        return "ok"
    except SimulationReject as sr:
        return sr.reject


# ---------------------------------------------------------------------------
# The composed tester
# ---------------------------------------------------------------------------

def tester_C(oracle, cls, params, rng, model="distribution_free",
             improved=False, final="auto", fF_mode=None):
    """approx_target -> test_sets -> close_fF -> final stage, short-circuiting
    on the first Reject."""
    rec = approx_target(oracle, params, rng, improved=improved)
    if isinstance(rec, Reject):
        return rec
    res = test_sets(oracle.mq, oracle.n, rec, rng, beta=params.beta)
    if isinstance(res, Reject):
        return res
    if fF_mode is None:
        fF_mode = "uniform_pairwise" if (improved and model == "uniform") else "basic"
    beta = params.beta if fF_mode != "basic" else None
    res = close_fF(oracle, rec, params.k, params.epsilon, 1.0 / 15, rng,
                   mode=fF_mode, beta=beta)
    if isinstance(res, Reject):
        return res
    if final == "auto":
        if cls.enumerator is not None:
            final = "close_FC"
        elif cls.exact_learner is not None:
            final = "exact"
        elif cls.pac_learner is not None:
            final = "pac"
        elif cls.consistency_checker is not None:
            final = "consistency"
        else:
            final = "none"
    if final == "none":
        return "accept"
    if final == "close_FC":
        res = close_FC(oracle, rec, cls, params.epsilon, 1.0 / 15, rng, model=model)
    else:
        res = test_via_learner(oracle, rec, cls, params.epsilon, 1.0 / 15, rng,
                               kind=final, model=model)
    if isinstance(res, Reject):
        return res
    return "accept"
