"""Experiment orchestration: certified instance generation, seeded repeated
trials with query accounting, and the per-class tester configurations used by
the CLI and the acceptance suite.
"""

from dataclasses import dataclass, field
import hashlib
import json
import math
import random
import statistics
import time

from . import boolfn
from . import learners
from . import reduction
from .boolfn import ClassDesc, EnumerationRefused
from .junta import Reject, TesterParams, approx_target
from .oracle import TargetOracle
from .pipeline import ClassConfig, ListCandidates, tester_C


# ---------------------------------------------------------------------------
# Classification and generation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    kind: str  # InClass | EpsFar | Neither | Uncertified
    distance: float = None


def classify_instance(spec, cls, epsilon, dist=None) -> Classification:
    try:
        d = boolfn.distance_to_class(spec, cls, dist)
    except EnumerationRefused:
        return Classification("Uncertified")
    if d == 0.0:
        return Classification("InClass", 0.0)
    if d > epsilon:
        return Classification("EpsFar", d)
    return Classification("Neither", d)


class GenerationFailed(Exception):
    pass


def _random_table_on(n, positions, rng):
    """Random function depending only on the listed coordinates."""
    m = len(positions)
    sub = [rng.getrandbits(1) for _ in range(1 << m)]
    table = bytearray(1 << n)
    for x in range(1 << n):
        key = 0
        for j, i in enumerate(positions):
            key |= boolfn.bit(x, i) << j
        table[x] = sub[key]
    return boolfn.TruthTable(n, bytes(table))


def trials_needed(gap, confidence):
    """Smallest trial count with Hoeffding tail exp(-2 gap^2 m) <= 1-conf."""
    if not 0 < gap <= 1 or not 0 < confidence < 1:
        raise ValueError("gap and confidence must lie in (0,1)")
    return math.ceil(math.log(1.0 / (1.0 - confidence)) / (2.0 * gap * gap))


# ---------------------------------------------------------------------------
# Per-class tester configurations
# ---------------------------------------------------------------------------

def _int_exq(fview):
    def exq(rng):
        z, Fz = fview.exq(rng)
        x = 0
        for i, zi in enumerate(z):
            x |= zi << i
        return x, Fz
    return exq


def _parity_enumerator(q):
    def make(S):
        def g(z):
            v = 0
            for i in range(q):
                if (S >> i) & 1:
                    v ^= z[i]
            return v
        return g
    return ListCandidates([make(S) for S in range(1 << q)], bound=1 << q)


def _term_enumerator(q):
    funcs = [lambda z: 0, lambda z: 1]
    def make(p):
        def g(z):
            return int(all(z[i] == ((p >> i) & 1) for i in range(q)))
        return g
    funcs += [make(p) for p in range(1 << q)]
    return ListCandidates(funcs, bound=2 + (1 << q))


def _run_junta(oracle, params, epsilon, rng, model):
    tp = TesterParams(k=params["k"], epsilon=epsilon)
    rec = approx_target(oracle, tp, rng, improved=params.get("improved", False))
    return rec if isinstance(rec, Reject) else "accept"


def _run_linear(oracle, params, epsilon, rng, model):
    cls = ClassConfig("linear", k=params["k"], enumerator=_parity_enumerator)
    tp = TesterParams(k=params["k"], epsilon=epsilon)
    return tester_C(oracle, cls, tp, rng, model=model)


def _run_term(oracle, params, epsilon, rng, model):
    cls = ClassConfig("term", k=params["k"], enumerator=_term_enumerator)
    tp = TesterParams(k=params["k"], epsilon=epsilon)
    return tester_C(oracle, cls, tp, rng, model=model)


def _run_monotone_dnf(oracle, params, epsilon, rng, model):
    s, r = params["s"], params["r"]

    def pac(fview, q, eps, dlt, lrng, _rec):
        return learners.learn_monotone(fview.mq_point, _int_exq(fview),
                                       q, eps, dlt, s, max(r, 1), lrng)

    cls = ClassConfig("monotone_dnf", k=params["k"], pac_learner=pac,
                      hyp_class=ClassDesc("monotone_dnf", s=s, r=r))
    tp = TesterParams(k=params["k"], epsilon=epsilon)
    return tester_C(oracle, cls, tp, rng, model=model)


def _run_poly(oracle, params, epsilon, rng, model):
    s, d = params["s"], params["d"]

    def pac(fview, q, eps, dlt, lrng, _rec):
        return learners.learn_polynomial(fview.mq_point, _int_exq(fview),
                                         q, eps, dlt, s, max(d, 1), lrng)

    cls = ClassConfig("poly_f2", k=params["k"], pac_learner=pac,
                      hyp_class=ClassDesc("poly_f2", s=s, d=d))
    tp = TesterParams(k=params["k"], epsilon=epsilon)
    return tester_C(oracle, cls, tp, rng, model=model)


def _run_dnf(oracle, params, epsilon, rng, model):
    if model != "uniform":
        raise ValueError("the DNF tester runs in the uniform model only")
    rp = reduction.ReductionParams(s=params["s"], lam=6.0, c=2, lead=4.0,
                                   term_cap=params.get("term_cap", 3))
    return reduction.tester_approx_C(oracle, epsilon, rp, rng)


def _run_decision_list(oracle, params, epsilon, rng, model):
    if model != "uniform":
        raise ValueError("the decision-list tester runs in the uniform model only")
    rp = reduction.ReductionParams(c=2, c1=2.0, c_prime=2.0)
    return reduction.tester_decision_list(oracle, epsilon, rp, rng,
                                          s=params["s"], r=params.get("r", 1))


def _gen_junta(n, params, rng):
    positions = rng.sample(range(n), params["k"])
    return _random_table_on(n, positions, rng)


def _gen_linear(n, params, rng):
    size = rng.randrange(1, params["k"] + 1)
    return boolfn.LinearF2(n, frozenset(v + 1 for v in rng.sample(range(n), size)))


def _gen_term(n, params, rng):
    size = rng.randrange(1, min(params["k"], 2) + 1)
    lits = tuple((v + 1) * rng.choice((1, -1)) for v in rng.sample(range(n), size))
    return boolfn.Dnf(n, (lits,))


def _gen_monotone_dnf(n, params, rng):
    s = rng.randrange(1, params["s"] + 1)
    pool = rng.sample(range(n), 2 * s)
    terms, at = [], 0
    for _ in range(s):
        size = rng.randrange(1, params["r"] + 1)
        terms.append(tuple(v + 1 for v in pool[at:at + size]))
        at += size
    return boolfn.MonotoneDnf(n, tuple(terms))


def _gen_dnf(n, params, rng):
    cap = params.get("term_cap", 3)
    pool = rng.sample(range(n), params["s"] * cap)
    terms, at = [], 0
    for _ in range(params["s"]):
        size = rng.randrange(1, cap + 1)
        terms.append(tuple((v + 1) * rng.choice((1, -1)) for v in pool[at:at + size]))
        at += size
    return boolfn.Dnf(n, tuple(terms))


def _gen_poly(n, params, rng):
    s = rng.randrange(1, params["s"] + 1)
    pool = rng.sample(range(n), params["s"] * params["d"])
    monos, at = [], 0
    for _ in range(s):
        size = rng.randrange(1, params["d"] + 1)
        monos.append(tuple(v + 1 for v in pool[at:at + size]))
        at += size
    return boolfn.SparsePolyF2(n, tuple(monos))


def _gen_decision_list(n, params, rng):
    vars_ = rng.sample(range(n), params["s"])
    rules = tuple((v + 1, rng.getrandbits(1), rng.getrandbits(1)) for v in vars_)
    return boolfn.DecisionList(n, rules, rng.getrandbits(1))


def _far_from_constants(spec, epsilon):
    tt = spec.truth_table()
    p1 = int(tt.sum()) / len(tt)
    return min(p1, 1.0 - p1) > epsilon


@dataclass(frozen=True)
class ClassSetup:
    desc: object  # ClassDesc used for certification
    defaults: dict
    gen_member: object
    far_m: int  # relevant-variable count of random far candidates
    run: object
    models: tuple = ("uniform", "distribution_free")
    needs_const_gap: bool = False  # far instances must also avoid constants


CLASSES = {
    "junta": ClassSetup(ClassDesc("junta", k=4), {"k": 4, "n": 16},
                        _gen_junta, 6, _run_junta),
    "linear": ClassSetup(ClassDesc("linear", k=4), {"k": 4, "n": 16},
                         _gen_linear, 5, _run_linear, needs_const_gap=True),
    "term": ClassSetup(ClassDesc("term", k=4), {"k": 4, "n": 16},
                       _gen_term, 5, _run_term, needs_const_gap=True),
    "monotone_dnf": ClassSetup(ClassDesc("monotone_dnf", s=3, r=2),
                               {"k": 6, "s": 3, "r": 2, "n": 16},
                               _gen_monotone_dnf, 5, _run_monotone_dnf,
                               needs_const_gap=True),
    "dnf": ClassSetup(ClassDesc("dnf", s=2), {"s": 2, "term_cap": 3, "n": 16},
                      _gen_dnf, 5, _run_dnf, models=("uniform",),
                      needs_const_gap=True),
    "poly_f2": ClassSetup(ClassDesc("poly_f2", s=2, d=2),
                          {"k": 4, "s": 2, "d": 2, "n": 16},
                          _gen_poly, 5, _run_poly),
    "decision_list": ClassSetup(ClassDesc("decision_list", s=4),
                                {"s": 4, "n": 16}, _gen_decision_list, 5,
                                _run_decision_list, models=("uniform",)),
}


def generate_instance(cls_name, params, rng, want="member", epsilon=0.2,
                      max_attempts=200):
    setup = CLASSES[cls_name]
    p = dict(setup.defaults)
    p.update(params or {})
    n = p["n"]
    if want == "member":
        for _ in range(max_attempts):
            spec = setup.gen_member(n, p, rng)
            if classify_instance(spec, setup.desc, epsilon).kind == "InClass":
                return spec
        raise GenerationFailed(f"no certified member of {cls_name}")
    if want != "far":
        raise ValueError(f"unknown want {want!r}")
    for _ in range(max_attempts):
        positions = rng.sample(range(n), setup.far_m)
        spec = _random_table_on(n, positions, rng)
        if setup.needs_const_gap and not _far_from_constants(spec, epsilon):
            continue
        if classify_instance(spec, setup.desc, epsilon).kind == "EpsFar":
            return spec
    raise GenerationFailed(f"no certified far instance for {cls_name}")


# ---------------------------------------------------------------------------
# Experiments
# ---------------------------------------------------------------------------

@dataclass
class TrialReport:
    outcome: str  # Accept | Reject | Fail
    ledger: dict
    seed: int
    stage_reached: str
    wall_time: float


@dataclass
class ExperimentConfig:
    cls: str
    epsilon: float = 0.2
    trials: int = 1
    seed: int = 0
    model: str = "uniform"
    want: str = "member"
    params: dict = field(default_factory=dict)
    dist: object = None  # Distribution, or None for uniform
    instances: list = None  # explicit instance list; bypasses the generator
    budget_cap: int = 0  # total queries per trial, 0 = unlimited
    far_pool: int = 8

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.cls not in CLASSES:
            raise ValueError(f"unknown class {self.cls!r}")
        if self.model not in CLASSES[self.cls].models:
            raise ValueError(f"{self.cls} does not support model {self.model!r}")


def _subseed(seed, tag, i):
    digest = hashlib.sha256(f"{seed}:{tag}:{i}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def run_trial(config, spec, trial_seed):
    setup = CLASSES[config.cls]
    p = dict(setup.defaults)
    p.update(config.params)
    rng = random.Random(trial_seed)
    oracle = TargetOracle(spec, dist=config.dist)
    t0 = time.monotonic()
    try:
        res = setup.run(oracle, p, config.epsilon, rng, config.model)
        if res == "accept":
            outcome, stage = "Accept", "accept"
        else:
            outcome, stage = "Reject", res.stage
    except Exception as exc:  # per-trial panics never abort the batch
        outcome, stage = "Fail", f"fail:{type(exc).__name__}"
    if config.budget_cap and oracle.ledger.total() > config.budget_cap:
        outcome, stage = "Fail", "fail:budget_cap"
    return TrialReport(outcome, oracle.ledger.snapshot(), trial_seed, stage,
                       time.monotonic() - t0)


def run_experiment(config):
    """Seeded repeated trials; returns (report dict, trial reports)."""
    pool_rng = random.Random(_subseed(config.seed, "pool", 0))
    if config.instances is not None:
        pool = list(config.instances)
    elif config.want == "member":
        pool = [generate_instance(config.cls, config.params, pool_rng,
                                  want="member", epsilon=config.epsilon)
                for _ in range(min(config.trials, 32))]
    else:
        pool = [generate_instance(config.cls, config.params, pool_rng,
                                  want="far", epsilon=config.epsilon)
                for _ in range(min(config.trials, config.far_pool))]
    trials = []
    for i in range(config.trials):
        spec = pool[i % len(pool)]
        trials.append(run_trial(config, spec, _subseed(config.seed, "trial", i)))
    return aggregate_report(config, trials), trials


def _query_stats(values):
    return {"min": min(values), "median": float(statistics.median(values)),
            "max": max(values)}


def aggregate_report(config, trials):
    accepts = sum(t.outcome == "Accept" for t in trials)
    m = len(trials)
    hw = math.sqrt(math.log(2.0 / 0.05) / (2.0 * m))
    rate = accepts / m
    stage_rejects = {}
    for t in trials:
        if t.outcome != "Accept":
            stage_rejects[t.stage_reached] = stage_rejects.get(t.stage_reached, 0) + 1
    return {
        "accept_rate": rate,
        "ci95": [max(0.0, rate - hw), min(1.0, rate + hw)],
        "queries": {kind: _query_stats([t.ledger[kind] for t in trials])
                    for kind in ("mq", "exq", "wexq")},
        "stage_rejects": stage_rejects,
        "seed": config.seed,
        "config_echo": {
            "class": config.cls, "epsilon": config.epsilon,
            "trials": config.trials, "model": config.model,
            "want": config.want, "params": dict(sorted(config.params.items())),
            "budget_cap": config.budget_cap,
        },
    }


def report_json(report) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":"))
