"""Command-line interface: `bftest test|learn|bench|selftest`."""

import csv
import json
import math
import random
import sys

import click

from . import acceptance
from . import boolfn
from . import harness
from . import learners
from .junta import TesterParams, approx_target
from .oracle import TargetOracle

CONFIG_ERROR = 2
THRESHOLD_ERROR = 3


def _load_spec(path):
    with open(path) as fh:
        return boolfn.spec_from_json(fh.read())


def _load_dist(path, n):
    with open(path) as fh:
        d = json.load(fh)
    kind = d.get("kind")
    if kind == "uniform":
        return boolfn.Uniform(n)
    if kind == "product":
        return boolfn.ProductBias(tuple(d["probs"]))
    if kind == "explicit":
        return boolfn.Explicit(n, tuple(d["points"]), tuple(d["probs"]))
    raise ValueError(f"unknown distribution kind {kind!r}")


@click.group()
def main():
    """Property testers and learners for Boolean function classes."""


@main.command("test")
@click.option("--class", "cls", required=True,
              type=click.Choice(sorted(harness.CLASSES)))
@click.option("--spec", "spec_path", default=None,
              help="Target function as JSON; omitted: generated members.")
@click.option("--epsilon", type=float, required=True)
@click.option("--model", type=click.Choice(["uniform", "dfree", "weak"]),
              default="uniform")
@click.option("--dist", "dist_path", default=None)
@click.option("--seed", type=int, default=0)
@click.option("--trials", type=int, default=1)
@click.option("--out", "out_path", default=None)
def test_cmd(cls, spec_path, epsilon, model, dist_path, seed, trials, out_path):
    """Run a class tester for repeated seeded trials and report statistics."""
    model_name = {"uniform": "uniform", "dfree": "distribution_free",
                  "weak": "distribution_free"}[model]
    try:
        instances = [_load_spec(spec_path)] if spec_path else None
        dist = None
        if dist_path:
            n = instances[0].n if instances else harness.CLASSES[cls].defaults["n"]
            dist = _load_dist(dist_path, n)
        cfg = harness.ExperimentConfig(cls=cls, epsilon=epsilon, trials=trials,
                                       seed=seed, model=model_name,
                                       instances=instances, dist=dist)
    except (OSError, ValueError, KeyError) as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(CONFIG_ERROR)
    report, _ = harness.run_experiment(cfg)
    text = harness.report_json(report)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    click.echo(text)


@main.command("learn")
@click.option("--learner", required=True,
              type=click.Choice(["monotone", "poly", "poly-unif", "dlist"]))
@click.option("--spec", "spec_path", required=True)
@click.option("--epsilon", type=float, required=True)
@click.option("--delta", type=float, required=True)
@click.option("--seed", type=int, default=0)
@click.option("--s", "s", type=int, default=3, help="sparsity/term bound")
@click.option("--r", "r", type=int, default=3, help="term size / degree bound")
def learn_cmd(learner, spec_path, epsilon, delta, seed, s, r):
    """Run a membership/example-query learner on a target and print the
    hypothesis with its exact distance (n <= 24)."""
    try:
        spec = _load_spec(spec_path)
    except (OSError, ValueError, KeyError) as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(CONFIG_ERROR)
    rng = random.Random(seed)
    oracle = TargetOracle(spec)
    n = spec.n
    if learner == "monotone":
        hyp = learners.learn_monotone(oracle.mq, oracle.exq, n, epsilon, delta, s, r, rng)
    elif learner == "poly":
        hyp = learners.learn_polynomial(oracle.mq, oracle.exq, n, epsilon, delta, s, r, rng)
    elif learner == "poly-unif":
        hyp = learners.learn_poly_unif(oracle.mq, oracle.exq, n, epsilon, delta, s, rng)
    else:
        hyp = learners.learn_decision_list(oracle.exq, n, epsilon, delta, rng)
    d = boolfn.distance(spec, hyp)
    click.echo(json.dumps({"hypothesis": hyp.to_dict(), "distance": d,
                           "queries": oracle.ledger.snapshot()}, sort_keys=True))


@main.command("bench")
@click.option("--grid", "grid_path", required=True,
              help='JSON: {"k": [...], "epsilon": [...], "seeds": m, "improved": bool}')
@click.option("--out", "out_path", required=True)
def bench_cmd(grid_path, out_path):
    """Query-count sweep of the junta tester over a (k, epsilon) grid."""
    try:
        with open(grid_path) as fh:
            grid = json.load(fh)
        ks = [int(k) for k in grid["k"]]
        epss = [float(e) for e in grid["epsilon"]]
        seeds = int(grid.get("seeds", 3))
        improved = bool(grid.get("improved", False))
    except (OSError, ValueError, KeyError) as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(CONFIG_ERROR)
    rows = []
    for k in ks:
        n = k + 2
        grng = random.Random(100 + k)
        member = harness._random_table_on(n, grng.sample(range(n), k), grng)
        for eps in epss:
            worst = total = 0
            for seed in range(seeds):
                o = TargetOracle(member)
                approx_target(o, TesterParams(k=k, epsilon=eps),
                              random.Random(seed), improved=improved)
                worst = max(worst, o.ledger.total())
                total += o.ledger.total()
            rows.append({"k": k, "epsilon": eps, "improved": improved,
                         "max_queries": worst, "mean_queries": total / seeds,
                         "bound_k_logk_over_eps":
                             math.ceil(k * max(math.log2(k), 1) / eps)})
    with open(out_path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)
    click.echo(f"wrote {len(rows)} rows to {out_path}")


@main.command("selftest")
@click.option("--trials", type=int, default=200, show_default=True)
@click.option("--exact-cases", type=int, default=10_000, show_default=True)
@click.option("--learner-runs", type=int, default=50, show_default=True)
def selftest_cmd(trials, exact_cases, learner_runs):
    """Run the full acceptance suite; exit 3 on any threshold violation."""
    ok, lines = acceptance.run_all(trials=trials, exact_cases=exact_cases,
                                   learner_runs=learner_runs)
    for label, passed, detail in lines:
        click.echo(f"{'PASS' if passed else 'FAIL'} {label}: {detail}")
    if not ok:
        sys.exit(THRESHOLD_ERROR)


if __name__ == "__main__":
    main()
