"""Batch experiment runner.

Every demo subcommand asserts its expected outcome internally and exits with
code 2 when an internal theorem-derived check fails; usage errors exit 1.
Reports are deterministic given the flags and seed, emitted as TSV key/value
rows or a JSON object.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import batch, classes, families, game, learners, significance
from .classes import FiniteClass, from_file, hd_prime, singletons, thresholds, to_file
from .core import Sample, canonical_index
from .errors import PropertyViolation
from .game import Horizon
from .littlestone import find_shattered_tree, ldim, max_witness_depth
from .machine import HaltsAnswer, TableOracle

ORACLE_ENV = "LITTLELAB_ORACLE"


def default_table_oracle() -> TableOracle:
    """Built-in table over programs e <= 8 with mixed self-halting bits.

    Self-halting: value e % 2 for e in {1,2,4,5,7,8}, divergence for
    {0,3,6}.  Input 0 halts for e in {1,2,3,4,5,7} (so those blocks are
    populated in the certificate families) and diverges for {0,6,8}.
    """
    halting = {}
    for e in (1, 2, 4, 5, 7, 8):
        halting[(e, e)] = e % 2
    for e in (1, 2, 3, 4, 5, 7):
        halting[(e, 0)] = 0
    diverging = {(0, 0), (6, 6), (0, 6), (3, 3), (6, 0), (8, 0)}
    return TableOracle(halting, diverging)


def load_oracle(path: str | None) -> TableOracle:
    path = path or os.environ.get(ORACLE_ENV)
    if path:
        return TableOracle.from_file(path)
    return default_table_oracle()


def build_class(args) -> FiniteClass:
    if args.file:
        return from_file(args.file)
    if args.builder == "thresholds":
        return thresholds(args.d)
    if args.builder == "singletons":
        return singletons(args.n)
    if args.builder == "hd-prime":
        return hd_prime(args.d)
    raise UsageError(f"unknown builder {args.builder!r}")


def build_learner(name: str, H: FiniteClass):
    if name == "sol":
        return learners.sol(H)
    if name == "conservative":
        return learners.conservative_learner()
    if name in ("const0", "const1"):
        return learners.constant_learner(int(name[-1]))
    if name == "fallback":
        # Only meaningful for the extended threshold family: sol plus the
        # predict-0 deviation on unseen extra instances.
        d = (H.domain_size + 1).bit_length() - 1
        threshold_rows = frozenset((1 << n) - 1 for n in range(1, (1 << d) + 1))
        if not threshold_rows <= H.rows:
            raise UsageError("fallback learner requires the hd-prime builder")
        return learners.threshold_fallback_learner(H, threshold_rows)
    if name.startswith("toy:"):
        return learners.toy_learner(int(name.split(":", 1)[1]))
    raise UsageError(f"unknown learner {name!r}")


class UsageError(ValueError):
    pass


def emit(report: list[tuple[str, object]], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps({key: value for key, value in report}, default=str))
    else:
        for key, value in report:
            print(f"{key}\t{value}")


def expect(condition: bool, message: str) -> None:
    if not condition:
        raise PropertyViolation(message)


def _sample_text(sample: Sample) -> str:
    return ",".join(f"{x}:{y}" for x, y in sample) or "-"


def _parse_sample(text: str) -> Sample:
    if not text or text == "-":
        return Sample()
    return Sample.of(*(tuple(map(int, part.split(":"))) for part in text.split(",")))


# ---------------------------------------------------------------------------
# Subcommands

def cmd_ldim(args) -> list[tuple[str, object]]:
    H = build_class(args)
    value = ldim(H)
    expect(value == max_witness_depth(H),
           "recursion and tree-search dimensions disagree")
    report = [("ldim", value)]
    if value >= 1:
        tree = find_shattered_tree(H, value)
        report.append(("witness_nodes", ",".join(map(str, tree.nodes))))
    expect(find_shattered_tree(H, value + 1) is None if H.rows else True,
           "witness exists above the reported dimension")
    return report


def cmd_duel(args) -> list[tuple[str, object]]:
    H = build_class(args)
    learner = build_learner(args.learner, H)
    horizon = Horizon(args.horizon)
    bound = game.mistake_bound(learner, H, horizon)
    return [("learner", learner.name),
            ("horizon", bound.horizon),
            ("mistake_bound", bound.value),
            ("optimal_bound", game.optimal_mistake_bound(H)),
            ("witness", _sample_text(bound.witness))]


def cmd_significance(args) -> list[tuple[str, object]]:
    H = build_class(args)
    report: list[tuple[str, object]] = []
    count = 0
    for sample in game._realizable_samples(H, args.max_len, H.domain_size):
        for x in range(H.domain_size):
            aopt = significance.is_aopt_significant(H, sample, x)
            opt = significance.is_opt_significant(H, sample, x)
            key = f"S={_sample_text(sample)};x={x}"
            report.append(
                (key, f"aopt={int(aopt.significant)}:{aopt.forced_prediction} "
                      f"opt={int(opt.significant)}:{opt.forced_prediction}"))
            count += 1
    report.insert(0, ("inputs", count))
    return report


def cmd_demo_hdprime(args) -> list[tuple[str, object]]:
    d = args.d
    if d < 3:
        raise UsageError("the gap needs at least two extra instances (d >= 3)")
    H = hd_prime(d)
    extra = classes.hd_prime_extra_instances(d)
    threshold_rows = frozenset((1 << n) - 1 for n in range(1, (1 << d) + 1))
    learner_a = learners.threshold_fallback_learner(H, threshold_rows)
    learner_sol = learners.sol(H)
    gap_sample = Sample.of(*((x, 1) for x in extra))
    a_errs = game.mistakes_on_sample(learner_a, gap_sample)
    sol_errs = game.mistakes_on_sample(learner_sol, gap_sample)
    expect(a_errs == d - 1, f"fallback learner made {a_errs} != {d - 1} mistakes")
    expect(sol_errs == 1, f"sol made {sol_errs} != 1 mistakes")
    horizon = Horizon(2 * d + 2)
    a_bound = game.mistake_bound(learner_a, H, horizon)
    expect(a_bound.value == d == game.optimal_mistake_bound(H),
           "fallback learner is not optimal at the class dimension")
    verdict = game.is_anytime_optimal(learner_a, H, horizon, check_depth=2)
    expect(not verdict.positive and verdict.counterexample is not None,
           "fallback learner unexpectedly anytime optimal")
    return [("dimension", d),
            ("gap_sample", _sample_text(gap_sample)),
            ("fallback_mistakes", a_errs),
            ("sol_mistakes", sol_errs),
            ("fallback_bound", a_bound.value),
            ("anytime_witness", _sample_text(verdict.counterexample))]


def cmd_demo_rer_halt(args) -> list[tuple[str, object]]:
    oracle = load_oracle(args.oracle)
    e_max = args.e_max
    family = families.triple_block_family(oracle, e_max)
    truncation = family.truncation(3 * e_max)
    report: list[tuple[str, object]] = [("e_max", e_max)]
    for e in range(e_max):
        sample = Sample.of((3 * e, 1))
        verdict = significance.is_aopt_significant(truncation, sample, 3 * e + 1)
        bit = int(oracle.halts(e, e).status == HaltsAnswer.YES)
        expect(verdict.significant, f"block {e}: input not significant")
        expect(verdict.forced_prediction == bit,
               f"block {e}: forced prediction {verdict.forced_prediction} != {bit}")
        report.append((f"forced_e{e}", verdict.forced_prediction))
    bound = game.mistake_bound(learners.b_triple_blocks(), truncation,
                               Horizon(2 * ldim(truncation) + 2))
    expect(bound.value == 2, f"block learner bound {bound.value} != 2")
    report.append(("b_bound", bound.value))
    return report


def _dr_reports(oracle, supports, decider, indexed) -> list[tuple[str, object]]:
    report: list[tuple[str, object]] = [("members", len(supports)),
                                        ("ldim", ldim(indexed.finite))]
    for support in supports:
        expect(decider(canonical_index(support)) == 1,
               f"decider rejects member {sorted(support)}")
    rejected = 0
    for support in supports:
        for member in sorted(support):
            perturbed = (support - {member}) | {member + 1}
            if frozenset(perturbed) not in map(frozenset, supports):
                expect(decider(canonical_index(perturbed)) == 0,
                       f"decider accepts non-member {sorted(perturbed)}")
                rejected += 1
    report.append(("perturbations_rejected", rejected))
    return report


def cmd_demo_dr_ext(args) -> list[tuple[str, object]]:
    oracle = load_oracle(args.oracle)
    e_list = list(range(args.e_max))
    supports = families.extended_block_supports(oracle, e_list)
    indexed = families.IndexedClass.from_supports(supports)
    decider = families.extended_family_decider(oracle)
    report = _dr_reports(oracle, supports, decider, indexed)
    expect(ldim(indexed.finite) == 2, "extended family truncation must have dimension 2")
    for e in e_list:
        base = 2 ** e
        if all(base not in support for support in supports):
            report.append((f"case_e{e}", "unrealizable"))
            continue
        c0 = oracle.certificate_index(e, 0)
        query = base * 3 ** c0
        sample = indexed.reindex_sample(Sample.of((base, 1)))
        verdict = significance.is_opt_significant(
            indexed.finite, sample, indexed.of_natural(query))
        reply = oracle.halts(e, e)
        if reply.status == HaltsAnswer.YES and reply.value in (0, 1):
            expect(verdict.significant and verdict.forced_prediction == 1 - reply.value,
                   f"block {e}: expected forced {1 - reply.value}")
            report.append((f"case_e{e}", f"significant:{verdict.forced_prediction}"))
        else:
            expect(not verdict.significant, f"block {e}: unexpectedly significant")
            report.append((f"case_e{e}", "not-significant"))
    return report


def cmd_demo_dr_halt(args) -> list[tuple[str, object]]:
    oracle = load_oracle(args.oracle)
    e_list = list(range(args.e_max))
    supports = families.two_tier_block_supports(oracle, e_list)
    indexed = families.IndexedClass.from_supports(supports)
    decider = families.two_tier_family_decider(oracle)
    report = _dr_reports(oracle, supports, decider, indexed)
    for e in e_list:
        base = 2 ** e
        if all(base not in support for support in supports):
            report.append((f"case_e{e}", "unrealizable"))
            continue
        c0 = oracle.certificate_index(e, 0)
        query = base * 3 ** c0
        sample = indexed.reindex_sample(Sample.of((base, 1)))
        verdict = significance.is_aopt_significant(
            indexed.finite, sample, indexed.of_natural(query))
        bit = int(oracle.halts(e, e).status != HaltsAnswer.YES)
        expect(verdict.significant and verdict.forced_prediction == bit,
               f"block {e}: expected forced {bit}")
        report.append((f"case_e{e}", f"significant:{verdict.forced_prediction}"))
    learner = learners.relabeled(learners.b_two_tier_blocks(oracle),
                                 indexed.to_natural)
    bound = game.mistake_bound(learner, indexed.finite,
                               Horizon(2 * ldim(indexed.finite) + 2))
    expect(bound.value == 2, f"block learner bound {bound.value} != 2")
    report.append(("b_bound", bound.value))
    return report


def cmd_demo_split(args) -> list[tuple[str, object]]:
    sample = families.diagonal_forcing_sample(args.e, args.M, args.step_budget)
    mistakes = game.mistakes_on_sample(
        learners.toy_learner(args.e, args.step_budget), sample)
    expect(mistakes == args.M + 1,
           f"forcing sample yields {mistakes} != {args.M + 1} mistakes")
    truncation = families.adversarial_family(
        args.i_max, args.step_budget).truncation(families.s2(args.i_max))
    expect(ldim(truncation) == 1, "diagonal family truncation must have dimension 1")
    return [("learner_index", args.e), ("target_mistakes", args.M + 1),
            ("mistakes", mistakes), ("sample_length", len(sample)),
            ("truncation_ldim", ldim(truncation))]


def cmd_demo_init(args) -> list[tuple[str, object]]:
    witness = families.find_thresholds(args.k, args.step_cap, args.x_cap)
    expect(witness.verify(), "threshold witness failed verification")
    depth = (args.k).bit_length() - 1
    indexed, tree = families.dimension_witness_from_thresholds(witness, depth)
    expect(ldim(indexed.finite) >= depth,
           f"induced class dimension below {depth}")
    return [("k", args.k),
            ("instances", ",".join(map(str, witness.instances))),
            ("stages", ",".join(map(str, witness.stages))),
            ("tree_nodes", ",".join(map(str, tree.nodes))),
            ("induced_ldim", ldim(indexed.finite))]


def cmd_build(args) -> list[tuple[str, object]]:
    H = build_class(args)
    to_file(H, args.out)
    return [("out", args.out), ("domain_size", H.domain_size), ("rows", len(H))]


def cmd_convert(args) -> list[tuple[str, object]]:
    H = build_class(args)
    learner = build_learner(args.learner, H)
    sample = _parse_sample(args.sample)
    predictor = batch.online_to_batch(learner, sample)
    queries = [int(q) for q in args.query.split(",")] if args.query else list(H.domain())
    return [(f"p({x})", str(predictor(x))) for x in queries]


def cmd_pac_eval(args) -> list[tuple[str, object]]:
    H = build_class(args)
    learner = build_learner(args.learner, H)
    rng = random.Random(args.seed)
    target = rng.choice(sorted(H.rows))
    D = batch.FiniteDistribution.uniform_over(
        (x, (target >> x) & 1) for x in H.domain())
    errors = batch.pac_evaluate(learner, D, args.m, args.trials, args.seed + 1)
    eps = Fraction(args.epsilon).limit_denominator(10 ** 6)
    hits = sum(1 for err in errors if err <= eps)
    return [("target_row", H.row_string(target)),
            ("trials", args.trials),
            ("m", args.m),
            ("epsilon", str(eps)),
            ("success_rate", f"{hits}/{args.trials}")]


# ---------------------------------------------------------------------------
# Argument parsing

def _add_class_args(p) -> None:
    p.add_argument("--builder", choices=["thresholds", "singletons", "hd-prime"])
    p.add_argument("--file")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--n", type=int, default=4)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="littlelab")
    parser.add_argument("--format", choices=["tsv", "json"], default="tsv")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ldim", help="dimension with verified witness tree")
    _add_class_args(p)
    p.set_defaults(run=cmd_ldim)

    p = sub.add_parser("duel", help="learner vs exhaustive adversary")
    _add_class_args(p)
    p.add_argument("--learner", required=True)
    p.add_argument("--horizon", type=int, default=6)
    p.set_defaults(run=cmd_duel)

    p = sub.add_parser("significance", help="verdict sweep over short histories")
    _add_class_args(p)
    p.add_argument("--max-len", type=int, default=1)
    p.set_defaults(run=cmd_significance)

    p = sub.add_parser("demo-hdprime", help="optimal-but-not-anytime gap table")
    p.add_argument("--d", type=int, default=3)
    p.set_defaults(run=cmd_demo_hdprime)

    p = sub.add_parser("demo-rer-halt", help="forced predictions mirror halting bits")
    p.add_argument("--oracle")
    p.add_argument("--e-max", type=int, default=9)
    p.set_defaults(run=cmd_demo_rer_halt)

    p = sub.add_parser("demo-dr-ext", help="extended certificate-block family")
    p.add_argument("--oracle")
    p.add_argument("--e-max", type=int, default=9)
    p.set_defaults(run=cmd_demo_dr_ext)

    p = sub.add_parser("demo-dr-halt", help="two-tier certificate-block family")
    p.add_argument("--oracle")
    p.add_argument("--e-max", type=int, default=9)
    p.set_defaults(run=cmd_demo_dr_halt)

    p = sub.add_parser("demo-split", help="diagonal forcing-sample replay")
    p.add_argument("--e", type=int, default=0)
    p.add_argument("--M", type=int, default=2)
    p.add_argument("--step-budget", type=int, default=10_000)
    p.add_argument("--i-max", type=int, default=5)
    p.set_defaults(run=cmd_demo_split)

    p = sub.add_parser("demo-init", help="threshold search in the stage family")
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--step-cap", type=int, default=10_000)
    p.add_argument("--x-cap", type=int, default=5_000)
    p.set_defaults(run=cmd_demo_init)

    p = sub.add_parser("build", help="write a class file")
    _add_class_args(p)
    p.add_argument("--out", required=True)
    p.set_defaults(run=cmd_build)

    p = sub.add_parser("convert", help="online-to-batch predictions")
    _add_class_args(p)
    p.add_argument("--learner", default="sol")
    p.add_argument("--sample", default="-")
    p.add_argument("--query", default="")
    p.set_defaults(run=cmd_convert)

    p = sub.add_parser("pac-eval", help="seeded distributional evaluation")
    _add_class_args(p)
    p.add_argument("--learner", default="sol")
    p.add_argument("--m", type=int, default=40)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epsilon", type=float, default=0.2)
    p.set_defaults(run=cmd_pac_eval)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        report = args.run(args)
    except PropertyViolation as exc:
        print(f"property violation: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ValueError, OSError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    emit(report, args.format)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
