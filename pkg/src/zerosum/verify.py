"""Verification suites for the constants, inverse characterizations, and
their consequences at desk scale.

Each suite returns a VerifyReport of exact-value checks (tolerance zero).
The exact-exponent constant of [2,2,6] is a stretch computation: when its
node budget runs out, the check falls back to certifying the lower bound
through an engine-verified family witness and says so in the result.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from typing import Dict, List, Optional

from . import families as fam
from .engine import brute_sigma_L, has_zero_sum, is_minimal_zero_sum, sigma_L
from .errors import BudgetExceededError
from .groups import GroupSpec, combine, elements, negate, order_of, zero
from .kernel import BACKEND
from .search import (
    ConstantResult,
    EquivalenceMode,
    compute_s_L,
    davenport_constant,
    enumerate_avoiding,
    enumerate_extremal,
    enumerate_max_minimal_zero_sum,
)
from .sequences import LengthSet, Sequence

DEFAULT_SEED = 20250809
STRETCH_BUDGET = 150_000  # full [2,2,6] exact-exponent tree is ~61k nodes


@dataclass
class Check:
    id: str
    description: str
    expected: object
    actual: object
    passed: bool


@dataclass
class VerifyReport:
    suite: str
    checks: List[Check] = field(default_factory=list)
    wall_time: float = 0.0
    node_counts: Dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check_id: str, description: str, expected, actual,
            passed: Optional[bool] = None) -> Check:
        if passed is None:
            passed = expected == actual
        check = Check(check_id, description, expected, actual, passed)
        self.checks.append(check)
        return check

    def to_json_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [
                {
                    "id": c.id,
                    "description": c.description,
                    "expected": repr(c.expected),
                    "actual": repr(c.actual),
                    "pass": c.passed,
                }
                for c in self.checks
            ],
            "wall_time": round(self.wall_time, 3),
            "node_counts": self.node_counts,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    def render(self) -> str:
        def short(value) -> str:
            text = str(value)
            return text if len(text) <= 60 else text[:57] + "..."

        lines = [f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'} "
                 f"({self.wall_time:.1f}s, kernel={BACKEND})"]
        for c in self.checks:
            status = "pass" if c.passed else "FAIL"
            lines.append(f"  [{status}] {c.id}: {c.description} "
                         f"(expected {short(c.expected)}, got {short(c.actual)})")
        return "\n".join(lines)


def _class_set(seqs) -> frozenset:
    return frozenset(s.items for s in seqs)


def _family_closure(group: GroupSpec, labels) -> frozenset:
    out = set()
    for label in labels:
        out.update(s.items for s in fam.enumerate_family(group, label))
    return frozenset(out)


# --- constants (with the stretch fallback) ----------------------------------


def stretch_exact_exponent(group: GroupSpec, budget: Optional[int] = None,
                           jobs: int = 1) -> ConstantResult:
    """s(G) for [2,2,2n], falling back to a witness-certified lower bound.

    On budget exhaustion the result carries complete=False and the value of
    the engine-verified lower bound: a generated exact-exponent family
    instance of length 4n+2 with no zero-sum subsequence of length exp(G).
    """
    from .search import node_budget

    n = fam.two_two_even_parameter(group)
    if budget is None:
        budget = min(STRETCH_BUDGET, node_budget())
    try:
        return compute_s_L(group, LengthSet.exact_exponent(),
                           EquivalenceMode.AUTOMORPHISM_TRANSLATION,
                           budget=budget, jobs=jobs)
    except BudgetExceededError as exc:
        witness = fam.min_height_attaining_sequence(group)
        if has_zero_sum(witness, LengthSet.exact_exponent()):
            raise AssertionError("family witness failed engine verification")
        search = exc.search
        return ConstantResult(
            group=group,
            length_set=LengthSet.exact_exponent(),
            mode=EquivalenceMode.AUTOMORPHISM_TRANSLATION,
            value=witness.length + 1,
            extremal_count_up_to_symmetry=0,
            certificate=witness,
            node_count=search.node_count if search else 0,
            wall_time=0.0,
            complete=False,
        )


def suite_constants(n_values=(1, 2, 3), budget: Optional[int] = None,
                    jobs: int = 1) -> VerifyReport:
    """Exact constants: D, eta for [2,2,2n], and s including the stretch case."""
    report = VerifyReport("constants")
    start = time.monotonic()
    for n in n_values:
        group = GroupSpec([2, 2, 2 * n])
        d = davenport_constant(group, jobs=jobs)
        report.node_counts[f"D[{group}]"] = d.node_count
        report.add(f"davenport.n{n}", f"D({group})", 2 * n + 2, d.value)
        report.add(f"davenport.minimal.n{n}",
                   f"max minimal zero-sum length over {group}",
                   d.value, d.max_minimal_zero_sum_length)

        eta = compute_s_L(group, LengthSet.short(), jobs=jobs)
        report.node_counts[f"eta[{group}]"] = eta.node_count
        expected_eta = 8 if n == 1 else 2 * n + 4
        report.add(f"eta.n{n}", f"eta({group})", expected_eta, eta.value)

        expected_s = 9 if n == 1 else 4 * n + 3
        if n <= 2:
            s = compute_s_L(group, LengthSet.exact_exponent(),
                            EquivalenceMode.AUTOMORPHISM_TRANSLATION, jobs=jobs)
            report.node_counts[f"s[{group}]"] = s.node_count
            report.add(f"s.n{n}", f"s({group})", expected_s, s.value)
        else:
            s = stretch_exact_exponent(group, budget=budget, jobs=jobs)
            report.node_counts[f"s[{group}]"] = s.node_count
            if s.complete:
                report.add(f"s.n{n}", f"s({group})", expected_s, s.value)
            else:
                report.add(
                    f"s.n{n}",
                    f"s({group}) lower bound via family witness "
                    "(search budget exhausted)",
                    expected_s,
                    f">={s.value}",
                    passed=(s.value == expected_s),
                )
        gao_id = f"gao.n{n}"
        gao_desc = f"s = eta + exp - 1 over {group}"
        if s.complete:
            report.add(gao_id, gao_desc, s.value,
                       eta.value + group.exponent - 1)
        else:
            report.add(gao_id, gao_desc + " (contingent on stretch target)",
                       "skipped", "skipped")
    report.wall_time = time.monotonic() - start
    return report


# --- inverse theorems -------------------------------------------------------


def suite_davenport_inverse(n_values=(1, 2, 3), jobs: int = 1) -> VerifyReport:
    """Classes of maximal minimal zero-sum sequences equal the family closure."""
    report = VerifyReport("davenport-inverse")
    start = time.monotonic()
    for n in n_values:
        group = GroupSpec([2, 2, 2 * n])
        found = _class_set(enumerate_max_minimal_zero_sum(group, jobs=jobs))
        closure = _family_closure(group, fam.D_LABELS)
        report.add(f"dav-inverse.n{n}",
                   f"max minimal zero-sum classes of {group} vs families d1..d6",
                   sorted(closure), sorted(found))
        if n <= 2:
            empties = [label for label in ("d2", "d3", "d4", "d5")
                       if fam.enumerate_family(group, label)]
            report.add(f"dav-inverse.empty.n{n}",
                       f"families d2..d5 empty over {group}", [], empties)
    report.wall_time = time.monotonic() - start
    return report


def suite_eta_inverse(n_values=(2, 3), jobs: int = 1) -> VerifyReport:
    """Short-zero-sum-free extremal classes equal the eta family closure."""
    report = VerifyReport("eta-inverse")
    start = time.monotonic()
    for n in n_values:
        group = GroupSpec([2, 2, 2 * n])
        result = compute_s_L(group, LengthSet.short(), jobs=jobs)
        report.node_counts[f"eta[{group}]"] = result.node_count
        found = _class_set(result.extremal_classes)
        labels = ("eta-n1",) if n == 1 else fam.ETA_LABELS
        closure = _family_closure(group, labels)
        report.add(f"eta-inverse.n{n}",
                   f"eta-extremal classes of {group} vs eta families",
                   sorted(closure), sorted(found))
        if n == 2:
            report.add("eta-inverse.only-eta3.n2",
                       "eta1 and eta2 are empty at n=2 (range [2,1] empty)",
                       ([], []),
                       (fam.enumerate_family(group, "eta1"),
                        fam.enumerate_family(group, "eta2")))
    report.wall_time = time.monotonic() - start
    return report


def suite_s_inverse(n_values=(2,), budget: Optional[int] = None,
                    jobs: int = 1) -> VerifyReport:
    """Exact-exponent extremal classes equal the s family closure."""
    report = VerifyReport("s-inverse")
    start = time.monotonic()
    for n in n_values:
        group = GroupSpec([2, 2, 2 * n])
        result = stretch_exact_exponent(group, budget=budget, jobs=jobs) \
            if n >= 3 else compute_s_L(group, LengthSet.exact_exponent(),
                                       EquivalenceMode.AUTOMORPHISM_TRANSLATION,
                                       jobs=jobs)
        report.node_counts[f"s[{group}]"] = result.node_count
        if not result.complete:
            report.add(f"s-inverse.n{n}",
                       f"s-extremal classes of {group} (budget exhausted)",
                       "skipped", "skipped")
            continue
        found = _class_set(result.extremal_classes)
        labels = ("s-n1",) if n == 1 else fam.S_LABELS
        closure = _family_closure(group, labels)
        report.add(f"s-inverse.n{n}",
                   f"s-extremal classes of {group} vs s families",
                   sorted(closure), sorted(found))
        if n == 2:
            report.add("s-inverse.only-s3.n2",
                       "s1 and s2 are empty at n=2 (range [2,1] empty)",
                       ([], []),
                       (fam.enumerate_family(group, "s1"),
                        fam.enumerate_family(group, "s2")))
    report.wall_time = time.monotonic() - start
    return report


# --- corollaries ------------------------------------------------------------


def suite_corollaries(budget: Optional[int] = None, jobs: int = 1,
                      seed: int = DEFAULT_SEED,
                      filter_trials: int = 10_000) -> VerifyReport:
    """Height bound, C*T decomposition, and the filter lemma property."""
    report = VerifyReport("corollaries")
    start = time.monotonic()

    group2 = GroupSpec([2, 2, 4])
    classes = enumerate_extremal(group2, LengthSet.exact_exponent(),
                                 EquivalenceMode.AUTOMORPHISM_TRANSLATION,
                                 jobs=jobs)
    profile = fam.height_profile(classes)
    report.add("height.min.n2",
               "min height over exact-exponent extremal classes of C2+C2+C4",
               fam.expected_min_height(2), profile.min_height)
    for n in (2, 3, 4):
        group = GroupSpec([2, 2, 2 * n])
        witness = fam.min_height_attaining_sequence(group)
        ok = (witness.length == 4 * n + 2
              and not has_zero_sum(witness, LengthSet.exact_exponent()))
        report.add(f"height.witness.n{n}",
                   f"explicit height witness over {group} is extremal with "
                   f"height {fam.expected_min_height(n)}",
                   (True, fam.expected_min_height(n)),
                   (ok, witness.height()))

    failures = []
    for s in classes:
        dec = fam.decompose_CT(s)
        if dec is None:
            failures.append(s)
    report.add("decompose.n2",
               f"C*T decomposition succeeds on all {len(classes)} "
               "exact-exponent extremal classes at n=2",
               [], failures)

    held, violated = _filter_lemma_trials(group2, seed, filter_trials)
    report.add("filter-lemma.n2",
               f"hypotheses imply conclusion over {filter_trials} seeded "
               f"instances ({held} with hypotheses)",
               0, violated)
    report.wall_time = time.monotonic() - start
    return report


def _filter_lemma_trials(group: GroupSpec, seed: int, trials: int):
    rnd = random.Random(seed)
    elts = sorted(elements(group))
    order2 = [g for g in elts if order_of(group, g) == 2]
    total_len = 8 + group.exponent - 1  # eta + exp - 1 at n=2
    held = violated = 0
    for _ in range(trials):
        f = elts[rnd.randrange(len(elts))]
        u, v, w = rnd.randrange(2), rnd.randrange(2), rnd.randrange(2)
        x, y = rnd.sample(order2, 2)
        pairs = [(zero(group), 2 * u + 1)]
        if v:
            pairs.append((x, 2 * v))
        if w:
            pairs.append((y, 2 * w))
        c_prime = Sequence(group, pairs).translate(f)
        filler = Sequence.from_elements(
            group,
            (elts[rnd.randrange(len(elts))]
             for _ in range(total_len - c_prime.length)),
        )
        seq = c_prime * filler
        res = fam.check_filter_lemma(seq, c_prime, f)
        if res.hypotheses_hold:
            held += 1
            if not res.conclusion_holds:
                violated += 1
    return held, violated


# --- cyclic inverse theorems ------------------------------------------------


def suite_cyclic(n_values=range(3, 13), jobs: int = 1) -> VerifyReport:
    """Cyclic inverse theorems with their characteristic subsum sets, exhaustively."""
    report = VerifyReport("cyclic")
    start = time.monotonic()
    for n in n_values:
        group = GroupSpec([n])
        hset = frozenset(elements(group))
        zero_elt = zero(group)

        for length, labels in ((n - 1, ("cyc-eta-1",)),
                               (n - 2, ("cyc-eta-2a", "cyc-eta-2b"))):
            if length < 1:
                continue
            reps = enumerate_avoiding(group, LengthSet.any_length(), length,
                                      jobs=jobs)
            bad = []
            for s in reps:
                witnesses = fam.classify(s, "cyclic-eta")
                if not witnesses or not all(w.label in labels for w in witnesses):
                    bad.append(s)
                    continue
                for w in witnesses:
                    g = w.params["g"]
                    sums = sigma_L(s, LengthSet.any_length())
                    if w.label == "cyc-eta-2a":
                        if sums != hset - {zero_elt, negate(group, g)}:
                            bad.append(s)
                    elif w.label == "cyc-eta-2b" and n > 3:
                        if sums != hset - {zero_elt}:
                            bad.append(s)
            report.add(f"cyclic-eta.n{n}.len{length}",
                       f"C{n} length-{length} zero-sum-free classes match "
                       f"{'/'.join(labels)} with characteristic subsum sets "
                       f"({len(reps)} classes)",
                       [], bad)

        for length, labels in ((2 * n - 2, ("cyc-s-1",)),
                               (2 * n - 3, ("cyc-s-2a", "cyc-s-2b"))):
            reps = enumerate_avoiding(group, LengthSet.exact_exponent(), length,
                                      EquivalenceMode.AUTOMORPHISM_TRANSLATION,
                                      jobs=jobs)
            bad = []
            for s in reps:
                witnesses = fam.classify(s, "cyclic-s")
                if not witnesses or not all(w.label in labels for w in witnesses):
                    bad.append(s)
                    continue
                for w in witnesses:
                    g, h = w.params["g"], w.params["h"]
                    sums = sigma_L(s, LengthSet.explicit([n - 2]))
                    if w.label == "cyc-s-2a":
                        minus_gh = negate(group, combine(group, g, h))
                        if sums != hset - {minus_gh}:
                            bad.append(s)
                    elif w.label == "cyc-s-2b" and n > 3:
                        if sums != hset:
                            bad.append(s)
            report.add(f"cyclic-s.n{n}.len{length}",
                       f"C{n} length-{length} classes without length-{n} "
                       f"zero-sum match {'/'.join(labels)} with characteristic "
                       f"subsum sets ({len(reps)} classes)",
                       [], bad)
    report.wall_time = time.monotonic() - start
    return report


# --- the two small lemmas ----------------------------------------------------


def suite_lemmas(jobs: int = 1) -> VerifyReport:
    """s_[1,3] over elementary 2-groups and the unique length-4 zero-sum."""
    report = VerifyReport("lemmas")
    start = time.monotonic()
    for r in (2, 3, 4):
        res = compute_s_L(GroupSpec([2] * r), LengthSet.interval(1, 3), jobs=jobs)
        report.node_counts[f"s13[C2^{r}]"] = res.node_count
        report.add(f"sum-le3.r{r}",
                   f"constant for lengths [1,3] over C2^{r}",
                   1 + 2 ** (r - 1), res.value)

    group = GroupSpec([2, 2, 2])
    bad = []
    count = 0
    for combo in combinations(sorted(elements(group)), 5):
        count += 1
        seq = Sequence.from_elements(group, combo)
        zero_sums = sum(
            1 for sub in combinations(combo, 4)
            if not any(sum(x[i] for x in sub) % 2 for i in range(3))
        )
        if zero_sums != 1:
            bad.append(seq)
    report.add("sum-eq4",
               f"each of the {count} squarefree length-5 sequences over C2^3 "
               "has exactly one length-4 zero-sum",
               [], bad)
    report.wall_time = time.monotonic() - start
    return report


# --- oracle equivalence -------------------------------------------------------


EXHAUSTIVE_ORACLE_DOMAIN = (
    ((2, 2), 8),
    ((5,), 8),
    ((8,), 6),
    ((2, 4), 6),
    ((2, 2, 2), 6),
    ((2, 2, 4), 4),
)

RANDOM_ORACLE_GROUPS = (
    (36,), (2, 18), (3, 12), (6, 6), (2, 2, 8), (4, 8), (2, 16),
    (5, 7), (2, 3, 6), (33,), (25,), (2, 2, 3, 3), (31,), (2, 2, 2, 2),
)


def suite_oracle(samples: int = 1000, seed: int = DEFAULT_SEED,
                 exhaustive: bool = True) -> VerifyReport:
    """Layered table vs explicit 2^|S| enumeration; zero mismatches allowed."""
    report = VerifyReport("oracle")
    start = time.monotonic()
    kinds = [LengthSet.any_length(), LengthSet.short(), LengthSet.exact_exponent()]

    if exhaustive:
        mismatches = 0
        total = 0
        for orders, max_len in EXHAUSTIVE_ORACLE_DOMAIN:
            group = GroupSpec(orders)
            elts = sorted(elements(group))
            for length in range(max_len + 1):
                for combo in combinations_with_replacement(elts, length):
                    seq = Sequence.from_elements(group, combo)
                    for ls in kinds:
                        total += 1
                        if sigma_L(seq, ls) != brute_sigma_L(seq, ls):
                            mismatches += 1
        report.add("oracle.exhaustive",
                   f"sigma_L == brute force on {total} exhaustive inputs "
                   f"(groups up to order 16, lengths up to 8)",
                   0, mismatches)

    rnd = random.Random(seed)
    mismatches = 0
    for _ in range(samples):
        group = GroupSpec(RANDOM_ORACLE_GROUPS[rnd.randrange(len(RANDOM_ORACLE_GROUPS))])
        length = rnd.randrange(17)
        seq = Sequence.from_elements(
            group,
            (tuple(rnd.randrange(o) for o in group.orders) for _ in range(length)),
        )
        pick = rnd.randrange(5)
        if pick < 3:
            ls = kinds[pick]
        elif pick == 3:
            lo = rnd.randrange(1, 6)
            ls = LengthSet.interval(lo, lo + rnd.randrange(6))
        else:
            ls = LengthSet.explicit(
                rnd.sample(range(1, 18), rnd.randrange(1, 4)))
        if sigma_L(seq, ls) != brute_sigma_L(seq, ls):
            mismatches += 1
    report.add("oracle.random",
               f"sigma_L == brute force on {samples} seeded random inputs "
               "(|S| <= 16, |G| <= 36)",
               0, mismatches)
    report.wall_time = time.monotonic() - start
    return report


# --- aggregation --------------------------------------------------------------


def run_suite(name: str, n: Optional[int] = None, seed: int = DEFAULT_SEED,
              budget: Optional[int] = None, jobs: int = 1) -> List[VerifyReport]:
    """Suites by name; 'paper' bundles everything for the given n values."""
    n_values = (1, 2, 3) if n is None else (n,)
    if name == "constants":
        return [suite_constants(n_values, budget=budget, jobs=jobs)]
    if name == "davenport":
        return [suite_davenport_inverse(n_values, jobs=jobs)]
    if name == "eta":
        return [suite_eta_inverse(tuple(v for v in n_values if v >= 2) or (2,),
                                  jobs=jobs)]
    if name == "s":
        return [suite_s_inverse(tuple(v for v in n_values if v >= 2) or (2,),
                                budget=budget, jobs=jobs)]
    if name == "corollaries":
        return [suite_corollaries(budget=budget, jobs=jobs, seed=seed)]
    if name == "cyclic":
        values = range(3, 13) if n is None else (n,)
        return [suite_cyclic(values, jobs=jobs)]
    if name == "lemmas":
        return [suite_lemmas(jobs=jobs)]
    if name == "oracle":
        return [suite_oracle(seed=seed)]
    if name == "paper":
        reports = [suite_constants(n_values, budget=budget, jobs=jobs)]
        reports.append(suite_davenport_inverse(
            tuple(v for v in n_values if v <= 3), jobs=jobs))
        eta_vals = tuple(v for v in n_values if 2 <= v <= 3)
        if eta_vals:
            reports.append(suite_eta_inverse(eta_vals, jobs=jobs))
        s_vals = tuple(v for v in n_values if v == 2)
        if s_vals:
            reports.append(suite_s_inverse(s_vals, budget=budget, jobs=jobs))
        reports.append(suite_corollaries(budget=budget, jobs=jobs, seed=seed))
        return reports
    if name == "all":
        out = run_suite("paper", n, seed, budget, jobs)
        out.extend(run_suite("cyclic", None, seed, budget, jobs))
        out.extend(run_suite("lemmas", None, seed, budget, jobs))
        out.extend(run_suite("oracle", None, seed, budget, jobs))
        return out
    raise ValueError(f"unknown suite {name!r}")
