"""
The word problem, end to end.

Responsibilities:
- decide_identity: standard form, sufficient expansion, then either a non-F witness
  (Y-part left over) or the reduced tree pair of the remaining X-word.
- Cross-checking every verdict by pointwise evaluation on seeded random sequences.
- The relation harness (verify_relations) and the Φ-equivariance suite (phi_crosscheck).
- Exact piecewise maps for words over S₀.
"""

import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ppgroup.exceptions import CrossCheckError, NoWitnessError, NotSufficientlyExpandedError, PPGroupError
from ppgroup.services import utils
from ppgroup.services.action import ABC_NAMES, SWord, apply_generator, apply_y, evaluate
from ppgroup.services.bcalc import Witness, non_f_witness
from ppgroup.services.diagrams import LabeledTreeDiagram, diagram_to_word, xword_to_tree_pair
from ppgroup.services.presentation import (
    Alphabet,
    Relation,
    RelationForm,
    annotated_nine_relations,
    commutation_flag,
    expand_to_finite_generators,
    relation_instances,
)
from ppgroup.services.projective import (
    PiecewiseProjectiveMap,
    builtin_map,
    compose_all,
    phi_of_sequence,
    phi_positive_of_sequence,
    power,
)
from ppgroup.services.rewrite import RewriteService, StandardForm
from ppgroup.services.sequences import EventuallyPeriodicSeq, PrefixSet
from ppgroup.services.settings_manager import get_setting

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Verdict:
    """
    Outcome of decide_identity. A non-identity verdict for a form with Y-letters carries
    a replayed witness; X-word verdicts carry the reduced tree pair instead.
    """
    word: SWord
    is_identity: bool
    reduced_form: StandardForm
    witness: Optional[Witness] = None
    trace: Optional[List[str]] = None
    tree_pair: Optional[Tuple[PrefixSet, PrefixSet]] = None

    def to_json(self) -> Dict[str, Any]:
        return {
            "word": self.word.render(),
            "is_identity": self.is_identity,
            "reduced_form": utils.form_to_json(self.reduced_form),
            "witness": utils.witness_to_json(self.witness),
            "tree_pair": None if self.tree_pair is None else [list(self.tree_pair[0]), list(self.tree_pair[1])],
            "trace": self.trace,
        }


def _cross_check(word: SWord, verdict_identity: bool, form: StandardForm, samples: Sequence[EventuallyPeriodicSeq]) -> None:
    reduced = form.to_word()
    for xi in samples:
        image = evaluate(word, xi)
        if evaluate(reduced, xi) != image:
            raise CrossCheckError(f"{word} and its reduced form {form} disagree at {xi}")
        if verdict_identity and image != xi:
            raise CrossCheckError(f"{word} was decided to be the identity but moves {xi} to {image}")


def decide_identity(word: SWord, keep_trace: bool = False, samples: Optional[Sequence[EventuallyPeriodicSeq]] = None) -> Verdict:
    """
    Decides whether `word` evaluates to the identity homeomorphism.

    Args:
        word: Any word over x_s, y_s (a, b, c included).
        keep_trace: Keep the derivation trace on the verdict.
        samples: Sequences for the pointwise cross-check; `crosscheck_samples` seeded
            sequences when omitted.

    Returns:
        The Verdict. CrossCheckError is raised when sampling contradicts it.
    """
    service = RewriteService(keep_trace=keep_trace)
    form = service.sufficiently_expand(service.to_standard_form(word, min_depth=0))
    witness = None
    tree_pair = None
    if form.y_part:
        try:
            witness = non_f_witness(form)
        except (NoWitnessError, NotSufficientlyExpandedError) as exc:
            raise CrossCheckError(f"no witness for the non-F form {form}: {exc}") from exc
        is_identity = False
    else:
        tree_pair = xword_to_tree_pair(form.x_part)
        is_identity = len(tree_pair[0]) == 1
    if samples is None:
        samples = utils.sample_sequences(get_setting("crosscheck_samples"))
    _cross_check(word, is_identity, form, samples)
    logger.info(f"{word}: {'identity' if is_identity else 'not the identity'} ({service.steps} rewrite steps)")
    return Verdict(
        word=word,
        is_identity=is_identity,
        reduced_form=form,
        witness=witness,
        trace=list(service.trace) if keep_trace else None,
        tree_pair=tree_pair,
    )


def equal(w1: SWord, w2: SWord) -> bool:
    return decide_identity(w1 * ~w2).is_identity


def diagrams_equal(d1: LabeledTreeDiagram, d2: LabeledTreeDiagram) -> bool:
    """Semantic equality of two labeled diagrams."""
    return equal(diagram_to_word(d1), diagram_to_word(d2))


# --- relation harness ----------------------------------------------------------

@dataclass(frozen=True)
class RelationCheck:
    index: int
    label: str
    lhs: SWord
    rhs: SWord
    decided_identity: bool
    pointwise_ok: bool
    error: Optional[str] = None
    disjoint_support: Optional[bool] = None

    @property
    def passed(self) -> bool:
        return self.error is None and self.decided_identity and self.pointwise_ok

    def to_json(self) -> Dict[str, Any]:
        return {
            "index": self.index,
            "label": self.label,
            "lhs": self.lhs.render(),
            "rhs": self.rhs.render(),
            "decided_identity": self.decided_identity,
            "pointwise_ok": self.pointwise_ok,
            "error": self.error,
            "passed": self.passed,
            "disjoint_support": self.disjoint_support,
        }


@dataclass(frozen=True)
class RelationReport:
    bound: int
    samples: int
    seed: int
    checks: List[RelationCheck] = field(default_factory=list)

    @property
    def failures(self) -> List[RelationCheck]:
        return [check for check in self.checks if not check.passed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def counts(self) -> Dict[str, int]:
        totals: Dict[str, int] = {}
        for check in self.checks:
            group = check.label.split("#")[0].strip()
            totals[group] = totals.get(group, 0) + 1
        return totals

    def disjoint_commutations(self) -> int:
        return sum(1 for check in self.checks if check.disjoint_support)

    def summary(self) -> str:
        lines = [f"{group}: {n}" for group, n in sorted(self.counts().items())]
        lines.append(f"commutations of disjointly supported elements: {self.disjoint_commutations()}")
        lines.append(f"checked {len(self.checks)} relations, {len(self.failures)} failed")
        for check in self.failures:
            reason = check.error or ("pointwise mismatch" if not check.pointwise_ok else "not decided as identity")
            lines.append(f"FAILED {check.label}: {check.lhs} = {check.rhs} ({reason})")
        return "\n".join(lines)

    def to_json(self) -> Dict[str, Any]:
        return {
            "bound": self.bound,
            "samples": self.samples,
            "seed": self.seed,
            "counts": self.counts(),
            "disjoint_commutations": self.disjoint_commutations(),
            "total": len(self.checks),
            "failed": len(self.failures),
            "failures": [check.to_json() for check in self.failures],
        }


CatalogueEntry = Tuple[str, Relation, Optional[bool]]


def relation_catalogue(bound: int, extra_relations: Sequence[Relation] = ()) -> List[CatalogueEntry]:
    """
    Every labelled relation the harness checks, in a fixed order, with its
    disjoint-support flag (None for relations that are not commutations). The nine
    relations are taken with the abc-form errata applied.
    """
    catalogue: List[CatalogueEntry] = []
    for family in (1, 2, 3, 4, 5):
        for i, (lhs, rhs) in enumerate(relation_instances(family, bound)):
            catalogue.append((f"family {family} #{i}", (lhs, rhs), commutation_flag(lhs, rhs)))
    for form in RelationForm:
        for i, (lhs, rhs, flag) in enumerate(annotated_nine_relations(form)):
            catalogue.append((f"nine {form.value} #{i + 1}", (lhs, rhs), flag))
    for i, (lhs, rhs) in enumerate(extra_relations):
        catalogue.append((f"extra #{i}", (lhs, rhs), commutation_flag(lhs, rhs)))
    return catalogue


def _check_relation(index: int, entry: CatalogueEntry, samples: int, seed: int) -> RelationCheck:
    label, (lhs, rhs), flag = entry
    rng = random.Random(seed * 1_000_003 + index)
    sequences = [utils.random_sequence(rng) for _ in range(samples)]
    pointwise_ok = all(evaluate(lhs, xi) == evaluate(rhs, xi) for xi in sequences)
    try:
        verdict = decide_identity(lhs * ~rhs, samples=sequences)
    except PPGroupError as e:
        logger.error(f"Relation {label} ({lhs} = {rhs}) raised {type(e).__name__}: {e}")
        return RelationCheck(index, label, lhs, rhs, False, pointwise_ok, f"{type(e).__name__}: {e}", flag)
    return RelationCheck(index, label, lhs, rhs, verdict.is_identity, pointwise_ok, disjoint_support=flag)


def verify_relations(
    bound: Optional[int] = None,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    extra_relations: Sequence[Relation] = (),
    workers: Optional[int] = None,
) -> RelationReport:
    """
    Decides every relation instance up to `bound` plus the nine relations in both forms,
    and compares both sides on `samples` sequences drawn from a per-relation seed.
    The report is ordered by relation index, whatever the number of workers.
    """
    bound = get_setting("relation_bound") if bound is None else bound
    samples = get_setting("relation_samples") if samples is None else samples
    seed = get_setting("sample_seed") if seed is None else seed
    workers = get_setting("verify_workers") if workers is None else workers
    catalogue = relation_catalogue(bound, extra_relations)
    logger.info(f"Verifying {len(catalogue)} relations (bound {bound}, {samples} samples, {workers} workers)")
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        checks = list(pool.map(
            lambda item: _check_relation(item[0], item[1], samples, seed),
            enumerate(catalogue),
        ))
    report = RelationReport(bound, samples, seed, checks)
    if not report.ok:
        logger.warning(f"{len(report.failures)} of {len(checks)} relations failed")
    return report


# --- Φ-equivariance ------------------------------------------------------------

# (piecewise map, generator acting on sequences)
PHI_PAIRS = tuple((name, generator) for generator, name in ABC_NAMES.items())


@dataclass(frozen=True)
class PhiMismatch:
    check: str
    sequence: EventuallyPeriodicSeq
    expected: str
    actual: str

    def to_json(self) -> Dict[str, str]:
        return {"check": self.check, "sequence": str(self.sequence), "expected": self.expected, "actual": self.actual}


@dataclass(frozen=True)
class PhiReport:
    count: int
    seed: int
    mismatches: List[PhiMismatch] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> Dict[str, Any]:
        return {
            "count": self.count,
            "seed": self.seed,
            "ok": self.ok,
            "mismatches": [m.to_json() for m in self.mismatches],
        }


def phi_crosscheck(count: Optional[int] = None, seed: Optional[int] = None) -> PhiReport:
    """
    Φ(ξ).g = Φ(ξ.ĝ) for (a, x), (b, x[1]), (c, y[10]), and φ(ξ.y) = 2φ(ξ), on `count`
    random eventually constant sequences. Comparing Φ values makes the two
    representatives of a rational interchangeable.
    """
    count = get_setting("phi_crosscheck_count") if count is None else count
    seed = get_setting("sample_seed") if seed is None else seed
    rng = random.Random(seed)
    maps = {name: builtin_map(name) for name, _ in PHI_PAIRS}
    mismatches: List[PhiMismatch] = []
    for _ in range(count):
        xi = utils.random_eventually_constant(rng)
        point = phi_of_sequence(xi)
        for name, generator in PHI_PAIRS:
            expected = maps[name](point)
            actual = phi_of_sequence(apply_generator(generator, 1, xi))
            if expected != actual:
                mismatches.append(PhiMismatch(name, xi, str(expected), str(actual)))
        doubled = phi_positive_of_sequence(xi).double()
        moved = phi_positive_of_sequence(apply_y(xi, 1))
        if doubled != moved:
            mismatches.append(PhiMismatch("y", xi, str(doubled), str(moved)))
    if mismatches:
        logger.warning(f"Φ crosscheck: {len(mismatches)} mismatches over {count} sequences")
    return PhiReport(count, seed, mismatches)


def piecewise_map(word: SWord) -> PiecewiseProjectiveMap:
    """The exact piecewise projective map of an S₀-word, through its {a, b, c} spelling."""
    spelled = expand_to_finite_generators(word, Alphabet.THREE)
    return compose_all([power(builtin_map(ABC_NAMES[g]), n) for g, n in spelled.letters])
