# ppgroup/handlers/checks.py
"""
Command handlers for the verification suites and the Φ correspondence.
- verify-relations: the relation families and the nine relations, decided and sampled.
- crosscheck: Φ-equivariance of the generators on random eventually constant sequences.
- phi: Φ of a sequence, the arc of a prefix, or the sequence of a rational.
"""
import argparse
import logging
from fractions import Fraction

from ppgroup.exceptions import WordParseError
from ppgroup.handlers.routing import (
    EXIT_CROSSCHECK,
    EXIT_OK,
    EXIT_USAGE,
    CommandRouter,
    argument,
    emit,
    report_error,
)
from ppgroup.services import decide, utils
from ppgroup.services.parsing import parse_finite_word, parse_sequence
from ppgroup.services.projective import ExtRational, phi_interval, phi_inverse, phi_of_sequence

logger = logging.getLogger(__name__)
router = CommandRouter(name="check_handlers")


@router.command(
    "verify-relations", "decide and sample every relation instance",
    argument("--bound", type=int, default=None, help="longest subscript in the relation families (0-8)"),
    argument("--samples", type=int, default=None, help="sequences compared per relation"),
    argument("--seed", type=int, default=None),
)
def cmd_verify_relations(args: argparse.Namespace) -> int:
    try:
        report = decide.verify_relations(bound=args.bound, samples=args.samples, seed=args.seed)
    except ValueError as e:
        logger.error(f"verify-relations rejected its arguments: {e}")
        report_error(str(e))
        return EXIT_USAGE
    emit(args, report.to_json(), report.summary())
    return EXIT_OK if report.ok else EXIT_CROSSCHECK


@router.command(
    "crosscheck", "check Φ-equivariance of a, b, c and the doubling y",
    argument("--count", type=int, default=None),
    argument("--seed", type=int, default=None),
)
def cmd_crosscheck(args: argparse.Namespace) -> int:
    report = decide.phi_crosscheck(count=args.count, seed=args.seed)
    lines = [f"{m.check} at {m.sequence}: expected {m.expected}, got {m.actual}" for m in report.mismatches]
    lines.append(f"{report.count} sequences, {len(report.mismatches)} mismatches")
    emit(args, report.to_json(), "\n".join(lines))
    return EXIT_OK if report.ok else EXIT_CROSSCHECK


@router.command(
    "phi", "Φ of a sequence like 10(0), the arc of a prefix like 101, or the sequence of a rational like -3/2",
    argument("value"),
)
def cmd_phi(args: argparse.Namespace) -> int:
    text = args.value.strip()
    try:
        if "(" in text:
            seq = parse_sequence(text)
            point = phi_of_sequence(seq)
            emit(args, {"sequence": utils.sequence_to_json(seq), "value": point.as_pair()}, str(point))
        elif set(text) <= set("01e"):
            prefix = parse_finite_word(text)
            low, high = phi_interval(prefix)
            emit(args, {"prefix": prefix, "from": low.as_pair(), "to": high.as_pair()}, f"[{low}, {high}]")
        else:
            point = ExtRational.of(text if text.lower() in ("inf", "infinity", "∞") else Fraction(text))
            seq = phi_inverse(point)
            emit(args, {"value": point.as_pair(), "sequence": utils.sequence_to_json(seq)}, str(seq))
    except (WordParseError, ValueError, ZeroDivisionError) as e:
        logger.error(f"phi could not read {text!r}: {e}")
        report_error(str(e))
        return EXIT_USAGE
    return EXIT_OK
