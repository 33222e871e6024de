# ppgroup/handlers/words.py
"""
Command handlers working on a single word (or a pair of words).
- normalize, decide, equal: the rewrite engine and the word problem.
- eval: the action on an eventually periodic sequence.
- render: the labeled tree diagram of a word, as an outline or DOT.
- expand-finite, piecewise: spellings over finite alphabets and exact piece tables.
"""
import argparse
import logging

from ppgroup.exceptions import AlphabetError, CrossCheckError, PPGroupError, WordParseError
from ppgroup.handlers.routing import (
    EXIT_CROSSCHECK,
    EXIT_FALSE,
    EXIT_OK,
    EXIT_USAGE,
    CommandRouter,
    argument,
    emit,
    report_error,
)
from ppgroup.services import decide, utils
from ppgroup.services.action import evaluate
from ppgroup.services.diagrams import RenderFormat, render, word_to_diagram
from ppgroup.services.parsing import parse_sequence, parse_word
from ppgroup.services.presentation import Alphabet, expand_to_finite_generators
from ppgroup.services.rewrite import RewriteService

logger = logging.getLogger(__name__)
router = CommandRouter(name="word_handlers")


def _failure(command: str, error: PPGroupError) -> int:
    logger.error(f"{command} failed: {error}")
    report_error(str(error))
    if isinstance(error, CrossCheckError):
        return EXIT_CROSSCHECK
    return EXIT_USAGE


# --- Rewriting ---

@router.command(
    "normalize", "derive a standard form of a word",
    argument("word"),
    argument("--depth", type=int, default=0, help="minimum length of the y-subscripts"),
    argument("--trace", action="store_true", help="print the derivation steps"),
)
def cmd_normalize(args: argparse.Namespace) -> int:
    try:
        word = parse_word(args.word)
        service = RewriteService(keep_trace=args.trace)
        form = service.to_standard_form(word, min_depth=args.depth)
    except PPGroupError as e:
        return _failure("normalize", e)
    text = form.render()
    if args.trace:
        text = "\n".join(service.trace + [text])
    payload = {"form": utils.form_to_json(form), "steps": service.steps}
    if args.trace:
        payload["trace"] = service.trace
    emit(args, payload, text)
    return EXIT_OK


@router.command(
    "decide", "decide whether a word is the identity",
    argument("word"),
    argument("--trace", action="store_true", help="print the derivation steps"),
)
def cmd_decide(args: argparse.Namespace) -> int:
    try:
        verdict = decide.decide_identity(parse_word(args.word), keep_trace=args.trace)
    except PPGroupError as e:
        return _failure("decide", e)
    lines = list(verdict.trace or [])
    if verdict.is_identity:
        lines.append("identity")
    else:
        lines.append("not identity")
        lines.append(f"reduced: {verdict.reduced_form}")
        if verdict.witness is not None:
            w = verdict.witness
            lines.append(f"witness: u={w.u or 'e'} v={w.v or 'e'} n={w.n}")
        elif verdict.tree_pair is not None:
            source, target = verdict.tree_pair
            lines.append(f"tree pair: {source} -> {target}")
    emit(args, verdict.to_json(), "\n".join(lines))
    return EXIT_OK if verdict.is_identity else EXIT_FALSE


@router.command("equal", "decide whether two words are the same element", argument("first"), argument("second"))
def cmd_equal(args: argparse.Namespace) -> int:
    try:
        same = decide.equal(parse_word(args.first), parse_word(args.second))
    except PPGroupError as e:
        return _failure("equal", e)
    emit(args, {"equal": same}, "true" if same else "false")
    return EXIT_OK if same else EXIT_FALSE


# --- Evaluation and pictures ---

@router.command("eval", "apply a word to an eventually periodic sequence", argument("word"), argument("sequence"))
def cmd_eval(args: argparse.Namespace) -> int:
    try:
        word = parse_word(args.word)
        xi = parse_sequence(args.sequence)
    except WordParseError as e:
        return _failure("eval", e)
    image = evaluate(word, xi)
    emit(args, {"input": utils.sequence_to_json(xi), "output": utils.sequence_to_json(image)}, str(image))
    return EXIT_OK


@router.command(
    "render", "draw the labeled tree diagram of a word",
    argument("word"),
    argument("--format", dest="fmt", choices=[f.value for f in RenderFormat], default=RenderFormat.ASCII.value),
)
def cmd_render(args: argparse.Namespace) -> int:
    try:
        form = RewriteService().to_standard_form(parse_word(args.word))
        diagram = word_to_diagram(form)
    except PPGroupError as e:
        return _failure("render", e)
    text = render(diagram, args.fmt)
    emit(args, {"diagram": utils.diagram_to_json(diagram), "format": args.fmt, "text": text}, text)
    return EXIT_OK


# --- Finite alphabets ---

@router.command(
    "expand-finite", "spell a word over a finite generating set",
    argument("word"),
    argument("--alphabet", choices=[a.value for a in Alphabet], default=Alphabet.FIVE.value),
)
def cmd_expand_finite(args: argparse.Namespace) -> int:
    try:
        spelled = expand_to_finite_generators(parse_word(args.word), args.alphabet)
    except (WordParseError, AlphabetError) as e:
        return _failure("expand-finite", e)
    abc = args.alphabet == Alphabet.THREE.value
    text = spelled.render(abc=abc)
    emit(args, {"alphabet": args.alphabet, "word": text, "letters": utils.word_to_json(spelled)}, text)
    return EXIT_OK


@router.command("piecewise", "print the exact piecewise projective map of a word", argument("word"))
def cmd_piecewise(args: argparse.Namespace) -> int:
    try:
        mapping = decide.piecewise_map(parse_word(args.word))
    except (WordParseError, AlphabetError) as e:
        return _failure("piecewise", e)
    emit(args, mapping.to_json(), mapping.render_table())
    return EXIT_OK
