"""
Labeled tree diagrams.

A LabeledTree is a prefix set plus a nonzero integer label on some of its vertices;
the leaf words y^{L(e)} d1 y^{L(d1)} d2 … are derived from it, never stored. A diagram
S → T maps lim(s_i ξ) to lim(t_i ξ), s_i and t_i the i-th leaves in lex order.

Also here: tree pairs for X-words (rotation to the right vine, caret cancellation),
conversions between standard forms and diagrams, composition, and rendering.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from ppgroup.exceptions import DiagramError
from ppgroup.services.action import Generator, SWord, apply_y, partial_apply_finite, partial_apply_word
from ppgroup.services.bcalc import SIGN_SYMBOL, SYMBOL_SIGN, BWord, limit
from ppgroup.services.rewrite import StandardForm, to_standard_form
from ppgroup.services.sequences import (
    EventuallyPeriodicSeq,
    FiniteWord,
    PrefixSet,
    is_prefix,
    is_proper_prefix,
    lex_sorted,
    render_word,
)

logger = logging.getLogger(__name__)


class MoveDirection(Enum):
    LEFT = "left"
    RIGHT = "right"


class RenderFormat(Enum):
    ASCII = "ascii"
    DOT = "dot"


def label_glyph(n: int) -> str:
    if n == 1:
        return "•"
    if n == -1:
        return "∘"
    return str(n)


@dataclass(frozen=True)
class LabeledTree:
    leaves: PrefixSet = field(default_factory=PrefixSet)
    labels: Tuple[Tuple[FiniteWord, int], ...] = ()

    def __post_init__(self):
        vertices = set(self.leaves.vertices())
        cleaned: Dict[FiniteWord, int] = {}
        for v, n in self.labels:
            if v not in vertices:
                raise DiagramError(f"label on {render_word(v)}, which is not a vertex of {self.leaves}")
            if n:
                cleaned[v] = cleaned.get(v, 0) + int(n)
        ordered = tuple((v, cleaned[v]) for v in lex_sorted(cleaned) if cleaned[v])
        object.__setattr__(self, "labels", ordered)

    @classmethod
    def build(cls, leaves: Iterable[FiniteWord], labels: Optional[Mapping[FiniteWord, int]] = None) -> "LabeledTree":
        return cls(PrefixSet.of(leaves), tuple((labels or {}).items()))

    @classmethod
    def from_leaf_words(cls, words: Iterable[BWord]) -> "LabeledTree":
        """
        Reads an element of the labeled tree set given as leaf words over 0, 1, y, Y.
        Every vertex must receive the same y-power from each word passing through it.
        """
        seen: Dict[FiniteWord, int] = {}
        leaves: List[FiniteWord] = []
        for word in words:
            vertex = ""
            power = 0
            for ch in word:
                if ch in SYMBOL_SIGN:
                    power += SYMBOL_SIGN[ch]
                    continue
                if ch not in "01":
                    raise DiagramError(f"unexpected symbol {ch!r} in leaf word {word!r}")
                cls._settle(seen, vertex, power, word)
                vertex += ch
                power = 0
            cls._settle(seen, vertex, power, word)
            leaves.append(vertex)
        if len(set(leaves)) != len(leaves):
            raise DiagramError("two leaf words erase to the same binary word")
        try:
            shape = PrefixSet.of(leaves)
        except ValueError as exc:
            raise DiagramError(str(exc)) from exc
        return cls(shape, tuple(seen.items()))

    @staticmethod
    def _settle(seen: Dict[FiniteWord, int], vertex: FiniteWord, power: int, word: BWord) -> None:
        if vertex in seen and seen[vertex] != power:
            raise DiagramError(f"{word!r} disagrees with another leaf word about the label at {render_word(vertex)}")
        seen[vertex] = power

    def label(self, vertex: FiniteWord) -> int:
        return dict(self.labels).get(vertex, 0)

    def label_map(self) -> Dict[FiniteWord, int]:
        return dict(self.labels)

    @property
    def leaf_count(self) -> int:
        return len(self.leaves)

    @property
    def is_unlabeled(self) -> bool:
        return not self.labels

    def is_internal(self, vertex: FiniteWord) -> bool:
        return any(is_proper_prefix(vertex, leaf) for leaf in self.leaves)

    def leaf_word(self, leaf: FiniteWord) -> BWord:
        labels = self.label_map()
        parts = []
        for i in range(len(leaf) + 1):
            n = labels.get(leaf[:i], 0)
            parts.append(SIGN_SYMBOL[1 if n > 0 else -1] * abs(n))
            if i < len(leaf):
                parts.append(leaf[i])
        return "".join(parts)

    def leaf_words(self) -> List[BWord]:
        return [self.leaf_word(leaf) for leaf in self.leaves]

    def y_word(self) -> SWord:
        """The labels as a Y-word, deeper subscripts first."""
        return SWord(tuple((Generator.y(v), n) for v, n in self.labels))

    def with_labels(self, labels: Mapping[FiniteWord, int]) -> "LabeledTree":
        return LabeledTree(self.leaves, tuple(labels.items()))

    def split_leaf(self, index: int) -> "LabeledTree":
        leaf = self._leaf_at(index)
        return LabeledTree(self.leaves.split(leaf), self.labels)

    def _leaf_at(self, index: int) -> FiniteWord:
        if not 0 <= index < len(self.leaves):
            raise DiagramError(f"leaf index {index} is out of range for {len(self.leaves)} leaves")
        return self.leaves.members[index]

    def __str__(self) -> str:
        return "{" + ", ".join(w or "e" for w in self.leaf_words()) + "}"


@dataclass(frozen=True)
class LabeledTreeDiagram:
    source: LabeledTree = field(default_factory=LabeledTree)
    target: LabeledTree = field(default_factory=LabeledTree)

    def __post_init__(self):
        if self.source.leaf_count != self.target.leaf_count:
            raise DiagramError(
                f"source has {self.source.leaf_count} leaves but target has {self.target.leaf_count}"
            )

    @classmethod
    def identity(cls) -> "LabeledTreeDiagram":
        return cls()

    @property
    def leaf_count(self) -> int:
        return self.source.leaf_count

    @property
    def is_unlabeled(self) -> bool:
        return self.source.is_unlabeled and self.target.is_unlabeled

    @property
    def is_trivial(self) -> bool:
        return self.is_unlabeled and self.leaf_count == 1

    def inverse(self) -> "LabeledTreeDiagram":
        return LabeledTreeDiagram(self.target, self.source)


# --- equivalence moves ---------------------------------------------------

_RIGHT_MOVES = (("00", "0", +1), ("01", "10", -1), ("1", "11", +1))


def _relocate(word: FiniteWord, v: FiniteWord, moves) -> FiniteWord:
    """Image of a vertex under the rotation at v."""
    for old, new, _ in moves:
        if is_prefix(v + old, word):
            return v + new + word[len(v) + len(old):]
    return word


def vertex_move(tree: LabeledTree, vertex: FiniteWord, direction: Union[MoveDirection, str]) -> LabeledTree:
    """
    Rotates the caret pair at `vertex`. Moving right needs vertex⌢0 internal with label 0
    and changes labels (m; i, j, k) to (m-1; i+1, j-1, k+1); moving left is the inverse.
    """
    direction = MoveDirection(direction)
    pivot = vertex + ("0" if direction is MoveDirection.RIGHT else "1")
    if not tree.is_internal(pivot):
        raise DiagramError(f"no {direction.value} rotation at {render_word(vertex)}: {render_word(pivot)} is not internal")
    if tree.label(pivot) != 0:
        raise DiagramError(f"no {direction.value} rotation at {render_word(vertex)}: {render_word(pivot)} is labeled")
    if direction is MoveDirection.RIGHT:
        moves = _RIGHT_MOVES
        root_shift = -1
    else:
        moves = tuple((new, old, -shift) for old, new, shift in _RIGHT_MOVES)
        root_shift = +1
    leaves = [_relocate(leaf, vertex, moves) for leaf in tree.leaves]
    labels: Dict[FiniteWord, int] = {}
    for v, n in tree.labels:
        image = _relocate(v, vertex, moves)
        labels[image] = labels.get(image, 0) + n
    labels[vertex] = labels.get(vertex, 0) + root_shift
    for old, new, shift in moves:
        labels[vertex + new] = labels.get(vertex + new, 0) + shift
    return LabeledTree.build(leaves, labels)


def insert_caret(d: LabeledTreeDiagram, leaf_index: int) -> LabeledTreeDiagram:
    return LabeledTreeDiagram(d.source.split_leaf(leaf_index), d.target.split_leaf(leaf_index))


def increment_labels(d: LabeledTreeDiagram, leaf_index: int, delta: int = 1) -> LabeledTreeDiagram:
    """Adds delta to the labels of the leaf_index-th leaves on both sides."""
    bumped = []
    for tree in (d.source, d.target):
        leaf = tree._leaf_at(leaf_index)
        labels = tree.label_map()
        labels[leaf] = labels.get(leaf, 0) + delta
        bumped.append(tree.with_labels(labels))
    return LabeledTreeDiagram(*bumped)


# --- semantics -------------------------------------------------------------

def _read_source(tree: LabeledTree, xi: EventuallyPeriodicSeq) -> Tuple[int, EventuallyPeriodicSeq]:
    """The leaf i and the tail ζ with lim(s_i ζ) = xi."""
    labels = tree.label_map()
    vertex = ""
    rest = xi
    while True:
        n = labels.get(vertex, 0)
        for _ in range(abs(n)):
            rest = apply_y(rest, -1 if n > 0 else 1)
        if vertex in tree.leaves:
            return tree.leaves.index(vertex), rest
        digit = rest.digit(0)
        vertex += digit
        rest = rest.drop(1)


def diagram_eval(d: LabeledTreeDiagram, xi: EventuallyPeriodicSeq) -> EventuallyPeriodicSeq:
    index, tail = _read_source(d.source, xi)
    return limit(d.target.leaf_words()[index], tail)


# --- tree pairs for X-words ------------------------------------------------

def _rotation_vertex(leaves: PrefixSet) -> Optional[FiniteWord]:
    internal = set(leaves.internal_vertices())
    candidates = [v for v in internal if v + "0" in internal]
    if not candidates:
        return None
    return min(candidates, key=lambda v: (len(v), v))


def tree_to_vine(leaves: PrefixSet) -> SWord:
    """An X-word w with leaves.w the right vine, built from rotations x_s at the shallowest s whose s0 is internal."""
    letters = []
    current = leaves
    while True:
        s = _rotation_vertex(current)
        if s is None:
            return SWord(tuple(letters)).reduced()
        generator = Generator.x(s)
        current = PrefixSet.of(partial_apply_finite(leaf, generator, 1) for leaf in current)
        letters.append((generator, 1))


def tree_pair_to_xword(source: PrefixSet, target: PrefixSet) -> SWord:
    """The X-word sending the i-th leaf of source to the i-th leaf of target."""
    if len(source) != len(target):
        raise DiagramError("tree pairs need equal leaf counts")
    return (tree_to_vine(source) * ~tree_to_vine(target)).reduced()


def _xword_source(xword: SWord) -> PrefixSet:
    leaves = PrefixSet()
    while True:
        undefined = [leaf for leaf in leaves if partial_apply_word(leaf, xword) is None]
        if not undefined:
            return leaves
        leaves = leaves.split(undefined[0])


def xword_to_tree_pair(xword: SWord) -> Tuple[PrefixSet, PrefixSet]:
    """The reduced tree pair of an X-word."""
    if not xword.is_x_word:
        raise DiagramError(f"{xword} is not an X-word")
    source = _xword_source(xword)
    target = PrefixSet.of(partial_apply_word(leaf, xword) for leaf in source)
    reduced = reduce_f_diagram(LabeledTreeDiagram(LabeledTree(source), LabeledTree(target)))
    return reduced.source.leaves, reduced.target.leaves


def find_carets(leaves: PrefixSet) -> Dict[int, FiniteWord]:
    """Leaf index i → parent p, for each pair of sibling leaves p0 = leaf i, p1 = leaf i+1."""
    members = leaves.members
    carets = {}
    for i in range(len(members) - 1):
        left, right = members[i], members[i + 1]
        if left and left[-1] == "0" and right == left[:-1] + "1":
            carets[i] = left[:-1]
    return carets


def reduce_f_diagram(d: LabeledTreeDiagram) -> LabeledTreeDiagram:
    """Cancels common carets of an unlabeled diagram until none are left."""
    if not d.is_unlabeled:
        raise DiagramError("only unlabeled diagrams reduce as tree pairs")
    source, target = d.source.leaves, d.target.leaves
    while True:
        left, right = find_carets(source), find_carets(target)
        common = sorted(set(left) & set(right))
        if not common:
            return LabeledTreeDiagram(LabeledTree(source), LabeledTree(target))
        i = common[0]
        source = _merge_caret(source, left[i])
        target = _merge_caret(target, right[i])


def _merge_caret(leaves: PrefixSet, parent: FiniteWord) -> PrefixSet:
    return PrefixSet.of([w for w in leaves if w not in (parent + "0", parent + "1")] + [parent])


# --- bridges between words and diagrams --------------------------------------

def word_to_diagram(form: StandardForm) -> LabeledTreeDiagram:
    """
    Unlabeled source on which the X-part is a prefix exchange; the target is its image,
    refined until every Y-subscript is a vertex, carrying the Y-exponents as labels.
    """
    xword = form.x_part
    source = _xword_source(xword)
    while True:
        target_leaves = [partial_apply_word(leaf, xword) for leaf in source]
        short = [i for i, leaf in enumerate(target_leaves) if any(is_proper_prefix(leaf, t) for t in form.subscripts)]
        if not short:
            break
        source = source.split(source.members[short[0]])
    labels: Dict[FiniteWord, int] = {}
    for t, n in form.y_part:
        labels[t] = labels.get(t, 0) + n
    # leaf order is preserved by X-words, so the i-th source leaf pairs with the i-th image.
    target = LabeledTree.build(target_leaves, labels)
    diagram = LabeledTreeDiagram(LabeledTree(source), target)
    logger.debug(f"Diagram of {form}: {diagram.source} -> {diagram.target}")
    return diagram


def diagram_to_word(d: LabeledTreeDiagram) -> SWord:
    """(source labels)^-1 · (X-word of the unlabeled pair) · (target labels)."""
    xword = tree_pair_to_xword(d.source.leaves, d.target.leaves)
    return (~d.source.y_word() * xword * d.target.y_word()).reduced()


def _refine_to(d: LabeledTreeDiagram, shape: PrefixSet, side: str) -> LabeledTreeDiagram:
    """Inserts carets until the given side of d has the given leaves."""
    while True:
        tree = d.target if side == "target" else d.source
        coarse = [i for i, leaf in enumerate(tree.leaves) if leaf not in shape]
        if not coarse:
            return d
        d = insert_caret(d, coarse[0])


def compose_diagrams(d1: LabeledTreeDiagram, d2: LabeledTreeDiagram) -> LabeledTreeDiagram:
    """
    d1 followed by d2. Refines d1's target and d2's source to a common tree, evens out
    the leaf labels on d1, and composes directly when the trees then agree; otherwise
    composes the words and converts back.
    """
    common = PrefixSet.of(_common_leaves(d1.target.leaves, d2.source.leaves))
    first = _refine_to(d1, common, "target")
    second = _refine_to(d2, common, "source")
    wanted = second.source.label_map()
    for i, leaf in enumerate(first.target.leaves):
        delta = wanted.get(leaf, 0) - first.target.label(leaf)
        if delta:
            first = increment_labels(first, i, delta)
    if first.target == second.source:
        return LabeledTreeDiagram(first.source, second.target)
    logger.debug("Internal labels differ; composing through words")
    word = diagram_to_word(d1) * diagram_to_word(d2)
    return word_to_diagram(to_standard_form(word))


def _common_leaves(a: PrefixSet, b: PrefixSet) -> List[FiniteWord]:
    vertices = set(a.vertices()) | set(b.vertices())
    internal = set(a.internal_vertices()) | set(b.internal_vertices())
    return [v for v in vertices if v not in internal]


# --- rendering ---------------------------------------------------------------

def _ascii_tree(tree: LabeledTree, title: str) -> List[str]:
    lines = [title]
    labels = tree.label_map()
    for v in sorted(tree.leaves.vertices()):
        text = "  " * (len(v) + 1) + render_word(v)
        if v in labels:
            text += " " + label_glyph(labels[v])
        lines.append(text)
    return lines


def _dot_cluster(tree: LabeledTree, side: str) -> List[str]:
    labels = tree.label_map()
    prefix = side[0]
    lines = [f"  subgraph cluster_{side} {{", f'    label="{side}";']
    order = sorted(tree.leaves.vertices(), key=lambda w: (len(w), w))
    for v in order:
        name = f"{prefix}_{render_word(v)}"
        text = render_word(v)
        if v in labels:
            text += f": {labels[v]}"
        lines.append(f'    {name} [label="{text}"];')
    for v in order:
        if v:
            lines.append(f"    {prefix}_{render_word(v[:-1])} -> {prefix}_{render_word(v)};")
    lines.append("  }")
    return lines


def render(d: LabeledTreeDiagram, fmt: Union[RenderFormat, str] = RenderFormat.ASCII) -> str:
    """Deterministic text for a diagram: an indented outline, or a DOT digraph."""
    fmt = RenderFormat(fmt)
    if fmt is RenderFormat.ASCII:
        return "\n".join(_ascii_tree(d.source, "source") + _ascii_tree(d.target, "target"))
    lines = ["digraph diagram {"]
    lines += _dot_cluster(d.source, "source")
    lines += _dot_cluster(d.target, "target")
    lines.append("}")
    return "\n".join(lines)
