"""
Exact arithmetic on the projective line.
- ExtRational: rationals plus a single point at infinity (1/0).
- ProjMatrix: integer 2x2 matrices up to scalar, acting as t -> (at+b)/(ct+d).
- The continued-fraction correspondence Φ / φ between eventually constant binary
  sequences and ℚ ∪ {∞}, with its inverse.
- PiecewiseProjectiveMap: exact piecewise maps for a, b, c and their compositions.
"""

import logging
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ppgroup.services.sequences import EventuallyPeriodicSeq, FiniteWord, complement

logger = logging.getLogger(__name__)

RationalLike = Union[int, Fraction, str, "ExtRational"]


@dataclass(frozen=True)
class ExtRational:
    """numerator/denominator in lowest terms, denominator ≥ 0, ∞ stored as 1/0."""
    numerator: int
    denominator: int = 1

    def __post_init__(self):
        n, d = self.numerator, self.denominator
        if n == 0 and d == 0:
            raise ValueError("0/0 is not an extended rational")
        if d == 0:
            n = 1
        else:
            g = gcd(n, d)
            n, d = n // g, d // g
            if d < 0:
                n, d = -n, -d
        object.__setattr__(self, "numerator", n)
        object.__setattr__(self, "denominator", d)

    @classmethod
    def of(cls, value: RationalLike) -> "ExtRational":
        if isinstance(value, ExtRational):
            return value
        if isinstance(value, str) and value.strip().lower() in ("inf", "∞", "infinity"):
            return INFINITY
        fraction = Fraction(value)
        return cls(fraction.numerator, fraction.denominator)

    @property
    def is_infinite(self) -> bool:
        return self.denominator == 0

    def to_fraction(self) -> Fraction:
        if self.is_infinite:
            raise ValueError("∞ has no finite value")
        return Fraction(self.numerator, self.denominator)

    def __neg__(self) -> "ExtRational":
        return ExtRational(-self.numerator, self.denominator)

    def double(self) -> "ExtRational":
        return ExtRational(2 * self.numerator, self.denominator)

    def as_pair(self) -> List[int]:
        return [self.numerator, self.denominator]

    def __str__(self) -> str:
        if self.is_infinite:
            return "inf"
        return str(Fraction(self.numerator, self.denominator))


INFINITY = ExtRational(1, 0)
ZERO = ExtRational(0, 1)


@dataclass(frozen=True)
class ProjMatrix:
    """[[a, b], [c, d]] up to nonzero scalar; normalized by gcd with the first nonzero entry positive."""
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        entries = (self.a, self.b, self.c, self.d)
        if self.a * self.d - self.b * self.c == 0:
            raise ValueError(f"singular matrix {entries}")
        g = 0
        for entry in entries:
            g = gcd(g, entry)
        sign = 1 if next(e for e in entries if e != 0) > 0 else -1
        for name, entry in zip("abcd", entries):
            object.__setattr__(self, name, sign * entry // g)

    @classmethod
    def identity(cls) -> "ProjMatrix":
        return cls(1, 0, 0, 1)

    @property
    def determinant(self) -> int:
        return self.a * self.d - self.b * self.c

    def apply(self, t: ExtRational) -> ExtRational:
        p, q = t.numerator, t.denominator
        return ExtRational(self.a * p + self.b * q, self.c * p + self.d * q)

    def then(self, other: "ProjMatrix") -> "ProjMatrix":
        """Apply self first, then other (right action): the product other·self."""
        return ProjMatrix(
            other.a * self.a + other.b * self.c,
            other.a * self.b + other.b * self.d,
            other.c * self.a + other.d * self.c,
            other.c * self.b + other.d * self.d,
        )

    def inverse(self) -> "ProjMatrix":
        return ProjMatrix(self.d, -self.b, -self.c, self.a)

    def rows(self) -> List[List[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def formula(self) -> str:
        numerator = _linear(self.a, self.b)
        denominator = _linear(self.c, self.d)
        if not denominator.lstrip("-").isdigit() or denominator.startswith("-"):
            denominator = f"({denominator})"
        return f"({numerator})/{denominator}"


def _linear(coefficient: int, constant: int) -> str:
    if coefficient == 0:
        return str(constant)
    term = {1: "t", -1: "-t"}.get(coefficient, f"{coefficient}t")
    if constant == 0:
        return term
    return f"{term}{constant:+d}"


# Digit maps of the φ recursion: φ(0ξ) = φ/(φ+1), φ(1ξ) = φ+1.
_DIGIT_MATRICES: Dict[str, ProjMatrix] = {
    "0": ProjMatrix(1, 0, 1, 1),
    "1": ProjMatrix(1, 1, 0, 1),
}


def phi_positive(word: FiniteWord, tail: str) -> ExtRational:
    """φ(word·tail̄) with φ(0̄) = 0 and φ(1̄) = ∞; values lie in [0, ∞]."""
    value = ZERO if tail == "0" else INFINITY
    for digit in reversed(word):
        value = _DIGIT_MATRICES[digit].apply(value)
    return value


def phi_eval(word: FiniteWord, tail: str) -> ExtRational:
    """Φ(word·tail̄): Φ(1ξ) = φ(ξ), Φ(0ξ) = −φ(ξ̃)."""
    if tail not in ("0", "1"):
        raise ValueError(f"tail must be a binary digit, got {tail!r}")
    if not word:
        return INFINITY
    if word[0] == "1":
        return phi_positive(word[1:], tail)
    return -phi_positive(complement(word[1:]), complement(tail))


def phi_of_sequence(seq: EventuallyPeriodicSeq) -> ExtRational:
    """Φ of an eventually constant sequence."""
    tail = seq.constant_tail
    if tail is None:
        raise ValueError(f"{seq} is not eventually constant; Φ is irrational there")
    return phi_eval(seq.preperiod, tail)


def phi_positive_of_sequence(seq: EventuallyPeriodicSeq) -> ExtRational:
    tail = seq.constant_tail
    if tail is None:
        raise ValueError(f"{seq} is not eventually constant")
    return phi_positive(seq.preperiod, tail)


def phi_interval(word: FiniteWord) -> Tuple[ExtRational, ExtRational]:
    """Endpoints Φ(word·0̄), Φ(word·1̄) of the arc of all sequences extending `word`."""
    if not word:
        raise ValueError("the empty word covers the whole projective line")
    return phi_eval(word, "0"), phi_eval(word, "1")


def _positive_digits(value: Fraction) -> str:
    digits = []
    while value != 0:
        if value >= 1:
            digits.append("1")
            value -= 1
        else:
            digits.append("0")
            value = value / (1 - value)
    return "".join(digits)


def phi_inverse(value: RationalLike) -> EventuallyPeriodicSeq:
    """
    The eventually-0̄ sequence with Φ equal to `value`.
    ∞ maps to 0̄; every other point has exactly one representative ending in 0̄.
    """
    point = ExtRational.of(value)
    if point.is_infinite:
        return EventuallyPeriodicSeq.constant("0")
    q = point.to_fraction()
    if q >= 0:
        return EventuallyPeriodicSeq("1" + _positive_digits(q), "0")
    # Φ(0ξ) = −φ(ξ̃) with ξ̃ = digits·0̄, so ξ ends in 1̄; trade the final s01̄ for s10̄.
    body = ("0" + complement(_positive_digits(-q))).rstrip("1")
    return EventuallyPeriodicSeq(body[:-1] + "1", "0")


@dataclass(frozen=True)
class PiecewiseProjectiveMap:
    """
    An orientation preserving homeomorphism of the projective line fixing ∞.

    `breakpoints` lists the finite breakpoints in increasing order followed by ∞;
    pieces[i] acts on the arc ending at breakpoints[i] (pieces[0] starts at ∞).
    """
    breakpoints: Tuple[ExtRational, ...]
    pieces: Tuple[ProjMatrix, ...]

    def __post_init__(self):
        if not self.breakpoints or not self.breakpoints[-1].is_infinite:
            raise ValueError("the last breakpoint must be ∞")
        if len(self.breakpoints) != len(self.pieces):
            raise ValueError("need exactly one piece per breakpoint")
        finite = self.finite_breakpoints
        if any(p.is_infinite for p in self.breakpoints[:-1]) or any(x >= y for x, y in zip(finite, finite[1:])):
            raise ValueError("finite breakpoints must be strictly increasing")
        for piece in self.pieces:
            if piece.determinant <= 0:
                raise ValueError(f"piece {piece.formula()} reverses orientation")
        if self.pieces[0].c != 0 or self.pieces[-1].c != 0:
            raise ValueError("the outer pieces must fix ∞")
        for i, point in enumerate(finite):
            left = self.pieces[i].apply(ExtRational.of(point))
            right = self.pieces[i + 1].apply(ExtRational.of(point))
            if left != right or left.is_infinite:
                raise ValueError(f"pieces disagree at breakpoint {point}: {left} vs {right}")

    @classmethod
    def from_pieces(cls, finite: Sequence[Fraction], pieces: Sequence[ProjMatrix]) -> "PiecewiseProjectiveMap":
        """Build and normalize: adjacent equal pieces are merged."""
        points: List[Fraction] = []
        kept: List[ProjMatrix] = [pieces[0]]
        for point, piece in zip(finite, pieces[1:]):
            if piece == kept[-1]:
                continue
            points.append(point)
            kept.append(piece)
        return cls(tuple(ExtRational.of(p) for p in points) + (INFINITY,), tuple(kept))

    @property
    def finite_breakpoints(self) -> List[Fraction]:
        return [p.to_fraction() for p in self.breakpoints[:-1]]

    def _piece_index(self, t: Fraction) -> int:
        return bisect_left(self.finite_breakpoints, t)

    def __call__(self, t: RationalLike) -> ExtRational:
        point = ExtRational.of(t)
        if point.is_infinite:
            return INFINITY
        return self.pieces[self._piece_index(point.to_fraction())].apply(point)

    def piece_at(self, t: Fraction) -> ProjMatrix:
        return self.pieces[self._piece_index(t)]

    def arcs(self) -> List[Tuple[Optional[Fraction], Optional[Fraction], ProjMatrix]]:
        """(lo, hi, matrix) per piece; None stands for −∞ / +∞."""
        bounds: List[Optional[Fraction]] = [None] + list(self.finite_breakpoints) + [None]
        return [(bounds[i], bounds[i + 1], piece) for i, piece in enumerate(self.pieces)]

    def pieces_on(self, lo: RationalLike, hi: RationalLike) -> List[ProjMatrix]:
        """Matrices of the pieces meeting the open interval (lo, hi)."""
        low, high = Fraction(lo), Fraction(hi)
        return [
            piece for arc_lo, arc_hi, piece in self.arcs()
            if (arc_lo is None or arc_lo < high) and (arc_hi is None or arc_hi > low)
        ]

    def render_table(self) -> str:
        lines = []
        for lo, hi, piece in self.arcs():
            left = "-inf" if lo is None else str(lo)
            right = "inf" if hi is None else str(hi)
            lines.append(f"[{left}, {right}]: {piece.formula()}")
        return "\n".join(lines)

    def to_json(self) -> Dict[str, object]:
        return {
            "pieces": [
                {
                    "from": None if lo is None else ExtRational.of(lo).as_pair(),
                    "to": None if hi is None else ExtRational.of(hi).as_pair(),
                    "matrix": piece.rows(),
                    "formula": piece.formula(),
                }
                for lo, hi, piece in self.arcs()
            ]
        }


def identity_map() -> PiecewiseProjectiveMap:
    return PiecewiseProjectiveMap((INFINITY,), (ProjMatrix.identity(),))


def builtin_map(name: str) -> PiecewiseProjectiveMap:
    """The generators a, b, c as exact piecewise maps."""
    if name == "a":
        return PiecewiseProjectiveMap((INFINITY,), (ProjMatrix(1, 1, 0, 1),))
    if name == "b":
        return PiecewiseProjectiveMap.from_pieces(
            [Fraction(0), Fraction(1, 2), Fraction(1)],
            [ProjMatrix.identity(), ProjMatrix(1, 0, -1, 1), ProjMatrix(3, -1, 1, 0), ProjMatrix(1, 1, 0, 1)],
        )
    if name == "c":
        return PiecewiseProjectiveMap.from_pieces(
            [Fraction(0), Fraction(1)],
            [ProjMatrix.identity(), ProjMatrix(2, 0, 1, 1), ProjMatrix.identity()],
        )
    raise ValueError(f"unknown generator {name!r}; expected a, b or c")


def invert(f: PiecewiseProjectiveMap) -> PiecewiseProjectiveMap:
    images = [f(p).to_fraction() for p in f.finite_breakpoints]
    return PiecewiseProjectiveMap.from_pieces(images, [piece.inverse() for piece in f.pieces])


def compose(f: PiecewiseProjectiveMap, g: PiecewiseProjectiveMap) -> PiecewiseProjectiveMap:
    """Apply f first, then g."""
    f_inverse = invert(f)
    cuts = set(f.finite_breakpoints)
    cuts.update(f_inverse(q).to_fraction() for q in g.finite_breakpoints)
    points = sorted(cuts)
    if not points:
        samples = [Fraction(0)]
    else:
        samples = [points[0] - 1]
        samples += [(x + y) / 2 for x, y in zip(points, points[1:])]
        samples.append(points[-1] + 1)
    pieces = []
    for sample in samples:
        image = f(sample).to_fraction()
        pieces.append(f.piece_at(sample).then(g.piece_at(image)))
    return PiecewiseProjectiveMap.from_pieces(points, pieces)


def compose_all(maps: Sequence[PiecewiseProjectiveMap]) -> PiecewiseProjectiveMap:
    result = identity_map()
    for m in maps:
        result = compose(result, m)
    return result


def power(f: PiecewiseProjectiveMap, exponent: int) -> PiecewiseProjectiveMap:
    base = f if exponent >= 0 else invert(f)
    return compose_all([base] * abs(exponent))
