"""Words in the free group on a and b, and Fox calculus on them.

Words are written with the letters ``a``, ``b`` and their inverses ``A``,
``B``, each optionally followed by a caret exponent: ``a^-4 b a a b``,
``abaBAB``. The empty word is written ``1``.
"""

from __future__ import annotations

import logging
import re
from functools import reduce
from typing import Any, Iterable, Iterator, Mapping, Protocol, TypeVar, Union

from sympy.combinatorics.free_groups import FreeGroupElement, free_group

from musubi.algebra import PureVector, sandwich
from musubi.utils.errors import OffVarietyError, WordSyntaxError
from musubi.utils.scalars import DEFAULT_TOLERANCE, Scalar, simplify

log = logging.getLogger(__name__)

GENERATORS = ("a", "b")

FREE_GROUP, _a, _b = free_group("a, b")
_SYMBOLS = {"a": _a, "b": _b}

_TOKEN = re.compile(r"\s*([aAbB])(?:\^(-?\d+))?\s*")

Letter = tuple[str, int]


class GroupWord:
    """A word in a, b and their inverses.

    Letters are kept exactly as given; ``free_reduce`` returns the canonical
    reduced form. Equality and hashing compare letter sequences.
    """

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[Letter] = ()) -> None:
        checked = []
        for generator, exponent in letters:
            if generator not in GENERATORS or exponent not in (1, -1):
                raise WordSyntaxError(f"invalid letter {generator}^{exponent}")
            checked.append((generator, exponent))
        self.letters: tuple[Letter, ...] = tuple(checked)

    @classmethod
    def parse(cls, text: str) -> GroupWord:
        stripped = text.replace("*", " ").strip()
        if stripped in ("", "1"):
            return cls()

        letters: list[Letter] = []
        position = 0
        while position < len(stripped):
            match = _TOKEN.match(stripped, position)
            if match is None or match.end() == position:
                raise WordSyntaxError(
                    f"unexpected {stripped[position]!r} at position {position} in {text!r}"
                )
            symbol, power = match.group(1), int(match.group(2) or 1)
            exponent = 1 if symbol.islower() else -1
            if power < 0:
                exponent, power = -exponent, -power
            letters.extend([(symbol.lower(), exponent)] * power)
            position = match.end()
        return cls(letters)

    @classmethod
    def generator(cls, name: str) -> GroupWord:
        return cls([(name, 1)])

    @classmethod
    def from_element(cls, element: FreeGroupElement) -> GroupWord:
        letters: list[Letter] = []
        for symbol, exponent in element.array_form:
            step = 1 if exponent > 0 else -1
            letters.extend([(str(symbol), step)] * abs(exponent))
        return cls(letters)

    def element(self) -> FreeGroupElement:
        return reduce(
            lambda acc, letter: acc * _SYMBOLS[letter[0]] ** letter[1],
            self.letters,
            FREE_GROUP.identity,
        )

    def free_reduce(self) -> GroupWord:
        return free_reduce(self)

    @property
    def is_empty(self) -> bool:
        return not self.letters

    def inverse(self) -> GroupWord:
        return GroupWord((g, -e) for g, e in reversed(self.letters))

    def substitute(self, images: Mapping[str, GroupWord]) -> GroupWord:
        """Replace each generator by a word, e.g. a -> ab, b -> aba."""
        result: list[Letter] = []
        for generator, exponent in self.letters:
            image = images.get(generator, GroupWord.generator(generator))
            result.extend((image if exponent > 0 else image.inverse()).letters)
        return GroupWord(result)

    def __mul__(self, other: GroupWord) -> GroupWord:
        return GroupWord(self.letters + other.letters)

    def __pow__(self, exponent: int) -> GroupWord:
        base = self if exponent >= 0 else self.inverse()
        return GroupWord(base.letters * abs(exponent))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupWord):
            return NotImplemented
        return self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        syllables: list[list[Any]] = []
        for generator, exponent in self.letters:
            if syllables and syllables[-1][0] == generator and (
                (syllables[-1][1] > 0) == (exponent > 0)
            ):
                syllables[-1][1] += exponent
            else:
                syllables.append([generator, exponent])
        return " ".join(g if e == 1 else f"{g}^{e}" for g, e in syllables)

    def __repr__(self) -> str:
        return f"GroupWord({str(self)!r})"


def word(text: Union[str, GroupWord]) -> GroupWord:
    return text if isinstance(text, GroupWord) else GroupWord.parse(text)


def free_reduce(w: GroupWord) -> GroupWord:
    # FreeGroupElement cancels x x^-1 pairs as it is built
    return GroupWord.from_element(w.element())


# The braid relator aba (bab)^-1 and the elements used throughout
RELATOR = GroupWord.parse("a b a B A B")
F_WORD = GroupWord.parse("ab")
D_WORD = GroupWord.parse("aba")
C_WORD = D_WORD**2
LONGITUDE = GroupWord.parse("a^-4 b a a b")


class _Invertible(Protocol):
    def identity(self) -> Any: ...

    def inverse(self) -> Any: ...

    def __mul__(self, other: Any) -> Any: ...


_G = TypeVar("_G", bound=_Invertible)


def evaluate(w: Union[str, GroupWord], a: _G, b: _G) -> _G:
    """Image of ``w`` under a -> a, b -> b.

    Works for anything with ``identity()``, ``inverse()`` and ``*``, so both
    quaternions and affine isometries.
    """
    images = {("a", 1): a, ("b", 1): b, ("a", -1): a.inverse(), ("b", -1): b.inverse()}
    result = a.identity()
    for letter in word(w):
        result = result * images[letter]
    return result


class FoxPolynomial:
    """An element of the integral group ring of the free group.

    Words are stored freely reduced and zero coefficients are dropped.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Union[Mapping[GroupWord, int], None] = None) -> None:
        collected: dict[GroupWord, int] = {}
        for w, coefficient in (terms or {}).items():
            key = free_reduce(w)
            collected[key] = collected.get(key, 0) + coefficient
        self.terms: dict[GroupWord, int] = {w: c for w, c in collected.items() if c != 0}

    @classmethod
    def zero(cls) -> FoxPolynomial:
        return cls()

    @classmethod
    def one(cls) -> FoxPolynomial:
        return cls({GroupWord(): 1})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: FoxPolynomial) -> FoxPolynomial:
        merged = dict(self.terms)
        for w, c in other.terms.items():
            merged[w] = merged.get(w, 0) + c
        return FoxPolynomial(merged)

    def __neg__(self) -> FoxPolynomial:
        return FoxPolynomial({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: FoxPolynomial) -> FoxPolynomial:
        return self + (-other)

    def left_multiply(self, prefix: GroupWord) -> FoxPolynomial:
        return FoxPolynomial({prefix * w: c for w, c in self.terms.items()})

    def apply(self, a: Any, b: Any, vector: PureVector) -> PureVector:
        """Sum of c * (image of w) acting on ``vector`` by conjugation."""
        total = PureVector.zero(vector.params)
        for w, coefficient in self.terms.items():
            image = evaluate(w, a, b)
            total = total + sandwich(image, vector) * coefficient
        return total

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FoxPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda item: (len(item[0]), str(item[0]))):
            magnitude = abs(c)
            body = str(w) if magnitude == 1 else f"{magnitude}*{w}" if w.letters else str(magnitude)
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"FoxPolynomial({str(self)!r})"


def fox_derivative(w: Union[str, GroupWord], generator: str) -> FoxPolynomial:
    if generator not in GENERATORS:
        raise WordSyntaxError(f"unknown generator {generator!r}")

    terms: dict[GroupWord, int] = {}
    prefix: list[Letter] = []
    for letter in word(w):
        name, exponent = letter
        if name == generator:
            if exponent > 0:
                key = GroupWord(prefix)
                terms[key] = terms.get(key, 0) + 1
            else:
                key = GroupWord(prefix + [letter])
                terms[key] = terms.get(key, 0) - 1
        prefix.append(letter)
    return FoxPolynomial(terms)


def translational_residual(
    w: Union[str, GroupWord],
    rho_a: Any,
    rho_b: Any,
    *,
    tol: float = DEFAULT_TOLERANCE,
    check_relator: bool = True,
) -> PureVector:
    """Fox-derivative operator applied to the translational parts.

    With ``check_relator`` the linear parts must satisfy w(A, B) = +-1; the
    result is then zero exactly when the affine pair respects ``w``.
    """
    w = word(w)
    a, b = rho_a.linear, rho_b.linear
    if check_relator:
        linear = evaluate(w, a, b)
        one = linear.identity()
        if not (linear.is_close(one, tol) or linear.is_close(-one, tol)):
            raise OffVarietyError(f"{w} does not evaluate to 1 on the linear parts")

    residual = fox_derivative(w, "a").apply(a, b, rho_a.v) + fox_derivative(w, "b").apply(
        a, b, rho_b.v
    )
    log.debug("translational residual of %s: %r", w, residual)
    return residual


def trefoil_char_poly(x: Scalar, y: Scalar) -> Scalar:
    return simplify(2 * x**2 - 2 * y - 1)


def trefoil_affine_poly(x: Scalar, s: Scalar) -> Scalar:
    return simplify(4 * x**2 + 4 * s * x - 3)
