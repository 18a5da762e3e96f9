"""Free unital associative algebras over Z/2 and differentials on them."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import AlgebraError

Word = tuple[str, ...]

_NAME_PARTS = re.compile(r"(\d+)")


def name_key(name: str):
    """Natural ordering: ``b2 < b10``, letters compared alphabetically."""
    return tuple(int(p) if p.isdigit() else p for p in _NAME_PARTS.split(name))


def word_key(w: Word):
    return (len(w), tuple(name_key(x) for x in w))


class Element:
    """A Z/2 linear combination of words; the empty word is the unit."""

    __slots__ = ("_words",)

    def __init__(self, words: Iterable[Word] = ()):
        self._words = frozenset(words)

    @classmethod
    def from_words(cls, words: Iterable[Iterable[str]]) -> "Element":
        acc: set[Word] = set()
        for w in words:
            acc ^= {tuple(w)}
        return cls(acc)

    @classmethod
    def one(cls) -> "Element":
        return cls([()])

    @classmethod
    def gen(cls, name: str) -> "Element":
        return cls([(name,)])

    @property
    def words(self) -> list[Word]:
        return sorted(self._words, key=word_key)

    def __iter__(self):
        return iter(self.words)

    def __len__(self):
        return len(self._words)

    def __bool__(self):
        return bool(self._words)

    def __eq__(self, other):
        return isinstance(other, Element) and self._words == other._words

    def __hash__(self):
        return hash(self._words)

    def __add__(self, other: "Element") -> "Element":
        return Element(self._words ^ other._words)

    __sub__ = __add__

    def __mul__(self, other: "Element") -> "Element":
        acc: set[Word] = set()
        for u in self._words:
            for v in other._words:
                acc ^= {u + v}
        return Element(acc)

    def generators(self) -> set[str]:
        return {x for w in self._words for x in w}

    def constant(self) -> int:
        return 1 if () in self._words else 0

    def part_of_length(self, n: int) -> "Element":
        return Element(w for w in self._words if len(w) == n)

    def __str__(self):
        if not self._words:
            return "0"
        return " + ".join("*".join(w) if w else "1" for w in self.words)

    def __repr__(self):
        return f"Element({str(self)!r})"


def parse_element(text: str) -> Element:
    """Inverse of ``str(Element)``: ``"1 + b1*b2 + a1"``."""
    text = text.strip()
    if text == "0":
        return Element()
    words = []
    for term in text.split("+"):
        term = term.strip()
        if not term:
            raise AlgebraError(f"empty term in {text!r}", "SYNTAX")
        if term == "1":
            words.append(())
        else:
            parts = [p.strip() for p in term.split("*")]
            if any(not p or not re.fullmatch(r"[A-Za-z_][\w']*", p) for p in parts):
                raise AlgebraError(f"bad term {term!r}", "SYNTAX")
            words.append(tuple(parts))
    return Element.from_words(words)


@dataclass(frozen=True)
class Generator:
    name: str
    grading: int
    action: Fraction | None = None


@dataclass(frozen=True)
class DSquaredReport:
    ok: bool
    generator: str | None = None
    residual: Element | None = None


class DGA:
    """Generators with gradings (in Z, or Z/modulus when modulus > 0) and a differential."""

    def __init__(self, generators: Iterable[Generator], diff: Mapping[str, Element],
                 modulus: int = 0):
        self.generators = sorted(generators, key=lambda g: name_key(g.name))
        self.modulus = modulus
        self._by_name = {g.name: g for g in self.generators}
        if len(self._by_name) != len(self.generators):
            raise AlgebraError("duplicate generator names", "DUPLICATE")
        for name in diff:
            if name not in self._by_name:
                raise AlgebraError(f"differential given for unknown generator {name!r}",
                                   "UNKNOWN_GENERATOR")
        self.diff = {g.name: diff.get(g.name, Element()) for g in self.generators}
        for name, el in self.diff.items():
            self._check_known(el)

    @property
    def names(self) -> list[str]:
        return [g.name for g in self.generators]

    def generator(self, name: str) -> Generator:
        try:
            return self._by_name[name]
        except KeyError:
            raise AlgebraError(f"unknown generator {name!r}", "UNKNOWN_GENERATOR") from None

    def grading(self, name: str) -> int:
        return self.generator(name).grading

    def reduce(self, value: int) -> int:
        return value % self.modulus if self.modulus else value

    def _check_known(self, x: Element) -> None:
        missing = x.generators() - self._by_name.keys()
        if missing:
            raise AlgebraError(f"unknown generator(s) {sorted(missing, key=name_key)}",
                               "UNKNOWN_GENERATOR")

    def word_grading(self, w: Iterable[str]) -> int:
        return self.reduce(sum(self.grading(x) for x in w))

    def boundary(self, x: Element) -> Element:
        """Leibniz extension of the differential, computed word by word."""
        self._check_known(x)
        acc: set[Word] = set()
        for w in x.words:
            for i, g in enumerate(w):
                pre, post = w[:i], w[i + 1:]
                for v in self.diff[g].words:
                    acc ^= {pre + v + post}
        return Element(acc)

    def verify_d_squared(self) -> DSquaredReport:
        for g in self.generators:
            res = self.boundary(self.diff[g.name])
            if res:
                return DSquaredReport(False, g.name, res)
        return DSquaredReport(True)

    def degree_violations(self) -> list[tuple[str, Word]]:
        """Words in a differential whose grading is not |g| - 1."""
        bad = []
        for g in self.generators:
            want = self.reduce(g.grading - 1)
            for w in self.diff[g.name].words:
                if self.word_grading(w) != want:
                    bad.append((g.name, w))
        return bad

    def action_violations(self) -> list[tuple[str, Word]]:
        bad = []
        if any(g.action is None for g in self.generators):
            return bad
        for g in self.generators:
            for w in self.diff[g.name].words:
                if sum((self._by_name[x].action for x in w), Fraction(0)) >= g.action:
                    bad.append((g.name, w))
        return bad

    def __eq__(self, other):
        return (isinstance(other, DGA) and self.generators == other.generators
                and self.diff == other.diff and self.modulus == other.modulus)

    def dump(self) -> str:
        lines = []
        if self.modulus:
            lines.append(f"modulus {self.modulus}")
        for g in self.generators:
            if g.action is not None:
                lines.append(f"action {g.name} {g.action.numerator}/{g.action.denominator}")
        for g in self.generators:
            lines.append(f"{g.name} : {g.grading} : d = {self.diff[g.name]}")
        return "\n".join(lines) + "\n"


def parse_dga(text: str) -> DGA:
    """Read the format written by :meth:`DGA.dump`."""
    modulus = 0
    actions: dict[str, Fraction] = {}
    gens: list[tuple[str, int]] = []
    diff: dict[str, Element] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        try:
            if toks[0] == "modulus":
                modulus = int(toks[1])
                continue
            if toks[0] == "action":
                actions[toks[1]] = Fraction(toks[2])
                continue
            name, grading, rhs = (p.strip() for p in line.split(":", 2))
            lhs, _, expr = rhs.partition("=")
            if lhs.strip() not in ("d", "∂"):
                raise ValueError("missing 'd ='")
            gens.append((name, int(grading)))
            diff[name] = parse_element(expr)
        except (ValueError, IndexError) as exc:
            raise AlgebraError(f"line {lineno}: {exc}", "SYNTAX") from None
    return DGA([Generator(n, g, actions.get(n)) for n, g in gens], diff, modulus)
