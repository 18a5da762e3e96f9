"""Augmentations to Z/2 and the linearized complexes they produce."""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

import numpy as np

from .dga import DGA, Element, name_key
from .errors import AugmentationError
from .homology import GradedComplex, gf2_matmul

DEFAULT_MAX_AUG_GENS = 24


def max_aug_gens() -> int:
    raw = os.environ.get("LEGCH_MAX_AUG_GENS")
    if raw is None:
        return DEFAULT_MAX_AUG_GENS
    try:
        return int(raw)
    except ValueError:
        raise AugmentationError(f"LEGCH_MAX_AUG_GENS must be an integer, got {raw!r}",
                                "SYNTAX") from None


@dataclass(frozen=True)
class Augmentation:
    """Values on the degree-0 generators, listed in name order."""

    generators: tuple[str, ...]
    bits: tuple[int, ...]

    @property
    def values(self) -> dict[str, int]:
        return dict(zip(self.generators, self.bits))

    def __call__(self, name: str) -> int:
        return self.values.get(name, 0)

    def bitstring(self) -> str:
        return "".join(str(b) for b in self.bits)

    @classmethod
    def zero(cls, d: DGA) -> "Augmentation":
        gens = degree_zero_generators(d)
        return cls(tuple(gens), (0,) * len(gens))

    @classmethod
    def from_values(cls, d: DGA, values: dict[str, int]) -> "Augmentation":
        gens = degree_zero_generators(d)
        extra = set(values) - set(gens)
        if any(values[x] & 1 for x in extra):
            raise AugmentationError(
                f"augmentations vanish outside degree 0; got values on {sorted(extra)}",
                "NOT_AUGMENTATION")
        return cls(tuple(gens), tuple(values.get(g, 0) & 1 for g in gens))


def degree_zero_generators(d: DGA) -> list[str]:
    return sorted((g.name for g in d.generators if d.reduce(g.grading) == 0), key=name_key)


def evaluate(x: Element, values: dict[str, int]) -> int:
    """Apply the algebra map sending each generator to its 0/1 value."""
    total = 0
    for w in x:
        total ^= int(all(values.get(g, 0) for g in w))
    return total


def is_augmentation(d: DGA, values: dict[str, int]) -> bool:
    return all(evaluate(d.diff[g], values) == 0 for g in d.names)


def enumerate_augmentations(d: DGA, cap: int | None = None) -> list[Augmentation]:
    """Every augmentation, in binary counting order (first generator is the high bit)."""
    gens = degree_zero_generators(d)
    cap = max_aug_gens() if cap is None else cap
    if len(gens) > cap:
        raise AugmentationError(
            f"{len(gens)} degree-0 generators exceed the enumeration cap {cap}", "TOOBIG")
    out = []
    for bits in itertools.product((0, 1), repeat=len(gens)):
        if is_augmentation(d, dict(zip(gens, bits))):
            out.append(Augmentation(tuple(gens), bits))
    return out


def _twist(x: Element, values: dict[str, int]) -> Element:
    """Substitute g -> g + value(g) in every word."""
    acc = Element()
    for w in x:
        term = Element.one()
        for g in w:
            factor = Element.gen(g) + (Element.one() if values.get(g, 0) else Element())
            term = term * factor
        acc = acc + term
    return acc


def conjugate(d: DGA, e: Augmentation) -> DGA:
    """The DGA with differential Psi o d o Psi^-1, where Psi(g) = g + e(g).

    Over Z/2, Psi^-1 = Psi, so the new differential of g is d(g) with every
    generator shifted by its value.
    """
    values = e.values
    diff = {}
    for g in d.names:
        new = _twist(d.diff[g], values)
        if new.constant():
            raise AugmentationError(
                f"constant term survives in the conjugated differential of {g}",
                "NOT_AUGMENTATION")
        diff[g] = new
    return DGA(d.generators, diff, d.modulus)


@dataclass
class LinearizedComplex:
    basis: dict[int, list[str]]  # degree -> generator names
    homological: GradedComplex  # differential of degree -1
    cohomological: GradedComplex  # transpose, degree +1

    def homology(self):
        return self.homological.homology()

    def cohomology(self):
        return self.cohomological.homology()


def linearize(d: DGA, e: Augmentation) -> LinearizedComplex:
    """Word-length-one part of the conjugated differential, as matrices."""
    conj = conjugate(d, e)
    basis: dict[int, list[str]] = {}
    for g in d.generators:
        basis.setdefault(d.reduce(g.grading), []).append(g.name)
    pos = {name: (k, i) for k, names in basis.items() for i, name in enumerate(names)}
    dims = {k: len(v) for k, v in basis.items()}

    def norm(k):
        return k % d.modulus if d.modulus else k

    maps = {}
    for k, names in basis.items():
        t = norm(k - 1)
        m = np.zeros((dims.get(t, 0), len(names)), dtype=np.uint8)
        for j, g in enumerate(names):
            for w in conj.diff[g].part_of_length(1):
                tk, i = pos[w[0]]
                if tk != t:
                    raise AugmentationError(
                        f"linear term {w[0]} in d({g}) has the wrong degree", "NOT_AUGMENTATION")
                m[i, j] ^= 1
        maps[k] = m
    hom = GradedComplex(dims, maps, -1, d.modulus, {k: list(v) for k, v in basis.items()})
    for k in hom.degrees():
        if gf2_matmul(hom.d(hom.target(k)), hom.d(k)).any():
            raise AugmentationError("linearized differential does not square to zero",
                                    "NOT_AUGMENTATION")
    return LinearizedComplex(basis, hom, hom.dual())
