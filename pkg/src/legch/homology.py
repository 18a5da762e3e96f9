"""Linear algebra over GF(2): ranks, graded complexes, homology and mapping cones."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ComplexError


def as_gf2(m, shape: tuple[int, int] | None = None) -> np.ndarray:
    a = np.asarray(m, dtype=np.int64)
    if a.size == 0 and a.ndim != 2:
        a = np.zeros(shape if shape is not None else (0, 0), dtype=np.int64)
    if a.ndim != 2:
        raise ComplexError(f"expected a 2-d matrix, got shape {a.shape}", "SHAPE")
    return (a & 1).astype(np.uint8)


def gf2_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return ((np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) & 1).astype(np.uint8)


def gf2_row_reduce(m) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    r = as_gf2(m).copy()
    rows, cols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row >= rows:
            break
        hits = np.nonzero(r[row:, col])[0]
        if hits.size == 0:
            continue
        p = row + hits[0]
        if p != row:
            r[[row, p]] = r[[p, row]]
        others = np.nonzero(r[:, col])[0]
        others = others[others != row]
        r[others] ^= r[row]
        pivots.append(col)
        row += 1
    return r, pivots


def gf2_rank(m) -> int:
    a = as_gf2(m)
    if a.size == 0:
        return 0
    return len(gf2_row_reduce(a)[1])


def gf2_nullspace(m) -> np.ndarray:
    """Columns form a basis of the kernel of ``m``."""
    a = as_gf2(m)
    cols = a.shape[1]
    r, pivots = gf2_row_reduce(a)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((cols, len(free)), dtype=np.uint8)
    for j, fc in enumerate(free):
        basis[fc, j] = 1
        for i, pc in enumerate(pivots):
            basis[pc, j] = r[i, fc]
    return basis


def gf2_transpose(m) -> np.ndarray:
    return as_gf2(m).T.copy()


@dataclass(frozen=True)
class PoincarePolynomial:
    """Finitely supported map degree -> dimension (zeros dropped)."""

    coeffs: tuple[tuple[int, int], ...]

    @classmethod
    def from_dict(cls, d: Mapping[int, int]) -> "PoincarePolynomial":
        for k, v in d.items():
            if v < 0:
                raise ComplexError(f"negative dimension {v} in degree {k}", "SHAPE")
        return cls(tuple(sorted((int(k), int(v)) for k, v in d.items() if v)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def __getitem__(self, k: int) -> int:
        return self.as_dict().get(k, 0)

    def __eq__(self, other):
        if isinstance(other, Mapping):
            return self.as_dict() == {k: v for k, v in other.items() if v}
        return isinstance(other, PoincarePolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def total(self) -> int:
        return sum(v for _, v in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{'' if v == 1 else v}t^{k}" for k, v in self.coeffs)


@dataclass
class GradedComplex:
    """Finite graded GF(2) complex.

    ``maps[k]`` is the matrix of the differential out of degree ``k`` into
    degree ``k + step``; its shape is ``(dims[k + step], dims[k])``.  With
    ``modulus > 0`` degrees are residues and ``k + step`` wraps around.
    """

    dims: dict[int, int]
    maps: dict[int, np.ndarray] = field(default_factory=dict)
    step: int = -1
    modulus: int = 0
    labels: dict[int, list[str]] = field(default_factory=dict)

    def __post_init__(self):
        if self.step not in (-1, 1):
            raise ComplexError(f"differential step must be -1 or +1, got {self.step}", "SHAPE")
        self.dims = {self._norm(k): int(v) for k, v in self.dims.items() if v}
        self.maps = {self._norm(k): as_gf2(m, (self.dim(self._norm(k + self.step)), self.dim(self._norm(k))))
                     for k, m in self.maps.items()}
        for k, m in self.maps.items():
            want = (self.dim(self.target(k)), self.dim(k))
            if m.shape != want:
                raise ComplexError(f"differential out of degree {k} has shape {m.shape}, "
                                   f"expected {want}", "SHAPE")

    def _norm(self, k: int) -> int:
        return k % self.modulus if self.modulus else k

    def target(self, k: int) -> int:
        return self._norm(k + self.step)

    def source(self, k: int) -> int:
        """Degree whose differential lands in degree ``k``."""
        return self._norm(k - self.step)

    def dim(self, k: int) -> int:
        return self.dims.get(self._norm(k), 0)

    def degrees(self) -> list[int]:
        return sorted(self.dims)

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def d(self, k: int) -> np.ndarray:
        k = self._norm(k)
        m = self.maps.get(k)
        if m is None:
            return np.zeros((self.dim(self.target(k)), self.dim(k)), dtype=np.uint8)
        return m

    def validate(self) -> "GradedComplex":
        for k in self.degrees():
            comp = gf2_matmul(self.d(self.target(k)), self.d(k))
            if comp.any():
                raise ComplexError(f"d∘d != 0 starting in degree {k}", "NOT_A_COMPLEX")
        return self

    def homology(self) -> PoincarePolynomial:
        self.validate()
        out = {}
        for k in self.degrees():
            out[k] = self.dim(k) - gf2_rank(self.d(k)) - gf2_rank(self.d(self.source(k)))
        return PoincarePolynomial.from_dict(out)

    def euler_characteristic(self) -> int:
        if self.modulus % 2:
            raise ComplexError("Euler characteristic needs an even grading modulus", "SHAPE")
        return sum((-1) ** (k % 2) * v for k, v in self.dims.items())

    def dual(self) -> "GradedComplex":
        """Transpose complex: same degrees, differential step reversed."""
        maps = {self.target(k): gf2_transpose(self.d(k)) for k in self.degrees()}
        return GradedComplex(dict(self.dims), maps, -self.step, self.modulus, dict(self.labels))

    def shifted(self, s: int) -> "GradedComplex":
        """Complex ``D`` with ``D_k = C_{k+s}``."""
        return GradedComplex({k - s: v for k, v in self.dims.items()},
                             {k - s: m for k, m in self.maps.items()}, self.step, self.modulus,
                             {k - s: v for k, v in self.labels.items()})

    def total_matrix(self) -> tuple[np.ndarray, list[tuple[int, int]]]:
        """Whole differential as one square matrix, basis ordered by degree."""
        order: list[tuple[int, int]] = []
        offset = {}
        for k in self.degrees():
            offset[k] = len(order)
            order.extend((k, i) for i in range(self.dim(k)))
        big = np.zeros((len(order), len(order)), dtype=np.uint8)
        for k in self.degrees():
            t = self.target(k)
            if self.dim(t):
                big[offset[t]:offset[t] + self.dim(t), offset[k]:offset[k] + self.dim(k)] = self.d(k)
        return big, order

    def dump(self) -> str:
        lines = [f"step {self.step:+d}" + (f" modulus {self.modulus}" if self.modulus else "")]
        for k in self.degrees():
            names = self.labels.get(k)
            lines.append(f"degree {k}: dim {self.dim(k)}" + (f" [{' '.join(names)}]" if names else ""))
        for k in self.degrees():
            m = self.d(k)
            if m.size and m.any():
                lines.append(f"d {k} -> {self.target(k)}:")
                lines.extend("  " + "".join(str(int(x)) for x in row) for row in m)
        return "\n".join(lines) + "\n"


def complex_homology(c: GradedComplex) -> PoincarePolynomial:
    return c.homology()


def zero_complex(step: int = -1) -> GradedComplex:
    return GradedComplex({}, {}, step)


def direct_sum(parts: Sequence[GradedComplex]) -> GradedComplex:
    step = parts[0].step if parts else -1
    modulus = parts[0].modulus if parts else 0
    if any(p.step != step or p.modulus != modulus for p in parts):
        raise ComplexError("direct sum of complexes with different conventions", "SHAPE")
    dims: dict[int, int] = {}
    for p in parts:
        for k, v in p.dims.items():
            dims[k] = dims.get(k, 0) + v
    maps = {}
    for k in dims:
        t = parts[0].target(k) if parts else k
        blocks = [p.d(k) for p in parts]
        m = np.zeros((dims.get(t, 0), dims[k]), dtype=np.uint8)
        r = c = 0
        for b in blocks:
            m[r:r + b.shape[0], c:c + b.shape[1]] = b
            r += b.shape[0]
            c += b.shape[1]
        maps[k] = m
    return GradedComplex(dims, maps, step, modulus)


@dataclass
class ChainMap:
    """``blocks[k]`` maps ``source_k`` into ``target_{k + degree}``."""

    source: GradedComplex
    target: GradedComplex
    blocks: dict[int, np.ndarray] = field(default_factory=dict)
    degree: int = 0

    def __post_init__(self):
        if (self.source.step, self.source.modulus) != (self.target.step, self.target.modulus):
            raise ComplexError("chain map between complexes with different conventions", "SHAPE")
        norm = self.source._norm
        self.blocks = {norm(k): as_gf2(m, (self.target.dim(k + self.degree), self.source.dim(k)))
                       for k, m in self.blocks.items()}
        for k, m in self.blocks.items():
            want = (self.target.dim(k + self.degree), self.source.dim(k))
            if m.shape != want:
                raise ComplexError(f"map block in degree {k} has shape {m.shape}, expected {want}",
                                   "SHAPE")

    def at(self, k: int) -> np.ndarray:
        k = self.source._norm(k)
        m = self.blocks.get(k)
        if m is None:
            return np.zeros((self.target.dim(k + self.degree), self.source.dim(k)), dtype=np.uint8)
        return m

    def check(self) -> "ChainMap":
        src, tgt = self.source, self.target
        for k in src.degrees():
            lhs = gf2_matmul(tgt.d(k + self.degree), self.at(k))
            rhs = gf2_matmul(self.at(src.target(k)), src.d(k))
            if lhs.shape != rhs.shape or (lhs ^ rhs).any():
                raise ComplexError(f"map does not commute with differentials in degree {k}",
                                   "NOT_CHAIN_MAP")
        return self

    def induced_ranks(self) -> dict[int, int]:
        """Rank of the induced map on homology out of each source degree."""
        src, tgt = self.source, self.target
        out = {}
        for k in src.degrees():
            cycles = gf2_nullspace(src.d(k))
            if cycles.shape[1] == 0:
                out[k] = 0
                continue
            t = tgt._norm(k + self.degree)
            bounds = tgt.d(tgt.source(t))
            images = gf2_matmul(self.at(k), cycles)
            both = np.concatenate([bounds, images], axis=1) if bounds.size else images
            out[k] = gf2_rank(both) - gf2_rank(bounds)
        return out

    def is_quasi_isomorphism(self) -> bool:
        self.check()
        hs, ht = self.source.homology(), self.target.homology()
        ranks = self.induced_ranks()
        degs = {k for k, _ in hs.coeffs} | {self.target._norm(k - self.degree) for k, _ in ht.coeffs}
        return all(ranks.get(k, 0) == hs[k] == ht[self.target._norm(k + self.degree)] for k in degs)


def identity_map(c: GradedComplex) -> ChainMap:
    return ChainMap(c, c, {k: np.eye(v, dtype=np.uint8) for k, v in c.dims.items()})


def mapping_cone(f: ChainMap, check: bool = True) -> GradedComplex:
    """Cone with ``Cone_k = A_{k+step-degree} (+) B_k`` and differential [[d_A, 0], [f, d_B]]."""
    if check:
        f.check()
    a, b = f.source, f.target
    step, norm = b.step, b._norm
    shift = step - f.degree
    dims: dict[int, int] = {}
    for k in a.degrees():
        dims[norm(k - shift)] = dims.get(norm(k - shift), 0) + a.dim(k)
    for k in b.degrees():
        dims[k] = dims.get(k, 0) + b.dim(k)
    maps = {}
    labels = {}
    for k in dims:
        t = norm(k + step)
        ka, ta = norm(k + shift), norm(t + shift)
        m = np.zeros((a.dim(ta) + b.dim(t), a.dim(ka) + b.dim(k)), dtype=np.uint8)
        m[:a.dim(ta), :a.dim(ka)] = a.d(ka)
        m[a.dim(ta):, :a.dim(ka)] = f.at(ka)
        m[a.dim(ta):, a.dim(ka):] = b.d(k)
        maps[k] = m
        labels[k] = a.labels.get(ka, [f"A{ka}.{i}" for i in range(a.dim(ka))]) + \
            b.labels.get(k, [f"B{k}.{i}" for i in range(b.dim(k))])
    return GradedComplex(dims, maps, step, b.modulus, labels)


def cone_long_exact_dims(f: ChainMap) -> tuple[list[int], list[str], list[int]]:
    """Homology dimensions along the long exact sequence of ``Cone(f)``.

    Returns (dims, labels, ranks of f_* at the ``H(A) -> H(B)`` slots) read
    in the direction the sequence runs, padded with a zero at both ends.  The
    sequence is ``H_k(B) -> H_k(Cone) -> H_{k+step-deg}(A) -> H_{k+step}(B)``.
    """
    if f.source.modulus:
        raise ComplexError("long exact sequence bookkeeping needs integer gradings", "SHAPE")
    a, b = f.source, f.target
    cone = mapping_cone(f)
    ha, hb, hc = a.homology(), b.homology(), cone.homology()
    shift = b.step - f.degree
    ranks = f.induced_ranks()
    degs = set(b.degrees()) | set(cone.degrees()) | {k - shift for k in a.degrees()}
    if not degs:
        return [0, 0], ["0", "0"], []
    lo, hi = min(degs) - 1, max(degs) + 1
    order = range(hi, lo - 1, -1) if b.step == -1 else range(lo, hi + 1)
    dims, labels, fr = [0], ["0"], []
    for k in order:
        dims += [hb[k], hc[k], ha[k + shift]]
        labels += [f"H{k}(B)", f"H{k}(Cone)", f"H{k + shift}(A)"]
        fr.append(ranks.get(k + shift, 0))
    dims.append(0)
    labels.append("0")
    return dims, labels, fr


@dataclass(frozen=True)
class ExactnessResult:
    feasible: bool
    ranks: tuple[int, ...]
    # first position where exactness cannot be satisfied, or -1
    failure: int = -1


def les_feasible(dims: Iterable[int]) -> ExactnessResult:
    """Ranks forced by exactness of ``0 -> V_1 -> ... -> V_m -> 0``.

    The map out of ``V_i`` has rank ``dim V_i`` minus the rank of the map
    into it.  The sequence is realisable iff every such rank is non-negative
    and the map out of ``V_m`` has rank zero.
    """
    ds = [int(x) for x in dims]
    if any(x < 0 for x in ds):
        raise ComplexError("dimensions must be non-negative", "SHAPE")
    ranks = []
    prev = 0
    failure = -1
    for i, x in enumerate(ds):
        r = x - prev
        if r < 0 and failure < 0:
            failure = i
        ranks.append(r)
        prev = r
    if failure < 0 and ranks and ranks[-1] != 0:
        failure = len(ds) - 1
    return ExactnessResult(failure < 0, tuple(ranks[:-1]), failure)


def flat_basis(c: GradedComplex) -> list[tuple[int, str]]:
    """(degree, label) for every basis vector, ordered as in ``total_matrix``."""
    out = []
    for k in c.degrees():
        names = c.labels.get(k) or [f"{k}.{i}" for i in range(c.dim(k))]
        out.extend((k, n) for n in names)
    return out


def complex_from_matrix(matrix, degrees: Sequence[int], step: int,
                        labels: Sequence[str] | None = None) -> GradedComplex:
    """Cut a square differential on a graded basis into per-degree blocks.

    Every non-zero entry must go from degree ``k`` to degree ``k + step``.
    """
    m = as_gf2(matrix, (len(degrees), len(degrees)))
    if m.shape != (len(degrees), len(degrees)):
        raise ComplexError(f"differential has shape {m.shape}, expected square of size "
                           f"{len(degrees)}", "SHAPE")
    rows, cols = np.nonzero(m)
    for r, c in zip(rows, cols):
        if degrees[r] != degrees[c] + step:
            where = f"{labels[c]} -> {labels[r]}" if labels else f"column {c} -> row {r}"
            raise ComplexError(f"entry {where} goes from degree {degrees[c]} to {degrees[r]}",
                               "SHAPE")
    index: dict[int, list[int]] = {}
    for i, k in enumerate(degrees):
        index.setdefault(k, []).append(i)
    dims = {k: len(v) for k, v in index.items()}
    maps = {k: m[np.ix_(index.get(k + step, []), v)] for k, v in index.items()}
    lab = {k: [labels[i] for i in v] for k, v in index.items()} if labels else {}
    return GradedComplex(dims, maps, step, 0, lab)
