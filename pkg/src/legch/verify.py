"""Consistency checks tying linearized invariants to filling and two-copy data.

Topological and geometric inputs (Betti numbers of the filling and the link,
Morse complexes, and the disc-count matrices between the summands of the
two-copy complexes) are supplied by the caller.  The checks test whether
these inputs fit the algebra computed from the front.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import ComplexError, DSquaredError
from .homology import (
    ChainMap,
    GradedComplex,
    PoincarePolynomial,
    as_gf2,
    complex_from_matrix,
    flat_basis,
    gf2_matmul,
    les_feasible,
    mapping_cone,
)

PLUS, INFINITY = "PLUS", "INFINITY"


@dataclass(frozen=True)
class FillingData:
    n: int
    betti_L: Mapping[int, int]
    betti_Lambda: Mapping[int, int] = field(default_factory=dict)
    aug_index: int | None = None

    def __post_init__(self):
        for label, betti in (("filling", self.betti_L), ("link", self.betti_Lambda)):
            for k, v in betti.items():
                if v < 0:
                    raise ComplexError(f"negative Betti number {v} in degree {k} of the {label}",
                                       "SHAPE")
        if self.betti_Lambda and self.betti_Lambda.get(0, 0) < 1:
            raise ComplexError("a closed manifold has H_0 of dimension at least 1", "SHAPE")


@dataclass(frozen=True)
class SeidelReport:
    passed: bool
    observed: dict[int, int]  # dim HCL^k
    expected: dict[int, int]  # dim H_{n-k}(L)
    deltas: dict[int, int]  # observed - expected, non-zero entries only


def seidel_check(hcl_co: PoincarePolynomial, fd: FillingData) -> SeidelReport:
    """Compare dim HCL^k with dim H_{n-k}(L) in every degree."""
    obs = hcl_co.as_dict()
    exp = {fd.n - j: v for j, v in fd.betti_L.items() if v}
    degs = sorted(set(obs) | set(exp))
    deltas = {k: obs.get(k, 0) - exp.get(k, 0) for k in degs if obs.get(k, 0) != exp.get(k, 0)}
    return SeidelReport(not deltas, obs, exp, deltas)


@dataclass(frozen=True)
class DualityReport:
    feasible: bool
    dims: tuple[int, ...]
    labels: tuple[str, ...]
    ranks: tuple[int, ...]
    window: tuple[str, ...]  # terms around the first failure; empty when feasible


def duality_sequence(hcl: PoincarePolynomial, hcl_co: PoincarePolynomial,
                     fd: FillingData) -> tuple[list[int], list[str]]:
    """Terms ``H_{k+1}(link) -> HCL^{n-k-1} -> HCL_k -> H_k(link) -> ...`` for decreasing k."""
    n = fd.n
    hl = dict(fd.betti_Lambda)
    ks = ({j - 1 for j, v in hl.items() if v} | {n - 1 - j for j, _ in hcl_co.coeffs}
          | {j for j, _ in hcl.coeffs})
    if not ks:
        return [0, 0], ["0", "0"]
    dims, labels = [0], ["0"]
    for k in range(max(ks) + 1, min(ks) - 2, -1):
        dims += [hl.get(k + 1, 0), hcl_co[n - k - 1], hcl[k]]
        labels += [f"H_{k + 1}(link)", f"HCL^{n - k - 1}", f"HCL_{k}"]
    dims.append(0)
    labels.append("0")
    return dims, labels


def duality_check(hcl: PoincarePolynomial, hcl_co: PoincarePolynomial,
                  fd: FillingData) -> DualityReport:
    dims, labels = duality_sequence(hcl, hcl_co, fd)
    res = les_feasible(dims)
    window: tuple[str, ...] = ()
    if not res.feasible:
        lo, hi = max(0, res.failure - 2), min(len(dims), res.failure + 3)
        window = tuple(f"{labels[i]}={dims[i]}" for i in range(lo, hi))
    return DualityReport(res.feasible, tuple(dims), tuple(labels), res.ranks, window)


@dataclass
class TwoCopyBlocks:
    """Summands and connecting maps of the two-copy complexes.

    ``p`` is the linearized complex (differential of degree -1), ``q`` its
    co-complex and ``f`` a Morse co-complex on the link.  Connecting maps are
    full matrices over the flat bases of the summands (degree-sorted, as in
    :func:`legch.homology.flat_basis`); ``None`` means zero.

    * ``rho``: p -> f, ``eta``: p -> q, ``sigma``: f -> q enter the complex
      for the far push-off;
    * ``rho_plus``: f -> q enters the complex for the small push-off.
    """

    n: int
    p: GradedComplex
    f: GradedComplex
    q: GradedComplex
    rho: np.ndarray | None = None
    sigma: np.ndarray | None = None
    eta: np.ndarray | None = None
    rho_plus: np.ndarray | None = None


def _block(m, rows: int, cols: int, name: str) -> np.ndarray:
    if m is None:
        return np.zeros((rows, cols), dtype=np.uint8)
    a = as_gf2(m, (rows, cols))
    if a.shape != (rows, cols):
        raise ComplexError(f"block {name} has shape {a.shape}, expected {(rows, cols)}", "SHAPE")
    return a


def _assemble(parts: list[tuple[str, GradedComplex, int, int]],
              links: dict[tuple[int, int], tuple[str, np.ndarray | None]]) -> GradedComplex:
    """Block lower-triangular complex of step +1.

    ``parts`` holds (tag, complex, sign, offset): a basis vector of degree j
    in the summand sits in total degree ``sign * j + offset``.
    """
    degrees, labels, sizes, diag = [], [], [], []
    for tag, c, sign, offset in parts:
        basis = flat_basis(c)
        degrees += [sign * j + offset for j, _ in basis]
        labels += [f"{tag}:{lab}" for _, lab in basis]
        sizes.append(len(basis))
        diag.append(c.total_matrix()[0])
    starts = np.cumsum([0] + sizes)
    big = np.zeros((starts[-1], starts[-1]), dtype=np.uint8)
    for i, m in enumerate(diag):
        big[starts[i]:starts[i + 1], starts[i]:starts[i + 1]] = m
    for (src, tgt), (name, m) in links.items():
        big[starts[tgt]:starts[tgt + 1], starts[src]:starts[src + 1]] = \
            _block(m, sizes[tgt], sizes[src], name)
    total = complex_from_matrix(big, degrees, +1, labels)
    if gf2_matmul(big, big).any():
        raise DSquaredError("assembled differential does not square to zero")
    return total


def twocopy_assemble(b: TwoCopyBlocks, which: str = INFINITY) -> GradedComplex:
    """Co-complex for a two-copy link, as a single complex of degree +1.

    INFINITY: degree k is CL_{n-2-k} (+) C^{k+1}(f) (+) CL^k with
    differential [[d_p, 0, 0], [rho, d_f, 0], [eta, sigma, d_q]].
    PLUS: degree k is C^{k+1}(f) (+) CL^k with [[d_f, 0], [rho_plus, d_q]].
    """
    if b.p.step != -1 or b.f.step != 1 or b.q.step != 1:
        raise ComplexError("expected p with step -1, f and q with step +1", "SHAPE")
    if which == INFINITY:
        return _assemble(
            [("p", b.p, -1, b.n - 2), ("f", b.f, 1, -1), ("q", b.q, 1, 0)],
            {(0, 1): ("rho", b.rho), (0, 2): ("eta", b.eta), (1, 2): ("sigma", b.sigma)})
    if which == PLUS:
        return _assemble([("f", b.f, 1, -1), ("q", b.q, 1, 0)],
                         {(0, 1): ("rho_plus", b.rho_plus)})
    raise ComplexError(f"unknown two-copy variant {which!r}", "SYNTAX")


@dataclass(frozen=True)
class WrappedReport:
    acyclic: bool
    quasi_iso: bool
    cone_homology: PoincarePolynomial


def wrapped_cone_check(cf0: GradedComplex, cf_inf: GradedComplex,
                       delta: Mapping[int, np.ndarray] | ChainMap) -> WrappedReport:
    """Cone of ``delta: CF^0 -> CF^inf`` (degree +1, both differentials of degree +1).

    Acyclicity of the cone and bijectivity of the induced map on homology
    are computed separately; they agree whenever the input is a chain map.
    """
    f = delta if isinstance(delta, ChainMap) else ChainMap(cf0, cf_inf, dict(delta), degree=1)
    f.check()
    cone = mapping_cone(f)
    h = cone.homology()
    return WrappedReport(h.is_zero(), f.is_quasi_isomorphism(), h)


def wrapped_from_blocks(f_plus: GradedComplex, f: GradedComplex, q: GradedComplex,
                        gamma=None, g=None, sigma=None) -> tuple[GradedComplex, GradedComplex, ChainMap]:
    """Split the Floer complex of a filling and its push-off into CF^0 and CF^inf.

    CF^0_k = C^k(F_+); CF^inf_k = C^{k-1}(f) (+) CL^{k-2}, where the shift
    by two converts contact gradings to Floer gradings.  ``delta`` is the
    column (gamma, g) and ``sigma`` links the two parts of CF^inf.
    """
    cf0 = _assemble([("F+", f_plus, 1, 0)], {})
    cf_inf = _assemble([("f", f, 1, 1), ("q", q, 1, 2)], {(0, 1): ("sigma", sigma)})
    nf, nq, np_ = f.total_dim(), q.total_dim(), f_plus.total_dim()
    col = np.concatenate([_block(gamma, nf, np_, "gamma"), _block(g, nq, np_, "g")], axis=0)
    # per-degree blocks; within a degree both bases keep their summand order
    src_deg = [d for d, _ in flat_basis(f_plus)]
    tgt_deg = [d + 1 for d, _ in flat_basis(f)] + [d + 2 for d, _ in flat_basis(q)]
    blocks = {}
    for k in cf0.degrees():
        cols = [i for i in range(np_) if src_deg[i] == k]
        rows = [i for i in range(nf + nq) if tgt_deg[i] == k + 1]
        blocks[k] = col[np.ix_(rows, cols)]
    return cf0, cf_inf, ChainMap(cf0, cf_inf, blocks, degree=1)


@dataclass(frozen=True)
class MorseConeReport:
    passed: bool
    cone_homology: PoincarePolynomial
    expected: PoincarePolynomial


def morse_cone_check(f_plus: GradedComplex, f: GradedComplex, gamma,
                     f_minus: GradedComplex) -> MorseConeReport:
    """Compare H(Cone(gamma)) with the Morse cohomology of ``f_minus``.

    Cone(gamma) has degree k equal to C^k(F_+) (+) C^{k-1}(f) and differential
    [[d_{F+}, 0], [gamma, d_f]].  Only homology dimensions are compared.
    """
    cone = _assemble([("F+", f_plus, 1, 0), ("f", f, 1, 1)], {(0, 1): ("gamma", gamma)})
    h, want = cone.homology(), f_minus.homology()
    return MorseConeReport(h == want, h, want)


@dataclass(frozen=True)
class VanishingReport:
    passed: bool
    homology: PoincarePolynomial


def vanishing_link_check(hcl_mixed: PoincarePolynomial) -> VanishingReport:
    return VanishingReport(hcl_mixed.is_zero(), hcl_mixed)
