"""Random complexes and chain maps with homology known by construction.

A basis of graded vectors, each tagged A or B, is partly matched into pairs
``s -> t`` (``deg t = deg s + step``, never from B into A).  Unmatched vectors
carry homology.  Conjugating by random row additions inside one degree (never
from a B row into an A row) hides the structure but keeps the differential
block lower-triangular, so it is the cone of a chain map ``A -> B``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from legch.homology import ChainMap, GradedComplex, complex_from_matrix


@dataclass
class SplitComplex:
    a: GradedComplex
    b: GradedComplex
    f: ChainMap
    total: GradedComplex
    h_a: dict[int, int]
    h_b: dict[int, int]
    h_total: dict[int, int]


def _count(items) -> dict[int, int]:
    out: dict[int, int] = {}
    for k in items:
        out[k] = out.get(k, 0) + 1
    return out


def random_split_complex(rng: random.Random, step: int = -1, lo: int = -2, hi: int = 2,
                         max_dim: int = 3, b_only: bool = False) -> SplitComplex:
    basis: list[tuple[str, int]] = []
    for k in range(lo, hi + 1):
        for part in ("A", "B"):
            if b_only and part == "A":
                continue
            basis += [(part, k)] * rng.randint(0, max_dim)
    n = len(basis)
    m = np.zeros((n, n), dtype=np.uint8)
    free = list(range(n))
    rng.shuffle(free)
    paired: set[int] = set()
    for s in free:
        if s in paired:
            continue
        if rng.random() < 0.35:
            continue
        targets = [t for t in free if t not in paired and t != s
                   and basis[t][1] == basis[s][1] + step
                   and not (basis[s][0] == "B" and basis[t][0] == "A")]
        if targets:
            t = rng.choice(targets)
            m[t, s] = 1
            paired |= {s, t}
    survivors = [i for i in range(n) if i not in paired]
    sources = {s for s in range(n) for t in range(n) if m[t, s]}
    targets_ = {t for t in range(n) for s in range(n) if m[t, s]}
    h_total = _count(basis[i][1] for i in survivors)
    # in A alone, sources of A -> B pairs become cycles; in B alone, their targets do
    h_a = _count(basis[i][1] for i in range(n) if basis[i][0] == "A" and (
        i in survivors or (i in sources and basis[int(np.nonzero(m[:, i])[0][0])][0] == "B")))
    h_b = _count(basis[i][1] for i in range(n) if basis[i][0] == "B" and (
        i in survivors or (i in targets_ and basis[int(np.nonzero(m[i])[0][0])][0] == "A")))
    for _ in range(rng.randint(0, 3 * n)):
        i, j = rng.randrange(n or 1), rng.randrange(n or 1)
        if n == 0 or i == j or basis[i][1] != basis[j][1]:
            continue
        if basis[i][0] == "A" and basis[j][0] == "B":
            continue
        # E = I + e_ij is its own inverse over GF(2); conjugate m by it
        m[i] ^= m[j]
        m[:, j] ^= m[:, i]
    # order: A then B, each sorted by degree
    order = sorted(range(n), key=lambda i: (basis[i][0], basis[i][1]))
    m = m[np.ix_(order, order)]
    basis = [basis[i] for i in order]
    na = sum(1 for p, _ in basis if p == "A")
    labels = [f"{p}{i}" for i, (p, _) in enumerate(basis)]
    degs = [k for _, k in basis]
    total = complex_from_matrix(m, degs, step, labels)
    a = complex_from_matrix(m[:na, :na], degs[:na], step, labels[:na])
    b = complex_from_matrix(m[na:, na:], degs[na:], step, labels[na:])
    blocks = {}
    for k in a.degrees():
        cols = [i for i in range(na) if degs[i] == k]
        rows = [na + i for i in range(n - na) if degs[na + i] == k + step]
        blocks[k] = m[np.ix_(rows, cols)]
    f = ChainMap(a, b, blocks, degree=step)
    return SplitComplex(a, b, f, total, h_a, h_b, h_total)


def random_matrix(rng: random.Random, max_rows: int = 6, max_cols: int = 6) -> np.ndarray:
    r, c = rng.randint(0, max_rows), rng.randint(0, max_cols)
    density = rng.random()
    return np.array([[int(rng.random() < density) for _ in range(c)] for _ in range(r)],
                    dtype=np.uint8).reshape(r, c)
