"""Text format for hand-built block matrices.

A fixture declares graded bases ("spaces") and 0/1 matrices between them::

    n 1
    space F  min:0 max:1          # label:degree
    matrix sigma F -> Q
           min max
      a1     0   1
      a2     0   0

The first line after ``matrix`` lists the source labels (the columns, in any
order); each following line starts with a target label and gives one bit per
column.  Omitted target rows are zero.  A blank line or a new directive ends
the grid.  ``#`` starts a comment.  Spaces computed elsewhere (for instance
the linearized complex of a front) may be referenced without being declared.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ComplexError


@dataclass
class Space:
    name: str
    labels: list[str]
    degrees: list[int]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ComplexError(f"space {self.name} has no basis element {label!r}",
                               "SYNTAX") from None


@dataclass
class BlockFixture:
    n: int | None = None
    spaces: dict[str, Space] = field(default_factory=dict)
    # name -> (source space, target space, non-zero (target label, source label) pairs)
    matrices: dict[str, tuple[str, str, list[tuple[str, str]]]] = field(default_factory=dict)

    def matrix(self, name: str, src: Space | None = None, tgt: Space | None = None) -> np.ndarray | None:
        """Dense matrix ``name`` over the given bases (declared spaces by default)."""
        entry = self.matrices.get(name)
        if entry is None:
            return None
        s_name, t_name, entries = entry
        src = src or self._space(s_name)
        tgt = tgt or self._space(t_name)
        out = np.zeros((len(tgt.labels), len(src.labels)), dtype=np.uint8)
        for tl, sl in entries:
            out[tgt.index(tl), src.index(sl)] = 1
        return out

    def _space(self, name: str) -> Space:
        try:
            return self.spaces[name]
        except KeyError:
            raise ComplexError(f"space {name!r} is neither declared nor supplied", "SYNTAX") from None


def _bits(tokens: list[str], lineno: int) -> list[int]:
    if len(tokens) == 1 and len(tokens[0]) > 1 and set(tokens[0]) <= {"0", "1"}:
        tokens = list(tokens[0])
    if any(t not in ("0", "1") for t in tokens):
        raise ComplexError(f"line {lineno}: matrix entries must be 0 or 1", "SYNTAX")
    return [int(t) for t in tokens]


def parse_blocks(text: str) -> BlockFixture:
    fx = BlockFixture()
    lines = [(i, raw.split("#", 1)[0].rstrip()) for i, raw in enumerate(text.splitlines(), start=1)]
    pos = 0
    while pos < len(lines):
        lineno, line = lines[pos]
        pos += 1
        toks = line.split()
        if not toks:
            continue
        head = toks[0]
        if head == "n":
            if len(toks) != 2 or not toks[1].lstrip("-").isdigit():
                raise ComplexError(f"line {lineno}: expected 'n <int>'", "SYNTAX")
            fx.n = int(toks[1])
        elif head == "space":
            if len(toks) < 2:
                raise ComplexError(f"line {lineno}: expected 'space <name> label:degree ...'", "SYNTAX")
            labels, degrees = [], []
            for t in toks[2:]:
                label, sep, deg = t.rpartition(":")
                if not sep or not label or not deg.lstrip("-").isdigit():
                    raise ComplexError(f"line {lineno}: bad basis entry {t!r}", "SYNTAX")
                if label in labels:
                    raise ComplexError(f"line {lineno}: duplicate label {label!r}", "SYNTAX")
                labels.append(label)
                degrees.append(int(deg))
            fx.spaces[toks[1]] = Space(toks[1], labels, degrees)
        elif head == "matrix":
            if len(toks) != 5 or toks[3] != "->":
                raise ComplexError(f"line {lineno}: expected 'matrix <name> <SRC> -> <TGT>'", "SYNTAX")
            name, s_name, t_name = toks[1], toks[2], toks[4]
            src, tgt = fx.spaces.get(s_name), fx.spaces.get(t_name)
            entries: list[tuple[str, str]] = []
            header: list[str] | None = None
            while pos < len(lines):
                ln, body = lines[pos]
                parts = body.split()
                if not parts:
                    pos += 1
                    if header is not None:
                        break
                    continue
                if parts[0] in ("n", "space", "matrix"):
                    break
                pos += 1
                if header is None:
                    header = parts
                    if src is not None:
                        for lab in header:
                            src.index(lab)
                    continue
                if tgt is not None:
                    tgt.index(parts[0])
                bits = _bits(parts[1:], ln)
                if len(bits) != len(header):
                    raise ComplexError(f"line {ln}: expected {len(header)} entries, got {len(bits)}",
                                       "SYNTAX")
                entries += [(parts[0], lab) for lab, b in zip(header, bits) if b]
            fx.matrices[name] = (s_name, t_name, entries)
        else:
            raise ComplexError(f"line {lineno}: unknown directive {head!r}", "SYNTAX")
    return fx


def format_matrix(name: str, src: Space, tgt: Space, m: np.ndarray) -> str:
    width = max([len(x) for x in src.labels + tgt.labels] + [1])
    lines = [f"matrix {name} {src.name} -> {tgt.name}",
             " " * (width + 2) + " ".join(x.rjust(width) for x in src.labels)]
    for i, lab in enumerate(tgt.labels):
        if m[i].any():
            lines.append("  " + lab.ljust(width) + " " +
                         " ".join(str(int(b)).rjust(width) for b in m[i]))
    return "\n".join(lines) + "\n"


def complex_from_space(fx: BlockFixture, space: str, matrix: str, step: int):
    """Graded complex on a declared space with differential ``matrix`` (zero if absent)."""
    from .homology import complex_from_matrix

    sp = fx.spaces.get(space)
    if sp is None:
        raise ComplexError(f"fixture does not declare space {space!r}", "SYNTAX")
    m = fx.matrix(matrix, sp, sp)
    if m is None:
        m = np.zeros((len(sp.labels), len(sp.labels)), dtype=np.uint8)
    elif fx.matrices[matrix][:2] != (space, space):
        raise ComplexError(f"{matrix} must map {space} to itself", "SHAPE")
    return complex_from_matrix(m, sp.degrees, step, sp.labels)


def _flat_space(name: str, c) -> Space:
    from .homology import flat_basis

    basis = flat_basis(c)
    return Space(name, [lab for _, lab in basis], [d for d, _ in basis])


def _connecting(fx: BlockFixture, name: str, src: Space, tgt: Space, want: tuple[str, str]):
    entry = fx.matrices.get(name)
    if entry is None:
        return None
    if entry[:2] != want:
        raise ComplexError(f"{name} must map {want[0]} to {want[1]}, "
                           f"got {entry[0]} -> {entry[1]}", "SHAPE")
    return fx.matrix(name, src, tgt)


def twocopy_blocks(fx: BlockFixture, p=None, q=None, n: int | None = None):
    """Two-copy blocks from a fixture; ``p``/``q`` override the fixture's P and Q spaces."""
    from .verify import TwoCopyBlocks

    n = fx.n if n is None else n
    if n is None:
        raise ComplexError("dimension n missing (fixture line 'n <int>' or --n)", "SYNTAX")
    if p is None:
        p = complex_from_space(fx, "P", "d_p", -1)
    if q is None:
        q = complex_from_space(fx, "Q", "d_q", +1)
    f = complex_from_space(fx, "F", "d_f", +1)
    sp, sf, sq = _flat_space("P", p), _flat_space("F", f), _flat_space("Q", q)
    return TwoCopyBlocks(
        n=n, p=p, f=f, q=q,
        rho=_connecting(fx, "rho", sp, sf, ("P", "F")),
        sigma=_connecting(fx, "sigma", sf, sq, ("F", "Q")),
        eta=_connecting(fx, "eta", sp, sq, ("P", "Q")),
        rho_plus=_connecting(fx, "rho_plus", sf, sq, ("F", "Q")),
    )


def wrapped_blocks(fx: BlockFixture, q=None):
    """(CF^0, CF^inf, delta) from spaces FP (Morse on the filling), F and Q."""
    from .verify import wrapped_from_blocks

    if q is None:
        q = complex_from_space(fx, "Q", "d_q", +1)
    fp = complex_from_space(fx, "FP", "d_fplus", +1)
    f = complex_from_space(fx, "F", "d_f", +1)
    sfp, sf, sq = _flat_space("FP", fp), _flat_space("F", f), _flat_space("Q", q)
    return wrapped_from_blocks(
        fp, f, q,
        gamma=_connecting(fx, "gamma", sfp, sf, ("FP", "F")),
        g=_connecting(fx, "g", sfp, sq, ("FP", "Q")),
        sigma=_connecting(fx, "sigma", sf, sq, ("F", "Q")),
    )


def morse_cone_blocks(fx: BlockFixture):
    """(C(F_+), C(f), gamma, C(F_-)) from spaces FP, F and FM."""
    fp = complex_from_space(fx, "FP", "d_fplus", +1)
    f = complex_from_space(fx, "F", "d_f", +1)
    fm = complex_from_space(fx, "FM", "d_fminus", +1)
    gamma = _connecting(fx, "gamma", _flat_space("FP", fp), _flat_space("F", f), ("FP", "F"))
    return fp, f, gamma, fm
