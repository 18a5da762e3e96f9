"""Command-line front end: ``legch <command> [input] [flags]``.

Every command builds one report (a dict with string keys) and renders it as
JSON or as block YAML.  Both renderings carry the same data.  Exit codes:
0 success or pass, 1 mathematical failure, 2 input error, 3 BUDGET/DSQUARED.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import yaml

from . import augment, fixtures, verify
from .discs import DEFAULT_MAX_MULT, differential, disc_dump
from .errors import AugmentationError, ComplexError, LegchError
from .front import FrontDiagram, classical_invariants, parse_front
from .homology import PoincarePolynomial
from .lagrangian import resolve

COMMANDS = ("dga", "augs", "linhom", "seidel", "duality", "twocopy", "wrapped")
CORPUS = Path(__file__).parent / "corpus"

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(LegchError):
    code = "INPUT"


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    max_mult: int = DEFAULT_MAX_MULT
    aug_index: int | None = None
    betti_l: dict[int, int] | None = None
    betti_lambda: dict[int, int] | None = None
    n: int | None = None
    blocks: str | None = None
    fmt: str = "text"
    discs: bool = False


def locate(arg: str, suffix: str) -> Path:
    """A path as given, else a bundled corpus entry by name."""
    p = Path(arg)
    if p.is_file():
        return p
    for cand in (CORPUS / arg, CORPUS / f"{arg}{suffix}"):
        if cand.is_file():
            return cand
    raise InputError(f"no such file: {arg}", "NOFILE")


def parse_betti(text: str) -> dict[int, int]:
    """``"0:1,1:2"`` -> ``{0: 1, 1: 2}``."""
    out: dict[int, int] = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        k, sep, v = part.partition(":")
        try:
            if not sep:
                raise ValueError
            k_i, v_i = int(k), int(v)
        except ValueError:
            raise InputError(f"bad Betti entry {part!r}; expected degree:dimension", "SYNTAX") from None
        if v_i < 0:
            raise InputError(f"negative Betti number in {part!r}", "SYNTAX")
        if k_i in out:
            raise InputError(f"degree {k_i} given twice", "SYNTAX")
        out[k_i] = v_i
    return out


def _poly(p: PoincarePolynomial) -> dict[str, int]:
    return {str(k): v for k, v in p.coeffs}


def _betti(b: dict[int, int]) -> dict[str, int]:
    return {str(k): v for k, v in sorted(b.items()) if v}


def _verdict(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


class _Session:
    """Caches the front, its DGA and its augmentations for one run."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self._front: FrontDiagram | None = None
        self._dga = None
        self._augs = None

    def front(self) -> FrontDiagram:
        if self._front is None:
            if self.cfg.input is None:
                raise InputError(f"{self.cfg.command} needs a front file", "SYNTAX")
            path = locate(self.cfg.input, ".front")
            try:
                text = path.read_text()
            except OSError as exc:
                raise InputError(f"cannot read {self.cfg.input}: {exc.strerror}", "NOFILE") from None
            self._front = parse_front(text)
        return self._front

    def dga(self):
        if self._dga is None:
            self._dga = differential(resolve(self.front()), self.cfg.max_mult)
        return self._dga

    def augs(self):
        if self._augs is None:
            self._augs = augment.enumerate_augmentations(self.dga())
        return self._augs

    def aug(self) -> tuple[int, augment.Augmentation]:
        augs = self.augs()
        i = 0 if self.cfg.aug_index is None else self.cfg.aug_index
        if not augs:
            raise AugmentationError("the DGA has no augmentations", "NO_AUGMENTATION")
        if not 0 <= i < len(augs):
            raise AugmentationError(f"augmentation index {i} out of range 0..{len(augs) - 1}",
                                    "INDEX")
        return i, augs[i]

    def head(self) -> dict:
        cfg = self.cfg
        out = {"command": cfg.command}
        if cfg.input is not None:
            out["input"] = cfg.input
        if cfg.blocks is not None:
            out["blocks"] = cfg.blocks
        if cfg.input is not None:
            out["max_mult"] = cfg.max_mult
        return out

    def aug_entry(self) -> dict:
        i, e = self.aug()
        return {"index": i, "bits": e.bitstring()}

    def linearized(self):
        _, e = self.aug()
        return augment.linearize(self.dga(), e)

    def fixture(self) -> fixtures.BlockFixture:
        if self.cfg.blocks is None:
            raise InputError(f"{self.cfg.command} needs --blocks", "SYNTAX")
        path = locate(self.cfg.blocks, ".blocks")
        return fixtures.parse_blocks(path.read_text())


def _cmd_dga(s: _Session) -> tuple[int, dict]:
    d = s.dga()
    front = s.front()
    rep = s.head()
    if front.name is not None:
        rep["name"] = front.name
    rep["modulus"] = d.modulus
    rep["components"] = [{"component": c.component, "tb": c.tb, "rot": c.rot}
                         for c in classical_invariants(front)]
    rep["gradings"] = {g.name: g.grading for g in d.generators}
    rep["differential"] = {g: str(d.diff[g]) for g in d.names}
    rep["d_squared_zero"] = True
    if s.cfg.discs:
        rep["discs"] = disc_dump(resolve(front), s.cfg.max_mult).splitlines()
    return EXIT_OK, rep


def _cmd_augs(s: _Session) -> tuple[int, dict]:
    rep = s.head()
    rep["generators"] = augment.degree_zero_generators(s.dga())
    rep["count"] = len(s.augs())
    rep["augmentations"] = [e.bitstring() for e in s.augs()]
    return EXIT_OK, rep


def _cmd_linhom(s: _Session) -> tuple[int, dict]:
    rep = s.head()
    idx = range(len(s.augs())) if s.cfg.aug_index is None else [s.cfg.aug_index]
    rows = []
    for i in idx:
        s.cfg.aug_index = i
        lin = s.linearized()
        rows.append({**s.aug_entry(), "homology": _poly(lin.homology()),
                     "cohomology": _poly(lin.cohomology())})
    rep["linearized"] = rows
    return EXIT_OK, rep


def _cmd_seidel(s: _Session) -> tuple[int, dict]:
    if s.cfg.betti_l is None:
        raise InputError("seidel needs --betti-l", "SYNTAX")
    n = 1 if s.cfg.n is None else s.cfg.n
    lin = s.linearized()
    fd = verify.FillingData(n, s.cfg.betti_l, {}, s.cfg.aug_index)
    r = verify.seidel_check(lin.cohomology(), fd)
    rep = s.head()
    rep.update(augmentation=s.aug_entry(), n=n, betti_l=_betti(s.cfg.betti_l),
               observed=_betti(r.observed), expected=_betti(r.expected),
               deltas=_betti_signed(r.deltas), result=_verdict(r.passed))
    return (EXIT_OK if r.passed else EXIT_FAIL), rep


def _betti_signed(b: dict[int, int]) -> dict[str, int]:
    return {str(k): v for k, v in sorted(b.items())}


def _cmd_duality(s: _Session) -> tuple[int, dict]:
    n = 1 if s.cfg.n is None else s.cfg.n
    lam = s.cfg.betti_lambda
    if lam is None:
        comps = len(classical_invariants(s.front()))
        lam = {0: comps, n: comps}
    lin = s.linearized()
    fd = verify.FillingData(n, s.cfg.betti_l or {}, lam, s.cfg.aug_index)
    r = verify.duality_check(lin.homology(), lin.cohomology(), fd)
    rep = s.head()
    rep.update(augmentation=s.aug_entry(), n=n, betti_lambda=_betti(lam),
               sequence=[f"{lab}={dim}" for lab, dim in zip(r.labels, r.dims)],
               ranks=list(r.ranks), window=list(r.window), result=_verdict(r.feasible))
    return (EXIT_OK if r.feasible else EXIT_FAIL), rep


def _check_declared(fx: fixtures.BlockFixture, space: str, matrix: str, computed) -> None:
    """A fixture that also declares ``space`` must agree with the computed complex."""
    if space not in fx.spaces:
        return
    declared = fx.spaces[space]
    flat = fixtures._flat_space(space, computed)
    if dict(zip(declared.labels, declared.degrees)) != dict(zip(flat.labels, flat.degrees)):
        raise ComplexError(f"declared space {space} does not match the linearized complex", "SHAPE")
    m = fx.matrix(matrix, flat, flat)
    ours = computed.total_matrix()[0]
    if m is None:
        m = ours * 0
    if (m != ours).any():
        raise ComplexError(f"declared {matrix} does not match the linearized differential", "SHAPE")


def _front_spaces(s: _Session, fx):
    if s.cfg.input is None:
        return None, None
    lin = s.linearized()
    _check_declared(fx, "P", "d_p", lin.homological)
    _check_declared(fx, "Q", "d_q", lin.cohomological)
    return lin.homological, lin.cohomological


def _cmd_twocopy(s: _Session) -> tuple[int, dict]:
    fx = s.fixture()
    p, q = _front_spaces(s, fx)
    b = fixtures.twocopy_blocks(fx, p, q, s.cfg.n)
    rep = s.head()
    if s.cfg.input is not None:
        rep["augmentation"] = s.aug_entry()
    rep["n"] = b.n
    variants = {}
    for which in (verify.INFINITY, verify.PLUS):
        c = verify.twocopy_assemble(b, which)
        variants[which] = {"dimension": c.total_dim(), "homology": _poly(c.homology())}
    rep["variants"] = variants
    inf = verify.twocopy_assemble(b, verify.INFINITY).homology()
    rep["vanishing"] = _verdict(verify.vanishing_link_check(inf).passed)
    return EXIT_OK, rep


def _cmd_wrapped(s: _Session) -> tuple[int, dict]:
    fx = s.fixture()
    _, q = _front_spaces(s, fx)
    cf0, cf_inf, delta = fixtures.wrapped_blocks(fx, q)
    r = verify.wrapped_cone_check(cf0, cf_inf, delta)
    rep = s.head()
    if s.cfg.input is not None:
        rep["augmentation"] = s.aug_entry()
    rep.update(cf0_dimension=cf0.total_dim(), cf_inf_dimension=cf_inf.total_dim(),
               acyclic=r.acyclic, quasi_iso=r.quasi_iso, cone_homology=_poly(r.cone_homology))
    ok = r.acyclic
    if "FM" in fx.spaces:
        m = verify.morse_cone_check(*fixtures.morse_cone_blocks(fx))
        rep["morse_cone"] = {"cone_homology": _poly(m.cone_homology),
                             "expected": _poly(m.expected), "result": _verdict(m.passed)}
        ok = ok and m.passed
    rep["result"] = _verdict(ok)
    return (EXIT_OK if ok else EXIT_FAIL), rep


_HANDLERS = {
    "dga": _cmd_dga, "augs": _cmd_augs, "linhom": _cmd_linhom, "seidel": _cmd_seidel,
    "duality": _cmd_duality, "twocopy": _cmd_twocopy, "wrapped": _cmd_wrapped,
}


def run(cfg: RunConfig) -> tuple[int, dict]:
    """Execute one command; errors become a report with an ``error`` entry."""
    if cfg.command not in _HANDLERS:
        return EXIT_INPUT, {"command": cfg.command,
                            "error": {"code": "SYNTAX", "message": f"unknown command {cfg.command!r}"}}
    try:
        if cfg.max_mult < 1:
            raise InputError(f"--max-mult must be positive, got {cfg.max_mult}", "SYNTAX")
        return _HANDLERS[cfg.command](_Session(cfg))
    except LegchError as exc:
        code = EXIT_BUDGET if exc.code in ("BUDGET", "DSQUARED") else EXIT_INPUT
        return code, {"command": cfg.command, "error": {"code": exc.code, "message": str(exc)}}
    except OSError as exc:
        return EXIT_INPUT, {"command": cfg.command,
                            "error": {"code": "NOFILE", "message": f"{exc.strerror}: {exc.filename}"}}


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    return yaml.safe_dump(report, sort_keys=False, default_flow_style=False, allow_unicode=True,
                          width=1000)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="legch", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("input", nargs="?", help="front file, or the name of a bundled corpus entry")
    ap.add_argument("--max-mult", type=int, default=DEFAULT_MAX_MULT,
                    help="largest face multiplicity searched (default %(default)s)")
    ap.add_argument("--aug", type=int, dest="aug_index",
                    help="augmentation index in enumeration order (default 0)")
    ap.add_argument("--betti-l", help="Betti numbers of the filling, e.g. 0:1,1:2")
    ap.add_argument("--betti-lambda", help="Betti numbers of the link (default: circles)")
    ap.add_argument("--n", type=int, help="dimension of the Legendrian (default 1)")
    ap.add_argument("--blocks", help="block fixture file or bundled fixture name")
    ap.add_argument("--format", choices=("text", "json"), default="text", dest="fmt")
    ap.add_argument("--discs", action="store_true", help="dga: include the disc listing")
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with status 2
        return int(exc.code or 0)
    try:
        cfg = RunConfig(
            command=args.command, input=args.input, max_mult=args.max_mult,
            aug_index=args.aug_index,
            betti_l=None if args.betti_l is None else parse_betti(args.betti_l),
            betti_lambda=None if args.betti_lambda is None else parse_betti(args.betti_lambda),
            n=args.n, blocks=args.blocks, fmt=args.fmt, discs=args.discs)
    except LegchError as exc:
        code, report = EXIT_INPUT, {"command": args.command,
                                    "error": {"code": exc.code, "message": str(exc)}}
    else:
        code, report = run(cfg)
    if "error" in report and args.fmt == "text":
        err = report["error"]
        sys.stderr.write(f"legch: {err['code']}: {err['message']}\n")
    else:
        sys.stdout.write(render(report, args.fmt))
    return code


if __name__ == "__main__":
    sys.exit(main())
