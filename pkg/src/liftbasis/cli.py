"""Command-line front end.

Exit codes: 0 success, 1 usage or format error, 2 rows not a basis modulo
p**nu, 3 stabilization timeout, 4 a lift failed verification.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass

from . import textio
from .arith import Modulus
from .errors import FormatError, InvalidModulus, LiftError, NotABasisModP, StabilizationTimeout
from .finite import get_basis_finite
from .lattice_ring import FiniteBooleanAlgebra, LatticeRingElement, bits, decompose_ideal, free_basis
from .matrix import IntMatrix, RowStream, banded_stream, identity_stream, padded_stream
from .oracle import random_basis_mod_q, verify_rows
from .stream import EliminationState, run_until

EXIT_OK, EXIT_USAGE, EXIT_NOT_BASIS, EXIT_TIMEOUT, EXIT_UNVERIFIED = 0, 1, 2, 3, 4


@dataclass
class RunConfig:
    command: str
    prime: int | None = None
    exponent: int | None = None
    input: str = "-"
    seed: int = 0
    max_loops: int = 1000
    format: str = "text"

    @property
    def modulus(self) -> Modulus:
        if self.prime is None or self.exponent is None:
            raise InvalidModulus(f"{self.command} needs --prime and --exponent")
        return Modulus(self.prime, self.exponent)


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _emit(text: str) -> None:
    sys.stdout.write(text)


def cmd_lift(args) -> int:
    mod = args.config.modulus
    a = textio.parse_matrix(_read_input(args.input))
    result = get_basis_finite(a, mod)
    report = None if args.no_verify else verify_rows(a, result.lifted, result.units, mod)
    if args.format == "json":
        _emit(textio.lift_document_json(a, result.lifted, result.units, result.pivots, mod, report, command="lift"))
    else:
        _emit(textio.format_lift_document(a, result.lifted, result.units, result.pivots, mod, report))
    return EXIT_OK if report is None or report.ok else EXIT_UNVERIFIED


def _fixture_stream(fixture: str, mod: Modulus, seed: int) -> RowStream:
    name, _, arg = fixture.partition(":")
    try:
        if name == "identity":
            return identity_stream()
        if name == "banded":
            return banded_stream(int(arg) if arg else mod.q)
        if name == "random":
            n, _, s = arg.partition(":")
            return padded_stream(random_basis_mod_q(int(n), mod, int(s) if s else seed, 4 * int(n)))
    except ValueError:
        pass
    raise FormatError(f"unknown fixture {fixture!r}; use identity, banded[:c] or random:n[:seed]")


def cmd_lift_stream(args) -> int:
    mod = args.config.modulus
    if args.fixture:
        source = _fixture_stream(args.fixture, mod, args.seed)
    else:
        handle = sys.stdin if args.input == "-" else open(args.input)
        source = textio.read_stream(handle)
    state = EliminationState.start(source, mod)
    rep = run_until(state, args.rows, args.max_loops)
    n = len(rep.rows)
    width = max([r.width for r in rep.rows] + [r.width for r in state.consumed[:n]] + [1])
    a = IntMatrix((r.to_dense(width) for r in state.consumed[:n]), ncols=width)
    lifted = rep.lifted_matrix(width)
    report = None if args.no_verify else verify_rows(a, lifted, rep.units, mod)
    if args.format == "json":
        _emit(
            textio.lift_document_json(
                a, lifted, rep.units, rep.pivots, mod, report,
                command="lift-stream",
                loops_executed=rep.loops_executed,
                stabilized_at=rep.stabilized_at,
            )
        )
    else:
        text = textio.format_lift_document(a, lifted, rep.units, rep.pivots, mod, report)
        _emit(f"loops {rep.loops_executed}\nstabilized_at {' '.join(map(str, rep.stabilized_at))}\n" + text)
    return EXIT_OK if report is None or report.ok else EXIT_UNVERIFIED


def cmd_verify(args) -> int:
    doc = textio.parse_lift_document(_read_input(args.input))
    mod = args.config.modulus
    if "modulus" in doc and doc["modulus"] != mod:
        raise FormatError(f"document modulus {doc['modulus']} differs from --prime/--exponent {mod}")
    report = verify_rows(doc["input"], doc["lifted"], doc["units"], mod)
    if args.format == "json":
        _emit(json.dumps(report.as_dict(), indent=2) + "\n")
    else:
        _emit("\n".join(textio.format_report_lines(report)) + "\n")
    return EXIT_OK if report.ok else EXIT_UNVERIFIED


def cmd_generate(args) -> int:
    mod = args.config.modulus
    ops = args.ops if args.ops is not None else 4 * args.n
    m = random_basis_mod_q(args.n, mod, args.seed, ops, args.perturb)
    _emit(textio.format_matrix(m))
    return EXIT_OK


def cmd_decompose(args) -> int:
    rows = [textio._ints(line) for line in textio._content_lines(_read_input(args.input).splitlines())]
    if len({len(r) for r in rows}) > 1:
        raise FormatError("generators must all have the same number of atom coordinates")
    gens = [LatticeRingElement(tuple(r)) for r in rows]
    dec = decompose_ideal(gens)
    k = gens[0].k if gens else 0
    if args.format == "json":
        _emit(json.dumps({
            "pairs": [{"atoms": bits(mask), "multiplicity": n} for mask, n in dec.pairs],
            "generator": list(dec.generator(k).coords),
        }, indent=2) + "\n")
    else:
        for mask, n in dec.pairs:
            _emit(f"{{{','.join(map(str, bits(mask)))}}} {n}\n")
        _emit("generator " + " ".join(map(str, dec.generator(k).coords)) + "\n")
    return EXIT_OK


def _parse_idempotent(tok: str) -> int:
    tok = tok.strip().strip("{}")
    return sum(1 << int(a) for a in tok.split(",") if a != "")


def cmd_free_basis(args) -> int:
    b = FiniteBooleanAlgebra(args.atoms)
    if args.order:
        order = [_parse_idempotent(t) for t in args.order.split(";")]
    else:
        order = list(b.nonzero())
        if args.seed is not None:
            random.Random(args.seed).shuffle(order)
    basis = free_basis(b, order)
    if args.format == "json":
        _emit(json.dumps({"basis": [bits(m) for m in basis]}) + "\n")
    else:
        for m in basis:
            _emit("{" + ",".join(map(str, bits(m))) + "}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="liftbasis", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, modulus=True):
        if modulus:
            p.add_argument("--prime", type=int, required=True)
            p.add_argument("--exponent", type=int, required=True)
        p.add_argument("--input", default="-", help="input file, '-' for stdin")
        p.add_argument("--format", choices=("text", "json"), default="text")
        return p

    p = common(sub.add_parser("lift", help="lift rows with the finite engine"))
    p.add_argument("--no-verify", action="store_true")
    p.set_defaults(func=cmd_lift)

    p = common(sub.add_parser("lift-stream", help="lift a row stream with the streaming engine"))
    p.add_argument("--fixture", help="identity | banded[:c] | random:n[:seed]")
    p.add_argument("--rows", type=int, required=True, help="number of rows to stabilize")
    p.add_argument("--max-loops", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-verify", action="store_true")
    p.set_defaults(func=cmd_lift_stream)

    p = common(sub.add_parser("verify", help="check a lift document"))
    p.set_defaults(func=cmd_verify)

    p = common(sub.add_parser("generate", help="print a random basis modulo p^nu"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ops", type=int)
    p.add_argument("--perturb", type=int, default=2)
    p.set_defaults(func=cmd_generate)

    p = common(sub.add_parser("decompose-ideal", help="orthogonal generator of an ideal"), modulus=False)
    p.set_defaults(func=cmd_decompose)

    p = common(sub.add_parser("free-basis", help="free Z-basis of idempotents"), modulus=False)
    p.add_argument("--atoms", type=int, required=True)
    p.add_argument("--order", help="idempotents as atom sets, e.g. '{0,1};{0};{1}'")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_free_basis)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    args.config = RunConfig(
        command=args.command,
        prime=getattr(args, "prime", None),
        exponent=getattr(args, "exponent", None),
        input=args.input,
        seed=getattr(args, "seed", 0) or 0,
        max_loops=getattr(args, "max_loops", 1000),
        format=args.format,
    )
    try:
        return args.func(args)
    except NotABasisModP as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_BASIS
    except StabilizationTimeout as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TIMEOUT
    except (LiftError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
