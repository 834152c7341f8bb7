"""Command-line interface.

Exit codes: 0 ok, 1 input error, 2 internal invariant or oracle mismatch,
3 negative check result.
"""
from __future__ import annotations

import argparse
import logging
import sys

from . import io
from .cone import cone_from_generators
from .errors import (AmbiguousMaximalFace, InternalInvariantViolation,
                     NotAMapOfFans, TorquotError)
from .fan import FanClass, orbit_closure_fan, validate_fan
from .good import (affine_quotient, check_good_quotient, good_model,
                   induced_good_model_map)
from .linalg import saturate
from .quotient import codim2_quotient_oracle, quotient_fan

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL, EXIT_NEGATIVE = 0, 1, 2, 3

log = logging.getLogger("torquot")


class CommandError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _emit(doc: dict, out: str | None) -> None:
    text = io.write_document(doc, out)
    if not out:
        sys.stdout.write(text)


def _load_sublattice(path: str, allow_saturate: bool):
    L = io.sublattice_from_doc(io.read_document(path))
    if not L.is_primitive:
        if not allow_saturate:
            raise CommandError(f"{path}: sublattice is not primitive (use --saturate)", EXIT_INPUT)
        L = saturate(L)
    return L


def _load_fan(path: str, accept: FanClass = FanClass.FAN):
    S = io.fan_from_doc(io.read_document(path))
    report = validate_fan(S)
    if not report.at_least(accept):
        raise CommandError(f"{path}: input is a {report.name}, not a valid "
                           f"{accept.name.lower()}", EXIT_INPUT)
    return io.as_fan(S) if report.kind == FanClass.FAN else S


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    S = io.fan_from_doc(io.read_document(args.fan))
    report = validate_fan(S)
    _emit(io.validation_to_doc(report), args.out)
    accept = {"fan": FanClass.FAN, "quasifan": FanClass.QUASIFAN,
              "system": FanClass.SYSTEM}[args.accept]
    return EXIT_OK if report.at_least(accept) else EXIT_NEGATIVE


def cmd_quotient(args) -> int:
    S = _load_fan(args.fan, FanClass.SYSTEM if args.allow_system else FanClass.FAN)
    L = _load_sublattice(args.sublattice, args.saturate)
    q = quotient_fan(S, L)
    if args.oracle == "codim2":
        o = codim2_quotient_oracle(S, L)
        if o.key() != q.key():
            raise CommandError("codim-2 oracle disagrees with the quotient algorithm",
                               EXIT_INTERNAL)
    _emit(io.quotient_to_doc(q, trace=args.trace), args.out)
    return EXIT_OK


def cmd_good_model(args) -> int:
    S = _load_fan(args.fan)
    L = _load_sublattice(args.sublattice, args.saturate)
    _emit(io.good_model_to_doc(good_model(S, L)), args.out)
    return EXIT_OK


def cmd_check_good(args) -> int:
    S = _load_fan(args.fan)
    L = _load_sublattice(args.sublattice, args.saturate)
    report = check_good_quotient(S, quotient_fan(S, L))
    _emit(io.goodness_to_doc(report), args.out)
    ok = report.is_geometric if args.require_geometric else report.is_good
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_affine_quotient(args) -> int:
    sigma = io.cone_from_doc(io.read_document(args.cone))
    L = _load_sublattice(args.sublattice, args.saturate)
    _emit(io.affine_quotient_to_doc(affine_quotient(sigma, L), sigma.ambient_rank), args.out)
    return EXIT_OK


def cmd_orbit_closure(args) -> int:
    S = _load_fan(args.fan)
    if args.rays is not None:
        doc = io.read_document(args.fan)
        try:
            idx = [int(i) for i in args.rays.split(",") if i.strip()]
            gens = [doc["rays"][i] for i in idx]
        except (ValueError, IndexError) as exc:
            raise CommandError(f"bad --rays value {args.rays!r}", EXIT_INPUT) from exc
        tau = cone_from_generators(S.ambient_rank, gens)
    else:
        if not 0 <= args.cone_index < len(S.cones):
            raise CommandError(f"cone index {args.cone_index} out of range "
                               f"(fan has {len(S.cones)} cones)", EXIT_INPUT)
        tau = S.cones[args.cone_index]
    L, P, fan = orbit_closure_fan(S, tau)
    _emit(io.orbit_closure_to_doc(L, P, fan), args.out)
    return EXIT_OK


def cmd_induced_map(args) -> int:
    F, _, _ = io.matrix_from_doc(io.read_document(args.map))
    src = good_model(_load_fan(args.fan), _load_sublattice(args.sublattice, args.saturate))
    dst = good_model(_load_fan(args.target_fan),
                     _load_sublattice(args.target_sublattice, args.saturate))
    F_bar = induced_good_model_map(F, src, dst)
    _emit(io.matrix_to_doc(F_bar, dst.rank, src.rank), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torquot",
        description="Quotients of toric varieties by subtori, computed on fans.")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fan=True, sub_lattice=True):
        if fan:
            p.add_argument("--fan", required=True, help="fan document")
        if sub_lattice:
            p.add_argument("--sublattice", required=True, help="sublattice document")
            p.add_argument("--saturate", action="store_true",
                           help="saturate a non-primitive sublattice instead of rejecting it")
        p.add_argument("--out", help="write the result here instead of stdout")

    p = sub.add_parser("validate", help="classify a fan document")
    p.add_argument("fan")
    p.add_argument("--accept", choices=["fan", "quasifan", "system"], default="fan")
    p.add_argument("--out")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("quotient", help="quotient fan by a sublattice")
    common(p)
    p.add_argument("--trace", action="store_true", help="include the loop trace")
    p.add_argument("--oracle", choices=["codim2"], help="cross-check with an oracle")
    p.add_argument("--allow-system", action="store_true",
                   help="accept a general cone system instead of a fan")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("good-model", help="good model of a fan")
    common(p)
    p.set_defaults(func=cmd_good_model)

    p = sub.add_parser("check-good", help="is the toric quotient good?")
    common(p)
    p.add_argument("--require-geometric", action="store_true")
    p.set_defaults(func=cmd_check_good)

    p = sub.add_parser("affine-quotient", help="quotient of a single cone")
    p.add_argument("--cone", required=True, help="cone document")
    common(p, fan=False)
    p.set_defaults(func=cmd_affine_quotient)

    p = sub.add_parser("orbit-closure", help="fan of an orbit closure")
    common(p, sub_lattice=False)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--cone-index", type=int,
                   help="index into the fan's canonical list of all cones")
    g.add_argument("--rays", help="comma-separated ray indices of the document")
    p.set_defaults(func=cmd_orbit_closure)

    p = sub.add_parser("induced-map", help="map between good models")
    p.add_argument("--map", required=True, help="matrix document")
    common(p)
    p.add_argument("--target-fan", required=True)
    p.add_argument("--target-sublattice", required=True)
    p.set_defaults(func=cmd_induced_map)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (InternalInvariantViolation, NotAMapOfFans, AmbiguousMaximalFace) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except TorquotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
