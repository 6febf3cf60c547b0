"""Batch command-line front end.

One command per process; output is deterministic byte-for-byte for fixed
flags and scalar mode (stable orderings everywhere, JSON with sorted keys).
Files are written atomically.  The scalar mode may be overridden by the
TILTBRAID_SCALAR_MODE environment variable ("rational" or "prime:P").
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from .algebra import build_auslander, build_preprojective
from .automorphisms import build_out_automorphism, coefficients_of, gamma_image_matches_series
from .braid import BraidWord, garside_nf
from .complexes import complex_to_json
from .doubling import DoublingContext
from .exact_linalg import QQ, PrimeField
from .mutation import (
    enumerate_interval,
    h0,
    hasse_dot,
    mutate,
    object_signature_string,
    regular_silting,
    two_term_counts_for,
)
from .mutation import SiltingObject
from .rho import RhoContext, top_projective_shift
from .verify import AcceptanceContext, SUITES, grid_fixtures, mutation_ball, run_suite

MAX_ENUMERATION_RANK = 6
MAX_BRAID_RANK = 4


class CliError(ValueError):
    pass


def _field_from_mode(mode: str):
    mode = os.environ.get("TILTBRAID_SCALAR_MODE", mode)
    if mode == "rational":
        return QQ
    if mode.startswith("prime:"):
        return PrimeField(int(mode.split(":", 1)[1]))
    raise CliError(f"unknown scalar mode '{mode}' (use 'rational' or 'prime:P')")


def _write_atomic(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tiltbraid-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _emit(text: str, out_path: str | None):
    if out_path:
        _write_atomic(out_path, text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dump(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2)


def silting_to_json(T: SiltingObject):
    return {
        "algebra": T.algebra.name,
        "summands": [
            {"label": i + 1, "complex": complex_to_json(U)} for i, U in enumerate(T.summands)
        ],
    }


def _require_rank(n: int, bound: int, what: str):
    if not (1 <= n <= bound):
        raise CliError(f"{what} supports 1 <= n <= {bound}, got {n}")


def cmd_build(args) -> int:
    field = _field_from_mode(args.scalar_mode)
    _require_rank(args.n, 13, "build")
    if args.family == "auslander":
        algebra = build_auslander(args.n, field)
    else:
        algebra = build_preprojective(args.n, field)
    _emit(_dump(algebra.to_json()), args.out_path)
    return 0


def cmd_rho(args) -> int:
    field = _field_from_mode(args.scalar_mode)
    _require_rank(args.n, MAX_BRAID_RANK, "rho")
    word = BraidWord.parse(args.n, args.word)
    ctx = RhoContext(args.n, shift=args.shift, field=field)
    T = ctx.evaluate(word)
    if args.out == "json":
        _emit(_dump(silting_to_json(T)), args.out_path)
    else:
        lines = [
            f"word: '{args.word.strip()}' in B_{args.n}, shift {args.shift}",
            f"normal form: {garside_nf(word)}",
            f"object: {object_signature_string(T)}",
            f"top projective at shift: {top_projective_shift(T)}",
        ]
        _emit("\n".join(lines), args.out_path)
    return 0


def _parse_path(text: str):
    steps = []
    for token in text.split():
        token = token.strip()
        if len(token) < 2 or token[-1] not in "LR" or not token[:-1].isdigit():
            raise CliError(f"bad mutation step '{token}' (expected forms like 2L or 1R)")
        steps.append((int(token[:-1]), "left" if token[-1] == "L" else "right"))
    return steps


def cmd_mutate(args) -> int:
    field = _field_from_mode(args.scalar_mode)
    _require_rank(args.n, MAX_ENUMERATION_RANK, "mutate")
    algebra = build_auslander(args.n, field)
    T = regular_silting(algebra)
    for label, direction in _parse_path(args.path):
        T = mutate(T, label, direction)
    if args.out == "json":
        _emit(_dump(silting_to_json(T)), args.out_path)
    else:
        _emit(object_signature_string(T), args.out_path)
    return 0


def cmd_enumerate(args) -> int:
    field = _field_from_mode(args.scalar_mode)
    _require_rank(args.n, MAX_ENUMERATION_RANK, "enumerate")
    algebra = build_auslander(args.n, field)
    T = regular_silting(algebra)
    if args.word:
        if args.n > MAX_BRAID_RANK:
            raise CliError(f"word evaluation supports n <= {MAX_BRAID_RANK}")
        ctx = RhoContext(args.n, field=field, algebra=algebra)
        T = ctx.evaluate(BraidWord.parse(args.n, args.word))
    interval = enumerate_interval(T)
    tilting = sum(1 for obj in interval if obj.is_tilting())
    lines = [f"interval [T[1], T]: {len(interval)} silting objects, {tilting} tilting"]
    for obj in sorted(interval, key=object_signature_string):
        lines.append(f"  {object_signature_string(obj)}")
    _emit("\n".join(lines), args.out_path)
    if args.dot_path:
        _write_atomic(args.dot_path, hasse_dot(interval) + "\n")
    return 0


def cmd_two_term(args) -> int:
    field = _field_from_mode(args.scalar_mode)
    _require_rank(args.n, MAX_ENUMERATION_RANK, "two-term")
    algebra = build_auslander(args.n, field)
    total, tilting = two_term_counts_for(algebra)
    _emit(f"n={args.n} total={total} tilting={tilting}", args.out_path)
    return 0


def cmd_h0(args) -> int:
    field = _field_from_mode(args.scalar_mode)
    _require_rank(args.n, MAX_ENUMERATION_RANK, "h0")
    algebra = build_auslander(args.n, field)
    T = regular_silting(algebra)
    for label, direction in _parse_path(args.path):
        T = mutate(T, label, direction)
    _emit(_dump(h0(T)), args.out_path)
    return 0


def cmd_phi(args) -> int:
    field = _field_from_mode(args.scalar_mode)
    _require_rank(args.n, MAX_BRAID_RANK, "phi")
    dctx = DoublingContext(args.n, field=field)
    rctx = RhoContext(args.n, field=field, algebra=dctx.small)
    T = rctx.evaluate(BraidWord.parse(args.n, args.word))
    _emit(_dump(complex_to_json(dctx.phi(T))), args.out_path)
    return 0


def cmd_out(args) -> int:
    field = _field_from_mode(args.scalar_mode)
    _require_rank(args.n, MAX_ENUMERATION_RANK, "out")
    algebra = build_auslander(args.n, field)
    coeffs = [field.parse(c.strip()) for c in args.coeffs.split(",") if c.strip()]
    g = build_out_automorphism(algebra, coeffs)
    lines = ["arrow images:"]
    for name in sorted(g.arrow_images):
        lines.append(f"  {name} -> {g.arrow_images[name]}")
    if args.check:
        recovered = coefficients_of(g)
        lines.append(f"recovered coefficients: {[field.fmt(c) for c in recovered]}")
        lines.append(f"loop-class series match: {gamma_image_matches_series(g)}")
        lines.append(f"identity: {g.is_identity()}")
    _emit("\n".join(lines), args.out_path)
    return 0


def cmd_example_grid(args) -> int:
    field = _field_from_mode(args.scalar_mode)
    if args.n != 2:
        raise CliError("the reference grid is the rank-2 one; use --n 2")
    algebra = build_auslander(args.n, field)
    ball = mutation_ball(regular_silting(algebra), args.depth)
    fixtures = grid_fixtures(algebra)
    matched = 0
    lines = []
    for name in sorted(fixtures):
        target = SiltingObject(algebra, fixtures[name])
        hit = any(obj.same_object(target) for obj in ball)
        matched += hit
        lines.append(f"  {name}: {'found' if hit else 'MISSING'}")
    lines.insert(0, f"match: {matched}/{len(fixtures)} fixtures (ball of {len(ball)} objects at depth {args.depth})")
    _emit("\n".join(lines), args.out_path)
    return 0 if matched == len(fixtures) else 1


def cmd_verify(args) -> int:
    field = _field_from_mode(args.scalar_mode)
    ctx = AcceptanceContext(field=field)
    results = run_suite(args.suite, ctx)
    return 0 if all(r.passed for r in results) else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="tiltbraid",
        description="Exact silting/tilting computations over Auslander algebras of truncated polynomial rings.",
    )
    parser.add_argument("--scalar-mode", default="rational",
                        help="'rational' (default) or 'prime:P' with P a prime >= 46337")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct an algebra and print its JSON table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", choices=("auslander", "preprojective"), default="auslander")
    p.add_argument("--out-path")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("rho", help="evaluate a braid word on the regular object")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--word", default="")
    p.add_argument("--shift", type=int, default=0)
    p.add_argument("--out", choices=("json", "summary"), default="summary")
    p.add_argument("--out-path")
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("mutate", help="apply a mutation path like '1L 2L 1R'")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--path", default="")
    p.add_argument("--out", choices=("json", "summary"), default="summary")
    p.add_argument("--out-path")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("enumerate", help="enumerate the two-term interval below an object")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--word", default="")
    p.add_argument("--interval", action="store_true", help="accepted for explicitness; always on")
    p.add_argument("--dot-path", help="also write the Hasse diagram in DOT format")
    p.add_argument("--out-path")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("two-term", help="count two-term silting and tilting objects")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out-path")
    p.set_defaults(func=cmd_two_term)

    p = sub.add_parser("h0", help="degree-zero cohomology report of a mutated object")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--path", default="")
    p.add_argument("--out-path")
    p.set_defaults(func=cmd_h0)

    p = sub.add_parser("phi", help="push a braid-word image into the doubled algebra")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--word", default="")
    p.add_argument("--out-path")
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("out", help="build a vertex-fixing outer automorphism")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--coeffs", required=True, help="comma-separated list, e.g. '1,1'")
    p.add_argument("--check", action="store_true")
    p.add_argument("--out-path")
    p.set_defaults(func=cmd_out)

    p = sub.add_parser("example-grid", help="match the depth-3 mutation ball against the reference grid")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--out-path")
    p.set_defaults(func=cmd_example_grid)

    p = sub.add_parser("verify", help="run an acceptance suite")
    p.add_argument("--suite", choices=tuple(SUITES), default="all")
    p.set_defaults(func=cmd_verify)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
