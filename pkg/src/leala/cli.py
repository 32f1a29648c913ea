"""``leala`` command line: build factory algebras, check them, render reports.

    leala build loop --type A1 --lambda 1 --window 3 --out loop.json
    leala check loop.json --suite all
    leala report loop.json --format text
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import algebra, constructions as C, suites
from .scalars import T, ScalarError, parse_scalar


def _ints(text: str) -> List[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _scalars(text: str):
    return [parse_scalar(x) for x in text.split(",") if x.strip()]


def _pattern(text: str) -> C.DiagonalPattern:
    """``head;kind:args`` e.g. ``;affine:1,0`` or ``2,0;constant:1`` or ``;periodic:1,2``."""
    head, _, tail = text.rpartition(";")
    kind, _, args = tail.partition(":")
    vals = _scalars(args)
    if kind == "periodic":
        rule = ("periodic", tuple(vals))
    elif kind in ("affine", "constant"):
        rule = (kind, *vals)
    else:
        raise argparse.ArgumentTypeError(f"unknown tail rule {kind!r}")
    return C.DiagonalPattern(tuple(_scalars(head)), rule)


def _default_phi(k: int, field: str):
    if field == "Q":
        return [1] if k == 1 else None
    return [T ** i for i in range(k)]


def build(args) -> algebra.GradedAlgebra:
    b = args.builder
    if b == "split":
        return C.build_split_simple(args.type)
    if b == "loop":
        phi = _scalars(args.phi) if args.phi else _default_phi(args.lam, args.field)
        if phi is None:
            raise C.BuilderRefusal("over Q a rank >= 2 Lambda has no injective phi; use --field Qt")
        if len(phi) != args.lam:
            raise C.BuilderRefusal("--phi needs one value per generator of Lambda")
        return C.build_loop_eala(args.type, C.GroupDatum(tuple(phi), args.window),
                                 allow_dependent=args.allow_dependent)
    if b == "heisenberg":
        phi = _scalars(args.phi) if args.phi else [1]
        return C.build_heisenberg_null(_ints(args.S), args.dims, tuple(phi))
    if b == "witt":
        return C.build_witt_null(args.n, args.window, args.cocycle)
    if b == "nullity0":
        patterns = [_pattern(p) for p in args.pattern]
        if not args.unchecked:
            for p in patterns:
                C.validate_pattern(args.series, p)
        level = C.build_nullity_zero_level(C.SimpleType(args.series, args.rank), patterns, args.z_dim,
                                           parse_scalar(args.u), json.loads(args.psi) if args.psi else None)
        return level.algebra
    if b == "not-tame":
        return C.build_indecomposable_not_tame(args.type, args.window, _ints(args.S), args.dims)
    raise SystemExit(f"unknown builder {b}")


def _write(text: str, out: Optional[str]):
    if out and out != "-":
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_build(args) -> int:
    try:
        A = build(args)
    except (C.BuilderRefusal, ScalarError) as e:
        print(f"refused: {e}", file=sys.stderr)
        return 2
    text = algebra.dumps(A)
    _write(text, args.out)
    counts = ""
    adm = algebra.check_admissible(A)
    if not adm.failed:
        from .roots import build_root_datum
        s = build_root_datum(A).summary()
        counts = f", |R| = {s['roots']}, |Rx| = {s['anisotropic']}, |R0| = {s['isotropic']}"
    else:
        counts = ", not admissible at window"
    print(f"built {args.builder}: dim {A.dim}{counts}", file=sys.stderr)
    return 0


def _mode(text: str):
    if text == "exhaustive":
        return "exhaustive"
    kind, _, n = text.partition(":")
    if kind != "sampled" or not n.isdigit():
        raise argparse.ArgumentTypeError("mode is 'exhaustive' or 'sampled:N'")
    return ("sampled", int(n))


def _load(path):
    try:
        return algebra.load(path)
    except (OSError, ValueError, KeyError) as e:
        raise SystemExit(f"cannot read {path}: {e}")


def _window_guard(A, args):
    have = A.window.get("window")
    if args.window is not None and have is not None and args.window > have:
        raise SystemExit(f"window underflow: file is materialized at window {have}, {args.window} requested")


def cmd_check(args) -> int:
    A = _load(args.file)
    _window_guard(A, args)
    rep = suites.run(A, args.suite, args.mode, args.seed)
    text = suites.dumps(rep) if args.format == "json" else suites.render_text(rep)
    _write(text, args.out)
    s = rep["summary"]
    print(f"{s['pass']} pass, {s['fail']} fail, {s['inconclusive']} inconclusive-at-window",
          file=sys.stderr)
    return suites.exit_code(rep)


def cmd_report(args) -> int:
    A = _load(args.file)
    _window_guard(A, args)
    rep = suites.run(A, args.suite, args.mode, args.seed)
    text = suites.dumps(rep) if args.format == "json" else suites.render_text(rep)
    _write(text, args.out)
    return 0


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="leala", description="Exact checks for locally extended affine Lie algebras")
    sub = p.add_subparsers(dest="command", required=True)

    pb = sub.add_parser("build", help="emit a factory algebra as leala-algebra v1 JSON")
    bs = pb.add_subparsers(dest="builder", required=True)

    def common(q):
        q.add_argument("--out", default="-")
        q.add_argument("--field", choices=["Q", "Qt"], default="Q")
        return q

    q = common(bs.add_parser("split"))
    q.add_argument("--type", required=True)
    q = common(bs.add_parser("loop"))
    q.add_argument("--type", required=True)
    q.add_argument("--lambda", dest="lam", type=int, default=1, help="rank k of Lambda = Z^k")
    q.add_argument("--phi", help="comma separated phi-values, e.g. 1,t")
    q.add_argument("--window", type=int, default=2)
    q.add_argument("--allow-dependent", action="store_true", help="build non-injective phi (negative control)")
    q = common(bs.add_parser("heisenberg"))
    q.add_argument("--S", default="0,1,-1")
    q.add_argument("--dims", type=int, default=1)
    q.add_argument("--phi")
    q = common(bs.add_parser("witt"))
    q.add_argument("--n", type=int, default=2)
    q.add_argument("--window", type=int, default=1)
    q.add_argument("--cocycle", choices=["trivial", "moody_rao"], default="trivial")
    q = common(bs.add_parser("nullity0"))
    q.add_argument("--series", default="A")
    q.add_argument("--rank", type=int, default=3)
    q.add_argument("--pattern", action="append", default=[], help="head;rule:args, e.g. ';affine:1,0'")
    q.add_argument("--z-dim", type=int, default=0)
    q.add_argument("--u", default="1")
    q.add_argument("--psi", help="JSON matrix on D + Z")
    q.add_argument("--unchecked", action="store_true", help="skip the limit validation of patterns")
    q = common(bs.add_parser("not-tame"))
    q.add_argument("--type", default="A1")
    q.add_argument("--window", type=int, default=2)
    q.add_argument("--S", default="0,1,-1")
    q.add_argument("--dims", type=int, default=1)

    for name, fn, default_fmt in (("check", cmd_check, "json"), ("report", cmd_report, "text")):
        q = sub.add_parser(name)
        q.add_argument("file")
        q.add_argument("--suite", default="all", help="axioms, lemmas, kac, structure or all (comma list)")
        q.add_argument("--format", choices=["json", "text"], default=default_fmt)
        q.add_argument("--out", default="-")
        q.add_argument("--mode", type=_mode, default="exhaustive")
        q.add_argument("--seed", type=int, default=0)
        q.add_argument("--window", type=int, help="required window; fails if the file was built smaller")
        q.set_defaults(func=fn)
    pb.set_defaults(func=cmd_build)
    return p


def main(argv=None) -> int:
    args = parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
