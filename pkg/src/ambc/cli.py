"""
Command-line surface: stable text/JSON output for every public computation,
suitable for table generation and regression diffing.

Exit codes: 0 success, 2 input error, 3 internal invariant failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .affine import AffinePerm, InvariantError, format_window, parse_window
from .cells import distinguished_involutions
from .jring import format_jelement, jelement_to_json, t_multiply
from .lusztig_vogan import format_lv_pair, theta1, theta1_inverse
from .matrixball import format_triple, parse_triple, phi, psi_triple
from .oracles import self_check
from .repring import FWeight, format_gl_weight, parse_gl_weight, tensor_gl
from .tabloids import format_shape, parse_shape


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="ambc", description=__doc__)
    top.add_argument("--format", choices=("text", "json"), default="text")
    top.add_argument("--jobs", type=int, default=1, help="workers for table generation")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ambc-forward", help="window -> (P, Q, rho) triple")
    p.add_argument("window")

    p = sub.add_parser("ambc-backward", help="(P, Q, rho) triple -> window")
    p.add_argument("triple")
    p.add_argument("--n", type=int, default=None)

    p = sub.add_parser("involutions", help="distinguished involutions of a cell")
    p.add_argument("--shape", required=True)
    p.add_argument("--n", type=int, default=None)

    p = sub.add_parser("jmult", help="product of two t-basis elements")
    p.add_argument("u_window")
    p.add_argument("v_window")

    p = sub.add_parser("lv", help="dominant weight -> (shape, weight) pair")
    p.add_argument("mu")

    p = sub.add_parser("lv-inverse", help="(shape, weight) pair -> dominant weight")
    p.add_argument("--shape", required=True)
    p.add_argument("--weight", required=True, help='blocks as JSON, e.g. "[[0,0],[1,0,-1]]"')
    p.add_argument("--n", type=int, default=None)

    p = sub.add_parser("tensor", help="tensor product of two GL_m irreducibles")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("mu")
    p.add_argument("nu")

    p = sub.add_parser("self-check", help="run the brute-force differential corpus")
    p.add_argument("--seed", type=int, default=20240601)
    p.add_argument("--samples", type=int, default=60)

    return top


def _require_total(text: str) -> AffinePerm:
    w = parse_window(text)
    if not isinstance(w, AffinePerm):
        raise ValueError(f"window has holes: {text!r}")
    return w


def _check_n(n: Optional[int], expected: int) -> int:
    if n is not None and n != expected:
        raise ValueError(f"--n {n} contradicts input of size {expected}")
    return expected


def _cmd_forward(args) -> int:
    triple = phi(_require_total(args.window))
    print(format_triple(triple))
    return 0


def _cmd_backward(args) -> int:
    triple = parse_triple(args.triple, args.n)
    print(format_window(psi_triple(triple)))
    return 0


def _cmd_involutions(args) -> int:
    lam = parse_shape(args.shape)
    n = _check_n(args.n, sum(lam))
    if args.jobs > 1:
        from multiprocessing import Pool

        from .tabloids import enumerate_tabloids

        tabloids = list(enumerate_tabloids(lam, n))
        with Pool(args.jobs) as pool:
            invs = pool.map(_psi_diag, [(t.rows, n) for t in tabloids])
    else:
        invs = distinguished_involutions(lam, n)
    windows = sorted(w.window for w in invs)
    if args.format == "json":
        print(json.dumps({"count": len(windows), "windows": [list(w) for w in windows]}))
    else:
        for w in windows:
            print(format_window(AffinePerm(n, w)))
        print(f"count {len(windows)}")
    return 0


def _psi_diag(job) -> AffinePerm:
    from .matrixball import psi
    from .tabloids import Tabloid

    rows, n = job
    t = Tabloid(n, rows)
    return psi(t, t, (0,) * len(rows))


def _cmd_jmult(args) -> int:
    u = _require_total(args.u_window)
    v = _require_total(args.v_window)
    if u.n != v.n:
        raise ValueError(f"window periods differ: {u.n} vs {v.n}")
    prod = t_multiply(u, v)
    print(jelement_to_json(prod) if args.format == "json" else format_jelement(prod))
    return 0


def _cmd_lv(args) -> int:
    pair = theta1(parse_gl_weight(args.mu))
    if args.format == "json":
        print(format_lv_pair(pair))
    else:
        print(f"shape {format_shape(pair.shape)}")
        print(f"weight {format_gl_weight(pair.weight.flatten())}")
    return 0


def _cmd_lv_inverse(args) -> int:
    lam = parse_shape(args.shape)
    _check_n(args.n, sum(lam))
    try:
        blocks = json.loads(args.weight)
        weight = FWeight(lam, tuple(tuple(b) for b in blocks))
    except (json.JSONDecodeError, TypeError) as e:
        raise ValueError(f"bad --weight: {e}") from None
    print(format_gl_weight(theta1_inverse(lam, weight)))
    return 0


def _cmd_tensor(args) -> int:
    mu = parse_gl_weight(args.mu)
    nu = parse_gl_weight(args.nu)
    if len(mu) != args.m or len(nu) != args.m:
        raise ValueError(f"weights must have length m={args.m}")
    dec = sorted(tensor_gl(mu, nu).items(), reverse=True)
    if args.format == "json":
        print(json.dumps([{"mult": c, "weight": list(w)} for w, c in dec]))
    else:
        for w, c in dec:
            print(f"{c} {format_gl_weight(w)}")
    return 0


def _cmd_self_check(args) -> int:
    reports = self_check(seed=args.seed, samples=args.samples)
    failed = [r for r in reports if not r.passed]
    if args.format == "json":
        print(json.dumps([r.to_json() for r in reports]))
    else:
        for r in reports:
            print(r.line())
        print(f"{len(reports) - len(failed)}/{len(reports)} checks passed")
    if failed:
        raise InvariantError(f"{len(failed)} differential checks failed")
    return 0


_COMMANDS = {
    "ambc-forward": _cmd_forward,
    "ambc-backward": _cmd_backward,
    "involutions": _cmd_involutions,
    "jmult": _cmd_jmult,
    "lv": _cmd_lv,
    "lv-inverse": _cmd_lv_inverse,
    "tensor": _cmd_tensor,
    "self-check": _cmd_self_check,
}


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except InvariantError as e:
        print(f"internal invariant failure: {e}", file=sys.stderr)
        return 3
    except ValueError as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
