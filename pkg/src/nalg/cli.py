"""Command-line front end (``nalg``).

Exit status: 0 on success, 1 on domain errors, 2 on parse errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from . import reptheory, verify
from .constants import constants_basis, free_generators, verify_hilbert_product
from .expr import ParseError, format_monomial, parse_polynomial, polynomial_to_json
from .magma import Flavor, Polynomial, multidegrees
from .series import (LinearODE, RootData, TaylorSeries, TruncatedElement, fit_homogeneous_constants,
                     homogeneous_general_solution, nonassoc_exponential, ode_residual, solve_linear_ode)
from .taylor import OperatorFamily, generalized_expand, taylor_expand


def _poly(args, text: str) -> Polynomial:
    return parse_polynomial(text, args.flavor)


def _emit(args, payload, text_lines: Sequence[str]):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        for line in text_lines:
            print(line)


def _series_payload(s: TaylorSeries, materialized: TruncatedElement) -> dict:
    return {
        "N": s.N,
        "coefficients": [{"k": k, "c": polynomial_to_json(c)} for k, c in enumerate(s.coefficients)],
        "components": [{"degree": n, "h": polynomial_to_json(h)} for n, h in enumerate(materialized.components)],
    }


def _series_text(s: TaylorSeries, materialized: TruncatedElement) -> List[str]:
    lines = [f"c_{k} = {c}" for k, c in enumerate(s.coefficients) if c]
    lines += [f"h_{n} = {h}" for n, h in enumerate(materialized.components) if h]
    return lines or ["0"]


# --------------------------------------------------------------------------
# commands

def cmd_parse(args):
    p = _poly(args, args.expr)
    _emit(args, polynomial_to_json(p), [str(p)])


def cmd_derive(args):
    p = _poly(args, args.expr).derivative(args.var, args.times)
    _emit(args, polynomial_to_json(p), [str(p)])


def _load_family(spec: str) -> OperatorFamily:
    if os.path.exists(spec):
        with open(spec) as fh:
            spec = fh.read()
    return OperatorFamily.from_json(spec)


def cmd_taylor(args):
    p = _poly(args, args.expr)
    if args.family:
        fam = _load_family(args.family)
        coeffs = generalized_expand(p, fam, args.nvars)
        payload = {"family": fam.name,
                   "coefficients": [{"exponent": list(a), "coefficient": polynomial_to_json(c)}
                                    for a, c in sorted(coeffs.items())]}
        lines = [f"{list(a)}: {c}" for a, c in sorted(coeffs.items())]
    else:
        e = taylor_expand(p, args.nvars)
        payload = e.to_json()
        lines = [f"{list(a)}: {c}" for a, c in e.items()]
    _emit(args, payload, lines or ["(empty)"])


def _multidegree_list(spec: str, m: int):
    parts = [int(s) for s in spec.split(",")]
    if len(parts) > 1:
        return [tuple(parts)]
    return list(multidegrees(m, parts[0]))


def cmd_constants(args):
    payload, lines = [], []
    for d in _multidegree_list(args.degree, args.vars):
        cb = constants_basis(d, args.flavor)
        payload.append({"multidegree": list(d), "dimension": cb.dimension, "component_dimension": cb.component_dim,
                        "basis": [polynomial_to_json(b) for b in cb.basis]})
        lines.append(f"multidegree {list(d)}: dim {cb.dimension} (component {cb.component_dim})")
        lines.extend(f"  {b}" for b in cb.basis)
    _emit(args, payload, lines)


def cmd_generators(args):
    gs = free_generators(args.degree)
    payload = {"degree": gs.degree, "count": len(gs),
               "generators": [{"word": format_monomial(g.word), "forms": list(g.forms),
                               "element": polynomial_to_json(g.element)} for g in gs.elements]}
    lines = [f"{len(gs)} generators in degree {gs.degree}"]
    lines += [f"  phi{format_monomial(g.word)} = {g.element}    [{'; '.join(g.forms)}]" for g in gs.elements]
    _emit(args, payload, lines)


def cmd_hilbert(args):
    rep = verify_hilbert_product(args.flavor, args.vars, args.max_degree)
    payload = {"flavor": rep.flavor.value, "vars": rep.nvars, "max_degree": rep.max_degree, "ok": rep.ok,
               "rows": [{"multidegree": list(r.multidegree), "component_dim": r.component_dim,
                         "constants_sum": r.constants_sum, "passed": r.ok} for r in rep.rows]}
    lines = [f"{'PASS' if r.ok else 'FAIL'}  {list(r.multidegree)}: dim R = {r.component_dim}, "
             f"sum dim R_0 = {r.constants_sum}" for r in rep.rows]
    _emit(args, payload, lines)
    return 0 if rep.ok else 1


def cmd_decompose(args):
    dec = reptheory.constants_decomposition(args.k, args.flavor, args.method)
    kernel_dim = constants_basis((1,) * args.k, args.flavor).dimension
    payload = {"flavor": args.flavor.value, "k": args.k, "method": args.method,
               "decomposition": [{"partition": list(lam), "multiplicity": m} for lam, m in dec.items()],
               "dimension": dec.dimension, "constants_dimension": kernel_dim}
    lines = [f"[{','.join(map(str, lam))}]  {m}" for lam, m in dec.items()] or ["0"]
    lines.append(f"dimension {dec.dimension} (constants: {kernel_dim})")
    _emit(args, payload, lines)


def _split(text: str, sep: str) -> List[str]:
    return [s.strip() for s in text.split(sep) if s.strip()]


def cmd_ode(args):
    N = 10 if args.N is None else args.N
    if args.ode_command == "solve":
        coeffs = [Fraction(a) for a in _split(args.coeffs, ",")]
        if args.order is not None and args.order != len(coeffs):
            raise ValueError(f"--order {args.order} but {len(coeffs)} coefficients given")
        init = [_poly(args, c) for c in _split(args.init, ";")]
        rhs = TruncatedElement.from_polynomial(_poly(args, args.rhs), N)
        ode = LinearODE.make(coeffs, rhs, init)
        s = solve_linear_ode(ode, N)
    else:
        roots = RootData.make([(Fraction(lam), int(k)) for lam, k in
                               (item.split(":") for item in _split(args.roots, ","))])
        coeffs = roots.characteristic_coefficients()
        if args.init:
            init = [_poly(args, c) for c in _split(args.init, ";")]
            consts = fit_homogeneous_constants(roots, init)
        else:
            labels = [(i, j) for i, (_, k) in enumerate(roots.roots) for j in range(k)]
            given = _split(args.consts, ";") if args.consts else ["1"] * len(labels)
            if len(given) != len(labels):
                raise ValueError(f"expected {len(labels)} constants c_ij, got {len(given)}")
            consts = {lab: _poly(args, c) for lab, c in zip(labels, given)}
        s = homogeneous_general_solution(roots, consts, N, coeffs)
        ode = LinearODE.make(coeffs, TruncatedElement.zero(N, args.flavor),
                             [s.coefficients[k] for k in range(len(coeffs))])
    y = s.materialize()
    residual = ode_residual(ode, y) if N >= ode.order else None
    payload = _series_payload(s, y)
    payload["coefficients_a"] = [str(a) for a in ode.coefficients]
    payload["residual_zero"] = None if residual is None else not residual
    lines = _series_text(s, y)
    if residual is not None:
        lines.append(f"residual through degree {N - ode.order}: {'0' if not residual else residual.to_polynomial()}")
    _emit(args, payload, lines)


def cmd_exp(args):
    N = 8 if args.N is None else args.N
    E = nonassoc_exponential(N, args.flavor)
    payload = {"N": N, "components": [{"degree": n, "e": polynomial_to_json(h)} for n, h in enumerate(E.components)]}
    _emit(args, payload, [f"e_{n} = {h}" for n, h in enumerate(E.components)])


def cmd_verify(args):
    results = verify.run(args.suite)
    ok = all(c.passed for checks in results.values() for c in checks)
    payload = {"passed": ok, "suites": {name: [c.to_json() for c in checks] for name, checks in results.items()}}
    lines = []
    for name, checks in results.items():
        lines.append(f"== {name}")
        lines.extend(c.line() for c in checks)
    lines.append("ALL PASS" if ok else "SOME CHECKS FAILED")
    _emit(args, payload, lines)
    return 0 if ok else 1


# --------------------------------------------------------------------------

def _globals(defaults: bool) -> argparse.ArgumentParser:
    """Global flags, accepted both before and after the subcommand."""
    p = argparse.ArgumentParser(add_help=False)
    kw = {} if defaults else {"default": argparse.SUPPRESS}
    p.add_argument("--format", choices=("text", "json"), **({"default": "text"} if defaults else kw))
    p.add_argument("--flavor", type=Flavor.parse, **({"default": Flavor.MAGMA} if defaults else kw),
                   help="magma, commutative or associative")
    p.add_argument("--N", type=int, **({"default": None} if defaults else kw), help="truncation order")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _globals(False)
    parser = argparse.ArgumentParser(prog="nalg", parents=[_globals(True)],
                                     description="Exact computation in free non-associative algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("parse", cmd_parse, "parse and reprint an expression")
    sp.add_argument("--expr", required=True)

    sp = add("derive", cmd_derive, "formal partial derivative")
    sp.add_argument("--expr", required=True)
    sp.add_argument("--var", type=int, default=1)
    sp.add_argument("--times", type=int, default=1)

    sp = add("taylor-expand", cmd_taylor, "Taylor expansion with constant coefficients")
    sp.add_argument("--expr", required=True)
    sp.add_argument("--nvars", type=int)
    sp.add_argument("--family", help="operator family as a JSON string or file")

    sp = add("constants", cmd_constants, "basis of the constants")
    sp.add_argument("--degree", required=True, help="total degree n, or a multidegree like 2,1")
    sp.add_argument("--vars", type=int, default=1)

    sp = add("generators", cmd_generators, "free generators of the one-variable constants")
    sp.add_argument("--degree", type=int, required=True)

    sp = add("hilbert", cmd_hilbert, "check dim R = sum of constants dimensions")
    sp.add_argument("--vars", type=int, default=1)
    sp.add_argument("--max-degree", type=int, default=6)

    sp = add("decompose", cmd_decompose, "S_k-decomposition of the multilinear constants")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--method", choices=("kernel", "recursion", "both"), default="kernel")

    sp = add("ode", cmd_ode, "linear ODEs with constant coefficients")
    osub = sp.add_subparsers(dest="ode_command", required=True)
    so = osub.add_parser("solve", parents=[common])
    so.add_argument("--order", type=int)
    so.add_argument("--coeffs", required=True, help="a1,...,an")
    so.add_argument("--rhs", default="0")
    so.add_argument("--init", required=True, help="c0;...;c(n-1)")
    ho = osub.add_parser("homogeneous", parents=[common])
    ho.add_argument("--roots", required=True, help='e.g. "1:2,0:1" (root:multiplicity)')
    group = ho.add_mutually_exclusive_group()
    group.add_argument("--consts", help="c_ij separated by ';', roots in order (default all 1)")
    group.add_argument("--init", help="fit c_ij to initial constants c0;...;c(n-1)")

    add("exp", cmd_exp, "the non-associative exponential E(x)")

    sp = add("verify", cmd_verify, "run a verification suite")
    sp.add_argument("suite", choices=("hilbert", "decompositions", "ode", "exp", "all"))
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        status = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc.message} at column {exc.column}", file=sys.stderr)
        if exc.text:
            print(f"  {exc.text}\n  {' ' * (exc.column - 1)}^", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
