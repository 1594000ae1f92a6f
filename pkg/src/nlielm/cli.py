"""Command-line interface.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 for malformed input, unreadable files or bad usage.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional, Sequence, Tuple

from .deformations import (
    deformation_from_nijenhuis,
    find_diagonal_nijenhuis,
    is_nijenhuis,
    probe_deformation,
    rigidity_report,
    triviality_witness,
    validate_formal_deformation,
    validate_infinitesimal_deformation,
)
from .exactlinalg import Matrix, format_rational
from .extensions import (
    AbelianExtension,
    cocycle_from_extension,
    extension_equivalence,
    extension_from_cocycle,
    rep_from_extension,
    validate_extension,
)
from .formats import dump, kind_of, parse, to_json_obj
from .lm_cohomology import LMCochain, is_lm_two_cocycle, lm_cohomology_dim
from .lm_core import LMAlgebra, validate_lm
from .lm_representations import (
    LMRepresentation,
    adjoint_lm_representation,
    lm_semidirect,
    validate_lm_representation,
)
from .multilinear import SkewTensor
from .nlie_cohomology import cohomology_dim, is_two_cocycle
from .nlie_core import LeibnizNAlgebra, NLieAlgebra, validate_leibniz_n, validate_n_lie
from .reports import Report
from .representations import (
    Representation,
    adjoint_representation,
    semidirect_product,
    validate_representation,
)

__all__ = ["main", "UsageError"]


class UsageError(Exception):
    """Input that parses but cannot be used for the requested command."""


def _load(path: str, *kinds: str):
    value = parse(path)
    kind = kind_of(value)
    if kinds and kind not in kinds:
        raise UsageError(f"{path}: expected a file of kind {' or '.join(kinds)}, got {kind}")
    return value


def _matrix_data(m: Matrix) -> List[List[str]]:
    return [[format_rational(x) for x in row] for row in m.to_lists()]


def _base_of(rep) -> object:
    return rep.algebra if isinstance(rep, Representation) else rep.base


def _coefficients(base, source: str):
    if source == "adjoint":
        if isinstance(base, NLieAlgebra):
            return adjoint_representation(base)
        return adjoint_lm_representation(base, check=False)
    want = "representation" if isinstance(base, NLieAlgebra) else "lm_rep"
    rep = _load(source, want)
    if _base_of(rep) != base:
        raise UsageError(f"{source}: coefficients are over a different base")
    return rep


def _write(value, output: Optional[str]) -> None:
    if output:
        dump(value, output)


# -- commands ------------------------------------------------------------------

def cmd_validate(args) -> Tuple[Report, List[str]]:
    value = _load(args.file)
    if isinstance(value, NLieAlgebra):
        return validate_n_lie(value), []
    if isinstance(value, LeibnizNAlgebra):
        return validate_leibniz_n(value), []
    if isinstance(value, Representation):
        rep = Report(f"representation {value.name}".strip())
        rep.extend(validate_n_lie(value.algebra), "algebra ")
        rep.extend(validate_representation(value, "full"))
        return rep, []
    if isinstance(value, LMAlgebra):
        return validate_lm(value, full=True), []
    if isinstance(value, LMRepresentation):
        rep = Report(f"LM representation {value.name}".strip())
        rep.extend(validate_lm(value.base, full=True), "base ")
        rep.extend(validate_lm_representation(value, full=True))
        return rep, []
    if isinstance(value, AbelianExtension):
        return validate_extension(value), []
    hints = {
        "cochain": "cocycle check <file> --against <base>",
        "deformation": "deform check <base> <file>",
        "nijenhuis": "nijenhuis check <base> <file>",
        "section": "extract <extension> --section <file>",
    }
    raise UsageError(f"{args.file}: a {kind_of(value)} file needs a base; use `{hints[kind_of(value)]}`")


def cmd_cohomology(args) -> Tuple[Report, List[str]]:
    base = _load(args.file, "nlie", "lm")
    coeff = _coefficients(base, args.coefficients)
    rep = Report("cohomology")
    rows = []
    for k in args.degree:
        if isinstance(base, NLieAlgebra):
            if k < 1:
                raise UsageError("degrees start at 1")
            dims = cohomology_dim(coeff, k, skew=args.skew and k == 2)
        else:
            if k not in (1, 2):
                raise UsageError("LM cohomology is available in degrees 1 and 2")
            dims = lm_cohomology_dim(base, coeff, k)
        rows.append(dims.as_row())
    rep.data["table"] = [dict(zip(("degree", "cochains", "cocycles", "coboundaries", "cohomology"), r))
                         for r in rows]
    lines = ["  degree  dim C  dim Z  dim B  dim H"]
    lines += [f"  {r[0]:>6} {r[1]:>6} {r[2]:>6} {r[3]:>6} {r[4]:>6}" for r in rows]
    return rep, lines


def cmd_cocycle_check(args) -> Tuple[Report, List[str]]:
    c = _load(args.file, "cochain")
    base = _load(args.against, "nlie", "lm")
    coeff = _coefficients(base, args.coefficients)
    if isinstance(base, NLieAlgebra):
        if not isinstance(c, SkewTensor):
            raise UsageError("an n-Lie base needs an n-Lie cochain")
        if (c.arity, c.dim, c.target_dim) != (base.n, base.dim, coeff.module_dim):
            raise UsageError("cochain dimensions do not match the base and coefficients")
        return is_two_cocycle(coeff, c), []
    if not isinstance(c, LMCochain) or c.degree != 2:
        raise UsageError("an LM base needs an LM cochain of degree 2")
    so = c.omega.space
    if (so.dim, so.block_arity, c.nu.space.trailing[0], c.nu.space.target_dim, so.target_dim) != \
            (base.g.dim, base.n, base.M_dim, coeff.V_dim, coeff.W_dim):
        raise UsageError("cochain dimensions do not match the base and coefficients")
    return is_lm_two_cocycle(base, coeff, c), []


def cmd_semidirect(args) -> Tuple[Report, List[str]]:
    base = _load(args.base, "nlie", "lm")
    rep_in = _coefficients(base, args.rep)
    if isinstance(base, NLieAlgebra):
        report = validate_representation(rep_in, "full")
        product = semidirect_product(rep_in, check=False) if report.passed else None
    else:
        report = validate_lm_representation(rep_in, full=True)
        product = lm_semidirect(base, rep_in, check=False) if report.passed else None
    report.title = "semidirect product"
    if product is not None:
        _write(product, args.output)
        report.data["kind"] = kind_of(product)
        if args.output:
            report.data["written"] = args.output
    return report, []


def cmd_extend(args) -> Tuple[Report, List[str]]:
    base = _load(args.base, "lm")
    r = _coefficients(base, args.rep)
    c = _load(args.cocycle, "cochain")
    if not isinstance(c, LMCochain) or c.degree != 2:
        raise UsageError("extend needs an LM cochain of degree 2")
    report = Report("extension from cocycle")
    report.extend(is_lm_two_cocycle(base, r, c), "cocycle ")
    if report.passed:
        e = extension_from_cocycle(base, r, c, check=False)
        report.extend(validate_extension(e), "extension ")
        _write(e, args.output)
        if args.output:
            report.data["written"] = args.output
    return report, []


def cmd_extract(args) -> Tuple[Report, List[str]]:
    e = _load(args.extension, "extension")
    s = _load(args.section, "section") if args.section else None
    report = Report("representation and cocycle of an extension")
    report.extend(validate_extension(e), "extension ")
    if not report.passed:
        return report, []
    r = rep_from_extension(e, s, check=False)
    c = cocycle_from_extension(e, s, r, check=False)
    report.extend(validate_lm_representation(r, full=True), "representation ")
    report.extend(is_lm_two_cocycle(e.base, r, c), "cocycle ")
    report.data["cocycle"] = to_json_obj(c)
    _write(r, args.rep_out)
    _write(c, args.cocycle_out)
    return report, []


def cmd_equivalent(args) -> Tuple[Report, List[str]]:
    e1 = _load(args.e1, "extension")
    e2 = _load(args.e2, "extension")
    for e, name in ((e1, args.e1), (e2, args.e2)):
        if not validate_extension(e).passed:
            raise UsageError(f"{name}: not a valid extension; run `validate` for details")
    if e1.base != e2.base or e1.W_dim != e2.W_dim or e1.V_dim != e2.V_dim:
        raise UsageError("extensions are not over the same base and kernel")
    res = extension_equivalence(e1, e2)
    report = res.report
    if res.equivalent:
        report.data["witness"] = {
            "b0": _matrix_data(res.b0),
            "b1": _matrix_data(res.b1),
            "F0": _matrix_data(res.morphism.phi0),
            "F1": _matrix_data(res.morphism.phi1),
        }
    return report, []


def _ternary(path: str) -> LMAlgebra:
    base = _load(path, "lm")
    if base.n != 3:
        raise UsageError(f"{path}: deformations need arity 3, got {base.n}")
    return base


def _pair_for(base: LMAlgebra, path: str):
    p = _load(path, "nijenhuis")
    if p.N0.shape != (base.g.dim, base.g.dim) or p.N1.shape != (base.M_dim, base.M_dim):
        raise UsageError(f"{path}: operator sizes do not match the base")
    return p


def cmd_nijenhuis_check(args) -> Tuple[Report, List[str]]:
    base = _ternary(args.base)
    return is_nijenhuis(base, _pair_for(base, args.pair)), []


def cmd_nijenhuis_search(args) -> Tuple[Report, List[str]]:
    base = _ternary(args.base)
    report = Report("diagonal Nijenhuis pairs")
    found = []
    for p in find_diagonal_nijenhuis(base, values=(0, 1), same=args.same):
        found.append({
            "N0": [format_rational(p.N0[i, i]) for i in range(base.g.dim)],
            "N1": [format_rational(p.N1[i, i]) for i in range(base.M_dim)],
        })
    report.data["diagonals"] = found
    return report, []


def cmd_deform_check(args) -> Tuple[Report, List[str]]:
    base = _ternary(args.base)
    d = _load(args.deformation, "deformation")
    for t in d.terms:
        if t.theta.shape != (base.g.dim, base.M_dim):
            raise UsageError("deformation sizes do not match the base")
    report = Report("deformation")
    if d.order == 1:
        report.extend(validate_infinitesimal_deformation(base, d.terms[0]))
        report.extend(probe_deformation(base, d.terms[0]))
    report.extend(validate_formal_deformation(base, d))
    return report, []


def cmd_deform_from_nijenhuis(args) -> Tuple[Report, List[str]]:
    base = _ternary(args.base)
    p = _pair_for(base, args.pair)
    report = Report("deformation generated by a Nijenhuis pair")
    report.extend(is_nijenhuis(base, p))
    if not report.passed:
        return report, []
    d = deformation_from_nijenhuis(base, p, check=False)
    report.extend(validate_formal_deformation(base, d))
    report.extend(triviality_witness(base, p, d))
    _write(d, args.output)
    if args.output:
        report.data["written"] = args.output
    return report, []


def cmd_rigidity(args) -> Tuple[Report, List[str]]:
    return rigidity_report(_load(args.base, "lm")), []


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS,
                        help="report format (default: text)")
    parser = argparse.ArgumentParser(prog="nlielm", description="Exact checks for n-Lie algebras in LM.")
    parser.add_argument("--format", choices=("text", "json"), default="text", help="report format")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="validate any self-contained file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("cohomology", parents=[common], help="cohomology dimensions")
    p.add_argument("file")
    p.add_argument("--degree", type=int, nargs="+", required=True)
    p.add_argument("--coefficients", default="adjoint", help="'adjoint' or a representation file")
    p.add_argument("--skew", action="store_true", help="use skew degree-2 cochains for an n-Lie base")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("cocycle", help="cocycle checks")
    cs = p.add_subparsers(dest="action", required=True)
    c = cs.add_parser("check", parents=[common])
    c.add_argument("file")
    c.add_argument("--against", required=True)
    c.add_argument("--coefficients", default="adjoint")
    c.set_defaults(func=cmd_cocycle_check)

    p = sub.add_parser("semidirect", parents=[common], help="semidirect product with a representation")
    p.add_argument("base")
    p.add_argument("rep")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_semidirect)

    p = sub.add_parser("extend", parents=[common], help="abelian extension from a 2-cocycle")
    p.add_argument("base")
    p.add_argument("rep")
    p.add_argument("cocycle")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("extract", parents=[common], help="representation and cocycle of an extension")
    p.add_argument("extension")
    p.add_argument("--section")
    p.add_argument("--rep-out")
    p.add_argument("--cocycle-out")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("equivalent", parents=[common], help="decide equivalence of two extensions")
    p.add_argument("e1")
    p.add_argument("e2")
    p.set_defaults(func=cmd_equivalent)

    p = sub.add_parser("nijenhuis", help="Nijenhuis operators")
    ns = p.add_subparsers(dest="action", required=True)
    c = ns.add_parser("check", parents=[common])
    c.add_argument("base")
    c.add_argument("pair")
    c.set_defaults(func=cmd_nijenhuis_check)
    c = ns.add_parser("search", parents=[common], help="diagonal pairs with 0/1 entries")
    c.add_argument("base")
    c.add_argument("--same", action="store_true", help="require N1 = N0 (needs M = g)")
    c.set_defaults(func=cmd_nijenhuis_search)

    p = sub.add_parser("deform", help="deformations")
    ds = p.add_subparsers(dest="action", required=True)
    c = ds.add_parser("check", parents=[common])
    c.add_argument("base")
    c.add_argument("deformation")
    c.set_defaults(func=cmd_deform_check)
    c = ds.add_parser("from-nijenhuis", parents=[common])
    c.add_argument("base")
    c.add_argument("pair")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_deform_from_nijenhuis)

    p = sub.add_parser("rigidity", parents=[common], help="sufficient rigidity criterion")
    p.add_argument("base")
    p.set_defaults(func=cmd_rigidity)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        report, lines = args.func(args)
    except (UsageError, ValueError, IndexError, KeyError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RecursionError:
        print("error: input too deeply nested", file=sys.stderr)
        return 2
    if args.format == "json":
        sys.stdout.write(report.to_json() + "\n")
    else:
        text = report.to_text()
        if lines:
            text += "\n" + "\n".join(lines)
        sys.stdout.write(text + "\n")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
