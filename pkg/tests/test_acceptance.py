"""Acceptance gate: one check per criterion, each printed as a PASS/FAIL line.

Run ``python3 tests/test_acceptance.py`` for the lines alone; under pytest
they appear in the terminal summary.
"""

import itertools
import json
import random
import sys
import time
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction
from io import StringIO
from pathlib import Path

from nlielm.cli import main as cli_main
from nlielm.deformations import (
    DeformationTriple,
    NijenhuisPair,
    deformation_from_nijenhuis,
    find_diagonal_nijenhuis,
    is_nijenhuis,
    nu_space,
    probe_deformation,
    triviality_witness,
    validate_formal_deformation,
    validate_infinitesimal_deformation,
)
from nlielm.exactlinalg import Matrix
from nlielm.extensions import (
    Section,
    canonical_section,
    cocycle_from_extension,
    extension_equivalence,
    extension_from_cocycle,
)
from nlielm.fixtures import a4, h4, heisenberg_lm, heisenberg_lm_target, so3
from nlielm.lm_cohomology import (
    _skew_inclusion,
    lm_coboundary,
    two_cocycle_basis,
)
from nlielm.lm_core import (
    LMAlgebra,
    adjoint_lm,
    f_intertwines,
    hemisemidirect_projection,
    id_plus_f_check,
    induced_leibniz_bracket,
    validate_lm,
    wedge_power_example,
)
from nlielm.lm_representations import adjoint_lm_representation, trivial_lm_representation
from nlielm.multilinear import BlockCochain, SkewTensor, wedge_basis
from nlielm.nlie_cohomology import cochain_space, cohomology_dim, nlie_coboundary
from nlielm.nlie_core import abelian, validate_leibniz_n
from nlielm.representations import (
    Representation,
    adjoint_representation,
    hom_module,
    trivial_representation,
    validate_leibniz_module,
    validate_representation,
)

FIX = Path(__file__).resolve().parent.parent / "fixtures"
RESULTS = {}

SCALE = Matrix.from_rows([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 2]], 4)


def record(number: int, title: str, passed: bool, detail: str) -> bool:
    RESULTS[number] = (title, passed, detail)
    return passed


def nlie_fixtures():
    for g in (so3(), a4()):
        yield adjoint_representation(g)
        yield trivial_representation(g, 1)


def criterion_1() -> bool:
    t = time.perf_counter()
    ok = all((nlie_coboundary(r, p + 1).matrix @ nlie_coboundary(r, p).matrix).is_zero()
             for r in nlie_fixtures() for p in (1, 2))
    dt = time.perf_counter() - t
    return record(1, "delta squared is zero", ok and dt < 10, f"4 fixtures x p=1,2 in {dt:.2f}s (limit 10s)")


def criterion_2() -> bool:
    ok = all(nlie_coboundary(r, p, "direct").matrix == nlie_coboundary(r, p, "leibniz").matrix
             for r in nlie_fixtures() for p in (1, 2))
    return record(2, "direct and Leibniz assemblies agree", ok, "entry-wise on 4 fixtures x p=1,2")


def criterion_3() -> bool:
    g, s = a4(), so3()

    def rep_from(alg, dim_v, fn):
        rho = {w: fn(w) for w in wedge_basis(alg.dim, alg.n - 1)}
        return Representation(alg, dim_v, {w: m for w, m in rho.items() if not m.is_zero()})

    one = Matrix.identity(1)
    corpus = [
        (True, trivial_representation(g, 2)),
        (True, adjoint_representation(s)),
        (True, adjoint_representation(g)),
        (True, adjoint_representation(h4())),
        (False, rep_from(g, 4, lambda w: g.ad(w) @ SCALE)),
        (False, rep_from(s, 3, lambda w: s.ad(w).scale(2))),
        (False, rep_from(g, 1, lambda w: one if w == (0, 1) else Matrix.zeros(1, 1))),
        (False, Representation(abelian(3, 4), 1, {(0, 3): one, (1, 2): one})),
    ]
    ok = True
    for expected, r in corpus:
        full = validate_representation(r, "full").passed
        ok &= full == expected == validate_leibniz_module(hom_module(r)).passed
    return record(3, "representation iff Leibniz module", ok, f"{len(corpus)} representations, 4 valid, 4 invalid")


def lm_corpus():
    g = a4()
    return [
        LMAlgebra(adjoint_representation(g), Matrix.zeros(4, 4), "f = 0"),
        adjoint_lm(g),
        hemisemidirect_projection(adjoint_representation(h4())),
        wedge_power_example(so3()),
        wedge_power_example(a4()),
        heisenberg_lm(),
    ]


def criterion_4() -> bool:
    ok = True
    corpus = lm_corpus()
    for a in corpus:
        ok &= validate_lm(a, full=True).passed
        h = induced_leibniz_bracket(a)
        ok &= validate_leibniz_n(h).passed and f_intertwines(a, h).passed
    return record(4, "induced Leibniz bracket", ok, f"{len(corpus)} LM fixtures")


def criterion_5() -> bool:
    broken = [
        LMAlgebra(adjoint_representation(a4()), SCALE, "scaled f"),
        LMAlgebra(trivial_representation(h4(), 1), Matrix.from_rows([[1], [0], [0], [0]], 1), "f hits e1"),
    ]
    corpus = lm_corpus() + broken
    verdicts = [validate_lm(a).passed for a in corpus]
    ok = verdicts == [id_plus_f_check(a).passed for a in corpus] and verdicts.count(False) == len(broken)
    return record(5, "LM condition iff id + f check", ok, f"{len(corpus)} fixtures, {len(broken)} broken")


def criterion_6() -> bool:
    pairs = []
    for g in (so3(), a4(), h4()):
        a = adjoint_lm(g)
        pairs += [(a, adjoint_lm_representation(a)), (a, trivial_lm_representation(a, 1, 1, Matrix.identity(1)))]
    h = heisenberg_lm()
    pairs.append((h, heisenberg_lm_target(h)))
    ok = all((lm_coboundary(a, r, 2, skew=False).matrix @ lm_coboundary(a, r, 1).matrix).is_zero()
             for a, r in pairs)
    return record(6, "LM D2 after D1 is zero", ok, f"{len(pairs)} fixtures including adjoint")


def criterion_7() -> bool:
    t = time.perf_counter()
    a = heisenberg_lm()
    r = heisenberg_lm_target(a)
    dims_ok = a.g.dim <= 4 and max(a.M_dim, r.V_dim, r.W_dim) <= 2
    basis = two_cocycle_basis(a, r)
    # (a) roundtrip on a basis of Z^2
    ok_a = all(cocycle_from_extension(extension_from_cocycle(a, r, c)).to_vector() == c.to_vector()
               for c in basis)
    # (b) a section change shifts the cocycle by a solution of D1 b = difference
    rng = random.Random(0)
    D1 = lm_coboundary(a, r, 1).matrix
    ok_b = True
    for c in basis:
        e = extension_from_cocycle(a, r, c)
        s = canonical_section(e)
        b0 = Matrix.from_rows([[rng.randint(-2, 2) for _ in range(a.g.dim)] for _ in range(r.W_dim)], a.g.dim)
        b1 = Matrix.from_rows([[rng.randint(-2, 2) for _ in range(a.M_dim)] for _ in range(r.V_dim)], a.M_dim)
        c2 = cocycle_from_extension(e, Section(s.sigma0 + e.i0 @ b0, s.sigma1 + e.i1 @ b1))
        diff = [x - y for x, y in zip(c2.to_vector(), c.to_vector())]
        ok_b &= D1.solve(list(_skew_inclusion(a, r) @ diff)) is not None
    # (c) distinct classes give inequivalent extensions
    classes = 0
    ok_c = True
    for c, c2 in itertools.combinations(basis, 2):
        diff = [x - y for x, y in zip(c.to_vector(), c2.to_vector())]
        if D1.solve(list(_skew_inclusion(a, r) @ diff)) is None:
            classes += 1
            res = extension_equivalence(extension_from_cocycle(a, r, c), extension_from_cocycle(a, r, c2))
            ok_c &= not res.equivalent and res.morphism is None
    dt = time.perf_counter() - t
    ok = dims_ok and ok_a and ok_b and ok_c and classes > 0 and dt < 60
    return record(7, "extension roundtrips", ok,
                  f"dim Z2 = {len(basis)}, {classes} inequivalent pairs, {dt:.2f}s (limit 60s)")


def random_triple(rng, a):
    dg, dm = a.g.dim, a.M_dim
    theta = Matrix.from_rows([[rng.randint(-1, 1) for _ in range(dm)] for _ in range(dg)], dm)
    omega = SkewTensor(3, dg, dg, {w: {rng.randrange(dg): rng.choice([-1, 1])} for w in wedge_basis(dg, 3)})
    space = nu_space(a)
    return DeformationTriple(theta, omega, BlockCochain(space, [rng.choice([0, 1, -1]) for _ in range(space.size)]))


def criterion_8() -> bool:
    rng = random.Random(1)
    ok, count = True, 0
    for a in (adjoint_lm(a4()), adjoint_lm(h4()), heisenberg_lm()):
        N0 = Matrix.identity(a.g.dim)
        N1 = Matrix.identity(a.M_dim)
        triples = [DeformationTriple.zero(a), random_triple(rng, a)]
        if is_nijenhuis(a, NijenhuisPair(N0, N1)).passed:
            triples.append(deformation_from_nijenhuis(a, NijenhuisPair(N0, N1)).terms[0])
        pair = next(iter(find_diagonal_nijenhuis(a, values=(0, 1))), None)
        if pair is not None:
            triples.append(deformation_from_nijenhuis(a, pair).terms[0])
        for d in triples:
            count += 1
            ok &= validate_infinitesimal_deformation(a, d).passed == probe_deformation(a, d).passed
    return record(8, "infinitesimal deformation equivalence", ok, f"{count} triples over 3 fixtures, λ in 1, 2, -1, 1/2")


def criterion_9() -> bool:
    a = adjoint_lm(a4())
    I = Matrix.identity(4)
    found = [p for p in find_diagonal_nijenhuis(a, same=True)
             if not p.N0.is_zero() and p.N0 != I]
    pairs = [NijenhuisPair(Matrix.zeros(4, 4), Matrix.zeros(4, 4)), NijenhuisPair(I, I),
             NijenhuisPair(I.scale(Fraction(1, 2)), I.scale(Fraction(1, 2))), found[0]]
    ok = True
    for p in pairs:
        d = deformation_from_nijenhuis(a, p)
        ok &= validate_formal_deformation(a, d).passed and triviality_witness(a, p, d, (1, 2, -1)).passed
    diag = [found[0].N0.column(i)[i] for i in range(4)]
    return record(9, "Nijenhuis pairs give trivial deformations", ok,
                  f"pairs 0, id, id/2 and diag{tuple(int(x) for x in diag)}")


def criterion_10() -> bool:
    c2 = cochain_space(adjoint_representation(a4()), 2).size
    h1 = cohomology_dim(trivial_representation(abelian(3, 4), 1), 1).cohomology
    return record(10, "counting identities", c2 == 96 and h1 == 4, f"dim C2 = {c2}, H1 = {h1}")


def _cli(argv):
    out, err = StringIO(), StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli_main(argv)
    return code, out.getvalue()


# files that need a base are checked with the command that takes one
DEPENDENT = {
    "cochain_h4_trivial.json": ["cocycle", "check", "{f}", "--against", "h4.json", "--coefficients", "h4_trivial1.json"],
    "cocycle_heisenberg.json": ["cocycle", "check", "{f}", "--against", "lm_heisenberg.json",
                                "--coefficients", "lmrep_heisenberg_target.json"],
    "section_heisenberg_sheared.json": ["extract", "ext_heisenberg.json", "--section", "{f}"],
}
DEPENDENT_PREFIX = {
    "cocycle_heisenberg": DEPENDENT["cocycle_heisenberg.json"],
    "deformation_a4": ["deform", "check", "lm_a4_adjoint.json", "{f}"],
    "nijenhuis_a4": ["nijenhuis", "check", "lm_a4_adjoint.json", "{f}"],
}


def _commands(f: Path):
    yield ["validate", f.name]
    template = DEPENDENT.get(f.name) or next(
        (v for k, v in DEPENDENT_PREFIX.items() if f.name.startswith(k)), None)
    if template is not None:
        yield [a.format(f=f.name) for a in template]


def criterion_11() -> bool:
    files = sorted(FIX.glob("*.json"))
    ok, codes, runs = True, {}, 0
    for f in files:
        for cmd in _commands(f):
            argv = ["--format", "json"] + [str(FIX / a) if a.endswith(".json") else a for a in cmd]
            first, second = _cli(argv), _cli(argv)
            ok &= first == second and first[0] in (0, 1, 2)
            if first[1]:
                json.loads(first[1])
            codes[first[0]] = codes.get(first[0], 0) + 1
            runs += 1
        # every file is checked by some command with a mathematical verdict
        ok &= any(_cli(["--format", "json"] + [str(FIX / a) if a.endswith(".json") else a for a in cmd])[0] in (0, 1)
                  for cmd in _commands(f))
    ok &= _cli(["validate", str(FIX / "missing.json")])[0] == 2
    ok &= codes.get(0, 0) > 0 and codes.get(1, 0) > 0
    summary = ", ".join(f"exit {k}: {v}" for k, v in sorted(codes.items()))
    return record(11, "CLI exit codes and deterministic reports", ok,
                  f"{len(files)} fixtures, {runs} runs twice each ({summary})")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


def format_line(number: int) -> str:
    title, passed, detail = RESULTS[number]
    return f"criterion {number:2d} {'PASS' if passed else 'FAIL'}  {title}: {detail}"


def test_criterion_1():
    assert criterion_1(), format_line(1)


def test_criterion_2():
    assert criterion_2(), format_line(2)


def test_criterion_3():
    assert criterion_3(), format_line(3)


def test_criterion_4():
    assert criterion_4(), format_line(4)


def test_criterion_5():
    assert criterion_5(), format_line(5)


def test_criterion_6():
    assert criterion_6(), format_line(6)


def test_criterion_7():
    assert criterion_7(), format_line(7)


def test_criterion_8():
    assert criterion_8(), format_line(8)


def test_criterion_9():
    assert criterion_9(), format_line(9)


def test_criterion_10():
    assert criterion_10(), format_line(10)


def test_criterion_11():
    assert criterion_11(), format_line(11)


if __name__ == "__main__":
    for check in CRITERIA:
        check()
    for k in sorted(RESULTS):
        print(format_line(k))
    sys.exit(0 if all(v[1] for v in RESULTS.values()) else 1)
