"""Regenerate the JSON fixtures in this directory: ``python3 fixtures/generate.py``."""

from pathlib import Path

from nlielm.deformations import DeformationTriple, FormalDeformation, NijenhuisPair, deformation_from_nijenhuis
from nlielm.exactlinalg import Matrix
from nlielm.extensions import Section, canonical_section, extension_from_cocycle
from nlielm.fixtures import a4, h4, heisenberg_lm, heisenberg_lm_target, so3
from nlielm.formats import dump
from nlielm.lm_cohomology import LMCochain, lm_coboundary_1, two_cocycle_basis
from nlielm.lm_core import (
    LMAlgebra,
    adjoint_lm,
    hemisemidirect_projection,
    induced_leibniz_bracket,
    wedge_power_example,
)
from nlielm.lm_representations import adjoint_lm_representation
from nlielm.multilinear import SkewTensor, BlockCochain
from nlielm.nlie_core import abelian
from nlielm.representations import adjoint_representation, trivial_representation
from nlielm.deformations import nu_space

HERE = Path(__file__).resolve().parent


def diag(values):
    n = len(values)
    return Matrix.from_rows([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], n)


def main() -> None:
    out = {}
    out["so3"] = so3()
    out["a4"] = a4()
    out["h4"] = h4()
    out["abelian_3_4"] = abelian(3, 4, "abelian")
    out["trivial1"] = trivial_representation(abelian(3, 4, "abelian"), 1)
    out["a4_adjoint_rep"] = adjoint_representation(a4())
    out["h4_trivial1"] = trivial_representation(h4(), 1)

    lm_a4 = adjoint_lm(a4())
    heis = heisenberg_lm()
    out["lm_a4_adjoint"] = lm_a4
    out["lm_heisenberg"] = heis
    out["lm_so3_wedge_power"] = wedge_power_example(so3())
    out["lm_h4_projection"] = hemisemidirect_projection(trivial_representation(h4(), 1))
    out["leibniz_induced_a4"] = induced_leibniz_bracket(lm_a4)
    broken = Matrix.from_rows([[1], [0], [0], [0]], 1)
    out["lm_heisenberg_broken"] = LMAlgebra(heis.rho, broken, "h4 with a non-equivariant map")

    target = heisenberg_lm_target(heis)
    out["lmrep_heisenberg_target"] = target
    out["lmrep_a4_adjoint"] = adjoint_lm_representation(lm_a4)

    Z = two_cocycle_basis(heis, target)
    c = Z[0]
    b = lm_coboundary_1(heis, target, Matrix.from_rows([[1, 0, 2, 0]], 4), Matrix.from_rows([[3]], 1))
    shifted = LMCochain(2, c.omega + b.omega, c.nu + b.nu, c.theta + b.theta)
    other = Z[1]
    out["cocycle_heisenberg"] = c
    out["cocycle_heisenberg_shifted"] = shifted
    out["cocycle_heisenberg_other"] = other
    e1 = extension_from_cocycle(heis, target, c)
    out["ext_heisenberg"] = e1
    out["ext_heisenberg_shifted"] = extension_from_cocycle(heis, target, shifted)
    out["ext_heisenberg_other"] = extension_from_cocycle(heis, target, other)
    s = canonical_section(e1)
    shear0 = s.sigma0 + e1.i0 @ Matrix.from_rows([[0, 1, 0, 0]], 4)
    out["section_heisenberg_sheared"] = Section(shear0, s.sigma1)

    out["cochain_h4_trivial"] = SkewTensor(3, 4, 1, {(0, 1, 3): {0: 1}})

    out["nijenhuis_a4_diagonal"] = NijenhuisPair(diag([0, 0, 1, 1]), diag([0, 0, 1, 1]))
    out["nijenhuis_a4_identity"] = NijenhuisPair(Matrix.identity(4), Matrix.identity(4))
    out["nijenhuis_a4_non"] = NijenhuisPair(diag([1, 0, 0, 0]), diag([0, 0, 0, 0]))
    out["deformation_a4_nijenhuis"] = deformation_from_nijenhuis(lm_a4, out["nijenhuis_a4_diagonal"])
    zero = DeformationTriple(Matrix.zeros(4, 4), SkewTensor(3, 4, 4), nu_space(lm_a4).zero())
    out["deformation_a4_zero"] = FormalDeformation([zero])
    bad_nu = BlockCochain.from_function(nu_space(lm_a4), lambda bl, tr: {0: 1} if bl[0] == (0, 1) else {})
    bad = DeformationTriple(Matrix.zeros(4, 4), SkewTensor(3, 4, 4, {(0, 1, 2): {0: 1}}), bad_nu)
    out["deformation_a4_random"] = FormalDeformation([bad])

    for name, value in out.items():
        dump(value, HERE / f"{name}.json")


if __name__ == "__main__":
    main()
