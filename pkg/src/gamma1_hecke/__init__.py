"""
Exact computations around the Iwahori-Hecke algebra of GL_d: the extended
affine Weyl group, the admissible set of mu_0 = (1, 0, ..., 0), Bernstein and
Kottwitz functions, depth-zero characters, the test functions phi_{r,chi} and
phi_{r,1}, and semi-simple local L-factors.
"""

from .admissible import (
    CocharLattice,
    CriticalSet,
    LeviDatum,
    adm_set,
    bruhat_vs_S,
    codim,
    critical_indices,
    lattice_Lw,
    levi_adm,
    levi_kottwitz,
    nearby_cycle_numerology,
    perm_set,
    strata_poset,
)
from .depthzero import (
    CharStabilizer,
    ChiHeckeElem,
    DepthZeroChar,
    TorusGroupAlgebra,
    delta,
    delta1,
    idempotents,
    psi_inverse,
    psi_transport,
    stabilizer,
)
from .hecke import HeckeAlgebra, HeckeElem, hecke_algebra, kottwitz_mu0_values
from .scalar import Scalar
from .symmetric import SymLaurent
from .testfcn import (
    LanglandsParamData,
    TestFunction,
    lss_factor,
    phi_chi,
    phi_one_explicit,
    phi_one_sum,
    project_component,
    psi_image_of_phi,
    spectral_scalar,
    trace_frobenius_eval,
)
from .weyl import (
    AffineWeylGroup,
    ExtAffElem,
    OmegaDecomp,
    act_on_vertex,
    bruhat_leq,
    gl,
    length,
    multiply,
    omega_decompose,
    reduced_word,
    tau,
    translation,
)

__all__ = [
    "CocharLattice",
    "CriticalSet",
    "LeviDatum",
    "adm_set",
    "bruhat_vs_S",
    "codim",
    "critical_indices",
    "lattice_Lw",
    "levi_adm",
    "levi_kottwitz",
    "nearby_cycle_numerology",
    "perm_set",
    "strata_poset",
    "CharStabilizer",
    "ChiHeckeElem",
    "DepthZeroChar",
    "TorusGroupAlgebra",
    "delta",
    "delta1",
    "idempotents",
    "psi_inverse",
    "psi_transport",
    "stabilizer",
    "HeckeAlgebra",
    "HeckeElem",
    "hecke_algebra",
    "kottwitz_mu0_values",
    "Scalar",
    "SymLaurent",
    "LanglandsParamData",
    "TestFunction",
    "lss_factor",
    "phi_chi",
    "phi_one_explicit",
    "phi_one_sum",
    "project_component",
    "psi_image_of_phi",
    "spectral_scalar",
    "trace_frobenius_eval",
    "AffineWeylGroup",
    "ExtAffElem",
    "OmegaDecomp",
    "act_on_vertex",
    "bruhat_leq",
    "gl",
    "length",
    "multiply",
    "omega_decompose",
    "reduced_word",
    "tau",
    "translation",
]

__version__ = "0.1.0"
