"""Independent numerical oracles for the closed-form integrals."""

from .boundary import BOUNDARY_INTEGRALS, quad_boundary
from .disc import DISC_INTEGRALS, quad_disc, quad_J1, residue_from_reduction
from .montecarlo import choose_proposal, complex_convergent, mc_dotsenko_fateev
from .residue import DEFAULT_OFFSETS, ProbeReport, ResidueFit, regularity_probe, residue_extrapolate
from .rules import QuadResult, integrate_box, integrate_endpoint
from .selberg import quad_selberg21, quad_selberg22

__all__ = [
    "BOUNDARY_INTEGRALS",
    "DEFAULT_OFFSETS",
    "DISC_INTEGRALS",
    "ProbeReport",
    "QuadResult",
    "ResidueFit",
    "choose_proposal",
    "complex_convergent",
    "integrate_box",
    "integrate_endpoint",
    "mc_dotsenko_fateev",
    "quad_J1",
    "quad_boundary",
    "quad_disc",
    "quad_selberg21",
    "quad_selberg22",
    "regularity_probe",
    "residue_extrapolate",
    "residue_from_reduction",
]
