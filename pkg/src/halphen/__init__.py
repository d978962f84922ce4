"""Quasi-exactly-solvable spectra and exact, polynomial and delta-series
solutions of the radial Brioschi-Halphen operator."""
from .errors import (DegenerateBranchError, DomainError, HalphenError, NoNullVectorError,
                     PoleError, SingularityError, StructuralError)
from .weierstrass import EllipticInvariants, RootTriple, roots_from_invariants, r_to_w
from .algebraization import OperatorSpec, DifferentialOperator, canonical_operator, radial_spec
from .qes import QESSolution, accessory_spectrum, solve_qes, schrodinger_potential
from .distributional import assemble_distribution, verify_fourier_condition

__version__ = "0.1.0"
