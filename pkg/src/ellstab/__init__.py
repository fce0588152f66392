"""Exact numerics for weak stability conditions on elliptic K3 surfaces."""

from .charges import (
    ChargeValue,
    DAxis,
    GeneralRDV,
    KernelClass,
    Origin,
    Phase,
    RayParam,
    Regime,
    RescaledVD,
    Todd,
    ToddSpecial,
    VAxis,
    compare_phase,
    eval_charge,
    limit_phase,
    phase,
    slope,
)
from .divisors import Positivity, RDVCoords, positivity_class, to_rdv
from .fm import CCEInput, CCEOutput, cce_residual, eval_Z0, fm_transform, phi_Z, solve_cce, special_point
from .inequalities import bg_sharp, bg_standard, classify_kernel, hodge_index_check, kernel_sublattice
from .lattice import (
    K3,
    ChernVector,
    DivisorClass,
    DomainError,
    NotK3Error,
    SurfaceParams,
    euler_characteristic,
    twist,
)

__version__ = "0.1.0"
