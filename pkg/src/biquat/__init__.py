"""Exact biquaternionic calculus and its verification suite."""

from ._scalars import QQi
from .algebra import (
    BASIS,
    Biquaternion,
    E0,
    E0_TILDE,
    E1,
    E2,
    E3,
    FracLinear,
    SemiInt,
    SymPowerRep,
    epsilon_deform,
    semi_range,
    t_coeff,
    tau_n,
)
from .matcoef import (
    BasisElement,
    KernelExpansion,
    MatCoeffIndex,
    basis,
    check_derivative_identities,
    check_multiplication_identities,
    expand_kernel,
)
from .cycles import (
    Cycle,
    FormValue,
    QuadratureResult,
    build_cycle,
    eval_Dz,
    exact_sphere_integral,
    integrate_3form,
    integrate_U2,
)
from .reporting import VerificationReport
from .calculus import (
    GaugeField,
    RationalFn,
    SpinorFn,
    act,
    act_lie,
    act_pointwise,
    act_two_var,
    apply_operator,
    casimir,
    dy,
    gauge_complex_composites,
    is_regular,
    maxwell_residuals,
    scalar_from_y_poly,
    spinor_pairing,
    tau_fn,
    tau_numpy,
    y_component,
)

__all__ = [
    "QQi",
    "Biquaternion",
    "SemiInt",
    "FracLinear",
    "SymPowerRep",
    "BASIS",
    "E0",
    "E1",
    "E2",
    "E3",
    "E0_TILDE",
    "epsilon_deform",
    "semi_range",
    "t_coeff",
    "tau_n",
    "RationalFn",
    "SpinorFn",
    "GaugeField",
    "apply_operator",
    "is_regular",
    "act",
    "act_pointwise",
    "act_two_var",
    "act_lie",
    "casimir",
    "tau_fn",
    "tau_numpy",
    "spinor_pairing",
    "scalar_from_y_poly",
    "dy",
    "y_component",
    "maxwell_residuals",
    "gauge_complex_composites",
    "Cycle",
    "FormValue",
    "QuadratureResult",
    "build_cycle",
    "eval_Dz",
    "exact_sphere_integral",
    "integrate_3form",
    "integrate_U2",
    "MatCoeffIndex",
    "BasisElement",
    "KernelExpansion",
    "VerificationReport",
    "basis",
    "check_derivative_identities",
    "check_multiplication_identities",
    "expand_kernel",
]

__version__ = "0.1.0"
