"""Named equations, closed-form solutions, parameter maps and the verification registry."""

from .deg2 import (
    Case2Family,
    Deg2Family,
    Deg2Nonhom,
    case2_bilateral,
    case2_eq,
    case2_solution,
    case2_z_eq,
    deg2_bilateral,
    deg2_eq,
    deg2_param_map,
    deg2_solution,
    intro_constants,
    variant_to_case2,
)
from .deg3 import (
    Alpha3Family,
    Deg3Family,
    Deg3Nonhom,
    alpha3_bilateral,
    alpha3_eq,
    alpha3_fourth_order,
    alpha3_solution,
    deg3_bilateral,
    deg3_eq,
    deg3_param_map,
    deg3_solution,
)
from .jp import (
    P_DEG3,
    P_MU0_SELECT,
    P_RESONANT_L,
    P_RESONANT_L_INV,
    Mu0Family,
    jp_convolution,
    jp_system,
    mu0_eq,
    mu0_solution,
    third_order_eq,
)
from .params import Deg2Params, Deg3Params, JPParams, QHGParams
from .qhg import QHGFamily, qhg_solution, qhg_system, qhg_y0_eq, std_qhg_eq
