"""Star-algebra, k-th star-powers and k-th star-roots of quaternionic slice functions.

Computations happen on stems: four complex polynomials read as one
complexified quaternion valued function of a complex variable.
"""
from ._kernels import BACKEND
from .complexified import CImUnit, CQuat, Stratum, StratumTag, classify_stratum, cmul, phi_q, project_pi
from .continuation import (
    DomainPath,
    GlobalRoot,
    MonodromyElement,
    apply_aut,
    global_roots_no_real,
    global_roots_with_real,
    lift_path,
    monodromy_of_loop,
    stem_correction,
    t_class,
    t_involution,
    verify_group_table,
)
from .errors import StarRootsError
from .power_map import PowerTables, p_pair, power_tables, q_poly_roots, sigma_k, sigma_k_jacobian_det
from .quaternion import ImUnit, Quaternion, qmul, quat_kth_roots
from .root_solver import RhoLift, RootBranch, cayley, cayley_inverse, point_star_roots, rho_lift
from .slice_function import (
    Domain,
    SingularityVerdict,
    StemPoly,
    StemSampled,
    classify_differential,
    eval_slice,
    peirce_parts,
    phi_multiplicity,
    star_conj,
    star_power,
    star_product,
    symmetrization,
)

__version__ = "0.1.0"
