"""conewalks: exact quarter-plane walk enumeration, discrete and continuous
polyharmonic functions, and the kernel-method identities connecting them."""

from .polynomials import Poly1, Poly2, Rat, rat_from_str, rat_to_str
from .quadext import QuadExt, RatFun1, compose_ratfun
from .lattice import (
    DIAGONAL,
    MODELS,
    SIMPLE,
    TANDEM,
    GridFunction,
    StepModel,
    apply_L,
    apply_P,
    check_harmonic_grid,
    get_model,
    load_model,
    polyharmonic_order,
)
from .counting import (
    CountTable,
    closed_diagonal,
    closed_dyck,
    closed_simple,
    closed_tandem,
    count_dp,
)
from .asymptotics import (
    ExpansionFit,
    alpha,
    bell_alpha,
    bernoulli,
    c_alpha,
    fit_expansion,
    fit_model_expansion,
    h_poly,
    v_diag,
)
from .genfun import (
    GFRat,
    KernelData,
    biharmonic_gf_simple,
    biharmonic_gf_tandem,
    branches_x,
    gf_extract_coeffs,
    gf_verify_coeffs,
    harmonic_gf,
    kernel_poly,
    omega,
    verify_decoupling_tandem,
    verify_omega_invariance,
)
from .continuum import (
    QUADRANT,
    CovMatrix,
    Wedge,
    almansi_decompose,
    bessel_i,
    continuous_laplacian,
    exponent_set,
    f2jj_cartesian,
    heat_kernel,
    heat_kernel_expansion,
    laplace_h,
    laplace_v,
    m_j_eval,
    verify_functional_eqs,
)
from .montecarlo import mc_survival

__version__ = "0.1.0"
