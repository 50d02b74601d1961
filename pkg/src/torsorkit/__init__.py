"""torsorkit: exact structure-constant computer algebra for algebras, Hopf
algebras, torsors, and cotorsors, with full axiom certification.
"""

from .fields import FieldSpec, Scalar, field_arith
from .exactlin import (
    LinearMap,
    SubspaceBasis,
    apply_at,
    compose_maps,
    invert_map,
    kernel_basis,
    permute_legs,
    tensor_product_map,
)
from .algebra import (
    AlgebraMorphism,
    AlgebraPresentation,
    TensorLegsAlgebra,
    character_search,
    derived_algebras,
    multiply_elements,
    verify_algebra,
    verify_algebra_morphism,
)
from .hopf import (
    GroupTable,
    HopfIso,
    HopfPresentation,
    TwistData,
    build_standard_hopf,
    build_twist,
    cyclic_group,
    dual_hopf,
    hopf_iso,
    product_group,
    symmetric_group,
    twist_hopf,
    verify_hopf,
    verify_hopf_morphism,
    verify_twist,
)
from .torsor import (
    SubHopf,
    TorsorPresentation,
    compute_side_hopf,
    derive_theta,
    galois_can,
    make_torsor,
    mu_iter,
    opp_side_iso,
    opposite_torsor,
    verify_coactions,
    verify_torsor,
)
from .compose import (
    ComposedTorsor,
    DecoratedTorsor,
    TorsorMorphism,
    compose_torsors,
    induced_side_isos,
    tor_group_ops,
    tor_inverse,
    tor_multiply,
    tor_unit,
    torsor_morphism_check,
    verify_equivalence_witness,
)
from .cotorsor import (
    CoalgebraPresentation,
    CotorsorPresentation,
    dualize,
    parmentier_cotorsor,
    verify_cotorsor,
)
from .gallery import (
    build_cyclic_algebra_torsor,
    build_from_recipe,
    build_galois_torsor,
    build_quadratic_torsor,
    build_trivial_torsor,
    registry_build,
    registry_names,
)
from .report import Check, Report

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
