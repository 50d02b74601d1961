from fractions import Fraction

import pytest

from torsorkit.algebra import (
    AlgebraMorphism,
    AlgebraPresentation,
    TensorLegsAlgebra,
    character_search,
    derived_algebras,
    multiply_elements,
    verify_algebra,
    verify_algebra_morphism,
)
from torsorkit.errors import NotInvertible, SearchSpaceTooLarge
from torsorkit.exactlin import LinearMap
from torsorkit.fields import FieldSpec
from torsorkit.gallery import poly_quotient_algebra, registry_build
from torsorkit.hopf import build_standard_hopf, cyclic_group, product_group


def sqrt2_algebra(Q):
    return poly_quotient_algebra(Q, [Q.from_int(-2), Q.zero, Q.one], "x")


def test_sqrt2_algebra_passes(Q):
    assert verify_algebra(sqrt2_algebra(Q)).ok


def test_quaternion_algebra_passes():
    assert verify_algebra(registry_build("quaternion").algebra).ok


def test_perturbed_quaternions_fail():
    quat = registry_build("quaternion").algebra
    Q = quat.field
    ix = quat.basis_labels.index("x")
    entries = [(t, s, v) for t, s, v in quat.mul.entries_sorted()]
    entries.append((((ix,), (ix, ix), Q.one)))
    broken = AlgebraPresentation(
        Q, quat.dim, quat.basis_labels,
        LinearMap.from_entries(Q, quat.dim, 2, 1, entries), dict(quat.unit))
    report = verify_algebra(broken)
    assert not report.ok
    failing = report.first_failure()
    assert "associativity" in failing.name
    assert failing.witness is not None


def test_multiply_x_squared_is_minus_one():
    t = registry_build("quaternion")
    alg = t.algebra
    Q = alg.field
    x = alg.basis_vec(alg.basis_labels.index("x"))
    assert multiply_elements(alg, "product", x, x) == {(0,): Q.from_int(-1)}


def test_inverse_in_sqrt2(Q):
    alg = sqrt2_algebra(Q)
    x = alg.basis_vec(1)
    inv = multiply_elements(alg, "inverse", x)
    assert inv == {(1,): Fraction(1, 2)}
    assert alg.mul_elements(inv, x) == alg.unit
    assert alg.mul_elements(x, inv) == alg.unit


def test_inverse_of_zero_not_invertible(Q):
    alg = sqrt2_algebra(Q)
    with pytest.raises(NotInvertible):
        multiply_elements(alg, "inverse", {})


def test_opposite_of_commutative_is_same(Q):
    alg = sqrt2_algebra(Q)
    assert derived_algebras(alg, "opposite").tables_equal(alg)


def test_opposite_of_quaternions_flips_skew_pairs():
    alg = registry_build("quaternion").algebra
    op = derived_algebras(alg, "opposite")
    ix = alg.basis_labels.index("x")
    iy = alg.basis_labels.index("y")
    assert op.mul.column((ix, iy)) == alg.mul.column((iy, ix))
    assert verify_algebra(op).ok


def test_opposite_is_involution():
    alg = registry_build("quaternion").algebra
    assert derived_algebras(derived_algebras(alg, "opposite"), "opposite").tables_equal(alg)


def test_tensor_of_group_algebras(Q):
    kz2 = build_standard_hopf("group_algebra", cyclic_group(2), Q).algebra
    t = derived_algebras(kz2, "tensor", kz2)
    assert t.dim == 4
    assert t.unit == {(0,): Q.one}
    assert verify_algebra(t).ok


def test_identity_morphism_passes(Q):
    alg = sqrt2_algebra(Q)
    f = AlgebraMorphism(alg, alg, LinearMap.identity(Q, 2))
    assert verify_algebra_morphism(f).ok


def test_mu_is_algebra_morphism_into_three_legs():
    t = registry_build("quaternion")
    target = TensorLegsAlgebra(((t.algebra, False), (t.algebra, True),
                                (t.algebra, False)))
    rep = verify_algebra_morphism(AlgebraMorphism(t.algebra, target, t.mu))
    assert rep.ok


def test_collapse_map_fails_multiplicativity(Q):
    alg = sqrt2_algebra(Q)
    to_one = LinearMap.from_cols(Q, 2, 1, 1,
                                 {(0,): {(0,): Q.one}, (1,): {(0,): Q.one}})
    rep = verify_algebra_morphism(AlgebraMorphism(alg, alg, to_one))
    fail = rep.first_failure()
    assert fail is not None and "multiplicativity" in fail.name
    assert "x,x" in fail.witness


def test_character_witness_rejected_on_sqrt2(Q):
    alg = sqrt2_algebra(Q)
    res = character_search(alg, "verify", witness=[Q.one, Q.zero])
    assert res.status == "rejected"


def test_character_witness_accepted_on_group_algebra(Q):
    alg = build_standard_hopf("group_algebra", cyclic_group(2), Q).algebra
    res = character_search(alg, "verify", witness=[Q.one, Q.one])
    assert res.status == "accepted"


def test_quaternions_have_no_character():
    alg = registry_build("quaternion").algebra
    res = character_search(alg, "exhaustive_fp")
    assert res.status == "none"
    assert "commutator ideal" in res.detail


def test_sqrt2_obstruction_is_inconclusive(Q):
    res = character_search(sqrt2_algebra(Q), "exhaustive_fp")
    assert res.status == "unknown"


def test_exhaustive_character_counts(F5):
    fn2 = build_standard_hopf("function_algebra", cyclic_group(2), F5).algebra
    res = character_search(fn2, "exhaustive_fp")
    assert res.status == "found" and len(res.characters) == 2
    g22 = product_group(cyclic_group(2), cyclic_group(2))
    fn4 = build_standard_hopf("function_algebra", g22, F5).algebra
    res = character_search(fn4, "exhaustive_fp")
    assert res.status == "found" and len(res.characters) == 4


def test_search_space_guard():
    F101 = FieldSpec.prime(101)
    alg = build_standard_hopf("function_algebra", cyclic_group(4), F101).algebra
    with pytest.raises(SearchSpaceTooLarge):
        character_search(alg, "exhaustive_fp")


def test_gallery_algebras_all_pass():
    from torsorkit.gallery import registry_names
    for name in registry_names():
        assert verify_algebra(registry_build(name).algebra).ok, name
