from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from torsorkit.errors import (
    ArityMismatch,
    BadPermutation,
    DivisionByZero,
    LegCapExceeded,
    ModulusMismatch,
    ParseError,
    Singular,
)
from torsorkit.exactlin import (
    LinearMap,
    apply_at,
    compose_maps,
    invert_map,
    kernel_basis,
    permute_legs,
    tensor_product_map,
    vec_permute,
)
from torsorkit.fields import FieldSpec, Scalar, field_arith


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------


def test_add_fractions(Q):
    got = field_arith("add", Scalar.parse(Q, "1/2"), Scalar.parse(Q, "1/3"))
    assert got.value == Fraction(5, 6)
    assert str(got) == "5/6"


def test_mul_mod_seven(F7):
    got = field_arith("mul", Scalar.of(F7, 3), Scalar.of(F7, 5))
    assert got.value == 1


def test_inv_zero_raises(Q):
    with pytest.raises(DivisionByZero):
        field_arith("inv", Scalar.of(Q, 0))


def test_parse_print_roundtrip(Q, F7):
    for text in ["5/6", "-7/3", "4", "0", "-1"]:
        assert Q.format(Q.parse(text)) == text
    for text in ["0", "3", "6"]:
        assert F7.format(F7.parse(text)) == text
    assert F7.parse("-1") == 6
    assert F7.parse("3/4") == F7.div(3, 4)
    with pytest.raises(ParseError):
        Q.parse("two")
    with pytest.raises(DivisionByZero):
        Q.parse("1/0")


def test_mixed_fields_rejected(Q, F7):
    with pytest.raises(ModulusMismatch):
        field_arith("add", Scalar.of(Q, 1), Scalar.of(F7, 1))


small_fractions = st.fractions(min_value=-50, max_value=50, max_denominator=50)


@given(a=small_fractions, b=small_fractions, c=small_fractions)
def test_rational_field_laws(a, b, c):
    Q = FieldSpec.rationals()
    assert Q.add(a, b) == Q.add(b, a)
    assert Q.mul(a, Q.add(b, c)) == Q.add(Q.mul(a, b), Q.mul(a, c))
    if a:
        assert Q.mul(a, Q.inv(a)) == Q.one


@given(a=st.integers(0, 6), b=st.integers(0, 6))
def test_prime_field_laws(a, b):
    F7 = FieldSpec.prime(7)
    assert F7.add(a, b) == (a + b) % 7
    if a:
        assert F7.mul(a, F7.inv(a)) == 1


# ---------------------------------------------------------------------------
# composition and tensor product
# ---------------------------------------------------------------------------


def _sample_map(Q):
    return LinearMap.from_entries(Q, 2, 1, 1, [
        ((0,), (0,), Q.parse("2")),
        ((1,), (0,), Q.one),
        ((0,), (1,), Q.parse("-1")),
    ])


def test_compose_identity_laws(Q):
    f = _sample_map(Q)
    ident = LinearMap.identity(Q, 2)
    assert compose_maps(ident, f) == f
    assert compose_maps(f, ident) == f


def test_compose_counit_unit_is_scalar_one(Q):
    from torsorkit.hopf import build_standard_hopf, cyclic_group
    h = build_standard_hopf("group_algebra", cyclic_group(2), Q)
    eta = LinearMap.from_cols(Q, 2, 0, 1, {(): dict(h.algebra.unit)})
    got = compose_maps(h.counit, eta)
    assert got.cols == {(): {(): Q.one}}


def test_compose_arity_mismatch(Q):
    f = _sample_map(Q)
    g = LinearMap.identity(Q, 2, 2)
    with pytest.raises(ArityMismatch):
        compose_maps(f, g)


def test_tensor_identity_is_identity_on_pairs(Q):
    ident = LinearMap.identity(Q, 2)
    assert tensor_product_map(ident, ident) == LinearMap.identity(Q, 2, 2)


def test_tensor_defining_property(Q):
    f = _sample_map(Q)
    g = LinearMap.from_entries(Q, 2, 1, 1, [((1,), (0,), Q.one),
                                            ((0,), (1,), Q.one)])
    fg = tensor_product_map(f, g)
    for u in range(2):
        for v in range(2):
            got = fg.apply({(u, v): Q.one})
            expect = {}
            for (a,), x in f.apply({(u,): Q.one}).items():
                for (b,), y in g.apply({(v,): Q.one}).items():
                    expect[(a, b)] = Q.mul(x, y)
            assert got == expect


def test_tensor_mu_with_identity_shape():
    from torsorkit.gallery import registry_build
    t = registry_build("quaternion")
    m = tensor_product_map(t.mu, LinearMap.identity(t.field, t.dim))
    assert (m.source_arity, m.target_arity) == (2, 4)


def test_leg_cap_enforced(Q):
    with pytest.raises(LegCapExceeded):
        LinearMap.zero(Q, 2, 3, 5)


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------


def test_tau13_is_involution(Q):
    v = {(0, 1, 0): Q.one, (1, 1, 0): Q.parse("2")}
    assert vec_permute(vec_permute(v, (2, 1, 0)), (2, 1, 0)) == v


def test_tau13_defining_action():
    F3 = FieldSpec.prime(3)
    v = {(0, 1, 2): F3.one}
    assert permute_legs(v, (2, 1, 0)) == {(2, 1, 0): F3.one}


def test_quaternion_law_is_symmetric():
    from torsorkit.gallery import registry_build
    t = registry_build("quaternion")
    assert t.mu_op() == t.mu


def test_bad_permutation(Q):
    with pytest.raises(BadPermutation):
        permute_legs({(0, 1): Q.one}, (0, 0))


@given(st.permutations(list(range(3))))
def test_permute_then_inverse_is_identity(perm):
    Q = FieldSpec.rationals()
    v = {(0, 1, 0): Q.one, (1, 0, 1): Q.parse("3"), (1, 1, 1): Q.parse("-2")}
    perm = tuple(perm)
    inverse = tuple(perm.index(i) for i in range(3))
    assert vec_permute(vec_permute(v, perm), inverse) == v


# ---------------------------------------------------------------------------
# kernels and inverses
# ---------------------------------------------------------------------------


def test_kernel_of_zero_map_is_everything(Q):
    z = LinearMap.zero(Q, 2, 2, 1)
    kb = kernel_basis(z)
    assert kb.dim == 4
    assert kb.pivots == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_kernel_of_identity_is_empty(Q):
    kb = kernel_basis(LinearMap.identity(Q, 3))
    assert kb.dim == 0


def test_kernel_of_quaternion_side_constraint_has_dim_four():
    from torsorkit.gallery import registry_build
    from torsorkit.torsor import side_constraint_map
    t = registry_build("quaternion")
    kb = kernel_basis(side_constraint_map(t, "left"))
    assert kb.dim == 4


def test_invert_identity(Q):
    ident = LinearMap.identity(Q, 3)
    assert invert_map(ident) == ident


def test_invert_canonical_map_of_trivial_torsor():
    from torsorkit.gallery import registry_build
    from torsorkit.torsor import galois_can
    result = galois_can(registry_build("trivial-z2"), "left")
    assert result.can_inverse is not None
    assert (result.can.base_dim, result.can.source_arity) == (2, 2)
    ident = LinearMap.identity(result.can.field, 2, 2)
    assert compose_maps(result.can, result.can_inverse) == ident
    assert compose_maps(result.can_inverse, result.can) == ident


def test_invert_zero_map_reports_full_kernel(Q):
    with pytest.raises(Singular) as exc:
        invert_map(LinearMap.zero(Q, 2, 1, 1))
    assert exc.value.kernel_dim == 2


def test_kernel_closure_property(F5):
    # kernel vectors are actual solutions, checked entrywise
    f = LinearMap.from_entries(F5, 3, 2, 1, [
        ((0,), (0, 1), 1), ((0,), (1, 0), 4),
        ((1,), (2, 2), 2), ((2,), (0, 0), 3),
    ])
    kb = kernel_basis(f)
    for vec in kb.vectors:
        assert f.apply(vec) == {}
    assert kb.dim == 9 - 3


@given(st.integers(0, 4), st.data())
def test_random_kernel_members_are_solutions(seed, data):
    F5 = FieldSpec.prime(5)
    entries = []
    n, s, t = 2, 2, 1
    for tgt in range(n):
        for a in range(n):
            for b in range(n):
                val = data.draw(st.integers(0, 4))
                if val:
                    entries.append((((tgt,), (a, b), val)))
    f = LinearMap.from_entries(F5, n, s, t, entries)
    kb = kernel_basis(f)
    for vec in kb.vectors:
        assert f.apply(vec) == {}
    # rank-nullity
    rows = {}
    for src, col in f.cols.items():
        for tgt_idx, v in col.items():
            rows.setdefault(tgt_idx, {})[src] = v
    from torsorkit.exactlin import rref
    reduced, _ = rref(F5, rows.values())
    assert kb.dim == 4 - len(reduced)


def test_apply_at_matches_tensor_with_identity(Q):
    f = _sample_map(Q)
    ident = LinearMap.identity(Q, 2)
    big = tensor_product_map(ident, tensor_product_map(f, ident))
    v = {(0, 0, 1): Q.one, (1, 1, 0): Q.parse("5")}
    assert apply_at(f, v, 1) == big.apply(v)


def test_transpose_involution(Q):
    f = _sample_map(Q)
    assert f.transpose().transpose() == f
