"""Builders for the worked torsor examples and the built-in registry.

Each builder assembles structure constants from its parameters; nothing is
trusted, the caller (and the test suite) re-verifies every output through
the generic axiom suites.
"""
from __future__ import annotations

import functools
import itertools

from .algebra import AlgebraPresentation, TensorLegsAlgebra
from .errors import (
    AlphaBetaZero,
    BadCharacteristic,
    DNotInvertible,
    HopfInvalid,
    NotGaloisAction,
    NotSeparable,
    ParseError,
    QNotPrimitive,
    ShapeError,
)
from .exactlin import LinearMap, Vec, apply_at, vec_add, vec_scale, vec_tensor
from .fields import FieldSpec
from .hopf import (
    HopfPresentation,
    build_standard_hopf,
    cyclic_group,
    product_group,
    symmetric_group,
    verify_hopf,
)
from .torsor import TorsorPresentation, make_torsor


# ---------------------------------------------------------------------------
# trivial torsor of a Hopf algebra
# ---------------------------------------------------------------------------


def build_trivial_torsor(h: HopfPresentation) -> TorsorPresentation:
    """Law (Id⊗S⊗Id)∘(comul⊗Id)∘comul, automorphism S²."""
    rep = verify_hopf(h)
    if not rep.ok:
        raise HopfInvalid("host fails the Hopf axioms at %r"
                          % rep.first_failure().name)
    field = h.field
    n = h.dim
    cols = {}
    for i in range(n):
        d2 = apply_at(h.comul, h.comul.column((i,)), 0)
        img = apply_at(h.antipode, d2, 1)
        if img:
            cols[(i,)] = img
    mu = LinearMap(field, n, 1, 3, cols)
    theta = h.antipode.compose(h.antipode)
    return TorsorPresentation(h.algebra, mu, theta)


# ---------------------------------------------------------------------------
# polynomial quotient algebras and their automorphisms
# ---------------------------------------------------------------------------


def _poly_trim(field, coeffs):
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _poly_mul(field, a, b):
    if not a or not b:
        return []
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            out[i + j] = field.add(out[i + j], field.mul(ca, cb))
    return _poly_trim(field, out)


def _poly_mod(field, a, p):
    a = list(a)
    deg_p = len(p) - 1
    lead_inv = field.inv(p[-1])
    while len(a) > deg_p:
        c = field.mul(a[-1], lead_inv)
        shift = len(a) - 1 - deg_p
        for i, cp in enumerate(p):
            a[shift + i] = field.sub(a[shift + i], field.mul(c, cp))
        a = _poly_trim(field, a)
        if not a:
            break
    return a


def _poly_deriv(field, a):
    return _poly_trim(field, [field.mul(field.from_int(i), a[i])
                              for i in range(1, len(a))])


def _poly_gcd(field, a, b):
    a, b = _poly_trim(field, a), _poly_trim(field, b)
    while b:
        a, b = b, _poly_mod(field, a, b)
    return a


def poly_quotient_algebra(field: FieldSpec, coeffs, var: str = "t") -> AlgebraPresentation:
    """k[X]/(P) with the power basis 1, t, ..., t^{deg-1}; P must be monic."""
    coeffs = _poly_trim(field, list(coeffs))
    if len(coeffs) < 2:
        raise ShapeError("polynomial must have degree at least 1")
    if coeffs[-1] != field.one:
        raise ShapeError("polynomial must be monic")
    d = len(coeffs) - 1
    labels = tuple("1" if i == 0 else (var if i == 1 else "%s^%d" % (var, i))
                   for i in range(d))
    cols = {}
    for i, j in itertools.product(range(d), repeat=2):
        prod = [field.zero] * (i + j) + [field.one]
        prod = _poly_mod(field, prod, coeffs)
        col = {(k,): c for k, c in enumerate(prod) if c}
        if col:
            cols[(i, j)] = col
    mul = LinearMap(field, d, 2, 1, cols)
    return AlgebraPresentation(field, d, labels, mul, {(0,): field.one})


def _poly_power_mod(field, base, k, p):
    out = [field.one]
    for _ in range(k):
        out = _poly_mod(field, _poly_mul(field, out, base), p)
    return out


def _action_matrix(field, image_poly, p, dim) -> LinearMap:
    """Algebra endomorphism t^i -> image(t)^i mod p as a matrix."""
    cols = {}
    for i in range(dim):
        img = _poly_power_mod(field, image_poly, i, p)
        col = {(k,): c for k, c in enumerate(img) if c}
        if col:
            cols[(i,)] = col
    return LinearMap(field, dim, 1, 1, cols)


# ---------------------------------------------------------------------------
# quadratic torsors
# ---------------------------------------------------------------------------


def build_quadratic_torsor(field: FieldSpec, d, variant: str = "sqrt") -> TorsorPresentation:
    """Rank-2 torsors: the square-root law or the additive law in
    characteristic two."""
    one = field.one
    if variant == "sqrt":
        if field.characteristic == 2:
            raise BadCharacteristic("square-root law needs characteristic != 2")
        if not d:
            raise DNotInvertible("parameter d must be invertible")
        alg = poly_quotient_algebra(field, [field.neg(d), field.zero, one], "x")
        d_inv = field.inv(d)
        cols = {
            (0,): {(0, 0, 0): one},
            (1,): {(1, 1, 1): d_inv},
        }
        mu = LinearMap(field, 2, 1, 3, cols)
    elif variant == "artin_schreier":
        if field.characteristic != 2:
            raise BadCharacteristic("additive law needs characteristic 2")
        alg = poly_quotient_algebra(
            field, [field.neg(d), field.neg(one), one], "x")
        cols = {
            (0,): {(0, 0, 0): one},
            (1,): {(0, 0, 1): one, (0, 1, 0): one, (1, 0, 0): one},
        }
        mu = LinearMap(field, 2, 1, 3, cols)
    else:
        raise ShapeError("unknown quadratic variant %r" % (variant,))
    theta = LinearMap.identity(field, 2)
    return TorsorPresentation(alg, mu, theta)


# ---------------------------------------------------------------------------
# Galois-extension torsors
# ---------------------------------------------------------------------------


def _galois_data(field: FieldSpec, poly_coeffs, action_polys):
    """Validate the action and compute the interpolation idempotents."""
    coeffs = _poly_trim(field, list(poly_coeffs))
    alg = poly_quotient_algebra(field, coeffs)
    d = alg.dim
    deriv = _poly_deriv(field, coeffs)
    if len(_poly_gcd(field, coeffs, deriv)) != 1:
        raise NotSeparable("defining polynomial has a repeated root")

    actions = [
        _poly_mod(field, _poly_trim(field, list(a)), coeffs) for a in action_polys
    ]
    if len(actions) != d:
        raise NotGaloisAction("need exactly deg P = %d automorphisms, got %d"
                              % (d, len(actions)))
    mats = [_action_matrix(field, a, coeffs, d) for a in actions]
    keys = [tuple(m.entries_sorted()) for m in mats]
    if len(set(keys)) != d:
        raise NotGaloisAction("automorphisms are not pairwise distinct")
    from .algebra import AlgebraMorphism, verify_algebra_morphism
    for a, m in zip(actions, mats):
        if not verify_algebra_morphism(AlgebraMorphism(alg, alg, m)).ok:
            raise NotGaloisAction("image %r does not define an automorphism" % (a,))
    key_set = set(keys)
    for m1, m2 in itertools.product(mats, repeat=2):
        if tuple(m1.compose(m2).entries_sorted()) not in key_set:
            raise NotGaloisAction("supplied set is not closed under composition")
    if tuple(LinearMap.identity(field, d).entries_sorted()) not in key_set:
        raise NotGaloisAction("identity automorphism is missing")

    two = TensorLegsAlgebra(((alg, False), (alg, False)))
    t1 = vec_tensor(field, alg.basis_vec(1), alg.basis_vec(0))
    one_one = two.unit_vec()
    t_vec = alg.basis_vec(1)
    idempotents = []
    for s_idx, mat_s in enumerate(mats):
        p_sigma = dict(one_one)
        for t_idx, mat_t in enumerate(mats):
            if t_idx == s_idx:
                continue
            tau_t = mat_t.apply(t_vec)
            sig_t = mat_s.apply(t_vec)
            num = vec_add(field, t1,
                          vec_scale(field, field.neg(field.one),
                                    vec_tensor(field, alg.unit, tau_t)))
            diff = vec_add(field, sig_t,
                           vec_scale(field, field.neg(field.one), tau_t))
            try:
                diff_inv = alg.element_inverse(diff)
            except Exception as exc:
                raise NotGaloisAction(
                    "difference of automorphism images is not invertible") from exc
            p_sigma = two.mul(p_sigma,
                              two.mul(num, vec_tensor(field, alg.unit, diff_inv)))
        idempotents.append(p_sigma)

    total = {}
    for p in idempotents:
        total = vec_add(field, total, p)
    if total != one_one:
        raise NotGaloisAction("interpolation idempotents do not sum to 1⊗1")
    return alg, mats, idempotents


def build_galois_torsor(field: FieldSpec, poly_coeffs, action_polys) -> TorsorPresentation:
    """Separable splitting-style torsor from user-supplied automorphisms.

    ``action_polys`` lists, for each group element, the image of ``t`` as a
    coefficient list.  The set must be a group of distinct algebra
    automorphisms of size ``deg P``; the law is assembled through the
    standard interpolation idempotents inside K⊗K.
    """
    alg, mats, idempotents = _galois_data(field, poly_coeffs, action_polys)
    cols = {}
    for i in range(alg.dim):
        img: Vec = {}
        for p_sigma, mat_s in zip(idempotents, mats):
            img = vec_add(field, img,
                          vec_tensor(field, p_sigma,
                                     mat_s.apply(alg.basis_vec(i))))
        if img:
            cols[(i,)] = img
    mu = LinearMap(field, alg.dim, 1, 3, cols)
    theta = LinearMap.identity(field, alg.dim)
    return TorsorPresentation(alg, mu, theta)


def galois_idempotents(field: FieldSpec, poly_coeffs, action_polys):
    """The torsor together with its interpolation idempotent system."""
    alg, mats, idempotents = _galois_data(field, poly_coeffs, action_polys)
    torsor = build_galois_torsor(field, poly_coeffs, action_polys)
    return torsor, idempotents


# ---------------------------------------------------------------------------
# cyclic-algebra torsors
# ---------------------------------------------------------------------------


def build_cyclic_algebra_torsor(field: FieldSpec, n: int, q, alpha, beta) -> TorsorPresentation:
    """The n²-dimensional two-generator torsor with relations
    x^n = alpha, y^n = beta, xy = q·yx and the group-like style law."""
    if not alpha or not beta:
        raise AlphaBetaZero("alpha and beta must be nonzero")
    if not q or field.pow(q, n) != field.one:
        raise QNotPrimitive("q^%d must equal 1" % n)
    for m in range(1, n):
        if field.pow(q, m) == field.one:
            raise QNotPrimitive("q has order %d < %d" % (m, n))

    dim = n * n
    one = field.one

    def flat(i, j):
        return i * n + j

    def label(i, j):
        if i == 0 and j == 0:
            return "1"
        part_x = "" if i == 0 else ("x" if i == 1 else "x^%d" % i)
        part_y = "" if j == 0 else ("y" if j == 1 else "y^%d" % j)
        return part_x + part_y

    labels = tuple(label(i, j) for i in range(n) for j in range(n))
    cols = {}
    for i, j, k, l in itertools.product(range(n), repeat=4):
        coef = field.pow(q, j * k)
        if (i + k) >= n:
            coef = field.mul(coef, alpha)
        if (j + l) >= n:
            coef = field.mul(coef, beta)
        cols[(flat(i, j), flat(k, l))] = {(flat((i + k) % n, (j + l) % n),): coef}
    mul = LinearMap(field, dim, 2, 1, cols)
    alg = AlgebraPresentation(field, dim, labels, mul, {(0,): one})

    three = TensorLegsAlgebra(((alg, False), (alg, True), (alg, False)))
    x = alg.basis_vec(flat(1, 0))
    y = alg.basis_vec(flat(0, 1))
    x_inv = alg.element_inverse(x)
    y_inv = alg.element_inverse(y)
    mu_x = vec_tensor(field, x, vec_tensor(field, x_inv, x))
    mu_y = vec_tensor(field, y, vec_tensor(field, y_inv, y))

    mu_cols = {}
    for i, j in itertools.product(range(n), repeat=2):
        img = three.unit_vec()
        for _ in range(i):
            img = three.mul(img, mu_x)
        for _ in range(j):
            img = three.mul(img, mu_y)
        mu_cols[(flat(i, j),)] = img
    mu = LinearMap(field, dim, 1, 3, mu_cols)
    theta = LinearMap.identity(field, dim)
    return TorsorPresentation(alg, mu, theta)


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------


def _f2():
    return FieldSpec.prime(2)


@functools.lru_cache(maxsize=None)
def registry_build(name: str) -> TorsorPresentation:
    q = FieldSpec.rationals()
    builders = {
        "trivial-z2": lambda: build_trivial_torsor(
            build_standard_hopf("group_algebra", cyclic_group(2), q)),
        "trivial-z3": lambda: build_trivial_torsor(
            build_standard_hopf("group_algebra", cyclic_group(3), q)),
        "trivial-s3": lambda: build_trivial_torsor(
            build_standard_hopf("group_algebra", symmetric_group(3), q)),
        "trivial-fn-z2": lambda: build_trivial_torsor(
            build_standard_hopf("function_algebra", cyclic_group(2), q)),
        "quadratic-q-d2": lambda: build_quadratic_torsor(q, q.from_int(2)),
        "artin-schreier-f4": lambda: build_quadratic_torsor(
            _f2(), _f2().from_int(1), "artin_schreier"),
        "galois-q-sqrt2": lambda: build_galois_torsor(
            q, [q.from_int(-2), q.zero, q.one],
            [[q.zero, q.one], [q.zero, q.from_int(-1)]]),
        "quaternion": lambda: build_cyclic_algebra_torsor(
            q, 2, q.from_int(-1), q.from_int(-1), q.from_int(-1)),
        "cyclic-f7-n3": lambda: build_cyclic_algebra_torsor(
            FieldSpec.prime(7), 3, 2, 1, 1),
    }
    if name not in builders:
        raise ParseError("unknown registry entry %r" % (name,))
    return builders[name]()


def registry_names():
    return (
        "trivial-z2",
        "trivial-z3",
        "trivial-s3",
        "trivial-fn-z2",
        "quadratic-q-d2",
        "artin-schreier-f4",
        "galois-q-sqrt2",
        "quaternion",
        "cyclic-f7-n3",
    )


def parse_field_token(token: str) -> FieldSpec:
    token = token.strip()
    if token in ("Q", "q"):
        return FieldSpec.rationals()
    if token.lower().startswith("f"):
        try:
            return FieldSpec.prime(int(token[1:]))
        except ValueError as exc:
            raise ParseError("bad field token %r" % token) from exc
    raise ParseError("bad field token %r" % token)


def build_from_recipe(recipe: str, hopf_loader=None, galois_loader=None) -> TorsorPresentation:
    """Recipes: registry names, ``trivial:<hopf-file>``, ``quadratic:<field>:<d>``,
    ``galois:<file>``, ``cyclic:<field>:<n>:<q>:<alpha>:<beta>``."""
    if recipe in registry_names():
        return registry_build(recipe)
    head, _, rest = recipe.partition(":")
    if head == "trivial":
        if hopf_loader is None:
            raise ParseError("trivial recipe needs a Hopf file loader")
        return build_trivial_torsor(hopf_loader(rest))
    if head == "quadratic":
        try:
            ftok, dtok = rest.split(":")
        except ValueError as exc:
            raise ParseError("quadratic recipe wants quadratic:<field>:<d>") from exc
        field = parse_field_token(ftok)
        variant = "artin_schreier" if field.characteristic == 2 else "sqrt"
        return build_quadratic_torsor(field, field.parse(dtok), variant)
    if head == "galois":
        if galois_loader is None:
            raise ParseError("galois recipe needs a recipe file loader")
        field, coeffs, actions = galois_loader(rest)
        return build_galois_torsor(field, coeffs, actions)
    if head == "cyclic":
        try:
            ftok, ntok, qtok, atok, btok = rest.split(":")
        except ValueError as exc:
            raise ParseError(
                "cyclic recipe wants cyclic:<field>:<n>:<q>:<alpha>:<beta>") from exc
        field = parse_field_token(ftok)
        return build_cyclic_algebra_torsor(field, int(ntok), field.parse(qtok),
                                           field.parse(atok), field.parse(btok))
    raise ParseError("unknown gallery recipe %r" % (recipe,))
