"""Finite-dimensional unital associative algebras given by structure constants.

An :class:`AlgebraPresentation` stores the multiplication as a 2->1 linear
map together with the unit vector.  Verification loops over all basis tuples
and compares exact tensors, so a passing report is a proof for the given
tables.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    NotInvertible,
    SearchSpaceTooLarge,
    ShapeError,
    Singular,
)
from .exactlin import (
    LinearMap,
    Vec,
    first_difference,
    invert_map,
    vec_sub,
    vec_tensor,
)
from .fields import FieldSpec
from .report import Report, fingerprint, witness_text


@dataclass
class AlgebraPresentation:
    """Unital associative algebra by structure constants.

    ``mul`` is the 2->1 multiplication map and ``unit`` the coordinate
    vector of the identity element.
    """

    field: FieldSpec
    dim: int
    basis_labels: tuple
    mul: LinearMap
    unit: Vec

    def __post_init__(self):
        self.basis_labels = tuple(self.basis_labels)
        if len(self.basis_labels) != self.dim:
            raise ShapeError("expected %d basis labels, got %d"
                             % (self.dim, len(self.basis_labels)))
        if len(set(self.basis_labels)) != self.dim:
            raise ShapeError("basis labels must be distinct")
        if (self.mul.base_dim, self.mul.source_arity, self.mul.target_arity) != (self.dim, 2, 1):
            raise ShapeError("multiplication table must be a 2->1 map on dimension %d" % self.dim)
        self.mul.field.require_same(self.field)
        for key in self.unit:
            if len(key) != 1 or not (0 <= key[0] < self.dim):
                raise ShapeError("unit vector has a bad index %r" % (key,))

    # -- element arithmetic --------------------------------------------------

    def mul_elements(self, u: Vec, v: Vec) -> Vec:
        return self.mul.apply(vec_tensor(self.field, u, v))

    def power(self, u: Vec, k: int) -> Vec:
        if k < 0:
            return self.power(self.element_inverse(u), -k)
        out = dict(self.unit)
        for _ in range(k):
            out = self.mul_elements(out, u)
        return out

    def left_multiplication(self, u: Vec) -> LinearMap:
        cols = {}
        for j in range(self.dim):
            img = self.mul_elements(u, {(j,): self.field.one})
            if img:
                cols[(j,)] = img
        return LinearMap(self.field, self.dim, 1, 1, cols)

    def element_inverse(self, u: Vec) -> Vec:
        """Two-sided inverse of ``u``; raises :class:`NotInvertible`."""
        lm = self.left_multiplication(u)
        try:
            inv = invert_map(lm)
        except Singular as exc:
            from .exactlin import kernel_basis
            kb = kernel_basis(lm)
            witness = kb.vectors[0] if kb.vectors else None
            raise NotInvertible("element has no inverse", witness) from exc
        w = inv.apply(self.unit)
        if self.mul_elements(w, u) != self.unit:
            raise NotInvertible("element has a one-sided inverse only", None)
        return w

    def basis_vec(self, i: int) -> Vec:
        return {(i,): self.field.one}

    def element_from_label_coeffs(self, coeffs) -> Vec:
        out = {}
        for i, c in enumerate(coeffs):
            if c:
                out[(i,)] = c
        return out

    def format_element(self, v: Vec) -> str:
        if not v:
            return "0"
        parts = []
        for key, c in sorted(v.items()):
            parts.append("%s*%s" % (self.field.format(c), self.basis_labels[key[0]]))
        return " + ".join(parts)

    def canonical_key(self) -> str:
        entries = ";".join("%r=%s" % ((t, s), self.field.format(v))
                           for t, s, v in self.mul.entries_sorted())
        unit = ";".join("%r=%s" % (k, self.field.format(v))
                        for k, v in sorted(self.unit.items()))
        return "algebra[%s|%d|%s|%s|%s]" % (
            self.field, self.dim, ",".join(self.basis_labels), entries, unit)

    def fingerprint(self) -> str:
        return fingerprint(self.canonical_key())

    def tables_equal(self, other: "AlgebraPresentation") -> bool:
        return (self.field == other.field and self.dim == other.dim
                and self.mul == other.mul and self.unit == other.unit)

    def is_commutative(self) -> bool:
        return self.mul == self.mul.permute_source((1, 0))


@dataclass
class TensorLegsAlgebra:
    """Tensor product of algebras acting leg-wise, some legs op-reversed.

    Used as the codomain of structure morphisms such as the 1->3 law of a
    torsor; products are computed leg by leg without materializing the big
    product algebra.
    """

    legs: tuple  # of (AlgebraPresentation, reversed: bool)

    def __post_init__(self):
        self.legs = tuple((a, bool(r)) for a, r in self.legs)
        fields = {a.field for a, _ in self.legs}
        if len(fields) != 1:
            raise ShapeError("tensor legs live over different fields")

    @property
    def field(self) -> FieldSpec:
        return self.legs[0][0].field

    @property
    def arity(self) -> int:
        return len(self.legs)

    def unit_vec(self) -> Vec:
        field = self.field
        out = {(): field.one}
        for alg, _ in self.legs:
            out = vec_tensor(field, out, alg.unit)
        return out

    def mul(self, u: Vec, v: Vec) -> Vec:
        field = self.field
        out: Vec = {}
        for ku, cu in u.items():
            for kv, cv in v.items():
                partial = [((), field.mul(cu, cv))]
                for idx, (alg, rev) in enumerate(self.legs):
                    a, b = ku[idx], kv[idx]
                    if rev:
                        a, b = b, a
                    col = alg.mul.cols.get((a, b))
                    if not col:
                        partial = []
                        break
                    partial = [(key + tgt, field.mul(val, w))
                               for key, val in partial
                               for tgt, w in col.items()]
                for key, val in partial:
                    s = field.add(out.get(key, field.zero), val)
                    if s:
                        out[key] = s
                    elif key in out:
                        del out[key]
        return out


@dataclass
class AlgebraMorphism:
    """Linear map between algebras, target possibly a leg-wise tensor algebra."""

    source: AlgebraPresentation
    target: object  # AlgebraPresentation | TensorLegsAlgebra
    map: LinearMap

    def target_arity(self) -> int:
        return self.target.arity if isinstance(self.target, TensorLegsAlgebra) else 1

    def target_unit(self) -> Vec:
        if isinstance(self.target, TensorLegsAlgebra):
            return self.target.unit_vec()
        return self.target.unit

    def target_mul(self, u: Vec, v: Vec) -> Vec:
        if isinstance(self.target, TensorLegsAlgebra):
            return self.target.mul(u, v)
        return self.target.mul_elements(u, v)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def verify_algebra(a: AlgebraPresentation) -> Report:
    """Associativity and both unit laws, with the first failing tuple."""
    report = Report(a.fingerprint())
    field = a.field
    labels = a.basis_labels

    failure = None
    for i, j, k in itertools.product(range(a.dim), repeat=3):
        ei, ej, ek = a.basis_vec(i), a.basis_vec(j), a.basis_vec(k)
        lhs = a.mul_elements(a.mul_elements(ei, ej), ek)
        rhs = a.mul_elements(ei, a.mul_elements(ej, ek))
        if lhs != rhs:
            key, va, vb = first_difference(lhs, rhs)
            failure = witness_text(labels, (i, j, k), key, va, vb, field.format)
            break
    report.add("associativity ((ab)c = a(bc))", failure is None, failure)

    failure = None
    for i in range(a.dim):
        ei = a.basis_vec(i)
        got = a.mul_elements(a.unit, ei)
        if got != ei:
            key, va, vb = first_difference(got, ei)
            failure = witness_text(labels, (i,), key, va, vb, field.format)
            break
    report.add("left unit (1a = a)", failure is None, failure)

    failure = None
    for i in range(a.dim):
        ei = a.basis_vec(i)
        got = a.mul_elements(ei, a.unit)
        if got != ei:
            key, va, vb = first_difference(got, ei)
            failure = witness_text(labels, (i,), key, va, vb, field.format)
            break
    report.add("right unit (a1 = a)", failure is None, failure)
    return report


def verify_algebra_morphism(f: AlgebraMorphism) -> Report:
    """Unit preservation and multiplicativity on all basis pairs."""
    src = f.source
    report = Report(src.fingerprint())
    field = src.field
    if f.map.source_arity != 1 or f.map.target_arity != f.target_arity():
        raise ShapeError("morphism map arity does not match the target")

    got_unit = f.map.apply(src.unit)
    want_unit = f.target_unit()
    if got_unit != want_unit:
        key, va, vb = first_difference(got_unit, want_unit)
        report.add("unit preservation (f(1) = 1)", False,
                   witness_text(None, (), key, va, vb, field.format))
    else:
        report.add("unit preservation (f(1) = 1)", True)

    failure = None
    for i, j in itertools.product(range(src.dim), repeat=2):
        lhs = f.map.apply(src.mul_elements(src.basis_vec(i), src.basis_vec(j)))
        rhs = f.target_mul(f.map.apply(src.basis_vec(i)),
                           f.map.apply(src.basis_vec(j)))
        if lhs != rhs:
            key, va, vb = first_difference(lhs, rhs)
            failure = witness_text(src.basis_labels, (i, j), key, va, vb, field.format)
            break
    report.add("multiplicativity (f(ab) = f(a)f(b))", failure is None, failure)
    return report


# ---------------------------------------------------------------------------
# derived algebras
# ---------------------------------------------------------------------------


def opposite_algebra(a: AlgebraPresentation) -> AlgebraPresentation:
    return AlgebraPresentation(a.field, a.dim, a.basis_labels,
                               a.mul.permute_source((1, 0)), dict(a.unit))


def tensor_algebra(a: AlgebraPresentation, b: AlgebraPresentation) -> AlgebraPresentation:
    """Materialized tensor product algebra on the flattened index ``i*dim_b + j``."""
    a.field.require_same(b.field)
    field = a.field
    dim = a.dim * b.dim
    labels = tuple("%s|%s" % (la, lb) for la in a.basis_labels for lb in b.basis_labels)

    def flat(i, j):
        return i * b.dim + j

    cols = {}
    for i1, j1, i2, j2 in itertools.product(range(a.dim), range(b.dim),
                                            range(a.dim), range(b.dim)):
        pa = a.mul.cols.get((i1, i2), {})
        pb = b.mul.cols.get((j1, j2), {})
        col = {}
        for (ka,), va in pa.items():
            for (kb,), vb in pb.items():
                col[(flat(ka, kb),)] = field.mul(va, vb)
        if col:
            cols[(flat(i1, j1), flat(i2, j2))] = col
    mul = LinearMap(field, dim, 2, 1, cols)
    unit = {}
    for (ia,), va in a.unit.items():
        for (jb,), vb in b.unit.items():
            unit[(flat(ia, jb),)] = field.mul(va, vb)
    return AlgebraPresentation(field, dim, labels, mul, unit)


def derived_algebras(a: AlgebraPresentation, which: str,
                     other: AlgebraPresentation | None = None) -> AlgebraPresentation:
    if which == "opposite":
        return opposite_algebra(a)
    if which == "tensor":
        if other is None:
            raise ShapeError("tensor needs a second algebra")
        return tensor_algebra(a, other)
    raise ShapeError("unknown derived algebra %r" % (which,))


def multiply_elements(a: AlgebraPresentation, op: str, u: Vec,
                      v: Vec | None = None, k: int | None = None) -> Vec:
    """Product, power, or inverse of explicit elements."""
    if op == "product":
        if v is None:
            raise ShapeError("product needs two elements")
        return a.mul_elements(u, v)
    if op == "power":
        if k is None:
            raise ShapeError("power needs an exponent")
        return a.power(u, k)
    if op == "inverse":
        return a.element_inverse(u)
    raise ShapeError("unknown element operation %r" % (op,))


# ---------------------------------------------------------------------------
# characters
# ---------------------------------------------------------------------------


@dataclass
class CharacterSearchResult:
    status: str  # "found" | "none" | "unknown" | "rejected" | "accepted"
    characters: list
    detail: str = ""


def _functional_is_character(a: AlgebraPresentation, phi) -> bool:
    field = a.field
    # phi given as a length-dim list of scalars
    unit_val = field.zero
    for (i,), c in a.unit.items():
        unit_val = field.add(unit_val, field.mul(c, phi[i]))
    if unit_val != field.one:
        return False
    for i, j in itertools.product(range(a.dim), repeat=2):
        prod = a.mul.cols.get((i, j), {})
        val = field.zero
        for (k,), c in prod.items():
            val = field.add(val, field.mul(c, phi[k]))
        if val != field.mul(phi[i], phi[j]):
            return False
    return True


def span_dim(field, vectors) -> int:
    from .exactlin import rref
    rows, _ = rref(field, vectors)
    return len(rows)


def commutator_ideal_is_whole(a: AlgebraPresentation) -> bool:
    """Two-sided ideal generated by all commutators, grown to a fixpoint."""
    field = a.field
    gens = []
    for i, j in itertools.combinations(range(a.dim), 2):
        c = vec_sub(field,
                    a.mul_elements(a.basis_vec(i), a.basis_vec(j)),
                    a.mul_elements(a.basis_vec(j), a.basis_vec(i)))
        if c:
            gens.append(c)
    from .exactlin import rref
    rows, _ = rref(field, gens)
    for _ in range(a.dim + 1):
        new_rows = list(rows)
        for v in rows:
            for k in range(a.dim):
                ek = a.basis_vec(k)
                new_rows.append(a.mul_elements(ek, v))
                new_rows.append(a.mul_elements(v, ek))
        reduced, _ = rref(field, new_rows)
        if len(reduced) == len(rows):
            rows = reduced
            break
        rows = reduced
    return len(rows) == a.dim


def character_search(a: AlgebraPresentation, mode: str,
                     witness=None, guard: int = 10 ** 6) -> CharacterSearchResult:
    """Verify a candidate character or decide existence where possible.

    ``verify`` checks one functional.  ``exhaustive_fp`` enumerates all
    functionals over F_p; over Q it falls back to the commutator-ideal
    obstruction, where a full ideal means no character can exist and a
    proper ideal leaves the question open.
    """
    field = a.field
    if mode == "verify":
        if witness is None:
            raise ShapeError("verify mode needs a witness functional")
        ok = _functional_is_character(a, list(witness))
        return CharacterSearchResult("accepted" if ok else "rejected",
                                     [list(witness)] if ok else [])
    if mode == "exhaustive_fp":
        if field.kind != "Fp":
            if commutator_ideal_is_whole(a):
                return CharacterSearchResult(
                    "none", [], "commutator ideal is the whole algebra")
            return CharacterSearchResult("unknown", [],
                                         "commutator ideal is proper")
        if field.p ** a.dim > guard:
            raise SearchSpaceTooLarge(
                "p^dim = %d exceeds the guard %d" % (field.p ** a.dim, guard))
        found = []
        for phi in itertools.product(range(field.p), repeat=a.dim):
            if _functional_is_character(a, phi):
                found.append(list(phi))
        return CharacterSearchResult("found" if found else "none", found)
    raise ShapeError("unknown character search mode %r" % (mode,))
