"""Hopf algebras by structure constants: verification, standard builds,
linear duals, and Drinfeld twist calculus.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import AlgebraPresentation, TensorLegsAlgebra, verify_algebra
from .errors import (
    NotAGroup,
    NotInvertible,
    ShapeError,
    Singular,
    TwistInvalid,
)
from .exactlin import (
    LinearMap,
    Vec,
    apply_at,
    first_difference,
    invert_map,
    kernel_basis,
    vec_tensor,
)
from .fields import FieldSpec
from .report import Report, fingerprint, witness_text


@dataclass
class HopfPresentation:
    """Hopf algebra: algebra tables plus comultiplication, counit, antipode."""

    algebra: AlgebraPresentation
    comul: LinearMap   # 1 -> 2
    counit: LinearMap  # 1 -> 0
    antipode: LinearMap  # 1 -> 1

    def __post_init__(self):
        n = self.algebra.dim
        for m, s, t, name in ((self.comul, 1, 2, "comul"),
                              (self.counit, 1, 0, "counit"),
                              (self.antipode, 1, 1, "antipode")):
            if (m.base_dim, m.source_arity, m.target_arity) != (n, s, t):
                raise ShapeError("%s table has the wrong shape" % name)
            m.field.require_same(self.algebra.field)

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def basis_labels(self):
        return self.algebra.basis_labels

    def counit_value(self, vec: Vec):
        return self.counit.apply(vec).get((), self.field.zero)

    def canonical_key(self) -> str:
        def table(m):
            return ";".join("%r=%s" % ((t, s), self.field.format(v))
                            for t, s, v in m.entries_sorted())
        return "hopf[%s|%s|%s|%s]" % (self.algebra.canonical_key(),
                                      table(self.comul), table(self.counit),
                                      table(self.antipode))

    def fingerprint(self) -> str:
        return fingerprint(self.canonical_key())

    def tables_equal(self, other: "HopfPresentation") -> bool:
        return (self.algebra.tables_equal(other.algebra)
                and self.comul == other.comul
                and self.counit == other.counit
                and self.antipode == other.antipode)


def _map_check(report, name, lhs: LinearMap, rhs: LinearMap, labels, fmt):
    diff = lhs.first_difference(rhs)
    if diff is None:
        report.add(name, True)
    else:
        src, key, va, vb = diff
        report.add(name, False, witness_text(labels, src, key, va, vb, fmt))


def verify_hopf(h: HopfPresentation) -> Report:
    """Full axiom suite: algebra, coalgebra, compatibility, antipode."""
    report = Report(h.fingerprint())
    field = h.field
    labels = h.basis_labels
    alg = h.algebra

    for check in verify_algebra(alg).checks:
        report.checks.append(check)
        check.name = "algebra " + check.name

    n = alg.dim
    # coassociativity and counit laws, column by column
    coassoc = None
    counit_l = None
    counit_r = None
    for i in range(n):
        d = h.comul.column((i,))
        lhs = apply_at(h.comul, d, 0)
        rhs = apply_at(h.comul, d, 1)
        if coassoc is None and lhs != rhs:
            key, va, vb = first_difference(lhs, rhs)
            coassoc = witness_text(labels, (i,), key, va, vb, field.format)
        e = {(i,): field.one}
        left = apply_at(h.counit, d, 0)
        if counit_l is None and left != e:
            key, va, vb = first_difference(left, e)
            counit_l = witness_text(labels, (i,), key, va, vb, field.format)
        right = apply_at(h.counit, d, 1)
        if counit_r is None and right != e:
            key, va, vb = first_difference(right, e)
            counit_r = witness_text(labels, (i,), key, va, vb, field.format)
    report.add("coassociativity ((comul⊗Id)∘comul = (Id⊗comul)∘comul)",
               coassoc is None, coassoc)
    report.add("counit left ((eps⊗Id)∘comul = Id)", counit_l is None, counit_l)
    report.add("counit right ((Id⊗eps)∘comul = Id)", counit_r is None, counit_r)

    # bialgebra compatibility: comul and counit are algebra morphisms
    two_legs = TensorLegsAlgebra(((alg, False), (alg, False)))
    fail = None
    if h.comul.apply(alg.unit) != two_legs.unit_vec():
        key, va, vb = first_difference(h.comul.apply(alg.unit), two_legs.unit_vec())
        fail = witness_text(None, (), key, va, vb, field.format)
    else:
        for i, j in itertools.product(range(n), repeat=2):
            lhs = h.comul.apply(alg.mul.column((i, j)))
            rhs = two_legs.mul(h.comul.column((i,)), h.comul.column((j,)))
            if lhs != rhs:
                key, va, vb = first_difference(lhs, rhs)
                fail = witness_text(labels, (i, j), key, va, vb, field.format)
                break
    report.add("compatibility (comul is an algebra morphism)", fail is None, fail)

    fail = None
    if h.counit_value(alg.unit) != field.one:
        fail = "counit of the unit is %s" % field.format(h.counit_value(alg.unit))
    else:
        for i, j in itertools.product(range(n), repeat=2):
            lhs = h.counit_value(alg.mul.column((i, j)))
            rhs = field.mul(h.counit_value({(i,): field.one}),
                            h.counit_value({(j,): field.one}))
            if lhs != rhs:
                fail = witness_text(labels, (i, j), (), lhs, rhs, field.format)
                break
    report.add("compatibility (counit is an algebra morphism)", fail is None, fail)

    # antipode axiom, both sides
    left_fail = None
    right_fail = None
    for i in range(n):
        d = h.comul.column((i,))
        target = {}
        eps = h.counit_value({(i,): field.one})
        if eps:
            target = {k: field.mul(eps, v) for k, v in alg.unit.items()}
        lhs = alg.mul.apply(apply_at(h.antipode, d, 0))
        if left_fail is None and lhs != target:
            key, va, vb = first_difference(lhs, target)
            left_fail = witness_text(labels, (i,), key, va, vb, field.format)
        rhs = alg.mul.apply(apply_at(h.antipode, d, 1))
        if right_fail is None and rhs != target:
            key, va, vb = first_difference(rhs, target)
            right_fail = witness_text(labels, (i,), key, va, vb, field.format)
    report.add("antipode left (m∘(S⊗Id)∘comul = unit∘eps)",
               left_fail is None, left_fail)
    report.add("antipode right (m∘(Id⊗S)∘comul = unit∘eps)",
               right_fail is None, right_fail)
    return report


# ---------------------------------------------------------------------------
# finite groups and their standard Hopf algebras
# ---------------------------------------------------------------------------


@dataclass
class GroupTable:
    """Finite group by multiplication table; validated on construction."""

    table: list
    labels: tuple

    def __post_init__(self):
        n = len(self.table)
        self.labels = tuple(self.labels)
        if len(self.labels) != n or len(set(self.labels)) != n:
            raise NotAGroup("need %d distinct labels" % n)
        for row in self.table:
            if len(row) != n or any(not (0 <= x < n) for x in row):
                raise NotAGroup("table is not a square array of indices")
        identity = None
        for e in range(n):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n)):
                identity = e
                break
        if identity is None:
            raise NotAGroup("no identity element")
        self.identity = identity
        for a, b, c in itertools.product(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise NotAGroup("associativity fails at (%d, %d, %d)" % (a, b, c))
        self.inverses = []
        for a in range(n):
            inv = None
            for b in range(n):
                if self.table[a][b] == identity and self.table[b][a] == identity:
                    inv = b
                    break
            if inv is None:
                raise NotAGroup("element %d has no inverse" % a)
            self.inverses.append(inv)

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]


def cyclic_group(n: int) -> GroupTable:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return GroupTable(table, tuple("g%d" % i for i in range(n)))


def product_group(g: GroupTable, h: GroupTable) -> GroupTable:
    n, m = g.order, h.order

    def flat(a, b):
        return a * m + b

    table = [[0] * (n * m) for _ in range(n * m)]
    for a, b, c, d in itertools.product(range(n), range(m), range(n), range(m)):
        table[flat(a, b)][flat(c, d)] = flat(g.mul(a, c), h.mul(b, d))
    labels = tuple("(%s,%s)" % (g.labels[a], h.labels[b])
                   for a in range(n) for b in range(m))
    return GroupTable(table, labels)


def symmetric_group(n: int) -> GroupTable:
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    labels = tuple("".join(str(x) for x in p) for p in perms)
    return GroupTable(table, labels)


def build_standard_hopf(kind: str, group: GroupTable, field: FieldSpec,
                        labels=None) -> HopfPresentation:
    """Group algebra kG or function algebra k^G of a finite group."""
    n = group.order
    one = field.one
    if kind == "group_algebra":
        labels = labels or group.labels
        mul = LinearMap.from_cols(field, n, 2, 1, {
            (i, j): {(group.mul(i, j),): one}
            for i, j in itertools.product(range(n), repeat=2)})
        unit = {(group.identity,): one}
        comul = LinearMap.from_cols(field, n, 1, 2,
                                    {(i,): {(i, i): one} for i in range(n)})
        counit = LinearMap.from_cols(field, n, 1, 0,
                                     {(i,): {(): one} for i in range(n)})
        antipode = LinearMap.from_cols(field, n, 1, 1,
                                       {(i,): {(group.inv(i),): one} for i in range(n)})
    elif kind == "function_algebra":
        labels = labels or tuple("1_%s" % l for l in group.labels)
        mul = LinearMap.from_cols(field, n, 2, 1,
                                  {(i, i): {(i,): one} for i in range(n)})
        unit = {(i,): one for i in range(n)}
        comul_cols = {}
        for g in range(n):
            col = {}
            for h in range(n):
                col[(h, group.mul(group.inv(h), g))] = one
            comul_cols[(g,)] = col
        comul = LinearMap.from_cols(field, n, 1, 2, comul_cols)
        counit = LinearMap.from_cols(field, n, 1, 0,
                                     {(group.identity,): {(): one}})
        antipode = LinearMap.from_cols(field, n, 1, 1,
                                       {(i,): {(group.inv(i),): one} for i in range(n)})
    else:
        raise ShapeError("unknown standard Hopf build %r" % (kind,))
    algebra = AlgebraPresentation(field, n, labels, mul, unit)
    return HopfPresentation(algebra, comul, counit, antipode)


def dual_hopf(h: HopfPresentation) -> HopfPresentation:
    """Linear dual in the coordinate dual basis: all tables transposed."""
    field = h.field
    n = h.dim
    mul = h.comul.transpose()
    unit = {(i,): v for (i,), v in
            ((k, col.get((), field.zero)) for k, col in h.counit.cols.items())
            if v}
    comul = h.algebra.mul.transpose()
    counit_cols = {}
    for (i,), v in h.algebra.unit.items():
        counit_cols[(i,)] = {(): v}
    counit = LinearMap.from_cols(field, n, 1, 0, counit_cols)
    antipode = h.antipode.transpose()
    labels = tuple(l + "*" for l in h.basis_labels)
    algebra = AlgebraPresentation(field, n, labels, mul, unit)
    return HopfPresentation(algebra, comul, counit, antipode)


# ---------------------------------------------------------------------------
# Hopf morphisms and isomorphisms
# ---------------------------------------------------------------------------


@dataclass
class HopfIso:
    """Linear map between Hopf presentations together with its certification."""

    source: HopfPresentation
    target: HopfPresentation
    map: LinearMap
    report: Report

    @property
    def verified(self) -> bool:
        return self.report.ok

    def inverse_map(self) -> LinearMap:
        return invert_map(self.map)


def verify_hopf_morphism(source: HopfPresentation, target: HopfPresentation,
                         f: LinearMap, require_iso: bool = True) -> Report:
    """Certify preservation of unit, product, coproduct, counit, antipode."""
    report = Report("%s->%s" % (source.fingerprint(), target.fingerprint()))
    field = source.field
    field.require_same(target.field)
    if f.source_arity != 1 or f.target_arity != 1:
        raise ShapeError("a Hopf morphism is a 1->1 map")
    labels = source.basis_labels
    n = source.dim

    if require_iso:
        try:
            invert_map(f)
            report.add("invertible", True)
        except Singular as exc:
            report.add("invertible", False, str(exc))

    got = f.apply(source.algebra.unit)
    if got != target.algebra.unit:
        key, va, vb = first_difference(got, target.algebra.unit)
        report.add("unit preservation", False,
                   witness_text(None, (), key, va, vb, field.format))
    else:
        report.add("unit preservation", True)

    fail = None
    for i, j in itertools.product(range(n), repeat=2):
        lhs = f.apply(source.algebra.mul.column((i, j)))
        rhs = target.algebra.mul_elements(f.apply({(i,): field.one}),
                                          f.apply({(j,): field.one}))
        if lhs != rhs:
            key, va, vb = first_difference(lhs, rhs)
            fail = witness_text(labels, (i, j), key, va, vb, field.format)
            break
    report.add("product preservation", fail is None, fail)

    fail = None
    for i in range(n):
        lhs = target.comul.apply(f.apply({(i,): field.one}))
        rhs = apply_at(f, apply_at(f, source.comul.column((i,)), 0), 1)
        if lhs != rhs:
            key, va, vb = first_difference(lhs, rhs)
            fail = witness_text(labels, (i,), key, va, vb, field.format)
            break
    report.add("coproduct preservation", fail is None, fail)

    fail = None
    for i in range(n):
        lhs = target.counit.apply(f.apply({(i,): field.one}))
        rhs = source.counit.column((i,))
        if lhs != rhs:
            key, va, vb = first_difference(lhs, rhs)
            fail = witness_text(labels, (i,), key, va, vb, field.format)
            break
    report.add("counit preservation", fail is None, fail)

    fail = None
    for i in range(n):
        lhs = f.apply(source.antipode.column((i,)))
        rhs = target.antipode.apply(f.apply({(i,): field.one}))
        if lhs != rhs:
            key, va, vb = first_difference(lhs, rhs)
            fail = witness_text(labels, (i,), key, va, vb, field.format)
            break
    report.add("antipode preservation", fail is None, fail)
    return report


def hopf_iso(source: HopfPresentation, target: HopfPresentation,
             f: LinearMap) -> HopfIso:
    return HopfIso(source, target, f, verify_hopf_morphism(source, target, f))


# ---------------------------------------------------------------------------
# Drinfeld twists
# ---------------------------------------------------------------------------


@dataclass
class TwistData:
    """Invertible 2-tensor twist with its inverse and the derived unit u."""

    host: HopfPresentation
    F: Vec
    F_inv: Vec
    u: Vec
    u_inv: Vec

    def two_leg_algebra(self) -> TensorLegsAlgebra:
        alg = self.host.algebra
        return TensorLegsAlgebra(((alg, False), (alg, False)))


def build_twist(host: HopfPresentation, F: Vec, F_inv: Vec | None = None) -> TwistData:
    """Assemble twist data, inverting F by left multiplication if needed."""
    field = host.field
    two = TensorLegsAlgebra(((host.algebra, False), (host.algebra, False)))
    if F_inv is None:
        n = host.dim
        cols = {}
        for i, j in itertools.product(range(n), repeat=2):
            img = two.mul(F, {(i, j): field.one})
            if img:
                cols[(i, j)] = img
        left_mul = LinearMap(field, n, 2, 2, cols)
        try:
            inv = invert_map(left_mul)
        except Singular as exc:
            kb = kernel_basis(left_mul)
            witness = kb.vectors[0] if kb.vectors else None
            raise NotInvertible("twist tensor is not invertible", witness) from exc
        F_inv = inv.apply(two.unit_vec())
    u = host.algebra.mul.apply(apply_at(host.antipode, F, 1))
    u_inv = host.algebra.mul.apply(apply_at(host.antipode, F_inv, 0))
    return TwistData(host, dict(F), dict(F_inv), u, u_inv)


def verify_twist(t: TwistData) -> Report:
    """Cocycle equation, counit normalization, and invertibility of F and u."""
    h = t.host
    field = h.field
    report = Report(h.fingerprint())
    two = t.two_leg_algebra()
    alg = h.algebra
    three = TensorLegsAlgebra(((alg, False), (alg, False), (alg, False)))

    one_two = two.unit_vec()
    ok = two.mul(t.F, t.F_inv) == one_two and two.mul(t.F_inv, t.F) == one_two
    report.add("F invertible (F·F⁻¹ = F⁻¹·F = 1⊗1)", ok,
               None if ok else "left/right product differs from 1⊗1")

    left_norm = apply_at(h.counit, t.F, 0)
    right_norm = apply_at(h.counit, t.F, 1)
    ok = left_norm == alg.unit
    diff = None if ok else first_difference(left_norm, alg.unit)
    report.add("counit normalization ((eps⊗Id)F = 1)", ok,
               None if ok else "first difference %r" % (diff,))
    ok = right_norm == alg.unit
    diff = None if ok else first_difference(right_norm, alg.unit)
    report.add("counit normalization ((Id⊗eps)F = 1)", ok,
               None if ok else "first difference %r" % (diff,))

    lhs = three.mul(vec_tensor(field, t.F, alg.unit),
                    apply_at(h.comul, t.F, 0))
    rhs = three.mul(vec_tensor(field, alg.unit, t.F),
                    apply_at(h.comul, t.F, 1))
    ok = lhs == rhs
    diff = None if ok else first_difference(lhs, rhs)
    report.add("cocycle ((F⊗1)(comul⊗Id)(F) = (1⊗F)(Id⊗comul)(F))", ok,
               None if ok else "first difference %r" % (diff,))

    ok = (alg.mul_elements(t.u, t.u_inv) == alg.unit
          and alg.mul_elements(t.u_inv, t.u) == alg.unit)
    report.add("u invertible (u·u⁻¹ = u⁻¹·u = 1)", ok,
               None if ok else "u·u⁻¹ differs from 1")
    return report


def twist_hopf(t: TwistData) -> HopfPresentation:
    """Twisted Hopf algebra: conjugated coproduct, conjugated antipode."""
    rep = verify_twist(t)
    if not rep.ok:
        raise TwistInvalid("twist equations fail: %s" % rep.first_failure().name)
    h = t.host
    field = h.field
    two = t.two_leg_algebra()
    n = h.dim
    comul_cols = {}
    for i in range(n):
        img = two.mul(two.mul(t.F, h.comul.column((i,))), t.F_inv)
        if img:
            comul_cols[(i,)] = img
    comul = LinearMap(field, n, 1, 2, comul_cols)
    anti_cols = {}
    for i in range(n):
        img = h.algebra.mul_elements(
            h.algebra.mul_elements(t.u, h.antipode.column((i,))), t.u_inv)
        if img:
            anti_cols[(i,)] = img
    antipode = LinearMap(field, n, 1, 1, anti_cols)
    return HopfPresentation(h.algebra, comul, h.counit, antipode)
