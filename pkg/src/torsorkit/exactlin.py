"""Exact multilinear algebra on tensor powers of a finite-dimensional space.

Vectors in ``(k^n)^{⊗a}`` are sparse dicts mapping index tuples of length
``a`` to nonzero scalars; linear maps store sparse columns keyed by source
multi-index.  Both behave like dense objects (missing entries are zero), so
all results are exact and independent of sparsity patterns.

Materialized maps are capped: base dimension at most :func:`dimension_cap`
(override with the ``TORSORKIT_MAX_DIM`` environment variable) and at most
``LEG_CAP`` total tensor legs.  Large intermediates such as ``f ⊗ Id ⊗ Id``
are never materialized; use :func:`apply_at` to act on legs of a vector.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

from .errors import (
    ArityMismatch,
    BadPermutation,
    DimensionCapExceeded,
    LegCapExceeded,
    ShapeError,
    Singular,
)
from .fields import FieldSpec

LEG_CAP = 6
DEFAULT_DIM_CAP = 16

# A sparse tensor: {multi-index tuple: nonzero scalar}.
Vec = dict


def dimension_cap() -> int:
    raw = os.environ.get("TORSORKIT_MAX_DIM")
    if raw is None:
        return DEFAULT_DIM_CAP
    try:
        cap = int(raw)
    except ValueError:
        return DEFAULT_DIM_CAP
    return max(cap, 1)


# ---------------------------------------------------------------------------
# sparse vector helpers
# ---------------------------------------------------------------------------


def vec_add(field: FieldSpec, a: Vec, b: Vec) -> Vec:
    out = dict(a)
    for key, v in b.items():
        s = field.add(out.get(key, field.zero), v)
        if s:
            out[key] = s
        elif key in out:
            del out[key]
    return out


def vec_sub(field: FieldSpec, a: Vec, b: Vec) -> Vec:
    out = dict(a)
    for key, v in b.items():
        s = field.sub(out.get(key, field.zero), v)
        if s:
            out[key] = s
        elif key in out:
            del out[key]
    return out


def vec_scale(field: FieldSpec, c, a: Vec) -> Vec:
    if not c:
        return {}
    return {key: field.mul(c, v) for key, v in a.items()}


def vec_tensor(field: FieldSpec, a: Vec, b: Vec) -> Vec:
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            out[ka + kb] = field.mul(va, vb)
    return out


def vec_permute(vec: Vec, perm) -> Vec:
    perm = _check_perm(perm)
    return {tuple(key[p] for p in perm): v for key, v in vec.items()}


def vec_items_sorted(vec: Vec):
    return sorted(vec.items())


def basis_vec(i: int) -> Vec:
    return {(i,): 1}


def unit_scalar_vec(field: FieldSpec) -> Vec:
    return {(): field.one}


def first_difference(a: Vec, b: Vec):
    """Smallest coordinate where two tensors differ, or None."""
    keys = sorted(set(a) | set(b))
    for key in keys:
        va, vb = a.get(key), b.get(key)
        if va != vb:
            return key, va, vb
    return None


def _check_perm(perm):
    perm = tuple(perm)
    if sorted(perm) != list(range(len(perm))):
        raise BadPermutation("%r is not a permutation of 0..%d" % (perm, len(perm) - 1))
    return perm


# ---------------------------------------------------------------------------
# linear maps
# ---------------------------------------------------------------------------


@dataclass
class LinearMap:
    """Linear map ``(k^n)^{⊗s} -> (k^n)^{⊗t}`` with sparse columns.

    ``cols`` maps each source multi-index with nonzero image to the sparse
    image vector.  Semantics are dense: absent columns and entries are zero.
    """

    field: FieldSpec
    base_dim: int
    source_arity: int
    target_arity: int
    cols: dict

    def __post_init__(self):
        if self.base_dim < 1:
            raise ShapeError("base dimension must be positive")
        cap = dimension_cap()
        if self.base_dim > cap:
            raise DimensionCapExceeded(
                "base dimension %d exceeds cap %d" % (self.base_dim, cap)
            )
        if self.source_arity < 0 or self.target_arity < 0:
            raise ShapeError("arities must be nonnegative")
        if self.source_arity + self.target_arity > LEG_CAP:
            raise LegCapExceeded(
                "map with %d+%d legs exceeds the cap of %d"
                % (self.source_arity, self.target_arity, LEG_CAP)
            )

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, field, n, s, t) -> "LinearMap":
        return cls(field, n, s, t, {})

    @classmethod
    def identity(cls, field, n, arity: int = 1) -> "LinearMap":
        cols = {}
        for idx in itertools.product(range(n), repeat=arity):
            cols[idx] = {idx: field.one}
        return cls(field, n, arity, arity, cols)

    @classmethod
    def from_entries(cls, field, n, s, t, entries) -> "LinearMap":
        """Build from an iterable of ``(target_index, source_index, value)``."""
        cols = {}
        for tgt, src, val in entries:
            tgt, src = tuple(tgt), tuple(src)
            if len(tgt) != t or len(src) != s:
                raise ShapeError("entry (%r, %r) has wrong arity" % (tgt, src))
            col = cols.setdefault(src, {})
            new = field.add(col.get(tgt, field.zero), val)
            if new:
                col[tgt] = new
            elif tgt in col:
                del col[tgt]
        return cls(field, n, s, t, {k: v for k, v in cols.items() if v})

    @classmethod
    def from_cols(cls, field, n, s, t, cols) -> "LinearMap":
        clean = {}
        for src, col in cols.items():
            col = {k: v for k, v in col.items() if v}
            if col:
                clean[tuple(src)] = col
        return cls(field, n, s, t, clean)

    # -- basic queries -------------------------------------------------------

    def column(self, src) -> Vec:
        return dict(self.cols.get(tuple(src), {}))

    def entries_sorted(self):
        out = []
        for src in sorted(self.cols):
            for tgt in sorted(self.cols[src]):
                out.append((tgt, src, self.cols[src][tgt]))
        return out

    def is_zero(self) -> bool:
        return not self.cols

    def source_indices(self):
        return itertools.product(range(self.base_dim), repeat=self.source_arity)

    # -- evaluation ----------------------------------------------------------

    def apply(self, vec: Vec) -> Vec:
        field = self.field
        out: Vec = {}
        for src, c in vec.items():
            col = self.cols.get(src)
            if not col:
                continue
            for tgt, v in col.items():
                s = field.add(out.get(tgt, field.zero), field.mul(c, v))
                if s:
                    out[tgt] = s
                elif tgt in out:
                    del out[tgt]
        return out

    # -- algebra of maps ------------------------------------------------------

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other."""
        self.field.require_same(other.field)
        if self.base_dim != other.base_dim:
            raise ShapeError("composition across different base dimensions")
        if self.source_arity != other.target_arity:
            raise ArityMismatch(
                "cannot compose arity %d->%d after %d->%d"
                % (self.source_arity, self.target_arity,
                   other.source_arity, other.target_arity)
            )
        cols = {}
        for src, col in other.cols.items():
            image = self.apply(col)
            if image:
                cols[src] = image
        return LinearMap(self.field, self.base_dim, other.source_arity,
                         self.target_arity, cols)

    def tensor(self, other: "LinearMap") -> "LinearMap":
        self.field.require_same(other.field)
        if self.base_dim != other.base_dim:
            raise ShapeError("tensor product across different base dimensions")
        field = self.field
        cols = {}
        for s1, c1 in self.cols.items():
            for s2, c2 in other.cols.items():
                col = {}
                for t1, v1 in c1.items():
                    for t2, v2 in c2.items():
                        col[t1 + t2] = field.mul(v1, v2)
                cols[s1 + s2] = col
        return LinearMap(field, self.base_dim,
                         self.source_arity + other.source_arity,
                         self.target_arity + other.target_arity, cols)

    def permute_target(self, perm) -> "LinearMap":
        perm = _check_perm(perm)
        if len(perm) != self.target_arity:
            raise BadPermutation("permutation length %d, target arity %d"
                                 % (len(perm), self.target_arity))
        cols = {src: vec_permute(col, perm) for src, col in self.cols.items()}
        return LinearMap(self.field, self.base_dim, self.source_arity,
                         self.target_arity, cols)

    def permute_source(self, perm) -> "LinearMap":
        perm = _check_perm(perm)
        if len(perm) != self.source_arity:
            raise BadPermutation("permutation length %d, source arity %d"
                                 % (len(perm), self.source_arity))
        cols = {}
        for src, col in self.cols.items():
            new_src = tuple(src[perm[k]] for k in range(len(perm)))
            cols[new_src] = dict(col)
        return LinearMap(self.field, self.base_dim, self.source_arity,
                         self.target_arity, cols)

    def transpose(self) -> "LinearMap":
        cols = {}
        for src, col in self.cols.items():
            for tgt, v in col.items():
                cols.setdefault(tgt, {})[src] = v
        return LinearMap(self.field, self.base_dim, self.target_arity,
                         self.source_arity, cols)

    def add(self, other: "LinearMap") -> "LinearMap":
        self._require_shape(other)
        cols = dict()
        for src in set(self.cols) | set(other.cols):
            col = vec_add(self.field, self.cols.get(src, {}), other.cols.get(src, {}))
            if col:
                cols[src] = col
        return LinearMap(self.field, self.base_dim, self.source_arity,
                         self.target_arity, cols)

    def sub(self, other: "LinearMap") -> "LinearMap":
        self._require_shape(other)
        cols = dict()
        for src in set(self.cols) | set(other.cols):
            col = vec_sub(self.field, self.cols.get(src, {}), other.cols.get(src, {}))
            if col:
                cols[src] = col
        return LinearMap(self.field, self.base_dim, self.source_arity,
                         self.target_arity, cols)

    def scale(self, c) -> "LinearMap":
        cols = {}
        for src, col in self.cols.items():
            scaled = vec_scale(self.field, c, col)
            if scaled:
                cols[src] = scaled
        return LinearMap(self.field, self.base_dim, self.source_arity,
                         self.target_arity, cols)

    def _require_shape(self, other):
        self.field.require_same(other.field)
        if (self.base_dim, self.source_arity, self.target_arity) != (
            other.base_dim, other.source_arity, other.target_arity
        ):
            raise ShapeError("maps have different shapes")

    def first_difference(self, other: "LinearMap"):
        """Smallest (source, coordinate) where the two maps differ."""
        self._require_shape(other)
        for src in sorted(set(self.cols) | set(other.cols)):
            diff = first_difference(self.cols.get(src, {}), other.cols.get(src, {}))
            if diff is not None:
                key, va, vb = diff
                return src, key, va, vb
        return None


def compose_maps(f: LinearMap, g: LinearMap) -> LinearMap:
    """f after g."""
    return f.compose(g)


def tensor_product_map(f: LinearMap, g: LinearMap) -> LinearMap:
    return f.tensor(g)


def permute_legs(x, perm):
    """Permute tensor legs: output leg k carries input leg perm[k] (0-based)."""
    if isinstance(x, LinearMap):
        return x.permute_target(perm)
    return vec_permute(x, perm)


def apply_at(f: LinearMap, vec: Vec, pos: int) -> Vec:
    """Apply ``f`` to the legs ``pos .. pos+s-1`` of ``vec``.

    This realizes ``Id^{⊗pos} ⊗ f ⊗ Id^{⊗rest}`` without materializing it.
    """
    field = f.field
    s = f.source_arity
    out: Vec = {}
    for key, c in vec.items():
        if pos < 0 or pos + s > len(key):
            raise ShapeError("cannot apply %d-leg map at position %d of %d legs"
                             % (s, pos, len(key)))
        pre, mid, post = key[:pos], key[pos:pos + s], key[pos + s:]
        col = f.cols.get(mid)
        if not col:
            continue
        for tgt, v in col.items():
            new_key = pre + tgt + post
            val = field.add(out.get(new_key, field.zero), field.mul(c, v))
            if val:
                out[new_key] = val
            elif new_key in out:
                del out[new_key]
    return out


# ---------------------------------------------------------------------------
# elimination: reduced row echelon form, kernels, inverses
# ---------------------------------------------------------------------------


def rref(field: FieldSpec, rows):
    """Reduced row echelon form of sparse rows (dicts keyed by column keys).

    Column keys must be mutually comparable; pivots are chosen left to right
    (smallest column key first), which makes the result canonical.
    Returns ``(rows, pivots)`` with unit pivot entries, sorted by pivot.
    """
    work = [dict(r) for r in rows if r]
    done = []
    pivots = []
    while work:
        col = min(min(r) for r in work)
        pivot_row = None
        rest = []
        for r in work:
            if pivot_row is None and r.get(col):
                pivot_row = r
            else:
                rest.append(r)
        inv = field.inv(pivot_row[col])
        pivot_row = {k: field.mul(inv, v) for k, v in pivot_row.items()}
        reduced = []
        for r in rest:
            c = r.get(col)
            if c:
                r = {k: v for k, v in
                     ((kk, field.sub(r.get(kk, field.zero),
                                     field.mul(c, pivot_row.get(kk, field.zero))))
                      for kk in set(r) | set(pivot_row))
                     if v}
            if r:
                reduced.append(r)
        for i, r in enumerate(done):
            c = r.get(col)
            if c:
                done[i] = {k: v for k, v in
                           ((kk, field.sub(r.get(kk, field.zero),
                                           field.mul(c, pivot_row.get(kk, field.zero))))
                            for kk in set(r) | set(pivot_row))
                           if v}
        done.append(pivot_row)
        pivots.append(col)
        work = reduced
    order = sorted(range(len(done)), key=lambda i: pivots[i])
    return [done[i] for i in order], [pivots[i] for i in order]


@dataclass
class SubspaceBasis:
    """Canonical reduced-row-echelon basis of a subspace of ``(k^n)^{⊗a}``."""

    field: FieldSpec
    base_dim: int
    ambient_arity: int
    vectors: list
    pivots: list

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def pivot_index(self):
        return {p: i for i, p in enumerate(self.pivots)}

    def express(self, vec: Vec):
        """Coordinates of ``vec`` in this basis, or None if not a member."""
        coords = [vec.get(p, self.field.zero) for p in self.pivots]
        rebuilt: Vec = {}
        for c, b in zip(coords, self.vectors):
            if c:
                rebuilt = vec_add(self.field, rebuilt, vec_scale(self.field, c, b))
        if rebuilt != vec:
            return None
        return coords

    def contains(self, vec: Vec) -> bool:
        return self.express(vec) is not None

    def include(self, coords: Vec) -> Vec:
        """Map carrier coordinates (1-leg sparse vec) into the ambient space."""
        out: Vec = {}
        for (i,), c in coords.items():
            out = vec_add(self.field, out, vec_scale(self.field, c, self.vectors[i]))
        return out

    def same_subspace(self, other: "SubspaceBasis") -> bool:
        return (self.pivots == other.pivots
                and self.vectors == other.vectors)

    def canonical_key(self) -> str:
        parts = []
        for vec in self.vectors:
            parts.append(";".join("%r:%s" % (k, self.field.format(v))
                                  for k, v in vec_items_sorted(vec)))
        return "|".join(parts)


def rows_to_subspace(field, base_dim, ambient_arity, rows) -> SubspaceBasis:
    reduced, pivots = rref(field, rows)
    return SubspaceBasis(field, base_dim, ambient_arity, reduced, pivots)


def kernel_basis(f: LinearMap) -> SubspaceBasis:
    """Canonical basis of ``{v : f(v) = 0}``."""
    rows = {}
    for src, col in f.cols.items():
        for tgt, v in col.items():
            rows.setdefault(tgt, {})[src] = v
    reduced, pivots = rref(f.field, rows.values())
    pivot_set = set(pivots)
    all_src = list(itertools.product(range(f.base_dim), repeat=f.source_arity))
    free = [s for s in all_src if s not in pivot_set]
    kernel_rows = []
    for fcol in free:
        vec = {fcol: f.field.one}
        for row, p in zip(reduced, pivots):
            c = row.get(fcol)
            if c:
                vec[p] = f.field.neg(c)
        kernel_rows.append(vec)
    return rows_to_subspace(f.field, f.base_dim, f.source_arity, kernel_rows)


def invert_map(f: LinearMap) -> LinearMap:
    """Two-sided inverse of a square map, or :class:`Singular`."""
    if f.source_arity != f.target_arity:
        raise ShapeError("only maps between equal tensor powers can be inverted")
    field = f.field
    n, s = f.base_dim, f.source_arity
    size = n ** s
    rows = {}
    for src, col in f.cols.items():
        for tgt, v in col.items():
            rows.setdefault(tgt, {})[(0, src)] = v
    for tgt in itertools.product(range(n), repeat=s):
        rows.setdefault(tgt, {})[(1, tgt)] = field.one
    reduced, pivots = rref(field, rows.values())
    main_pivots = [p for p in pivots if p[0] == 0]
    if len(main_pivots) < size:
        raise Singular("map is singular", size - len(main_pivots))
    cols = {}
    for row, pivot in zip(reduced, pivots):
        if pivot[0] != 0:
            raise Singular("map is singular", size - len(main_pivots))
        src_of_inverse_row = pivot[1]
        for key, v in row.items():
            if key[0] == 1:
                cols.setdefault(key[1], {})[src_of_inverse_row] = v
    return LinearMap.from_cols(field, n, s, s, cols)


# ---------------------------------------------------------------------------
# mixed carrier / ambient coordinate changes
# ---------------------------------------------------------------------------


def express_in_legs(field: FieldSpec, w: Vec, factors):
    """Coordinates of an ambient tensor in a leg-wise product of bases.

    ``factors`` is a list whose items are either a :class:`SubspaceBasis`
    (consuming ``ambient_arity`` legs) or ``None`` (a standard basis leg).
    Returns a sparse coordinate tensor keyed by one index per factor, or
    None when ``w`` does not lie in the product subspace.
    """
    spans = [1 if f is None else f.ambient_arity for f in factors]
    pivot_maps = [None if f is None else f.pivot_index() for f in factors]
    coords: Vec = {}
    for key, val in w.items():
        if len(key) != sum(spans):
            raise ShapeError("tensor has %d legs, factors expect %d"
                             % (len(key), sum(spans)))
        idx = []
        pos = 0
        ok = True
        for span, pmap in zip(spans, pivot_maps):
            chunk = key[pos:pos + span]
            pos += span
            if pmap is None:
                idx.append(chunk[0])
            else:
                a = pmap.get(chunk)
                if a is None:
                    ok = False
                    break
                idx.append(a)
        if ok:
            coords[tuple(idx)] = val
    if include_from_legs(field, coords, factors) != w:
        return None
    return coords


def include_from_legs(field: FieldSpec, coords: Vec, factors) -> Vec:
    """Inverse of :func:`express_in_legs` on coordinate tensors."""
    out: Vec = {}
    for idx, val in coords.items():
        term = {(): val}
        for i, f in zip(idx, factors):
            leg = {(i,): field.one} if f is None else f.vectors[i]
            term = vec_tensor(field, term, leg)
        out = vec_add(field, out, term)
    return out
