"""Exact scalar arithmetic over the rationals and over prime fields F_p.

Scalars are plain Python values: ``fractions.Fraction`` over Q and canonical
residues (ints in ``0..p-1``) over F_p.  A :class:`FieldSpec` carries the
arithmetic; it is hashable and shared by every tensor built over it.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionByZero, InvalidField, ModulusMismatch, ParseError

RATIONALS = "Q"
PRIME = "Fp"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Ground field: exact rationals (kind ``"Q"``) or F_p (kind ``"Fp"``)."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == RATIONALS:
            if self.p is not None:
                raise InvalidField("rationals take no modulus")
        elif self.kind == PRIME:
            if self.p is None or not _is_prime(self.p):
                raise InvalidField("modulus %r is not a prime >= 2" % (self.p,))
        else:
            raise InvalidField("unknown field kind %r" % (self.kind,))

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(RATIONALS)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(PRIME, p)

    # -- basic data ---------------------------------------------------------

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == RATIONALS else self.p

    @property
    def zero(self):
        return Fraction(0) if self.kind == RATIONALS else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == RATIONALS else 1

    def require_same(self, other: "FieldSpec"):
        if self != other:
            raise ModulusMismatch("mixed ground fields %s and %s" % (self, other))

    # -- arithmetic ---------------------------------------------------------

    def from_int(self, i: int):
        return Fraction(i) if self.kind == RATIONALS else i % self.p

    def add(self, a, b):
        return a + b if self.kind == RATIONALS else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.kind == RATIONALS else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.kind == RATIONALS else (a * b) % self.p

    def neg(self, a):
        return -a if self.kind == RATIONALS else (-a) % self.p

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero")
        if self.kind == RATIONALS:
            return 1 / a
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        if k < 0:
            return self.inv(self.pow(a, -k))
        out = self.one
        for _ in range(k):
            out = self.mul(out, a)
        return out

    # -- text ---------------------------------------------------------------

    def parse(self, text: str):
        """Parse ``"a"`` or ``"a/b"`` into a canonical scalar."""
        if not isinstance(text, str):
            raise ParseError("scalar must be given as a string, got %r" % (text,))
        body = text.strip()
        try:
            if "/" in body:
                num_s, den_s = body.split("/", 1)
                num, den = int(num_s), int(den_s)
                if den == 0:
                    raise DivisionByZero("zero denominator in %r" % text)
                if self.kind == RATIONALS:
                    return Fraction(num, den)
                return self.div(num % self.p, den % self.p)
            num = int(body)
        except DivisionByZero:
            raise
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError("bad scalar text %r: %s" % (text, exc)) from exc
        return self.from_int(num)

    def format(self, a) -> str:
        return str(a)

    def elements(self):
        """Iterate all field elements (prime fields only)."""
        if self.kind != PRIME:
            raise InvalidField("cannot enumerate the rationals")
        return range(self.p)


@dataclass(frozen=True)
class Scalar:
    """A field element tagged with its field, as used at API boundaries."""

    field: FieldSpec
    value: object

    @classmethod
    def parse(cls, field: FieldSpec, text: str) -> "Scalar":
        return cls(field, field.parse(text))

    @classmethod
    def of(cls, field: FieldSpec, raw) -> "Scalar":
        if isinstance(raw, int):
            raw = field.from_int(raw)
        return cls(field, raw)

    def __str__(self):
        return self.field.format(self.value)


def field_arith(op: str, a, b=None, field: FieldSpec | None = None) -> Scalar:
    """Scalar calculator over one field: add, mul, neg, inv, parse.

    ``a`` and ``b`` are :class:`Scalar` values, except for ``parse`` where
    ``a`` is text and ``field`` names the target field.
    """
    if op == "parse":
        if field is None:
            raise ParseError("parse needs an explicit field")
        return Scalar.parse(field, a)
    if not isinstance(a, Scalar):
        raise ParseError("operand %r is not a Scalar" % (a,))
    f = a.field
    if op == "neg":
        return Scalar(f, f.neg(a.value))
    if op == "inv":
        return Scalar(f, f.inv(a.value))
    if op in ("add", "mul"):
        if not isinstance(b, Scalar):
            raise ParseError("second operand %r is not a Scalar" % (b,))
        f.require_same(b.field)
        fn = f.add if op == "add" else f.mul
        return Scalar(f, fn(a.value, b.value))
    raise ParseError("unknown scalar operation %r" % (op,))
