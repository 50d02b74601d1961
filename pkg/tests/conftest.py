import pytest

from torsorkit.algebra import AlgebraPresentation
from torsorkit.exactlin import LinearMap
from torsorkit.fields import FieldSpec
from torsorkit.hopf import HopfPresentation


@pytest.fixture(scope="session")
def Q():
    return FieldSpec.rationals()


@pytest.fixture(scope="session")
def F5():
    return FieldSpec.prime(5)


@pytest.fixture(scope="session")
def F7():
    return FieldSpec.prime(7)


def sweedler_h4():
    """The 4-dimensional Hopf algebra with non-involutive antipode.

    Basis 1, g, x, gx with g^2 = 1, x^2 = 0, xg = -gx, comul(g) = g⊗g,
    comul(x) = x⊗1 + g⊗x.  The antipode squares to conjugation by g, so
    S^2 != Id; this separates formulas that coincide on group algebras.
    """
    Q = FieldSpec.rationals()
    one = Q.one
    neg = Q.from_int(-1)
    entries = []

    def put(i, j, k, c):
        entries.append(((k,), (i, j), c))

    for a in range(4):
        put(0, a, a, one)
        if a:
            put(a, 0, a, one)
    put(1, 1, 0, one)
    put(1, 2, 3, one)
    put(1, 3, 2, one)
    put(2, 1, 3, neg)
    put(3, 1, 2, neg)
    mul = LinearMap.from_entries(Q, 4, 2, 1, entries)
    alg = AlgebraPresentation(Q, 4, ("1", "g", "x", "gx"), mul, {(0,): one})
    comul = LinearMap.from_cols(Q, 4, 1, 2, {
        (0,): {(0, 0): one},
        (1,): {(1, 1): one},
        (2,): {(2, 0): one, (1, 2): one},
        (3,): {(3, 1): one, (0, 3): one},
    })
    counit = LinearMap.from_cols(Q, 4, 1, 0,
                                 {(0,): {(): one}, (1,): {(): one}})
    antipode = LinearMap.from_cols(Q, 4, 1, 1, {
        (0,): {(0,): one},
        (1,): {(1,): one},
        (2,): {(3,): neg},
        (3,): {(2,): one},
    })
    return HopfPresentation(alg, comul, counit, antipode)
