import random
from fractions import Fraction

import pytest

from nilpoly.errors import LayoutError, MembershipError, RingError
from nilpoly.scalars import ModInt
from nilpoly.unitri import UniTri

from conftest import random_unitri
from oracles import dense, gauss_jordan_inverse

a, b, c = Fraction(2, 3), Fraction(-5), Fraction(7, 2)


def T(n, i, j, x):
    return UniTri.elementary(n, i, j, x)


def comm(x, y):
    return x.commutator(y)


def conj(x, y):
    # x^y = y x y^-1, so that x^y = [y, x] x
    return y * x * y.inverse()


def test_mul_examples():
    assert T(3, 1, 2, a) * T(3, 2, 3, b) == UniTri(3, {(1, 2): a, (2, 3): b, (1, 3): a * b})
    x = random_unitri(random.Random(1), 4)
    assert UniTri.identity(4) * x == x == x * UniTri.identity(4)
    assert T(3, 1, 2, 1) * T(3, 1, 2, 1) == T(3, 1, 2, 2)


def test_inverse_examples():
    assert T(4, 1, 3, a).inverse() == T(4, 1, 3, -a)
    m = UniTri.from_rows([[1, 1, 1], [0, 1, 1], [0, 0, 1]])
    expected = UniTri.from_rows([[1, -1, 0], [0, 1, -1], [0, 0, 1]])
    assert m.inverse() == expected
    assert m * expected == UniTri.identity(3)
    assert UniTri.identity(5).inverse() == UniTri.identity(5)


def test_commutator_examples():
    assert comm(T(3, 1, 2, a), T(3, 2, 3, b)) == T(3, 1, 3, a * b)
    assert comm(T(4, 1, 2, a), T(4, 3, 4, b)).is_identity()
    x = random_unitri(random.Random(2), 4)
    assert comm(x, x).is_identity()


def test_phi_examples():
    m = UniTri.from_rows([[1, 1, 1], [0, 1, 1], [0, 0, 1]])
    assert m.phi(1) == [1, 1]
    assert T(3, 1, 3, c).phi(2) == [c]
    with pytest.raises(MembershipError):
        m.phi(2)


def test_phi_is_homomorphism(rng):
    for _ in range(50):
        x, y = random_unitri(rng, 4), random_unitri(rng, 4)
        assert (x * y).phi(1) == [p + q for p, q in zip(x.phi(1), y.phi(1))]
        u, v = x.truncate(0) * comm(x, y), comm(y, x)
        assert (u * v).phi(2) == [p + q for p, q in zip(u.phi(2), v.phi(2))]


def test_truncate_examples(rng):
    x = random_unitri(rng, 4)
    assert x.truncate(0) == UniTri.identity(4)
    m = UniTri.from_rows([[1, 1, 1], [0, 1, 1], [0, 0, 1]])
    assert m.truncate(1) == UniTri.from_rows([[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    for _ in range(100):
        x, y = random_unitri(rng, 4), random_unitri(rng, 4)
        for k in range(4):
            assert (x * y).truncate(k) == (x.truncate(k) * y.truncate(k)).truncate(k)


def test_lcs_membership_examples():
    assert UniTri.identity(4).lcs_membership() == 4
    assert T(3, 1, 3, 5).lcs_membership() == 2
    assert (T(3, 1, 2, 1) * T(3, 2, 3, 1)).lcs_membership() == 1


def test_group_axioms(rng):
    for _ in range(100):
        x, y, z = (random_unitri(rng, 4) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert x * x.inverse() == UniTri.identity(4) == x.inverse() * x


def test_hall_witt(rng):
    for _ in range(100):
        x, y, z = (random_unitri(rng, 4) for _ in range(3))
        lhs = (
            conj(comm(comm(x.inverse(), y), z), x)
            * conj(comm(comm(z.inverse(), x), y), z)
            * conj(comm(comm(y.inverse(), z), x), y)
        )
        assert lhs.is_identity()
        second = comm(comm(y, x), conj(z, x)) * comm(comm(x, z), conj(y, z)) * comm(comm(z, y), conj(x, y))
        assert second.is_identity()


def test_commutator_expansion_identities(rng):
    for _ in range(100):
        x, y, z = (random_unitri(rng, 4) for _ in range(3))
        assert comm(x, y * z) == comm(x, y) * conj(comm(x, z), y)
        assert comm(x * y, z) == conj(comm(y, z), x) * comm(x, z)
        assert conj(x, y) == comm(y, x) * x
        assert comm(x, y).inverse() == comm(y, x)


def test_commutator_gradedness(rng):
    for _ in range(100):
        x, y = random_unitri(rng, 5), random_unitri(rng, 5)
        x = x.truncate(0) * comm(x, y) if rng.random() < 0.5 else x
        y = comm(y, random_unitri(rng, 5)) if rng.random() < 0.5 else y
        bound = min(x.lcs_membership() + y.lcs_membership(), 5)
        assert comm(x, y).lcs_membership() >= bound


def test_inverse_matches_gauss_jordan(rng):
    for _ in range(100):
        x = random_unitri(rng, 5)
        assert dense(x.inverse()) == gauss_jordan_inverse(dense(x))


def test_trivial_group():
    e = UniTri.identity(1)
    assert e * e == e and e.inverse() == e and e.lcs_membership() == 1
    assert e.truncate(0) == e


def test_mod_entries_and_mismatch():
    x = UniTri(3, {(1, 2): ModInt(3, 4), (2, 3): ModInt(1, 4)}, ModInt(0, 4))
    # (1,3) entry of x^k is C(k,2)*3*1, so the order is 8 rather than 4
    assert (x ** 4)[1, 3] == ModInt(2, 4)
    assert (x ** 8).is_identity()
    with pytest.raises(RingError):
        x * UniTri.identity(3)
    with pytest.raises(LayoutError):
        UniTri.identity(3) * UniTri.identity(4)


def test_from_rows_rejects_non_unitriangular():
    with pytest.raises(MembershipError):
        UniTri.from_rows([[1, 0], [1, 1]])
    with pytest.raises(MembershipError):
        UniTri.from_rows([[2, 0], [0, 1]])
