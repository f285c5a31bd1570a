import itertools
import random
from fractions import Fraction

import pytest
import sympy

from grpdhopf.linalg import (DimensionError, FieldMismatchError, FieldSpec, Fp, Matrix, SingularMatrixError,
                             block_diag, inverse, kernel_basis, kron, random_matrix, rank, rref, same_column_space,
                             solve_linear)

from conftest import F5, Q

F2 = FieldSpec.prime(2)


def M(field, rows):
    return Matrix.from_rows(field, [[field(v) for v in r] for r in rows])


def test_field_parse_and_format():
    assert FieldSpec.parse("rational") == Q
    assert FieldSpec.parse("fp:5") == F5
    for bad in ("fp:4", "fp:1", "reals", "fp:x"):
        with pytest.raises(ValueError):
            FieldSpec.parse(bad)
    assert Q.format(Fraction(-3, 6)) == "-1/2"
    assert Q.parse_scalar("-1/2") == Fraction(-1, 2)
    assert F5.parse_scalar(F5.format(F5(7))) == F5(2)


def test_fp_arithmetic():
    a, b = Fp(3, 5), Fp(4, 5)
    assert a + b == Fp(2, 5)
    assert a * b == Fp(2, 5)
    assert a / b * b == a
    assert a.inverse() * a == Fp(1, 5)
    with pytest.raises(ZeroDivisionError):
        Fp(0, 5).inverse()


def test_rref_examples():
    r, rk, piv = rref(M(Q, [[1, 2], [2, 4]]))
    assert (rk, piv) == (1, [0])
    assert r == M(Q, [[1, 2], [0, 0]])
    i3 = Matrix.identity(Q, 3)
    assert rref(i3) == (i3, 3, [0, 1, 2])
    r, rk, _ = rref(M(F2, [[1, 1]]))
    assert r == M(F2, [[1, 1]]) and rk == 1


def test_kernel_examples():
    k = kernel_basis(M(F2, [[1, 1]]))
    # oracle: enumerate F2^2
    null = [v for v in itertools.product(range(2), repeat=2) if (v[0] + v[1]) % 2 == 0 and any(v)]
    assert k.cols == 1 and [tuple(int(x.v) for x in k.column(0))] == null
    assert kernel_basis(M(Q, [[1, 2], [3, 4]])).cols == 0
    assert kernel_basis(Matrix.zeros(Q, 2, 3)).cols == 3


def test_solve_examples():
    b = M(Q, [[1, 7], [2, -3]])
    assert solve_linear(Matrix.identity(Q, 2), b) == b
    assert solve_linear(M(Q, [[1, 2], [2, 4]]), M(Q, [[1], [3]])) is None
    assert solve_linear(M(Q, [[2]]), M(Q, [[1]])) == Matrix.from_rows(Q, [[Fraction(1, 2)]])
    with pytest.raises(DimensionError):
        solve_linear(Matrix.identity(Q, 2), Matrix.identity(Q, 3))


def test_kron_examples():
    assert kron(Matrix.identity(Q, 2), Matrix.identity(Q, 3)) == Matrix.identity(Q, 6)
    m = M(Q, [[1, 2], [3, 4]])
    assert kron(M(Q, [[2]]), m) == m.scale(Q(2))
    a = M(Q, [[5, 6], [7, 8]])
    k = kron(a, m)
    assert k.shape == (4, 4)
    assert k.submatrix([0, 1], [0, 1]) == m.scale(Q(5))
    with pytest.raises(FieldMismatchError):
        kron(a, Matrix.identity(F5, 2))


def test_inverse_examples():
    assert inverse(Matrix.identity(Q, 4)) == Matrix.identity(Q, 4)
    assert inverse(M(Q, [[1, 1], [0, 1]])) == M(Q, [[1, -1], [0, 1]])
    with pytest.raises(SingularMatrixError):
        inverse(M(Q, [[1, 2], [2, 4]]))


def _sympy(m):
    return sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in m.data])


@pytest.mark.parametrize("seed", range(25))
def test_rref_matches_sympy_over_rationals(seed):
    rng = random.Random(seed)
    rows, cols = rng.randint(1, 5), rng.randint(1, 5)
    m = random_matrix(Q, rows, cols, rng, density=0.6)
    r, rk, piv = rref(m)
    s, spiv = _sympy(m).rref()
    assert list(piv) == list(spiv)
    assert _sympy(r) == s
    assert rk == _sympy(m).rank()


def _span_size_f5(m):
    # oracle for rank over F5: |column space| = 5^rank
    vecs = {tuple(m.apply([F5(c) for c in coeffs])) for coeffs in itertools.product(range(5), repeat=m.cols)}
    return len(vecs)


@pytest.mark.parametrize("seed", range(10))
def test_rank_over_f5_matches_enumeration(seed):
    rng = random.Random(seed)
    m = random_matrix(F5, rng.randint(1, 3), rng.randint(1, 3), rng, density=0.7)
    assert _span_size_f5(m) == 5 ** rank(m)


def test_block_diag_and_column_space():
    a, b = M(Q, [[1]]), M(Q, [[0, 1], [1, 0]])
    d = block_diag(Q, [a, b])
    assert d == M(Q, [[1, 0, 0], [0, 0, 1], [0, 1, 0]])
    assert same_column_space(M(Q, [[1, 0], [0, 1]]), M(Q, [[1, 1], [1, -1]]))
    assert not same_column_space(M(Q, [[1], [0]]), M(Q, [[0], [1]]))


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatchError):
        Matrix.identity(Q, 2) @ Matrix.identity(F5, 2)
