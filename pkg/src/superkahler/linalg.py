"""Matrices of polynomials and exact supermatrix inversion.

Inversion is supported when the body of the matrix (all odd variables
set to zero) is a constant invertible rational matrix.  The remainder N
then consists of entries in which every monomial carries at least one
odd factor, so N is nilpotent and the Neumann series

    G^-1 = (sum_k (-G0^-1 N)^k) G0^-1

terminates after at most (number of odd variables) steps.  Matrix
products keep the written entry order, which is the composition rule
for operators written with right coordinates.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import SuperPolynomial, VariableList
from .errors import DegenerateFormError, UnsupportedInversionError

Matrix = tuple[tuple[SuperPolynomial, ...], ...]
RationalMatrix = list[list[Fraction]]


def identity_matrix(vars: VariableList, dim: int) -> Matrix:
    one = SuperPolynomial.one(vars)
    zero = SuperPolynomial.zero(vars)
    return tuple(tuple(one if i == j else zero for j in range(dim))
                 for i in range(dim))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    rows, inner, cols = len(a), len(b), len(b[0])
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = None
            for k in range(inner):
                term = a[i][k] * b[k][j]
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_neg(a: Matrix) -> Matrix:
    return tuple(tuple(-x for x in row) for row in a)


def mat_scale_rational(a: Matrix, c: Fraction) -> Matrix:
    return tuple(tuple(x.scale(c) for x in row) for row in a)


def mat_equal(a: Matrix, b: Matrix) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_is_zero(a: Matrix) -> bool:
    return all(x.is_zero() for row in a for x in row)


def rational_inverse(m: RationalMatrix) -> RationalMatrix | None:
    """Gauss-Jordan inverse over Q; None when singular."""
    dim = len(m)
    aug = [[Fraction(m[i][j]) for j in range(dim)]
           + [Fraction(1 if i == j else 0) for j in range(dim)] for i in range(dim)]
    for col in range(dim):
        pivot = next((r for r in range(col, dim) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(dim):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [row[dim:] for row in aug]


def body_matrix(g: Matrix) -> tuple[RationalMatrix, bool]:
    """Constant part of the body; flag is False when some body entry is
    a non-constant polynomial in the even variables."""
    out: RationalMatrix = []
    constant = True
    for row in g:
        body_row = []
        for entry in row:
            body = entry.body()
            if len(body.terms) > (1 if body.constant_term() != 0 else 0):
                constant = False
            body_row.append(body.constant_term())
        out.append(body_row)
    return out, constant


def rational_to_poly_matrix(m: RationalMatrix, vars: VariableList) -> Matrix:
    return tuple(tuple(SuperPolynomial.constant(vars, c) for c in row) for row in m)


def super_inverse(g: Matrix, vars: VariableList) -> Matrix:
    """Exact two-sided inverse within the supported class.

    Raises UnsupportedInversionError when the body is not constant and
    DegenerateFormError when the constant body is singular.  The result
    is verified to satisfy g * X = X * g = id before it is returned.
    """
    dim = len(g)
    g0, constant = body_matrix(g)
    if not constant:
        raise UnsupportedInversionError(
            "matrix body depends on even variables; only constant bodies "
            "plus nilpotent (odd-variable) remainders can be inverted exactly")
    g0_inv = rational_inverse(g0)
    if g0_inv is None:
        raise DegenerateFormError("matrix body is singular")
    g0_poly = rational_to_poly_matrix(g0, vars)
    g0_inv_poly = rational_to_poly_matrix(g0_inv, vars)
    n = mat_add(g, mat_neg(g0_poly))
    # K = -G0^-1 N is nilpotent: every entry monomial has an odd factor
    k = mat_neg(matmul(g0_inv_poly, n))
    series = identity_matrix(vars, dim)
    power = identity_matrix(vars, dim)
    for _ in range(vars.n_odd):
        power = matmul(power, k)
        if mat_is_zero(power):
            break
        series = mat_add(series, power)
    inv = matmul(series, g0_inv_poly)
    ident = identity_matrix(vars, dim)
    if not (mat_equal(matmul(g, inv), ident) and mat_equal(matmul(inv, g), ident)):
        raise UnsupportedInversionError("Neumann series did not produce an inverse")
    return inv
