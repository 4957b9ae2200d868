"""Exact linear algebra over QQ on coordinate vectors of expressions."""

from __future__ import annotations

from sympy import QQ
from sympy.polys.matrices import DomainMatrix


def rational(c):
    """A constant coefficient as an element of QQ (error when x-dependent)."""
    if hasattr(c, "is_ground"):
        if not c.is_ground:
            raise ValueError(f"expected a constant coefficient, got {c}")
        return QQ(c.LC) if c else QQ(0)
    return QQ(c)


def matrix_from_columns(columns, row_index) -> DomainMatrix:
    """Matrix whose j-th column holds the coordinates ``columns[j]`` (dicts key -> QQ)."""
    rows = len(row_index)
    data = [[QQ(0)] * len(columns) for _ in range(rows)]
    for j, col in enumerate(columns):
        for key, v in col.items():
            data[row_index[key]][j] = QQ(v)
    return DomainMatrix(data, (rows, len(columns)), QQ)


def rank(M: DomainMatrix) -> int:
    if 0 in M.shape:
        return 0
    return M.rank()


def nullspace(M: DomainMatrix) -> list[list]:
    """Basis of the kernel as lists of QQ."""
    rows, cols = M.shape
    if cols == 0:
        return []
    if rows == 0:
        return [[QQ(int(i == j)) for i in range(cols)] for j in range(cols)]
    N = M.nullspace()
    return N.to_list() if N.shape[0] else []


def solve(M: DomainMatrix, b: list):
    """One solution of ``M v = b`` (free variables set to 0) or ``None``."""
    rows, cols = M.shape
    if rows == 0:
        return [QQ(0)] * cols
    data = [r + [QQ(v)] for r, v in zip(M.to_list(), b)]
    R, pivots = DomainMatrix(data, (rows, cols + 1), QQ).rref()
    if cols in pivots:
        return None
    R = R.to_list()
    v = [QQ(0)] * cols
    for i, pc in enumerate(pivots):
        v[pc] = R[i][cols]
    return v


def matmul(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    return A.matmul(B)


def is_zero(M: DomainMatrix) -> bool:
    return all(not v for row in M.to_list() for v in row)
