"""Linear algebra over F_q and the non-period witness for matrix rings.

For a nonzero nilpotent A = S J S^-1 (J its nilpotent Jordan form with
ones on the subdiagonal) and C the companion matrix of t^n - 1, the
matrix X = S C S^-1 has every power invertible while every power of
X - A = S (C - J) S^-1 is singular. So (X - A)^m != X^m for all m, and A
is not a period of any power map.
"""

from __future__ import annotations

import numpy as np

from .constructions import GaloisField, MatrixRing
from .numtheory import predicted_mu1_matrix


class MatrixOverField:
    """Square matrix of field-element ids over a GaloisField."""

    def __init__(self, field: GaloisField, entries):
        self.field = field
        self.entries = np.array(entries, dtype=np.int64)
        if self.entries.ndim != 2 or self.entries.shape[0] != self.entries.shape[1]:
            raise ValueError("expected a square matrix")
        if ((self.entries < 0) | (self.entries >= field.q)).any():
            raise ValueError("entry ids out of range for the field")

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def identity(cls, field, n):
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, field, n):
        return cls(field, np.zeros((n, n), dtype=np.int64))

    @classmethod
    def from_ring_element(cls, R: MatrixRing, x: int) -> "MatrixOverField":
        return cls(R.F, R.to_matrix(x))

    def to_ring_element(self, R: MatrixRing) -> int:
        return R.encode(self.entries)

    def __eq__(self, other):
        return isinstance(other, MatrixOverField) and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash(self.entries.tobytes())

    def __add__(self, other):
        return MatrixOverField(self.field, self.field._add(self.entries, other.entries))

    def __neg__(self):
        return MatrixOverField(self.field, self.field._neg(self.entries))

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other):
        F, n = self.field, self.n
        out = np.zeros((n, n), dtype=np.int64)
        for t in range(n):
            out = F._add(out, F._mul(self.entries[:, t, None], other.entries[None, t, :]))
        return MatrixOverField(F, out)

    def __pow__(self, m: int):
        if m < 0:
            raise ValueError("negative powers: use inverse()")
        result, base = MatrixOverField.identity(self.field, self.n), self
        while m:
            if m & 1:
                result = result @ base
            base = base @ base
            m >>= 1
        return result

    def __repr__(self):
        return f"MatrixOverField(q={self.field.q}, {self.entries.tolist()})"

    def is_zero(self) -> bool:
        return not self.entries.any()

    def inverse(self) -> "MatrixOverField":
        n = self.n
        aug = np.concatenate([self.entries, np.eye(n, dtype=np.int64)], axis=1)
        red, pivots = _rref(self.field, aug, n)
        if pivots != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return MatrixOverField(self.field, red[:, n:])


def _rref(F: GaloisField, M: np.ndarray, ncols: int | None = None):
    """Reduced row echelon form; pivots searched in the first ``ncols`` columns."""
    M = np.array(M, dtype=np.int64)
    rows, cols = M.shape
    ncols = cols if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        M[[r, piv]] = M[[piv, r]]
        M[r] = F._mul(M[r], F.inv(M[r, c]))
        for i in range(rows):
            if i != r and M[i, c]:
                M[i] = F._add(M[i], F._neg(F._mul(M[r], M[i, c])))
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def rank(A: MatrixOverField) -> int:
    return len(_rref(A.field, A.entries)[1])


def det(A: MatrixOverField) -> int:
    F = A.field
    M = A.entries.copy()
    n = A.n
    result = 1
    for c in range(n):
        nz = np.flatnonzero(M[c:, c])
        if nz.size == 0:
            return 0
        piv = c + int(nz[0])
        if piv != c:
            M[[c, piv]] = M[[piv, c]]
            result = int(F._neg(result))
        result = int(F._mul(result, M[c, c]))
        inv = F.inv(M[c, c])
        for i in range(c + 1, n):
            if M[i, c]:
                M[i] = F._add(M[i], F._neg(F._mul(M[c], F._mul(M[i, c], inv))))
    return result


def is_invertible(A: MatrixOverField) -> bool:
    return rank(A) == A.n


def nullspace(A: MatrixOverField) -> list[np.ndarray]:
    """Basis of {v : A v = 0}, one vector per free column of the RREF."""
    F, n = A.field, A.n
    red, pivots = _rref(F, A.entries)
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        v = np.zeros(n, dtype=np.int64)
        v[free] = 1
        for i, pc in enumerate(pivots):
            v[pc] = int(F._neg(red[i, free]))
        basis.append(v)
    return basis


def _apply(A: MatrixOverField, v: np.ndarray) -> np.ndarray:
    F = A.field
    acc = np.zeros(A.n, dtype=np.int64)
    for t in range(A.n):
        acc = F._add(acc, F._mul(A.entries[:, t], v[t]))
    return acc


def _span_rank(F, vectors) -> int:
    if not vectors:
        return 0
    return len(_rref(F, np.array(vectors, dtype=np.int64))[1])


def nilpotent_jordan(A: MatrixOverField) -> tuple[MatrixOverField, MatrixOverField]:
    """(S, J) with A = S J S^-1; J block diagonal, blocks by decreasing size,
    ones on each block's subdiagonal.
    """
    F, n = A.field, A.n
    if A.is_zero():
        raise ValueError("A must be nonzero")
    powers = [MatrixOverField.identity(F, n)]
    while not powers[-1].is_zero():
        if len(powers) > n:
            raise ValueError("A is not nilpotent")
        powers.append(powers[-1] @ A)
    top = len(powers) - 1  # A^top = 0, A^(top-1) != 0

    chains: list[tuple[np.ndarray, int]] = []
    for s in range(top, 0, -1):
        span = list(nullspace(powers[s - 1]))
        for v, length in chains:
            span.append(_apply(powers[length - s], v))
        base_rank = _span_rank(F, span)
        for u in nullspace(powers[s]):
            if _span_rank(F, span + [u]) > base_rank:
                span.append(u)
                base_rank += 1
                chains.append((u, s))

    cols, J = [], np.zeros((n, n), dtype=np.int64)
    for v, length in chains:
        start = len(cols)
        vec = v
        for t in range(length):
            cols.append(vec)
            if t + 1 < length:
                J[start + t + 1, start + t] = 1
            vec = _apply(A, vec)
    if len(cols) != n:
        raise AssertionError("Jordan chains do not span the space")
    S = MatrixOverField(F, np.array(cols, dtype=np.int64).T)
    Jm = MatrixOverField(F, J)
    if not (S @ Jm @ S.inverse()) == A:
        raise AssertionError("S J S^-1 does not recompose A")
    return S, Jm


def companion_t_n_minus_1(F: GaloisField, n: int) -> MatrixOverField:
    C = np.zeros((n, n), dtype=np.int64)
    C[0, n - 1] = 1
    for i in range(n - 1):
        C[i + 1, i] = 1
    return MatrixOverField(F, C)


def default_window(F: GaloisField, n: int) -> int:
    return n + predicted_mu1_matrix(F.p, F.k, n) - 1


def check_witness(A: MatrixOverField, X: MatrixOverField, window: int) -> bool:
    """det(X^m) != 0 and det((X - A)^m) == 0 for every m in [1, window]."""
    D = X - A
    Xm, Dm = X, D
    for m in range(1, window + 1):
        if m > 1:
            Xm, Dm = Xm @ X, Dm @ D
        if det(Xm) == 0 or det(Dm) != 0:
            return False
    return True


def non_period_witness(A: MatrixOverField, window: int | None = None) -> MatrixOverField:
    """X = S C S^-1 with X^m invertible and (X - A)^m singular for m <= window."""
    S, _ = nilpotent_jordan(A)
    C = companion_t_n_minus_1(A.field, A.n)
    X = S @ C @ S.inverse()
    if window is None:
        window = default_window(A.field, A.n)
    if not check_witness(A, X, window):
        raise AssertionError("witness guarantee failed")
    return X
