"""Exact dense linear algebra over the rationals.

Matrices are numpy ``object`` arrays holding :class:`fractions.Fraction`
entries, so ``@``/``np.dot`` stay exact.  Complex (``CNum``) matrices are
ordinary ``complex128`` arrays and only appear in the approximate paths of
the orbit reducer.

Elimination is fraction-free: rows are cleared to primitive integer vectors
and combined by cross-multiplication, with the row content divided out after
every step to keep entries small.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

import numpy as np

Rational = Fraction
CNum = complex

#: Zero threshold for the approximate (complex) code paths only.
EPS = 1e-9


class LinalgError(ValueError):
    pass


class NoRootsError(LinalgError):
    pass


# -- scalars -----------------------------------------------------------------

def to_rational(x) -> Fraction:
    """Parse ints, Fractions and ``"p/q"`` strings.  Floats are rejected."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def fmt_rational(q) -> str:
    """Serialize as ``"p/q"`` (or ``"p"`` when q = 1)."""
    return str(Fraction(q))


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


# -- matrices ----------------------------------------------------------------

def matrix(rows) -> np.ndarray:
    """Build an exact matrix (object array of Fraction) from nested rows."""
    arr = np.array(rows, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = to_rational(v)
    return out


def vector(entries) -> np.ndarray:
    out = np.empty(len(entries), dtype=object)
    for i, v in enumerate(entries):
        out[i] = to_rational(v)
    return out


def zeros(rows: int, cols: int | None = None) -> np.ndarray:
    shape = (rows,) if cols is None else (rows, cols)
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def is_zero(M) -> bool:
    return all(v == 0 for v in np.asarray(M).flat)


def _is_approx(M: np.ndarray) -> bool:
    if M.dtype.kind in "fc":
        return True
    return any(isinstance(v, (float, complex)) for v in M.flat)


def _num_den(v):
    if isinstance(v, int):
        return int(v), 1
    if not isinstance(v, Fraction):
        v = Fraction(v)
    return v.numerator, v.denominator


def _integer_rows(M: np.ndarray) -> Iterable[list[int]]:
    for row in M:
        pairs = [_num_den(v) for v in row]
        den = math.lcm(*(q for _, q in pairs)) if pairs else 1
        yield [p * (den // q) for p, q in pairs]


def _primitive(row: list[int]) -> list[int]:
    g = math.gcd(*row)
    if g > 1:
        row = [v // g for v in row]
    return row


class Echelon:
    """Incremental fraction-free reduced echelon form over the integers.

    Every stored row is primitive, has a positive leading entry, and is zero in
    the pivot columns of all other stored rows.  That makes reduction of a new
    row a single pass, and the final form is unique up to row scaling.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, list[int]] = {}  # pivot column -> row

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row: list[int]) -> list[int]:
        for p, base in self.rows.items():
            rp = row[p]
            if rp:
                bp = base[p]
                row = _primitive([bp * x - rp * y for x, y in zip(row, base)])
        return row

    def add(self, row: Sequence[int]) -> bool:
        """Insert a row; returns True iff it raised the rank."""
        if len(self.rows) == self.ncols:
            return False
        row = self.reduce(list(row))
        lead = next((j for j, v in enumerate(row) if v), None)
        if lead is None:
            return False
        if row[lead] < 0:
            row = [-v for v in row]
        row = _primitive(row)
        piv = row[lead]
        for p, base in self.rows.items():
            bq = base[lead]
            if bq:
                self.rows[p] = _primitive([piv * x - bq * y for x, y in zip(base, row)])
        self.rows[lead] = row
        return True

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def rref(self) -> np.ndarray:
        """Rational RREF with pivot entries 1, rows ordered by pivot column."""
        out = zeros(self.rank, self.ncols)
        for i, p in enumerate(self.pivots()):
            row = self.rows[p]
            for j, v in enumerate(row):
                if v:
                    out[i, j] = Fraction(v, row[p])
        return out


def echelon(M) -> Echelon:
    M = np.asarray(M, dtype=object)
    ech = Echelon(M.shape[1])
    seen: set[tuple[int, ...]] = set()
    for row in _integer_rows(M):
        row = _primitive(row)
        if not any(row):
            continue
        key = tuple(row)
        if key in seen:
            continue
        seen.add(key)
        ech.add(row)
    return ech


def rank(M, eps: float = EPS) -> int:
    """Rank of M.

    Exact for rational input.  Complex/float input uses singular values with
    threshold ``eps * max(1, s_max)``.
    """
    M = np.asarray(M)
    if M.size == 0:
        return 0
    if _is_approx(M):
        s = np.linalg.svd(M.astype(complex), compute_uv=False)
        return int(np.sum(s > eps * max(1.0, float(s[0]))))
    return echelon(M).rank


class SubspaceBasis:
    """A linearly independent list of vectors in Q^n (rows of ``vectors``)."""

    def __init__(self, ambient_dim: int, vectors=None):
        self.ambient_dim = ambient_dim
        if vectors is None or len(vectors) == 0:
            self.vectors = zeros(0, ambient_dim)
        else:
            self.vectors = np.asarray(vectors, dtype=object).reshape(len(vectors), ambient_dim)

    @classmethod
    def spanned_by(cls, ambient_dim: int, vectors) -> "SubspaceBasis":
        """Canonical (RREF) basis of the span of arbitrary vectors."""
        if len(vectors) == 0:
            return cls(ambient_dim)
        ech = echelon(np.asarray(vectors, dtype=object).reshape(len(vectors), ambient_dim))
        return cls(ambient_dim, ech.rref())

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def __len__(self):
        return self.dim

    def __iter__(self):
        return iter(self.vectors)

    def __repr__(self):
        return f"SubspaceBasis(ambient_dim={self.ambient_dim}, dim={self.dim})"

    def is_independent(self) -> bool:
        return rank(self.vectors) == self.dim if self.dim else True

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=object).reshape(1, self.ambient_dim)
        if self.dim == 0:
            return is_zero(v)
        return rank(np.vstack([self.vectors, v])) == self.dim

    def contains_space(self, other: "SubspaceBasis") -> bool:
        return all(self.contains(v) for v in other.vectors)

    def same_span(self, other: "SubspaceBasis") -> bool:
        return self.dim == other.dim and self.contains_space(other)

    def coordinates(self, v) -> np.ndarray:
        """Coefficients c with ``c @ vectors == v``; raises if v is outside."""
        x, _ = solve_affine(self.vectors.T, np.asarray(v, dtype=object))
        if x is None:
            raise LinalgError("vector is not in the subspace")
        return x

    def intersect(self, other: "SubspaceBasis") -> "SubspaceBasis":
        if self.dim == 0 or other.dim == 0:
            return SubspaceBasis(self.ambient_dim)
        # a @ A = b @ B  <=>  [a, -b] in ker [A; -B]^T
        stacked = np.vstack([self.vectors, -other.vectors]).T
        ker = nullspace_basis(stacked)
        vecs = [k[: self.dim] @ self.vectors for k in ker.vectors]
        return SubspaceBasis.spanned_by(self.ambient_dim, vecs)

    def complement_in(self, ambient: "SubspaceBasis") -> "SubspaceBasis":
        """Some complement of self inside ``ambient`` (self must be contained)."""
        ech = Echelon(self.ambient_dim)
        for row in _integer_rows(self.vectors):
            ech.add(row)
        extra = []
        for v, row in zip(ambient.vectors, _integer_rows(ambient.vectors)):
            if ech.add(row):
                extra.append(v)
        return SubspaceBasis(self.ambient_dim, extra)

    def as_matrices(self, shape) -> list[np.ndarray]:
        return [v.reshape(shape) for v in self.vectors]


def nullspace_basis(M) -> SubspaceBasis:
    """Basis of {v : M v = 0}.

    One vector per free column f, with a 1 in position f, zeros at the other
    free columns, ordered by f.
    """
    M = np.asarray(M, dtype=object)
    ncols = M.shape[1]
    if M.shape[0] == 0:
        return SubspaceBasis(ncols, identity(ncols))
    return _kernel(echelon(M), ncols)


def _kernel(ech: Echelon, ncols: int) -> SubspaceBasis:
    # rows pivoting beyond ncols (augmented columns) are ignored
    pivots = [p for p in ech.pivots() if p < ncols]
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    vecs = zeros(len(free), ncols)
    for i, f in enumerate(free):
        vecs[i, f] = Fraction(1)
        for p in pivots:
            row = ech.rows[p]
            if row[f]:
                vecs[i, p] = Fraction(-row[f], row[p])
    return SubspaceBasis(ncols, vecs)


def solve_affine(A, b):
    """Solve ``A x = b`` exactly.

    Returns ``(particular, homogeneous)``: a particular solution (free
    variables set to 0) or None when inconsistent, and the kernel basis.
    """
    A = np.asarray(A, dtype=object)
    b = np.asarray(b, dtype=object).reshape(-1)
    nrows, ncols = A.shape
    aug = np.hstack([A, b.reshape(nrows, 1)]) if nrows else zeros(0, ncols + 1)
    ech = echelon(aug)
    # the A-parts of the reduced rows are the reduced form of A itself
    homogeneous = _kernel(ech, ncols) if nrows else SubspaceBasis(ncols, identity(ncols))
    if ncols in ech.rows:
        return None, homogeneous
    x = zeros(ncols)
    for p, row in ech.rows.items():
        x[p] = Fraction(row[ncols], row[p])
    return x, homogeneous


def inverse(M) -> np.ndarray:
    M = np.asarray(M, dtype=object)
    n = M.shape[0]
    if M.shape != (n, n):
        raise LinalgError("inverse of a non-square matrix")
    ech = echelon(np.hstack([M, identity(n)]))
    if ech.pivots()[:n] != list(range(n)) or ech.rank != n:
        raise LinalgError("matrix is singular")
    return ech.rref()[:, n:]


def det(M):
    M = np.asarray(M, dtype=object)
    return charpoly(M)[-1] * (-1) ** M.shape[0]


def charpoly(M) -> list:
    """Coefficients of det(xI - M), highest degree first (so ``[1, ...]``).

    Division-free Berkowitz recurrence over leading principal submatrices:
    ``p_{r+1} = T_r p_r`` where T_r is lower-triangular Toeplitz with first
    column ``(1, -a, -R c, -R A c, ..., -R A^{r-1} c)``.
    """
    M = np.asarray(M, dtype=object)
    n = M.shape[0]
    if M.ndim != 2 or M.shape[1] != n:
        raise LinalgError(f"charpoly needs a square matrix, got shape {M.shape}")
    poly = [Fraction(1)]
    for r in range(n):
        A = M[:r, :r]
        col = M[:r, r]
        row = M[r, :r]
        first = [Fraction(1), -M[r, r]]
        v = col
        for _ in range(r):
            first.append(-(row @ v))
            v = A @ v
        # Toeplitz product: new[i] = sum_k first[k] * poly[i - k]
        new = []
        for i in range(len(poly) + 1):
            s = Fraction(0)
            for k in range(max(0, i - len(poly) + 1), min(i, len(first) - 1) + 1):
                s += first[k] * poly[i - k]
            new.append(s)
        poly = new
    return poly


def poly_eval(coeffs, x):
    acc = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def matrix_poly_eval(coeffs, M) -> np.ndarray:
    """Horner evaluation of a polynomial (highest first) at a square matrix."""
    M = np.asarray(M, dtype=object)
    n = M.shape[0]
    acc = zeros(n, n)
    eye = identity(n)
    for c in coeffs:
        acc = acc @ M + eye * c
    return acc


def poly_roots(coeffs, eps: float = EPS) -> list[complex]:
    """All complex roots (with multiplicity) of a polynomial of degree <= 4.

    ``coeffs`` are highest degree first.  Roots come from companion-matrix
    eigenvalues, are polished by Newton steps, and are sorted by (re, im).
    """
    cs = [complex(c) for c in coeffs]
    while cs and cs[0] == 0:
        cs.pop(0)
    if len(cs) <= 1:
        raise NoRootsError("no roots: constant polynomial")
    if len(cs) > 5:
        raise LinalgError("poly_roots supports degree <= 4")
    dcs = [c * (len(cs) - 1 - i) for i, c in enumerate(cs[:-1])]
    roots = []
    for r in np.roots(cs):
        r = complex(r)
        for _ in range(3):
            d = poly_eval(dcs, r)
            if abs(d) < eps:
                break
            step = poly_eval(cs, r) / d
            if not np.isfinite(step):
                break
            r -= step
        roots.append(r)
    return sorted(roots, key=root_sort_key)


def root_sort_key(r: complex):
    return (round(r.real, 9), round(r.imag, 9))


def rational_roots(coeffs) -> list[Fraction]:
    """Distinct rational roots of a rational polynomial (highest first), ascending."""
    import sympy

    qs = [Fraction(c) for c in coeffs]
    while qs and qs[0] == 0:
        qs.pop(0)
    if len(qs) <= 1:
        return []
    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(q.numerator, q.denominator) for q in qs], x, domain="QQ")
    return sorted(Fraction(int(r.p), int(r.q)) for r in poly.ground_roots())
