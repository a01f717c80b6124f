"""Lie algebras given by structure constants over Q.

``c[i, j, k]`` is the coefficient of e_k in [e_i, e_j].  Matrices of linear
maps act on column coordinate vectors, so column j of ``ad(x)`` is [x, e_j].
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .linalg import fmt_rational, identity, solve_affine, to_rational, zeros


class LieAlgebraError(ValueError):
    pass


class SkewViolation(LieAlgebraError):
    def __init__(self, i, j, k):
        super().__init__(f"c[{i}][{j}][{k}] != -c[{j}][{i}][{k}]")
        self.triple = (i, j, k)


class JacobiViolation(LieAlgebraError):
    def __init__(self, i, j, k):
        super().__init__(f"Jacobi identity fails on basis triple ({i}, {j}, {k})")
        self.triple = (i, j, k)


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    dim: int
    basis_names: tuple[str, ...]
    c: np.ndarray
    name: str = ""

    def ad_basis(self, i: int) -> np.ndarray:
        return self.c[i].T.copy()

    def __repr__(self):
        return f"LieAlgebra({self.name or '?'}, dim={self.dim})"


def _jacobi_sum(c: np.ndarray, i: int, j: int, k: int) -> np.ndarray:
    # [e_i, [e_j, e_k]] + cyclic, via the constants only
    return c[i].T @ c[j, k] + c[j].T @ c[k, i] + c[k].T @ c[i, j]


def check_skew(c: np.ndarray):
    n = c.shape[0]
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                if c[i, j, k] != -c[j, i, k]:
                    return (i, j, k)
    return None


def check_jacobi(c: np.ndarray):
    n = c.shape[0]
    for i, j, k in itertools.combinations(range(n), 3):
        if any(v != 0 for v in _jacobi_sum(c, i, j, k)):
            return (i, j, k)
    return None


def make_lie_algebra(dim: int, names, constants, name: str = "") -> LieAlgebra:
    """Validate and wrap a dim x dim x dim tensor of structure constants.

    Skew-symmetry and the Jacobi identity are checked on every basis triple.
    Repeated-index triples are covered by skew-symmetry, so i<j<k suffices.
    """
    c = np.empty((dim, dim, dim), dtype=object)
    src = np.asarray(constants, dtype=object)
    if src.shape != (dim, dim, dim):
        raise LieAlgebraError(f"constants must have shape {(dim,) * 3}, got {src.shape}")
    for idx, v in np.ndenumerate(src):
        c[idx] = to_rational(v)
    names = tuple(names) if names is not None else tuple(f"e{i}" for i in range(dim))
    if len(names) != dim:
        raise LieAlgebraError("basis_names length must equal dim")
    bad = check_skew(c)
    if bad:
        raise SkewViolation(*bad)
    bad = check_jacobi(c)
    if bad:
        raise JacobiViolation(*bad)
    c.setflags(write=False)
    return LieAlgebra(dim, names, c, name)


def _coords(g: LieAlgebra, x) -> np.ndarray:
    x = np.asarray(x, dtype=object).reshape(-1)
    if x.shape[0] != g.dim:
        raise LieAlgebraError(f"expected a coordinate vector of length {g.dim}")
    return x


def ad(g: LieAlgebra, x) -> np.ndarray:
    """Matrix of y -> [x, y]."""
    x = _coords(g, x)
    out = zeros(g.dim, g.dim)
    for i, xi in enumerate(x):
        if xi:
            out = out + xi * g.c[i].T
    return out


def bracket(g: LieAlgebra, x, y) -> np.ndarray:
    return ad(g, x) @ _coords(g, y)


def basis_vector(g: LieAlgebra, i: int) -> np.ndarray:
    return identity(g.dim)[i]


def killing_form(g: LieAlgebra) -> np.ndarray:
    ads = [g.ad_basis(i) for i in range(g.dim)]
    K = zeros(g.dim, g.dim)
    for i in range(g.dim):
        for j in range(i, g.dim):
            K[i, j] = K[j, i] = np.trace(ads[i] @ ads[j])
    return K


def trace(M) -> Fraction:
    return sum(np.asarray(M).diagonal(), Fraction(0))


# -- constructors -------------------------------------------------------------

def abelian(dim: int) -> LieAlgebra:
    return make_lie_algebra(dim, None, zeros(dim, dim * dim).reshape(dim, dim, dim),
                            name=f"abelian{dim}")


def sl2() -> LieAlgebra:
    """sl2 in the basis (H, E, F): [H,E]=2E, [H,F]=-2F, [E,F]=H."""
    c = zeros(27).reshape(3, 3, 3)
    H, E, F = 0, 1, 2
    c[H, E, E], c[E, H, E] = 2, -2
    c[H, F, F], c[F, H, F] = -2, 2
    c[E, F, H], c[F, E, H] = 1, -1
    return make_lie_algebra(3, ("H", "E", "F"), c, name="sl2")


def _unit(n, i, j):
    m = zeros(n, n)
    m[i, j] = Fraction(1)
    return m


def _sl_basis(n):
    basis, names = [], []
    for i in range(n - 1):
        basis.append(_unit(n, i, i) - _unit(n, i + 1, i + 1))
        names.append(f"h{i + 1}")
    pos = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for i, j in pos:
        basis.append(_unit(n, i, j))
        names.append(f"e{i + 1}{j + 1}")
    for i, j in pos:
        basis.append(_unit(n, j, i))
        names.append(f"e{j + 1}{i + 1}")
    return basis, names


def _sp_basis(n):
    # X = [[A, B], [C, -A^T]] with B, C symmetric (J = [[0, I], [-I, 0]])
    r = n // 2
    basis, names = [], []
    for i in range(r):
        for j in range(r):
            m = _unit(n, i, j) - _unit(n, r + j, r + i)
            basis.append(m)
            names.append(f"a{i + 1}{j + 1}")
    for i in range(r):
        for j in range(i, r):
            m = _unit(n, i, r + j) + (_unit(n, j, r + i) if i != j else zeros(n, n))
            basis.append(m)
            names.append(f"b{i + 1}{j + 1}")
    for i in range(r):
        for j in range(i, r):
            m = _unit(n, r + i, j) + (_unit(n, r + j, i) if i != j else zeros(n, n))
            basis.append(m)
            names.append(f"c{i + 1}{j + 1}")
    return basis, names


def _so_basis(n):
    basis, names = [], []
    for i in range(n):
        for j in range(i + 1, n):
            basis.append(_unit(n, i, j) - _unit(n, j, i))
            names.append(f"m{i + 1}{j + 1}")
    return basis, names


def from_matrix_basis(mats, names, name: str = "") -> LieAlgebra:
    """Structure constants of a matrix Lie algebra under the commutator."""
    dim = len(mats)
    B = np.array([m.reshape(-1) for m in mats], dtype=object).T
    c = np.empty((dim, dim, dim), dtype=object)
    for i in range(dim):
        for j in range(dim):
            comm = (mats[i] @ mats[j] - mats[j] @ mats[i]).reshape(-1)
            x, _ = solve_affine(B, comm)
            if x is None:
                raise LieAlgebraError("matrix basis is not closed under the commutator")
            c[i, j] = x
    return make_lie_algebra(dim, names, c, name=name)


def classical(series: str, n: int) -> LieAlgebra:
    """Matrix realizations of sl_n, sp_n and so_n.

    Bases (E_ij = elementary matrix):

    * ``sl``: h_i = E_ii - E_{i+1,i+1}, then E_ij for i<j, then E_ji for i<j.
      For n = 2 this is exactly (H, E, F).
    * ``sp`` (n = 2r, form J = [[0, I], [-I, 0]]): E_ij - E_{r+j,r+i};
      E_{i,r+j} + E_{j,r+i} (i<=j); E_{r+i,j} + E_{r+j,i} (i<=j).
    * ``so``: E_ij - E_ji for i<j.
    """
    if series == "sl":
        if n < 2:
            raise LieAlgebraError("sl_n needs n >= 2")
        if n == 2:
            return sl2()
        basis, names = _sl_basis(n)
    elif series == "sp":
        if n < 4 or n % 2:
            raise LieAlgebraError("sp_n needs even n >= 4")
        basis, names = _sp_basis(n)
    elif series == "so":
        if n < 5:
            raise LieAlgebraError("so_n needs n >= 5")
        basis, names = _so_basis(n)
    else:
        raise LieAlgebraError(f"unknown series {series!r}")
    return from_matrix_basis(basis, names, name=f"{series}{n}")


NAMED = {
    "sl2": lambda: classical("sl", 2),
    "sl3": lambda: classical("sl", 3),
    "sl4": lambda: classical("sl", 4),
    "sp4": lambda: classical("sp", 4),
    "so5": lambda: classical("so", 5),
}


def by_name(name: str) -> LieAlgebra:
    try:
        return NAMED[name]()
    except KeyError:
        raise LieAlgebraError(f"unknown algebra {name!r}") from None


# -- JSON ---------------------------------------------------------------------

def to_json(g: LieAlgebra) -> dict:
    entries = []
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            for k in range(g.dim):
                if g.c[i, j, k] != 0:
                    entries.append([i, j, k, fmt_rational(g.c[i, j, k])])
    return {"dim": g.dim, "basis": list(g.basis_names), "c": entries}


def from_json(data: dict, name: str = "") -> LieAlgebra:
    dim = int(data["dim"])
    c = zeros(dim ** 3).reshape(dim, dim, dim)
    for i, j, k, v in data["c"]:
        if not i < j:
            raise LieAlgebraError("structure-constant entries must have i < j")
        q = to_rational(v)
        c[i, j, k] = q
        c[j, i, k] = -q
    return make_lie_algebra(dim, data.get("basis"), c, name=name or data.get("name", ""))


def load(path) -> LieAlgebra:
    path = Path(path)
    return from_json(json.loads(path.read_text()), name=path.stem)
