"""Hom-Lie algebras as (structure constants, twist) and the extension g[D]."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..lie_core import LieAlgebra, sl2
from ..linalg import EPS, identity, is_exact, zeros
from .tuples import GenDer5, tuple_to_matrix


class HomLieError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class HomLieAlgebra:
    """Skew bracket ``c[i, j, k]`` (coefficient of e_k in [e_i, e_j]) with twist T."""

    dim: int
    c: np.ndarray
    twist: np.ndarray
    basis_names: tuple = ()

    def bracket(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=object)
        y = np.asarray(y, dtype=object)
        out = zeros(self.dim)
        for i, xi in enumerate(x):
            if xi:
                out = out + xi * (self.c[i].T @ y)
        return out

    def __repr__(self):
        return f"HomLieAlgebra(dim={self.dim}, basis={self.basis_names})"


@dataclass
class JacobiReport:
    ok: bool
    witness: tuple | None = None
    residual: list | None = None
    checked: int = 0
    skew_ok: bool = True

    def to_json(self):
        from .tuples import scalar_json

        return {"ok": self.ok, "skew_ok": self.skew_ok, "triples_checked": self.checked,
                "witness": list(self.witness) if self.witness else None,
                "residual": [scalar_json(v) for v in self.residual] if self.residual else None}


def _nonzero(v, tol) -> bool:
    return v != 0 if is_exact(v) else abs(v) > tol


def check_homlie_jacobi(h: HomLieAlgebra, tol: float = EPS) -> JacobiReport:
    """Exhaustive check of [T x,[y,z]] + [T y,[z,x]] + [T z,[x,y]] = 0.

    All ordered basis triples are evaluated (including repeated indices), so
    the check does not lean on the identity being alternating.
    """
    n = h.dim
    for i, j in itertools.product(range(n), repeat=2):
        if any(_nonzero(a + b, tol) for a, b in zip(h.c[i, j], h.c[j, i])):
            return JacobiReport(False, (i, j), None, 0, skew_ok=False)
    T = h.twist
    # adT[i] is the matrix of y -> [T e_i, y]
    adT = [sum((T[r, i] * h.c[r].T for r in range(n) if T[r, i] != 0), zeros(n, n))
           for i in range(n)]
    nonzero = [[any(v != 0 for v in h.c[j, k]) for k in range(n)] for j in range(n)]
    count = 0
    for i, j, k in itertools.product(range(n), repeat=3):
        count += 1
        terms = [adT[x] @ h.c[y, z] for x, y, z in ((i, j, k), (j, k, i), (k, i, j))
                 if nonzero[y][z]]
        if not terms:
            continue
        total = sum(terms[1:], terms[0])
        if any(_nonzero(v, tol) for v in total):
            return JacobiReport(False, (i, j, k), list(total), count)
    return JacobiReport(True, None, None, count)


def from_lie(g: LieAlgebra, twist=None) -> HomLieAlgebra:
    T = identity(g.dim) if twist is None else np.asarray(twist, dtype=object)
    return HomLieAlgebra(g.dim, g.c, T, tuple(g.basis_names))


def extend(g: LieAlgebra, D, a=-1, name: str = "D", validate: bool = True) -> HomLieAlgebra:
    """g + F*D with [x + alpha D, y + beta D] = [x,y] + alpha D(y) - beta D(x).

    The twist is the identity on g and multiplies D by ``a``; for
    D in Der_(a,1,1)(g) this is a Hom-Lie algebra.
    """
    n = g.dim
    D = np.asarray(D, dtype=object).reshape(n, n)
    c = zeros((n + 1) ** 3).reshape(n + 1, n + 1, n + 1)
    c[:n, :n, :n] = g.c
    for j in range(n):
        c[n, j, :n] = D[:, j]
        c[j, n, :n] = -D[:, j]
    T = identity(n + 1)
    T[n, n] = a
    h = HomLieAlgebra(n + 1, c, T, tuple(g.basis_names) + (name,))
    if validate:
        rep = check_homlie_jacobi(h)
        if not rep.ok:
            raise HomLieError(f"extension fails the Hom-Lie Jacobi identity at {rep.witness}")
    return h


def extend_sl2(d: GenDer5, validate: bool = True) -> HomLieAlgebra:
    """sl2[D] in the basis (H, E, F, D) with twist diag(1, 1, 1, -1)."""
    return extend(sl2(), tuple_to_matrix(d), -1, validate=validate)


def with_twist(h: HomLieAlgebra, twist) -> HomLieAlgebra:
    return HomLieAlgebra(h.dim, h.c, np.asarray(twist, dtype=object), h.basis_names)
