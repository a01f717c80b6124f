"""Generalized-derivation spaces and Hom-Lie twist spaces as kernels.

An unknown endomorphism X of g is flattened row-major: unknown ``r*n + s`` is
the matrix entry X[r, s] (coefficient of e_r in X(e_s)).  Every space below is
the nullspace of one assembled linear system in these n^2 unknowns.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .lie_core import LieAlgebra, ad
from .linalg import SubspaceBasis, identity, nullspace_basis, to_rational, zeros


class SpaceError(ValueError):
    pass


@dataclass(frozen=True)
class DerivationType:
    a: Fraction
    b: Fraction
    c: Fraction

    @classmethod
    def of(cls, a, b=1, c=1) -> "DerivationType":
        return cls(to_rational(a), to_rational(b), to_rational(c))

    def __iter__(self):
        return iter((self.a, self.b, self.c))


def _pairs(n: int, t: DerivationType):
    # For b == c the (i, j) and (j, i) equations coincide and i == j is
    # trivial; otherwise swapping x, y swaps the roles of b and c.
    if t.b == t.c:
        return itertools.combinations(range(n), 2)
    return itertools.product(range(n), repeat=2)


def derivation_system(g: LieAlgebra, t: DerivationType) -> np.ndarray:
    """Rows of a*D([e_i,e_j]) - b*[D e_i, e_j] - c*[e_i, D e_j] = 0."""
    n, C = g.dim, g.c
    rows = []
    for i, j in _pairs(n, t):
        block = zeros(n, n * n)  # component t_ x unknown (r, s)
        for k in range(n):
            cijk = C[i, j, k]
            if cijk:
                for r in range(n):
                    block[r, r * n + k] += t.a * cijk
        for r in range(n):
            for out in range(n):
                if C[r, j, out]:
                    block[out, r * n + i] -= t.b * C[r, j, out]
                if C[i, r, out]:
                    block[out, r * n + j] -= t.c * C[i, r, out]
        rows.append(block)
    if not rows:
        return zeros(0, n * n)
    return np.vstack(rows)


def gen_derivations(g: LieAlgebra, t) -> SubspaceBasis:
    """Basis of Der_(a,b,c)(g) as flattened n x n matrices."""
    if not isinstance(t, DerivationType):
        t = DerivationType.of(*t)
    return nullspace_basis(derivation_system(g, t))


def homlie_system(g: LieAlgebra) -> np.ndarray:
    """Rows of [T e_i,[e_j,e_k]] + [T e_j,[e_k,e_i]] + [T e_k,[e_i,e_j]] = 0.

    The identity is alternating in (x, y, z), so i<j<k covers everything.
    """
    n, C = g.dim, g.c
    rows = []
    for i, j, k in itertools.combinations(range(n), 3):
        block = zeros(n, n * n)
        for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
            inner = C[y, z]
            if not any(inner):
                continue
            adinner = ad(g, inner)  # [w, inner] = -adinner @ w
            for r in range(n):
                col = -adinner[:, r]
                for out in range(n):
                    if col[out]:
                        block[out, r * n + x] += col[out]
        rows.append(block)
    if not rows:
        return zeros(0, n * n)
    return np.vstack(rows)


def homlie_space(g: LieAlgebra) -> SubspaceBasis:
    """HL(g): all T satisfying the Hom-Lie Jacobi identity for g's bracket."""
    return nullspace_basis(homlie_system(g))


def satisfies_derivation(g: LieAlgebra, D, t) -> bool:
    """Direct check of the (a,b,c) identity on all ordered basis pairs."""
    if not isinstance(t, DerivationType):
        t = DerivationType.of(*t)
    D = np.asarray(D, dtype=object).reshape(g.dim, g.dim)
    for i in range(g.dim):
        for j in range(g.dim):
            lhs = t.a * (D @ g.c[i, j])
            rhs = t.b * (g.c[:, j, :].T @ D[:, i]) + t.c * (g.c[i].T @ D[:, j])
            if any(v != 0 for v in lhs - rhs):
                return False
    return True


def satisfies_homlie(g: LieAlgebra, T) -> bool:
    T = np.asarray(T, dtype=object).reshape(g.dim, g.dim)
    for x, y, z in itertools.combinations(range(g.dim), 3):
        total = zeros(g.dim)
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            total = total + ad(g, T[:, a]) @ g.c[b, c]
        if any(v != 0 for v in total):
            return False
    return True


def traceless_split(space: SubspaceBasis, n: int = 3):
    """Intersect an endomorphism space containing Id with the trace-0 hyperplane.

    Returns ``(traceless, has_identity)``; raises if Id is not in the space.
    """
    eye = identity(n).reshape(-1)
    if not space.contains(eye):
        raise SpaceError("the identity is not in the space")
    trace_row = eye.reshape(1, -1)
    hyperplane = nullspace_basis(trace_row)
    return space.intersect(hyperplane), True


def h_action(g: LieAlgebra, h, T) -> np.ndarray:
    """T -> [ad h, T] on flattened n x n matrices."""
    adh = ad(g, h)
    M = np.asarray(T, dtype=object).reshape(g.dim, g.dim)
    return (adh @ M - M @ adh).reshape(-1)


@dataclass
class WeightDecomposition:
    components: dict[int, SubspaceBasis]

    def multiplicities(self) -> dict[int, int]:
        return {w: b.dim for w, b in sorted(self.components.items(), reverse=True)}

    @property
    def total_dim(self) -> int:
        return sum(b.dim for b in self.components.values())


def adH_weight_decomposition(space: SubspaceBasis, g: LieAlgebra, h=None) -> WeightDecomposition:
    """Eigenspace split of T -> [ad H, T] restricted to ``space``.

    ``h`` defaults to the first basis vector (H for sl2); ad h must be
    diagonal in the basis so the candidate weights are its entry differences.
    """
    n = g.dim
    if h is None:
        h = identity(n)[0]
    adh = ad(g, h)
    if any(adh[r, s] != 0 for r in range(n) for s in range(n) if r != s):
        raise SpaceError("ad(h) must be diagonal in the chosen basis")
    k = space.dim
    # restriction matrix: column j = coordinates of H.(basis_j)
    R = zeros(k, k)
    for j, v in enumerate(space.vectors):
        image = h_action(g, h, v)
        try:
            R[:, j] = space.coordinates(image)
        except ValueError:
            raise SpaceError("space is not invariant under the H-action") from None
    diag = [adh[i, i] for i in range(n)]
    candidates = sorted({a - b for a in diag for b in diag}, reverse=True)
    comps = {}
    for w in candidates:
        ker = nullspace_basis(R - w * identity(k)) if k else SubspaceBasis(0)
        if ker.dim:
            if w.denominator != 1:
                raise SpaceError(f"non-integer weight {w}")
            vecs = [c @ space.vectors for c in ker.vectors]
            comps[int(w)] = SubspaceBasis(space.ambient_dim, vecs)
    dec = WeightDecomposition(comps)
    if dec.total_dim != k:
        raise SpaceError("H-action is not diagonalizable on the space")
    return dec
