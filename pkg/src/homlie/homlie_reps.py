"""Representations of sl2[D]: the linear system for rho(D), anti-intertwiners,
invariant complements and the semidirect (double) extension g + V.

A representation of a Hom-Lie algebra (g, [,], T) on V with respect to L is a
linear rho with rho([x,y]) L = rho(T x) rho(y) - rho(T y) rho(x).  For sl2[D]
with L = Id this reduces to: rho restricted to sl2 is an ordinary module and
rho(D(x)) = -rho(D) rho(x) - rho(x) rho(D) for x in sl2.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .linalg import (SubspaceBasis, fmt_rational, identity, nullspace_basis, solve_affine,
                     zeros)
from .sl2_homlie import GenDer5, HomLieAlgebra, check_homlie_jacobi, tuple_to_matrix


class RepError(ValueError):
    pass


class Unsupported(RepError):
    pass


class NotInvariant(RepError):
    pass


class RepresentationViolation(RepError):
    def __init__(self, pair, msg=""):
        super().__init__(msg or f"representation identity fails on basis pair {pair}")
        self.pair = pair


def _comm(A, B):
    return A @ B - B @ A


def _is_zero(M) -> bool:
    return all(v == 0 for v in np.asarray(M).flat)


@dataclass(frozen=True, eq=False)
class Sl2Module:
    """Direct sum of irreducibles V(m_1) + ... in the weight bases v_0..v_m."""

    weights: tuple
    H: np.ndarray
    E: np.ndarray
    F: np.ndarray

    @property
    def dim(self) -> int:
        return self.H.shape[0]

    @property
    def offsets(self) -> list[int]:
        out, pos = [], 0
        for m in self.weights:
            out.append(pos)
            pos += m + 1
        return out

    def action(self, i: int) -> np.ndarray:
        return (self.H, self.E, self.F)[i]

    def block(self, index: int) -> SubspaceBasis:
        """The summand V(m_index) as a coordinate subspace."""
        off, m = self.offsets[index], self.weights[index]
        eye = identity(self.dim)
        return SubspaceBasis(self.dim, [eye[off + k] for k in range(m + 1)])

    def __add__(self, other: "Sl2Module") -> "Sl2Module":
        return direct_sum(self, other)

    def __repr__(self):
        return "Sl2Module(" + " + ".join(f"V({m})" for m in self.weights) + ")"


def _check_relations(H, E, F):
    if not (_is_zero(_comm(H, E) - 2 * E) and _is_zero(_comm(H, F) + 2 * F)
            and _is_zero(_comm(E, F) - H)):
        raise RepError("action matrices violate the sl2 relations")


def irreducible_sl2_module(m: int) -> Sl2Module:
    if m < 0:
        raise RepError("highest weight must be non-negative")
    n = m + 1
    H, E, F = zeros(n, n), zeros(n, n), zeros(n, n)
    for k in range(n):
        H[k, k] = Fraction(m - 2 * k)
        if k >= 1:
            E[k - 1, k] = Fraction(m - k + 1)
        if k + 1 < n:
            F[k + 1, k] = Fraction(k + 1)
    _check_relations(H, E, F)
    return Sl2Module((m,), H, E, F)


def _block_diag(mats):
    n = sum(M.shape[0] for M in mats)
    out = zeros(n, n)
    pos = 0
    for M in mats:
        k = M.shape[0]
        out[pos:pos + k, pos:pos + k] = M
        pos += k
    return out


def direct_sum(*mods: Sl2Module) -> Sl2Module:
    return Sl2Module(
        tuple(m for mod in mods for m in mod.weights),
        _block_diag([M.H for M in mods]),
        _block_diag([M.E for M in mods]),
        _block_diag([M.F for M in mods]),
    )


def module_of(weights) -> Sl2Module:
    if isinstance(weights, int):
        return irreducible_sl2_module(weights)
    return direct_sum(*(irreducible_sl2_module(m) for m in weights))


@dataclass(frozen=True, eq=False)
class RepSpec:
    module: Sl2Module
    L: np.ndarray = None

    def __post_init__(self):
        L = identity(self.module.dim) if self.L is None else np.asarray(self.L, dtype=object)
        if L.shape != (self.module.dim,) * 2:
            raise RepError("L must be square of the module dimension")
        object.__setattr__(self, "L", L)

    def require_identity(self):
        if not _is_zero(self.L - identity(self.module.dim)):
            raise Unsupported("only L = identity is supported")


@dataclass
class RepSolution:
    module: Sl2Module
    d: GenDer5
    particular: np.ndarray | None
    homogeneous: SubspaceBasis

    @property
    def solvable(self) -> bool:
        return self.particular is not None

    @property
    def unique(self) -> bool:
        return self.solvable and self.homogeneous.dim == 0

    def solution(self) -> np.ndarray | None:
        return None if self.particular is None else self.particular.reshape(self.module.dim, -1)

    def homogeneous_matrices(self) -> list[np.ndarray]:
        n = self.module.dim
        return [v.reshape(n, n) for v in self.homogeneous.vectors]

    def to_json(self):
        ws = self.module.weights
        sol = self.solution()
        return {
            "m": ws[0] if len(ws) == 1 else list(ws),
            "d": self.d.to_json(),
            "solvable": self.solvable,
            "solution": None if sol is None else [[fmt_rational(v) for v in row] for row in sol],
            "homogeneous_dim": self.homogeneous.dim,
        }


def _left_right_system(Xs, Ys):
    """Rows for sum over pairs of X A + A Y (unknown A flattened row-major)."""
    n = Xs[0].shape[0]
    rows = []
    for X, Y in zip(Xs, Ys):
        # (X A)[r, s] = sum_t X[r, t] A[t, s];  (A Y)[r, s] = sum_t A[r, t] Y[t, s]
        block = zeros(n * n, n * n)
        for r in range(n):
            for s in range(n):
                row = r * n + s
                for t in range(n):
                    if X[r, t]:
                        block[row, t * n + s] += X[r, t]
                    if Y[t, s]:
                        block[row, r * n + t] += Y[t, s]
        rows.append(block)
    return np.vstack(rows)


def rep_extension_system(module: Sl2Module, d: GenDer5):
    """(M, b) with M vec(A) = b encoding A rho(x) + rho(x) A = -rho(D x)."""
    Dm = tuple_to_matrix(d)
    acts = [module.H, module.E, module.F]
    M = _left_right_system(acts, acts)
    rhs = []
    for x in range(3):
        rho_Dx = sum((Dm[k, x] * acts[k] for k in range(3)), zeros(module.dim, module.dim))
        rhs.append(-rho_Dx.reshape(-1))
    return M, np.concatenate(rhs)


def solve_rep_extension(spec, d: GenDer5) -> RepSolution:
    """All A = rho(D) making the module a representation of sl2[D]."""
    if isinstance(spec, Sl2Module):
        spec = RepSpec(spec)
    spec.require_identity()
    M, b = rep_extension_system(spec.module, d)
    x, hom = solve_affine(M, b)
    return RepSolution(spec.module, d, x, hom)


def rho_D_closed_form(d: GenDer5) -> np.ndarray:
    z, e, s, l, m = d
    return np.array([[-z, -2 * s, -l], [-e, 2 * z, s], [-m, 2 * e, -z]], dtype=object)


def anti_intertwiners(m: int, m2: int) -> SubspaceBasis:
    """All T: V(m) -> V(m2) with rho_m2(x) T = -T rho_m(x), flattened row-major."""
    if m < 0 or m2 < 0:
        raise RepError("weights must be non-negative")
    V, W = irreducible_sl2_module(m), irreducible_sl2_module(m2)
    rows_n, cols_n = m2 + 1, m + 1
    blocks = []
    for X, Y in ((W.H, V.H), (W.E, V.E), (W.F, V.F)):
        block = zeros(rows_n * cols_n, rows_n * cols_n)
        for r in range(rows_n):
            for s in range(cols_n):
                row = r * cols_n + s
                for t in range(rows_n):
                    if X[r, t]:
                        block[row, t * cols_n + s] += X[r, t]
                for t in range(cols_n):
                    if Y[t, s]:
                        block[row, r * cols_n + t] += Y[t, s]
        blocks.append(block)
    return nullspace_basis(np.vstack(blocks))


# -- invariant subspaces ---------------------------------------------------------

def _image(A, U: SubspaceBasis) -> list:
    return [A @ v for v in U.vectors]


def is_invariant(U: SubspaceBasis, ops) -> bool:
    return all(U.contains(w) for A in ops for w in _image(A, U))


def sl2_invariant_complement(module: Sl2Module, U: SubspaceBasis) -> SubspaceBasis:
    """An sl2-stable complement, built from highest-weight vectors.

    For each weight k, complement the highest-weight vectors of U inside the
    highest-weight vectors of the module (kernel of rho(E) on the k-weight
    space), then close the chosen vectors under rho(F).
    """
    n = module.dim
    eye = identity(n)
    diag = [module.H[i, i] for i in range(n)]
    gens = []
    for k in sorted(set(diag), reverse=True):
        if k < 0:
            continue
        weight_space = SubspaceBasis(n, [eye[i] for i in range(n) if diag[i] == k])
        kerE = nullspace_basis(module.E)
        hw = weight_space.intersect(kerE)
        if hw.dim == 0:
            continue
        hw_in_U = hw.intersect(U)
        gens.extend(hw_in_U.complement_in(hw).vectors)
    vecs = []
    for v in gens:
        w = v
        while any(x != 0 for x in w):
            vecs.append(w)
            w = module.F @ w
    W = SubspaceBasis(n, vecs)
    if W.dim + U.dim != n or not U.intersect(W).dim == 0:
        raise AssertionError("highest-weight construction did not give a complement")
    return W


def find_invariant_complement(spec, rho_D, U: SubspaceBasis) -> SubspaceBasis:
    """Complement of U stable under rho(H), rho(E), rho(F) and rho(D)."""
    if isinstance(spec, Sl2Module):
        spec = RepSpec(spec)
    mod = spec.module
    A = np.asarray(rho_D, dtype=object)
    ops = [mod.H, mod.E, mod.F, A]
    if not is_invariant(U, ops):
        raise NotInvariant("submodule is not invariant under rho(H), rho(E), rho(F), rho(D)")
    W = sl2_invariant_complement(mod, U)
    if not is_invariant(W, ops):
        raise AssertionError("sl2-invariant complement is not rho(D)-invariant")
    both = SubspaceBasis(mod.dim, list(U.vectors) + list(W.vectors))
    if both.dim != mod.dim:
        raise AssertionError("U and its complement do not span the module")
    return W


def sl2_submodule_graph(module: Sl2Module, i: int, j: int, t) -> SubspaceBasis:
    """{v + t*phi(v)} for the identity isomorphism between equal summands i, j."""
    if module.weights[i] != module.weights[j]:
        raise RepError("graph submodules need isomorphic summands")
    n, m = module.dim, module.weights[i]
    oi, oj = module.offsets[i], module.offsets[j]
    eye = identity(n)
    return SubspaceBasis(n, [eye[oi + k] + t * eye[oj + k] for k in range(m + 1)])


# -- double extension ------------------------------------------------------------

@dataclass
class Representation:
    """rho on the basis of a Hom-Lie algebra: ``mats[i] = rho(e_i)``."""

    h: HomLieAlgebra
    spec: RepSpec
    mats: list = field(default_factory=list)

    def of(self, x) -> np.ndarray:
        n = self.spec.module.dim
        out = zeros(n, n)
        for xi, M in zip(x, self.mats):
            if xi:
                out = out + xi * M
        return out


def sl2D_representation(h: HomLieAlgebra, spec: RepSpec, rho_D) -> Representation:
    mod = spec.module
    return Representation(h, spec, [mod.H, mod.E, mod.F, np.asarray(rho_D, dtype=object)])


def representation_violation(rep: Representation, x, y):
    """rho([x,y]) L - rho(T x) rho(y) + rho(T y) rho(x); zero iff the identity holds."""
    h, L = rep.h, rep.spec.L
    return (rep.of(h.bracket(x, y)) @ L - rep.of(h.twist @ x) @ rep.of(y)
            + rep.of(h.twist @ y) @ rep.of(x))


def check_representation(rep: Representation, seed: int = 0):
    """Basis pairs i<j (the identity is skew in x, y), plus one random pair as a guard."""
    n = rep.h.dim
    eye = identity(n)
    for i, j in itertools.combinations(range(n), 2):
        if not _is_zero(representation_violation(rep, eye[i], eye[j])):
            raise RepresentationViolation((i, j))
    rng = random.Random(seed)
    x = np.array([Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)], dtype=object)
    y = np.array([Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)], dtype=object)
    if not _is_zero(representation_violation(rep, x, y)):
        raise RepresentationViolation(("random", "random"),
                                      "identity holds on basis pairs but not on a random pair")


def double_extension(h: HomLieAlgebra, spec: RepSpec, rho, validate: bool = True) -> HomLieAlgebra:
    """g + V with [x+u, y+v] = [x,y] + rho(x) v - rho(y) u and twist T + L.

    ``rho`` is a :class:`Representation` or the list of matrices rho(e_i).
    """
    rep = rho if isinstance(rho, Representation) else Representation(h, spec, list(rho))
    check_representation(rep)
    g, k = h.dim, spec.module.dim
    n = g + k
    c = zeros(n ** 3).reshape(n, n, n)
    c[:g, :g, :g] = h.c
    for i in range(g):
        R = rep.mats[i]
        for a in range(k):
            c[i, g + a, g:] = R[:, a]
            c[g + a, i, g:] = -R[:, a]
    S = zeros(n, n)
    S[:g, :g] = h.twist
    S[g:, g:] = spec.L
    names = tuple(h.basis_names) + tuple(f"v{a}" for a in range(k))
    out = HomLieAlgebra(n, c, S, names)
    if validate:
        report = check_homlie_jacobi(out)
        if not report.ok:
            raise AssertionError(f"double extension fails Hom-Lie Jacobi at {report.witness}")
    return out
