"""5-tuple coordinates on Der_(-1,1,1)(sl2) and the automorphism actions.

A tuple (zeta, eta, sigma, lam, mu) stands for the matrix, in the basis
(H, E, F) with columns as images,

    [[2 zeta, eta,  sigma],
     [2 sigma, -zeta, lam ],
     [2 eta,   mu,  -zeta ]]

Entries are exact Fractions or, in the approximate paths, Python complex.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

import numpy as np

from ..lie_core import sl2
from ..linalg import EPS, fmt_rational, identity, is_exact, to_rational

Scalar = Union[Fraction, complex]

NAMES = ("zeta", "eta", "sigma", "lam", "mu")


class NotAGenDer(ValueError):
    pass


class ZeroParameter(ValueError):
    pass


def _scalar(x) -> Scalar:
    if isinstance(x, complex):
        return x
    if isinstance(x, float):
        return complex(x)
    return to_rational(x)


def _is_zero(x, tol: float = 0.0) -> bool:
    if is_exact(x):
        return x == 0
    return abs(x) <= tol


@dataclass(frozen=True)
class GenDer5:
    zeta: Scalar = Fraction(0)
    eta: Scalar = Fraction(0)
    sigma: Scalar = Fraction(0)
    lam: Scalar = Fraction(0)
    mu: Scalar = Fraction(0)

    @classmethod
    def of(cls, *values) -> "GenDer5":
        if len(values) == 1 and not isinstance(values[0], (int, Fraction, str, complex, float)):
            values = tuple(values[0])
        if len(values) != 5:
            raise ValueError("a (-1,1,1)-derivation of sl2 has five coordinates")
        return cls(*(_scalar(v) for v in values))

    @classmethod
    def parse(cls, text: str) -> "GenDer5":
        return cls.of(*text.split(","))

    def __iter__(self):
        return iter((self.zeta, self.eta, self.sigma, self.lam, self.mu))

    def __getitem__(self, i):
        return tuple(self)[i]

    @property
    def exact(self) -> bool:
        return all(is_exact(v) for v in self)

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(_is_zero(v, tol) for v in self)

    def scaled(self, xi) -> "GenDer5":
        return GenDer5(*(xi * v for v in self))

    def to_complex(self) -> "GenDer5":
        return GenDer5(*(complex(v) for v in self))

    def replace(self, **kw) -> "GenDer5":
        vals = dict(zip(NAMES, self))
        vals.update(kw)
        return GenDer5(**vals)

    def distance(self, other: "GenDer5") -> float:
        return max(abs(complex(a) - complex(b)) for a, b in zip(self, other))

    def to_json(self):
        return [scalar_json(v) for v in self]

    def __str__(self):
        return "(" + ", ".join(str(scalar_json(v)) for v in self) + ")"


def scalar_json(v):
    """Exact scalars as "p/q" strings; complex ones as [re, im] floats."""
    if is_exact(v):
        return fmt_rational(v)
    v = complex(v)
    return [v.real, v.imag]


def tuple_to_matrix(d: GenDer5) -> np.ndarray:
    z, e, s, l, m = d
    return np.array([[2 * z, e, s], [2 * s, -z, l], [2 * e, m, -z]], dtype=object)


def matrix_to_tuple(M, tol: float = EPS) -> GenDer5:
    """Inverse of :func:`tuple_to_matrix`; checks membership in the 5-space."""
    M = np.asarray(M, dtype=object)
    scale = max([1.0] + [abs(complex(v)) for v in M.flat])
    checks = (
        M[1, 0] - 2 * M[0, 2],
        M[2, 0] - 2 * M[0, 1],
        2 * M[1, 1] + M[0, 0],
        2 * M[2, 2] + M[0, 0],
    )
    if not all(_is_zero(v, tol * scale) for v in checks):
        raise NotAGenDer("matrix is not in the span of P, Q, R, S, T")
    return GenDer5(M[0, 0] / 2, M[0, 1], M[0, 2], M[1, 2], M[2, 1])


# -- automorphisms ------------------------------------------------------------

_ARITY = {"G": 1, "H": 1, "F": 2, "Diag": 1}


@dataclass(frozen=True)
class AutElement:
    """A generator of Aut(sl2).

    ``G(a) = exp(ad aE)``, ``H(a) = exp(ad aF)``,
    ``F(a, c) = exp(ad(aH + acE - a/c F))``, and ``Diag(nu)`` fixing H and
    scaling E by nu, F by 1/nu.
    """

    kind: str
    params: tuple

    def __post_init__(self):
        if self.kind not in _ARITY:
            raise ValueError(f"unknown automorphism kind {self.kind!r}")
        if len(self.params) != _ARITY[self.kind]:
            raise ValueError(f"{self.kind} takes {_ARITY[self.kind]} parameter(s)")
        object.__setattr__(self, "params", tuple(_scalar(p) for p in self.params))
        if any(_is_zero(p) for p in self.params):
            raise ZeroParameter(f"{self.kind}{self.params}: parameters must be nonzero")

    def matrix(self) -> np.ndarray:
        return _aut_matrix(self.kind, self.params)

    def _build(self) -> np.ndarray:
        one = Fraction(1)
        if self.kind == "G":
            (a,) = self.params
            rows = [[one, 0, a], [-2 * a, one, -a * a], [0, 0, one]]
        elif self.kind == "H":
            (a,) = self.params
            rows = [[one, -a, 0], [0, one, 0], [2 * a, -a * a, one]]
        elif self.kind == "F":
            a, c = self.params
            rows = [
                [1 - 2 * a * a, a / c + a * a / c, a * c - a * a * c],
                [-2 * a * c - 2 * a * a * c, (1 + a) ** 2, -a * a * c * c],
                [-2 * a / c + 2 * a * a / c, -a * a / (c * c), (1 - a) ** 2],
            ]
        else:
            (nu,) = self.params
            rows = [[one, 0, 0], [0, nu, 0], [0, 0, one / nu]]
        M = np.array([[_scalar(v) for v in r] for r in rows], dtype=object)
        M.setflags(write=False)
        return M

    def inverse(self) -> "AutElement":
        if self.kind in ("G", "H"):
            return AutElement(self.kind, (-self.params[0],))
        if self.kind == "F":
            return AutElement("F", (-self.params[0], self.params[1]))
        return AutElement("Diag", (1 / self.params[0],))

    def to_json(self):
        return {"kind": self.kind, "params": [scalar_json(p) for p in self.params]}

    def __str__(self):
        return f"{self.kind}({', '.join(str(scalar_json(p)) for p in self.params)})"


@functools.lru_cache(maxsize=4096)
def _aut_matrix(kind, params):
    return AutElement(kind, params)._build()


@functools.lru_cache(maxsize=4096)
def _group_matrix(auts):
    M = identity(3)
    for e in auts:
        M = e.matrix() @ M
    M.setflags(write=False)
    return M


def G(a):
    return AutElement("G", (a,))


def Hm(a):
    return AutElement("H", (a,))


def Fm(a, c):
    return AutElement("F", (a, c))


def Diag(nu):
    return AutElement("Diag", (nu,))


def aut_matrix(e: AutElement, validate: bool = True) -> np.ndarray:
    M = e.matrix()
    if validate and not preserves_bracket(M):
        raise AssertionError(f"{e} does not preserve the sl2 bracket")
    return M


def preserves_bracket(M, tol: float = EPS) -> bool:
    """M[x, y] == [Mx, My] on all basis pairs of sl2."""
    g = sl2()
    M = np.asarray(M, dtype=object)
    scale = max([1.0] + [abs(complex(v)) for v in M.flat]) ** 2
    for i in range(3):
        for j in range(i + 1, 3):
            lhs = M @ g.c[i, j]
            mi, mj = M[:, i], M[:, j]
            rhs = sum((mi[p] * mj[q] * g.c[p, q] for p in range(3) for q in range(3)),
                      np.zeros(3, dtype=object))
            if not all(_is_zero(v, tol * scale) for v in lhs - rhs):
                return False
    return True


@dataclass(frozen=True)
class GroupElement:
    """(xi, g) acting by D -> xi * g D g^-1; ``auts`` are applied left to right."""

    scale: Scalar = Fraction(1)
    auts: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "scale", _scalar(self.scale))
        object.__setattr__(self, "auts", tuple(self.auts))
        if _is_zero(self.scale):
            raise ZeroParameter("group scale must be nonzero")

    @classmethod
    def of(cls, *auts: AutElement, scale=1) -> "GroupElement":
        return cls(scale, auts)

    def matrix(self) -> np.ndarray:
        return _group_matrix(self.auts)

    def inverse_matrix(self) -> np.ndarray:
        return _group_matrix(tuple(e.inverse() for e in reversed(self.auts)))

    def then(self, other: "GroupElement") -> "GroupElement":
        """Apply self first, then other."""
        return GroupElement(self.scale * other.scale, self.auts + other.auts)

    def inverse(self) -> "GroupElement":
        return GroupElement(1 / self.scale, tuple(e.inverse() for e in reversed(self.auts)))

    def to_json(self):
        return {"scale": scalar_json(self.scale), "auts": [e.to_json() for e in self.auts]}

    def __str__(self):
        body = " . ".join(str(e) for e in reversed(self.auts)) or "id"
        return body if self.scale == 1 else f"{scalar_json(self.scale)} * {body}"


def act_conj(g, d: GenDer5) -> GenDer5:
    """(xi, g).D = xi * g D g^-1, computed on matrices."""
    if isinstance(g, AutElement):
        g = GroupElement.of(g)
    M = g.matrix() @ tuple_to_matrix(d) @ g.inverse_matrix()
    try:
        out = matrix_to_tuple(M)
    except NotAGenDer as exc:  # pragma: no cover - Aut preserves the space
        raise AssertionError(f"conjugate left Der_(-1,1,1): {exc}") from None
    return out.scaled(g.scale) if g.scale != 1 else out


def act(g, d: GenDer5) -> GenDer5:
    return act_conj(g, d)


# -- closed-form actions -------------------------------------------------------

@dataclass(frozen=True)
class ClosedAction:
    kind: str  # "K", "L" or "J"
    a: Scalar
    c: Scalar = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "a", _scalar(self.a))
        object.__setattr__(self, "c", _scalar(self.c))
        if _is_zero(self.a) or _is_zero(self.c):
            raise ZeroParameter(f"{self.kind}: parameters must be nonzero")

    def automorphism(self) -> AutElement:
        return {"K": lambda: G(self.a), "L": lambda: Hm(self.a),
                "J": lambda: Fm(self.a, self.c)}[self.kind]()


def K(a):
    return ClosedAction("K", a)


def L(a):
    return ClosedAction("L", a)


def J(a, c):
    return ClosedAction("J", a, c)


def _K(a, d):
    z, e, s, l, m = d
    return (
        z + 2 * a * e + a**2 * m,
        e + a * m,
        -3 * a * z - 3 * a**2 * e + s - a**3 * m,
        6 * a**2 * z + 4 * a**3 * e - 4 * a * s + l + a**4 * m,
        m,
    )


def _L(a, d):
    z, e, s, l, m = d
    return (
        z - 2 * a * s + a**2 * l,
        3 * a * z + e - 3 * a**2 * s + a**3 * l,
        s - a * l,
        l,
        6 * a**2 * z + 4 * a * e - 4 * a**3 * s + a**4 * l + m,
    )


@functools.lru_cache(maxsize=4096)
def _J_rows(a, c):
    """Coefficients of J_{a,c}: component k of J(d) is rows[k] . d."""
    a2, a3, a4 = a * a, a * a * a, a * a * a * a
    ap, am = a + 1, a - 1
    c2, c3 = c * c, c * c * c
    q = 2 * a2 - 1
    return (
        (6 * a4 - 6 * a2 + 1, 2 * a * c * am * q, -2 * a * ap * q / c,
         a2 * ap * ap / c2, a2 * c2 * am * am),
        (-3 * a * am * q / c, -am * am * (4 * a2 - 1), a2 * (4 * a2 - 3) / c2,
         -a3 * ap / c3, -a * c * am * am * am),
        (3 * a * c * ap * q, a2 * c2 * (4 * a2 - 3), -ap * ap * (4 * a2 - 1),
         a * ap * ap * ap / c, a3 * c3 * am),
        (6 * a2 * c2 * ap * ap, 4 * a3 * c3 * ap, -4 * a * c * ap * ap * ap,
         ap**4, a4 * c2 * c2),
        (6 * a2 * am * am / c2, 4 * a * am * am * am / c, -4 * a3 * am / c3,
         a4 / (c2 * c2), am**4),
    )


@functools.lru_cache(maxsize=4096)
def _printed_J_rows(a, c):
    """The J_{a,c} coefficients as typeset; rows 4 and 5 coincide with :func:`_J_rows`."""
    a2, a3, a4 = a * a, a * a * a, a * a * a * a
    c2, c3 = c * c, c * c * c
    return (
        (-1 + 6 * a2 - 6 * a4, -2 * a * c * (1 - a) * (1 - 2 * a2),
         -2 * a / c * (1 + a) * (1 - 2 * a2), a2 * c2 * (1 + a) ** 2, a2 * c2 * (1 - a) ** 2),
        (3 * a / c * (1 - a) * (1 + 2 * a), (1 - a) ** 2 * (1 - 4 * a2),
         a2 / c2 * (4 * a2 - 3), -a3 / c3 * (1 + a), a * c * (1 - a) ** 3),
        (-3 * a * c * (1 + a) * (1 + 2 * a), a2 * c2 * (4 * a2 - 3),
         (1 + a) ** 2 * (1 - 4 * a2), -a / c * (1 + a) ** 3, -a3 * c3 * (1 - a)),
    ) + _J_rows(a, c)[3:]


def _apply_rows(rows, d):
    return tuple(sum((r * v for r, v in zip(row, d) if v), Fraction(0)) for row in rows)


def _J(a, c, d):
    return _apply_rows(_J_rows(a, c), d)


def printed_J(a, c, d: GenDer5) -> GenDer5:
    """The J_{a,c} component formulas exactly as typeset in the source.

    Components 1-3 disagree with conjugation by F(a, c); kept only so the
    discrepancy can be reported.  Use :func:`act_closed` for the real action.
    """
    return GenDer5(*_apply_rows(_printed_J_rows(_scalar(a), _scalar(c)), d))


def act_closed(op: ClosedAction, d: GenDer5) -> GenDer5:
    """Polynomial component maps of K_a, L_a and J_{a,c}.

    K_a and L_a are the maps D -> g D g^-1 for g = G(a), H(a).  The J_{a,c}
    components were re-derived from conjugation by F(a, c).
    """
    if op.kind == "K":
        vals = _K(op.a, d)
    elif op.kind == "L":
        vals = _L(op.a, d)
    elif op.kind == "J":
        vals = _J(op.a, op.c, d)
    else:
        raise ValueError(op.kind)
    return GenDer5(*vals)


def basis_matrices() -> dict[str, np.ndarray]:
    """P, Q, R, S, T: images of the unit tuples."""
    out = {}
    for i, name in enumerate("PQRST"):
        unit = [0] * 5
        unit[i] = 1
        out[name] = tuple_to_matrix(GenDer5.of(*unit))
    return out


def random_tuple(rng, max_num: int = 9, max_den: int = 4, nonzero: bool = True) -> GenDer5:
    """Seeded random rational tuple (``rng`` is a :class:`random.Random`)."""
    while True:
        d = GenDer5.of(*(Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))
                         for _ in range(5)))
        if not (nonzero and d.is_zero()):
            return d


def tuples_from(values: Iterable) -> list[GenDer5]:
    return [v if isinstance(v, GenDer5) else GenDer5.of(*v) for v in values]
