"""Orbit reduction, classification and orbit equivalence for Der_(-1,1,1)(sl2).

Labels and their normalized parameters are read off exact invariants of the
matrix (rank, characteristic polynomial x^3 + p x + q, minimal polynomial
degree), which the group action can only rescale.  The staged reducer
produces an explicit trace of automorphisms reaching a representative.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..linalg import (EPS, charpoly, identity, is_exact, poly_eval, poly_roots, rank,
                      rational_roots)
from .tuples import (Diag, Fm, G, GenDer5, GroupElement, Hm, act_conj, scalar_json,
                     tuple_to_matrix)


class ZeroDerivation(ValueError):
    pass


class NoCanonicalForm(ValueError):
    """The orbit of multiples of P (diagonalizable, rank 3) has no (0,eta,sigma,lam,0) member."""


LABELS = ("RANK1", "RANK2_A", "RANK2_B", "RANK3_A", "RANK3_B", "RANK3_DIAG")


@dataclass(frozen=True)
class ClassLabel:
    kind: str
    params: tuple = ()
    approximate: bool = False

    def param_dict(self) -> dict:
        names = {"RANK2_B": ("sigma",), "RANK3_A": ("lam",), "RANK3_B": ("sigma", "lam"),
                 "RANK3_DIAG": ("zeta",)}.get(self.kind, ())
        return dict(zip(names, self.params))

    def to_json(self):
        return {"label": self.kind,
                "params": {k: scalar_json(v) for k, v in self.param_dict().items()}}

    def __str__(self):
        if not self.params:
            return self.kind
        return f"{self.kind}({', '.join(f'{k}={scalar_json(v)}' for k, v in self.param_dict().items())})"


@dataclass
class Invariants:
    rank: int
    charpoly: list
    minpoly_degree: int
    approximate: bool

    @property
    def p(self):
        return self.charpoly[2]

    @property
    def q(self):
        return self.charpoly[3]

    def to_json(self):
        return {"rank": self.rank, "charpoly": [scalar_json(c) for c in self.charpoly],
                "minpoly_degree": self.minpoly_degree}


def _tol(d: GenDer5) -> float:
    return EPS * max([1.0] + [abs(complex(v)) for v in d])


def _zero(x, tol) -> bool:
    return x == 0 if is_exact(x) else abs(x) <= tol


def invariants(d: GenDer5) -> Invariants:
    M = tuple_to_matrix(d)
    approx = not d.exact
    if approx:
        M = M.astype(complex)
    r = rank(M)
    cp = charpoly(M)
    # minimal polynomial degree: smallest k with I, M, .., M^k dependent
    powers = [identity(3).astype(complex) if approx else identity(3)]
    deg = 3
    for k in range(1, 3):
        powers.append(powers[-1] @ M)
        stack = np.array([P.reshape(-1) for P in powers], dtype=complex if approx else object)
        if rank(stack) < len(powers):
            deg = k
            break
    return Invariants(r, cp, deg, approx)


def classify(d: GenDer5) -> ClassLabel:
    """Orbit family of d with parameters normalized to eta = 1.

    For a representative (0, 1, sigma, lam, 0) the characteristic polynomial
    is x^3 - 4 sigma x - 2 lam, so sigma = -p/4 and lam = -q/2.
    """
    inv = invariants(d)
    scale = max([1.0] + [abs(complex(v)) for v in d])
    p_zero = _zero(inv.p, EPS * scale**2)
    q_zero = _zero(inv.q, EPS * scale**3)
    approx = inv.approximate
    if inv.rank == 0:
        raise ZeroDerivation("the zero derivation has no orbit label")
    if inv.rank == 1:
        return ClassLabel("RANK1", (), approx)
    if inv.rank == 2:
        if p_zero:
            return ClassLabel("RANK2_A", (), approx)
        return ClassLabel("RANK2_B", (-inv.p / 4,), approx)
    if inv.minpoly_degree < 3:
        return ClassLabel("RANK3_DIAG", (), approx)
    if p_zero:
        return ClassLabel("RANK3_A", (-inv.q / 2,), approx)
    return ClassLabel("RANK3_B", (-inv.p / 4, -inv.q / 2), approx)


def is_exceptional(d: GenDer5) -> bool:
    """True for nonzero multiples of P up to the group action."""
    inv = invariants(d)
    return inv.rank == 3 and inv.minpoly_degree < 3


# -- staged reducer ------------------------------------------------------------

@dataclass
class Step:
    element: GroupElement
    before: GenDer5
    after: GenDer5
    note: str = ""

    def to_json(self):
        return {"element": self.element.to_json(), "note": self.note,
                "before": self.before.to_json(), "after": self.after.to_json()}


@dataclass
class CanonicalFormResult:
    input: GenDer5
    steps: list = field(default_factory=list)
    canonical: GenDer5 = None
    class_label: ClassLabel = None
    approximate: bool = False

    @property
    def trace(self) -> GroupElement:
        g = GroupElement()
        for s in self.steps:
            g = g.then(s.element)
        return g

    def replay(self) -> GenDer5:
        d = self.input if not self.approximate else self.input.to_complex()
        for s in self.steps:
            d = act_conj(s.element, d)
        return d

    def to_json(self):
        return {
            "input": self.input.to_json(),
            "mode": "approximate" if self.approximate else "exact",
            "steps": [s.to_json() for s in self.steps],
            "canonical": self.canonical.to_json(),
            "class": self.class_label.to_json(),
        }


class _Reducer:
    def __init__(self, d: GenDer5):
        self.cur = d
        self.steps: list[Step] = []
        self.approx = not d.exact

    @property
    def tol(self) -> float:
        # zero test relative to the current magnitudes; exact mode ignores it
        return 1e3 * _tol(self.cur)

    def nz(self, x) -> bool:
        return not _zero(x, self.tol)

    def go_approximate(self):
        if not self.approx:
            self.approx = True
            self.cur = self.cur.to_complex()

    def apply(self, aut, note=""):
        g = GroupElement.of(aut)
        before = self.cur
        self.cur = act_conj(g, before)
        self.steps.append(Step(g, before, self.cur, note))

    def snap(self, *names):
        if self.approx:
            vals = {n: (0j if _zero(getattr(self.cur, n), self.tol) else getattr(self.cur, n))
                    for n in names}
            self.cur = self.cur.replace(**vals)
            self.steps[-1].after = self.cur

    def pick_root(self, coeffs, accept=lambda r: True):
        """First acceptable root: rational ones if any, else complex."""
        if not self.approx:
            for r in rational_roots(coeffs):
                if accept(r):
                    return r
        for r in poly_roots(coeffs):
            if accept(r):
                self.go_approximate()
                return r
        raise AssertionError(f"no admissible root of {coeffs}")

    def kill_mu(self):
        z, e, s, l, m = self.cur
        if not self.nz(m):
            return
        if not any(self.nz(v) for v in (z, e, s, l)):
            self.apply(Fm(1, 1), "mu only: F(1,1) moves mu to the lam slot")
        else:
            # mu-component of H(a).D is p(a) with p below
            a = self.pick_root([l, -4 * s, 6 * z, 4 * e, m])
            self.apply(Hm(a), "kill mu with a root of lam x^4 - 4 sigma x^3 + 6 zeta x^2 + 4 eta x + mu")
        self.snap("mu")

    def kill_zeta(self):
        z, e, s, l, _ = self.cur
        if not self.nz(z):
            return
        if self.nz(e):
            self.apply(G(-z / (2 * e)), "kill zeta with G(-zeta/(2 eta))")
            self.snap("zeta")
            return
        if not self.nz(2 * s * s - 3 * z * l):
            raise NoCanonicalForm(f"{self.cur} lies in the orbit of a multiple of P")
        for a1 in itertools.count(1):
            s1 = -3 * a1 * z + s
            l1 = 6 * a1 * a1 * z - 4 * a1 * s + l
            if self.nz(s1) and self.nz(l1):
                break
        self.apply(G(a1), "make sigma, lam nonzero with eta = 0")
        z, e, s, l, _ = self.cur
        p1 = [l, -2 * s, z]
        p2 = [l, -3 * s, 3 * z]
        p3 = [l, -4 * s, 6 * z]
        a = self.pick_root(p3, lambda r: self.nz(poly_eval(p2, r)))
        self.apply(Hm(a), "H(a) with p3(a) = 0, p2(a) != 0 keeps mu = 0, makes eta != 0")
        self.snap("mu")
        if self.nz(self.cur.zeta):
            self.kill_zeta()

    def normalize(self, label: ClassLabel):
        z, e, s, l, _ = self.cur
        if label.kind == "RANK2_A" and self.nz(e):
            # (0, eta, 0, 0, 0) -> (0, 0, eta, 8 eta, 0) -> (0, 0, eta, 0, 0)
            self.apply(Fm(1, 1), "rotate eta into the sigma slot")
            self.apply(G(2), "clear lam")
            self.snap("zeta", "eta", "lam", "mu")
            z, e, s, l, _ = self.cur
        if self.nz(e):
            if e != 1:
                self.apply(Diag(e), "scale eta to 1")
                self.snap("zeta", "mu")
                if self.approx:
                    self.cur = self.cur.replace(eta=1 + 0j)
                    self.steps[-1].after = self.cur
        elif self.nz(s):
            if self.nz(l):
                self.apply(G(l / (4 * s)), "clear lam")
                self.snap("lam")
            if self.cur.sigma != 1:
                self.apply(Diag(1 / self.cur.sigma), "scale sigma to 1")


def canonical_form(d: GenDer5) -> CanonicalFormResult:
    """Reduce d to a representative (0, eta, sigma, lam, 0) with a step trace.

    Exact steps are used while the needed polynomial roots are rational;
    otherwise the trace continues over complex numbers and is tagged
    approximate.  Raises :class:`NoCanonicalForm` for the orbit of P.
    """
    if d.is_zero(_tol(d) if not d.exact else 0.0):
        raise ZeroDerivation("cannot reduce the zero derivation")
    label = classify(d)
    if label.kind == "RANK3_DIAG":
        raise NoCanonicalForm(f"{d} is conjugate to a multiple of P, which has no "
                              "representative with zeta = mu = 0")
    red = _Reducer(d)
    red.kill_mu()
    red.kill_zeta()
    red.normalize(label)
    cur = red.cur
    if red.approx:
        cur = cur.replace(zeta=0j, mu=0j)
    return CanonicalFormResult(d, red.steps, cur, label, red.approx)


def representative(label: ClassLabel) -> GenDer5:
    """The normalized tuple of a family (not defined for RANK3_DIAG)."""
    k, ps = label.kind, label.params
    if k == "RANK1":
        return GenDer5.of(0, 0, 0, 1, 0)
    if k == "RANK2_A":
        return GenDer5.of(0, 0, 1, 0, 0)
    if k == "RANK2_B":
        return GenDer5.of(0, 1, ps[0], 0, 0)
    if k == "RANK3_A":
        return GenDer5.of(0, 1, 0, ps[0], 0)
    if k == "RANK3_B":
        return GenDer5.of(0, 1, ps[0], ps[1], 0)
    raise NoCanonicalForm(k)


# -- orbit equivalence -----------------------------------------------------------

class Verdict(enum.Enum):
    EQUIVALENT = "equivalent"
    DISTINCT = "distinct"
    INCONCLUSIVE = "inconclusive"


@dataclass
class OrbitComparison:
    verdict: Verdict
    labels: tuple
    reason: str
    certificate: GroupElement | None = None

    def to_json(self):
        return {"verdict": self.verdict.value, "labels": [l.to_json() for l in self.labels],
                "reason": self.reason,
                "certificate": self.certificate.to_json() if self.certificate else None}


def _exact_root(q: Fraction, k: int):
    """A rational k-th root of q, or None."""
    sign = -1 if q < 0 else 1
    if sign < 0 and k % 2 == 0:
        return None
    out = []
    for part in (abs(q).numerator, abs(q).denominator):
        r = round(part ** (1.0 / k))
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand**k == part:
                out.append(cand)
                break
        else:
            return None
    return sign * Fraction(out[0], out[1])


def _root(q, k):
    if is_exact(q):
        r = _exact_root(q, k)
        if r is not None:
            return r
    return complex(q) ** (1.0 / k)


def orbit_equivalent(d1: GenDer5, d2: GenDer5, certify: bool = True) -> OrbitComparison:
    """Decide whether d2 = xi * g d1 g^-1 for some scale xi and g in Aut(sl2).

    Within a family, (xi, Diag(nu)) sends (0, 1, s, l, 0) to
    (0, xi/nu, xi nu s, xi nu^2 l, 0); keeping eta = 1 forces xi = nu, so
    RANK2_B and RANK3_A are single orbits and RANK3_B is classified by
    sigma^3 / lam^2.
    """
    l1, l2 = classify(d1), classify(d2)
    labels = (l1, l2)
    if l1.kind != l2.kind:
        return OrbitComparison(Verdict.DISTINCT, labels, "different families")
    approx = l1.approximate or l2.approximate
    if l1.kind == "RANK3_B":
        (s1, m1), (s2, m2) = l1.params, l2.params
        i1, i2 = s1**3 / m1**2, s2**3 / m2**2
        if approx:
            if abs(complex(i1) - complex(i2)) > EPS * max(1.0, abs(complex(i1))):
                return OrbitComparison(Verdict.DISTINCT, labels, "sigma^3/lam^2 differs")
            return OrbitComparison(Verdict.INCONCLUSIVE, labels,
                                   "sigma^3/lam^2 agrees only within tolerance")
        if i1 != i2:
            return OrbitComparison(Verdict.DISTINCT, labels, "sigma^3/lam^2 differs")
        reason = "equal sigma^3/lam^2"
    else:
        reason = "single orbit family"
    cert = None
    if certify and l1.kind != "RANK3_DIAG":
        cert = _certificate(d1, d2, l1, l2)
    return OrbitComparison(Verdict.EQUIVALENT, labels, reason, cert)


def _certificate(d1, d2, l1, l2) -> GroupElement:
    c1, c2 = canonical_form(d1), canonical_form(d2)
    r1, r2 = c1.canonical, c2.canonical
    kind = l1.kind
    if kind == "RANK1":
        xi, nu = r2.lam / r1.lam, None
    elif kind == "RANK2_A":
        xi, nu = 1, None
    elif kind == "RANK2_B":
        nu = _root(r2.sigma / r1.sigma, 2)
        xi = nu
    elif kind == "RANK3_A":
        nu = _root(r2.lam / r1.lam, 3)
        xi = nu
    else:
        nu = r2.lam * r1.sigma / (r1.lam * r2.sigma)
        xi = nu
    middle = GroupElement(xi, (Diag(nu),) if nu is not None and nu != 1 else ())
    return c1.trace.then(middle).then(c2.trace.inverse())
