"""Orbits of (-1,1,1)-derivations of sl2 under scaling and automorphisms.

Run with ``python demos/sl2_orbits.py``.
"""

from fractions import Fraction

from homlie.sl2_homlie import (Fm, G, GenDer5, NoCanonicalForm, act_closed, act_conj,
                               canonical_form, classify, J, orbit_equivalent, printed_J)

# A tuple (zeta, eta, sigma, lam, mu) is the matrix
#   [[2 zeta, eta, sigma], [2 sigma, -zeta, lam], [2 eta, mu, -zeta]].
d = GenDer5.of(2, 0, 1, 0, 0)
res = canonical_form(d)
print("input", d, "->", res.canonical, res.class_label)
for step in res.steps:
    print(f"   {str(step.element):>10}  {step.after}   ({step.note})")

# Most random inputs need an irrational root somewhere; the trace then
# switches to complex arithmetic.  The label is still exact.
d = GenDer5.of(1, Fraction(1, 2), -3, 2, 5)
res = canonical_form(d)
print("input", d, "approximate trace:", res.approximate, "label:", classify(d))

# Multiples of P are diagonalizable with only two eigenvalues, so they are
# conjugate to no tuple with zeta = mu = 0.
try:
    canonical_form(GenDer5.of(1, 0, 0, 0, 0))
except NoCanonicalForm as exc:
    print("no canonical form:", exc)
print("  label:", classify(GenDer5.of(1, 0, 0, 0, 0)))

# Orbit equivalence, with a group element that proves it.
a = GenDer5.of(0, 1, 2, 3, 0)
b = act_conj(G(Fraction(1, 3)), a.scaled(-5))
cmp = orbit_equivalent(a, b)
print(cmp.verdict.value, "via", cmp.certificate)
print(orbit_equivalent(a, GenDer5.of(0, 1, 2, 5, 0)).verdict.value)

# The J_{a,c} closed form agrees with conjugation by F(a,c); the formula as
# commonly typeset does not in its first three components.
c = Fraction(3)
z = GenDer5.of(1, 0, 0, 0, 0)
print("F(1,3) acting on P:     ", act_conj(Fm(1, c), z))
print("closed form:            ", act_closed(J(1, c), z))
print("typeset formula:        ", printed_J(1, c, z))
