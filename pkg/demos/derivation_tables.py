"""Generalized derivations and Hom-Lie twists of small simple Lie algebras.

Run with ``python demos/derivation_tables.py``.
"""

from homlie import deriv_spaces as ds
from homlie.lie_core import by_name, sl2
from homlie.linalg import fmt_rational

# An (a,b,c)-derivation satisfies a*D([x,y]) = b*[D x, y] + c*[x, D y].
# Each space is the kernel of one exact linear system over Q.
g = sl2()
print("sl2, basis", g.basis_names)
for t in [(1, 1, 1), (-1, 1, 1), (2, 1, 1), (0, 1, 1), (3, 1, 1)]:
    print(f"  Der_{t}: dim {ds.gen_derivations(g, t).dim}")

# The (-1,1,1) space is the interesting one: five dimensions, none of them inner.
for v in ds.gen_derivations(g, (-1, 1, 1)).vectors:
    print("   ", [[fmt_rational(x) for x in row] for row in v.reshape(3, 3)])

# Twists T making ([,], T) a Hom-Lie algebra.  For sl2 the identity plus the
# (-1,1,1)-derivations; ad H acts on them with weights 4, 2, 0, 0, -2, -4.
hl = ds.homlie_space(g)
print("HL(sl2): dim", hl.dim)
print("  ad H weights:", ds.adH_weight_decomposition(hl, g).multiplicities())

for name in ("sl3", "sp4", "so5"):
    h = by_name(name)
    print(f"{name} (dim {h.dim}): Der_(-1,1,1) = {ds.gen_derivations(h, (-1, 1, 1)).dim},"
          f" Der_(2,1,1) = {ds.gen_derivations(h, (2, 1, 1)).dim},"
          f" HL = {ds.homlie_space(h).dim}")
