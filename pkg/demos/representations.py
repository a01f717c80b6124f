"""Representations of sl2[D] and the extension g + V.

Run with ``python demos/representations.py``.
"""

import random

from homlie.homlie_reps import (RepSpec, double_extension, find_invariant_complement,
                                module_of, sl2D_representation, sl2_submodule_graph,
                                solve_rep_extension)
from homlie.linalg import fmt_rational
from homlie.sl2_homlie import GenDer5, check_homlie_jacobi, extend_sl2, random_tuple

rng = random.Random(0)
d = random_tuple(rng)
print("D =", d)

# rho(D) is pinned down by rho(D x) = -rho(D) rho(x) - rho(x) rho(D).
# On the adjoint module V(2) there is exactly one solution.
sol = solve_rep_extension(module_of(2), d)
print("V(2):", [[fmt_rational(x) for x in row] for row in sol.solution()])

# On every other irreducible with m > 0 there is none.
for m in range(1, 7):
    if m != 2:
        print(f"V({m}) solvable:", solve_rep_extension(module_of(m), d).solvable)

# Complete reducibility: V(2) + V(2) with a diagonal copy of V(2) as submodule.
mod = module_of([2, 2])
A = solve_rep_extension(mod, d).solution()
U = sl2_submodule_graph(mod, 0, 1, 2)
W = find_invariant_complement(mod, A, U)
print("complement of the graph submodule:", [list(map(str, v)) for v in W.vectors])

# g + V with [x+u, y+v] = [x,y] + rho(x)v - rho(y)u and twist T + Id.
h = extend_sl2(d)
spec = RepSpec(mod)
big = double_extension(h, spec, sl2D_representation(h, spec, A), validate=False)
print("dim", big.dim, "Hom-Lie Jacobi:", check_homlie_jacobi(big).ok)
