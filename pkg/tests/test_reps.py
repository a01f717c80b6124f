import random
from fractions import Fraction

import numpy as np
import pytest
import sympy

from homlie.homlie_reps import (NotInvariant, RepError, RepSpec, RepresentationViolation,
                                Unsupported, anti_intertwiners, direct_sum, double_extension,
                                find_invariant_complement, irreducible_sl2_module, is_invariant,
                                module_of, rho_D_closed_form, sl2D_representation,
                                sl2_submodule_graph, solve_rep_extension)
from homlie.linalg import SubspaceBasis, identity, zeros
from homlie.sl2_homlie import GenDer5, check_homlie_jacobi, extend_sl2, random_tuple, tuple_to_matrix


def residual(mod, d, A):
    """rho(D x) + A rho(x) + rho(x) A for x = H, E, F."""
    Dm = tuple_to_matrix(d)
    acts = [mod.H, mod.E, mod.F]
    out = []
    for x in range(3):
        rho_Dx = sum((Dm[k, x] * acts[k] for k in range(3)), zeros(mod.dim, mod.dim))
        out.append(rho_Dx + A @ acts[x] + acts[x] @ A)
    return out


@pytest.mark.parametrize("m", range(13))
def test_module_relations(m):
    V = irreducible_sl2_module(m)
    comm = lambda A, B: A @ B - B @ A
    assert np.array_equal(comm(V.H, V.E), 2 * V.E)
    assert np.array_equal(comm(V.H, V.F), -2 * V.F)
    assert np.array_equal(comm(V.E, V.F), V.H)
    assert [V.H[k, k] for k in range(m + 1)] == [m - 2 * k for k in range(m + 1)]


def test_small_modules():
    assert not irreducible_sl2_module(0).H.any()
    assert irreducible_sl2_module(1).H.tolist() == [[1, 0], [0, -1]]
    assert irreducible_sl2_module(2).H.tolist() == [[2, 0, 0], [0, 0, 0], [0, 0, -2]]
    with pytest.raises(RepError):
        irreducible_sl2_module(-1)


def test_v2_example():
    sol = solve_rep_extension(module_of(2), GenDer5.of(1, 1, 1, 1, 1))
    assert sol.unique
    assert sol.solution().tolist() == [[-1, -2, -1], [-1, 2, 1], [-1, 2, -1]]


def test_v2_symbolic_oracle():
    z, e, s, l, m = sympy.symbols("z e s l m")
    V = module_of(2)
    A = sympy.Matrix(3, 3, sympy.symbols("a0:9"))
    Dm = sympy.Matrix([[2 * z, e, s], [2 * s, -z, l], [2 * e, m, -z]])
    acts = [sympy.Matrix(M.tolist()) for M in (V.H, V.E, V.F)]
    eqs = []
    for x in range(3):
        rho_Dx = sum((Dm[k, x] * acts[k] for k in range(3)), sympy.zeros(3))
        eqs.extend(rho_Dx + A * acts[x] + acts[x] * A)
    sol = sympy.solve(eqs, list(A), dict=True)
    assert len(sol) == 1
    closed = sympy.Matrix([[-z, -2 * s, -l], [-e, 2 * z, s], [-m, 2 * e, -z]])
    assert A.subs(sol[0]) == closed


def test_closed_form_examples():
    assert not rho_D_closed_form(GenDer5()).any()
    assert rho_D_closed_form(GenDer5.of(0, 0, 0, 1, 0)).tolist() == [[0, 0, -1], [0, 0, 0], [0, 0, 0]]
    assert rho_D_closed_form(GenDer5.of(1, 0, 0, 0, 0)).tolist() == [[-1, 0, 0], [0, 2, 0], [0, 0, -1]]


def test_solutions_satisfy_equations():
    rng = random.Random(1)
    for _ in range(10):
        d = random_tuple(rng)
        sol = solve_rep_extension(module_of([2, 2]), d)
        assert sol.solvable
        for R in residual(sol.module, d, sol.solution()):
            assert not R.any()


@pytest.mark.parametrize("m", [1, 3, 4, 5])
def test_other_weights_unsolvable(m):
    rng = random.Random(m)
    for _ in range(5):
        assert not solve_rep_extension(module_of(m), random_tuple(rng)).solvable


def test_trivial_module_unconstrained():
    sol = solve_rep_extension(module_of(0), GenDer5.of(1, 2, 3, 4, 5))
    assert sol.solvable and sol.homogeneous.dim == 1


def test_zero_derivation_on_v4_only_anti_intertwiners():
    sol = solve_rep_extension(module_of(4), GenDer5())
    assert sol.solvable and sol.homogeneous.dim == 0 and not sol.solution().any()


def test_non_identity_L_rejected():
    spec = RepSpec(module_of(2), 2 * identity(3))
    with pytest.raises(Unsupported):
        solve_rep_extension(spec, GenDer5.of(1, 0, 0, 0, 0))
    with pytest.raises(RepError):
        RepSpec(module_of(2), identity(2))


def test_anti_intertwiners():
    assert anti_intertwiners(2, 2).dim == 0
    assert anti_intertwiners(0, 0).dim == 1
    assert anti_intertwiners(1, 3).dim == 0
    assert all(anti_intertwiners(m, m).dim == 0 for m in range(1, 6))


@pytest.mark.parametrize("m,m2", [(1, 3), (0, 2), (2, 0), (2, 4), (1, 1)])
def test_anti_intertwiners_symbolic_oracle(m, m2):
    V, W = module_of(m), module_of(m2)
    T = sympy.Matrix(m2 + 1, m + 1, sympy.symbols(f"t0:{(m + 1) * (m2 + 1)}"))
    eqs = []
    for X, Y in ((W.H, V.H), (W.E, V.E), (W.F, V.F)):
        eqs.extend(sympy.Matrix(X.tolist()) * T + T * sympy.Matrix(Y.tolist()))
    M = sympy.Matrix([[sympy.diff(e, t) for t in T] for e in eqs])
    assert anti_intertwiners(m, m2).dim == len(T) - M.rank()


def test_complement_of_block():
    mod = module_of([2, 2])
    A = solve_rep_extension(mod, GenDer5.of(1, 2, 3, 4, 5)).solution()
    W = find_invariant_complement(mod, A, mod.block(0))
    assert W.same_span(mod.block(1))


@pytest.mark.parametrize("t", [1, -1, Fraction(3, 7)])
def test_complement_of_diagonal_copy(t):
    mod = module_of([2, 2])
    A = solve_rep_extension(mod, GenDer5.of(1, -1, 2, 0, 3)).solution()
    U = sl2_submodule_graph(mod, 0, 1, t)
    W = find_invariant_complement(mod, A, U)
    ops = [mod.H, mod.E, mod.F, A]
    assert is_invariant(W, ops)
    assert SubspaceBasis(mod.dim, list(U.vectors) + list(W.vectors)).dim == mod.dim


def test_complement_in_v2_plus_v4():
    mod = module_of([2, 4])
    # only d = 0 admits rho(D) here
    assert not solve_rep_extension(mod, GenDer5.of(0, 0, 0, 1, 0)).solvable
    A = solve_rep_extension(mod, GenDer5()).solution()
    assert find_invariant_complement(mod, A, mod.block(1)).same_span(mod.block(0))
    # as plain linear algebra: a rho(D) supported on the V(2) block still works
    B = zeros(8, 8)
    B[:3, :3] = rho_D_closed_form(GenDer5.of(1, 1, 1, 1, 1))
    assert find_invariant_complement(mod, B, mod.block(1)).same_span(mod.block(0))


def test_non_invariant_submodule_rejected():
    mod = module_of([2, 2])
    U = SubspaceBasis(6, [identity(6)[0]])
    with pytest.raises(NotInvariant):
        find_invariant_complement(mod, zeros(6, 6), U)


def test_double_extension_v2():
    d = GenDer5.of(1, 1, 1, 1, 1)
    h = extend_sl2(d)
    spec = RepSpec(module_of(2))
    big = double_extension(h, spec, sl2D_representation(h, spec, rho_D_closed_form(d)),
                           validate=False)
    assert big.dim == 7 and check_homlie_jacobi(big).ok
    assert big.twist[3, 3] == -1 and big.twist[6, 6] == 1


def test_double_extension_trivial():
    h = extend_sl2(GenDer5())
    spec = RepSpec(module_of(0))
    big = double_extension(h, spec, [zeros(1, 1)] * 4)
    assert big.dim == 5 and check_homlie_jacobi(big).ok


def test_double_extension_block_diagonal():
    d = GenDer5.of(2, 0, -1, 1, 3)
    h = extend_sl2(d)
    mod = module_of([2, 2])
    spec = RepSpec(mod)
    A = solve_rep_extension(mod, d).solution()
    big = double_extension(h, spec, sl2D_representation(h, spec, A), validate=False)
    assert big.dim == 10 and check_homlie_jacobi(big).ok


def test_double_extension_rejects_bad_rho():
    d = GenDer5.of(1, 0, 0, 0, 0)
    h = extend_sl2(d)
    spec = RepSpec(module_of(2))
    with pytest.raises(RepresentationViolation) as exc:
        double_extension(h, spec, sl2D_representation(h, spec, zeros(3, 3)))
    assert exc.value.pair[1] == 3


def test_direct_sum_offsets():
    mod = direct_sum(module_of(1), module_of(3), module_of(0))
    assert mod.weights == (1, 3, 0) and mod.offsets == [0, 2, 6] and mod.dim == 7
    assert "V(1) + V(3) + V(0)" in repr(mod)
