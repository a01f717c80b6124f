import itertools

import numpy as np
import pytest
import sympy

from homlie import deriv_spaces as ds
from homlie.lie_core import ad, make_lie_algebra, sl2
from homlie.linalg import SubspaceBasis, identity, zeros
from homlie.sl2_homlie import basis_matrices


def brute_force_dim(g, t):
    """Dimension of Der_(a,b,c)(g) from a symbolic matrix, all ordered pairs."""
    n = g.dim
    X = sympy.Matrix(n, n, sympy.symbols(f"x0:{n * n}"))
    C = [[sympy.Matrix([g.c[i, j, k] for k in range(n)]) for j in range(n)] for i in range(n)]
    adm = lambda v: sum((v[r] * sympy.Matrix(g.c[r].T.tolist()) for r in range(n)), sympy.zeros(n))
    eqs = []
    a, b, c = (sympy.Rational(q.numerator, q.denominator) for q in t)
    for i, j in itertools.product(range(n), repeat=2):
        ei, ej = sympy.eye(n)[:, i], sympy.eye(n)[:, j]
        lhs = a * X * C[i][j] - b * (-adm(ej) * (X * ei)) - c * (adm(ei) * (X * ej))
        eqs.extend(lhs)
    M = sympy.Matrix([[sympy.diff(e, s) for s in X] for e in eqs])
    return n * n - M.rank()


def aff2():
    # 2-dim non-abelian: [e0, e1] = e1
    c = zeros(8).reshape(2, 2, 2)
    c[0, 1, 1], c[1, 0, 1] = 1, -1
    return make_lie_algebra(2, ("x", "y"), c, name="aff2")


@pytest.mark.parametrize("t,dim", [((-1, 1, 1), 5), ((1, 1, 1), 3), ((2, 1, 1), 1),
                                   ((0, 1, 1), 0), ((3, 1, 1), 0)])
def test_sl2_table(t, dim):
    assert ds.gen_derivations(sl2(), t).dim == dim


@pytest.mark.parametrize("t", [(1, 1, 1), (-1, 1, 1), (1, 2, 1), (1, 1, 2), (0, 1, -1), (2, 3, 1)])
def test_against_symbolic_solve(t):
    for g in (aff2(), sl2()):
        tt = ds.DerivationType.of(*t)
        assert ds.gen_derivations(g, tt).dim == brute_force_dim(g, tt)


def test_unequal_b_c_needs_both_orders():
    # with b != c the swapped-pair equations are independent constraints
    g, t = aff2(), ds.DerivationType.of(1, 2, 1)
    space = ds.gen_derivations(g, t)
    for v in space.vectors:
        assert ds.satisfies_derivation(g, v, t)


def test_members_satisfy_identity():
    g = sl2()
    for t in [(-1, 1, 1), (1, 1, 1), (2, 1, 1)]:
        for v in ds.gen_derivations(g, t).vectors:
            assert ds.satisfies_derivation(g, v, t)
    assert not ds.satisfies_derivation(g, identity(3), (1, 1, 1))


def test_minus_one_derivations_are_pqrst():
    space = ds.gen_derivations(sl2(), (-1, 1, 1))
    pqrst = SubspaceBasis.spanned_by(9, [M.reshape(-1) for M in basis_matrices().values()])
    assert space.same_span(pqrst)


def test_inner_derivations():
    g = sl2()
    space = ds.gen_derivations(g, (1, 1, 1))
    for i in range(3):
        assert space.contains(ad(g, identity(3)[i]).reshape(-1))


def test_homlie_space_sl2():
    g = sl2()
    hl = ds.homlie_space(g)
    assert hl.dim == 6
    for v in hl.vectors:
        assert ds.satisfies_homlie(g, v)
    dec = ds.adH_weight_decomposition(hl, g)
    assert dec.multiplicities() == {4: 1, 2: 1, 0: 2, -2: 1, -4: 1}
    traceless, has_id = ds.traceless_split(hl, 3)
    assert has_id and traceless.same_span(ds.gen_derivations(g, (-1, 1, 1)))


def test_traceless_split_edge_cases():
    only_id = SubspaceBasis(9, [identity(3).reshape(-1)])
    assert ds.traceless_split(only_id, 3)[0].dim == 0
    with pytest.raises(ds.SpaceError):
        ds.traceless_split(SubspaceBasis(9, [np.array([0, 1] + [0] * 7, dtype=object)]), 3)


def test_h_action_on_ad_E_has_weight_2():
    g = sl2()
    adE = ad(g, identity(3)[1]).reshape(-1)
    assert np.array_equal(ds.h_action(g, identity(3)[0], adE), 2 * adE)


def test_weight_decomposition_rejects_non_invariant_space():
    g = sl2()
    with pytest.raises(ds.SpaceError):
        ds.adH_weight_decomposition(SubspaceBasis(9, [[1, 1] + [0] * 7]), g)
