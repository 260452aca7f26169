import random
from fractions import Fraction

import pytest

from quasinv.cyclotomic import root_of_unity
from quasinv.multipoly import (
    MultiPoly,
    NotDivisible,
    VarSpace,
    monomials_of_degree,
)

X2 = (VarSpace("x", 2),)


def _vars(n=2):
    return (VarSpace("x", n),)


def _x(i, vars=X2):
    return MultiPoly.variable(vars, i)


def test_basic_arithmetic_and_printing():
    x, y = _x(0), _x(1)
    f = (x + y) * (x - y)
    assert f == x * x - y * y
    assert f.to_string() == "x1^2-x2^2"
    assert (f - f).to_string() == "0"
    assert (x + 1) ** 3 == x**3 + 3 * x**2 + 3 * x + 1


def test_substitute_linear_sign_rep():
    v = (VarSpace("x", 1),)
    x = MultiPoly.variable(v, 0)
    f = x**3
    assert f.substitute_linear([[Fraction(-1)]]) == -(x**3)


def test_substitute_swap_fixes_symmetric():
    x, y = _x(0), _x(1)
    f = x + y
    swap = [[0, Fraction(1)], [Fraction(1), 0]]
    assert f.substitute_linear(swap) == f


def test_substitution_composes():
    # ((vw) . f) equals (v . (w . f)) on f = x^2 y for monomial matrices
    rng = random.Random(3)
    x, y = _x(0), _x(1)
    f = x**2 * y
    for _ in range(6):
        a, b, c, d = (Fraction(rng.randint(1, 3)) for _ in range(4))
        v = [[a, 0], [0, b]]
        w = [[0, c], [d, 0]]
        wv = [[0, b * c], [a * d, 0]]  # w @ v
        # f.sub(W).sub(V) = f o W o V = f.sub(W @ V)
        assert f.substitute_linear(wv) == f.substitute_linear(w).substitute_linear(v)


def test_divide_linear_power():
    x, y = _x(0), _x(1)
    assert (x**2 - y**2).divide_linear_power(x - y, 1) == x + y
    with pytest.raises(NotDivisible):
        (x**2).divide_linear_power(x, 3)
    assert (x**2).divide_linear_power(x, 2) == MultiPoly.const(X2, Fraction(1))
    # random reconstruction: (alpha*f) / alpha == f
    rng = random.Random(5)
    for _ in range(10):
        f = MultiPoly(X2, {(rng.randint(0, 3), rng.randint(0, 3)):
                           Fraction(rng.randint(-3, 3) or 1) for _ in range(4)})
        alpha = x - 2 * y
        assert (alpha * f).divide_linear_power(alpha, 1) == f


def test_homogeneous_components():
    x = _x(0)
    f = x**2 + x
    comps = f.homogeneous_components()
    assert [(d, g.to_string()) for d, g in comps] == [(1, "x1"), (2, "x1^2")]
    assert MultiPoly.zero(X2).homogeneous_components() == []


def test_bigrading():
    vars = (VarSpace("l", 1, grade=1), VarSpace("x", 1, grade=-1))
    l = MultiPoly.variable(vars, 0)
    x = MultiPoly.variable(vars, 1)
    f = l * x
    assert f.bigrade_components() == [(0, f)]
    assert (l * x + l).bigrade_components()[-1][0] == 1


def test_partial_derivative_leibniz():
    x, y = _x(0), _x(1)
    assert (x**2 * y).partial(0) == 2 * x * y
    g = x + y
    alpha = x - y
    m = 3
    lhs = (alpha**m * g).partial(0)
    rhs = m * alpha ** (m - 1) * g + alpha**m * g.partial(0)
    assert lhs == rhs


def test_alpha_adic_expansion():
    x, y = _x(0), _x(1)
    alpha = x - y
    f = (x - y) ** 2 * (x + y) + 3 * (x - y) + y**3
    comps = f.alpha_adic(alpha)
    recon = MultiPoly.zero(X2)
    for s, g in enumerate(comps):
        assert not any(e[0] for e in g.terms)  # pivot variable eliminated
        recon = recon + g * alpha**s
    assert recon == f
    assert f.valuation(alpha) == 0
    assert (alpha**2 * y).valuation(alpha) == 2


def test_alpha_adic_cyclotomic_coeffs():
    z = root_of_unity(1, 3)
    x, y = _x(0), _x(1)
    alpha = x - z * y
    f = alpha**2 * (x + y)
    comps = f.alpha_adic(alpha)
    assert not comps[0] and not comps[1]
    assert f.valuation(alpha) == 2


def test_monomials_of_degree():
    ms = monomials_of_degree(X2, 2)
    assert ms == [(2, 0), (1, 1), (0, 2)]
    assert len(monomials_of_degree(_vars(3), 4)) == 15


def test_embed():
    joint = (VarSpace("l", 2, grade=1), VarSpace("x", 2, grade=-1))
    x, y = _x(0), _x(1)
    f = (x * y).embed(joint, 2)
    assert f.to_string() == "x1*x2"
    assert f.nvars() == 4
