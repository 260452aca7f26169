import random
from fractions import Fraction

import pytest

from quasinv.groups import cyclic_group, dihedral_group, symmetric_group
from quasinv.membership import (
    IncompatibleMultiplicity,
    compute_ak_multiplicity,
    dunkl_stability_report,
    is_quasi_invariant,
    normal_expansion_sets,
    quasi_invariant_basis,
    quasi_invariant_dims,
    s_set_membership,
)
from quasinv.multipoly import MultiPoly, monomials_of_degree


def test_rank1_membership_examples():
    g = cyclic_group(2)
    k = g.multiplicity([[1]])
    x = MultiPoly.variable(g.xvars, 0)
    assert is_quasi_invariant(g, x**2, k)[0]
    ok, wit = is_quasi_invariant(g, x, k)
    assert not ok and wit is not None
    assert is_quasi_invariant(g, x**3, k)[0]


def test_zero_multiplicity_everything_member():
    from quasinv.groups import Multiplicity

    g = dihedral_group(3, 3)
    k = Multiplicity.zero(g)
    x, y = (MultiPoly.variable(g.xvars, i) for i in range(2))
    rng = random.Random(4)
    for _ in range(5):
        f = MultiPoly(g.xvars, {(rng.randint(0, 3), rng.randint(0, 3)):
                                Fraction(rng.randint(-3, 3) or 1)
                                for _ in range(4)})
        assert is_quasi_invariant(g, f, k)[0]


def test_invariant_square_of_delta():
    g = dihedral_group(3, 3)
    k = g.multiplicity([[1]])
    delta = g.relative_invariant("all")
    assert is_quasi_invariant(g, delta * delta, k)[0]


def test_normal_expansion_sets_spec_case():
    g = cyclic_group(2)
    k = g.multiplicity([[2]])
    s, r = normal_expansion_sets(g, k, 0)
    assert s.members_upto(9) == [0, 2, 4, 5, 6, 7, 8, 9]
    assert r.members_upto(9) == [0, 2, 4, 5, 6, 7, 8, 9]
    kp = compute_ak_multiplicity(g, k)
    assert kp.per_orbit == ((Fraction(0), Fraction(2)),)


def test_sets_trivial_at_zero():
    from quasinv.groups import Multiplicity

    g = cyclic_group(3)
    s, r = normal_expansion_sets(g, Multiplicity.zero(g), 0)
    assert s.members_upto(5) == [0, 1, 2, 3, 4, 5]
    assert r.members_upto(5) == [0, 1, 2, 3, 4, 5]
    assert compute_ak_multiplicity(g, Multiplicity.zero(g)).per_orbit == \
        ((Fraction(0),) * 3,)


def test_ak_cyclic3():
    g = cyclic_group(3)
    k = g.multiplicity([[0, 1, 1]])
    kp = compute_ak_multiplicity(g, k)
    # S = {0,3,6,...} u {4,7,...} u {5,8,...}; R per residue decodes k'
    s, r = normal_expansion_sets(g, k, 0)
    # brute force R over r <= 20
    smem = set(s.members_upto(60))
    for rr in range(21):
        expected = all((rr + x) in smem for x in s.members_upto(30))
        assert (rr in r) == expected
    # products certify A_k: basis(k') * basis(k) stays in Q_k
    basis_k = quasi_invariant_basis(g, k, 8)
    basis_kp = quasi_invariant_basis(g, kp, 4)
    for p in basis_kp.all_elements():
        for q in basis_k.all_elements():
            if p.total_degree() + q.total_degree() <= 8:
                assert is_quasi_invariant(g, p * q, k)[0]


def test_rank1_basis_matches_closed_form():
    # Q_k = (+)_i x^{n k_i + i} C[x^n]
    for n in (2, 3, 4):
        g = cyclic_group(n)
        rng = random.Random(n)
        for _ in range(3):
            kv = [0] + [rng.randint(0, 2) for _ in range(n - 1)]
            k = g.multiplicity([kv])
            dims = quasi_invariant_dims(g, k, 30)
            allowed = set()
            for i in range(n):
                e = n * kv[i] + i
                while e <= 30:
                    allowed.add(e)
                    e += n
            expected = [1 if d in allowed else 0 for d in range(31)]
            assert dims == expected


def test_cyclic3_spec_dims():
    g = cyclic_group(3)
    k = g.multiplicity([[0, 1, 1]])
    assert quasi_invariant_dims(g, k, 8) == [1, 0, 0, 1, 1, 1, 1, 1, 1]


def test_klein_four_product_structure():
    # dihedral(2,2) = Z/2 x Z/2: dims are the convolution of two rank-1 answers
    g = dihedral_group(2, 2)
    k = g.multiplicity([[1], [1]])
    dims = quasi_invariant_dims(g, k, 12)
    one = [1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]  # rank-1, k=1 dims
    conv = [sum(one[i] * one[d - i] for i in range(d + 1)) for d in range(13)]
    assert dims == conv


def test_membership_cross_validation_random():
    rng = random.Random(17)
    for g, kv in ((cyclic_group(3), [[0, 1, 2]]),
                  (dihedral_group(3, 3), [[1]]),
                  (dihedral_group(2, 1), [[1], [2]]),
                  (symmetric_group(3), [[2]])):
        k = g.multiplicity(kv)
        exps = [e for d in range(7) for e in monomials_of_degree(g.xvars, d)]
        agree = 0
        for _ in range(60):
            f = MultiPoly(g.xvars, {})
            for _ in range(3):
                e = exps[rng.randrange(len(exps))]
                f = f + MultiPoly(g.xvars, {e: Fraction(rng.randint(-2, 2))})
            if not f:
                continue
            r1 = is_quasi_invariant(g, f, k)[0]
            r2 = s_set_membership(g, f, k)[0]
            assert r1 == r2
            agree += 1
        assert agree > 40


def test_basis_elements_certified_by_idempotent_route():
    g = dihedral_group(3, 3)
    k = g.multiplicity([[2]])
    basis = quasi_invariant_basis(g, k, 8)
    for f in basis.all_elements():
        assert is_quasi_invariant(g, f, k)[0]
    # W-stability of Q_k
    for d in range(len(basis.per_degree)):
        for f in basis.per_degree[d]:
            for w in g.generators():
                assert basis.contains(g.act_x(w, f))


def test_invariants_and_delta_powers_inside():
    for g, kv in ((dihedral_group(3, 3), [[2]]), (cyclic_group(3), [[0, 2, 1]])):
        k = g.multiplicity(kv)
        degs, polys = g.fundamental_invariants()
        for f in polys:
            assert is_quasi_invariant(g, f, k)[0]
        nmax = max(int(h.n * k.value(h.orbit, i)) for h in g.hyperplanes
                   for i in range(h.n))
        delta = g.relative_invariant("all")
        power = delta
        while power.total_degree() < nmax + 1:
            power = power * delta
        x = MultiPoly.variable(g.xvars, 0)
        assert is_quasi_invariant(g, power, k)[0]
        assert is_quasi_invariant(g, power * x, k)[0]


def test_fractional_requires_class_function():
    g = cyclic_group(2)
    k = g.multiplicity([[Fraction(1, 2)]])  # no a given
    x = MultiPoly.variable(g.xvars, 0)
    with pytest.raises(IncompatibleMultiplicity):
        is_quasi_invariant(g, x, k)


def test_fractional_membership_matches_shifted_integral():
    # Z/2 with a=1: k = (1/2, 3/2) has the same Q as integral (2, 0) w/ a=0
    g = cyclic_group(2)
    k_frac = g.multiplicity([[Fraction(1, 2), Fraction(3, 2)]], a=[1])
    k_int = g.multiplicity([[2, 0]], a=[0])
    d1 = quasi_invariant_dims(g, k_frac, 10)
    d2 = quasi_invariant_dims(g, k_int, 10)
    assert d1 == d2
    x = MultiPoly.variable(g.xvars, 0)
    for f, expected in ((x, True), (x**2, False), (x**3, True),
                        (x**4, True), (x**2 + x**4, False)):
        assert is_quasi_invariant(g, f, k_frac)[0] == expected
        assert s_set_membership(g, f, k_frac)[0] == expected


def test_dunkl_stability():
    g = cyclic_group(3)
    k = g.multiplicity([[0, 1, 1]])
    basis = quasi_invariant_basis(g, k, 9)
    report = dunkl_stability_report(basis, invariant_degree_bound=3)
    assert report["lp_images_checked"] > 0
    # Z/2 example: L = d^2 - (2/x) d maps x^2 -> -2, x^3 -> 0
    g2 = cyclic_group(2)
    k2 = g2.multiplicity([[1]])
    from quasinv.operators import dunkl_apply_poly_monomial

    lam = MultiPoly.variable(g2.lamvars, 0)
    x = MultiPoly.variable(g2.xvars, 0)
    assert dunkl_apply_poly_monomial(g2, k2, lam**2, x**2) == \
        MultiPoly.const(g2.xvars, Fraction(-2))
    assert not dunkl_apply_poly_monomial(g2, k2, lam**2, x**3)
