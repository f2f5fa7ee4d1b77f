import pytest

from qschur import realize
from qschur import symgroup as sg
from qschur.blm import BLMAlgebra, exponent_vectors, lam_power, word
from qschur.scalars import EPS, ONE, GaussianRational
from qschur.schur import QSchur
from qschur.superindex import SuperMatrix, strict_super_matrices, super_matrices


def alg(n):
    return BLMAlgebra(n)


def test_a_jr_basics():
    a2 = alg(2)
    O = SuperMatrix.zero(2)
    # A = O, j = 0: the identity of Q(n,r)
    assert a2.a_jr(O, (0, 0), 2) == QSchur(2, 2).one()
    # |A| > r gives 0
    e12 = SuperMatrix.unit(2, 1, 2, "even")
    assert not a2.a_jr(e12, (0, 0), 0)
    # A = O, j = e_1: sum_lam lam_1 1_lam
    el = a2.a_jr(O, (1, 0), 2)
    for m, c in el.terms.items():
        lam = m.ro()
        assert c == GaussianRational(lam[0])


def test_exponent_vectors():
    assert exponent_vectors(1, 3) == [(0,)]
    js = exponent_vectors(2, 2)
    assert set(js) == {(0, 0), (1, 0), (2, 0)}
    assert lam_power((0, 2), (0, 0)) == 1  # 0^0 = 1
    assert lam_power((0, 2), (1, 0)) == 0


def test_truncated_family_product_componentwise():
    a2 = alg(2)
    x = a2.one()
    fam = a2.truncate(x, 3)
    assert fam.mul(fam) == fam
    e1 = a2.generator(("e", 1))
    fam_e = a2.truncate(e1, 3)
    assert fam_e.mul(fam) == fam_e
    assert not a2.truncate(e1, 0).components[0]  # |A| = 1 > r = 0


def test_generators_epsilon_factors():
    a2 = alg(2)
    hbar = a2.generator(("hbar", 1))
    ((mat, j),) = list(hbar.terms)
    assert hbar.terms[(mat, j)] == EPS
    assert mat == SuperMatrix.unit(2, 1, 1, "odd") and j == (0, 0)
    with pytest.raises(ValueError):
        a2.generator(("e", 2))


def gen_shapes(n):
    for i in range(1, n + 1):
        yield ("h", i)
        yield ("hbar", i)
    for j in range(1, n):
        yield ("e", j)
        yield ("ebar", j)
        yield ("f", j)
        yield ("fbar", j)


def test_gen_mul_matches_oracle_small():
    # the master test: every generator formula equals phi-expansion plus
    # general (oracle) product, on a small grid
    for n, rmax in [(2, 3), (3, 2)]:
        a = alg(n)
        for r in range(rmax + 1):
            q = QSchur(n, r)
            for mat in strict_super_matrices(n, min(r, 2)):
                for j in exponent_vectors(n, 1):
                    target = a.a_jr(mat, j, r)
                    for kind, idx in gen_shapes(n):
                        lhs = a.eval_level(
                            a.apply_gen((kind, idx), a.element(mat, j)), r
                        )
                        gen_level = a.eval_level(a.generator((kind, idx)), r)
                        rhs = q.general_product(gen_level, target)
                        assert lhs == rhs, (n, r, kind, idx, mat, j)


def test_weight_product_formula():
    # O(e_h) A(j,r) = A(j+e_h, r) + (sum_k a_{h,k}) A(j,r)
    a2 = alg(2)
    mat = SuperMatrix.unit(2, 1, 2, "even")
    out = a2.gen_mul_key("h", 1, mat, (0, 0))
    assert out.terms == {
        (mat, (1, 0)): ONE,
        (mat, (0, 0)): ONE,
    }


def test_hbar_squares_to_weight():
    # (O|E_hh)(0)^2 = -O(e_h) so hbar^2 = O(e_h)
    a2 = alg(2)
    raw = a2.gen_mul_key("hbar", 1, SuperMatrix.unit(2, 1, 1, "odd"), (0, 0))
    assert raw.terms == {(SuperMatrix.zero(2), (1, 0)): -ONE}
    hbar = a2.generator(("hbar", 1))
    sq = a2.apply_gen(("hbar", 1), hbar)
    assert sq == a2.element(SuperMatrix.zero(2), (1, 0))


def test_qr4_symbolic():
    # [e_i, f_i] = O(e_i) - O(e_{i+1}) symbolically
    a2 = alg(2)
    from qschur.blm import super_bracket

    diff = a2.eval_expr(super_bracket(word(("e", 1)), word(("f", 1))))
    expected = a2.element(SuperMatrix.zero(2), (1, 0)) - a2.element(
        SuperMatrix.zero(2), (0, 1)
    )
    assert diff == expected


def test_blm_basis_rank():
    size, rank = realize.blm_basis_rank(1, 1)
    assert (size, rank) == (2, 2)
    for n, r in [(1, 1), (2, 1), (2, 2), (2, 3)]:
        size, rank = realize.blm_basis_rank(n, r)
        dim = len(super_matrices(n, r))
        assert size == dim and rank == size, (n, r)


def test_reexpress_round_trip():
    a2 = alg(2)
    elt = (
        a2.element(SuperMatrix.unit(2, 1, 2, "even"), (1, 0), GaussianRational(3))
        + a2.element(SuperMatrix.zero(2), (0, 0), EPS)
        + a2.element(SuperMatrix.unit(2, 2, 1, "odd"), (0, 0))
    )
    level = a2.eval_level(elt, 3)
    back = realize.reexpress(a2, level)
    assert a2.eval_level(back, 3) == level
    # the level-3 coordinates of a combination within the level-3 basis
    # bound |A|+|j| <= 3 are unique, so reexpression recovers it exactly
    assert back == elt


def test_relations_qr_qs_small():
    for n in [1, 2]:
        rep = realize.check_relations("QR", n, 2)
        assert rep.failures == 0, rep.failed[:5]
        rep = realize.check_relations("QS", n, 2)
        assert rep.failures == 0, rep.failed[:5]


def test_triangular_identity_and_single_unit():
    res = realize.triangular_product(SuperMatrix.zero(2))
    assert res.ok and res.sign == ONE
    assert list(res.expansion) == [(SuperMatrix.zero(2), (0, 0))]

    e12 = SuperMatrix.unit(2, 1, 2, "even")
    res = realize.triangular_product(e12, R=3)
    assert res.ok
    assert res.sign in (ONE, -ONE)
    for (mat, j) in res.expansion:
        if (mat, j) != (e12, (0, 0)):
            from qschur.superindex import strict_prec

            assert strict_prec(mat, e12)


def test_triangular_small_grid():
    rep = realize.triangular_report(2, 2)
    assert rep.failures == 0, rep.failed[:5]


def test_pbw_identity_monomial():
    a2 = alg(2)
    img = realize.pbw_image(a2, SuperMatrix.zero(2))
    assert img == a2.one()


def test_pbw_independence_tiny():
    count, rank = realize.pbw_independence(2, 1, 2)
    assert count == 9 and rank == 9
