import random
from fractions import Fraction
from itertools import combinations, permutations

import pytest

from g2inv.errors import NotPositive, WrongDegree, WrongDimension
from g2inv.exactalg import determinant
from g2inv.forms import (
    ExteriorForm,
    Octonion,
    bilinear_form_3form,
    hodge_star,
    interior,
    is_positive_3form,
    model_forms,
    octonion_phi,
    product_spin7,
    pullback,
    signed_permutation_matrix,
    spin7_certificate,
    su2_g2_form,
    su2_squared_form,
    su3_g2_form,
    wedge,
)

M = model_forms()
PHI0, PSI0 = M["phi0"], M["psi0"]


def random_form(rng, dim, degree, density=0.5):
    coeffs = {}
    for idx in combinations(range(1, dim + 1), degree):
        if rng.random() < density:
            coeffs[idx] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return ExteriorForm.from_dict(dim, degree, coeffs)


def evaluate(form, vectors):
    """Brute-force evaluation as an alternating multilinear map."""
    total = Fraction(0)
    for idx, c in form.terms:
        minor = [[v[i - 1] for i in idx] for v in vectors]
        total += c * _det(minor)
    return total


def _det(m):
    n = len(m)
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = Fraction(1)
        for i in range(n):
            prod *= m[i][perm[i]]
        total += sign * prod
    return total


def _shuffle_wedge_eval(a, b, vectors):
    k, l = a.degree, b.degree
    total = Fraction(0)
    for left in combinations(range(k + l), k):
        right = [i for i in range(k + l) if i not in left]
        perm = list(left) + right
        sign = 1
        for i in range(len(perm)):
            for j in range(i + 1, len(perm)):
                if perm[i] > perm[j]:
                    sign = -sign
        total += sign * evaluate(a, [vectors[i] for i in left]) * evaluate(b, [vectors[i] for i in right])
    return total


def test_model_identities():
    vol8 = ExteriorForm.volume(8)
    vol7 = ExteriorForm.volume(7)
    assert wedge(PSI0, PSI0) == 14 * vol8
    assert hodge_star(PSI0) == PSI0
    assert wedge(PHI0, hodge_star(PHI0)) == 7 * vol7
    cert = is_positive_3form(PHI0)
    assert cert.is_positive and cert.is_definite
    assert bilinear_form_3form(PHI0) == [[6 if i == j else 0 for j in range(7)] for i in range(7)]


def test_product_spin7_of_phi0_is_psi0():
    assert product_spin7(PHI0) == PSI0


def test_wedge_against_evaluation_oracle():
    rng = random.Random(21)
    for _ in range(30):
        a = random_form(rng, 6, rng.randint(1, 3))
        b = random_form(rng, 6, rng.randint(1, 6 - a.degree))
        vs = [[Fraction(rng.randint(-3, 3)) for _ in range(6)] for _ in range(a.degree + b.degree)]
        assert evaluate(wedge(a, b), vs) == _shuffle_wedge_eval(a, b, vs)


def test_hodge_star_involution():
    rng = random.Random(22)
    for _ in range(100):
        n = rng.randint(2, 8)
        k = rng.randint(0, n)
        a = random_form(rng, n, k)
        assert hodge_star(hodge_star(a)) == (-1) ** (k * (n - k)) * a


def test_positivity_under_signed_permutations():
    rng = random.Random(23)
    seen_plus = seen_minus = 0
    while seen_plus < 20 or seen_minus < 20:
        perm = list(range(1, 8))
        rng.shuffle(perm)
        signs = [rng.choice((1, -1)) for _ in range(7)]
        mat = signed_permutation_matrix(perm, signs)
        moved = pullback(PHI0, mat)
        if determinant(mat) == 1:
            assert is_positive_3form(moved).is_positive
            seen_plus += 1
        else:
            assert not is_positive_3form(moved).is_positive
            assert is_positive_3form(-1 * moved).is_positive
            seen_minus += 1


def test_positivity_errors():
    with pytest.raises(WrongDegree):
        is_positive_3form(ExteriorForm.parse(7, "12"))
    with pytest.raises(WrongDimension):
        is_positive_3form(ExteriorForm.parse(6, "123"))
    with pytest.raises(NotPositive):
        product_spin7(ExteriorForm.parse(7, "123"))


def test_su2_triple_relations():
    two_vol = 2 * ExteriorForm.volume(4)
    i, j, k = M["suII"], M["suJJ"], M["suKK"]
    assert wedge(i, i) == wedge(j, j) == wedge(k, k) == two_vol
    zero = ExteriorForm.zero(4, 4)
    assert wedge(i, j) == wedge(i, k) == wedge(j, k) == zero


def test_su3_product_is_phi0():
    assert su3_g2_form() == PHI0


def test_su2_products_sign_convention():
    # the corrected sign on the K term reproduces the models exactly
    assert su2_g2_form(k_sign=-1) == PHI0
    assert su2_squared_form(k_sign=-1) == PSI0
    # the literal triple gives a split 3-form
    sig = is_positive_3form(su2_g2_form()).signature
    assert (sig.n_plus, sig.n_minus) == (3, 4)


def test_su2_squared_certificate():
    assert wedge(su2_squared_form(), su2_squared_form()) == 14 * ExteriorForm.volume(8)
    literal = spin7_certificate(su2_squared_form())
    assert literal.square == 14 and not literal.contractions_definite
    assert spin7_certificate(su2_squared_form(k_sign=-1)).matches_model
    assert spin7_certificate(PSI0).matches_model


def _rand_octonion(rng):
    return Octonion(tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(8)))


def test_moufang_identity():
    rng = random.Random(24)
    for _ in range(1000):
        u, x, y = (_rand_octonion(rng) for _ in range(3))
        assert (u * (x * y)) * u == (u * x) * (y * u)


def test_octonion_norm_and_table():
    rng = random.Random(25)
    for _ in range(100):
        x, y = _rand_octonion(rng), _rand_octonion(rng)
        assert (x * y).norm() == x.norm() * y.norm()
        assert x * x.conj() == Octonion((x.norm(),) + (0,) * 7)
    for a, b, c in combinations(range(1, 8), 3):
        assert octonion_phi(Octonion.unit(a), Octonion.unit(b), Octonion.unit(c)) == PHI0.coefficient((a, b, c))


def test_parse_and_interior():
    f = ExteriorForm.parse(7, "123 + 145 - 2/3*257")
    assert f.coefficient((2, 5, 7)) == Fraction(-2, 3)
    assert interior([1, 0, 0, 0, 0, 0, 0], f) == ExteriorForm.parse(7, "23 + 45")
