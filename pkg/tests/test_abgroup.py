import random
from fractions import Fraction
from math import gcd

import pytest

from g2inv.abgroup import (
    FgAbelianGroup,
    GroupAutomorphism,
    LinkingForm,
    d_o,
    d_o_with_witness,
    d_pi,
    divisors,
    linking_eval,
    normalize,
    pullback_check,
    s_dpi_contains,
    s_dpi_point,
)
from g2inv.errors import NotAutomorphism

from oracles import brute_d_o


def random_chain(rng, bound=200):
    """Random divisor chain n1 | n2 | ... with product at most ``bound``."""
    orders = []
    size = 1
    while rng.random() < 0.7:
        base = orders[-1] if orders else 1
        choices = [base * k for k in range(2 if orders else 2, 13) if size * base * k <= bound]
        if not choices:
            break
        n = rng.choice(choices)
        orders.append(n)
        size *= n
    return orders


def random_group_and_p(rng):
    b = rng.randint(0, 2)
    orders = random_chain(rng)
    h = FgAbelianGroup(b, tuple(orders))
    if b:
        d = rng.randint(1, 48)
        while True:
            v = [rng.randint(-5, 5) for _ in range(b)]
            g = 0
            for x in v:
                g = gcd(g, x)
            if g == 1:
                break
        free = [d * x for x in v]
    else:
        free = []
    tor = [rng.randrange(n) for n in orders]
    return h, h.element(free, tor)


def test_normalize_examples():
    h, _ = normalize([], 2)
    assert (h.free_rank, h.torsion_orders) == (2, ())
    h, to = normalize([[0, 4]], 2)
    assert (h.free_rank, h.torsion_orders) == (1, (4,))
    assert str(h) == "Z + Z_4"
    h, _ = normalize([[2, 4], [6, 8]])
    assert (h.free_rank, h.torsion_orders) == (0, (2, 4))


def test_invalid_chain_rejected():
    with pytest.raises(ValueError):
        FgAbelianGroup(0, (4, 6))
    with pytest.raises(ValueError):
        FgAbelianGroup(0, (1,))


def test_divisibility_examples():
    h = FgAbelianGroup(1, (4,))
    p = h.element([8], [2])
    assert d_pi(h, p) == 8 and d_o(h, p) == 4
    t = h.element([0], [2])
    assert d_pi(h, t) == 0 and d_o(h, t) == 0
    z2 = FgAbelianGroup(2)
    assert d_pi(z2, z2.element([6, 10])) == 2 == d_o(z2, z2.element([6, 10]))
    assert d_o(z2, z2.zero()) == 0


def test_witness_small_example():
    h = FgAbelianGroup(1, (3,))
    do, m, y = d_o_with_witness(h, h.element([6], [1]))
    assert (do, m) == (2, 1)
    assert m * h.element([6], [1]) == (m * m * do) * y


def test_d_o_against_definition_oracle():
    rng = random.Random(11)
    checked = 0
    while checked < 200:
        h, p = random_group_and_p(rng)
        if h.torsion_size > 200:
            continue
        do, m, y = d_o_with_witness(h, p)
        assert do == brute_d_o(h.free_rank, list(h.torsion_orders), list(p.free), list(p.torsion))
        dp = d_pi(h, p)
        assert dp <= 48
        if dp:
            assert dp % do == 0
            assert m * p == (m * m * do) * y
        checked += 1


def test_s_dpi():
    h = FgAbelianGroup(1, (4,))
    p = h.element([8], [2])
    k = s_dpi_point(h, p)
    assert s_dpi_contains(h, p, k)
    assert s_dpi_contains(h, p, k + h.element([0], [1]))
    assert not s_dpi_contains(h, p, h.element([2], [0]))


def test_linking_form_properties():
    rng = random.Random(12)
    h = FgAbelianGroup(1, (2, 6))
    b = LinkingForm.for_group(h, [[Fraction(1, 2), Fraction(1, 2)], [Fraction(1, 2), Fraction(1, 6)]])
    for _ in range(100):
        x, y, z = (h.element([rng.randint(-9, 9)], [rng.randrange(2), rng.randrange(6)]) for _ in range(3))
        assert linking_eval(b, x, y) == linking_eval(b, y, x)
        assert linking_eval(b, x + y, z) == (linking_eval(b, x, z) + linking_eval(b, y, z)) % 1
        free = h.element([rng.randint(-9, 9)], [0, 0])
        assert linking_eval(b, free, y) == 0 == linking_eval(b, y, free)


def test_linking_form_validation():
    h = FgAbelianGroup(0, (4,))
    with pytest.raises(ValueError):
        LinkingForm.for_group(h, [[Fraction(1, 3)]])
    assert LinkingForm.for_group(h, [[Fraction(1, 4)]]).is_nondegenerate()
    assert not LinkingForm.for_group(h, [[Fraction(1, 2)]]).is_nondegenerate()


def test_automorphisms():
    h = FgAbelianGroup(1, (4,))
    ident = GroupAutomorphism.identity(h)
    assert ident.is_invertible()
    shear = GroupAutomorphism(h, [[1]], [[1]], [[3]])
    assert shear.is_invertible()
    x = h.element([2], [1])
    assert shear.compose(ident)(x) == shear(x)
    assert shear.compose(shear)(x) == shear(shear(x))
    assert not GroupAutomorphism(h, [[1]], [[0]], [[2]]).is_invertible()
    with pytest.raises(NotAutomorphism):
        GroupAutomorphism(FgAbelianGroup(0, (2, 4)), [], [[], []], [[1, 0], [1, 1]])
    b = LinkingForm.for_group(h, [[Fraction(1, 4)]])
    with pytest.raises(NotAutomorphism):
        pullback_check(GroupAutomorphism(h, [[2]], [[0]], [[1]]), b, h.element([8], [2]))


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
