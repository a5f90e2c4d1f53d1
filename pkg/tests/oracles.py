"""Independent reference computations built on sympy, used only by tests."""

from fractions import Fraction
from itertools import product

import sympy


def sympy_signature(gram):
    """(n+, n-, n0) read off the characteristic polynomial by Descartes' rule.

    Exact for symmetric matrices because every root is real.
    """
    n = len(gram)
    if n == 0:
        return (0, 0, 0)
    m = sympy.Matrix([[sympy.Rational(str(Fraction(x))) for x in row] for row in gram])
    x = sympy.Symbol("x")
    poly = sympy.Poly(m.charpoly(x).as_expr(), x)
    coeffs = poly.all_coeffs()
    zero = 0
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
        zero += 1

    def changes(cs):
        signs = [c > 0 for c in cs if c != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    deg = len(coeffs) - 1
    pos = changes(coeffs)
    neg = changes([c * (-1) ** (deg - i) for i, c in enumerate(coeffs)])
    return (pos, neg, zero)


def sympy_snf_diagonal(m):
    from sympy.matrices.normalforms import smith_normal_form

    s = smith_normal_form(sympy.Matrix(m), domain=sympy.ZZ)
    return [abs(int(s[i, i])) for i in range(min(s.shape))]


def _cols(vectors):
    return sympy.Matrix(vectors).T


def kashiwara_index(omega, a, b, c):
    """Signature of w(x,y') + w(y,z') + w(z,x') symmetrised on A + B + C."""
    basis = [(0, v) for v in a] + [(1, v) for v in b] + [(2, v) for v in c]
    w = sympy.Matrix(omega)

    def pair(u, v):
        return (sympy.Matrix([u]) * w * sympy.Matrix(v))[0, 0]

    n = len(basis)
    g = [[0] * n for _ in range(n)]
    for i, (si, u) in enumerate(basis):
        for j, (sj, v) in enumerate(basis):
            val = 0
            if (si, sj) in ((0, 1), (1, 2), (2, 0)):
                val += pair(u, v)
            if (sj, si) in ((0, 1), (1, 2), (2, 0)):
                val += pair(v, u)
            g[i][j] = sympy.Rational(val, 2)
    p, q, _ = sympy_signature(g)
    return p - q


def wall_oracle(omega, a, b, c):
    """Wall's correction from a spanning set of A n (B + C), computed with sympy.

    The Gram matrix of q on a spanning set has the same signature as q on
    the quotient because A n B + A n C lies in its radical.
    """
    w = sympy.Matrix(omega)
    ma, mb, mc = _cols(a), _cols(b), _cols(c)
    big = ma.row_join(-mb).row_join(-mc)
    ka, kb = ma.shape[1], mb.shape[1]
    vecs, bparts = [], []
    for sol in big.nullspace():
        vecs.append(ma * sol[:ka, 0])
        bparts.append(mb * sol[ka:ka + kb, 0])
    n = len(vecs)
    g = [[-(vecs[i].T * w * bparts[j])[0, 0] for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            assert g[i][j] == g[j][i]
    p, q, _ = sympy_signature(g)
    return p - q


def brute_d_o(free_rank, orders, free, torsion):
    """Max{s : m p in m^2 s H for some m >= 1}, straight from the definition.

    s runs over 1..d_pi and m over 1..exponent * d_pi; membership in the
    torsion factors is decided by enumerating every candidate y_i.
    """
    from math import gcd

    dp = 0
    for f in free:
        dp = gcd(dp, f)
    if dp == 0:
        return 0
    exponent = orders[-1] if orders else 1
    for s in range(dp, 0, -1):
        for m in range(1, exponent * dp + 1):
            k = m * m * s
            if any((m * f) % k for f in free):
                continue
            if all(any((k * y - m * t) % n == 0 for y in range(n)) for t, n in zip(torsion, orders)):
                return s
    return 0


def all_automorphism_blocks(free_rank, orders):
    """Every block triple (free, mixing, torsion) for free rank <= 1."""
    assert free_rank <= 1
    k = len(orders)
    frees = [[[1]], [[-1]]] if free_rank else [[]]
    if free_rank:
        mixes = [[[a] for a in v] for v in product(*[range(n) for n in orders])]
    else:
        mixes = [[[] for _ in range(k)]]
    for v in product(*[range(orders[i]) for i in range(k) for _ in range(k)]):
        tb = [list(v[i * k:(i + 1) * k]) for i in range(k)]
        for fb in frees:
            for mx in mixes:
                yield fb, mx, tb
