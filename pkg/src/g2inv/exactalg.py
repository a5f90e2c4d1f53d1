"""Exact integer/rational linear algebra.

Matrices are plain lists of rows whose entries are ``int`` or
``fractions.Fraction``; no floating point is used anywhere. Subspaces of
Q^n are stored by a canonical basis (primitive integer rows of the reduced
row echelon form), so two :class:`Subspace` objects compare equal exactly
when they span the same space.

The hot loops (fraction-free elimination and congruence diagonalisation)
live in the kernel selected by :mod:`g2inv._backend`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from ._backend import kernels
from .errors import DimensionMismatch, NonSymmetric, NotContained

Number = int | Fraction


def as_fraction(x) -> Fraction:
    """Parse ints, Fractions and ``"a/b"`` strings. Floats are rejected."""
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an exact number, got {type(x).__name__}")


def normalize_number(x: Fraction) -> Number:
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def integer_row(row: Sequence[Number]) -> list[int]:
    """Scale a rational vector by the lcm of its denominators."""
    den = 1
    for x in row:
        if isinstance(x, Fraction) and x.denominator != 1:
            den = lcm(den, x.denominator)
    if den == 1:
        return [int(x) for x in row]
    return [int(x * den) for x in row]


def primitive(row: Sequence[int]) -> list[int]:
    g = gcd(*row)
    if g > 1:
        return [x // g for x in row]
    return list(row)


def transpose(m: Sequence[Sequence[Number]]) -> list[list[Number]]:
    return [list(col) for col in zip(*m)]


def mat_mul(a, b):
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# --------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(m: Sequence[Sequence[int]]):
    """Return ``(u, d, v)`` with ``u @ m @ v == d``.

    ``u`` and ``v`` are unimodular and ``d`` is diagonal with nonnegative
    entries d_1 | d_2 | ...
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [[int(x) for x in r] for r in m]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for r in a:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]

    for t in range(min(rows, cols)):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        clean = False
            if not clean:
                cand = [(abs(a[i][t]), i, t) for i in range(t + 1, rows) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t + 1, cols) if a[t][j]]
                _, i, j = min(cand)
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return u, a, v


def invariant_factors(m: Sequence[Sequence[int]]) -> list[int]:
    _, d, _ = smith_normal_form(m)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


# --------------------------------------------------------------------------
# Symmetric forms


@dataclass(frozen=True)
class Signature:
    n_plus: int
    n_minus: int
    n_zero: int

    @property
    def value(self) -> int:
        return self.n_plus - self.n_minus

    @property
    def rank(self) -> int:
        return self.n_plus + self.n_minus

    def __add__(self, other: "Signature") -> "Signature":
        return Signature(
            self.n_plus + other.n_plus,
            self.n_minus + other.n_minus,
            self.n_zero + other.n_zero,
        )


def is_symmetric(s: Sequence[Sequence[Number]]) -> bool:
    n = len(s)
    return all(len(r) == n for r in s) and all(
        s[i][j] == s[j][i] for i in range(n) for j in range(i + 1, n)
    )


def symmetric_signature(s: Sequence[Sequence[Number]]) -> Signature:
    """Inertia of a rational symmetric matrix by exact congruence."""
    if not is_symmetric(s):
        raise NonSymmetric("matrix is not symmetric")
    den = 1
    for row in s:
        for x in row:
            if isinstance(x, Fraction) and x.denominator != 1:
                den = lcm(den, x.denominator)
    gram = [[int(x * den) for x in row] for row in s]
    return Signature(*kernels.inertia(gram))


def block_diag(*blocks: Sequence[Sequence[Number]]) -> list[list[Number]]:
    n = sum(len(b) for b in blocks)
    out: list[list[Number]] = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return out


def bilinear(form: Sequence[Sequence[Number]], x: Sequence[Number], y: Sequence[Number]) -> Number:
    total = 0
    for xi, row in zip(x, form):
        if xi:
            acc = 0
            for gij, yj in zip(row, y):
                if gij and yj:
                    acc += gij * yj
            total += xi * acc
    return total


class SparseForm:
    """Row-sparse view of a bilinear form; ``apply(y)`` computes G y."""

    __slots__ = ("n", "rows")

    def __init__(self, form: Sequence[Sequence[Number]]):
        self.n = len(form)
        self.rows = [[(j, g) for j, g in enumerate(r) if g] for r in form]

    def apply(self, y: Sequence[Number]) -> list[Number]:
        return [sum(g * y[j] for j, g in r) for r in self.rows]

    def pair(self, x: Sequence[Number], y: Sequence[Number]) -> Number:
        return sum(xi * sum(g * y[j] for j, g in r) for xi, r in zip(x, self.rows) if xi)


# --------------------------------------------------------------------------
# Subspaces


def rref(rows: Iterable[Sequence[Number]], ncols: int):
    """Canonical echelon basis ``(rows, pivots)`` of the span of ``rows``."""
    return kernels.rref([integer_row(r) for r in rows], ncols)


def nullspace(rows: Sequence[Sequence[Number]], ncols: int) -> list[list[int]]:
    """Integer basis of ``{x : r . x = 0 for every row r}``."""
    basis, pivots = rref(rows, ncols)
    pivset = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        den = 1
        for row, c in zip(basis, pivots):
            if row[f]:
                den = lcm(den, row[c])
        x = [0] * ncols
        x[f] = den
        for row, c in zip(basis, pivots):
            if row[f]:
                x[c] = -row[f] * den // row[c]
        out.append(primitive(x))
    return out


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n with a canonical primitive-integer echelon basis."""

    ambient_dim: int
    basis: tuple[tuple[int, ...], ...]
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence[Number]], ambient_dim: int) -> "Subspace":
        vectors = list(vectors)
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in Q^{ambient_dim}")
        basis, pivots = rref(vectors, ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in basis), tuple(pivots))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls.span(identity(n), n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, v: Sequence[Number]) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length does not match ambient dimension")
        # reduce v against the echelon basis; zero residue means membership
        w = [Fraction(x) for x in v]
        for row, c in zip(self.basis, self.pivots):
            if w[c]:
                q = w[c] / row[c]
                w = [x - q * y for x, y in zip(w, row)]
        return not any(w)

    def contains_space(self, other: "Subspace") -> bool:
        _check_dims(self, other)
        return all(v in self for v in other.basis)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _check_dims(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ")


def span_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_dims(a, b)
    return Subspace.span(list(a.basis) + list(b.basis), a.ambient_dim)


def annihilator(a: Subspace) -> list[list[int]]:
    """Basis of linear equations cutting out ``a`` (its annihilator)."""
    return nullspace(a.basis, a.ambient_dim)


def span_intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_dims(a, b)
    n = a.ambient_dim
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(n)
    eqs = annihilator(b)
    if not eqs:
        return a
    # x . A lies in b  <=>  (x . A) . h = 0 for every equation h of b
    m = kernels.dot_rows(a.basis, eqs)
    combos = nullspace(transpose(m), a.dim)
    vecs = kernels.dot_rows(combos, transpose(a.basis))
    return Subspace.span(vecs, n)


def quotient_basis(big: Subspace, small: Subspace) -> list[list[int]]:
    """Vectors of ``big`` completing a basis of ``small`` to one of ``big``."""
    _check_dims(big, small)
    if not big.contains_space(small):
        raise NotContained("small subspace is not contained in big")
    cols = list(small.basis) + list(big.basis)
    if not cols:
        return []
    _, pivots = rref(transpose(cols), len(cols))
    k = small.dim
    return [list(cols[c]) for c in pivots if c >= k]


def express(vectors: Sequence[Sequence[Number]], targets: Sequence[Sequence[Number]]) -> list[list[Fraction]]:
    """Coefficients ``x`` with ``sum_i x[t][i] * vectors[i] == targets[t]``.

    Free coefficients are set to zero. Raises NotContained when a target is
    outside the span.
    """
    k = len(vectors)
    if not targets:
        return []
    n = len(targets[0])
    cols = [integer_row(v) for v in vectors]
    aug = cols + [list(t) for t in targets]
    for v in aug:
        if len(v) != n:
            raise DimensionMismatch("vectors and targets have different lengths")
    # rows of the augmented system are coordinates; scaling a column of a
    # vector by a positive integer is undone below
    scales = []
    for v, ic in zip(vectors, cols):
        nz = next((i for i, x in enumerate(v) if x), None)
        scales.append(Fraction(ic[nz]) / Fraction(v[nz]) if nz is not None else Fraction(1))
    basis, pivots = rref(transpose(aug), len(aug))
    for c in pivots:
        if c >= k:
            raise NotContained("target is not in the span of the vectors")
    out = []
    for t in range(len(targets)):
        x = [Fraction(0)] * k
        for row, c in zip(basis, pivots):
            if row[k + t]:
                x[c] = Fraction(row[k + t], row[c]) * scales[c]
        # the rref solves with the integer-scaled columns; undo via scales
        out.append(x)
    return out


def restrict_form(form: Sequence[Sequence[Number]], s: Subspace | Sequence[Sequence[Number]]) -> list[list[Number]]:
    """Gram matrix of ``form`` on the basis of ``s``."""
    vecs = s.basis if isinstance(s, Subspace) else s
    sf = SparseForm(form)
    images = [sf.apply(v) for v in vecs]
    return [
        [normalize_number(Fraction(sum(x * y for x, y in zip(u, gv)))) for gv in images]
        for u in vecs
    ]


def orthogonal_complement(form: Sequence[Sequence[Number]], s: Subspace) -> Subspace:
    """``{x : form(v, x) = 0 for all v in s}``."""
    n = s.ambient_dim
    if len(form) != n:
        raise DimensionMismatch("form size does not match subspace ambient dimension")
    if s.dim == 0:
        return Subspace.full(n)
    rows = [[sum(v[i] * form[i][j] for i in range(n) if v[i]) for j in range(n)] for v in s.basis]
    return Subspace.span(nullspace(rows, n), n)
