"""Finitely generated abelian groups, torsion linking forms and the
divisibility invariants of the spin class p_M.

Groups are kept in invariant-factor form ``Z^b + Z_{n_1} + ... + Z_{n_k}``
with ``n_1 | n_2 | ...``; elements carry a free integer vector and a
torsion residue vector in those coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .exactalg import determinant, smith_normal_form
from .errors import DimensionMismatch, NotAutomorphism


def divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@dataclass(frozen=True)
class FgAbelianGroup:
    free_rank: int
    torsion_orders: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion_orders", tuple(int(n) for n in self.torsion_orders))
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        for n in self.torsion_orders:
            if n < 2:
                raise ValueError("torsion orders must be at least 2")
        for a, b in zip(self.torsion_orders, self.torsion_orders[1:]):
            if b % a:
                raise ValueError(f"torsion orders must form a divisor chain, got {a} then {b}")

    @property
    def torsion_rank(self) -> int:
        return len(self.torsion_orders)

    @property
    def torsion_size(self) -> int:
        size = 1
        for n in self.torsion_orders:
            size *= n
        return size

    @property
    def exponent(self) -> int:
        return self.torsion_orders[-1] if self.torsion_orders else 1

    def has_two_torsion(self) -> bool:
        return any(n % 2 == 0 for n in self.torsion_orders)

    def element(self, free: Sequence[int] = (), torsion: Sequence[int] = ()) -> "GroupElement":
        free = tuple(int(x) for x in free) if free else (0,) * self.free_rank
        torsion = tuple(int(x) for x in torsion) if torsion else (0,) * self.torsion_rank
        if len(free) != self.free_rank or len(torsion) != self.torsion_rank:
            raise DimensionMismatch(
                f"element shape ({len(free)}, {len(torsion)}) does not fit group "
                f"({self.free_rank}, {self.torsion_rank})"
            )
        return GroupElement(free, tuple(t % n for t, n in zip(torsion, self.torsion_orders)), self.torsion_orders)

    def zero(self) -> "GroupElement":
        return self.element()

    def torsion_elements(self):
        """Iterate over every element of the torsion subgroup."""
        from itertools import product

        for t in product(*(range(n) for n in self.torsion_orders)):
            yield self.element(torsion=t)

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z_{n}" for n in self.torsion_orders]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GroupElement:
    free: tuple[int, ...]
    torsion: tuple[int, ...]
    orders: tuple[int, ...]

    def _make(self, free, torsion):
        return GroupElement(tuple(free), tuple(t % n for t, n in zip(torsion, self.orders)), self.orders)

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return self._make(
            (a + b for a, b in zip(self.free, other.free)),
            (a + b for a, b in zip(self.torsion, other.torsion)),
        )

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __neg__(self) -> "GroupElement":
        return self._make((-a for a in self.free), (-a for a in self.torsion))

    def __rmul__(self, k: int) -> "GroupElement":
        return self._make((k * a for a in self.free), (k * a for a in self.torsion))

    def is_torsion(self) -> bool:
        return not any(self.free)

    def is_zero(self) -> bool:
        return not any(self.free) and not any(self.torsion)

    def to_json(self) -> dict:
        return {"free": list(self.free), "torsion": list(self.torsion)}


def normalize(relations: Sequence[Sequence[int]], ngens: int | None = None):
    """Cokernel of a relation matrix (one relation per row).

    Returns ``(group, to_group)`` where ``to_group`` converts a coefficient
    vector in the original generators into a :class:`GroupElement`.
    """
    relations = [list(r) for r in relations]
    if ngens is None:
        if not relations:
            raise ValueError("ngens is required when there are no relations")
        ngens = len(relations[0])
    if not relations:
        group = FgAbelianGroup(ngens)
        return group, lambda x: group.element(free=x)
    for r in relations:
        if len(r) != ngens:
            raise DimensionMismatch("relation length differs from the number of generators")
    _, d, v = smith_normal_form(relations)
    diag = [d[i][i] if i < len(d) else 0 for i in range(ngens)]
    free_idx = [i for i, x in enumerate(diag) if x == 0]
    tor_idx = [i for i, x in enumerate(diag) if x > 1]
    group = FgAbelianGroup(len(free_idx), tuple(diag[i] for i in tor_idx))

    def to_group(x: Sequence[int]) -> GroupElement:
        y = [sum(x[k] * v[k][i] for k in range(ngens)) for i in range(ngens)]
        return group.element([y[i] for i in free_idx], [y[i] for i in tor_idx])

    return group, to_group


def d_pi(h: FgAbelianGroup, p: GroupElement) -> int:
    """Greatest integer dividing p modulo torsion (0 if p is torsion)."""
    return gcd(*p.free) if p.free else 0


def _solve_mod(a: int, b: int, n: int) -> int | None:
    """Some y with a*y = b (mod n), or None."""
    g = gcd(a, n)
    if b % g:
        return None
    if n == g:
        return 0
    n1 = n // g
    return (b // g) * pow(a // g, -1, n1) % n1


def d_o_with_witness(h: FgAbelianGroup, p: GroupElement):
    """Return ``(d_o, m, y)`` with ``m*p == m*m*d_o*y``.

    d_o is the largest s such that m^2 s divides m p for some m >= 1. The
    free part forces m*s | d_pi, so s runs over divisors of d_pi in
    descending order and m over divisors of d_pi/s; the torsion condition
    on Z_n is gcd(m^2 s, n) | m t. For torsion p the value is 0 and the
    witness is ``(0, 1, 0)``.
    """
    dp = d_pi(h, p)
    if dp == 0:
        return 0, 1, h.zero()
    for s in reversed(divisors(dp)):
        for m in divisors(dp // s):
            mms = m * m * s
            ys = []
            for t, n in zip(p.torsion, h.torsion_orders):
                y = _solve_mod(mms, m * t, n)
                if y is None:
                    break
                ys.append(y)
            else:
                yfree = [f // (m * s) for f in p.free]
                return s, m, h.element(yfree, ys)
    raise AssertionError("s = 1, m = 1 always admits a witness")


def d_o(h: FgAbelianGroup, p: GroupElement) -> int:
    return d_o_with_witness(h, p)[0]


def s_dpi_contains(h: FgAbelianGroup, p: GroupElement, k: GroupElement) -> bool:
    """Whether ``p - d_pi * k`` is torsion."""
    return (p - d_pi(h, p) * k).is_torsion()


def s_dpi_point(h: FgAbelianGroup, p: GroupElement) -> GroupElement:
    """A canonical element of S_{d_pi}: free part p/d_pi, torsion part 0."""
    dp = d_pi(h, p)
    if dp == 0:
        return h.zero()
    return h.element([f // dp for f in p.free])


@dataclass(frozen=True)
class LinkingForm:
    """Symmetric Q/Z-valued form on the torsion generators."""

    orders: tuple[int, ...]
    gram: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        k = len(self.orders)
        gram = tuple(tuple(Fraction(x) % 1 for x in row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        if len(gram) != k or any(len(r) != k for r in gram):
            raise DimensionMismatch(f"linking form must be {k}x{k}")
        for i in range(k):
            for j in range(k):
                if gram[i][j] != gram[j][i]:
                    raise ValueError("linking form is not symmetric")
                if (self.orders[i] * gram[i][j]).denominator != 1:
                    raise ValueError(f"b(e_{i}, e_{j}) is not killed by the order of e_{i}")

    @classmethod
    def for_group(cls, h: FgAbelianGroup, gram) -> "LinkingForm":
        return cls(h.torsion_orders, tuple(tuple(Fraction(x) for x in r) for r in gram))

    @classmethod
    def zero(cls, h: FgAbelianGroup) -> "LinkingForm":
        k = h.torsion_rank
        return cls(h.torsion_orders, tuple((Fraction(0),) * k for _ in range(k)))

    def lift(self, x: GroupElement, y: GroupElement) -> Fraction:
        """A rational lift of b(x, y) built from the stored representatives."""
        total = Fraction(0)
        for i, xi in enumerate(x.torsion):
            if xi:
                row = self.gram[i]
                for j, yj in enumerate(y.torsion):
                    if yj:
                        total += xi * yj * row[j]
        return total

    def is_nondegenerate(self) -> bool:
        # every nonzero torsion element must pair nontrivially with a generator
        from itertools import product

        k = len(self.orders)
        for t in product(*(range(n) for n in self.orders)):
            if not any(t):
                continue
            if all(sum(t[i] * self.gram[i][j] for i in range(k)) % 1 == 0 for j in range(k)):
                return False
        return True


def linking_eval(b: LinkingForm, x: GroupElement, y: GroupElement) -> Fraction:
    """b(x, y) in [0, 1); free parts are ignored."""
    return b.lift(x, y) % 1


@dataclass(frozen=True)
class GroupAutomorphism:
    """Endomorphism of ``Z^b + Tor`` in block form.

    ``(f, t) -> (free_block f, mixing f + torsion_block t)``: free
    generators may map into torsion but not conversely.
    """

    group: FgAbelianGroup
    free_block: tuple[tuple[int, ...], ...]
    mixing: tuple[tuple[int, ...], ...]
    torsion_block: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        b, k = self.group.free_rank, self.group.torsion_rank
        fb = tuple(tuple(int(x) for x in r) for r in self.free_block)
        mx = tuple(tuple(int(x) for x in r) for r in self.mixing) if self.mixing else tuple((0,) * b for _ in range(k))
        tb = tuple(tuple(int(x) for x in r) for r in self.torsion_block)
        object.__setattr__(self, "free_block", fb)
        object.__setattr__(self, "mixing", mx)
        object.__setattr__(self, "torsion_block", tb)
        if len(fb) != b or any(len(r) != b for r in fb):
            raise DimensionMismatch(f"free block must be {b}x{b}")
        if len(mx) != k or any(len(r) != b for r in mx):
            raise DimensionMismatch(f"mixing block must be {k}x{b}")
        if len(tb) != k or any(len(r) != k for r in tb):
            raise DimensionMismatch(f"torsion block must be {k}x{k}")
        orders = self.group.torsion_orders
        for j, nj in enumerate(orders):
            for i, ni in enumerate(orders):
                if (nj * tb[i][j]) % ni:
                    raise NotAutomorphism(f"generator {j} of order {nj} cannot map to a component of order {ni}")

    @classmethod
    def identity(cls, h: FgAbelianGroup) -> "GroupAutomorphism":
        b, k = h.free_rank, h.torsion_rank
        return cls(
            h,
            tuple(tuple(int(i == j) for j in range(b)) for i in range(b)),
            tuple((0,) * b for _ in range(k)),
            tuple(tuple(int(i == j) for j in range(k)) for i in range(k)),
        )

    def __call__(self, x: GroupElement) -> GroupElement:
        free = [sum(a * f for a, f in zip(row, x.free)) for row in self.free_block]
        tor = [
            sum(m * f for m, f in zip(mrow, x.free)) + sum(t * s for t, s in zip(trow, x.torsion))
            for mrow, trow in zip(self.mixing, self.torsion_block)
        ]
        return self.group.element(free, tor)

    def compose(self, other: "GroupAutomorphism") -> "GroupAutomorphism":
        """``self o other``."""
        h = self.group
        b, k = h.free_rank, h.torsion_rank
        fb = [[sum(self.free_block[i][l] * other.free_block[l][j] for l in range(b)) for j in range(b)] for i in range(b)]
        mx = [
            [
                (sum(self.mixing[i][l] * other.free_block[l][j] for l in range(b))
                 + sum(self.torsion_block[i][l] * other.mixing[l][j] for l in range(k))) % h.torsion_orders[i]
                for j in range(b)
            ]
            for i in range(k)
        ]
        tb = [
            [sum(self.torsion_block[i][l] * other.torsion_block[l][j] for l in range(k)) % h.torsion_orders[i] for j in range(k)]
            for i in range(k)
        ]
        return GroupAutomorphism(h, tuple(map(tuple, fb)), tuple(map(tuple, mx)), tuple(map(tuple, tb)))

    def is_invertible(self) -> bool:
        if self.group.free_rank and abs(determinant(self.free_block)) != 1:
            return False
        k = self.group.torsion_rank
        if not k:
            return True
        # surjective on the finite torsion subgroup iff the columns of the
        # torsion block together with n_i e_i generate Z^k
        stacked = [list(self.torsion_block[i]) + [self.group.torsion_orders[i] * int(i == j) for j in range(k)] for i in range(k)]
        _, d, _ = smith_normal_form(stacked)
        return all(d[i][i] == 1 for i in range(k))


def pullback_check(f: GroupAutomorphism, b: LinkingForm, p: GroupElement) -> bool:
    """Whether ``f`` is an automorphism fixing ``p`` and preserving ``b``."""
    if not f.is_invertible():
        raise NotAutomorphism("map is not invertible on the group")
    if f(p) != p:
        return False
    h = f.group
    gens = [h.element(torsion=[int(i == j) for j in range(h.torsion_rank)]) for i in range(h.torsion_rank)]
    images = [f(g) for g in gens]
    for i, gi in enumerate(gens):
        for j, gj in enumerate(gens):
            if linking_eval(b, images[i], images[j]) != linking_eval(b, gi, gj):
                return False
    return True


def element_from_json(h: FgAbelianGroup, data) -> GroupElement:
    if isinstance(data, dict):
        return h.element(data.get("free", ()), data.get("torsion", ()))
    free = list(data[: h.free_rank])
    return h.element(free, list(data[h.free_rank:]))


def lcm_all(*xs: int) -> int:
    out = 1
    for x in xs:
        out = lcm(out, x)
    return out
