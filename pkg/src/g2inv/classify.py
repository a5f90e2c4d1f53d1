"""Action of diffeomorphisms on H^4 data, Gauss refinements, the xi
invariant and deformation-class counts of G2-structures.

Modulus conventions: a modulus of 0 means the value is an exact rational;
``gcd(x, 0) = x`` and ``lcm(x, 0) = 0``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .abgroup import (
    FgAbelianGroup,
    GroupAutomorphism,
    GroupElement,
    LinkingForm,
    d_o,
    d_pi,
    pullback_check,
    s_dpi_contains,
    s_dpi_point,
)
from .charnum import NU_MODULUS, SemiCharData
from .errors import (
    BasePointMismatch,
    InconsistentData,
    MissingParameter,
    NotInSdpi,
    NotStructurePreserving,
    NotTwoConnectedWarning,
)

AUTO = "auto"


def reduce_mod(x, modulus):
    """``x mod modulus`` for rationals; modulus 0 leaves x unchanged."""
    x = Fraction(x)
    if modulus == 0:
        return x
    return x % Fraction(modulus)


def as_number(x: Fraction):
    return int(x) if x.denominator == 1 else x


def numerator_of(x: Fraction) -> int:
    """Num(a/b): the numerator of the reduced fraction."""
    return Fraction(x).numerator


def tilde_dpi(dp: int) -> int:
    return lcm(4, dp)


def tilde_dpi_gcd(dp: int) -> int:
    """The gcd-based variant, reported for comparison only."""
    return gcd(dp, 4)


def tdf(dp: int) -> int:
    return tilde_dpi(dp) // 4


@dataclass(frozen=True)
class SpinManifold7Data:
    h4: FgAbelianGroup
    p_m: GroupElement
    b_m: LinkingForm
    semichar: SemiCharData = SemiCharData()
    r: int | str = AUTO
    two_connected: bool = False

    def __post_init__(self):
        if self.b_m.orders != self.h4.torsion_orders:
            raise InconsistentData("linking form does not match the torsion of H^4")
        if self.p_m.orders != self.h4.torsion_orders or len(self.p_m.free) != self.h4.free_rank:
            raise InconsistentData("p_M is not an element of H^4")
        if not is_even(self.h4, self.p_m):
            raise InconsistentData("p_M must lie in 2 H^4(M)")
        if self.r != AUTO and self.r not in (0, 1, 2):
            raise InconsistentData(f"r must be 0, 1, 2 or 'auto', got {self.r!r}")

    @property
    def d_pi(self) -> int:
        return d_pi(self.h4, self.p_m)

    @property
    def d_o(self) -> int:
        return d_o(self.h4, self.p_m)

    @property
    def tdf(self) -> int:
        return tdf(self.d_pi)

    def resolved_r(self) -> int:
        if self.r != AUTO:
            return int(self.r)
        if self.h4.has_two_torsion():
            raise MissingParameter("r must be supplied when H^4 has 2-torsion")
        return 1


def is_even(h: FgAbelianGroup, p: GroupElement) -> bool:
    """Whether p = 2y for some y in h."""
    if any(f % 2 for f in p.free):
        return False
    return all(n % 2 or t % 2 == 0 for t, n in zip(p.torsion, h.torsion_orders))


def _lift_pair(b: LinkingForm, x: Sequence[int], y: Sequence[int]) -> Fraction:
    """Rational lift of b on raw (unreduced) torsion coordinates."""
    total = Fraction(0)
    for i, xi in enumerate(x):
        if xi:
            for j, yj in enumerate(y):
                if yj:
                    total += xi * yj * b.gram[i][j]
    return total


def _p_formula(dp: int, b: LinkingForm, u: Sequence[int], t: Sequence[int]) -> Fraction:
    """``d^2 b(t, t) - 2 d b(u, t)`` with u = p - d k, on raw coordinates."""
    return dp * dp * _lift_pair(b, t, t) - 2 * dp * _lift_pair(b, u, t)


def _shifted(coords: Sequence[int], orders: Sequence[int]) -> list[int]:
    # a different integer lift of the same residues
    return [c + (i + 1) * n for i, (c, n) in enumerate(zip(coords, orders))]


# --------------------------------------------------------------------------
# P(F) and counting


@dataclass(frozen=True)
class PValue:
    value: Fraction
    modulus: int

    def to_json(self):
        return {"value": str(as_number(self.value)), "modulus": self.modulus}


def p_of_f(m: SpinManifold7Data, f: GroupAutomorphism, k: GroupElement | None = None) -> PValue:
    """The residue P(F) mod 2 d_pi that p^2 of a diffeomorphism inducing F must have.

    Evaluated at two points of S_{d_pi} and with two integer lifts of
    every linking value; all four must agree.
    """
    if f.group != m.h4:
        raise InconsistentData("automorphism acts on a different group")
    if not pullback_check(f, m.b_m, m.p_m):
        raise NotStructurePreserving("F does not preserve p_M and b_M")
    dp = m.d_pi
    if dp == 0:
        return PValue(Fraction(0), 0)
    h = m.h4
    if k is None:
        k = s_dpi_point(h, m.p_m)
    elif not s_dpi_contains(h, m.p_m, k):
        raise NotInSdpi("k is not in S_{d_pi}")
    modulus = 2 * dp
    candidates = [k]
    if h.torsion_rank:
        candidates.append(k + h.element(torsion=[1] * h.torsion_rank))
    values = set()
    for kk in candidates:
        t = f(kk) - kk
        u = m.p_m - dp * kk
        for lift in (False, True):
            tc, uc = list(t.torsion), list(u.torsion)
            if lift:
                tc, uc = _shifted(tc, h.torsion_orders), _shifted(uc, h.torsion_orders)
            values.add(reduce_mod(_p_formula(dp, m.b_m, uc, tc), modulus))
    if len(values) != 1:
        raise InconsistentData(f"P(F) depends on choices: {sorted(values)}")
    return PValue(values.pop(), modulus)


@dataclass(frozen=True)
class ClassCount:
    value: int | None
    exact: bool
    d_pi: int
    d_o: int
    r: int | None

    @property
    def infinite(self) -> bool:
        return self.value is None

    def __str__(self) -> str:
        if self.infinite:
            return "infinite"
        return f"{self.value} ({'exact' if self.exact else 'lower bound'})"


def class_count(m: SpinManifold7Data) -> ClassCount:
    """Number of deformation classes of G2-structures: 24 Num(2^r d_o / 224).

    Exact when M is 2-connected, a lower bound otherwise; infinite when
    p_M is torsion.
    """
    dp, do = m.d_pi, m.d_o
    if dp == 0:
        return ClassCount(None, m.two_connected, dp, do, None)
    r = m.resolved_r()
    value = 24 * numerator_of(Fraction(2**r * do, 224))
    return ClassCount(value, m.two_connected, dp, do, r)


def p2_constraint(m: SpinManifold7Data, p2f: int) -> bool:
    """Whether p^2(f) = p2f is allowed for a diffeomorphism of M."""
    do = m.d_o
    if do == 0:
        return p2f % 224 == 0
    return p2f % lcm(224, 2 ** m.resolved_r() * do) == 0


def distinguishable_classes(m: SpinManifold7Data) -> ClassCount:
    """``lcm(24, Num(2^(r-1) 3 d_o / 14))``, the number of classes (nu, xi) separates."""
    dp, do = m.d_pi, m.d_o
    if dp == 0:
        return ClassCount(None, m.two_connected, dp, do, None)
    r = m.resolved_r()
    value = lcm(24, numerator_of(Fraction(2**r * 3 * do, 2 * 14)))
    return ClassCount(value, m.two_connected, dp, do, r)


# --------------------------------------------------------------------------
# Gauss refinements


@dataclass(frozen=True)
class XiCoboundaryData:
    """chi, sigma of a Spin(7) coboundary W, a base point k0 in S_{d_pi} and
    psq0 = (p_W - d_pi n0)^2 for a lift n0 of k0."""

    chi: int
    sigma: int
    k0: GroupElement
    psq0: Fraction

    def __post_init__(self):
        object.__setattr__(self, "psq0", Fraction(self.psq0))


@dataclass(frozen=True)
class GaussRefinement:
    manifold: SpinManifold7Data = field(repr=False)
    base_point: GroupElement
    base_value: Fraction

    @property
    def modulus(self) -> int:
        return self.manifold.tdf

    @property
    def difference_modulus(self) -> Fraction:
        """Modulus d_pi/4 to which values away from the base point are determined."""
        return Fraction(self.manifold.d_pi, 4)

    def difference(self, k: GroupElement) -> Fraction:
        """Rational lift of g(k) - g(k0) from the difference law."""
        m = self.manifold
        if not s_dpi_contains(m.h4, m.p_m, k):
            raise NotInSdpi("point is not in S_{d_pi}")
        dp = m.d_pi
        t = k - self.base_point
        u = m.p_m - dp * self.base_point
        return _p_formula(dp, m.b_m, list(u.torsion), list(t.torsion)) / 8

    def __call__(self, k: GroupElement) -> Fraction:
        if k == self.base_point:
            return self.base_value
        return reduce_mod(self.base_value + self.difference(k), self.difference_modulus)


def gauss_from_coboundary(m: SpinManifold7Data, w: XiCoboundaryData) -> GaussRefinement:
    """``g_W(k0) = (psq0 - sigma(W)) / 8`` mod tdf."""
    if not s_dpi_contains(m.h4, m.p_m, w.k0):
        raise NotInSdpi("base point is not in S_{d_pi}")
    return GaussRefinement(m, w.k0, reduce_mod(Fraction(w.psq0 - w.sigma, 8), m.tdf))


def gauss_action(g: GaussRefinement, p2f: int) -> GaussRefinement:
    """Shift by p^2(f)/8, the difference between g and its pullback under f."""
    return replace(g, base_value=reduce_mod(g.base_value + Fraction(p2f, 8), g.modulus))


def mu_from_gauss(g: GaussRefinement) -> Fraction:
    """Generalised Eells-Kuiper value at the base point, mod gcd(28, tdf)."""
    return reduce_mod(g.base_value, gcd(28, g.modulus))


# --------------------------------------------------------------------------
# xi


@dataclass(frozen=True)
class XiInvariant:
    manifold: SpinManifold7Data = field(repr=False)
    nu: int
    base_point: GroupElement
    base_value: Fraction

    @property
    def modulus(self) -> int:
        return 3 * tilde_dpi(self.manifold.d_pi)

    @property
    def difference_modulus(self) -> Fraction:
        return 3 * Fraction(self.manifold.d_pi)

    def __call__(self, k: GroupElement) -> Fraction:
        if k == self.base_point:
            return self.base_value
        g = GaussRefinement(self.manifold, self.base_point, Fraction(0))
        return reduce_mod(self.base_value + 12 * g.difference(k), self.difference_modulus)

    def mu(self) -> Fraction:
        """``(xi - 7 nu) / 12`` mod gcd(28, tdf)."""
        return reduce_mod((self.base_value - 7 * self.nu) / 12, gcd(28, self.manifold.tdf))

    def signed_value(self) -> Fraction:
        """Base value in (-modulus/2, modulus/2] (exact when the modulus is 0)."""
        v, mod = self.base_value, self.modulus
        if mod and 2 * v > mod:
            v -= mod
        return v


def xi_from_coboundary(m: SpinManifold7Data, w: XiCoboundaryData) -> XiInvariant:
    """``xi = 7 (chi - 3 sigma) + 12 g_W`` at the base point, mod 3 d~_pi."""
    g = gauss_from_coboundary(m, w)
    nubar = w.chi - 3 * w.sigma
    raw = 7 * nubar + 12 * Fraction(w.psq0 - w.sigma, 8)
    closed = 7 * w.chi + (3 * w.psq0 - 45 * w.sigma) / 2
    if raw != closed:
        raise AssertionError("xi expressions disagree")
    modulus = 3 * tilde_dpi(m.d_pi)
    value = reduce_mod(raw, modulus)
    if reduce_mod(value, 12 * g.modulus) != reduce_mod(7 * nubar + 12 * g.base_value, 12 * g.modulus):
        raise AssertionError("xi does not match the Gauss refinement")
    return XiInvariant(m, nubar % NU_MODULUS, w.k0, value)


def xi_diff_check(xi1: XiInvariant, xi2: XiInvariant, d: int) -> bool:
    """``xi2 - xi1 == 14 D(phi1, phi2)`` mod 3 d~_pi."""
    if xi1.base_point != xi2.base_point:
        raise BasePointMismatch("xi values are based at different points")
    return reduce_mod(xi2.base_value - xi1.base_value - 14 * d, xi1.modulus) == 0


def xi_action(xi: XiInvariant, p2f: int) -> XiInvariant:
    """xi of f*phi: shifted by 3 p^2(f) / 2."""
    return replace(xi, base_value=reduce_mod(xi.base_value + Fraction(3 * p2f, 2), xi.modulus))


# --------------------------------------------------------------------------
# Classification


@dataclass(frozen=True)
class StructureInvariants:
    """nu, xi and an opaque per-torsion-generator q-token for one structure."""

    nu: int
    xi: XiInvariant
    q_token: tuple[str, ...] = ()


def _transport_token(f: GroupAutomorphism, token0: Sequence[str]) -> tuple[str, ...] | None:
    """Token of M_0 pulled back along F; None unless F permutes torsion generators."""
    h = f.group
    k = h.torsion_rank
    if len(token0) != k:
        return None
    out = []
    for i in range(k):
        img = f(h.element(torsion=[int(j == i) for j in range(k)]))
        if img.free and any(img.free):
            return None
        nz = [j for j, x in enumerate(img.torsion) if x]
        if len(nz) != 1 or img.torsion[nz[0]] != 1:
            return None
        out.append(token0[nz[0]])
    return tuple(out)


def classify_pair(
    m0: SpinManifold7Data,
    inv0: StructureInvariants,
    m1: SpinManifold7Data,
    inv1: StructureInvariants,
    f: GroupAutomorphism,
) -> bool:
    """Whether F : H^4(M1) -> H^4(M0) is induced by a diffeomorphism carrying
    the first structure to one homotopic to the second."""
    if not (m0.two_connected and m1.two_connected):
        warnings.warn("the classification criterion is only valid for 2-connected manifolds", NotTwoConnectedWarning, stacklevel=2)
    if m0.h4 != m1.h4 or f.group != m0.h4:
        return False
    if not f.is_invertible():
        return False
    if inv0.nu % NU_MODULUS != inv1.nu % NU_MODULUS:
        return False
    if f(m1.p_m) != m0.p_m:
        return False
    h = m0.h4
    gens = [h.element(torsion=[int(j == i) for j in range(h.torsion_rank)]) for i in range(h.torsion_rank)]
    for x in gens:
        for y in gens:
            if m0.b_m.lift(f(x), f(y)) % 1 != m1.b_m.lift(x, y) % 1:
                return False
    if inv0.q_token or inv1.q_token:
        if _transport_token(f, inv0.q_token) != tuple(inv1.q_token):
            return False
    k1 = inv1.xi.base_point
    target = f(k1)
    # away from the base point xi is only determined mod 3 d_pi
    mod = inv1.xi.modulus if target == inv0.xi.base_point else inv1.xi.difference_modulus
    return reduce_mod(inv0.xi(target) - inv1.xi.base_value, mod) == 0
