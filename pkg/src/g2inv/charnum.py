"""Characteristic numbers of closed spin 8-manifolds and 8-dimensional
coboundaries: e_+/e_-, the nu-bar and nu invariants, the affine
difference D and the parity identities tying them to semi-characteristics.

Relations used throughout, for a closed spin 8-manifold X:

* ``45 sigma = 7 p2 - p1^2`` and ``5760 A-hat = 7 p1^2 - 4 p2``
* ``e_(+/-) = (p1^2 - 4 p2 +/- 8 e) / 16 = 24 A-hat + (+/- chi - 3 sigma) / 2``
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import InconsistentData, NotIntegral, NotRealizable, RokhlinViolation

NU_MODULUS = 48


def _as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise NotIntegral(f"{what} = {x} is not an integer")
    return int(x)


@dataclass(frozen=True)
class ClosedSpin8Data:
    """Characteristic numbers of a closed spin 8-manifold, fully resolved."""

    p1_sq: int
    p2: int
    euler: int
    sigma: int
    a_hat: int

    @classmethod
    def solve(cls, euler: int, p1_sq=None, p2=None, sigma=None, a_hat=None) -> "ClosedSpin8Data":
        """Fill in the missing numbers from any two of p1^2, p2, sigma, A-hat.

        Over-determined input is accepted if it satisfies both relations.
        """
        given = {k: v for k, v in (("p1_sq", p1_sq), ("p2", p2), ("sigma", sigma), ("a_hat", a_hat)) if v is not None}
        if len(given) < 2:
            raise InconsistentData("need at least two of p1_sq, p2, sigma, a_hat")
        g = {k: Fraction(v) for k, v in given.items()}
        if "p1_sq" in g and "p2" in g:
            q1, q2 = g["p1_sq"], g["p2"]
        elif "sigma" in g and "a_hat" in g:
            q2 = 128 * g["a_hat"] + 7 * g["sigma"]
            q1 = 896 * g["a_hat"] + 4 * g["sigma"]
        elif "p1_sq" in g and "sigma" in g:
            q1 = g["p1_sq"]
            q2 = (45 * g["sigma"] + q1) / 7
        elif "p1_sq" in g:
            q1 = g["p1_sq"]
            q2 = (7 * q1 - 5760 * g["a_hat"]) / 4
        elif "sigma" in g:
            q2 = g["p2"]
            q1 = 7 * q2 - 45 * g["sigma"]
        else:
            q2 = g["p2"]
            q1 = (5760 * g["a_hat"] + 4 * q2) / 7
        resolved = {
            "p1_sq": q1,
            "p2": q2,
            "sigma": (7 * q2 - q1) / 45,
            "a_hat": (7 * q1 - 4 * q2) / 5760,
        }
        for k, v in given.items():
            if resolved[k] != v:
                raise InconsistentData(f"{k} = {v} contradicts the other data (expected {resolved[k]})")
        ints = {k: _as_int(v, k) for k, v in resolved.items()}
        if (ints["sigma"] - euler) % 2:
            raise InconsistentData("signature and Euler characteristic must have the same parity")
        return cls(euler=int(euler), **ints)

    @property
    def chi(self) -> int:
        return self.euler


@dataclass(frozen=True)
class CoboundaryData:
    """Euler characteristic, signature and n_+ of an 8-dimensional filling."""

    chi: int
    sigma: int
    n_plus: int = 0
    is_spin7: bool = True

    def __post_init__(self):
        if self.is_spin7 and self.n_plus != 0:
            raise InconsistentData("a Spin(7) coboundary has n_plus = 0")

    def reversed(self) -> "CoboundaryData":
        """Data of (-W, -phi): (chi, sigma, n_+) -> (chi, -sigma, chi - n_+)."""
        n_plus = self.chi - self.n_plus
        return replace(self, sigma=-self.sigma, n_plus=n_plus, is_spin7=self.is_spin7 and n_plus == 0)


@dataclass(frozen=True)
class SemiCharData:
    """Betti numbers b_0..b_3 (rational) of a 7-manifold, optionally mod-2
    Betti numbers b_0, b_1 of a 3-manifold."""

    betti_q: tuple[int, ...] = ()
    betti_2: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "betti_q", tuple(int(b) for b in self.betti_q))
        object.__setattr__(self, "betti_2", tuple(int(b) for b in self.betti_2))
        if any(b < 0 for b in self.betti_q + self.betti_2):
            raise ValueError("Betti numbers are nonnegative")

    @property
    def chi_q(self) -> int:
        return sum(self.betti_q) % 2

    @property
    def chi_2(self) -> int:
        return sum(self.betti_2) % 2


def e_plus_minus(x: ClosedSpin8Data) -> tuple[int, int]:
    """``(e_+, e_-)`` computed from Pontryagin numbers, checked against the
    A-hat/signature expression."""
    base = x.p1_sq - 4 * x.p2
    plus = Fraction(base + 8 * x.euler, 16)
    minus = Fraction(base - 8 * x.euler, 16)
    e_p, e_m = _as_int(plus, "e_+"), _as_int(minus, "e_-")
    alt_p = 24 * x.a_hat + Fraction(x.euler - 3 * x.sigma, 2)
    alt_m = 24 * x.a_hat + Fraction(-x.euler - 3 * x.sigma, 2)
    if (alt_p, alt_m) != (e_p, e_m):
        raise InconsistentData("the two expressions for e_+/- disagree")
    return e_p, e_m


def check_spin7_closed(x: ClosedSpin8Data) -> bool:
    """``48 A-hat + chi - 3 sigma == 0``, necessary for a Spin(7)-structure."""
    return 48 * x.a_hat + x.euler - 3 * x.sigma == 0


def nubar(w: CoboundaryData) -> int:
    return -2 * w.n_plus + w.chi - 3 * w.sigma


def nu(w: CoboundaryData) -> int:
    return nubar(w) % NU_MODULUS


def signed_residue(r: int, modulus: int = NU_MODULUS) -> int:
    """Representative of r mod ``modulus`` in (-modulus/2, modulus/2]."""
    r %= modulus
    return r - modulus if 2 * r > modulus else r


def parity_check(nu_value: int, m: SemiCharData) -> bool:
    return nu_value % 2 == m.chi_q


def sign_chi_semichar(w: CoboundaryData, boundary: SemiCharData) -> bool:
    """``sigma(W) + chi(W) == chi_Q(boundary) mod 2``."""
    return (w.sigma + w.chi) % 2 == boundary.chi_q


def d_from_bordism(n_plus: int, e_plus_closed: int) -> int:
    """``D = n_+(W) - e_+(closed-up W)``."""
    return n_plus - e_plus_closed


def nu_shift(nu_value: int, d: int) -> int:
    """nu of the second structure given nu of the first and their difference D."""
    return (nu_value + 2 * d) % NU_MODULUS


def d_from_mapping_torus(p2f: int) -> int:
    """``D(phi, f*phi) = 3 p^2(f) / 28``; p^2 of a mapping torus lies in 224 Z."""
    if p2f % 224:
        raise NotRealizable(f"p^2 = {p2f} is not a multiple of 224")
    return 3 * p2f // 28


def connected_sum_e_plus(e1: int, e2: int) -> int:
    return e1 + e2 - 1


def dim4_e_pm(chi: int, sigma: int) -> tuple[int, int]:
    """``e_(+/-) = 3 sigma / 4 +/- chi / 2`` for a closed spin 4-manifold."""
    if sigma % 16:
        raise RokhlinViolation(f"signature {sigma} of a spin 4-manifold must be divisible by 16")
    plus = Fraction(3 * sigma, 4) + Fraction(chi, 2)
    minus = Fraction(3 * sigma, 4) - Fraction(chi, 2)
    return _as_int(plus, "e_+"), _as_int(minus, "e_-")
