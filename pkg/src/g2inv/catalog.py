"""Built-in worked examples with their expected values.

Each entry recomputes its value from raw inputs through the library and
compares with the stored expectation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from .abgroup import FgAbelianGroup, LinkingForm
from .charnum import (
    ClosedSpin8Data,
    CoboundaryData,
    SemiCharData,
    check_spin7_closed,
    e_plus_minus,
    nu,
    nu_shift,
    signed_residue,
)
from .classify import SpinManifold7Data, XiCoboundaryData, xi_diff_check, xi_from_coboundary


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    formula: str
    inputs: dict
    expected: Any
    compute: Callable[[], Any]

    def run(self) -> dict:
        actual = self.compute()
        return {
            "name": self.name,
            "formula": self.formula,
            "inputs": self.inputs,
            "expected": self.expected,
            "actual": actual,
            "status": "PASS" if actual == self.expected else "FAIL",
        }


def sphere7() -> SpinManifold7Data:
    h = FgAbelianGroup(0)
    return SpinManifold7Data(h, h.zero(), LinkingForm.zero(h), SemiCharData((1, 0, 0, 0)), two_connected=True)


def _nu_entry(name: str, chi: int, sigma: int, expected: int) -> CatalogEntry:
    return CatalogEntry(
        name,
        "nu = chi(W) - 3 sigma(W) - 2 n_+(W) mod 48",
        {"chi": chi, "sigma": sigma, "n_plus": 0},
        expected,
        lambda: signed_residue(nu(CoboundaryData(chi, sigma))),
    )


def _xi(chi: int, sigma: int, psq: int):
    m = sphere7()
    return xi_from_coboundary(m, XiCoboundaryData(chi, sigma, m.h4.zero(), psq))


def _e_entry(name: str, expected: tuple[int, int], closed: bool, **data) -> list[CatalogEntry]:
    x = ClosedSpin8Data.solve(**data)
    return [
        CatalogEntry(
            f"e+/- of {name}",
            "e_(+/-) = (p1^2 - 4 p2 +/- 8 e) / 16",
            data,
            list(expected),
            lambda x=x: list(e_plus_minus(x)),
        ),
        CatalogEntry(
            f"48 A-hat + chi - 3 sigma = 0 for {name}",
            "48 A-hat + chi - 3 sigma = 0",
            data,
            closed,
            lambda x=x: check_spin7_closed(x),
        ),
    ]


def _tcs_entry() -> CatalogEntry:
    def compute():
        from .lattices import load_preset
        from .wall import TcsLatticeData, tcs_nu, tcs_sigma

        d = TcsLatticeData.build(load_preset("k3_lattice")["gram"])
        sigma = tcs_sigma(d)
        return {"sigma": sigma, "nu": tcs_nu(d, sigma).nu}

    return CatalogEntry(
        "twisted connected sum over the K3 lattice",
        "sigma(W) = sig(K, q); nu = chi - 3 sigma + nu(S^1 x N) + nu(T_r x K3) mod 48",
        {"lattice": "k3_lattice", "n_plus": [], "n_minus": []},
        {"sigma": -16, "nu": 24},
        compute,
    )


def entries(include_tcs: bool = True) -> list[CatalogEntry]:
    out = [
        _nu_entry("round structure, filling B^8", 1, 0, 1),
        _nu_entry("squashed structure, filling the spinor bundle of S^4", 2, 1, -1),
        _nu_entry("quotient by Z_4, filling the O(-4) disc bundle over CP^3", 4, -1, 7),
        CatalogEntry(
            "octonionic parallelism",
            "nu(phi') = nu(phi) + 2 D(phi, phi') mod 48",
            {"nu_round": 1, "D(octonionic, round)": 2},
            -3,
            lambda: signed_residue(nu_shift(1, -2)),
        ),
        CatalogEntry(
            "reflected round structure",
            "nu(phi') = nu(phi) + 2 D(phi, phi') mod 48",
            {"nu_round": 1, "D(reflected, round)": 1},
            -1,
            lambda: signed_residue(nu_shift(1, -1)),
        ),
        CatalogEntry(
            "xi of the round structure",
            "xi = 7 chi + (3 p_W^2 - 45 sigma) / 2",
            {"chi": 1, "sigma": 0, "p_W^2": 0},
            7,
            lambda: int(_xi(1, 0, 0).signed_value()),
        ),
        CatalogEntry(
            "xi of the squashed structure",
            "xi = 7 chi + (3 p_W^2 - 45 sigma) / 2",
            {"chi": 2, "sigma": 1, "p_W^2": 1},
            -7,
            lambda: int(_xi(2, 1, 1).signed_value()),
        ),
        CatalogEntry(
            "xi difference between reflected and round structures",
            "xi(phi') - xi(phi) = 14 D(phi, phi')",
            {"xi": [-7, 7], "D": 1},
            True,
            lambda: xi_diff_check(_xi(2, 1, 1), _xi(1, 0, 0), 1),
        ),
        CatalogEntry(
            "Eells-Kuiper value recovered from (nu, xi)",
            "mu = (xi - 7 nu) / 12 mod 28",
            {"structures": ["round", "squashed"]},
            [0, 0],
            lambda: [int(_xi(1, 0, 0).mu()), int(_xi(2, 1, 1).mu())],
        ),
    ]
    out += _e_entry("S^8", (1, -1), False, euler=2, p1_sq=0, p2=0)
    out += _e_entry("K3 x K3", (0, -576), True, euler=576, sigma=256, a_hat=4)
    out += _e_entry("HP^2", (0, -3), True, euler=3, sigma=1, a_hat=0)
    if include_tcs:
        out.append(_tcs_entry())
    return out


def run_catalog(include_tcs: bool = True) -> list[dict]:
    return [e.run() for e in entries(include_tcs)]
