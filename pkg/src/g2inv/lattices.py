"""Integral lattices used as inputs: E8, the hyperbolic plane U and the
K3 lattice E8(-1)^2 + U^3, plus the bundled preset files."""

from __future__ import annotations

import hashlib
import json
import os
from importlib import resources
from pathlib import Path

from .exactalg import block_diag

PRESET_ENV = "G2INV_PRESET_DIR"

# Dynkin diagram of E8: a chain 1-2-3-4-5-6-7 with node 8 attached to node 5
_E8_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)]


def e8_cartan() -> list[list[int]]:
    g = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
    for i, j in _E8_EDGES:
        g[i][j] = g[j][i] = -1
    return g


def hyperbolic_plane() -> list[list[int]]:
    return [[0, 1], [1, 0]]


def scaled(form, c: int) -> list[list[int]]:
    return [[c * x for x in row] for row in form]


def k3_form() -> list[list[int]]:
    """E8(-1) + E8(-1) + U + U + U, signature (3, 19)."""
    e8m = scaled(e8_cartan(), -1)
    u = hyperbolic_plane()
    return block_diag(e8m, e8m, u, u, u)


def preset_path(name: str) -> Path:
    override = os.environ.get(PRESET_ENV)
    if override:
        return Path(override) / f"{name}.json"
    return Path(str(resources.files("g2inv") / "data" / f"{name}.json"))


def load_preset(name: str) -> dict:
    """Load a lattice preset; the file holds ``{"name", "description", "gram"}``."""
    with open(preset_path(name), encoding="utf-8") as fh:
        data = json.load(fh)
    gram = data["gram"]
    n = len(gram)
    if any(len(r) != n for r in gram):
        raise ValueError(f"preset {name} does not hold a square Gram matrix")
    return data


def file_sha256(path: Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def write_preset(path: Path, name: str, description: str, gram) -> None:
    payload = {"name": name, "description": description, "gram": [list(r) for r in gram]}
    text = json.dumps(payload, separators=(", ", ": "))
    Path(path).write_text(text + "\n", encoding="utf-8")
