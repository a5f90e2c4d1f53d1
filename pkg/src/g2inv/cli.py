"""Command-line front end.

Every command reads a JSON manifest (``--manifest``), validates it against
the bundled schema and prints a report. Exit codes: 0 success, 1 domain
error, 2 schema or input error.

Usage:
  g2inv catalog
  g2inv nu --manifest m.json --format json
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from . import __version__
from .abgroup import (
    FgAbelianGroup,
    GroupAutomorphism,
    LinkingForm,
    d_o_with_witness,
    element_from_json,
    normalize,
    s_dpi_point,
)
from .catalog import run_catalog
from .charnum import (
    ClosedSpin8Data,
    CoboundaryData,
    SemiCharData,
    check_spin7_closed,
    d_from_mapping_torus,
    e_plus_minus,
    nu,
    nu_shift,
    nubar,
    parity_check,
    sign_chi_semichar,
    signed_residue,
)
from .classify import (
    AUTO,
    SpinManifold7Data,
    XiCoboundaryData,
    class_count,
    distinguishable_classes,
    gauss_from_coboundary,
    mu_from_gauss,
    p2_constraint,
    p_of_f,
    tilde_dpi,
    tilde_dpi_gcd,
    xi_action,
    xi_diff_check,
    xi_from_coboundary,
)
from .errors import G2InvError, MissingParameter, NotRealizable
from .exactalg import as_fraction

REPORT_VERSION = "1"
SCHEMA_VERSION = "1"


class SchemaError(Exception):
    """Manifest could not be parsed or does not match the schema."""


def rat(x) -> str:
    return str(Fraction(x))


def _schema() -> dict:
    text = (resources.files("g2inv") / "data" / "manifest.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def _path(err: jsonschema.ValidationError) -> str:
    out = "manifest"
    for p in err.absolute_path:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


def validate_manifest(data: Any) -> dict:
    if isinstance(data, dict) and "report_version" in data and "input" in data:
        data = data["input"]
    validator = jsonschema.Draft202012Validator(_schema())
    errors = sorted(validator.iter_errors(data), key=lambda e: (list(map(str, e.absolute_path)), e.message))
    if errors:
        raise SchemaError("\n".join(f"{_path(e)}: {e.message}" for e in errors))
    return data


def load_manifest(path: Path | None) -> dict:
    if path is None:
        return {"schema_version": SCHEMA_VERSION}
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read manifest {path}: {exc.strerror}") from exc
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return validate_manifest(data)


def _require(manifest: dict, key: str) -> Any:
    if key not in manifest:
        raise SchemaError(f"manifest: '{key}' is required for this command")
    return manifest[key]


# --------------------------------------------------------------------------
# Building domain objects


def build_manifold(manifest: dict) -> SpinManifold7Data:
    section = _require(manifest, "manifold")
    g = section["h4"]
    p_raw = section["p"]
    if "relations" in g:
        h, to_group = normalize(g["relations"], g.get("generators"))
        p = to_group(p_raw) if isinstance(p_raw, list) else element_from_json(h, p_raw)
    else:
        h = FgAbelianGroup(g.get("free_rank", 0), tuple(g.get("torsion", ())))
        p = element_from_json(h, p_raw)
    if "linking_form" in section:
        b = LinkingForm.for_group(h, [[as_fraction(x) for x in row] for row in section["linking_form"]])
    else:
        b = LinkingForm.zero(h)
    betti = SemiCharData(tuple(section.get("betti", ())))
    return SpinManifold7Data(h, p, b, betti, section.get("r", AUTO), section.get("two_connected", False))


def _coboundary(c: dict) -> CoboundaryData:
    n_plus = c.get("n_plus", 0)
    return CoboundaryData(c["chi"], c["sigma"], n_plus, n_plus == 0)


def _automorphism(h: FgAbelianGroup, a: dict) -> GroupAutomorphism:
    return GroupAutomorphism(h, a["free_block"], a.get("mixing", ()), a["torsion_block"])


def _element_json(x) -> dict:
    return {"free": list(x.free), "torsion": list(x.torsion)}


# --------------------------------------------------------------------------
# Commands


def cmd_nu(manifest: dict) -> dict:
    cobs = _require(manifest, "coboundaries")
    semichar = None
    if "manifold" in manifest and "betti" in manifest["manifold"]:
        semichar = SemiCharData(tuple(manifest["manifold"]["betti"]))
    rows = []
    for i, c in enumerate(cobs):
        w = _coboundary(c)
        row = {
            "name": c.get("name", f"W{i}"),
            "nubar": nubar(w),
            "nu": nu(w),
            "nu_signed": signed_residue(nu(w)),
            "nubar_reversed": nubar(w.reversed()),
        }
        if semichar is not None:
            row["parity_ok"] = parity_check(nu(w), semichar)
        if "boundary_betti" in c:
            row["sign_chi_ok"] = sign_chi_semichar(w, SemiCharData(tuple(c["boundary_betti"])))
        rows.append(row)
    diffs = []
    for i, d in enumerate(manifest.get("differences", ())):
        if i + 1 >= len(rows):
            raise MissingParameter("each difference needs a following coboundary")
        diffs.append({"pair": [i, i + 1], "D": d, "consistent": nu_shift(rows[i]["nu"], d) == rows[i + 1]["nu"]})
    return {"structures": rows, "differences": diffs}


def _manifold_summary(m: SpinManifold7Data) -> dict:
    do, mult, y = d_o_with_witness(m.h4, m.p_m)
    return {
        "h4": str(m.h4),
        "p": _element_json(m.p_m),
        "d_pi": m.d_pi,
        "d_o": do,
        "d_o_witness": {"m": mult, "y": _element_json(y)},
        "d_tilde": tilde_dpi(m.d_pi),
        "d_tilde_gcd_variant": tilde_dpi_gcd(m.d_pi),
        "tdf": m.tdf,
    }


def cmd_xi(manifest: dict) -> dict:
    m = build_manifold(manifest)
    cobs = _require(manifest, "coboundaries")
    rows, xis = [], []
    for i, c in enumerate(cobs):
        if "psq" not in c:
            raise MissingParameter(f"coboundary {i} needs psq for the xi invariant")
        k0 = element_from_json(m.h4, c["k0"]) if "k0" in c else s_dpi_point(m.h4, m.p_m)
        w = XiCoboundaryData(c["chi"], c["sigma"], k0, as_fraction(c["psq"]))
        xi = xi_from_coboundary(m, w)
        g = gauss_from_coboundary(m, w)
        xis.append(xi)
        rows.append(
            {
                "name": c.get("name", f"W{i}"),
                "base_point": _element_json(k0),
                "nu": xi.nu,
                "xi": rat(xi.base_value),
                "xi_signed": rat(xi.signed_value()),
                "xi_modulus": xi.modulus,
                "gauss_value": rat(g.base_value),
                "gauss_modulus": g.modulus,
                "mu": rat(mu_from_gauss(g)),
                "mu_from_nu_xi": rat(xi.mu()),
            }
        )
    diffs = []
    for i, d in enumerate(manifest.get("differences", ())):
        if i + 1 >= len(xis):
            raise MissingParameter("each difference needs a following coboundary")
        diffs.append(
            {
                "pair": [i, i + 1],
                "D": d,
                "xi_consistent": xi_diff_check(xis[i], xis[i + 1], d),
                "nu_consistent": nu_shift(xis[i].nu, d) == xis[i + 1].nu,
            }
        )
    actions = []
    if xis:
        for p2f in manifest.get("p2f", ()):
            shifted = xi_action(xis[0], p2f)
            actions.append({"p2f": p2f, "xi": rat(shifted.base_value), "fixed": shifted.base_value == xis[0].base_value})
    return {"manifold": _manifold_summary(m), "structures": rows, "differences": diffs, "actions": actions}


def cmd_count(manifest: dict) -> dict:
    m = build_manifold(manifest)
    cc = class_count(m)
    dc = distinguishable_classes(m)
    out = {
        "manifold": _manifold_summary(m),
        "r": cc.r,
        "count": "infinite" if cc.infinite else cc.value,
        "exact": cc.exact,
        "distinguishable": "infinite" if dc.infinite else dc.value,
    }
    p2 = []
    for p2f in manifest.get("p2f", ()):
        row = {"p2f": p2f, "allowed": p2_constraint(m, p2f)}
        try:
            row["D"] = d_from_mapping_torus(p2f)
        except NotRealizable:
            row["D"] = None
        p2.append(row)
    out["p2f"] = p2
    autos = []
    for i, a in enumerate(manifest.get("automorphisms", ())):
        pv = p_of_f(m, _automorphism(m.h4, a))
        autos.append({"name": a.get("name", f"F{i}"), "P": rat(pv.value), "modulus": pv.modulus})
    out["automorphisms"] = autos
    return out


def _tcs_data(manifest: dict):
    from .lattices import load_preset
    from .wall import TcsLatticeData

    section = manifest.get("tcs", {})
    lattice = section.get("lattice", "k3_lattice")
    if isinstance(lattice, str):
        gram = load_preset(lattice)["gram"]
        name = lattice
    else:
        gram = [[as_fraction(x) for x in row] for row in lattice]
        name = "custom"
    conv = lambda vs: [[as_fraction(x) for x in v] for v in vs]
    return name, TcsLatticeData.build(gram, conv(section.get("n_plus", [])), conv(section.get("n_minus", [])))


def cmd_wall_tcs(manifest: dict) -> dict:
    from .wall import tcs_k_decomposition, tcs_nu

    name, d = _tcs_data(manifest)
    k = tcs_k_decomposition(d)
    sigma = k.sigma_k0 + k.sigma_k_plus_minus
    report = tcs_nu(d)
    return {
        "lattice": name,
        "lattice_rank": d.rank,
        "lattice_signature": report.sigma_l,
        "dim_n_plus": d.n_plus.dim,
        "dim_n_minus": d.n_minus.dim,
        "ambient_dim": 8 * d.rank,
        "dim_k": k.dim_k,
        "dim_k0": k.dim_k0,
        "dim_k_plus": k.dim_k_plus,
        "dim_k_minus": k.dim_k_minus,
        "k_decomposition_consistent": k.consistent,
        "sigma_k": report.sigma_w,
        "sigma_k0_plus_k_pm": sigma,
        "chi_w": report.chi_w,
        "nubar_w": report.nubar_w,
        "nu_su3": report.nu_su3,
        "nu_su2": report.nu_su2,
        "nu": report.nu,
        "nu_reversed_bookkeeping": report.nu_reversed,
    }


def cmd_charnum(manifest: dict) -> dict:
    rows = []
    for i, c in enumerate(_require(manifest, "closed")):
        args = {k: c[k] for k in ("p1_sq", "p2", "sigma", "a_hat") if k in c}
        x = ClosedSpin8Data.solve(c["euler"], **args)
        e_p, e_m = e_plus_minus(x)
        rows.append(
            {
                "name": c.get("name", f"X{i}"),
                "euler": x.euler,
                "p1_sq": x.p1_sq,
                "p2": x.p2,
                "sigma": x.sigma,
                "a_hat": x.a_hat,
                "e_plus": e_p,
                "e_minus": e_m,
                "spin7_identity": check_spin7_closed(x),
            }
        )
    return {"closed": rows}


def cmd_catalog(manifest: dict) -> dict:
    rows = run_catalog()
    return {"entries": rows, "all_pass": all(r["status"] == "PASS" for r in rows)}


def cmd_positivity(manifest: dict) -> dict:
    from .forms import ExteriorForm, is_positive_3form, spin7_certificate

    section = _require(manifest, "form")
    terms = section["terms"]
    if isinstance(terms, str):
        form = ExteriorForm.parse(section["dim"], terms)
    else:
        coeffs = {tuple(int(ch) for ch in idx): as_fraction(c) for idx, c in terms}
        degree = len(terms[0][0]) if terms else 0
        form = ExteriorForm.from_dict(section["dim"], degree, coeffs)
    out = {"form": str(form), "dim": form.dim, "degree": form.degree}
    if form.dim == 8 and form.degree == 4:
        cert = spin7_certificate(form)
        out.update(square=rat(cert.square), contractions_definite=cert.contractions_definite, matches_model=cert.matches_model)
        return out
    cert = is_positive_3form(form)
    out.update(
        is_positive=cert.is_positive,
        is_definite=cert.is_definite,
        signature=[cert.signature.n_plus, cert.signature.n_minus, cert.signature.n_zero],
        gram=[[rat(x) for x in row] for row in cert.gram],
    )
    return out


COMMANDS = {
    "nu": (cmd_nu, "nu = chi - 3 sigma - 2 n_+ mod 48 for each coboundary"),
    "xi": (cmd_xi, "xi = 7 (chi - 3 sigma) + 12 g_W mod 3 lcm(4, d_pi); g_W = ((p_W - d_pi n)^2 - sigma) / 8"),
    "count": (cmd_count, "24 Num(2^r d_o / 224) deformation classes; P(F) = d^2 b(t,t) - 2 d b(p - d k, t) mod 2d"),
    "wall-tcs": (cmd_wall_tcs, "sigma(W) = signature of q([a],[a']) = -(a, b') on (A n (B+C)) / (A n B + A n C)"),
    "charnum": (cmd_charnum, "e_(+/-) = (p1^2 - 4 p2 +/- 8 e) / 16; 48 A-hat + chi - 3 sigma = 0"),
    "catalog": (cmd_catalog, "built-in worked examples"),
    "positivity": (cmd_positivity, "B(u, v) vol = (iota_u phi) ^ (iota_v phi) ^ phi definite"),
}


def build_report(command: str, manifest: dict) -> dict:
    func, formula = COMMANDS[command]
    return {
        "report_version": REPORT_VERSION,
        "command": command,
        "formula": formula,
        "input": manifest,
        "results": func(manifest),
    }


def _text_lines(value: Any, prefix: str = "") -> list[str]:
    if isinstance(value, dict):
        lines = []
        for k in sorted(value):
            lines += _text_lines(value[k], f"{prefix}.{k}" if prefix else str(k))
        return lines
    if isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        lines = []
        for i, v in enumerate(value):
            lines += _text_lines(v, f"{prefix}[{i}]")
        return lines
    return [f"{prefix}: {json.dumps(value, sort_keys=True)}"]


def render(report: dict, fmt: str, verbose: bool) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)
    lines = [f"g2inv {report['command']} (report v{report['report_version']})", f"formula: {report['formula']}"]
    if verbose:
        lines += ["input:"] + ["  " + ln for ln in _text_lines(report["input"])]
    lines += _text_lines(report["results"])
    return "\n".join(lines)


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--manifest", type=Path, default=None, help="JSON manifest (or a previous JSON report)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--verbose", action="store_true", help="echo the input in text reports")
    ap = argparse.ArgumentParser(prog="g2inv", description="Exact invariants of G2-structures")
    ap.add_argument("--version", action="version", version=f"g2inv {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, (_, formula) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=formula)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        manifest = load_manifest(args.manifest)
        report = build_report(args.command, manifest)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    except (G2InvError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    print(render(report, args.format, args.verbose))
    if args.command == "catalog" and not report["results"]["all_pass"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
