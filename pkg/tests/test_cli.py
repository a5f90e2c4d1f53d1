import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from g2inv.cli import load_manifest, main, SchemaError

ROOT = Path(__file__).resolve().parent.parent
MANIFESTS = ROOT / "manifests"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    return json.loads(out)


def test_count_z24(capsys):
    r = report(capsys, "count", "--manifest", str(MANIFESTS / "count_z24.json"))
    assert r["report_version"] == "1" and r["command"] == "count"
    res = r["results"]
    assert res["count"] == 72 and res["exact"] is True
    assert res["manifold"]["d_pi"] == 24 and res["manifold"]["d_o"] == 24
    assert res["manifold"]["d_tilde"] == 24 and res["manifold"]["d_tilde_gcd_variant"] == 4
    assert [x["allowed"] for x in res["p2f"]] == [True, False, True]


def test_torsion_manifest(capsys):
    res = report(capsys, "count", "--manifest", str(MANIFESTS / "z_plus_z4.json"))["results"]
    assert (res["manifold"]["d_pi"], res["manifold"]["d_o"], res["count"]) == (8, 4, 24)
    assert {a["P"] for a in res["automorphisms"]} == {"0"}
    assert res["manifold"]["d_o_witness"] == {"m": 2, "y": {"free": [1], "torsion": [0]}}


def test_nu_and_xi(capsys):
    path = str(MANIFESTS / "sphere_structures.json")
    nu = report(capsys, "nu", "--manifest", path)["results"]
    assert [s["nu"] for s in nu["structures"]] == [47, 1]
    assert nu["differences"][0]["consistent"]
    xi = report(capsys, "xi", "--manifest", path)["results"]
    assert [s["xi"] for s in xi["structures"]] == ["-7", "7"]
    assert [s["mu"] for s in xi["structures"]] == ["0", "0"]
    assert xi["differences"][0]["xi_consistent"]


def test_charnum_and_positivity(capsys):
    rows = report(capsys, "charnum", "--manifest", str(MANIFESTS / "closed8.json"))["results"]["closed"]
    assert [(r["e_plus"], r["e_minus"]) for r in rows] == [(1, -1), (0, -576), (0, -3)]
    pos = report(capsys, "positivity", "--manifest", str(MANIFESTS / "phi0.json"))["results"]
    assert pos["is_positive"] and pos["signature"] == [7, 0, 0]


def test_wall_tcs(capsys):
    res = report(capsys, "wall-tcs", "--manifest", str(MANIFESTS / "tcs_k3.json"))["results"]
    assert res["sigma_k"] == -16 and res["nu"] == 24 and res["k_decomposition_consistent"]


def test_catalog(capsys):
    res = report(capsys, "catalog")["results"]
    assert res["all_pass"]


def test_text_output(capsys):
    code, out, _ = run(capsys, "count", "--manifest", str(MANIFESTS / "count_z24.json"), "--verbose")
    assert code == 0
    assert "count: 72" in out and "input:" in out


def test_schema_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"schema_version": "1", "manifold": {"h4": {"free_rank": "x"}, "p": {}}}))
    code, _, err = run(capsys, "count", "--manifest", str(bad))
    assert code == 2 and "manifest.manifold.h4.free_rank" in err
    broken = tmp_path / "broken.json"
    broken.write_text('{"schema_version": "1",\n  oops}')
    code, _, err = run(capsys, "nu", "--manifest", str(broken))
    assert code == 2 and "line 2" in err
    code, _, err = run(capsys, "nu", "--manifest", str(tmp_path / "missing.json"))
    assert code == 2


def test_missing_section_is_schema_error(capsys, tmp_path):
    m = tmp_path / "m.json"
    m.write_text(json.dumps({"schema_version": "1"}))
    code, _, err = run(capsys, "nu", "--manifest", str(m))
    assert code == 2 and "coboundaries" in err


def test_domain_error_exit_code(tmp_path, capsys):
    m = tmp_path / "m.json"
    m.write_text(json.dumps({"schema_version": "1", "closed": [{"euler": 2, "sigma": 1, "a_hat": 0}]}))
    code, _, err = run(capsys, "charnum", "--manifest", str(m))
    assert code == 1 and "InconsistentData" in err
    m.write_text(json.dumps({"schema_version": "1", "manifold": {"h4": {"free_rank": 1, "torsion": [2]}, "p": {"free": [4], "torsion": [0]}}}))
    code, _, err = run(capsys, "count", "--manifest", str(m))
    assert code == 1 and "MissingParameter" in err


def test_round_trip(tmp_path, capsys):
    for name in ("count_z24.json", "z_plus_z4.json", "sphere_structures.json"):
        cmd = "xi" if name.startswith("sphere") else "count"
        code, first, _ = run(capsys, cmd, "--manifest", str(MANIFESTS / name), "--format", "json")
        saved = tmp_path / "report.json"
        saved.write_text(first)
        code, second, _ = run(capsys, cmd, "--manifest", str(saved), "--format", "json")
        assert code == 0 and first == second


def test_load_manifest_accepts_report():
    data = load_manifest(MANIFESTS / "count_z24.json")
    assert data["manifold"]["p"] == {"free": [24]}
    with pytest.raises(SchemaError):
        from g2inv.cli import validate_manifest

        validate_manifest({"schema_version": "2"})


def _subprocess(args, pure):
    env = dict(os.environ)
    env.pop("G2INV_PURE_PYTHON", None)
    if pure:
        env["G2INV_PURE_PYTHON"] = "1"
    return subprocess.run([sys.executable, "-m", "g2inv", *args], capture_output=True, env=env, cwd=ROOT, check=False)


def test_byte_determinism_across_runs_and_backends():
    args = ["count", "--manifest", str(MANIFESTS / "z_plus_z4.json"), "--format", "json"]
    outs = [_subprocess(args, pure).stdout for pure in (False, False, True)]
    assert outs[0] == outs[1] == outs[2]
    assert outs[0]


def test_determinism_across_threads():
    from concurrent.futures import ThreadPoolExecutor

    from g2inv.cli import build_report, render

    manifest = load_manifest(MANIFESTS / "z_plus_z4.json")
    serial = render(build_report("count", manifest), "json", False)
    with ThreadPoolExecutor(max_workers=4) as pool:
        outs = list(pool.map(lambda _: render(build_report("count", manifest), "json", False), range(8)))
    assert all(o == serial for o in outs)
