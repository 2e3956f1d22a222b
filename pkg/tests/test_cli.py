import json

import pytest

from hypbuild import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_chamber_area(capsys):
    code, rep = run(capsys, "chamber", "area", "--chamber", "3;2,3,8;1,1,1")
    assert code == 0
    assert rep["command"] == "chamber area"
    assert rep["results"][0]["area"] == "pi/24"


def test_chamber_validate_failure_exits_1(capsys):
    code, rep = run(capsys, "chamber", "validate", "--chamber", "3;3,3,3")
    assert code == 1
    assert rep["verdicts"] == [{"name": "valid", "pass": False}]
    assert rep["witnesses"][0]["codes"] == ["NonHyperbolic"]


def test_usage_error_exits_2(capsys):
    assert cli.main(["nonsense"]) == 2
    capsys.readouterr()
    assert cli.main(["chamber", "area"]) == 2  # missing --chamber
    capsys.readouterr()
    code = cli.main(["chamber", "area", "--chamber", "not-a-spec"])
    assert code == 2


def test_coxeter_ball_counts(capsys):
    code, rep = run(
        capsys, "coxeter", "ball", "--chamber", "3;2,3,8", "--radius", "3"
    )
    assert code == 0
    assert rep["results"][0]["chambers"] == 16


def test_genpoly_construct_and_verify_roundtrip(capsys, tmp_path):
    code, rep = run(
        capsys, "genpoly", "construct", "--kind", "projective", "--params", "2"
    )
    assert code == 0
    assert rep["results"][0]["params"] == [2, 2]

    from hypbuild import genpoly as gp

    poly = gp.construct("quadrangle", 2)
    f = tmp_path / "gq2.txt"
    f.write_text(gp.to_text(poly))
    code, rep = run(
        capsys, "genpoly", "verify", "--in", str(f), "--m", "4", "--thick"
    )
    assert code == 0
    assert rep["verdicts"] == [{"name": "polygon", "pass": True}]


def test_building_retract_passes(capsys):
    code, rep = run(
        capsys, "building", "retract", "--chamber", "5;2,2,2,2,2;2,2,2,2,2",
        "--radius", "3", "--samples", "25", "--seed", "3",
    )
    assert code == 0
    assert rep["verdicts"] == [{"name": "retraction", "pass": True}]


def test_metrics_dist_identity_is_zero(capsys):
    code, rep = run(
        capsys, "metrics", "dist", "--chamber", "3;2,3,8", "--radius", "3",
        "--c", "0", "--cp", "0",
    )
    assert code == 0
    assert rep["results"][0]["value"] == 0.0
    assert rep["results"][0]["dist"] == {}


def test_metrics_growth_report(capsys):
    code, rep = run(
        capsys, "metrics", "growth", "--chamber", "3;2,3,8", "--radius", "6",
        "--q", "2,3,5", "--n", "1", "--step", "0.5", "--tau", "1",
    )
    assert code == 0
    growth = rep["results"][0]["growth"]
    assert growth[0] == {"n": 0.0, "a": 1}
    assert rep["results"][1]["converged"] is False


def test_catalog_quads_pentagon_empty(capsys):
    code, rep = run(
        capsys, "catalog", "quads", "--chamber", "5;2,2,2,2,2;2,2,2,2,2"
    )
    assert code == 0
    assert rep["results"] == []


def test_catalog_claims_238(capsys):
    code, rep = run(capsys, "catalog", "claims", "--chamber", "3;2,3,8")
    assert code == 0
    assert rep["results"][0]["pass"] is True
    assert all(v["pass"] for v in rep["verdicts"])


def test_render_svg(capsys, tmp_path):
    out = tmp_path / "ball.svg"
    code, rep = run(
        capsys, "render", "--chamber", "3;2,3,8", "--radius", "2",
        "--out", str(out),
    )
    assert code == 0
    assert rep["results"][0]["faces"] == rep["results"][0]["chambers"]
    assert out.read_text().startswith("<?xml")


def test_reports_are_reproducible(capsys):
    def once():
        cli.main(
            ["genpoly", "chain", "--kind", "quadrangle", "--params", "2",
             "--seed", "7"]
        )
        return capsys.readouterr().out

    assert once() == once()


def test_timings_flag_fills_field(capsys):
    code, rep = run(
        capsys, "--timings", "chamber", "area", "--chamber", "3;2,4,8"
    )
    assert code == 0
    assert rep["timings"] is not None and "elapsed_s" in rep["timings"]
