import pytest

from smallcovers.cli import main
from smallcovers.simplicial import SimplicialComplex, format_cplx, parse_cplx

from conftest import RP2_6


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    report = dict(line.split("=", 1) for line in out.splitlines() if "=" in line)
    return code, report, err


def test_gen_and_verify_torus(tmp_path, capsys):
    d = tmp_path / "torus"
    code, r, _ = run(capsys, "gen", "surface", "--m", "4", "--beta", "10,01,10,01", "--out", str(d))
    assert code == 0 and r["f"] == "12,36,24"
    code, r, _ = run(capsys, "verify", str(d / "complex.cplx"), "--action", str(d / "action.txt"),
                     "--zones", str(d / "zones.txt"), "--projection", str(d / "projection.txt"),
                     "--polytope", "polygon:4")
    assert code == 0
    assert (r["equivariant"], r["closed_surface"], r["chi"], r["projection"]) == ("true", "true", "0", "true")


def test_gen_rpn(tmp_path, capsys):
    code, r, _ = run(capsys, "gen", "rpn", "--n", "3", "--out", str(tmp_path / "rp3"))
    assert code == 0 and r["f"].startswith("12,") and r["b2"] == "1,1,1,1"


def test_gen_threefold_and_verify(tmp_path, capsys):
    d = tmp_path / "n1"
    code, r, _ = run(capsys, "gen", "threefold", "--target", "n1", "--out", str(d))
    assert code == 0 and r["f"] == "17,106,178,89"
    code, r, _ = run(capsys, "verify", str(d / "complex.cplx"), "--zones", str(d / "zones.txt"))
    assert code == 0
    assert (r["equilibrium"], r["f"], r["orientable"]) == ("true", "17,106,178,89", "true")


def test_output_is_byte_identical(tmp_path, capsys):
    for k in "ab":
        assert main(["gen", "threefold", "--target", "n3", "--out", str(tmp_path / k)]) == 0
    capsys.readouterr()
    for name in ("complex.cplx", "zones.txt", "fillings.txt", "report.txt"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    assert parse_cplx((tmp_path / "a" / "complex.cplx").read_text()).f_vector() == (18, 114, 192, 96)


def test_report_rp2(tmp_path, capsys):
    p = tmp_path / "rp2.cplx"
    p.write_text(format_cplx(SimplicialComplex([tuple(map(str, t)) for t in RP2_6])))
    code, r, _ = run(capsys, "report", str(p))
    assert code == 0
    assert (r["f"], r["chi"], r["b2"], r["orientable"], r["h1"]) == ("6,15,10", "1", "1,1,1", "false", "Z/2")


def test_parse_errors_exit_2(tmp_path, capsys):
    empty = tmp_path / "empty.cplx"
    empty.write_text("")
    assert run(capsys, "report", str(empty))[0] == 2
    dup = tmp_path / "dup.cplx"
    dup.write_text("dim 1 vertices 3\na b\nb c\na b\n")
    code, _, err = run(capsys, "verify", str(dup))
    assert code == 2 and "line 4" in err
    assert run(capsys, "report", str(tmp_path / "missing.cplx"))[0] == 2


def test_bad_parameters_exit_2(tmp_path, capsys):
    assert run(capsys, "gen", "surface", "--m", "4", "--beta", "10,10,01,11", "--out", str(tmp_path))[0] == 2
    assert run(capsys, "gen", "rpn", "--n", "0", "--out", str(tmp_path))[0] == 2
    with pytest.raises(SystemExit) as e:
        main(["gen", "threefold", "--target", "n9", "--out", str(tmp_path)])
    assert e.value.code == 2


def test_search_exhausted_exit_3(tmp_path, capsys):
    code, _, err = run(capsys, "gen", "threefold", "--target", "n2", "--budget", "1", "--out", str(tmp_path))
    assert code == 3 and "exhausted" in err


def test_failed_check_exit_1(tmp_path, capsys):
    p = tmp_path / "path.cplx"
    p.write_text("dim 1 vertices 3\na b\nb c\n")
    act = tmp_path / "act.txt"
    act.write_text("g1: a->b b->a\n")
    code, r, _ = run(capsys, "verify", str(p), "--action", str(act), "--checks", "manifold,equivariance")
    assert code == 1 and r["manifold"] == "false" and r["equivariant"] == "false" and r["verified"] == "false"


def test_census(capsys):
    code, r, _ = run(capsys, "census", "--polytope", "polygon:5")
    assert code == 0 and r["independent"] == "true" and r["chi"] == "-1" and r["f0"] == r["f0_formula"]
    code, r, _ = run(capsys, "census", "--polytope", "prism", "--list")
    assert code == 0 and int(r["betas"]) == sum(k.startswith("beta0") for k in r)
