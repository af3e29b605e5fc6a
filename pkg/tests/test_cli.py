import pytest

from ghkit import io
from ghkit.cli import main
from ghkit.correspondences import Correspondence, identity_correspondence
from ghkit.spaces import validate


@pytest.fixture
def gap_files(tmp_path):
    x = validate([[0, 1], [1, 0]], labels=["a", "b"])
    y = validate([[0, 3], [3, 0]], labels=["c", "d"])
    xp, yp = tmp_path / "x.msp", tmp_path / "y.msp"
    io.save_space(x, xp)
    io.save_space(y, yp)
    return x, y, xp, yp


def test_validate_ok(gap_files, capsys):
    _, _, xp, _ = gap_files
    assert main(["validate", str(xp)]) == 0
    assert "valid strict space" in capsys.readouterr().out


def test_validate_reports_violations(tmp_path, capsys):
    bad = tmp_path / "bad.msp"
    bad.write_text("points 3 strict\na b c\n0 1 3\n1 0 1\n3 1 0\n")
    assert main(["validate", str(bad)]) == 1
    assert "violation" in capsys.readouterr().out


def test_validate_missing_file(tmp_path):
    assert main(["validate", str(tmp_path / "none.msp")]) == 2


def test_gh_human_and_csv(gap_files, capsys):
    _, _, xp, yp = gap_files
    assert main(["gh", str(xp), str(yp)]) == 0
    out = capsys.readouterr().out
    assert "value 1" in out and "witness 0-0 1-1" in out
    assert main(["gh", str(xp), str(yp), "--csv"]) == 0
    row = capsys.readouterr().out.strip()
    value, lower, nodes = row.split(",")
    assert value == "1" and lower == "1" and nodes.isdigit()


def test_gh_oracle_flag(gap_files, capsys):
    _, _, xp, yp = gap_files
    assert main(["gh", str(xp), str(yp), "--enumerate-oracle"]) == 0
    assert "match true" in capsys.readouterr().err


def test_gh_cap_error(gap_files, tmp_path):
    _, _, xp, _ = gap_files
    big = validate(
        [[0 if i == j else abs(i - j) for j in range(9)] for i in range(9)]
    )
    bp = tmp_path / "big.msp"
    io.save_space(big, bp)
    assert main(["gh", str(xp), str(bp)]) == 2
    assert main(["gh", str(xp), str(bp), "--cap", "9"]) == 0


def test_glue_pair_stdout(gap_files, tmp_path, capsys):
    x, y, xp, yp = gap_files
    rel = Correspondence(x, y, frozenset({(0, 0), (1, 1)}))
    rp = tmp_path / "r.corr"
    io.save_correspondence(rel, rp)
    assert main(["glue", "--pair", str(xp), str(yp), str(rp)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("points 4 strict")
    assert "# 0.a 0 0" in out


def test_glue_pair_out_files(gap_files, tmp_path):
    x, y, xp, yp = gap_files
    rel = Correspondence(x, y, frozenset({(0, 0), (1, 1)}))
    rp = tmp_path / "r.corr"
    io.save_correspondence(rel, rp)
    out = tmp_path / "glued.msp"
    assert main(["glue", "--pair", str(xp), str(yp), str(rp), "--out", str(out)]) == 0
    glued = io.load_space(out)
    assert len(glued) == 4
    assert (tmp_path / "glued.prov").exists()


def test_glue_zero_distortion_is_input_error(gap_files, tmp_path):
    x, _, xp, _ = gap_files
    rel = identity_correspondence(x)
    rp = tmp_path / "id.corr"
    io.save_correspondence(rel, rp)
    assert main(["glue", "--pair", str(xp), str(xp), str(rp)]) == 2


def test_glue_tree(tmp_path, gap_files):
    x, y, xp, yp = gap_files
    rel = Correspondence(x, y, frozenset({(0, 0), (1, 1)}))
    io.save_correspondence(rel, tmp_path / "r.corr")
    tree = tmp_path / "t.tree"
    tree.write_text("vertex 0 x.msp\nvertex 1 y.msp\nedge 0 1 r.corr\n")
    assert main(["glue", "--tree", str(tree)]) == 0


def test_hedgehog_compile_and_iso(tmp_path, capsys):
    a = tmp_path / "a.hh"
    b = tmp_path / "b.hh"
    a.write_text("1 1\n2 1\n")
    b.write_text("2 1\n1 1\n")
    assert main(["hedgehog", "compile", str(a)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("points 3 strict")
    assert main(["hedgehog", "iso", str(a), str(b)]) == 0
    assert "isometric" in capsys.readouterr().out


def test_hedgehog_bucket(tmp_path, capsys):
    a = tmp_path / "a.hh"
    b = tmp_path / "b.hh"
    a.write_text("1/4 1\n1/2 1\n")
    b.write_text("1/8 1\n3/8 1\n")
    assert main(["hedgehog", "bucket", str(a), str(b), "--eps", "1/4"]) == 0
    assert "distortion" in capsys.readouterr().out
    c = tmp_path / "c.hh"
    c.write_text("1/8 1\n1/4 1\n")  # two needles in the first quarter bucket
    assert main(["hedgehog", "bucket", str(a), str(c), "--eps", "1/4"]) == 1


def test_tuzhilin_csv(capsys):
    assert main(["tuzhilin", "--n", "3", "--k", "4", "--m", "2", "--csv"]) == 0
    assert capsys.readouterr().out.strip() == "2,1/2,1/2,true"


def test_limit_command(tmp_path, capsys):
    x = validate([[0, 1], [1, 0]], labels=["a", "b"])
    io.save_space(x, tmp_path / "x.msp")
    io.save_correspondence(identity_correspondence(x), tmp_path / "i.corr")
    chain = tmp_path / "c.chain"
    chain.write_text("space x.msp\nlink i.corr\nspace x.msp\n")
    assert main(["limit", str(chain)]) == 0
    out = capsys.readouterr().out
    assert "threads 2" in out
    assert "certificate[1] 0" in out


def test_probe_csv(gap_files, capsys):
    _, _, xp, _ = gap_files
    assert main(["probe", str(xp), "--lambdas", "1,1/2,2", "--csv"]) == 0
    rows = capsys.readouterr().out.strip().splitlines()
    assert rows == ["1,0", "1/2,1/4", "2,1/2"]


def test_center_csv(gap_files, capsys):
    _, _, xp, _ = gap_files
    assert main(["center", str(xp), "--lambda", "1/2", "--n", "3", "--csv"]) == 0
    assert capsys.readouterr().out.strip() == "3,1/2,1/4,1/16"


def test_stab_on_space_and_hedgehog(gap_files, tmp_path, capsys):
    _, _, xp, _ = gap_files
    assert main(["stab", str(xp)]) == 0
    assert "accepted 1" in capsys.readouterr().out
    hh = tmp_path / "h.hh"
    hh.write_text("1 1\n2 1\n")
    assert main(["stab", str(hh), "--csv"]) == 0
    rows = capsys.readouterr().out.strip().splitlines()
    assert "1,true,true" in rows
    assert "2,false,false" in rows


def test_generate_deterministic(tmp_path):
    out1, out2 = tmp_path / "a.msp", tmp_path / "b.msp"
    assert main(["generate", "random-metric", "--n", "4", "--seed", "9", "--out", str(out1)]) == 0
    assert main(["generate", "random-metric", "--n", "4", "--seed", "9", "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    io.load_space(out1)  # generated files always validate


def test_generate_grid_hedgehog(tmp_path):
    out = tmp_path / "g.hh"
    assert main(
        ["generate", "grid-hedgehog", "--eps", "1/4", "--diam", "2", "--out", str(out)]
    ) == 0
    spec = io.load_hedgehog(out)
    assert len(spec.needles) == 8


def test_verify_single_check(capsys):
    assert main(["verify", "--suite", "bucket-construction"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("PASS bucket-construction")


def test_verify_unknown_check():
    assert main(["verify", "--suite", "no-such-check"]) == 2


def test_verify_list(capsys):
    assert main(["verify", "--list"]) == 0
    names = capsys.readouterr().out.split()
    assert "solver-oracle-equivalence" in names
    assert len(names) == 10
