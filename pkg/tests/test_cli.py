from __future__ import annotations

import pytest

from ascheme.cli import main
from ascheme.io import parse_eigenmatrix, read_scheme, read_witness


@pytest.fixture
def run(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)

    def _run(*argv):
        code = main(list(argv))
        out = capsys.readouterr()
        return code, out.out, out.err

    return _run


def test_build_eigen_classify_sylvester(run, tmp_path):
    code, out, _ = run("build", "sylvester", "-o", "s.txt")
    assert code == 0 and "d=4" in out
    code, out, _ = run("eigen", "s.txt")
    assert code == 0
    rows = {tuple(int(x) for x in r) for r in parse_eigenmatrix(out)["P"]}
    assert (1, 2, -1, -1, -1) in rows and len(rows) == 5
    code, out, _ = run("verify", "s.txt")
    assert code == 0 and "sha256/16" in out
    code, out, _ = run("amorphic", "s.txt")
    assert code == 1 and "1,3,4|2" in out


def test_build_is_deterministic(run, tmp_path):
    run("build", "decaen-vandam", "-o", "a.txt")
    run("build", "decaen-vandam", "-o", "b.txt")
    assert (tmp_path / "a.txt").read_bytes() == (tmp_path / "b.txt").read_bytes()


@pytest.mark.parametrize(
    "argv",
    [
        ("build", "hamming", "D=3", "q=9999", "-o", "x.txt"),
        ("build", "nonsense", "-o", "x.txt"),
        ("build", "cyclotomic", "q=abc", "e=2", "-o", "x.txt"),
        ("build", "hamming", "D=3", "-o", "x.txt"),
        ("verify", "missing.txt"),
    ],
)
def test_usage_errors(run, argv):
    code, _, err = run(*argv)
    assert code == 2 and err.startswith("error:")


def test_parse_error_exit_2(run, tmp_path):
    (tmp_path / "bad.txt").write_text("ASCHEME v=2 d=1\n0 1\n2 0\n")
    code, _, err = run("verify", "bad.txt")
    assert code == 2 and "bad.txt:3" in err


def test_verify_corrupted_scheme_exit_1(run, tmp_path):
    # a valid coloring that is not a scheme: distance coloring of the path P4
    (tmp_path / "p4.txt").write_text("ASCHEME v=4 d=3\n0 1 2 3\n1 0 1 2\n2 1 0 1\n3 2 1 0\n")
    code, out, _ = run("verify", "p4.txt")
    assert code == 1 and out.startswith("VIOLATION")


def test_fuse_and_bad_blocks(run):
    run("build", "decaen-vandam", "-o", "dv.txt")
    code, out, _ = run("fuse", "dv.txt", "--blocks", "1|2|3,4|5", "-o", "f4.txt")
    assert code == 0 and "valencies=[9, 9, 18, 27]" in out
    code, out, _ = run("classify", "f4.txt")
    assert "strictly-NLS: 2" in out
    code, _, _ = run("fuse", "dv.txt", "--blocks", "1,1|2")
    assert code == 2
    run("build", "sylvester", "-o", "s.txt")
    code, out, _ = run("fuse", "s.txt", "--blocks", "1,3|2|4")
    assert code == 1 and "VIOLATION" in out


def test_spread_chain_p64(run, tmp_path):
    run("build", "decaen-vandam", "-o", "dv.txt")
    run("fuse", "dv.txt", "--blocks", "1,2|3,4|5", "-o", "dv3.txt")
    code, out, _ = run("spread", "dv3.txt", "--relation", "1", "--find", "--size", "4", "-o", "sp.txt")
    assert code == 0 and out.splitlines()[-1] == "WITNESS"
    assert len(read_witness(tmp_path / "sp.txt")) == 16
    code, out, _ = run("spread", "dv3.txt", "--relation", "1", "--remove", "sp.txt", "-o", "p64.txt")
    assert code == 0 and "{15,12,1;1,4,15}" in out
    code, out, _ = run("eigen", "p64.txt")
    blocks = parse_eigenmatrix(out)
    assert [[int(x) for x in r] for r in blocks["P"]] == [[1, 15, 45, 3], [1, 3, -3, -1], [1, -1, -3, 3], [1, -5, 5, -1]]
    assert [int(x) for x in blocks["multiplicities"][0]] == [1, 30, 15, 18]
    code, out, _ = run("theorem-main", "p64.txt", "--relation", "2", "--parts", "p64.txt@2")
    assert code == 1 and "(ii) FAIL" in out


def test_budget_exhausted(run, monkeypatch):
    run("build", "decaen-vandam", "-o", "dv.txt")
    monkeypatch.setenv("ASCHEME_BUDGET", "5")
    code, out, _ = run("spread", "dv.txt", "--relation", "5", "--find", "--size", "4")
    assert code == 1 and out.splitlines()[-1] == "EXHAUSTED"


def test_bp_family_flow(run, tmp_path):
    run("build", "brouwer-pasechnik", "q=2", "-o", "bp.txt")
    code, out, _ = run("spread", "bp.txt", "--relation", "3", "--find", "-o", "s0.txt")
    assert code == 0
    assert read_witness(tmp_path / "s0.txt") == [list(range(8 * u, 8 * u + 8)) for u in range(8)]
    code, out, _ = run("clique", "bp.txt", "--relation", "3", "--size", "8", "--minus", "s0.txt", "-o", "c.txt")
    assert code == 0 and out.splitlines()[-1] == "WITNESS"
    code, out, _ = run("spread", "bp.txt", "--relation", "3", "--family", "2", "--clique", "c.txt", "-o", "fam")
    assert code == 0
    for d, ls in ((3, 1), (4, 2), (5, 3)):
        assert f"d={d}: " in out and f"strictly-LS relations: {ls}" in out.split(f"d={d}: ")[1].splitlines()[0]
        assert read_scheme(tmp_path / f"fam.d{d}").d == d


def test_common_fission_paley(run):
    run("build", "cyclotomic", "q=81", "e=4", "-o", "c4.txt")
    run("build", "cyclotomic", "q=81", "e=10", "-o", "c10.txt")
    run("fuse", "c4.txt", "--blocks", "1,3|2|4", "-o", "a.txt")
    run("fuse", "c10.txt", "--blocks", "1|2,4,6,8,10|3,5,7,9", "-o", "b.txt")
    code, out, _ = run("common-fission", "a.txt", "b.txt")
    assert code == 1 and "(n^2-1)/2" in out and "VIOLATION" in out
    run("build", "sylvester", "-o", "s.txt")
    code, _, _ = run("common-fission", "a.txt", "s.txt")
    assert code == 2


def test_theorem_main_bilinear(run, tmp_path):
    run("build", "bilinear", "q=2", "-o", "b3.txt")
    run("build", "bilinear", "q=2", "classes=4", "-o", "b4.txt")
    code, out, _ = run("classify", "b4.txt")
    assert "strictly-LS: 2" in out
    run("spread", "b4.txt", "--relation", "4", "--find", "-o", "alt.txt")
    code, out, _ = run("theorem-main", "b3.txt", "--relation", "3", "--parts", "alt.txt", "rest", "-o", "t.txt")
    assert code == 0 and read_scheme(tmp_path / "t.txt").d == 4


def test_quotient(run, tmp_path):
    run("build", "wreath", "n=4", "-o", "w.txt")
    code, out, _ = run("quotient", "w.txt", "--spread-relation", "3", "-o", "q.txt")
    assert code == 0 and "b=n=4" in out and "mu=0" in out
    assert read_scheme(tmp_path / "q.txt").v == 4
    code, _, _ = run("quotient", "w.txt", "--spread-relation", "1")
    assert code == 1
    run("build", "sylvester", "-o", "s.txt")
    code, out, _ = run("quotient", "s.txt", "--spread-relation", "3", "-o", "sq.txt")
    assert code == 0 and read_scheme(tmp_path / "sq.txt").v == 6


def test_other_builders(run, tmp_path):
    (tmp_path / "sq.txt").write_text("0 1 2\n1 2 0\n2 0 1\n")
    for argv, d in (
        (("latin-squares", "file=sq.txt"), 4),
        (("latin-squares", "n=4", "count=2"), 5),
        (("knn-matching", "n=4"), 3),
        (("lattice", "n=3"), 2),
        (("complete", "m=4"), 1),
        (("ag28",), 9),
        (("hamming", "D=2", "q=3"), 2),
    ):
        code, out, _ = run("build", *argv, "-o", "x.txt")
        assert code == 0, argv
        assert read_scheme(tmp_path / "x.txt").d == d, argv
