import pytest

from eppo.cli import main
from eppo.perm_engine import parse_group
from eppo.records import parse_records


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main(list(argv))
        out, err = capsys.readouterr()
        return code, out, err
    return _run


@pytest.fixture
def files(tmp_path):
    (tmp_path / "c6.grp").write_text("6\n(1 2 3 4 5 6)\n")
    (tmp_path / "s3.grp").write_text("3\n(1 2 3)\n(1 2)\n")
    (tmp_path / "trivial.grp").write_text("1\n")
    (tmp_path / "q8.mat").write_text("GF(3)\n0 2 1 0\n1 1 1 2\n")
    return tmp_path


def records(out):
    return parse_records(out)[0]


def test_check_a5(run):
    code, out, _ = run("check", "catalog:A5", "--format", "records")
    rec = records(out)
    assert code == 0 and rec["spectrum"] == "{1,2,3,5}" and rec["exhaustive_verdict"] == "eppo"
    assert rec["seed"] == "0"


def test_check_metacyclic_not_eppo(run):
    code, out, _ = run("check", "metacyclic", "p=5", "a=1", "q=2", "b=2", "r=4", "--format", "records")
    assert code == 1
    rec = records(out)
    assert rec["exhaustive_witness_order"] == "10" and rec["predicates_agree"] == "true"


def test_check_files(run, files):
    assert run("check", f"file:{files / 'c6.grp'}")[0] == 1
    code, out, _ = run("check", f"file:{files / 'q8.mat'}", "--format", "records")
    assert code == 0 and records(out)["order"] == "8"


def test_spectrum(run, files):
    code, out, _ = run("spectrum", "catalog:PSL3(4)", "--format", "records")
    assert code == 0 and records(out)["spectrum"] == "{1,2,3,4,5,7}"
    code, out, _ = run("spectrum", f"file:{files / 'trivial.grp'}", "--format", "records")
    assert records(out)["spectrum"] == "{1}"


def test_spectrum_sampled_sz32(run):
    code, out, _ = run("spectrum", "catalog:Sz32", "--sample-n", "20000", "--seed", "7",
                       "--format", "records")
    rec = records(out)
    assert code == 0 and rec["spectrum_mode"] == "sampled" and rec["seed"] == "7"
    assert set(rec["spectrum"].strip("{}").split(",")) <= {"1", "2", "4", "5", "25", "31", "41"}


def test_classify(run, files):
    assert "a5-recognized" in run("classify", "catalog:A5")[1]
    code, out, _ = run("classify", "catalog:PSL2(17)", "--format", "records")
    assert records(out)["verdict"] == "simple-eppo" and records(out)["identified_as"] == "PSL2(17)"
    code, out, _ = run("classify", f"file:{files / 's3.grp'}", "--format", "records")
    assert records(out)["chief_series"] == "[2; 3]"
    assert run("classify", "cyclic n=30")[0] == 1


def test_errors_exit_2(run, files):
    code, _, err = run("check", "bogus", "x=1")
    assert code == 2 and "parse" in err
    code, _, err = run("check", "file:/does/not/exist")
    assert code == 2
    code, _, err = run("spectrum", "catalog:Sz32", "--sample-n", "0")
    assert code == 2 and "threshold" in err
    code, _, err = run("check", "catalog:A5", "--threshold", "10", "--sample-n", "0")
    assert code == 2 and "threshold" in err
    assert run("check")[0] == 2
    assert run("check", "catalog:A5", "--threshold", "0")[0] == 2


def test_threshold_fallback_to_sampling(run):
    code, out, _ = run("check", "catalog:A5", "--threshold", "10", "--sample-n", "500",
                       "--format", "records")
    rec = records(out)
    assert code == 0 and rec["sampled_verdict"] == "sampled-consistent"


def test_records_are_reproducible(run):
    argv = ("check", "catalog:PSL2(8)", "--format", "records", "--seed", "3")
    assert run(*argv)[1] == run(*argv)[1]


def test_catalog_verbs(run):
    code, out, _ = run("catalog", "list", "--format", "records")
    assert code == 0 and len(parse_records(out)) == 9
    code, out, _ = run("catalog", "build", "A5")
    assert code == 0 and parse_group(out).order == 60
    assert run("catalog", "build")[0] == 2


def test_verify_corrupted_fixture(run, tmp_path):
    from importlib import resources

    text = resources.files("eppo.data").joinpath("catalog_fixture.txt").read_text()
    bad = tmp_path / "bad.txt"
    bad.write_text(text.replace("{1,2,3,4,7}", "{1,2,3,7}"))
    code, out, _ = run("verify", "--criteria", "1", "--skip-sampled", "--fixture", str(bad))
    assert code == 1 and "FAIL [1]" in out
