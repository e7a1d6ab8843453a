import hashlib
import json

import pytest

from fischeralg.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_and_analyze(tmp_path, capsys):
    path = tmp_path / "su4.fsp"
    code, out, _ = run(capsys, "construct", "--family", "su", "--n", 4, "-o", path)
    assert code == 0 and "n=45" in out and path.exists()
    code, out, _ = run(capsys, "analyze", path, "--no-timing")
    d = json.loads(out)
    assert code == 0
    assert (d["n"], d["dimAModIAff"], d["dimObar"], d["isLie"]) == (45, 30, 14, True)


@pytest.mark.parametrize("argv,n", [
    (["--family", "orth3", "--dim", "7", "--witt", "+", "--refl", "+"], 351),
    (["--family", "rootsys", "--type", "E8"], 360),
    (["--family", "o2n", "--n", "3", "--witt", "-"], 36),
    (["--family", "sym", "--n", "6"], 15),
])
def test_construct_families(capsys, argv, n):
    code, out, _ = run(capsys, "construct", *argv)
    assert code == 0 and f"n={n} " in out


def test_analyze_sym5_is_abelian(capsys):
    code, out, _ = run(capsys, "analyze", "--family", "sym", "--n", 5, "--format", "tsv", "--no-timing")
    assert code == 0
    fields = dict(line.split("\t") for line in out.strip().splitlines())
    assert fields["isAbelianQuotient"] == "true"


def test_exit_codes(tmp_path, capsys):
    assert run(capsys, "construct", "--family", "sym")[0] == 2
    assert run(capsys, "analyze", tmp_path / "missing.fsp")[0] == 3
    assert run(capsys, "construct", "--family", "su", "--n", 9)[0] == 4
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2


def test_table_formats(capsys):
    code, out, _ = run(capsys, "table", "rootsys", "--format", "json", "--no-timing")
    rows = json.loads(out)
    assert code == 0 and [r["status"] for r in rows] == ["PASS", "PASS"]
    code, out, _ = run(capsys, "table", "chevalley", "--format", "tsv")
    assert code == 0 and out.startswith("group\texpected")


def test_sporadic_rows_skip_without_data(tmp_path, capsys):
    code, out, _ = run(capsys, "table", "sporadic", "--data-dir", tmp_path, "--format", "json")
    assert code == 0
    assert {r["status"] for r in json.loads(out)} == {"SKIPPED"}


def test_verify_counts_on_a_file(tmp_path, capsys):
    path = tmp_path / "su6.fsp"
    run(capsys, "construct", "--family", "su", "--n", 6, "-o", path)
    code, out, _ = run(capsys, "verify", "--suite", "counts", "--space", path)
    assert code == 0 and out.strip().endswith("8/8 passed")


def test_verify_counts_without_expected_values(tmp_path, capsys):
    path = tmp_path / "sym5.fsp"
    run(capsys, "construct", "--family", "sym", "--n", 5, "-o", path)
    assert run(capsys, "verify", "--suite", "counts", "--space", path)[0] == 1


def test_fetch(tmp_path, capsys):
    src = tmp_path / "src.gen"
    src.write_text("degree 3\ngen: (1,2)\nseed: g1\n")
    digest = hashlib.sha256(src.read_bytes()).hexdigest()
    data = tmp_path / "data"
    url = src.as_uri()
    assert run(capsys, "fetch", "toy", "--url", url, "--sha256", digest, "--data-dir", data)[0] == 0
    assert (data / "toy.gen").read_bytes() == src.read_bytes()
    # cached and verified: no download needed
    src.unlink()
    assert run(capsys, "fetch", "toy", "--url", url, "--sha256", digest, "--data-dir", data)[0] == 0
    bad = tmp_path / "bad.gen"
    bad.write_text("tampered\n")
    code, _, err = run(capsys, "fetch", "other", "--url", bad.as_uri(), "--sha256", digest, "--data-dir", data)
    assert code == 1 and "digest mismatch" in err
    assert not (data / "other.gen").exists()


def test_fetch_manifest_entry_without_url(tmp_path, capsys):
    assert run(capsys, "fetch", "Fi22", "--data-dir", tmp_path)[0] == 3
