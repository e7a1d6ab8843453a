import numpy as np
import pytest

from fischeralg import constructions as cons
from fischeralg import fischer as fs
from fischeralg import tralgebra as ta
from fischeralg.io import (FormatError, dumps_fsp, evaluate_word, load_manifest, loads_fsp,
                           parse_generators, read_fsp, write_fsp)
from fischeralg.permgrp import Permutation


def test_fsp_roundtrip(tmp_path, su4):
    path = tmp_path / "su4.fsp"
    write_fsp(su4, path)
    back = read_fsp(path)
    assert np.array_equal(back.third, su4.third)
    assert back.labels == su4.labels
    assert back.provenance == su4.provenance
    assert dumps_fsp(back) == dumps_fsp(su4)


def test_fsp_rejects_tampering(su4):
    text = dumps_fsp(su4)
    with pytest.raises(FormatError):
        loads_fsp(text.replace("fsp 1", "fsp 9", 1))
    with pytest.raises(FormatError):
        loads_fsp(text.rsplit("end", 1)[0])


SYM5 = """# symmetric group of degree 5
degree 5
label: Sym5
gen: (1,2)
gen: 2 3 4 5 1   # a 5-cycle as images
seed: g1
"""


def test_parse_generators():
    gs = parse_generators(SYM5)
    assert gs.degree == 5 and gs.label == "Sym5"
    assert gs.gens[1] == Permutation.from_cycles(5, [[1, 2, 3, 4, 5]])
    assert gs.seed == gs.gens[0]
    alt = parse_generators(SYM5, seed="g2^-1*g1*g2")
    assert alt.seed == Permutation.from_cycles(5, [[2, 3]])


@pytest.mark.parametrize("text", [
    "gen: (1,2)\n",
    "degree 3\nseed: (1,2)\n",
    "degree 3\ngen: 1 2\nseed: g1\n",
    "degree 3\ngen: (1,2,3)\nseed: g1\n",
    "degree 3\ngen: (1,2)\nseed: g4\n",
    "degree 3\nfoo: 1\n",
])
def test_bad_generator_files(text):
    with pytest.raises(FormatError):
        parse_generators(text)


def test_word_evaluation():
    a = Permutation.from_cycles(4, [[1, 2, 3, 4]])
    assert evaluate_word("g1^4", [a]) == Permutation.identity(4)
    assert evaluate_word("g1 * g1^-1", [a]) == Permutation.identity(4)


def _gen_file(S, points, seed_point):
    lines = [f"degree {S.n}"]
    for d in points:
        lines.append("gen: " + " ".join(str(x + 1) for x in S.conjugation(d)))
    lines.append("seed: " + " ".join(str(x + 1) for x in S.conjugation(seed_point)))
    return "\n".join(lines) + "\n"


@pytest.mark.parametrize("build", [lambda: cons.build_su(4), lambda: cons.build_orth3(5, "-", "+"),
                                   lambda: cons.build_sp_or_o_f2("orthogonal", 3, -1)])
def test_ingest_reproduces_invariants(tmp_path, build):
    S = build()
    comp = fs.connected_components(S)[0]
    gens = fs.generating_points(S, comp)
    path = tmp_path / "g.txt"
    path.write_text(_gen_file(S, gens, gens[0]))
    T = cons.build_ingest(path)
    assert T.n == S.n
    assert fs.srg_params(T) == fs.srg_params(S)
    assert ta.report(T).row() == ta.report(S).row()
    assert len(fs.all_lines(T)) == len(fs.all_lines(S))


def test_manifest_entries_are_complete():
    entries = load_manifest()
    names = {e["name"] for e in entries}
    assert {"Fi22", "Fi23", "O8p2S3"} <= names
    for e in entries:
        # no download location is invented
        assert e["url"] is None and e["sha256"] is None
        assert set(e["expected"]) == {"n", "dimObar", "dimAModIAff"}
