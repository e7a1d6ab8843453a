"""File formats: serialized spaces (``.fsp``), generator files and the data manifest.

fsp layout (UTF-8, newline-terminated lines)::

    fsp 1
    n <n>
    provenance <compact JSON>
    labels
    <one label per line>
    adjacency
    <n hex rows>
    third
    <i> <j> <k>      one line per collinear pair i < j
    end
"""
from __future__ import annotations

import json
import re
from importlib import resources
from pathlib import Path

import numpy as np

from .fischer import FischerSpace
from .gf2 import BitMatrix
from .permgrp import GeneratorSet, Permutation, compose, order


class FormatError(ValueError):
    pass


def dumps_fsp(S: FischerSpace) -> str:
    out = ["fsp 1", f"n {S.n}", "provenance " + json.dumps(S.provenance, sort_keys=True, separators=(",", ":"))]
    out.append("labels")
    for lab in S.labels:
        if "\n" in lab:
            raise FormatError("labels may not contain newlines")
        out.append(lab)
    out.append("adjacency")
    out.extend(S.adjacency.to_hex_rows())
    out.append("third")
    iu, ju = np.nonzero(np.triu(S.third >= 0, 1))
    ks = S.third[iu, ju]
    out.extend(f"{i} {j} {k}" for i, j, k in zip(iu.tolist(), ju.tolist(), ks.tolist()))
    out.append("end")
    return "\n".join(out) + "\n"


def loads_fsp(text: str) -> FischerSpace:
    lines = text.split("\n")
    pos = 0

    def take(prefix=None):
        nonlocal pos
        if pos >= len(lines):
            raise FormatError("unexpected end of file")
        line = lines[pos]
        pos += 1
        if prefix is not None:
            if not line.startswith(prefix):
                raise FormatError(f"line {pos}: expected {prefix!r}")
            return line[len(prefix):]
        return line

    if take() != "fsp 1":
        raise FormatError("not an fsp version 1 file")
    try:
        n = int(take("n "))
        provenance = json.loads(take("provenance "))
    except ValueError as exc:
        raise FormatError(f"bad header: {exc}") from None
    take("labels")
    labels = [take() for _ in range(n)]
    take("adjacency")
    adj = BitMatrix.from_hex_rows([take() for _ in range(n)], n)
    take("third")
    third = np.full((n, n), -1, dtype=np.int32)
    while True:
        line = take()
        if line == "end":
            break
        try:
            i, j, k = map(int, line.split())
        except ValueError:
            raise FormatError(f"line {pos}: expected a triple 'i j k'") from None
        third[i, j] = third[j, i] = k
    S = FischerSpace(third, labels, provenance)
    if S.adjacency != adj:
        raise FormatError("adjacency rows disagree with the third-point table")
    return S


def write_fsp(S: FischerSpace, path) -> None:
    Path(path).write_text(dumps_fsp(S), encoding="utf-8")


def read_fsp(path) -> FischerSpace:
    return loads_fsp(Path(path).read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# generator files
# ---------------------------------------------------------------------------

_CYCLE = re.compile(r"\(([^()]*)\)")
_FACTOR = re.compile(r"^g(\d+)(?:\^(-?\d+))?$")


def _parse_perm(text: str, degree: int, where: str) -> Permutation:
    text = text.strip()
    if text.startswith("(") or text == "()":
        squeezed = re.sub(r"\s+", "", text)
        if _CYCLE.sub("", squeezed):
            raise FormatError(f"{where}: malformed cycle notation")
        cycles = [[int(x) for x in c.split(",") if x] for c in _CYCLE.findall(squeezed)]
        return Permutation.from_cycles(degree, [c for c in cycles if c])
    vals = [int(x) for x in text.split()]
    if len(vals) != degree:
        raise FormatError(f"{where}: expected {degree} images, got {len(vals)}")
    return Permutation(np.array(vals) - 1)


def evaluate_word(word: str, gens) -> Permutation:
    """Evaluate a product such as ``g1*g2^3*g1^-1`` (factors applied left to right)."""
    word = re.sub(r"\s+", "", word)
    if not word:
        raise FormatError("empty seed word")
    result = None
    for factor in word.split("*"):
        m = _FACTOR.match(factor)
        if not m:
            raise FormatError(f"bad factor {factor!r} in seed word")
        k = int(m.group(1))
        if not 1 <= k <= len(gens):
            raise FormatError(f"generator g{k} not defined")
        p = gens[k - 1] ** int(m.group(2) or 1)
        result = p if result is None else compose(result, p)
    return result


def parse_generators(text: str, seed: str | None = None, label: str = "") -> GeneratorSet:
    degree = None
    gens = []
    seed_text = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"line {lineno}"
        if degree is None:
            m = re.match(r"^degree\s+(\d+)$", line)
            if not m:
                raise FormatError(f"{where}: first line must be 'degree N'")
            degree = int(m.group(1))
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise FormatError(f"{where}: expected 'gen:', 'seed:' or 'label:'")
        if key == "gen":
            gens.append(_parse_perm(rest, degree, where))
        elif key == "seed":
            seed_text = rest.strip()
        elif key == "label":
            label = label or rest.strip()
        else:
            raise FormatError(f"{where}: unknown key {key!r}")
    if degree is None:
        raise FormatError("missing 'degree N' line")
    if not gens:
        raise FormatError("no generators given")
    seed_text = seed if seed is not None else seed_text
    if seed_text is None:
        raise FormatError("no seed given")
    if seed_text.startswith("(") or seed_text[:1].isdigit():
        seed_perm = _parse_perm(seed_text, degree, "seed")
    else:
        seed_perm = evaluate_word(seed_text, gens)
    if order(seed_perm) != 2:
        raise FormatError(f"seed has order {order(seed_perm)}, not 2")
    return GeneratorSet(degree, gens, seed_perm, label)


def read_generators(path, seed: str | None = None) -> GeneratorSet:
    path = Path(path)
    return parse_generators(path.read_text(encoding="utf-8"), seed=seed, label=path.stem)


# ---------------------------------------------------------------------------
# manifest
# ---------------------------------------------------------------------------


def load_manifest(path=None) -> list:
    if path is None:
        text = resources.files("fischeralg").joinpath("data/manifest.json").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    entries = json.loads(text)
    for e in entries:
        missing = {"name", "degree", "url", "sha256", "seedWord", "expected"} - set(e)
        if missing:
            raise FormatError(f"manifest entry {e.get('name')!r} lacks {sorted(missing)}")
    return entries
