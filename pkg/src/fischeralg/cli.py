"""Command line: construct, analyze, table, verify and fetch.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 data missing,
4 size-guard refusal.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import urllib.request
from pathlib import Path

import numpy as np

from . import constructions as cons
from . import fischer as fs
from . import tables
from .fischer import SizeGuardError
from .io import FormatError, load_manifest, write_fsp
from .tralgebra import report
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DATA, EXIT_GUARD = 0, 1, 2, 3, 4
TABLES = ("unitary", "orth3", "sporadic", "chevalley", "rootsys")


class DigestMismatch(RuntimeError):
    pass


class DataMissing(RuntimeError):
    pass


class GuardRefusal(RuntimeError):
    pass


def default_data_dir() -> Path:
    return Path(os.environ.get("FISCHERALG_DATA", Path.home() / ".cache" / "fischeralg"))


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_family_flags(p: argparse.ArgumentParser, required: bool):
    p.add_argument("--family", choices=cons.FAMILIES, required=required)
    p.add_argument("--n", type=int, help="degree or rank parameter (sym, sp2n, o2n, su)")
    p.add_argument("--dim", type=int, help="dimension for orth3")
    p.add_argument("--witt", choices=("+", "-"), default="+", help="Witt sign (orth3, o2n)")
    p.add_argument("--refl", choices=("+", "-"), default="+", help="reflection type Q(x) for orth3")
    p.add_argument("--type", dest="rtype", help="root system, e.g. E8 or D5")
    p.add_argument("--gens", type=Path, help="generator file for ingest")
    p.add_argument("--seed", help="seed word or permutation for ingest")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fischeralg", description="Algebras of Fischer spaces over GF(2).")
    parser.add_argument("--threads", type=int, default=None, help="cap on internal numba threads")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a Fischer space and write it as .fsp")
    _add_family_flags(p, required=True)
    p.add_argument("-o", "--output", type=Path)
    p.add_argument("--override-guard", action="store_true")

    p = sub.add_parser("analyze", help="compute the algebra report of a space")
    p.add_argument("space", nargs="?", type=Path, help=".fsp file or generator file")
    _add_family_flags(p, required=False)
    p.add_argument("--format", choices=("json", "tsv", "md"), default="json")
    p.add_argument("--scan", choices=("auto", "all", "orbit"), default="auto")
    p.add_argument("--override-guard", action="store_true")
    p.add_argument("--no-timing", action="store_true", help="omit elapsedMs for byte-stable output")
    p.add_argument("-o", "--output", type=Path)

    p = sub.add_parser("table", help="reproduce a table of expected dimensions")
    p.add_argument("suite", choices=TABLES)
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--max-dim", type=int, default=8)
    p.add_argument("--data-dir", type=Path, default=None)
    p.add_argument("--format", choices=("json", "tsv", "md"), default="md")
    p.add_argument("--override-guard", action="store_true")
    p.add_argument("--no-timing", action="store_true")

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument("--suite", choices=SUITES, default="core")
    p.add_argument("--space", type=Path, help="space for the counts suite (default SU6(2))")
    p.add_argument("--max-points", type=int, default=700)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("fetch", help="download a generator file and check its SHA-256")
    p.add_argument("name", nargs="?", help="manifest entry")
    p.add_argument("--url")
    p.add_argument("--sha256")
    p.add_argument("--data-dir", type=Path, default=None)
    p.add_argument("--manifest", type=Path, default=None)
    return parser


def _space_from_flags(args) -> fs.FischerSpace:
    fam = args.family
    need = {"sym": "n", "sp2n": "n", "o2n": "n", "su": "n", "orth3": "dim", "rootsys": "rtype", "ingest": "gens"}
    if getattr(args, need[fam]) is None:
        raise argparse.ArgumentTypeError(f"--family {fam} needs --{need[fam].replace('rtype', 'type')}")
    if fam == "su" and tables.UNITARY.get(args.n, (0,))[0] > tables.MEMORY_GUARD_POINTS and not args.override_guard:
        raise GuardRefusal(f"SU{args.n}(2) needs a dense table beyond the memory guard; pass --override-guard")
    if fam == "rootsys":
        t = args.rtype.strip().upper()
        params = {"type": t[0], "n": int(t[1:]) if t[1:] else args.n}
    elif fam == "orth3":
        params = {"dim": args.dim, "eps": args.witt, "gamma": args.refl}
    elif fam == "o2n":
        params = {"n": args.n, "eps": args.witt}
    elif fam == "ingest":
        if not args.gens.exists():
            raise DataMissing(f"generator file {args.gens} not found")
        params = {"file": args.gens, "seed": args.seed}
    else:
        params = {"n": args.n}
    return cons.FamilySpec(fam, params).build()


def _load(path: Path, seed=None) -> fs.FischerSpace:
    if not path.exists():
        raise DataMissing(f"{path} not found")
    return tables.load_space(path, seed)


# ---------------------------------------------------------------------------
# formatting
# ---------------------------------------------------------------------------


def _flat_report(d: dict) -> list:
    out = []
    for k in sorted(d):
        v = d[k]
        out.append((k, v if isinstance(v, str) else json.dumps(v, sort_keys=True)))
    return out


def format_report(r, fmt: str, timing: bool) -> str:
    if fmt == "json":
        return r.to_json(timing=timing)
    d = r.to_dict()
    if not timing:
        d.pop("elapsedMs")
    pairs = _flat_report(d)
    if fmt == "tsv":
        return "\n".join(f"{k}\t{v}" for k, v in pairs)
    lines = ["| field | value |", "|---|---|"] + [f"| {k} | {v} |" for k, v in pairs]
    return "\n".join(lines)


def _cells(values) -> str:
    return "-" if values is None else " / ".join(str(v) for v in values)


def format_rows(rows, fmt: str, timing: bool) -> str:
    if fmt == "json":
        recs = []
        for r in rows:
            rec = {"label": r.label, "expected": list(r.expected),
                   "computed": None if r.computed is None else list(r.computed),
                   "status": r.status, "note": r.note, "extra": r.extra}
            if timing:
                rec["elapsedMs"] = r.elapsed_ms
            recs.append(rec)
        return json.dumps(recs, sort_keys=True, indent=2)
    head = ["group", "expected", "computed", "status", "note"] + (["ms"] if timing else [])
    body = [[r.label, _cells(r.expected), _cells(r.computed), r.status, r.note]
            + ([str(r.elapsed_ms)] if timing else []) for r in rows]
    if fmt == "tsv":
        return "\n".join("\t".join(x) for x in [head] + body)
    out = ["| " + " | ".join(head) + " |", "|" + "---|" * len(head)]
    out += ["| " + " | ".join(x) + " |" for x in body]
    return "\n".join(out)


def _emit(text: str, path=None):
    if path is None:
        print(text)
    else:
        Path(path).write_text(text + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_construct(args) -> int:
    S = _space_from_flags(args)
    val = np.unique(S.valencies()).tolist()
    tau = fs.class_summary(fs.tau_classes(S))["trivial"]
    theta = fs.class_summary(fs.theta_classes(S))["trivial"]
    print(f"n={S.n} valencies={val} tauTrivial={str(tau).lower()} thetaTrivial={str(theta).lower()}")
    if args.output:
        write_fsp(S, args.output)
        print(f"wrote {args.output}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    if args.space is not None:
        S = _load(args.space, args.seed)
    elif args.family is not None:
        S = _space_from_flags(args)
    else:
        raise argparse.ArgumentTypeError("analyze needs a space file or --family")
    r = report(S, scan=args.scan, override=args.override_guard)
    _emit(format_report(r, args.format, not args.no_timing), args.output)
    if r.is_lie is None:
        print(f"plane enumeration refused for n={S.n}; pass --override-guard", file=sys.stderr)
        return EXIT_GUARD
    return EXIT_OK


def sporadic_rows(data_dir: Path) -> list:
    try:
        manifest = {e["name"]: e for e in load_manifest()}
    except FormatError:
        manifest = {}
    rows = []
    for name in tables.SPORADIC:
        entry = manifest.get(name, {})
        path = next((p for p in (data_dir / f"{name}.fsp", data_dir / f"{name}.gen") if p.exists()), None)
        row = tables.sporadic_row(name, path, entry.get("seedWord"))
        if name == "O8p2S3" and row.computed is not None:
            ok, sizes = fs.partition_property(tables.load_space(path, entry.get("seedWord")))
            row.extra["partition"] = {"holds": ok, "sizes": sizes}
            if not ok:
                row.status = "FAIL"
        rows.append(row)
    return rows


def cmd_table(args) -> int:
    data_dir = args.data_dir or default_data_dir()
    if args.suite == "unitary":
        rows = tables.unitary_table(args.max_n, args.override_guard)
    elif args.suite == "orth3":
        rows = tables.orth3_table(args.max_dim, args.override_guard)
    elif args.suite == "rootsys":
        rows = tables.rootsys_table()
    elif args.suite == "chevalley":
        rows = tables.chevalley_table()
    else:
        rows = sporadic_rows(data_dir)
    print(format_rows(rows, args.format, not args.no_timing))
    return EXIT_FAIL if any(r.status == "FAIL" for r in rows) else EXIT_OK


def cmd_verify(args) -> int:
    kw = {}
    if args.suite == "counts" and args.space is not None:
        kw["S"] = _load(args.space)
    elif args.suite in ("core", "planes"):
        kw["max_points"] = args.max_points
    verdicts = run_suite(args.suite, **kw)
    if args.format == "json":
        print(json.dumps([v.to_dict() for v in verdicts], indent=2))
    else:
        for v in verdicts:
            print(v.line())
        print(f"{sum(v.passed for v in verdicts)}/{len(verdicts)} passed")
    return EXIT_OK if all(v.passed for v in verdicts) else EXIT_FAIL


def sha256_file(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def fetch(url, sha256: str, dest: Path) -> Path:
    """Download ``url`` to ``dest`` iff its digest is ``sha256``; a verified cached copy is kept as is."""
    sha256 = sha256.lower()
    if dest.exists() and sha256_file(dest) == sha256:
        return dest
    if url is None:
        raise DataMissing(f"no URL known for {dest.name}")
    dest.parent.mkdir(parents=True, exist_ok=True)
    tmp = dest.with_suffix(dest.suffix + ".part")
    with urllib.request.urlopen(url) as resp, open(tmp, "wb") as fh:
        fh.write(resp.read())
    got = sha256_file(tmp)
    if got != sha256:
        tmp.unlink()
        raise DigestMismatch(f"expected {sha256}, got {got}")
    tmp.replace(dest)
    return dest


def cmd_fetch(args) -> int:
    data_dir = args.data_dir or default_data_dir()
    url, digest, name = args.url, args.sha256, args.name
    if name is not None and (url is None or digest is None):
        entry = next((e for e in load_manifest(args.manifest) if e["name"] == name), None)
        if entry is None:
            raise argparse.ArgumentTypeError(f"{name!r} is not in the manifest")
        url = url or entry["url"]
        digest = digest or entry["sha256"]
    if digest is None:
        raise DataMissing(f"no SHA-256 known for {name or url}; supply --url and --sha256")
    if name is None:
        if url is None:
            raise argparse.ArgumentTypeError("fetch needs a manifest name or --url")
        name = Path(url).stem
    dest = fetch(url, digest, data_dir / f"{name}.gen")
    print(f"{dest} sha256 ok")
    return EXIT_OK


COMMANDS = {"construct": cmd_construct, "analyze": cmd_analyze, "table": cmd_table,
            "verify": cmd_verify, "fetch": cmd_fetch}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is not None:
        import numba

        numba.set_num_threads(max(1, min(args.threads, numba.config.NUMBA_NUM_THREADS)))
    try:
        return COMMANDS[args.command](args)
    except (argparse.ArgumentTypeError, cons.UnrealizableSign, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataMissing, FileNotFoundError) as exc:
        print(f"data missing: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (GuardRefusal, SizeGuardError) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except DigestMismatch as exc:
        print(f"digest mismatch: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(exc, file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
