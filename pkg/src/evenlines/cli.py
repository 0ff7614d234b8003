"""Command line front end.

Exit codes: 0 success, 1 verification failure or bad input data, 2 usage
error, 3 node budget exhausted.  JSON payloads are written with sorted keys
and no timestamps so that repeated runs are byte-identical; wall times and
dates go into the run manifest only.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from evenlines import __version__
from evenlines.arrangement import MalformedGraph6, read_graph6_lines

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3
CACHE_ENV = "EVENLINES_CACHE"

log = logging.getLogger("evenlines")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "evenlines"


def cache_key(command: str, params: dict) -> str:
    blob = dumps({"command": command, "params": params, "version": __version__})
    return hashlib.sha256(blob.encode()).hexdigest()[:32]


def file_sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


@dataclass
class RunManifest:
    command: str
    parameters: dict
    tool_version: str = __version__
    input_hashes: dict = field(default_factory=dict)
    outputs: list = field(default_factory=list)
    complete: bool = True
    wall_time: float = 0.0
    cache_hit: bool = False
    finished_at: str = ""

    def write(self, path: Path) -> None:
        self.finished_at = datetime.now(timezone.utc).isoformat(timespec="seconds")
        path.write_text(json.dumps(asdict(self), sort_keys=True, indent=1) + "\n", encoding="utf-8")


def _open_lines(name: str):
    if name == "-":
        return sys.stdin.read().splitlines()
    return Path(name).read_text(encoding="utf-8").splitlines()


def _read_graphs(name: str):
    """Split a graph6 file into arrangements and per-line error records."""
    graphs, errors = [], []
    for no, item in read_graph6_lines(_open_lines(name)):
        if isinstance(item, MalformedGraph6):
            errors.append({"line": no, "error": str(item)})
        else:
            graphs.append((no, item))
    return graphs, errors


# -- enumerate ---------------------------------------------------------------

def cmd_enumerate(args) -> int:
    from evenlines.enumerator import EnumerationTask, ResourceLimit, enumerate_survivors

    if args.n < 0 or args.n > 62:
        print("error: --n must lie in 0..62", file=sys.stderr)
        return EXIT_USAGE
    params = {"n": args.n, "k": args.k, "budget": args.budget}
    manifest = RunManifest("enumerate", dict(params, jobs=args.jobs))
    stem = f"survivors_n{args.n}" + (f"_k{args.k}" if args.k is not None else "")
    key = cache_key("enumerate", params)
    cached = None if args.no_cache else cache_dir() / key
    t0 = time.perf_counter()

    if cached is not None and (cached / "summary.json").exists():
        summary_text = (cached / "summary.json").read_text(encoding="utf-8")
        g6_text = (cached / "survivors.g6").read_text(encoding="utf-8")
        manifest.cache_hit = True
    else:
        task = EnumerationTask.for_n(args.n, args.k, args.budget)
        try:
            result = enumerate_survivors(task, jobs=args.jobs)
        except ResourceLimit as exc:
            print(f"error: {exc}", file=sys.stderr)
            if args.out:
                out = Path(args.out)
                out.mkdir(parents=True, exist_ok=True)
                manifest.complete = False
                manifest.wall_time = round(time.perf_counter() - t0, 3)
                manifest.write(out / f"{stem}.manifest.json")
            return EXIT_LIMIT
        summary_text = dumps(result.summary()) + "\n"
        g6_text = "".join(s.graph6 + "\n" for s in result.survivors)
        if cached is not None:
            try:
                cached.mkdir(parents=True, exist_ok=True)
                (cached / "survivors.g6").write_text(g6_text, encoding="utf-8")
                (cached / "summary.json").write_text(summary_text, encoding="utf-8")
            except OSError as exc:
                log.warning("cache not written: %s", exc)

    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        g6_path = out / f"{stem}.g6"
        summary_path = out / f"{stem}.json"
        g6_path.write_text(g6_text, encoding="utf-8")
        summary_path.write_text(summary_text, encoding="utf-8")
        manifest.outputs = [str(g6_path), str(summary_path)]
        manifest.wall_time = round(time.perf_counter() - t0, 3)
        manifest.write(out / f"{stem}.manifest.json")
    sys.stdout.write(summary_text)
    return EXIT_OK


# -- check / classify / chern -------------------------------------------------

def cmd_check(args) -> int:
    from evenlines.filters import run_pipeline

    status = EXIT_OK
    for no, item in read_graph6_lines(_open_lines(args.file)):
        if isinstance(item, MalformedGraph6):
            print(dumps({"line": no, "error": str(item)}))
            status = EXIT_FAIL
            continue
        report = run_pipeline(item)
        print(dumps(dict(report.to_json(), line=no)))
        if not report.overall:
            status = EXIT_FAIL
    return status


def cmd_classify(args) -> int:
    from evenlines.catalog import classify_graphs, load_ledger

    ledger = load_ledger(args.ledger)
    graphs, errors = _read_graphs(args.file)
    result = classify_graphs((a for _, a in graphs), ledger).to_json()
    if errors:
        result["errors"] = errors
    print(dumps(result))
    return EXIT_OK if not result["unknown"] and not errors else EXIT_FAIL


def cmd_chern(args) -> int:
    from evenlines.chern import chern_numbers, chern_table

    graphs, errors = _read_graphs(args.file)
    if args.table:
        sys.stdout.write(chern_table(a for _, a in graphs))
        for e in errors:
            print(f"# line {e['line']}: {e['error']}")
    else:
        records = [(no, dict(chern_numbers(a).to_json(), graph6=a.graph6(), line=no)) for no, a in graphs]
        records += [(e["line"], e) for e in errors]
        for _, rec in sorted(records, key=lambda r: r[0]):
            print(dumps(rec))
    return EXIT_FAIL if errors else EXIT_OK


# -- catalog -----------------------------------------------------------------

def cmd_catalog(args) -> int:
    from evenlines.catalog import builtin_catalog, catalog_json, ledger_json, load_ledger

    if args.action == "list":
        if args.format == "json":
            print(dumps(catalog_json()))
            return EXIT_OK
        for e in builtin_catalog():
            print(f"{e.id}\tn={e.n}\tk={e.k}\t{' '.join(e.graph6)}")
        return EXIT_OK
    if args.format == "g6":
        seen = set()
        for e in builtin_catalog():
            for g in e.graph6:
                if g not in seen:
                    seen.add(g)
                    print(g)
        return EXIT_OK
    print(dumps({"catalog": catalog_json(), "ledger": ledger_json(load_ledger())}))
    return EXIT_OK


# -- code --------------------------------------------------------------------

def _parse_rows(text: str) -> list[list[int]]:
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.replace(",", " ").split()
        if len(tokens) == 1:
            tokens = list(tokens[0])
        try:
            rows.append([int(t) for t in tokens])
        except ValueError as exc:
            raise ValueError(f"bad generator row {line!r}") from exc
    return rows


def cmd_code(args) -> int:
    from evenlines.lattice import CodeError, EvenSetCode, weight_distribution

    try:
        rows = _parse_rows(Path(args.generators).read_text(encoding="utf-8"))
        code = EvenSetCode.from_rows(rows)
        dist = weight_distribution(code)
    except (ValueError, CodeError) as exc:
        print(dumps({"error": str(exc)}))
        return EXIT_FAIL
    print(dumps({
        "length": code.length,
        "dimension": code.dimension,
        "weights": {str(w): c for w, c in dist.items()},
    }))
    return EXIT_OK


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="evenlines", description="Even sets of lines on quartic surfaces.")
    p.add_argument("--version", action="version", version=f"evenlines {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", help="enumerate filter survivors on n lines")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--k", type=int)
    e.add_argument("--out", help="directory for the graph6 file, summary and manifest")
    e.add_argument("--jobs", type=int, default=1)
    e.add_argument("--budget", type=int, help="node budget; exit 3 when exhausted")
    e.add_argument("--no-cache", action="store_true")
    e.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("check", help="run the filter pipeline on each graph6 line")
    c.add_argument("file")
    c.set_defaults(func=cmd_check)

    cl = sub.add_parser("classify", help="match graphs against catalog and exclusion ledger")
    cl.add_argument("file")
    cl.add_argument("--ledger", help="ledger JSON (default: the shipped ledger)")
    cl.set_defaults(func=cmd_classify)

    ch = sub.add_parser("chern", help="Chern invariants of the double cover")
    ch.add_argument("file")
    ch.add_argument("--table", action="store_true", help="aligned text table instead of JSON lines")
    ch.set_defaults(func=cmd_chern)

    ca = sub.add_parser("catalog", help="builtin catalog and ledger")
    ca.add_argument("action", choices=("list", "export"))
    ca.add_argument("--format", choices=("json", "g6"), default=None)
    ca.set_defaults(func=cmd_catalog)

    co = sub.add_parser("code", help="weight distribution of a binary code")
    co.add_argument("--generators", required=True, help="file with one 0/1 generator row per line")
    co.set_defaults(func=cmd_code)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "catalog" and args.format is None:
        args.format = "json" if args.action == "export" else "text"
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
