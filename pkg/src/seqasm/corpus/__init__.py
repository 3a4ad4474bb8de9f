"""Bundled programs, reference states and their golden traces.

Each entry lives in ``data/<name>/`` with a ``manifest.json`` naming the
program, the runs (state file, golden trace, expected outcome) and any
extra golden files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..core.state import State
from ..parser import Program, parse_program, parse_state, validate
from ..semantics import Outcome, format_trace, run

DATA_DIR = Path(__file__).parent / "data"


class NondeterminismError(RuntimeError):
    pass


@dataclass(frozen=True)
class CorpusRun:
    state: str
    golden: str
    expect: str
    program: str | None = None


@dataclass
class CorpusEntry:
    name: str
    description: str
    directory: Path
    program: str
    runs: list = field(default_factory=list)
    max_steps: int = 1000
    table: str | None = None
    functions: dict = field(default_factory=dict)

    def path(self, rel: str) -> Path:
        return self.directory / rel

    def load_program(self, rel: str | None = None) -> Program:
        return parse_program(self.path(rel or self.program).read_text())

    def load_state(self, rel: str) -> State:
        return parse_state(self.path(rel).read_text())

    def program_files(self) -> list[str]:
        names = {self.program} | {r.program for r in self.runs if r.program}
        return sorted(names)

    def vocabulary(self, run: CorpusRun | None = None):
        return self.load_state((run or self.runs[0]).state).vocabulary

    def validate(self) -> list:
        """Diagnostics of every (program, state) pairing the entry runs."""
        out = []
        for r in self.runs:
            out.extend(validate(self.load_program(r.program), self.load_state(r.state).vocabulary))
        return out

    def expected(self, run: CorpusRun) -> Outcome:
        return Outcome(run.expect)


def _load(directory: Path) -> CorpusEntry:
    m = json.loads((directory / "manifest.json").read_text())
    runs = [CorpusRun(r["state"], r["golden"], r["expect"], r.get("program")) for r in m["runs"]]
    return CorpusEntry(m["name"], m.get("description", ""), directory, m["program"], runs,
                       m.get("max_steps", 1000), m.get("table"), m.get("functions", {}))


def corpus_list() -> list[CorpusEntry]:
    return [_load(d) for d in sorted(DATA_DIR.iterdir()) if (d / "manifest.json").is_file()]


def get_entry(name: str) -> CorpusEntry:
    d = DATA_DIR / name
    if not (d / "manifest.json").is_file():
        raise KeyError(f"no corpus entry named {name!r}")
    return _load(d)


def run_entry(entry: CorpusEntry, r: CorpusRun):
    return run(entry.load_program(r.program), entry.load_state(r.state), entry.max_steps)


def render_goldens(entry: CorpusEntry) -> dict[str, str]:
    """Golden file contents keyed by path relative to the entry directory."""
    out = {r.golden: format_trace(run_entry(entry, r)) for r in entry.runs}
    if entry.table:
        from .sort import render_case_table
        out[entry.table] = render_case_table(entry.load_program())
    return out


def regenerate_goldens(entry: CorpusEntry, directory: Path | None = None) -> list[Path]:
    """Rewrite the entry's goldens under ``directory`` (default: the entry itself)."""
    first, second = render_goldens(entry), render_goldens(entry)
    if first != second:
        bad = sorted(k for k in first if first[k] != second.get(k))
        raise NondeterminismError(f"two renderings of {entry.name} differ in {', '.join(bad)}")
    base = Path(directory) if directory is not None else entry.directory
    written = []
    for rel, text in sorted(first.items()):
        p = base / rel
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(text)
        written.append(p)
    return written


def check_goldens(entry: CorpusEntry) -> list[str]:
    """Golden files whose committed bytes differ from a fresh rendering."""
    stale = []
    for rel, text in sorted(render_goldens(entry).items()):
        p = entry.path(rel)
        if not p.is_file() or p.read_text() != text:
            stale.append(rel)
    return stale


__all__ = [
    "DATA_DIR", "CorpusEntry", "CorpusRun", "NondeterminismError", "corpus_list", "get_entry",
    "run_entry", "render_goldens", "regenerate_goldens", "check_goldens",
]
