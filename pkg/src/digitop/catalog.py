"""Census of connected images that are not (strongly) reducible.

Connected graphs on up to seven points are generated here by vertex
augmentation with canonical-form deduplication; larger orders are read from
pre-deduplicated graph6 files.  Survivors of the dominated-point test are
exactly the strong homotopy types, so counting them gives d(n); the slower
one-step brute force over maps gives c(n).
"""
from __future__ import annotations

import csv
import io
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Iterator

from .core import (
    DigitalImage,
    Graph6Error,
    ParameterError,
    canonical_form,
    parse_graph6,
    write_graph6,
)
from .homotopy import DEFAULT_CANDIDATE_BUDGET, Verdict, is_reducible, is_strongly_reducible

log = logging.getLogger(__name__)

MAX_GENERATED_N = 7
CORPUS_ENV = "DIGITOP_CORPUS"

__all__ = [
    "CatalogEntry",
    "CensusRow",
    "CensusReport",
    "CorpusError",
    "CatalogFormatError",
    "generate_connected_graphs",
    "ingest_graph6",
    "corpus_path",
    "build_census",
    "write_catalog",
    "read_catalog",
    "census_csv",
]


class CorpusError(ValueError):
    def __init__(self, path, lineno: int, message: str):
        super().__init__(f"{path}:{lineno}: {message}")
        self.lineno = lineno


class CatalogFormatError(ValueError):
    def __init__(self, lineno: int, field_name: str, message: str):
        super().__init__(f"catalog line {lineno}: field {field_name!r}: {message}")
        self.lineno = lineno
        self.field = field_name


# -- generation ------------------------------------------------------------

_levels: dict[int, list[DigitalImage]] = {}


def _connected_level(n: int) -> list[DigitalImage]:
    if n in _levels:
        return _levels[n]
    if n == 1:
        level = [DigitalImage(1, ((),))]
    else:
        # Every connected graph has a point whose removal leaves it
        # connected, so joining a new point to a nonempty subset of each
        # smaller connected graph reaches every class.
        seen: dict[bytes, DigitalImage] = {}
        for G in _connected_level(n - 1):
            masks = list(G.masks)
            for subset in range(1, 1 << (n - 1)):
                new = [m | ((subset >> i & 1) << (n - 1)) for i, m in enumerate(masks)]
                new.append(subset)
                H = DigitalImage.from_masks(new)
                key = canonical_form(H)
                if key not in seen:
                    seen[key] = H
        level = [seen[k] for k in sorted(seen)]
    _levels[n] = level
    return level


def generate_connected_graphs(n: int) -> Iterator[DigitalImage]:
    """One connected image per isomorphism class on ``n`` points, in order
    of canonical form."""
    if n < 1:
        raise ParameterError("n must be positive")
    if n > MAX_GENERATED_N:
        raise ParameterError(
            f"built-in generation stops at n={MAX_GENERATED_N}; ingest a graph6 corpus "
            f"(e.g. from nauty's geng -c {n}) with ingest_graph6 / --corpus")
    return iter(_connected_level(n))


# -- ingestion -------------------------------------------------------------

def ingest_graph6(path, dedup: bool = False) -> Iterator[DigitalImage]:
    """Parse a file of graph6 lines; blank lines are skipped.

    With ``dedup`` every line is canonicalised and later copies of an
    isomorphism class are logged and dropped.
    """
    seen: dict[bytes, int] = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                X = parse_graph6(line)
            except (Graph6Error, ParameterError) as exc:
                raise CorpusError(path, lineno, str(exc)) from None
            if dedup:
                key = canonical_form(X)
                if key in seen:
                    log.warning("%s:%d duplicates line %d", path, lineno, seen[key])
                    continue
                seen[key] = lineno
            yield X


def corpus_path(n: int, corpus_dir=None):
    """``<dir>/connected<n>.g6`` under ``corpus_dir`` or $DIGITOP_CORPUS, if
    that file exists."""
    base = corpus_dir or os.environ.get(CORPUS_ENV)
    if not base:
        return None
    p = os.path.join(base, f"connected{n}.g6")
    return p if os.path.exists(p) else None


# -- census ----------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    n: int
    canon: str
    graph6: str
    strongly_reducible: bool
    reducible: Verdict | None = None

    def to_json(self) -> dict:
        d = asdict(self)
        d["reducible"] = None if self.reducible is None else self.reducible.value
        return d


@dataclass
class CensusRow:
    n: int
    total: int = 0
    d: int = 0
    c: int | None = None
    undecided: int = 0
    provenance: str = "generated"


@dataclass
class CensusReport:
    rows: dict[int, CensusRow] = field(default_factory=dict)

    def d(self, n: int) -> int:
        return self.rows[n].d

    def c(self, n: int) -> int | None:
        row = self.rows[n]
        return None if row.undecided else row.c

    def to_json(self) -> list[dict]:
        return [asdict(self.rows[n]) for n in sorted(self.rows)]


def _classify(g6: str, want_c: bool, budget: int):
    X = parse_graph6(g6)
    if is_strongly_reducible(X) is not None:
        return None
    red = is_reducible(X, budget) if want_c else None
    return X.n, canonical_form(X).decode("ascii"), red


def _classify_chunk(args):
    chunk, want_c, budget = args
    return [_classify(g, want_c, budget) for g in chunk]


def build_census(source: Iterable[DigitalImage], *, reducible: bool = True,
                 candidate_budget: int = DEFAULT_CANDIDATE_BUDGET, jobs: int = 1,
                 provenance: str = "generated", chunk: int = 2000
                 ) -> tuple[CensusReport, list[CatalogEntry]]:
    """Classify every image in ``source`` (connected, one per isomorphism
    class) and count survivors per vertex count.

    Strongly reducible images are always reducible, so the slower
    ``is_reducible`` search only runs on the survivors.
    """
    report = CensusReport()
    entries: list[CatalogEntry] = []
    totals: dict[int, int] = {}
    g6s = []
    for X in source:
        totals[X.n] = totals.get(X.n, 0) + 1
        g6s.append(write_graph6(X))
    if jobs > 1 and len(g6s) > chunk:
        parts = [(g6s[i:i + chunk], reducible, candidate_budget) for i in range(0, len(g6s), chunk)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = [r for part in pool.map(_classify_chunk, parts) for r in part]
    else:
        results = [_classify(g, reducible, candidate_budget) for g in g6s]
    for n, total in totals.items():
        report.rows[n] = CensusRow(n, total, 0, 0 if reducible else None, 0, provenance)
    for res in results:
        if res is None:
            continue
        n, canon, red = res
        row = report.rows[n]
        row.d += 1
        if red is Verdict.NO:
            row.c += 1
        elif red is Verdict.UNDECIDED:
            row.undecided += 1
        entries.append(CatalogEntry(n, canon, canon, False, red))
    entries.sort(key=lambda e: (e.n, e.canon))
    return report, entries


def census_csv(report: CensusReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "total", "d", "c", "undecided"])
    for n in sorted(report.rows):
        r = report.rows[n]
        w.writerow([r.n, r.total, r.d, "" if r.c is None else r.c, r.undecided])
    return buf.getvalue()


# -- persistence -----------------------------------------------------------

_FIELDS = {"n": int, "canon": str, "graph6": str, "strongly_reducible": bool}


def write_catalog(entries: Iterable[CatalogEntry], path) -> None:
    with open(path, "w") as fh:
        for e in entries:
            fh.write(json.dumps(e.to_json(), sort_keys=True) + "\n")


def _entry_from_json(lineno: int, raw: str) -> CatalogEntry:
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise CatalogFormatError(lineno, "<line>", f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise CatalogFormatError(lineno, "<line>", "expected a JSON object")
    for name, typ in _FIELDS.items():
        if name not in data:
            raise CatalogFormatError(lineno, name, "missing")
        val = data[name]
        if not isinstance(val, typ) or (typ is int and isinstance(val, bool)):
            raise CatalogFormatError(lineno, name, f"expected {typ.__name__}")
    red = data.get("reducible")
    if red is not None:
        try:
            red = Verdict(red)
        except ValueError:
            raise CatalogFormatError(lineno, "reducible", f"unknown verdict {red!r}") from None
    try:
        X = parse_graph6(data["graph6"])
    except Graph6Error as exc:
        raise CatalogFormatError(lineno, "graph6", str(exc)) from None
    if X.n != data["n"]:
        raise CatalogFormatError(lineno, "n", f"graph6 has {X.n} points")
    if canonical_form(X).decode("ascii") != data["canon"]:
        raise CatalogFormatError(lineno, "canon", "does not match the graph6 field")
    return CatalogEntry(data["n"], data["canon"], data["graph6"], data["strongly_reducible"], red)


def read_catalog(path) -> list[CatalogEntry]:
    out = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            if raw.strip():
                out.append(_entry_from_json(lineno, raw))
    return out
