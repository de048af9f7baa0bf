"""
Trace-Table Cache.

One text file per (p, max-degree) holding the Frobenius trace of every closed
point of X = A^1 - {0, 1, H = 0} up to that degree:

    #legendre-traces v1
    #p=5 max-degree=2 moduli=<sha256>
    5,1,3.1,-2
    ...

Rows are `p,d,minpoly,a` sorted by (d, minpoly). The moduli hash covers p and
the canonical modulus of every degree, so a file written under another
choice of representatives is rejected as stale.
"""

import hashlib
import os
import re
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from unitroot.errors import CacheMissing, CorruptCache, StaleCache
from unitroot.ffield import Poly, canonical_modulus, poly_from_digits, poly_to_digits
from unitroot.legendre import trace_sweep
from unitroot.logger import get_logger

logger = get_logger("trace_store")

HEADER = "#legendre-traces v1"
_META = re.compile(r"^#p=(\d+) max-degree=(\d+) moduli=([0-9a-f]{64})$")
_FILE = re.compile(r"^legendre-traces-p(\d+)-d(\d+)\.csv$")


# ============================================================================
# Data Models
# ============================================================================

@dataclass(frozen=True, order=True)
class TraceRow:
    d: int
    minpoly: Poly
    a: int
    p: int = field(compare=False)

    def to_line(self) -> str:
        return f"{self.p},{self.d},{poly_to_digits(self.minpoly)},{self.a}"


@dataclass
class TraceTable:
    """Traces of the ordinary closed points of X with degree <= max_degree."""
    p: int
    max_degree: int
    rows: List[TraceRow]

    def __post_init__(self):
        self.rows = sorted(self.rows)

    def rows_of_degree(self, d: int) -> List[TraceRow]:
        return [row for row in self.rows if row.d == d]

    def counts(self) -> Dict[int, int]:
        return {d: len(self.rows_of_degree(d)) for d in range(1, self.max_degree + 1)}

    def restrict(self, max_degree: int) -> "TraceTable":
        if max_degree > self.max_degree:
            raise CacheMissing(
                f"table for p={self.p} stops at degree {self.max_degree}, need {max_degree}"
            )
        return TraceTable(self.p, max_degree, [r for r in self.rows if r.d <= max_degree])

    @property
    def moduli_hash(self) -> str:
        return moduli_hash(self.p, self.max_degree)

    def to_text(self) -> str:
        lines = [HEADER, f"#p={self.p} max-degree={self.max_degree} moduli={self.moduli_hash}"]
        lines += [row.to_line() for row in self.rows]
        return "\n".join(lines) + "\n"


def moduli_hash(p: int, max_degree: int) -> str:
    moduli = ";".join(poly_to_digits(canonical_modulus(p, d)) for d in range(1, max_degree + 1))
    return hashlib.sha256(f"p={p}|{moduli}".encode("ascii")).hexdigest()


# ============================================================================
# Text format
# ============================================================================

def parse_table(text: str, source: str = "<memory>") -> TraceTable:
    lines = text.splitlines()
    if len(lines) < 2 or lines[0] != HEADER:
        raise CorruptCache(f"{source}: missing header {HEADER!r}")
    meta = _META.match(lines[1])
    if meta is None:
        raise CorruptCache(f"{source}: malformed parameter line {lines[1]!r}")
    p, max_degree, digest = int(meta.group(1)), int(meta.group(2)), meta.group(3)
    if digest != moduli_hash(p, max_degree):
        raise StaleCache(f"{source}: written for other canonical moduli (p={p})")

    rows = []
    for lineno, line in enumerate(lines[2:], start=3):
        parts = line.split(",")
        if len(parts) != 4:
            raise CorruptCache(f"{source}:{lineno}: expected 4 fields, got {len(parts)}")
        try:
            row_p, d, a = int(parts[0]), int(parts[1]), int(parts[3])
            minpoly = poly_from_digits(parts[2], p)
        except ValueError as exc:
            raise CorruptCache(f"{source}:{lineno}: {exc}") from exc
        if row_p != p or not 1 <= d <= max_degree or len(minpoly) != d + 1:
            raise CorruptCache(f"{source}:{lineno}: row {line!r} does not fit p={p}, d<={max_degree}")
        rows.append(TraceRow(d, minpoly, a, p))
    return TraceTable(p, max_degree, rows)


def write_table(path: Path, table: TraceTable) -> None:
    """Atomic write: a temporary sibling renamed into place."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=path.name, suffix=".tmp", dir=path.parent)
    with os.fdopen(fd, "w", encoding="ascii", newline="\n") as handle:
        handle.write(table.to_text())
    os.replace(tmp, path)


def read_table(path: Path) -> TraceTable:
    path = Path(path)
    return parse_table(path.read_text(encoding="ascii"), source=str(path))


def cache_roundtrip(path: Path, table: TraceTable) -> TraceTable:
    write_table(path, table)
    return read_table(path)


def extend_trace_table(table: TraceTable, max_degree: int, jobs: int = 1) -> TraceTable:
    """table plus the sweeps of every degree above table.max_degree up to max_degree."""
    rows = list(table.rows)
    for d in range(table.max_degree + 1, max_degree + 1):
        for record in trace_sweep(table.p, d, jobs=jobs):
            rows.append(TraceRow(d, record.point.minpoly, record.trace, table.p))
    return TraceTable(table.p, max(max_degree, table.max_degree), rows)


def build_trace_table(p: int, max_degree: int, jobs: int = 1) -> TraceTable:
    return extend_trace_table(TraceTable(p, 0, []), max_degree, jobs)


# ============================================================================
# Store
# ============================================================================

class TraceStore:
    """
    Trace tables backed by a cache directory.

    Usage:
        store = TraceStore(Path("~/.cache/unitroot").expanduser(), table_degree=6)
        table = store.get_table(p=5, max_degree=4)

    A cached table of larger max-degree is restricted; a smaller one is
    extended by sweeping only the missing degrees. New tables are built up to
    table_degree even when less is asked for. Without a cache directory tables
    live in memory only.
    """

    def __init__(self, cache_dir: Optional[Path] = None, compute_missing: bool = True, jobs: int = 1,
                 table_degree: int = 0):
        self.cache_dir = Path(cache_dir) if cache_dir is not None else None
        self.compute_missing = compute_missing
        self.jobs = jobs
        self.table_degree = table_degree
        self._tables: Dict[Tuple[int, int], TraceTable] = {}

    def path_for(self, p: int, max_degree: int) -> Path:
        if self.cache_dir is None:
            raise CacheMissing("no cache directory configured")
        return self.cache_dir / f"legendre-traces-p{p}-d{max_degree}.csv"

    def _cached_files(self, p: int) -> List[Tuple[int, Path]]:
        if self.cache_dir is None or not self.cache_dir.is_dir():
            return []
        found = []
        for entry in self.cache_dir.iterdir():
            match = _FILE.match(entry.name)
            if match and int(match.group(1)) == p:
                found.append((int(match.group(2)), entry))
        return sorted(found)

    def _largest_in_memory(self, p: int) -> Optional[TraceTable]:
        tables = [t for (tp, _), t in self._tables.items() if tp == p]
        return max(tables, key=lambda t: t.max_degree, default=None)

    def get_table(self, p: int, max_degree: int) -> TraceTable:
        """
        Traces of every closed point of X with degree <= max_degree.

        Args:
            p: odd prime
            max_degree: largest closed-point degree needed

        Returns:
            TraceTable with exactly this max_degree

        Raises:
            CacheMissing: nothing large enough is cached and compute_missing is off
            StaleCache, CorruptCache: a cache file cannot be trusted
        """
        key = (p, max_degree)
        if key in self._tables:
            return self._tables[key]

        largest = self._largest_in_memory(p)
        if largest is not None and largest.max_degree >= max_degree:
            table = largest.restrict(max_degree)
            self._tables[key] = table
            return table

        files = self._cached_files(p)
        for degree, path in files:
            if degree >= max_degree:
                logger.info(f"📂 Reading trace cache {path.name}")
                table = read_table(path).restrict(max_degree)
                self._tables[key] = table
                return table

        if not self.compute_missing:
            raise CacheMissing(f"no trace table for p={p} up to degree {max_degree}")

        target = max(max_degree, self.table_degree)
        if files and (largest is None or files[-1][0] > largest.max_degree):
            logger.info(f"📂 Reading trace cache {files[-1][1].name}")
            largest = read_table(files[-1][1])
        if largest is None:
            largest = TraceTable(p, 0, [])

        logger.info(f"🧮 Sweeping degrees {largest.max_degree + 1}..{target} for p={p}")
        full = extend_trace_table(largest, target, jobs=self.jobs)
        if self.cache_dir is not None:
            path = self.path_for(p, target)
            write_table(path, full)
            logger.info(f"💾 Wrote {len(full.rows)} rows to {path}")
        self._tables[(p, target)] = full
        table = full.restrict(max_degree) if target > max_degree else full
        self._tables[key] = table
        return table


_default_store: Optional[TraceStore] = None


def get_trace_store() -> TraceStore:
    """Process-wide store configured from config.yml / UNITROOT_CACHE_DIR."""
    global _default_store
    if _default_store is None:
        from unitroot.config import load_settings

        settings = load_settings()
        _default_store = TraceStore(settings.cache_dir, settings.cache.compute_missing)
    return _default_store
