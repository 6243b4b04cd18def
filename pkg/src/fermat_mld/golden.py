"""Published ML degrees, loaded from a plain-text ``n d mldeg`` table."""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path


@dataclass(frozen=True)
class GoldenTable:
    entries: dict[tuple[int, int], int]
    source: str = "<memory>"
    notes: dict[tuple[int, int], str] = field(default_factory=dict)

    @classmethod
    def parse(cls, text: str, source: str = "<text>") -> "GoldenTable":
        entries = {}
        notes = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line, _, comment = raw.partition("#")
            fields = line.split()
            if not fields:
                continue
            if len(fields) != 3:
                raise ValueError(f"{source}:{lineno}: expected 'n d mldeg', got {raw!r}")
            n, d, value = (int(x) for x in fields)
            if (n, d) in entries:
                raise ValueError(f"{source}:{lineno}: duplicate cell ({n}, {d})")
            entries[(n, d)] = value
            notes[(n, d)] = comment.strip() or f"{source}:{lineno}"
        return cls(entries, source, notes)

    @classmethod
    def load(cls, path: str | Path | None = None) -> "GoldenTable":
        if path is None:
            ref = resources.files("fermat_mld") / "data" / "golden_table.txt"
            return cls.parse(ref.read_text(), "golden_table.txt")
        path = Path(path)
        return cls.parse(path.read_text(), str(path))

    def __getitem__(self, key):
        return self.entries[key]

    def __contains__(self, key):
        return key in self.entries

    def __len__(self):
        return len(self.entries)

    def get(self, n, d, default=None):
        return self.entries.get((n, d), default)

    def cells(self, max_n: int, max_d: int, min_n: int = 1, min_d: int = 2):
        return sorted(
            (n, d) for n, d in self.entries
            if min_n <= n <= max_n and min_d <= d <= max_d
        )
