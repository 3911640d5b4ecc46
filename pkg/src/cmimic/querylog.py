"""Ordered insert/delete/query events for offline dynamic connectivity."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

OPS = ("I", "D", "Q")


@dataclass
class QueryLog:
    events: list[tuple[str, int, int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.events = [(str(op).upper(), int(u), int(v)) for op, u, v in self.events]
        for i, (op, u, v) in enumerate(self.events, 1):
            if op not in OPS:
                raise ValueError(f"event {i}: unknown operation {op!r}")
            if op != "Q" and u == v:
                raise ValueError(f"event {i}: self-loop update {u} {v}")

    def __len__(self) -> int:
        return len(self.events)

    def vertices(self) -> set[int]:
        return {x for _, u, v in self.events for x in (u, v)}

    def queries(self) -> list[tuple[int, int]]:
        return [(u, v) for op, u, v in self.events if op == "Q"]

    def validate(self) -> None:
        """Reject deletes of edges that are not present."""
        live: Counter[tuple[int, int]] = Counter()
        for i, (op, u, v) in enumerate(self.events, 1):
            key = (min(u, v), max(u, v))
            if op == "I":
                live[key] += 1
            elif op == "D":
                if live[key] == 0:
                    raise ValueError(f"event {i}: delete of absent edge {u} {v}")
                live[key] -= 1

    @classmethod
    def parse(cls, text: str) -> QueryLog:
        events = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3 or parts[0].upper() not in OPS:
                raise ValueError(f"line {lineno}: expected 'I|D|Q u v', got {raw!r}")
            try:
                events.append((parts[0].upper(), int(parts[1]), int(parts[2])))
            except ValueError:
                raise ValueError(f"line {lineno}: vertex ids must be integers") from None
        return cls(events)

    @classmethod
    def load(cls, path: str | Path) -> QueryLog:
        return cls.parse(Path(path).read_text())

    def dumps(self) -> str:
        return "".join(f"{op} {u} {v}\n" for op, u, v in self.events)
