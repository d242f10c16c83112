"""ASCII edge-list reader/writer.

One edge per line as ``u v`` with ``u < v``; an isolated node is a line with
a single id; ``#`` starts a comment line. Output is ordered by ascending
``(u, v)`` so identical graphs give identical files.
"""
from __future__ import annotations

import os
from pathlib import Path
from typing import Iterable

from .graph import Graph


class EdgeListError(ValueError):
    pass


def format_edgelist(g: Graph, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    for u in g.nodes():
        nb = g.neighbors(u)
        if not nb:
            lines.append(str(u))
            continue
        for v in sorted(nb):
            if v > u:
                lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def write_edgelist(g: Graph, path: str | os.PathLike, comments: Iterable[str] = ()) -> None:
    write_atomic(path, format_edgelist(g, comments))


def parse_edgelist(text: str, source: str = "<string>") -> Graph:
    nodes: list[int] = []
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            ids = [int(p) for p in parts]
        except ValueError:
            raise EdgeListError(f"{source}:{lineno}: non-integer token in {line!r}") from None
        if any(x < 0 for x in ids):
            raise EdgeListError(f"{source}:{lineno}: negative node id")
        if len(ids) == 1:
            nodes.append(ids[0])
        elif len(ids) == 2:
            u, v = ids
            if u == v:
                raise EdgeListError(f"{source}:{lineno}: self-loop {u}")
            edges.append((u, v))
        else:
            raise EdgeListError(f"{source}:{lineno}: expected 1 or 2 ids, got {len(ids)}")
    return Graph.from_edges(edges, nodes)


def read_edgelist(path: str | os.PathLike) -> Graph:
    path = Path(path)
    return parse_edgelist(path.read_text(), source=str(path))


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write via a sibling temp file and rename, so readers never see a partial file."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(f".{path.name}.{os.getpid()}.tmp")
    tmp.write_text(text)
    os.replace(tmp, path)
