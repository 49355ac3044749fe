"""Text formats: edge lists, cover files, label sidecars, kernel traces.

Edge-list format::

    # comment
    n m [directed]
    u v
    ...
"""
from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .errors import DisconnectedGraphError, MalformedInputError
from .graph import Graph


def _content_lines(text: str):
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def parse_edgelist(text: str, require_connected: bool = True) -> Graph:
    lines = list(_content_lines(text))
    if not lines:
        raise MalformedInputError("empty edge list")
    head = lines[0].split()
    if len(head) not in (2, 3):
        raise MalformedInputError(f"bad header line: {lines[0]!r}")
    directed = False
    if len(head) == 3:
        if head[2].lower() not in ("directed", "d", "1"):
            raise MalformedInputError(f"unknown header flag {head[2]!r}")
        directed = True
    try:
        n, m = int(head[0]), int(head[1])
        edges = []
        for line in lines[1:]:
            parts = line.split()
            if len(parts) != 2:
                raise MalformedInputError(f"bad edge line: {line!r}")
            edges.append((int(parts[0]), int(parts[1])))
    except ValueError as exc:
        raise MalformedInputError(str(exc)) from exc
    if len(edges) != m:
        raise MalformedInputError(f"header says {m} edges, found {len(edges)}")
    try:
        g = Graph(n, edges, directed=directed)
    except (ValueError, KeyError) as exc:
        raise MalformedInputError(str(exc)) from exc
    if require_connected and not g.is_connected:
        raise DisconnectedGraphError(
            "input graph is disconnected; split it with Graph.split_components "
            "(the cop number of a disconnected graph is the sum over components)"
        )
    return g


def read_edgelist(path, require_connected: bool = True) -> Graph:
    g = parse_edgelist(Path(path).read_text(), require_connected=require_connected)
    labels_path = Path(str(path) + ".labels")
    if labels_path.exists():
        g = g.with_labels(read_labels(labels_path, g.n))
    return g


def format_edgelist(g: Graph) -> str:
    head = f"{g.n} {g.m}" + (" directed" if g.directed else "")
    body = [f"{u} {v}" for u, v in sorted(g.edges)]
    return "\n".join([head] + body) + "\n"


def write_edgelist(g: Graph, path, with_labels: bool = True) -> None:
    Path(path).write_text(format_edgelist(g))
    sidecar = Path(str(path) + ".labels")
    if with_labels and g.labels is not None:
        write_labels(g.labels, sidecar)
    elif sidecar.exists():
        sidecar.unlink()  # stale labels from an earlier write


def read_labels(path, n: int) -> list[str]:
    labels = [""] * n
    for line in _content_lines(Path(path).read_text()):
        try:
            v, lab = line.split(None, 1)
            labels[int(v)] = lab.strip()
        except (ValueError, IndexError) as exc:
            raise MalformedInputError(f"bad label line {line!r}") from exc
    return labels


def write_labels(labels: Iterable[str], path) -> None:
    Path(path).write_text("".join(f"{v} {lab}\n" for v, lab in enumerate(labels)))


def read_cover(path) -> list[int]:
    """One line of space-separated vertex ids (comments allowed)."""
    ids = []
    for line in _content_lines(Path(path).read_text()):
        try:
            ids.extend(int(tok) for tok in line.split())
        except ValueError as exc:
            raise MalformedInputError(str(exc)) from exc
    return ids


def write_cover(vertices: Iterable[int], path) -> None:
    Path(path).write_text(" ".join(str(v) for v in sorted(vertices)) + "\n")
