"""Digraph serialisation: JSON and the hex row-bitset text format.

Row format::

    n 4
    colors 0 0 0 0
    02
    04
    08
    01

one line per vertex, each the little-endian hex bytes of that vertex's
out-neighbour bitset, ceil(n/8) bytes wide (at least one byte).
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from src.core.digraph.digraph import ColoredDigraph
from src.core.errors import PreconditionError


def to_hex_rows(gamma: ColoredDigraph) -> str:
    width = max(1, (gamma.n + 7) // 8)
    lines = [f"n {gamma.n}", "colors " + " ".join(map(str, gamma.colors))]
    lines.extend(m.to_bytes(width, "little").hex() for m in gamma.out_adj)
    return "\n".join(lines) + "\n"


def from_hex_rows(text: str) -> ColoredDigraph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) < 2 or not lines[0].startswith("n ") or not lines[1].startswith("colors"):
        raise PreconditionError("row-bitset digraph must start with 'n N' and 'colors ...' lines")
    try:
        n = int(lines[0].split()[1])
        colors = [int(c) for c in lines[1].split()[1:]]
        rows = [int.from_bytes(bytes.fromhex(ln), "little") for ln in lines[2:]]
    except ValueError as e:
        raise PreconditionError(f"malformed row-bitset digraph: {e}") from e
    if len(rows) != n:
        raise PreconditionError(f"expected {n} rows, found {len(rows)}")
    return ColoredDigraph(n, rows, colors)


def dumps(gamma: ColoredDigraph, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(gamma.to_json(), sort_keys=True)
    if fmt == "hex":
        return to_hex_rows(gamma)
    raise ValueError(f"unknown digraph format {fmt!r}")


def loads(text: str) -> ColoredDigraph:
    """Detect the format from the first non-blank character."""
    if text.lstrip().startswith("{"):
        return ColoredDigraph.from_json(json.loads(text))
    return from_hex_rows(text)


def write_digraph(path: Union[str, Path], gamma: ColoredDigraph, fmt: str = "json") -> None:
    Path(path).write_text(dumps(gamma, fmt), encoding="utf-8")


def read_digraph(path: Union[str, Path]) -> ColoredDigraph:
    return loads(Path(path).read_text(encoding="utf-8"))
