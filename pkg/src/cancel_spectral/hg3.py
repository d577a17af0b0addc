"""Reader and writer for the ``.hg3`` text format.

Layout::

    hg 3 <n> <m>
    <a> <b> <c>      (m lines, 0 <= a < b < c < n, lexicographic order)

ASCII decimal, LF line endings, a trailing LF after every line.
"""

from __future__ import annotations

import os
from typing import Union

from .core import UniformHypergraph

PathLike = Union[str, "os.PathLike[str]"]


class HG3FormatError(ValueError):
    pass


def dumps(G: UniformHypergraph) -> str:
    lines = [f"hg 3 {G.n} {G.m}"]
    lines.extend(f"{a} {b} {c}" for a, b, c in G.edges)
    return "\n".join(lines) + "\n"


def _int(tok: str, lineno: int) -> int:
    if not tok.isdigit() or (len(tok) > 1 and tok[0] == "0"):
        raise HG3FormatError(f"line {lineno}: {tok!r} is not a canonical decimal integer")
    return int(tok)


def loads(text: str) -> UniformHypergraph:
    if "\r" in text:
        raise HG3FormatError("CR characters are not allowed; use LF line endings")
    if not text.endswith("\n"):
        raise HG3FormatError("file must end with a newline")
    lines = text[:-1].split("\n")
    head = lines[0].split(" ")
    if len(head) != 4 or head[0] != "hg" or head[1] != "3":
        raise HG3FormatError(f"line 1: expected 'hg 3 <n> <m>', got {lines[0]!r}")
    n, m = _int(head[2], 1), _int(head[3], 1)
    body = lines[1:]
    if len(body) != m:
        raise HG3FormatError(f"header declares {m} edges, found {len(body)} lines")
    edges = []
    for lineno, line in enumerate(body, start=2):
        toks = line.split(" ")
        if len(toks) != 3:
            raise HG3FormatError(f"line {lineno}: expected three vertices, got {line!r}")
        a, b, c = (_int(t, lineno) for t in toks)
        if not a < b < c:
            raise HG3FormatError(f"line {lineno}: vertices must be strictly increasing")
        if c >= n:
            raise HG3FormatError(f"line {lineno}: vertex {c} out of range [0, {n})")
        e = (a, b, c)
        if edges and e == edges[-1]:
            raise HG3FormatError(f"line {lineno}: duplicate edge {e}")
        if edges and e < edges[-1]:
            raise HG3FormatError(f"line {lineno}: edges not in lexicographic order")
        edges.append(e)
    return UniformHypergraph(n, tuple(edges))


def read_hg3(path: PathLike) -> UniformHypergraph:
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        text = raw.decode("ascii")
    except UnicodeDecodeError as exc:
        raise HG3FormatError(f"{path}: not ASCII") from exc
    return loads(text)


def write_hg3(G: UniformHypergraph, path: PathLike) -> None:
    with open(path, "w", newline="\n", encoding="ascii") as fh:
        fh.write(dumps(G))
