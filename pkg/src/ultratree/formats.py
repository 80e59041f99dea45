"""Reading and writing distance matrices, trees and graphs as text.

Matrices come as CSV (optional header row of point names) or JSON (a list of
rows, or ``{"names": [...], "matrix": [...]}``).  Entries may be integers,
decimals ("1.25") or fractions ("5/4"); JSON floats are refused because they
are not exact.

Trees use nested expressions: ``(label child child ...)`` with a bare label
for a leaf, e.g. ``(2 0 (1 0 0))``.  Writing ``*`` for every label gives an
unlabeled tree.
"""

from __future__ import annotations

import json
import re

from .core import UltraSpace, as_rational, validate
from .errors import MixedLabeling, ParseError
from .graphs import SimpleGraph
from .tree import LabeledRootedTree, RootedTree


def _cell(text: str, line: int, col: int):
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError, TypeError):
        raise ParseError(f"not an exact number: {text!r}", line, col) from None


def _is_number(text: str) -> bool:
    try:
        as_rational(text)
        return True
    except (ValueError, ZeroDivisionError):
        return False


def _parse_csv(text: str):
    rows, names = [], None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        cells, col = [], 1
        for piece in raw.split(","):
            lead = len(piece) - len(piece.lstrip())
            cells.append((piece.strip(), lineno, col + lead))
            col += len(piece) + 1
        if names is None and not rows and not all(_is_number(c) for c, _, _ in cells):
            names = [c for c, _, _ in cells]
            continue
        rows.append(cells)
    if not rows:
        raise ParseError("no matrix rows", 1, 1)
    width = len(rows[0])
    for cells in rows:
        if len(cells) != width:
            raise ParseError(f"row has {len(cells)} entries, expected {width}", cells[0][1], 1)
    if len(rows) != width:
        raise ParseError(f"{len(rows)} rows for {width} columns", rows[-1][0][1], 1)
    matrix = [[_cell(*c) for c in cells] for cells in rows]
    return matrix, names


def _parse_json(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    names = None
    if isinstance(doc, dict):
        names, doc = doc.get("names"), doc.get("matrix")
    if not isinstance(doc, list) or not doc or not all(isinstance(r, list) for r in doc):
        raise ParseError("expected a nonempty list of rows", 1, 1)
    matrix = []
    for i, row in enumerate(doc):
        if len(row) != len(doc):
            raise ParseError(f"row {i} has {len(row)} entries, expected {len(doc)}", 1, 1)
        out = []
        for j, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, (int, str)):
                raise ParseError(f"entry ({i},{j}) must be an integer or a string", 1, 1)
            out.append(_cell(str(v), 1, 1))
        matrix.append(out)
    return matrix, names


def parse_matrix(text: str, format: str = "csv") -> UltraSpace:
    if format == "csv":
        matrix, names = _parse_csv(text)
    elif format == "json":
        matrix, names = _parse_json(text)
    else:
        raise ValueError(f"unknown matrix format {format!r}")
    return validate(matrix, names)


def emit_matrix(space: UltraSpace, format: str = "csv") -> str:
    if format == "csv":
        lines = [",".join(space.points)]
        lines += [",".join(str(v) for v in row) for row in space.dist]
        return "\n".join(lines) + "\n"
    if format == "json":
        doc = {"names": list(space.points), "matrix": [[str(v) for v in row] for row in space.dist]}
        return json.dumps(doc, indent=2) + "\n"
    raise ValueError(f"unknown matrix format {format!r}")


_TOKEN = re.compile(r"\s*(?:(\()|(\))|([^\s()]+))")


def _tokens(text: str):
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        skipped = text[pos:m.start(m.lastindex)]
        for k, ch in enumerate(skipped):
            if ch == "\n":
                line, line_start = line + 1, pos + k + 1
        start = m.start(m.lastindex)
        yield m.group(m.lastindex), line, start - line_start + 1
        pos = m.end()


def parse_tree(text: str) -> RootedTree:
    """Parse a nested expression into a labeled tree, or a plain one if every
    label is ``*``.  Nodes are numbered in preorder."""
    toks = list(_tokens(text))
    if not toks:
        raise ParseError("empty tree", 1, 1)
    children: list[list[int]] = []
    labels: list = []
    kinds: set[str] = set()
    i = 0

    def atom(tok, line, col):
        if tok == "*":
            kinds.add("plain")
            if "labeled" in kinds:
                raise MixedLabeling("labeled and unlabeled nodes mixed", line, col)
            return None
        kinds.add("labeled")
        if "plain" in kinds:
            raise MixedLabeling("labeled and unlabeled nodes mixed", line, col)
        return _cell(tok, line, col)

    def node():
        nonlocal i
        if i >= len(toks):
            line, col = toks[-1][1], toks[-1][2]
            raise ParseError("unexpected end of input", line, col)
        tok, line, col = toks[i]
        v = len(children)
        children.append([])
        labels.append(None)
        if tok == ")":
            raise ParseError("unexpected ')'", line, col)
        if tok != "(":
            i += 1
            labels[v] = atom(tok, line, col)
            return v
        i += 1
        if i >= len(toks) or toks[i][0] in "()":
            where = toks[i] if i < len(toks) else toks[-1]
            raise ParseError("a node must start with its label", where[1], where[2])
        labels[v] = atom(*toks[i])
        i += 1
        while True:
            if i >= len(toks):
                raise ParseError("missing ')'", toks[-1][1], toks[-1][2])
            if toks[i][0] == ")":
                i += 1
                return v
            children[v].append(node())

    node()
    if i != len(toks):
        raise ParseError("trailing input after the tree", toks[i][1], toks[i][2])
    kids = tuple(map(tuple, children))
    if "plain" in kinds:
        return RootedTree(kids)
    return LabeledRootedTree(kids, 0, tuple(labels))


def emit_sexpr(tree: RootedTree) -> str:
    labeled = isinstance(tree, LabeledRootedTree)

    def rec(v):
        tag = str(tree.labels[v]) if labeled else "*"
        if not tree.children[v]:
            return tag
        return "(" + " ".join([tag] + [rec(c) for c in tree.children[v]]) + ")"

    return rec(tree.root)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def emit_dot(obj, names=None) -> str:
    """DOT text for a tree (digraph, root first) or a simple graph."""
    if isinstance(obj, SimpleGraph):
        name = (lambda v: names[v]) if names else str
        lines = ["graph G {"]
        lines += [f"  {_quote(name(v))};" for v in obj.vertices]
        lines += [f"  {_quote(name(u))} -- {_quote(name(v))};" for u, v in sorted(obj.edges)]
        return "\n".join(lines + ["}"]) + "\n"
    tree = obj
    lines = ["digraph T {"]
    for v in tree.preorder:
        parts = []
        if isinstance(tree, LabeledRootedTree):
            if tree.members is not None:
                pts = tree.names or [f"x{i}" for i in range(max(map(max, tree.members)) + 1)]
                parts.append("{" + ",".join(pts[p] for p in sorted(tree.members[v])) + "}")
            parts.append(f"diam {tree.labels[v]}")
        label = "\n".join(parts) if parts else ""
        lines.append(f"  n{v} [label={_quote(label)}];")
    for v in tree.preorder:
        for c in tree.children[v]:
            lines.append(f"  n{v} -> n{c};")
    return "\n".join(lines + ["}"]) + "\n"
