"""Text file formats: spaces (.msp), correspondences (.corr), hedgehogs (.hh),
gluing trees (.tree), chains (.chain).

Rationals are written `p/q` (or a bare integer) everywhere, so files
round-trip losslessly.  Lines starting with `#` and blank lines are ignored
in every format.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .correspondences import Correspondence
from .dynamics import ThreadChain
from .gluing import GluedSpace, GluingTree
from .hedgehogs import HedgehogSpec
from .spaces import PSEUDO, STRICT, FiniteMetricSpace, validate


class ParseError(ValueError):
    def __init__(self, path: str | Path, line: int, message: str) -> None:
        super().__init__(f"{path}:{line}: {message}")


def parse_fraction(token: str) -> Fraction:
    try:
        if "/" in token:
            num, den = token.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(token))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational {token!r}") from exc


def format_fraction(value: Fraction) -> str:
    return str(value)


def _content_lines(text: str) -> list[tuple[int, str]]:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            lines.append((lineno, stripped))
    return lines


# ---------------------------------------------------------------------------
# spaces


def dump_space(space: FiniteMetricSpace) -> str:
    out = [f"points {len(space)} {space.mode}"]
    out.append(" ".join(space.labels))
    for row in space.dist:
        out.append(" ".join(format_fraction(x) for x in row))
    return "\n".join(out) + "\n"


def parse_space(text: str, source: str | Path = "<string>") -> FiniteMetricSpace:
    lines = _content_lines(text)
    if not lines:
        raise ParseError(source, 1, "empty space file")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 3 or parts[0] != "points":
        raise ParseError(source, lineno, "expected header: points <n> <mode>")
    try:
        n = int(parts[1])
    except ValueError:
        raise ParseError(source, lineno, f"bad point count {parts[1]!r}") from None
    mode = parts[2]
    if mode not in (STRICT, PSEUDO):
        raise ParseError(source, lineno, f"unknown mode {mode!r}")
    if len(lines) != n + 2:
        raise ParseError(
            source, lineno, f"expected {n + 2} content lines, found {len(lines)}"
        )
    label_lineno, label_line = lines[1]
    labels = tuple(label_line.split())
    if len(labels) != n:
        raise ParseError(source, label_lineno, f"expected {n} labels")
    matrix = []
    for lineno, row_line in lines[2:]:
        tokens = row_line.split()
        if len(tokens) != n:
            raise ParseError(source, lineno, f"expected {n} entries")
        try:
            matrix.append([parse_fraction(tok) for tok in tokens])
        except ValueError as exc:
            raise ParseError(source, lineno, str(exc)) from None
    return validate(matrix, mode=mode, labels=labels)


def load_space(path: str | Path) -> FiniteMetricSpace:
    return parse_space(Path(path).read_text(), source=path)


def save_space(space: FiniteMetricSpace, path: str | Path) -> None:
    Path(path).write_text(dump_space(space))


# ---------------------------------------------------------------------------
# correspondences


def dump_correspondence(rel: Correspondence) -> str:
    return "\n".join(f"{i} {j}" for i, j in rel.sorted_pairs()) + "\n"


def parse_correspondence(
    text: str,
    left: FiniteMetricSpace,
    right: FiniteMetricSpace,
    source: str | Path = "<string>",
) -> Correspondence:
    pairs = set()
    for lineno, line in _content_lines(text):
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(source, lineno, "expected: <left index> <right index>")
        try:
            pairs.add((int(tokens[0]), int(tokens[1])))
        except ValueError:
            raise ParseError(source, lineno, "indices must be integers") from None
    try:
        return Correspondence(left, right, frozenset(pairs))
    except ValueError as exc:
        raise ParseError(source, 1, str(exc)) from None


def load_correspondence(
    path: str | Path, left: FiniteMetricSpace, right: FiniteMetricSpace
) -> Correspondence:
    return parse_correspondence(Path(path).read_text(), left, right, source=path)


def save_correspondence(rel: Correspondence, path: str | Path) -> None:
    Path(path).write_text(dump_correspondence(rel))


# ---------------------------------------------------------------------------
# hedgehogs


def dump_hedgehog(spec: HedgehogSpec) -> str:
    return (
        "\n".join(
            f"{format_fraction(length)} {mult}" for length, mult in spec.needles
        )
        + "\n"
    )


def parse_hedgehog(text: str, source: str | Path = "<string>") -> HedgehogSpec:
    pairs = []
    for lineno, line in _content_lines(text):
        tokens = line.split()
        if len(tokens) not in (1, 2):
            raise ParseError(source, lineno, "expected: <length> [multiplicity]")
        try:
            length = parse_fraction(tokens[0])
            mult = int(tokens[1]) if len(tokens) == 2 else 1
        except ValueError as exc:
            raise ParseError(source, lineno, str(exc)) from None
        pairs.append((length, mult))
    if not pairs:
        raise ParseError(source, 1, "empty hedgehog file")
    try:
        return HedgehogSpec.from_pairs(pairs)
    except ValueError as exc:
        raise ParseError(source, 1, str(exc)) from None


def load_hedgehog(path: str | Path) -> HedgehogSpec:
    return parse_hedgehog(Path(path).read_text(), source=path)


def save_hedgehog(spec: HedgehogSpec, path: str | Path) -> None:
    Path(path).write_text(dump_hedgehog(spec))


# ---------------------------------------------------------------------------
# gluing trees and chains (reference other files by relative path)


def load_gluing_tree(path: str | Path) -> GluingTree:
    """Tree file: `vertex <id> <space.msp>` lines, then `edge <u> <v> <R.corr>`."""
    path = Path(path)
    base = path.parent
    vertices: dict[int, FiniteMetricSpace] = {}
    raw_edges: list[tuple[int, int, str]] = []
    for lineno, line in _content_lines(path.read_text()):
        tokens = line.split()
        if tokens[0] == "vertex" and len(tokens) == 3:
            vertices[int(tokens[1])] = load_space(base / tokens[2])
        elif tokens[0] == "edge" and len(tokens) == 4:
            raw_edges.append((int(tokens[1]), int(tokens[2]), tokens[3]))
        else:
            raise ParseError(path, lineno, "expected vertex/edge line")
    if sorted(vertices) != list(range(len(vertices))):
        raise ParseError(path, 1, "vertex ids must be 0..n-1")
    ordered = tuple(vertices[i] for i in range(len(vertices)))
    edges = tuple(
        (u, v, load_correspondence(base / rel_path, ordered[u], ordered[v]))
        for u, v, rel_path in raw_edges
    )
    return GluingTree(ordered, edges)


def load_chain(path: str | Path) -> ThreadChain:
    """Chain file: alternating `space <X.msp>` and `link <R.corr>` lines."""
    path = Path(path)
    base = path.parent
    spaces: list[FiniteMetricSpace] = []
    link_paths: list[str] = []
    for lineno, line in _content_lines(path.read_text()):
        tokens = line.split()
        if tokens[0] == "space" and len(tokens) == 2:
            spaces.append(load_space(base / tokens[1]))
        elif tokens[0] == "link" and len(tokens) == 2:
            link_paths.append(tokens[1])
        else:
            raise ParseError(path, lineno, "expected space/link line")
    if len(link_paths) != max(len(spaces) - 1, 0):
        raise ParseError(path, 1, "a chain of k spaces needs k-1 links")
    links = tuple(
        load_correspondence(base / link_path, spaces[i], spaces[i + 1])
        for i, link_path in enumerate(link_paths)
    )
    return ThreadChain(tuple(spaces), links)


# ---------------------------------------------------------------------------
# gluing provenance sidecar


def provenance_lines(glued: GluedSpace) -> list[str]:
    return [
        f"{glued.carrier.labels[g]} {vertex} {local}"
        for g, (vertex, local) in enumerate(glued.provenance)
    ]


def dump_provenance(glued: GluedSpace) -> str:
    return "\n".join(provenance_lines(glued)) + "\n"
