"""Reading and writing networks.

Edge lists have one ``source target [weight]`` record per line; node ids
are arbitrary tokens, indexed in order of first appearance, and ``#``
starts a comment line.  The dense matrix format is a line holding ``n``
followed by ``n`` whitespace-separated rows.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DataError, ParseError

DUPLICATE_POLICIES = ("sum", "max", "last", "error")
SYMMETRIZE_POLICIES = ("mirror", "average")
CONFLICT_ATOL = 1e-9


@dataclass
class EdgeList:
    adjacency: np.ndarray
    nodes: list[str]

    @property
    def index(self) -> dict[str, int]:
        return {tok: i for i, tok in enumerate(self.nodes)}


def parse_edge_list(lines, delimiter=None, duplicate_policy="sum", symmetrize="mirror") -> EdgeList:
    """Parse edge-list ``lines`` into a dense symmetric matrix.

    Records for the same ordered pair are combined with ``duplicate_policy``.
    The matrix is then symmetrised: ``mirror`` copies each entry to its
    transpose and fails if both directions were given with different
    weights; ``average`` takes the mean of the two directions, treating a
    missing direction as equal to the one given.
    """
    if duplicate_policy not in DUPLICATE_POLICIES:
        raise ValueError(f"duplicate_policy must be one of {DUPLICATE_POLICIES}")
    if symmetrize not in SYMMETRIZE_POLICIES:
        raise ValueError(f"symmetrize must be one of {SYMMETRIZE_POLICIES}")

    nodes: dict[str, int] = {}
    weights: dict[tuple[int, int], float] = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split(delimiter)
        fields = [f.strip() for f in fields]
        if len(fields) not in (2, 3) or not all(fields):
            raise ParseError(f"expected 'source target [weight]', got {line!r}", lineno)
        if len(fields) == 3:
            try:
                w = float(fields[2])
            except ValueError:
                raise ParseError(f"weight {fields[2]!r} is not a number", lineno) from None
            if not math.isfinite(w):
                raise ParseError(f"weight {fields[2]!r} is not finite", lineno)
        else:
            w = 1.0
        i = nodes.setdefault(fields[0], len(nodes))
        j = nodes.setdefault(fields[1], len(nodes))
        key = (i, j)
        if key in weights:
            if duplicate_policy == "sum":
                w = weights[key] + w
            elif duplicate_policy == "max":
                w = max(weights[key], w)
            elif duplicate_policy == "error":
                raise DataError(f"line {lineno}: duplicate edge {fields[0]} {fields[1]}")
        weights[key] = w

    n = len(nodes)
    if n == 0:
        raise ParseError("edge list has no edges")
    A = np.zeros((n, n))
    for (i, j), w in weights.items():
        if i == j:
            A[i, i] = w
            continue
        back = weights.get((j, i))
        if back is None:
            A[i, j] = A[j, i] = w
        elif symmetrize == "mirror":
            if abs(back - w) > CONFLICT_ATOL:
                raise DataError(f"conflicting weights for {_tok(nodes, i)}-{_tok(nodes, j)}: {w} vs {back}")
            A[i, j] = A[j, i] = w
        else:
            A[i, j] = A[j, i] = (w + back) / 2.0
    return EdgeList(A, list(nodes))


def _tok(nodes, idx):
    for tok, i in nodes.items():
        if i == idx:
            return tok
    return str(idx)


def read_edge_list(path, delimiter=None, duplicate_policy="sum", symmetrize="mirror") -> EdgeList:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh, delimiter, duplicate_policy, symmetrize)


def write_edge_list(path, A, nodes=None) -> None:
    """Write the upper triangle (diagonal included) of ``A`` as ``i j w`` lines."""
    A = np.asarray(A, dtype=float)
    nodes = nodes if nodes is not None else [str(i + 1) for i in range(A.shape[0])]
    with open(path, "w", encoding="utf-8") as fh:
        for i, j in zip(*np.nonzero(np.triu(A))):
            fh.write(f"{nodes[i]} {nodes[j]} {format_number(A[i, j])}\n")


def format_number(x: float) -> str:
    """Shortest decimal that round-trips, without a trailing ``.0``."""
    x = float(x)
    if x.is_integer() and abs(x) < 2**53:
        return str(int(x))
    return repr(x)


def write_matrix(path, A) -> None:
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise ValueError(f"need a non-empty square matrix, got shape {A.shape}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{A.shape[0]}\n")
        for row in A:
            fh.write(" ".join(format_number(x) for x in row))
            fh.write("\n")


def parse_matrix(lines) -> np.ndarray:
    rows = []
    n = None
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            try:
                n = int(line)
            except ValueError:
                raise ParseError(f"expected the matrix size, got {line!r}", lineno) from None
            if n < 1:
                raise ParseError(f"matrix size must be positive, got {n}", lineno)
            continue
        try:
            row = [float(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"non-numeric entry in {line!r}", lineno) from None
        if len(row) != n:
            raise ParseError(f"row has {len(row)} entries, expected {n}", lineno)
        rows.append(row)
    if n is None:
        raise ParseError("empty matrix file")
    if len(rows) != n:
        raise ParseError(f"found {len(rows)} rows, expected {n}")
    A = np.array(rows, dtype=float)
    if not np.all(np.isfinite(A)):
        raise ParseError("matrix has non-finite entries")
    return A


def read_matrix(path) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh)


def sniff_format(path) -> str:
    """``"matrix"`` if the first data line is a single token, else ``"edges"``."""
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if line and not line.startswith("#"):
                return "matrix" if len(line.split()) == 1 else "edges"
    raise ParseError(f"{path}: no data lines")


def read_network(path, fmt: str = "auto", **edge_options) -> np.ndarray:
    """Load a matrix file or an edge list as a dense adjacency matrix."""
    path = Path(path)
    if fmt == "auto":
        fmt = sniff_format(path)
    if fmt == "matrix":
        return read_matrix(path)
    if fmt == "edges":
        return read_edge_list(path, **edge_options).adjacency
    raise ValueError(f"unknown network format {fmt!r}")


def write_labels(path, labels) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for lab in labels:
            fh.write(f"{int(lab)}\n")
