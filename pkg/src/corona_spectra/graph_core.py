"""Simple undirected graphs, named generators and classical derived graphs.

Vertices are ``0..n-1``.  Edges are stored as ``(u, v)`` with ``u < v`` and
the edge list is kept sorted; the position of an edge in that list is its
edge index, which every downstream labeling relies on.
"""

from __future__ import annotations

import io
import os
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence, TextIO, Tuple, Union

import numpy as np

from .errors import GraphValidationError, InvalidParameterError, PreconditionError

Edge = Tuple[int, int]

FAMILIES = ("path", "cycle", "complete", "empty")


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph in canonical form.

    Build instances through :func:`validate_graph` unless the edge list is
    already canonical; the constructor checks the invariants but does not
    repair them.
    """

    n: int
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise GraphValidationError(f"vertex count must be non-negative, got {self.n}")
        prev = None
        for e in self.edges:
            u, v = e
            if not (0 <= u < v < self.n):
                raise GraphValidationError(f"edge {e} is not canonical for n={self.n}")
            if prev is not None and e <= prev:
                raise GraphValidationError(f"edge list not strictly sorted at {e}")
            prev = e

    @property
    def m(self) -> int:
        return len(self.edges)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class DegreeProfile:
    degrees: Tuple[int, ...]
    regular_degree: Optional[int]

    @property
    def is_regular(self) -> bool:
        return self.regular_degree is not None


def validate_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Canonicalize an arbitrary edge list into a :class:`Graph`.

    Raises
    ------
    GraphValidationError
        On a self-loop, a duplicate edge (in either orientation) or an
        endpoint outside ``[0, n)``.
    """
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise GraphValidationError(f"vertex count must be a non-negative integer, got {n!r}")
    n = int(n)
    seen = set()
    for raw in edges:
        if len(raw) != 2:
            raise GraphValidationError(f"edge {tuple(raw)} does not have two endpoints")
        u, v = int(raw[0]), int(raw[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphValidationError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise GraphValidationError(f"edge ({u}, {v}) is a self-loop")
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise GraphValidationError(f"edge ({u}, {v}) duplicates {e}")
        seen.add(e)
    return Graph(n, tuple(sorted(seen)))


def make_named_graph(family: str, k: int) -> Graph:
    if k < 1:
        raise InvalidParameterError(f"{family} graph needs k >= 1, got {k}")
    if family == "path":
        edges = [(i, i + 1) for i in range(k - 1)]
    elif family == "cycle":
        if k < 3:
            raise InvalidParameterError(f"cycle needs k >= 3, got {k}")
        edges = [(i, i + 1) for i in range(k - 1)] + [(0, k - 1)]
    elif family == "complete":
        edges = list(combinations(range(k), 2))
    elif family == "empty":
        edges = []
    else:
        raise InvalidParameterError(f"unknown graph family {family!r}; expected one of {FAMILIES}")
    return validate_graph(k, edges)


def degree_profile(G: Graph) -> DegreeProfile:
    deg = [0] * G.n
    for u, v in G.edges:
        deg[u] += 1
        deg[v] += 1
    regular = deg[0] if deg and all(d == deg[0] for d in deg) else None
    return DegreeProfile(tuple(deg), regular)


def subdivision(G: Graph) -> Graph:
    """Insert a vertex ``n + j`` into edge ``j`` of ``G``."""
    edges = []
    for j, (u, v) in enumerate(G.edges):
        edges.append((u, G.n + j))
        edges.append((v, G.n + j))
    return validate_graph(G.n + G.m, edges)


def line_graph(G: Graph) -> Graph:
    incident = [[] for _ in range(G.n)]
    for j, (u, v) in enumerate(G.edges):
        incident[u].append(j)
        incident[v].append(j)
    edges = set()
    for inc in incident:
        edges.update(combinations(inc, 2))
    return validate_graph(G.m, edges)


def incidence_matrix(G: Graph) -> np.ndarray:
    """Vertex-edge incidence matrix, shape ``(n, m)``, integer entries."""
    R = np.zeros((G.n, G.m), dtype=np.int64)
    for j, (u, v) in enumerate(G.edges):
        R[u, j] = 1
        R[v, j] = 1
    return R


def adjacency_lists(G: Graph) -> list:
    adj = [[] for _ in range(G.n)]
    for u, v in G.edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


def connected_component_count(G: Graph) -> int:
    if G.n == 0:
        raise PreconditionError("component count is undefined for the null graph")
    adj = adjacency_lists(G)
    seen = [False] * G.n
    count = 0
    for s in range(G.n):
        if seen[s]:
            continue
        count += 1
        seen[s] = True
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
    return count


def is_connected(G: Graph) -> bool:
    return G.n >= 1 and connected_component_count(G) == 1


def permute_vertices(G: Graph, perm: Sequence[int]) -> Graph:
    """Relabel vertex ``v`` as ``perm[v]``."""
    if sorted(perm) != list(range(G.n)):
        raise InvalidParameterError("perm must be a permutation of range(n)")
    return validate_graph(G.n, [(perm[u], perm[v]) for u, v in G.edges])


# -- edge-list text format ---------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse the ``n m`` header followed by ``m`` lines of ``u v``.

    Blank lines and lines starting with ``#`` are ignored.
    """
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        if len(parts) != 2:
            raise GraphValidationError(f"line {lineno}: expected two integers, got {s!r}")
        try:
            rows.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphValidationError(f"line {lineno}: non-integer token in {s!r}") from None
    if not rows:
        raise GraphValidationError("missing 'n m' header")
    (n, m), body = rows[0], rows[1:]
    if n < 0 or m < 0:
        raise GraphValidationError(f"header must be non-negative, got '{n} {m}'")
    if len(body) != m:
        raise GraphValidationError(f"header declares {m} edges but {len(body)} were given")
    return validate_graph(n, body)


def format_edge_list(G: Graph) -> str:
    lines = [f"{G.n} {G.m}"]
    lines += [f"{u} {v}" for u, v in G.edges]
    return "\n".join(lines) + "\n"


PathOrFile = Union[str, os.PathLike, TextIO]


def read_graph(source: PathOrFile) -> Graph:
    if isinstance(source, io.TextIOBase) or hasattr(source, "read"):
        return parse_edge_list(source.read())
    with open(source, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def write_graph(G: Graph, dest: PathOrFile) -> None:
    text = format_edge_list(G)
    if hasattr(dest, "write"):
        dest.write(text)
        return
    with open(dest, "w", encoding="utf-8") as fh:
        fh.write(text)
