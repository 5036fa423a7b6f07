"""SVEV- and SVEE-corona constructions.

Both constructions start from the subdivision graph ``S(G1)`` and attach
copies of ``G2`` and ``G3``.  Vertices are laid out in four contiguous
blocks:

==========  ============================  ============================
block       SVEV                          SVEE
==========  ============================  ============================
original    ``V(G1)``, ``0..n1-1``        same
inserted    ``I(G1)``, one per G1 edge    same
third       ``n1`` copies of ``G2``       ``m1`` copies of ``G2``
fourth      ``m1`` copies of ``G3``       ``n1`` copies of ``G3``
==========  ============================  ============================

Inside a copy, vertices keep the internal order of the copied graph, so
the adjacency and normalized Laplacian line up positionally with the
block formulas in :mod:`corona_spectra.matrix_engine`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

from .errors import ClosedFormInapplicableError, InvalidParameterError, PreconditionError
from .graph_core import Graph, degree_profile, is_connected, make_named_graph, validate_graph


class CoronaKind(str, enum.Enum):
    SVEV = "svev"
    SVEE = "svee"

    @classmethod
    def parse(cls, value) -> "CoronaKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise InvalidParameterError(f"unknown corona kind {value!r}; expected 'svev' or 'svee'") from None


@dataclass(frozen=True)
class CoronaOperands:
    """The operand triple ``(G1, G2, G3)`` with its counts and regularities.

    ``r1``/``r2``/``r3`` are ``None`` for non-regular operands.
    Constructions accept any operands; closed forms call
    :meth:`require_closed_form` first.
    """

    g1: Graph
    g2: Graph
    g3: Graph
    r1: Optional[int] = field(init=False)
    r2: Optional[int] = field(init=False)
    r3: Optional[int] = field(init=False)

    def __post_init__(self):
        for name, g in (("r1", self.g1), ("r2", self.g2), ("r3", self.g3)):
            # a null graph is vacuously 0-regular
            r = degree_profile(g).regular_degree if g.n else 0
            object.__setattr__(self, name, r)

    n1 = property(lambda self: self.g1.n)
    n2 = property(lambda self: self.g2.n)
    n3 = property(lambda self: self.g3.n)
    m1 = property(lambda self: self.g1.m)
    m2 = property(lambda self: self.g2.m)
    m3 = property(lambda self: self.g3.m)

    @property
    def is_regular(self) -> bool:
        return None not in (self.r1, self.r2, self.r3)

    def require_regular(self) -> None:
        if not self.is_regular:
            raise PreconditionError(
                f"operands must be regular (r1, r2, r3) = ({self.r1}, {self.r2}, {self.r3})")

    def require_closed_form(self) -> None:
        """Raise :class:`ClosedFormInapplicableError` unless the closed forms apply."""
        problems = []
        if not self.is_regular:
            problems.append(f"non-regular operand (r1, r2, r3) = ({self.r1}, {self.r2}, {self.r3})")
        if self.n1 < 2 or self.m1 < 1 or not is_connected(self.g1):
            problems.append("G1 must be connected with n1 >= 2")
        if self.n2 < 1 or self.n3 < 1:
            problems.append("G2 and G3 must be non-null")
        if problems:
            raise ClosedFormInapplicableError("; ".join(problems))


def _copy_edges(g: Graph, offset: int):
    return [(offset + u, offset + v) for u, v in g.edges]


def svev_corona(ops: CoronaOperands) -> Graph:
    g1, g2, g3 = ops.g1, ops.g2, ops.g3
    n1, m1, n2, n3 = g1.n, g1.m, g2.n, g3.n
    base2 = n1 + m1
    base3 = base2 + n1 * n2
    edges = []
    for j, (u, v) in enumerate(g1.edges):
        e = n1 + j
        edges += [(u, e), (v, e)]
        for w in (u, v):
            edges += [(e, base2 + w * n2 + t) for t in range(n2)]
        edges += [(e, base3 + j * n3 + t) for t in range(n3)]
    for i in range(n1):
        edges += _copy_edges(g2, base2 + i * n2)
    for j in range(m1):
        edges += _copy_edges(g3, base3 + j * n3)
    return validate_graph(base3 + m1 * n3, edges)


def svee_corona(ops: CoronaOperands) -> Graph:
    g1, g2, g3 = ops.g1, ops.g2, ops.g3
    n1, m1, n2, n3 = g1.n, g1.m, g2.n, g3.n
    base2 = n1 + m1
    base3 = base2 + m1 * n2
    edges = []
    for j, (u, v) in enumerate(g1.edges):
        e = n1 + j
        edges += [(u, e), (v, e)]
        for w in (u, v):
            edges += [(w, base2 + j * n2 + t) for t in range(n2)]
        edges += _copy_edges(g2, base2 + j * n2)
    for i in range(n1):
        edges += [(i, base3 + i * n3 + t) for t in range(n3)]
        edges += _copy_edges(g3, base3 + i * n3)
    return validate_graph(base3 + n1 * n3, edges)


def build_corona(kind, ops: CoronaOperands) -> Graph:
    kind = CoronaKind.parse(kind)
    return svev_corona(ops) if kind is CoronaKind.SVEV else svee_corona(ops)


def predicted_counts(kind, ops: CoronaOperands) -> Tuple[int, int]:
    kind = CoronaKind.parse(kind)
    n1, n2, n3, m1, m2, m3 = ops.n1, ops.n2, ops.n3, ops.m1, ops.m2, ops.m3
    if kind is CoronaKind.SVEV:
        return (n1 + m1 + n1 * n2 + m1 * n3,
                2 * m1 + n1 * m2 + m1 * m3 + 2 * m1 * n2 + m1 * n3)
    return (n1 + m1 + m1 * n2 + n1 * n3,
            2 * m1 + m1 * m2 + n1 * m3 + n1 * n3 + 2 * m1 * n2)


VERTEX_CLASSES = ("original", "inserted", "g2copy", "g3copy")


def predicted_degrees(kind, ops: CoronaOperands) -> Dict[str, int]:
    """Degree of each vertex class of a corona built from regular operands."""
    kind = CoronaKind.parse(kind)
    if not ops.is_regular:
        raise PreconditionError("predicted degrees need regular operands")
    r1, r2, r3, n2, n3 = ops.r1, ops.r2, ops.r3, ops.n2, ops.n3
    if kind is CoronaKind.SVEV:
        degs = (r1, 2 * n2 + n3 + 2, r1 + r2, r3 + 1)
    else:
        degs = ((n2 + 1) * r1 + n3, 2, r2 + 2, r3 + 1)
    return dict(zip(VERTEX_CLASSES, degs))


def vertex_classes(kind, ops: CoronaOperands) -> Tuple[str, ...]:
    """Class label of every vertex of the constructed corona, in index order."""
    kind = CoronaKind.parse(kind)
    n1, m1, n2, n3 = ops.n1, ops.m1, ops.n2, ops.n3
    if kind is CoronaKind.SVEV:
        sizes = (n1, m1, n1 * n2, m1 * n3)
    else:
        sizes = (n1, m1, m1 * n2, n1 * n3)
    out = []
    for label, size in zip(VERTEX_CLASSES, sizes):
        out += [label] * size
    return tuple(out)


# -- random regular operands -------------------------------------------------

def _matching(k: int) -> Graph:
    return validate_graph(k, [(2 * i, 2 * i + 1) for i in range(k // 2)])


def _random_factor(rng: np.random.Generator, max_n: int) -> Graph:
    """A small regular graph, possibly disconnected or edgeless."""
    choices = [("complete", k) for k in range(1, max_n + 1)]
    choices += [("cycle", k) for k in range(3, max_n + 1)]
    choices += [("empty", k) for k in range(2, max_n + 1)]
    choices += [("matching", k) for k in range(4, max_n + 1, 2)]
    family, k = choices[rng.integers(len(choices))]
    return _matching(k) if family == "matching" else make_named_graph(family, k)


def random_regular_operands(rng: np.random.Generator, max_n1: int = 10, max_n: int = 4) -> CoronaOperands:
    """Draw a random operand triple satisfying the closed-form hypotheses.

    ``G1`` is a cycle or complete graph on at most ``max_n1`` vertices;
    ``G2`` and ``G3`` are small regular graphs on at most ``max_n`` vertices.
    """
    if max_n1 < 2 or max_n < 1:
        raise InvalidParameterError("need max_n1 >= 2 and max_n >= 1")
    g1_choices = [("complete", k) for k in range(2, max_n1 + 1)]
    g1_choices += [("cycle", k) for k in range(3, max_n1 + 1)]
    family, k = g1_choices[rng.integers(len(g1_choices))]
    g1 = make_named_graph(family, k)
    return CoronaOperands(g1, _random_factor(rng, max_n), _random_factor(rng, max_n))
