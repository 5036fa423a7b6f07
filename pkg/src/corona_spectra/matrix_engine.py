"""Dense graph matrices, the block form of the corona normalized Laplacian,
and the symmetric eigensolver used as the reference for every closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .corona_ops import CoronaKind, CoronaOperands
from .errors import BlockAssemblyError, PoleError, UndefinedMatrixError
from .graph_core import Graph, degree_profile, incidence_matrix, line_graph

DEFAULT_GROUPING_TOL = 1e-7

MATRIX_KINDS = ("adjacency", "degree", "laplacian", "signless_laplacian", "normalized_laplacian")


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Sorted multiset of real eigenvalues.

    ``values`` holds every eigenvalue (multiplicities expanded) in ascending
    order.  :attr:`entries` groups runs of values whose consecutive gaps are
    at most ``grouping_tol``; each group is reported by its mean.
    """

    values: np.ndarray
    grouping_tol: float = DEFAULT_GROUPING_TOL

    def __post_init__(self):
        vals = np.sort(np.asarray(self.values, dtype=float).ravel())
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_entries(cls, entries: Iterable[Tuple[float, int]], grouping_tol: float = DEFAULT_GROUPING_TOL):
        vals = [v for v, k in entries for _ in range(k)]
        return cls(np.array(vals, dtype=float), grouping_tol)

    @property
    def order(self) -> int:
        return len(self.values)

    @property
    def entries(self) -> List[Tuple[float, int]]:
        out = []
        vals = self.values
        i = 0
        while i < len(vals):
            j = i + 1
            while j < len(vals) and vals[j] - vals[j - 1] <= self.grouping_tol:
                j += 1
            out.append((float(np.mean(vals[i:j])), j - i))
            i = j
        return out

    def multiplicity(self, value: float, tol: Optional[float] = None) -> int:
        tol = self.grouping_tol if tol is None else tol
        return sum(k for v, k in self.entries if abs(v - value) <= tol)

    def nonzero(self, tol: Optional[float] = None) -> np.ndarray:
        tol = self.grouping_tol if tol is None else tol
        return self.values[np.abs(self.values) > tol]

    def max_deviation(self, other: "Spectrum") -> float:
        if self.order != other.order:
            return math.inf
        if self.order == 0:
            return 0.0
        return float(np.max(np.abs(self.values - other.values)))

    def to_dict(self, method: str, max_deviation_vs_oracle: Optional[float] = None) -> dict:
        d = {
            "order": self.order,
            "entries": [{"value": v, "multiplicity": k} for v, k in self.entries],
            "method": method,
        }
        if max_deviation_vs_oracle is not None:
            d["max_deviation_vs_oracle"] = max_deviation_vs_oracle
        return d

    def __repr__(self):
        body = ", ".join(f"{v:.6g}" + (f"x{k}" if k > 1 else "") for v, k in self.entries)
        return f"Spectrum({{{body}}})"


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def adjacency_matrix(G: Graph) -> np.ndarray:
    A = np.zeros((G.n, G.n))
    if G.m:
        u, v = np.array(G.edges).T
        A[u, v] = 1.0
        A[v, u] = 1.0
    return A


def matrix_of(G: Graph, kind: str) -> np.ndarray:
    """Return ``A``, ``D``, ``L = D - A``, ``Q = D + A`` or the normalized Laplacian.

    The normalized Laplacian of an edgeless graph is the zero matrix.  A
    graph that has both isolated and non-isolated vertices is rejected
    with :class:`UndefinedMatrixError`.
    """
    A = adjacency_matrix(G)
    d = A.sum(axis=1)
    if kind == "adjacency":
        M = A
    elif kind == "degree":
        M = np.diag(d)
    elif kind == "laplacian":
        M = np.diag(d) - A
    elif kind == "signless_laplacian":
        M = np.diag(d) + A
    elif kind == "normalized_laplacian":
        if G.m == 0:
            M = np.zeros((G.n, G.n))
        elif np.any(d == 0):
            isolated = int(np.flatnonzero(d == 0)[0])
            raise UndefinedMatrixError(
                f"normalized Laplacian undefined: vertex {isolated} is isolated but the graph has edges")
        else:
            s = 1.0 / np.sqrt(d)
            M = np.eye(G.n) - s[:, None] * A * s[None, :]
    else:
        raise ValueError(f"unknown matrix kind {kind!r}; expected one of {MATRIX_KINDS}")
    return _frozen(M)


def symmetric_eigenvalues(M: np.ndarray, grouping_tol: float = DEFAULT_GROUPING_TOL) -> Spectrum:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if not np.array_equal(M, M.T):
        raise ValueError("matrix is not symmetric")
    if M.shape[0] == 0:
        return Spectrum(np.empty(0), grouping_tol)
    return Spectrum(np.linalg.eigvalsh(M), grouping_tol)


def normalized_laplacian_spectrum(G: Graph, grouping_tol: float = DEFAULT_GROUPING_TOL) -> Spectrum:
    return symmetric_eigenvalues(matrix_of(G, "normalized_laplacian"), grouping_tol)


def coronal_constant_row_sum(n: int, t: float, lam: float) -> float:
    """Sum of the entries of ``(lam*I - M)^-1`` for ``M`` of order ``n`` with row sums ``t``."""
    if lam == t:
        raise PoleError(f"coronal has a pole at lambda = t = {t}")
    return n / (lam - t)


def block_scalars(kind, ops: CoronaOperands) -> dict:
    """Scalars of the block form: ``a``, the entries of ``b`` and ``c``, and the
    denominators of the two diagonal copy blocks."""
    kind = CoronaKind.parse(kind)
    r1, r2, r3, n2, n3 = ops.r1, ops.r2, ops.r3, ops.n2, ops.n3
    if kind is CoronaKind.SVEV:
        inserted = 2 * n2 + n3 + 2
        return {
            "a": 1.0 / math.sqrt(r1 * inserted),
            "b": 1.0 / math.sqrt((r1 + r2) * inserted),
            "c": 1.0 / math.sqrt((r3 + 1) * inserted),
            "den2": r1 + r2,
            "den3": r3 + 1,
        }
    original = r1 * n2 + r1 + n3
    return {
        "a": 1.0 / math.sqrt(2 * original),
        "b": 1.0 / math.sqrt((r2 + 2) * original),
        "c": 1.0 / math.sqrt((r3 + 1) * original),
        "den2": r2 + 2,
        "den3": r3 + 1,
    }


def assemble_block_normalized_laplacian(kind, ops: CoronaOperands) -> np.ndarray:
    """Normalized Laplacian of the corona assembled block by block.

    Diagonal copy blocks use ``I - A(Gk)/den``, which stays defined for
    edgeless ``Gk``.
    """
    kind = CoronaKind.parse(kind)
    if not ops.is_regular:
        raise BlockAssemblyError("block form needs regular operands")
    if ops.r1 < 1 or ops.n2 < 1 or ops.n3 < 1:
        raise BlockAssemblyError(f"block form needs r1 >= 1, n2 >= 1, n3 >= 1 (got {ops.r1}, {ops.n2}, {ops.n3})")
    s = block_scalars(kind, ops)
    R = incidence_matrix(ops.g1).astype(float)
    n1, m1, n2, n3 = ops.n1, ops.m1, ops.n2, ops.n3
    b = np.full((n2, 1), s["b"])
    c = np.full((n3, 1), s["c"])
    diag2 = np.eye(n2) - adjacency_matrix(ops.g2) / s["den2"]
    diag3 = np.eye(n3) - adjacency_matrix(ops.g3) / s["den3"]
    aR = -s["a"] * R
    if kind is CoronaKind.SVEV:
        Z = np.zeros
        blocks = [
            [np.eye(n1), aR, Z((n1, n1 * n2)), Z((n1, m1 * n3))],
            [aR.T, np.eye(m1), -np.kron(R.T, b.T), -np.kron(np.eye(m1), c.T)],
            [Z((n1 * n2, n1)), -np.kron(R, b), np.kron(np.eye(n1), diag2), Z((n1 * n2, m1 * n3))],
            [Z((m1 * n3, n1)), -np.kron(np.eye(m1), c), Z((m1 * n3, n1 * n2)), np.kron(np.eye(m1), diag3)],
        ]
    else:
        Z = np.zeros
        blocks = [
            [np.eye(n1), aR, -np.kron(R, b.T), -np.kron(np.eye(n1), c.T)],
            [aR.T, np.eye(m1), Z((m1, m1 * n2)), Z((m1, n1 * n3))],
            [-np.kron(R.T, b), Z((m1 * n2, m1)), np.kron(np.eye(m1), diag2), Z((m1 * n2, n1 * n3))],
            [-np.kron(np.eye(n1), c), Z((n1 * n3, m1)), Z((n1 * n3, m1 * n2)), np.kron(np.eye(n1), diag3)],
        ]
    return _frozen(np.block(blocks))


# -- line graph characteristic polynomial identity ------------------------------

@dataclass(frozen=True)
class LineGraphIdentityReport:
    sample_points: Tuple[float, ...]
    lhs: Tuple[float, ...]
    rhs_signless: Tuple[float, ...]
    rhs_normalized: Optional[Tuple[float, ...]]
    max_rel_discrepancy: float
    tol: float

    @property
    def ok(self) -> bool:
        return self.max_rel_discrepancy <= self.tol


def _charpoly_at(eigs: np.ndarray, x: float) -> float:
    return float(np.prod(x - eigs))


def _rel_discrepancy(a: float, b: float, scale: float) -> float:
    # near a common root both sides vanish; fall back to the magnitude scale
    denom = max(abs(a), abs(b))
    if denom <= 1e-9 * scale:
        denom = scale
    return abs(a - b) / denom if denom else 0.0


def line_graph_charpoly_identity_check(G: Graph, sample_points: Sequence[float],
                                       tol: float = 1e-9) -> LineGraphIdentityReport:
    """Compare ``det(xI - A(l(G)))`` with ``(x+2)^(m-n) det((x+2)I - Q(G))``.

    For a regular graph the right-hand side is also evaluated from the
    normalized Laplacian eigenvalues as
    ``(x+2)^(m-n) prod(x - (2r-2) + r*lam_i)``.
    """
    n, m = G.n, G.m
    adj_line = np.linalg.eigvalsh(matrix_of(line_graph(G), "adjacency")) if m else np.empty(0)
    q = np.linalg.eigvalsh(matrix_of(G, "signless_laplacian")) if n else np.empty(0)
    r = degree_profile(G).regular_degree
    lam = np.linalg.eigvalsh(matrix_of(G, "normalized_laplacian")) if (r is not None and n) else None

    rho_line = float(np.abs(adj_line).max()) if m else 0.0
    rho_q = float(np.abs(q).max()) if n else 0.0
    lhs, rhs_q, rhs_l = [], [], []
    worst = 0.0
    for x in sample_points:
        x = float(x)
        if m - n < 0 and x == -2.0:
            raise PoleError("identity has a pole at x = -2 when m < n")
        left = _charpoly_at(adj_line, x)
        shift = (x + 2.0) ** (m - n)
        right = shift * _charpoly_at(q, x + 2.0)
        # rounding of each product is bounded relative to these magnitudes
        scale = max((abs(x) + rho_line) ** m,
                    abs(x + 2.0) ** (m - n) * (abs(x + 2.0) + rho_q) ** n, 1e-300)
        worst = max(worst, _rel_discrepancy(left, right, scale))
        lhs.append(left)
        rhs_q.append(right)
        if lam is not None:
            right_l = shift * float(np.prod(x - (2 * r - 2) + r * lam))
            worst = max(worst, _rel_discrepancy(left, right_l, scale))
            rhs_l.append(right_l)
    return LineGraphIdentityReport(
        tuple(float(x) for x in sample_points), tuple(lhs), tuple(rhs_q),
        tuple(rhs_l) if lam is not None else None, worst, tol)


# -- plain-text matrix dump ------------------------------------------------------

def format_matrix(M: np.ndarray) -> str:
    M = np.asarray(M, dtype=float)
    lines = [str(M.shape[0])]
    lines += [" ".join(f"{x:.17g}" for x in row) for row in M]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    order = int(rows[0][0])
    M = np.array([[float(x) for x in r] for r in rows[1:]], dtype=float).reshape(order, order)
    return M
