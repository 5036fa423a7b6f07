"""Spanning trees, multiplicative degree-Kirchhoff index, Kemeny's constant
and normalized Laplacian cospectrality.

Each invariant has a generic spectral route (any connected graph), a
closed form for SVEV/SVEE coronas in terms of the operand spectra, and an
independent oracle (exact matrix-tree determinant, effective resistances).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from .closed_form import _drop_one_zero, _theta_values, operand_spectra, quartic_coefficients
from .corona_ops import CoronaKind, CoronaOperands, build_corona, predicted_counts
from .errors import ClosedFormInapplicableError, ConsistencyError, PreconditionError
from .graph_core import Graph, DegreeProfile, degree_profile, is_connected
from .matrix_engine import DEFAULT_GROUPING_TOL, Spectrum, matrix_of, normalized_laplacian_spectrum

COSPECTRAL_TOL = 1e-7

# Characteristic polynomial (descending powers, x^14 first) shared by a pair of
# 14-vertex A-cospectral, non-isomorphic graphs.  Only the polynomial is
# known here; compare candidate graphs with ``adjacency_charpoly``.
A_COSPECTRAL_PAIR_CHARPOLY = (1, 0, -21, -2, 164, 22, -599, -88, 1047, 168, -800, -160, 216, 40, -12)


def _require_connected(G: Graph, what: str) -> None:
    if not is_connected(G):
        raise PreconditionError(f"{what} requires a connected graph")


def _nonzero_eigenvalues(G: Graph, spec: Spectrum) -> np.ndarray:
    # connected graph: exactly one zero, the smallest
    if spec.order != G.n:
        raise PreconditionError(f"spectrum has order {spec.order}, graph has {G.n} vertices")
    return np.asarray(spec.values[1:])


# -- spanning trees ---------------------------------------------------------------

def spanning_trees_exact(G: Graph) -> int:
    """Matrix-tree count via fraction-free (Bareiss) elimination in integers."""
    n = G.n
    if n <= 1:
        return 1
    deg = degree_profile(G).degrees
    M = [[0] * (n - 1) for _ in range(n - 1)]
    for i in range(1, n):
        M[i - 1][i - 1] = deg[i]
    for u, v in G.edges:
        if u and v:
            M[u - 1][v - 1] = -1
            M[v - 1][u - 1] = -1
    size = n - 1
    sign, prev = 1, 1
    for k in range(size - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pivot = M[k][k]
        row_k = M[k]
        for i in range(k + 1, size):
            row_i = M[i]
            f = row_i[k]
            for j in range(k + 1, size):
                row_i[j] = (row_i[j] * pivot - f * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * M[size - 1][size - 1]


def spanning_trees_spectral(G: Graph, spec: Spectrum, profile: Optional[DegreeProfile] = None) -> float:
    """``prod(d) * prod(nonzero lambda) / sum(d)``, evaluated in log space."""
    _require_connected(G, "spanning_trees_spectral")
    profile = profile or degree_profile(G)
    if min(profile.degrees) < 1:
        raise PreconditionError("spanning_trees_spectral requires minimum degree >= 1")
    lam = _nonzero_eigenvalues(G, spec)
    if np.any(lam <= 0):
        raise PreconditionError("spectrum has more than one non-positive eigenvalue")
    logt = (sum(math.log(d) for d in profile.degrees) + float(np.sum(np.log(lam)))
            - math.log(sum(profile.degrees)))
    return _safe_exp(logt)


def _safe_exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def _closed_inputs(kind, ops, theta, mu, eta):
    kind = CoronaKind.parse(kind)
    ops.require_closed_form()
    if theta is None or mu is None or eta is None:
        theta, mu, eta = operand_spectra(ops)
    theta_nz = _theta_values(theta)[1:]
    if np.any(theta_nz <= 0):
        raise ClosedFormInapplicableError("G1 must be connected")
    return kind, theta_nz, _drop_one_zero(mu), _drop_one_zero(eta)


def spanning_trees_closed(kind, ops: CoronaOperands, theta: Optional[Spectrum] = None,
                          mu: Optional[Spectrum] = None, eta: Optional[Spectrum] = None) -> float:
    kind, th, mu_r, eta_r = _closed_inputs(kind, ops, theta, mu, eta)
    r1, r2, r3 = ops.r1, ops.r2, ops.r3
    n1, n2, n3, m1 = ops.n1, ops.n2, ops.n3, ops.m1
    m = predicted_counts(kind, ops)[1]
    L2 = math.log(2.0)
    if kind is CoronaKind.SVEV:
        logt = (np.sum(np.log(th))
                + n1 * np.sum(np.log(r1 + r2 * mu_r))
                + m1 * np.sum(np.log(1 + r3 * eta_r))
                + (2 * n1 - 1) * math.log(r1)
                + (m1 - 1) * math.log(1 + n2)
                + (m1 - n1 - 1) * L2
                + math.log(n3 * r1 * r3 + 4 * n2 * r1 + 2 * n2 * r2 + 2 * n3 * r1 + 4 * r1)
                - math.log(m))
    else:
        logt = ((2 * m1 - n1 - 1) * L2
                + np.sum(np.log((r1 + r1 * n2) * th))
                + m1 * np.sum(np.log(2 + r2 * mu_r))
                + n1 * np.sum(np.log(1 + r3 * eta_r))
                + math.log(n2 * r1 * r2 + 4 * n2 * r1 + 2 * n3 * r3 + 4 * n3 + 4 * r1)
                - math.log(m))
    return _safe_exp(float(logt))


# -- Kemeny's constant and Kf* ----------------------------------------------------

def kemeny_spectral(G: Graph, spec: Spectrum) -> float:
    _require_connected(G, "kemeny")
    return float(np.sum(1.0 / _nonzero_eigenvalues(G, spec)))


def kf_star_spectral(G: Graph, spec: Spectrum) -> float:
    _require_connected(G, "kf_star_spectral")
    return 2 * G.m * kemeny_spectral(G, spec)


def kf_star_resistance_oracle(G: Graph) -> float:
    """``sum_{i<j} d_i d_j r_ij`` with resistances from the Laplacian pseudoinverse."""
    _require_connected(G, "kf_star_resistance_oracle")
    Lp = np.linalg.pinv(matrix_of(G, "laplacian"), hermitian=True)
    diag = np.diag(Lp)
    R = diag[:, None] + diag[None, :] - 2 * Lp
    d = np.asarray(degree_profile(G).degrees, dtype=float)
    return float(d @ R @ d) / 2.0


def _zero_theta_reciprocal_sum(kind, ops: CoronaOperands) -> float:
    """Sum of 1/root over the three nonzero roots of the theta = 0 quartic."""
    p = quartic_coefficients(kind, ops, 0.0).coef
    if abs(p[0]) > 1e-12 * np.max(np.abs(p)):
        raise ConsistencyError(f"theta = 0 quartic should vanish at 0, constant term {p[0]}")
    cubic = p[1:]
    return float(-cubic[1] / cubic[0])


def kemeny_closed(kind, ops: CoronaOperands, theta: Optional[Spectrum] = None,
                  mu: Optional[Spectrum] = None, eta: Optional[Spectrum] = None) -> float:
    kind, th, mu_r, eta_r = _closed_inputs(kind, ops, theta, mu, eta)
    r1, r2, r3 = ops.r1, ops.r2, ops.r3
    n1, n2, n3, m1 = ops.n1, ops.n2, ops.n3, ops.m1
    zero_term = _zero_theta_reciprocal_sum(kind, ops)
    if kind is CoronaKind.SVEV:
        inserted = 2 * n2 + n3 + 2
        total = (np.sum(n1 * (r1 + r2) / (r1 + r2 * mu_r))
                 + np.sum(m1 * (r3 + 1) / (1 + r3 * eta_r))
                 + (m1 - n1) * (r3 + 2) * inserted / (2 * n2 + 2)
                 + zero_term
                 + np.sum(((4 * r1 + r2 + r1 * r3) * inserted - n3 * (2 * r1 + r2)
                           - (2 - th) * ((1 + n2) * (2 * r1 + r1 * r3) + r2))
                          / (r1 * (1 + n2) * th)))
    else:
        original = r1 * n2 + r1 + n3
        total = (np.sum(m1 * (r2 + 2) / (2 + r2 * mu_r))
                 + np.sum(n1 * (r3 + 1) / (1 + r3 * eta_r))
                 + (r2 + 4) * (m1 - n1) / 2
                 + zero_term
                 + np.sum((2 * original * (2 * r3 + r2 + 8) - (2 * r2 * n3 + 8 * n3)
                           - r1 * (2 - th) * ((2 + 2 * n2) * (2 + r3) + r2))
                          / (r1 * (2 + 2 * n2) * th)))
    return float(total)


def kf_star_closed(kind, ops: CoronaOperands, theta: Optional[Spectrum] = None,
                   mu: Optional[Spectrum] = None, eta: Optional[Spectrum] = None) -> float:
    m = predicted_counts(kind, ops)[1]
    return 2 * m * kemeny_closed(kind, ops, theta, mu, eta)


def kemeny(graph_or_kind, spec_or_ops, theta=None, mu=None, eta=None) -> float:
    """Kemeny's constant of ``(Graph, Spectrum)`` or of ``(kind, CoronaOperands)``."""
    if isinstance(graph_or_kind, Graph):
        return kemeny_spectral(graph_or_kind, spec_or_ops)
    return kemeny_closed(graph_or_kind, spec_or_ops, theta, mu, eta)


# -- cospectrality ------------------------------------------------------------------

def is_cospectral(a: Spectrum, b: Spectrum, tol: float = COSPECTRAL_TOL) -> bool:
    return a.order == b.order and a.max_deviation(b) <= tol


def adjacency_charpoly(G: Graph) -> tuple:
    """Exact integer coefficients of ``det(xI - A)``, descending powers (Faddeev-LeVerrier)."""
    n = G.n
    A = [[0] * n for _ in range(n)]
    for u, v in G.edges:
        A[u][v] = A[v][u] = 1
    coeffs = [1]
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        AM = [[sum(A[i][t] * M[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        c = -sum(AM[i][i] for i in range(n)) // k
        coeffs.append(c)
        M = [[AM[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
    return tuple(coeffs)


# -- report ----------------------------------------------------------------------------

@dataclass
class InvariantReport:
    """All three invariants with the value from every available method.

    ``tau['exact']`` is authoritative; the float routes are cross-checks.
    ``omitted`` maps a field name to the reason it was not computed.
    """

    n: int
    m: int
    tau: Dict[str, float] = field(default_factory=dict)
    kf_star: Dict[str, float] = field(default_factory=dict)
    kemeny: Dict[str, float] = field(default_factory=dict)
    omitted: Dict[str, str] = field(default_factory=dict)
    max_rel_dev: float = 0.0

    def to_dict(self) -> dict:
        d = {"n": self.n, "m": self.m, "tau": dict(self.tau),
             "consistency": {"max_rel_dev": self.max_rel_dev}}
        if "kf_star" not in self.omitted:
            d["kf_star"] = dict(self.kf_star)
        if "kemeny" not in self.omitted:
            d["kemeny"] = dict(self.kemeny)
        if self.omitted:
            d["omitted"] = dict(self.omitted)
        return d


def _rel(a: float, b: float) -> float:
    if a == b:
        return 0.0
    if math.isinf(a) or math.isinf(b):
        return math.inf
    return abs(a - b) / max(abs(a), abs(b))


def invariant_report(G: Optional[Graph] = None, kind=None, ops: Optional[CoronaOperands] = None,
                     grouping_tol: float = DEFAULT_GROUPING_TOL) -> InvariantReport:
    """Compute every invariant by every applicable route.

    Pass a bare graph, or ``kind`` and ``ops`` to also get the closed forms
    (the corona is then built when ``G`` is omitted).
    """
    if G is None:
        if ops is None or kind is None:
            raise ValueError("need a graph or (kind, ops)")
        G = build_corona(kind, ops)
    report = InvariantReport(G.n, G.m)
    exact = spanning_trees_exact(G)
    report.tau["exact"] = exact
    if not is_connected(G) or G.n < 2:
        reason = "graph is disconnected" if not is_connected(G) else "graph has a single vertex"
        report.omitted = {"kf_star": reason, "kemeny": reason}
        return report

    spec = normalized_laplacian_spectrum(G, grouping_tol)
    report.tau["spectral"] = spanning_trees_spectral(G, spec)
    report.kemeny["spectral"] = kemeny_spectral(G, spec)
    report.kf_star["spectral"] = kf_star_spectral(G, spec)
    report.kf_star["resistance"] = kf_star_resistance_oracle(G)

    closed_ok = False
    if ops is not None and kind is not None:
        try:
            ops.require_closed_form()
            closed_ok = True
        except ClosedFormInapplicableError as exc:
            report.omitted["closed"] = str(exc)
    if closed_ok:
        spectra = operand_spectra(ops, grouping_tol)
        report.tau["closed"] = spanning_trees_closed(kind, ops, *spectra)
        report.kemeny["closed"] = kemeny_closed(kind, ops, *spectra)
        report.kf_star["closed"] = kf_star_closed(kind, ops, *spectra)

    try:
        exact_f = float(exact)
    except OverflowError:
        exact_f = math.inf
    devs = [_rel(exact_f, v) for k, v in report.tau.items() if k != "exact"]
    ref = report.kf_star["resistance"]
    devs += [_rel(ref, v) for k, v in report.kf_star.items() if k != "resistance"]
    devs += [_rel(report.kemeny["spectral"], v) for v in report.kemeny.values()]
    report.max_rel_dev = max(devs)
    return report
