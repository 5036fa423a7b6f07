"""Closed-form normalized Laplacian spectra of SVEV/SVEE coronas.

For regular operands ``G1`` (r1-regular, connected), ``G2`` and ``G3`` the
spectrum of the corona is assembled from the spectra ``theta``, ``mu`` and
``eta`` of the three operands:

* one shifted copy of every ``mu`` and ``eta`` except a single zero,
* the roots of a quadratic (SVEV) or two fixed values (SVEE), each repeated
  ``m1 - n1`` times,
* the four roots of a quartic for every ``theta``.

The pieces are collected in a :class:`SpectrumRecipe`; its roots are
extracted with :func:`real_roots` (companion-matrix eigenvalues).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from numpy.polynomial import Polynomial

from .corona_ops import CoronaKind, CoronaOperands, predicted_counts
from .errors import ClosedFormInapplicableError, ConsistencyError, NonRealRootError
from .matrix_engine import DEFAULT_GROUPING_TOL, Spectrum, normalized_laplacian_spectrum

# Real polynomials are numpy Polynomials: ascending coefficients.
RealPolynomial = Polynomial

NONREAL_TOL = 1e-8


def real_roots(p: Polynomial, tol: float = NONREAL_TOL) -> np.ndarray:
    """All roots of ``p`` (degree 1..4), sorted, as real numbers.

    Raises
    ------
    NonRealRootError
        If some root has an imaginary part larger than ``tol``.
    """
    coef = np.trim_zeros(np.asarray(p.coef, dtype=float), "b")
    deg = len(coef) - 1
    if not 1 <= deg <= 4:
        raise ValueError(f"real_roots handles degree 1..4, got degree {deg}")
    monic = coef / coef[-1]
    C = np.zeros((deg, deg))
    C[1:, :-1] = np.eye(deg - 1)
    C[:, -1] = -monic[:-1]
    roots = _refine_clusters(Polynomial(monic), np.linalg.eigvals(C))
    worst = float(np.max(np.abs(roots.imag)))
    if worst > tol:
        raise NonRealRootError(f"polynomial {coef.tolist()} has a root with imaginary part {worst:.3e}")
    return np.sort(roots.real)


# relative to max(1, |root|); a 4-fold root spreads over about 1e-4 of its size
CLUSTER_RADIUS = 5e-3
MIN_RADIUS = 1e-7
# a few times the Horner rounding bound 2*deg*eps
VANISH_TOL = 4e-15


def _refine_clusters(p: Polynomial, roots: np.ndarray, radius: float = CLUSTER_RADIUS) -> np.ndarray:
    """Snap clusters of nearly equal companion eigenvalues to one multiple root.

    A k-fold root comes out of the eigensolver spread over a radius of about
    eps**(1/k), possibly as a complex pair.  A k-fold root of ``p`` is a
    simple root of its (k-1)-th derivative, which Newton's method finds to
    full precision.  A cluster is merged only if ``p`` and its lower
    derivatives vanish at the refined point; otherwise it is split again
    with a tenth of the radius.
    """
    roots = np.array(roots, dtype=complex)
    roots = roots[np.argsort(roots.real)]
    out = []
    i = 0
    while i < len(roots):
        j = i + 1
        while j < len(roots) and abs(roots[j] - roots[j - 1]) <= radius * max(1.0, abs(roots[j - 1])):
            j += 1
        cluster = roots[i:j]
        k = j - i
        if k == 1:
            out.extend(cluster)
        else:
            merged = _newton_multiple_root(p, k, float(np.mean(cluster.real)), radius)
            if merged is not None:
                out.extend([complex(merged)] * k)
            elif radius / 10 >= MIN_RADIUS:
                out.extend(_refine_clusters(p, cluster, radius / 10))
            else:
                out.extend(cluster)
        i = j
    return np.array(out)


def _newton_multiple_root(p: Polynomial, k: int, x: float, radius: float) -> Optional[float]:
    start = x
    q = p.deriv(k - 1)
    dq = q.deriv()
    for _ in range(50):
        slope = dq(x)
        if slope == 0:
            break
        step = q(x) / slope
        x -= step
        if abs(step) <= 1e-16 * max(1.0, abs(x)):
            break
    if abs(x - start) > radius * max(1.0, abs(start)):
        return None
    powers = abs(x) ** np.arange(len(p.coef))
    for t in range(k - 1):
        d = p.deriv(t)
        scale = float(np.sum(np.abs(d.coef) * powers[:len(d.coef)]))
        if abs(d(x)) > VANISH_TOL * scale:
            return None
    return x


@dataclass(frozen=True)
class SpectrumRecipe:
    """Eigenvalues given explicitly plus polynomial factors to be solved.

    Multiplicities are non-negative; their weighted total equals ``order``.
    """

    fixed_parts: Tuple[Tuple[float, int], ...]
    polynomial_parts: Tuple[Tuple[Polynomial, int], ...]
    order: int

    def root_count(self) -> int:
        return (sum(k for _, k in self.fixed_parts)
                + sum(p.degree() * k for p, k in self.polynomial_parts))

    def realize(self, grouping_tol: float = DEFAULT_GROUPING_TOL, tol: float = NONREAL_TOL) -> Spectrum:
        vals = [v for v, k in self.fixed_parts for _ in range(k)]
        for p, k in self.polynomial_parts:
            if k:
                vals.extend(np.tile(real_roots(p, tol), k))
        return Spectrum(np.array(vals, dtype=float), grouping_tol)

    def evaluate(self, lam: float) -> float:
        """Value of the monic characteristic polynomial at ``lam``."""
        out = 1.0
        for v, k in self.fixed_parts:
            out *= (lam - v) ** k
        for p, k in self.polynomial_parts:
            out *= (p(lam) / p.coef[-1]) ** k
        return float(out)


# -- operand spectra ------------------------------------------------------------

def operand_spectra(ops: CoronaOperands, grouping_tol: float = DEFAULT_GROUPING_TOL):
    """``(theta, mu, eta)``: normalized Laplacian spectra of ``G1``, ``G2``, ``G3``."""
    return tuple(normalized_laplacian_spectrum(g, grouping_tol) for g in (ops.g1, ops.g2, ops.g3))


def _drop_one_zero(spec: Spectrum) -> np.ndarray:
    vals = np.asarray(spec.values)
    if len(vals) == 0 or abs(vals[0]) > spec.grouping_tol:
        raise ClosedFormInapplicableError(f"operand spectrum has no zero eigenvalue: {spec!r}")
    return vals[1:]


def _theta_values(theta: Spectrum) -> np.ndarray:
    # the zero of a connected G1 is exact in the formulas
    vals = np.array(theta.values, dtype=float)
    vals[np.abs(vals) <= theta.grouping_tol] = 0.0
    return vals


def _check_inputs(ops: CoronaOperands, theta: Spectrum, mu: Spectrum, eta: Spectrum) -> None:
    ops.require_closed_form()
    for name, spec, n in (("theta", theta, ops.n1), ("mu", mu, ops.n2), ("eta", eta, ops.n3)):
        if spec.order != n:
            raise ClosedFormInapplicableError(f"{name} has {spec.order} eigenvalues, expected {n}")
    if theta.multiplicity(0.0) != 1:
        raise ClosedFormInapplicableError("G1 spectrum must have a simple zero (connected G1)")


# -- polynomial factors -----------------------------------------------------------

_X = Polynomial([0.0, 1.0])


def quartic_coefficients(kind, ops: CoronaOperands, theta_i: float) -> Polynomial:
    """Cleared-denominator quartic whose roots are the eigenvalues attached to ``theta_i``."""
    kind = CoronaKind.parse(kind)
    ops.require_regular()
    r1, r2, r3, n2, n3 = (float(x) for x in (ops.r1, ops.r2, ops.r3, ops.n2, ops.n3))
    lam = _X
    if kind is CoronaKind.SVEV:
        inserted = 2 * n2 + n3 + 2
        g3 = (1 + r3) * lam - 1
        g2 = (r1 + r2) * lam - r1
        p = (inserted * g3 * g2 * (lam - 1) ** 2
             - n3 * (lam - 1) * g2
             - (2 - theta_i) * ((r1 + r2 + n2 * r1) * lam - (r1 + r1 * n2)) * g3)
    else:
        original = r1 * n2 + n3 + r1
        g3 = (1 + r3) * lam - 1
        g2 = (2 + r2) * lam - 2
        p = (2 * original * g3 * g2 * (lam - 1) ** 2
             - 2 * n3 * (lam - 1) * g2
             - r1 * (2 - theta_i) * ((2 * n2 + r2 + 2) * lam - 2 * n2 - 2) * g3)
    return Polynomial(p.coef)


def svev_quadratic(ops: CoronaOperands) -> Polynomial:
    """Quadratic whose two roots each repeat ``m1 - n1`` times in the SVEV spectrum."""
    r3, n2, n3 = ops.r3, ops.n2, ops.n3
    inserted = 2 * n2 + n3 + 2
    return Polynomial([2 * n2 + 2, -inserted * (r3 + 2), inserted * (r3 + 1)]).convert()


def _deflate(polys: List[List], divisor: Polynomial, count: int) -> None:
    """Remove ``count`` copies of ``divisor`` from the quartic factors in place."""
    for _ in range(count):
        best, best_res = None, np.inf
        for entry in polys:
            p, k = entry
            if k <= 0 or p.degree() < divisor.degree():
                continue
            _, rem = divmod(p, divisor)
            res = float(np.max(np.abs(rem.coef))) / float(np.max(np.abs(p.coef)))
            if res < best_res:
                best, best_res = entry, res
        if best is None or best_res > 1e-9:
            raise ConsistencyError(f"cannot cancel factor {divisor.coef.tolist()} (residual {best_res:.3e})")
        best[1] -= 1
        quotient, _ = divmod(best[0], divisor)
        polys.append([quotient, 1])


def spectrum_recipe(kind, ops: CoronaOperands, theta: Spectrum, mu: Spectrum, eta: Spectrum) -> SpectrumRecipe:
    kind = CoronaKind.parse(kind)
    _check_inputs(ops, theta, mu, eta)
    r1, r2, r3 = ops.r1, ops.r2, ops.r3
    n1, m1 = ops.n1, ops.m1
    mu_rest, eta_rest = _drop_one_zero(mu), _drop_one_zero(eta)

    if kind is CoronaKind.SVEV:
        fixed = [((r1 + r2 * x) / (r1 + r2), n1) for x in mu_rest]
        fixed += [((1 + r3 * x) / (r3 + 1), m1) for x in eta_rest]
        extra_polys = [svev_quadratic(ops)]
        extra_fixed: List[float] = []
    else:
        fixed = [((2 + r2 * x) / (r2 + 2), m1) for x in mu_rest]
        fixed += [((1 + r3 * x) / (r3 + 1), n1) for x in eta_rest]
        extra_polys = []
        extra_fixed = [1.0, 2.0 / (r2 + 2)]

    polys = [[quartic_coefficients(kind, ops, t), 1] for t in _theta_values(theta)]
    excess = m1 - n1
    if excess >= 0:
        fixed += [(v, excess) for v in extra_fixed]
        polys += [[p, excess] for p in extra_polys]
    else:
        # G1 = K2: the factors cancel against the quartic of theta = 2
        for v in extra_fixed:
            _deflate(polys, Polynomial([-v, 1.0]), -excess)
        for p in extra_polys:
            _deflate(polys, p, -excess)

    recipe = SpectrumRecipe(
        tuple((float(v), int(k)) for v, k in fixed if k),
        tuple((p, int(k)) for p, k in polys if k),
        predicted_counts(kind, ops)[0],
    )
    if recipe.root_count() != recipe.order:
        raise ConsistencyError(f"recipe yields {recipe.root_count()} eigenvalues, expected {recipe.order}")
    return recipe


def svev_spectrum_closed(ops: CoronaOperands, theta: Spectrum, mu: Spectrum, eta: Spectrum,
                         grouping_tol: float = DEFAULT_GROUPING_TOL) -> Spectrum:
    return spectrum_recipe(CoronaKind.SVEV, ops, theta, mu, eta).realize(grouping_tol)


def svee_spectrum_closed(ops: CoronaOperands, theta: Spectrum, mu: Spectrum, eta: Spectrum,
                         grouping_tol: float = DEFAULT_GROUPING_TOL) -> Spectrum:
    return spectrum_recipe(CoronaKind.SVEE, ops, theta, mu, eta).realize(grouping_tol)


def spectrum_closed(kind, ops: CoronaOperands, theta: Optional[Spectrum] = None,
                    mu: Optional[Spectrum] = None, eta: Optional[Spectrum] = None,
                    grouping_tol: float = DEFAULT_GROUPING_TOL) -> Spectrum:
    """Closed-form spectrum; operand spectra are computed when not supplied."""
    ops.require_closed_form()
    if theta is None or mu is None or eta is None:
        theta, mu, eta = operand_spectra(ops, grouping_tol)
    return spectrum_recipe(kind, ops, theta, mu, eta).realize(grouping_tol)


def evaluate_charpoly(kind, ops: CoronaOperands, theta: Spectrum, mu: Spectrum, eta: Spectrum,
                      lam: float) -> float:
    """``det(lam*I - L)`` of the corona from the operand spectra alone.

    Uses the polynomial (cleared-denominator) factors, so every real
    ``lam`` is admissible.
    """
    return spectrum_recipe(kind, ops, theta, mu, eta).evaluate(float(lam))
