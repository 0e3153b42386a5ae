"""Quotient geometry of SU(n+1) over U(n): charts, measure, metric.

The generalized Gell-Mann matrices are ordered block by block: for each
a = 2..m the off-diagonal pairs (k, a), k < a, then the diagonal matrix
at index a^2 - 1.  With this ordering the coset directions of the U(n)
quotient are the 2n matrices with indices n^2 .. n^2 + 2n - 1 (1-based).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.integrate import quad

EPS_A = {a: math.sqrt(2.0 / (a * (a - 1))) for a in range(2, 200)}

# Chart calibration for the quotient parametrization.  The phi_a all run
# over [0, pi/2]; the theta_a periods below are fixed once so that the
# integral of the chart density reproduces the exact volume quotient
# V(SU(n+1)) / V(U(n)) at n = 1 and n = 2, with the fiber volume taken
# as V(U(n)) = V(SU(n)) * 2*pi * U_FIBER_CONSTANT.  Periods beyond the
# second coordinate are the natural 2*pi.
U_FIBER_CONSTANT = 2.0 * math.sqrt(2.0)
_THETA_PERIOD_1 = math.pi
_THETA_PERIOD_2 = 2.0 * math.sqrt(3.0) * math.pi


def theta_periods(n: int) -> list:
    """Calibrated periods of theta_1..theta_n."""
    out = [_THETA_PERIOD_1, _THETA_PERIOD_2] + [2.0 * math.pi] * max(0, n - 2)
    return out[:n]


@dataclass(frozen=True)
class QuotientCoords:
    """Angles (theta_1..theta_n, phi_1..phi_n) of the quotient chart."""

    thetas: tuple
    phis: tuple

    def __post_init__(self):
        if len(self.thetas) != len(self.phis):
            raise ValueError("thetas and phis must have equal length")
        object.__setattr__(self, "thetas", tuple(float(t) for t in self.thetas))
        object.__setattr__(self, "phis", tuple(float(p) for p in self.phis))

    @property
    def n(self) -> int:
        return len(self.thetas)


@dataclass(frozen=True)
class AffineCoords:
    """Angular form (xi, R, psi) of a chart-0 point z = tan(xi) R e^{i psi}."""

    xi: float
    R: tuple
    psi: tuple

    def __post_init__(self):
        object.__setattr__(self, "R", tuple(float(r) for r in self.R))
        object.__setattr__(self, "psi", tuple(float(p) for p in self.psi))
        if abs(sum(r * r for r in self.R) - 1.0) > 1e-12:
            raise ValueError("R must lie on the unit sphere")

    def to_z(self) -> np.ndarray:
        t = math.tan(self.xi)
        return np.array([t * r * np.exp(1j * p)
                         for r, p in zip(self.R, self.psi)])

    @staticmethod
    def from_z(z: np.ndarray) -> "AffineCoords":
        z = np.asarray(z, dtype=complex)
        rho = np.linalg.norm(z)
        if rho == 0:
            return AffineCoords(0.0, (1.0,) + (0.0,) * (len(z) - 1),
                                (0.0,) * len(z))
        return AffineCoords(math.atan(rho), tuple(np.abs(z) / rho),
                            tuple(np.angle(z)))


def gellmann_basis(m: int) -> np.ndarray:
    """Generalized Gell-Mann matrices, Tr(l_I l_J) = 2 delta_IJ."""
    if m < 2:
        raise ValueError("need m >= 2")
    mats = []
    for a in range(2, m + 1):
        for k in range(1, a):
            S = np.zeros((m, m), dtype=complex)
            S[k - 1, a - 1] = S[a - 1, k - 1] = 1.0
            mats.append(S)
            A = np.zeros((m, m), dtype=complex)
            A[k - 1, a - 1] = -1j
            A[a - 1, k - 1] = 1j
            mats.append(A)
        D = np.zeros((m, m), dtype=complex)
        c = math.sqrt(2.0 / (a * (a - 1)))
        for b in range(a - 1):
            D[b, b] = c
        D[a - 1, a - 1] = -(a - 1) * c
        mats.append(D)
    return np.array(mats)


def expi(h: np.ndarray) -> np.ndarray:
    """exp(i h) of a hermitian matrix by eigendecomposition."""
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1j * w)) @ v.conj().T


def _chart_factors(c: QuotientCoords):
    """The hermitian generators (M_j, t_j) with h = prod exp(i t_j M_j)."""
    n = c.n
    lam = gellmann_basis(n + 1)
    factors = [(lam[2], c.thetas[0]), (lam[1], c.phis[0])]
    for a in range(2, n + 1):
        factors.append((lam[a * a - 2] / EPS_A[a], c.thetas[a - 1]))
        factors.append((lam[a * a], c.phis[a - 1]))
    return factors


def quotient_point(c: QuotientCoords) -> np.ndarray:
    """The SU(n+1) representative h of the chart point."""
    h = np.eye(c.n + 1, dtype=complex)
    for M, t in _chart_factors(c):
        h = h @ expi(t * M)
    return h


def maurer_cartan(c: QuotientCoords) -> np.ndarray:
    """h^-1 dh per coordinate, by factor-wise analytic differentiation.

    Returns an array of shape (2n, m, m) of anti-hermitian matrices,
    ordered (theta_1..theta_n, phi_1..phi_n).
    """
    factors = _chart_factors(c)
    mats = [expi(t * M) for M, t in factors]
    # suffix[j] = F_j F_{j+1} ... F_K
    suffix = [np.eye(c.n + 1, dtype=complex)]
    for g in reversed(mats):
        suffix.append(g @ suffix[-1])
    suffix.reverse()  # suffix[j] = prod of factors j..K
    comps = []
    for j, (M, _t) in enumerate(factors):
        tail = suffix[j]
        comps.append(tail.conj().T @ (1j * M) @ tail)
    # factor order is interleaved (t1, p1, t2, p2, ...); reorder
    thetas = comps[0::2]
    phis = comps[1::2]
    return np.array(thetas + phis)


def maurer_cartan_fd(c: QuotientCoords, step: float = 1e-6) -> np.ndarray:
    """Central finite-difference oracle for the Maurer-Cartan components."""
    n = c.n
    h0 = quotient_point(c)
    inv = h0.conj().T
    out = []
    coords = list(c.thetas) + list(c.phis)
    for idx in range(2 * n):
        up = coords.copy()
        dn = coords.copy()
        up[idx] += step
        dn[idx] -= step
        hp = quotient_point(QuotientCoords(tuple(up[:n]), tuple(up[n:])))
        hm = quotient_point(QuotientCoords(tuple(dn[:n]), tuple(dn[n:])))
        out.append(inv @ (hp - hm) / (2 * step))
    return np.array(out)


def structure_equation_residual(c: QuotientCoords,
                                step: float = 1e-6) -> float:
    """Max |dj + 1/2 [j, j]| with the exterior derivative by differences.

    For each coordinate pair (u, v) the two-form component is
    d_u j_v - d_v j_u + [j_u, j_v]; all three terms vanish together when
    the one-form is a genuine Maurer-Cartan form.
    """
    n = c.n
    coords = list(c.thetas) + list(c.phis)

    def j_at(vals):
        q = QuotientCoords(tuple(vals[:n]), tuple(vals[n:]))
        return maurer_cartan(q)

    j0 = j_at(coords)
    partials = []
    for idx in range(2 * n):
        up = coords.copy()
        dn = coords.copy()
        up[idx] += step
        dn[idx] -= step
        partials.append((j_at(up) - j_at(dn)) / (2 * step))
    worst = 0.0
    for u in range(2 * n):
        for v in range(u + 1, 2 * n):
            res = (partials[u][v] - partials[v][u]
                   + j0[u] @ j0[v] - j0[v] @ j0[u])
            worst = max(worst, float(np.max(np.abs(res))))
    return worst


def vielbein(c: QuotientCoords) -> np.ndarray:
    """Coset covectors e^l_mu = Tr[j_mu lam_{n^2+l-1}] / (2i).

    Shape (2n, 2n): rows are coordinates (thetas then phis), columns the
    coset directions l = 1..2n.
    """
    n = c.n
    lam = gellmann_basis(n + 1)
    j = maurer_cartan(c)
    coset = lam[n * n - 1: n * n - 1 + 2 * n]
    return np.einsum("uab,lba->ul", j, coset).imag * 0.5


def vielbein_density(c: QuotientCoords) -> float:
    """|det| of the vielbein; the chart density of the invariant measure."""
    return abs(np.linalg.det(vielbein(c)))


def measure_density(c: QuotientCoords) -> float:
    """Closed-form chart density, independent of the vielbein route."""
    phis = c.phis
    n = c.n
    out = 2.0 * math.cos(phis[-1]) * math.sin(phis[-1]) ** (2 * n - 1)
    for a in range(1, n):
        out *= math.sin(phis[a - 1]) * math.cos(phis[a - 1]) ** (2 * a - 1)
    return out


def chart_volume(n: int) -> float:
    """Integral of the density over the calibrated chart domain.

    The density is a product of one-dimensional factors, so the integral
    splits into theta periods times phi quadratures.
    """
    total = float(np.prod(theta_periods(n)))
    val, _ = quad(lambda p: 2.0 * math.cos(p) * math.sin(p) ** (2 * n - 1),
                  0.0, math.pi / 2)
    total *= val
    for a in range(1, n):
        val, _ = quad(lambda p, a=a: math.sin(p) * math.cos(p) ** (2 * a - 1),
                      0.0, math.pi / 2)
        total *= val
    return total


def macdonald_quotient(n: int) -> float:
    """Exact-volume target V(SU(n+1)) / V(U(n)) for the chart volume."""
    from .exact import ExactScalar
    from .roots import Series
    from .volumes import closed_form_volume

    v_top = closed_form_volume(Series("A", n + 1))
    if n == 1:
        v_sub = ExactScalar.one()
    else:
        v_sub = closed_form_volume(Series("A", n))
    return (v_top / v_sub).to_float() / (2.0 * math.pi * U_FIBER_CONSTANT)


def fs_metric_affine(z: np.ndarray) -> np.ndarray:
    """Line-element matrix G with ds^2 = sum_ij G_ij dz_i conj(dz_j)."""
    z = np.asarray(z, dtype=complex)
    w = 1.0 + float(np.vdot(z, z).real)
    return np.eye(len(z)) / w - np.outer(np.conj(z), z) / (w * w)


def kahler_potential(z: np.ndarray) -> float:
    z = np.asarray(z, dtype=complex)
    return 0.5 * math.log(1.0 + float(np.vdot(z, z).real))


def fs_metric_from_potential(z: np.ndarray, step: float = 1e-4) -> np.ndarray:
    """Finite-difference complex Hessian of the Kaehler potential.

    The line element is twice the Hessian d^2 K / dz_i dconj(z)_j.
    """
    z = np.asarray(z, dtype=complex)
    n = len(z)

    def hess(u_dir: np.ndarray, v_dir: np.ndarray) -> float:
        # central second difference of K along two real directions
        f = kahler_potential
        return (f(z + step * (u_dir + v_dir)) - f(z + step * (u_dir - v_dir))
                - f(z + step * (v_dir - u_dir)) + f(z - step * (u_dir + v_dir))
                ) / (4.0 * step * step)

    ex = [np.eye(n, dtype=complex)[i] for i in range(n)]
    ey = [1j * e for e in ex]
    G = np.zeros((n, n), dtype=complex)
    # d2/dz_i dzbar_j = (K_xx + K_yy + i K_xy - i K_yx) / 4
    for i in range(n):
        for j in range(n):
            G[i, j] = (hess(ex[i], ex[j]) + hess(ey[i], ey[j])
                       + 1j * hess(ex[i], ey[j])
                       - 1j * hess(ey[i], ex[j])) / 4.0
    return 2.0 * G


def fs_metric_angular(a: AffineCoords, d_xi: float, d_R: Sequence[float],
                      d_psi: Sequence[float]) -> float:
    """ds^2 of the angular form on the given coordinate velocity."""
    if not (0.0 <= a.xi < math.pi / 2):
        raise ValueError("xi must lie in [0, pi/2)")
    R = np.asarray(a.R)
    dR = np.asarray(d_R, dtype=float)
    dpsi = np.asarray(d_psi, dtype=float)
    s2 = math.sin(a.xi) ** 2
    mixed = float(np.sum(R * R * dpsi))
    return (d_xi * d_xi
            + s2 * (float(np.sum(dR * dR)) + float(np.sum(R * R * dpsi * dpsi)))
            - s2 * s2 * mixed * mixed)


def fs_metric_affine_on_velocity(z: np.ndarray, dz: np.ndarray) -> float:
    """ds^2 of the affine form evaluated on a complex velocity."""
    z = np.asarray(z, dtype=complex)
    dz = np.asarray(dz, dtype=complex)
    w = 1.0 + float(np.vdot(z, z).real)
    return float(np.vdot(dz, dz).real) / w - abs(np.vdot(z, dz)) ** 2 / (w * w)


def angular_velocity_to_dz(a: AffineCoords, d_xi: float,
                           d_R: Sequence[float],
                           d_psi: Sequence[float]) -> np.ndarray:
    """Chain rule for z = tan(xi) R e^{i psi}."""
    R = np.asarray(a.R)
    dR = np.asarray(d_R, dtype=float)
    dpsi = np.asarray(d_psi, dtype=float)
    t = math.tan(a.xi)
    sec2 = 1.0 + t * t
    phase = np.exp(1j * np.asarray(a.psi))
    return (sec2 * d_xi * R + t * dR + 1j * t * R * dpsi) * phase


def band_mass(n: int, eps: float, check_tol: float = 1e-10) -> float:
    """Unnormalized mass cos^{2n}(eps)/(2n) of the chart band phi_n < pi/2-eps.

    Verified on the fly against adaptive quadrature of the defining
    integral; the normalized complement 1 - cos^{2n}(eps) is the measure
    of the radius-eps neighbourhood of the locus at infinity.
    """
    if not (0.0 <= eps <= math.pi / 2):
        raise ValueError("eps must lie in [0, pi/2]")
    if n < 1:
        raise ValueError("n must be >= 1")
    val = math.cos(eps) ** (2 * n) / (2 * n)
    num, _ = quad(lambda p: math.cos(p) * math.sin(p) ** (2 * n - 1),
                  0.0, math.pi / 2 - eps)
    if abs(num - val) > check_tol:
        raise ArithmeticError(
            f"band mass quadrature mismatch: {num} vs {val}")
    return val


def band_complement_mass(n: int, r: float) -> float:
    """Normalized measure 1 - cos^{2n}(r) of the neighbourhood V_r."""
    if not (0.0 <= r <= math.pi / 2):
        raise ValueError("r must lie in [0, pi/2]")
    return 1.0 - math.cos(r) ** (2 * n)


def locus_projection(z: np.ndarray) -> np.ndarray:
    """Limit point on the hyperplane at infinity, as homogeneous coords.

    Accepts a chart point z (length n, nonzero) or a homogeneous point
    with leading coordinate zero (length n+1), on which it is idempotent.
    """
    z = np.asarray(z, dtype=complex)
    if z.ndim != 1:
        raise ValueError("expected a vector")
    if abs(z[0]) == 0.0 and len(z) >= 2:
        tail = z[1:]
        norm = np.linalg.norm(tail)
        if norm == 0:
            raise ValueError("no direction defined")
        return np.concatenate([[0.0], tail / norm])
    norm = np.linalg.norm(z)
    if norm == 0:
        raise ValueError("z = 0 has no direction at infinity")
    return np.concatenate([[0.0], z / norm])
