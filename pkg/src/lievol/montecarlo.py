"""Haar sampling on SU(n), SO(m), USp(2n) and concentration experiments.

Sampling is Gaussian matrix -> orthonormalization -> phase/sign
correction, which is exactly invariant.  Samples are produced in fixed
chunks, each chunk driven by its own counter-keyed Philox stream, so
the statistics are bit-identical for a given (seed, count) at any
worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.integrate import quad
from scipy.special import betainc

from .roots import Series

CHUNK = 2048


@dataclass(frozen=True)
class SamplerConfig:
    series: Series
    count: int
    seed: int
    workers: int = 1

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


def _chunk_rng(seed: int, chunk_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=(seed & (2 ** 64 - 1)),
                                                counter=[0, 0, 0, chunk_index]))


def _chunks(count: int):
    start = 0
    idx = 0
    while start < count:
        yield idx, min(CHUNK, count - start)
        start += CHUNK
        idx += 1


def _map_chunks(cfg: SamplerConfig, fn: Callable) -> list:
    """Run fn(chunk_rng, size) per chunk; results ordered by chunk index."""
    jobs = list(_chunks(cfg.count))
    if cfg.workers == 1:
        return [fn(_chunk_rng(cfg.seed, i), size) for i, size in jobs]
    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        futs = [pool.submit(fn, _chunk_rng(cfg.seed, i), size)
                for i, size in jobs]
        return [f.result() for f in futs]


# -- samplers ---------------------------------------------------------

def _haar_unitary(rng: np.random.Generator, size: int, m: int) -> np.ndarray:
    z = (rng.standard_normal((size, m, m))
         + 1j * rng.standard_normal((size, m, m))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.einsum("sii->si", r)
    q *= (d / np.abs(d))[:, None, :]
    return q


def haar_su_chunk(rng: np.random.Generator, size: int, m: int) -> np.ndarray:
    q = _haar_unitary(rng, size, m)
    det = np.linalg.det(q)
    q *= (det ** (-1.0 / m))[:, None, None]
    return q


def haar_so_chunk(rng: np.random.Generator, size: int, m: int) -> np.ndarray:
    z = rng.standard_normal((size, m, m))
    q, r = np.linalg.qr(z)
    d = np.einsum("sii->si", r)
    q *= np.sign(d)[:, None, :]
    # fold the det = -1 coset onto SO(m) with a fixed reflection
    neg = np.linalg.det(q) < 0
    q[neg, :, 0] *= -1.0
    return q


def _usp_partner(v: np.ndarray) -> np.ndarray:
    """Quaternionic partner of complex columns (..., 2n)."""
    n = v.shape[-1] // 2
    out = np.empty_like(v)
    out[..., :n] = -np.conj(v[..., n:])
    out[..., n:] = np.conj(v[..., :n])
    return out


def haar_usp_chunk(rng: np.random.Generator, size: int,
                   two_n: int) -> np.ndarray:
    """Quaternion Gram-Schmidt on Gaussian columns, in the 2n x 2n form."""
    n = two_n // 2
    g = np.empty((size, two_n, two_n), dtype=complex)
    for j in range(n):
        v = (rng.standard_normal((size, two_n))
             + 1j * rng.standard_normal((size, two_n))) / math.sqrt(2.0)
        for kk in range(2 * j):
            w = g[:, :, _col_order(kk, n)]
            v -= np.einsum("sa,sa->s", np.conj(w), v)[:, None] * w
        v /= np.linalg.norm(v, axis=1)[:, None]
        g[:, :, j] = v
        g[:, :, j + n] = _usp_partner(v)
    return g


def _col_order(kk: int, n: int) -> int:
    # previously filled columns in fill order: j, then its partner j+n
    return kk // 2 if kk % 2 == 0 else kk // 2 + n


def symplectic_form(two_n: int) -> np.ndarray:
    n = two_n // 2
    J = np.zeros((two_n, two_n))
    J[:n, n:] = np.eye(n)
    J[n:, :n] = -np.eye(n)
    return J


def sample_su(cfg: SamplerConfig) -> np.ndarray:
    m = cfg.series.n
    return np.concatenate(_map_chunks(
        cfg, lambda rng, size: haar_su_chunk(rng, size, m)))


def sample_so(cfg: SamplerConfig, m: Optional[int] = None) -> np.ndarray:
    if m is None:
        n = cfg.series.n
        m = 2 * n + 1 if cfg.series.tag == "B" else 2 * n
    return np.concatenate(_map_chunks(
        cfg, lambda rng, size: haar_so_chunk(rng, size, m)))


def sample_usp(cfg: SamplerConfig) -> np.ndarray:
    two_n = 2 * cfg.series.n
    return np.concatenate(_map_chunks(
        cfg, lambda rng, size: haar_usp_chunk(rng, size, two_n)))


# -- chart coordinate and band statistics -----------------------------

def cp_coordinate(g: np.ndarray) -> tuple:
    """(|zeta_0|, xi) of the fiber point: first column as homogeneous rep."""
    mag = np.abs(g[..., 0, 0])
    return mag, np.arccos(np.clip(mag, 0.0, 1.0))


def sphere_band_mass(m: int, r: float) -> float:
    """Mass of the geodesic band of half-width r around an equator of S^m."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if not (0.0 <= r <= math.pi / 2):
        raise ValueError("r must lie in [0, pi/2]")
    s = math.sin(r) ** 2
    return float(betainc(0.5, m / 2.0, s))


def sphere_band_mass_quadrature(m: int, r: float) -> float:
    num, _ = quad(lambda t: math.cos(t) ** (m - 1), -r, r)
    den, _ = quad(lambda t: math.cos(t) ** (m - 1), -math.pi / 2, math.pi / 2)
    return num / den


# -- KS test ----------------------------------------------------------

def kolmogorov_pvalue(lam: float, terms: int = 100) -> float:
    """Asymptotic KS tail probability by the alternating series."""
    if lam <= 0:
        return 1.0
    total = 0.0
    for k in range(1, terms + 1):
        total += (-1.0) ** (k - 1) * math.exp(-2.0 * k * k * lam * lam)
    return min(1.0, max(0.0, 2.0 * total))


def ks_test(samples: np.ndarray, cdf: Callable) -> tuple:
    """One-sample KS statistic and asymptotic p-value.

    `samples` must be sorted ascending; at least 8 values.
    """
    x = np.asarray(samples, dtype=float)
    if len(x) < 8:
        raise ValueError("need at least 8 samples")
    if np.any(np.diff(x) < 0):
        raise ValueError("samples must be sorted ascending")
    n = len(x)
    f = np.asarray([cdf(v) for v in x], dtype=float)
    i = np.arange(1, n + 1)
    d = float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))
    return d, kolmogorov_pvalue(math.sqrt(n) * d)


# -- concentration experiments ----------------------------------------

@dataclass(frozen=True)
class ConcentrationReport:
    series: Series
    n: int
    r: float
    count: int
    seed: int
    empirical_mass: float
    predicted_mass: float
    stderr: float
    z_score: float
    ks_statistic: float
    ks_pvalue: float
    base_description: str
    note: str = ""

    def to_json(self) -> dict:
        return {
            "group": self.series.group_name,
            "series": self.series.tag, "n": self.n, "r": self.r,
            "count": self.count, "seed": self.seed,
            "empirical_mass": self.empirical_mass,
            "predicted_mass": self.predicted_mass,
            "stderr": self.stderr, "z_score": self.z_score,
            "ks_statistic": self.ks_statistic, "ks_pvalue": self.ks_pvalue,
            "base": self.base_description, "note": self.note,
        }


def _householder_reduce(cols: np.ndarray, first: np.ndarray) -> np.ndarray:
    """Map each `first` vector to e_1 and return the reduced second column.

    cols: (s, m) second columns; first: (s, m) unit vectors.  Returns
    (s, m-1) unit vectors, distributed uniformly and independently.
    """
    x = first.copy()
    s, m = x.shape
    e1 = np.zeros(m)
    e1[0] = 1.0
    sign = np.where(x[:, 0] >= 0, 1.0, -1.0)
    u = x + sign[:, None] * e1[None, :]
    u /= np.linalg.norm(u, axis=1)[:, None]
    # H v = v - 2 u (u.v); H maps x to -sign*e1 (orthogonal, fixed rule)
    v = cols - 2.0 * np.einsum("sa,sa->s", u, cols)[:, None] * u
    return v[:, 1:]


def _equator_distance(coord: np.ndarray) -> np.ndarray:
    return np.arcsin(np.clip(np.abs(coord), 0.0, 1.0))


def concentration_experiment(cfg: SamplerConfig, r: float
                             ) -> ConcentrationReport:
    """Empirical band mass around the concentration locus vs closed form."""
    if not (0.0 < r < math.pi / 2):
        raise ValueError("r must lie in (0, pi/2)")
    series = cfg.series
    n = series.n
    note = ""

    if series.tag == "A":
        # SU(n): distance of the fiber point to the hyperplane at infinity
        g = sample_su(cfg)
        _, xi = cp_coordinate(g)
        dist = math.pi / 2 - xi
        inside = dist < r
        predicted = 1.0 - math.cos(r) ** (2 * (n - 1))
        base = f"CP^{n - 1} hyperplane at infinity"
        mag2 = np.sort(np.abs(g[:, 0, 0]) ** 2)
        stat, pval = ks_test(mag2,
                             lambda s2: 1.0 - (1.0 - s2) ** (n - 1))
    elif series.tag in ("B", "D"):
        m = 2 * n + 1 if series.tag == "B" else 2 * n
        g = sample_so(cfg)
        first = g[:, :, 0]
        second = _householder_reduce(g[:, :, 1], first)
        d1 = _equator_distance(first[:, 0])
        d2 = _equator_distance(second[:, 0])
        inside = (d1 < r) & (d2 < r)
        predicted = sphere_band_mass(m - 1, r) * sphere_band_mass(m - 2, r)
        base = f"S^{m - 1} x S^{m - 2} bi-equator"
        samp = np.sort(np.abs(first[:, 0]))
        stat, pval = ks_test(samp, lambda t: sphere_band_mass(
            m - 1, math.asin(min(1.0, t))))
        note = ("sampling on SO(m); band statistics live on the base "
                "spheres and are unchanged under the double cover")
    else:  # C
        g = sample_usp(cfg)
        first = g[:, :, 0]
        coord = first[:, 0].real  # first real coordinate of S^{4n-1}
        dist = _equator_distance(coord)
        inside = dist < r
        predicted = sphere_band_mass(4 * n - 1, r)
        base = f"S^{4 * n - 1} equator"
        samp = np.sort(np.abs(coord))
        stat, pval = ks_test(samp, lambda t: sphere_band_mass(
            4 * n - 1, math.asin(min(1.0, t))))

    emp = float(np.mean(inside))
    stderr = math.sqrt(predicted * (1.0 - predicted) / cfg.count)
    z = (emp - predicted) / stderr if stderr > 0 else 0.0
    return ConcentrationReport(
        series=series, n=n, r=r, count=cfg.count, seed=cfg.seed,
        empirical_mass=emp, predicted_mass=predicted, stderr=stderr,
        z_score=z, ks_statistic=stat, ks_pvalue=pval,
        base_description=base, note=note)


def xi_histogram(cfg: SamplerConfig, bins: int = 200) -> dict:
    """Histogram of the chart angle xi over Haar samples of SU(n)."""
    g = sample_su(cfg)
    _, xi = cp_coordinate(g)
    counts, edges = np.histogram(xi, bins=bins, range=(0.0, math.pi / 2))
    return {"edges": edges.tolist(), "counts": counts.tolist()}
