"""Closed-form root data for the classical series A, B, C, D.

Roots are stored as exact rational vectors in the ambient R^n (the A
series lives in the trace-zero hyperplane), so Gram determinants and
coroot norms come out as exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import ExactScalar

_MIN_RANK = {"A": 2, "B": 2, "C": 2, "D": 4}

# CLI / report aliases for each series tag.
SERIES_ALIASES = {
    "a": "A", "su": "A",
    "b": "B", "spin-odd": "B", "so-odd": "B",
    "c": "C", "usp": "C", "sp": "C",
    "d": "D", "spin-even": "D", "so-even": "D",
}


@dataclass(frozen=True)
class Series:
    """One classical family at one rank parameter.

    The parameter n follows the group naming: SU(n) for A, Spin(2n+1)
    for B, USp(2n) for C, Spin(2n) for D.
    """

    tag: str
    n: int

    def __post_init__(self):
        tag = SERIES_ALIASES.get(self.tag.lower(), self.tag.upper())
        if tag not in _MIN_RANK:
            raise ValueError(f"unknown series tag {self.tag!r}")
        object.__setattr__(self, "tag", tag)
        if self.n < _MIN_RANK[tag]:
            raise ValueError(
                f"series {tag} needs n >= {_MIN_RANK[tag]}, got {self.n}")

    @property
    def rank(self) -> int:
        return self.n - 1 if self.tag == "A" else self.n

    @property
    def group_dim(self) -> int:
        n = self.n
        return {"A": n * n - 1, "B": n * (2 * n + 1),
                "C": n * (2 * n + 1), "D": n * (2 * n - 1)}[self.tag]

    @property
    def group_name(self) -> str:
        n = self.n
        return {"A": f"SU({n})", "B": f"Spin({2 * n + 1})",
                "C": f"USp({2 * n})", "D": f"Spin({2 * n})"}[self.tag]


Vector = tuple[Fraction, ...]


def _e(i: int, dim: int) -> Vector:
    return tuple(Fraction(1 if j == i else 0) for j in range(dim))


def _sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def _add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def _scale(c, u: Vector) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in u)


def dot(u: Vector, v: Vector) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def coroot(alpha: Vector) -> Vector:
    return _scale(Fraction(2) / dot(alpha, alpha), alpha)


@dataclass(frozen=True)
class RootSystem:
    series: Series
    rank: int
    ambient_dim: int
    simple_roots: tuple = field(repr=False)
    positive_roots: tuple = field(repr=False)
    coroots: tuple = field(repr=False)  # coroots of the positive roots
    degrees: tuple = ()

    @property
    def simple_coroots(self) -> tuple:
        return tuple(coroot(a) for a in self.simple_roots)


def build_root_system(series: Series) -> RootSystem:
    """Enumerate simple and positive roots in closed form."""
    n = series.n
    tag = series.tag

    if tag == "A":
        dim = n
        simple = [_sub(_e(i, dim), _e(i + 1, dim)) for i in range(n - 1)]
        positive = [_sub(_e(i, dim), _e(j, dim))
                    for i in range(n) for j in range(i + 1, n)]
        degrees = tuple(i + 1 for i in range(1, n))
    elif tag == "B":
        dim = n
        simple = [_sub(_e(i, dim), _e(i + 1, dim)) for i in range(n - 1)]
        simple.append(_e(n - 1, dim))
        positive = [_sub(_e(i, dim), _e(j, dim))
                    for i in range(n) for j in range(i + 1, n)]
        positive += [_add(_e(i, dim), _e(j, dim))
                     for i in range(n) for j in range(i + 1, n)]
        positive += [_e(i, dim) for i in range(n)]
        degrees = tuple(2 * i for i in range(1, n + 1))
    elif tag == "C":
        dim = n
        simple = [_sub(_e(i, dim), _e(i + 1, dim)) for i in range(n - 1)]
        simple.append(_scale(2, _e(n - 1, dim)))
        positive = [_sub(_e(i, dim), _e(j, dim))
                    for i in range(n) for j in range(i + 1, n)]
        positive += [_add(_e(i, dim), _e(j, dim))
                     for i in range(n) for j in range(i + 1, n)]
        positive += [_scale(2, _e(i, dim)) for i in range(n)]
        degrees = tuple(2 * i for i in range(1, n + 1))
    else:  # D
        dim = n
        simple = [_sub(_e(i, dim), _e(i + 1, dim)) for i in range(n - 1)]
        # last simple root is e_{n-1} + e_n
        simple.append(_add(_e(n - 2, dim), _e(n - 1, dim)))
        positive = [_sub(_e(i, dim), _e(j, dim))
                    for i in range(n) for j in range(i + 1, n)]
        positive += [_add(_e(i, dim), _e(j, dim))
                     for i in range(n) for j in range(i + 1, n)]
        degrees = tuple(2 * i for i in range(1, n)) + (n,)

    rs = RootSystem(series=series, rank=series.rank, ambient_dim=dim,
                    simple_roots=tuple(simple),
                    positive_roots=tuple(positive),
                    coroots=tuple(coroot(a) for a in positive),
                    degrees=degrees)
    expected = (series.group_dim - series.rank) // 2
    if len(rs.positive_roots) != expected:
        raise AssertionError(
            f"positive root count {len(rs.positive_roots)} != {expected}")
    return rs


def _det_fraction(rows: list[list[Fraction]]) -> Fraction:
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    m = [row[:] for row in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = Fraction(1) / m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] * inv
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


def torus_volume(rs: RootSystem) -> ExactScalar:
    """|a1^ ^ ... ^ ar^| = sqrt(det Gram) of the simple coroots, exactly."""
    cr = rs.simple_coroots
    gram = [[dot(u, v) for v in cr] for u in cr]
    return ExactScalar.sqrt_rational(_det_fraction(gram))


def coroot_norm_product(rs: RootSystem) -> ExactScalar:
    """Product of (a^|a^) over all positive coroots."""
    prod = Fraction(1)
    for cv in rs.coroots:
        prod *= dot(cv, cv)
    return ExactScalar.from_rational(prod)


def root_system_json(rs: RootSystem) -> dict:
    def vecs(vs):
        return [[str(x) for x in v] for v in vs]
    return {
        "series": rs.series.tag,
        "n": rs.series.n,
        "group": rs.series.group_name,
        "rank": rs.rank,
        "ambient_dim": rs.ambient_dim,
        "simple_roots": vecs(rs.simple_roots),
        "positive_roots": vecs(rs.positive_roots),
        "coroots": vecs(rs.coroots),
        "degrees": list(rs.degrees),
        "torus_volume": torus_volume(rs).to_json(),
    }
