"""Constructors and closed-form metrics for the special families.

Four families are provided:

* regular simplices,
* kites: a regular (d-1)-simplex base of edge s with an apex at distance
  t from every base vertex (eccentricity eps = t/s),
* rectangular simplices: mutually perpendicular legs at one vertex,
* the generalized-kite equiradial family: two groups of equal orthocenter
  barycentrics, the join of two regular simplices with constant
  intervening edge length.

Closed-form metrics are exposed next to each constructor so coordinate
computations can be cross-checked against them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    AdmissibilityError,
    DegenerateKiteError,
    InputError,
    NotLiftableError,
)
from .numerics import DEFAULT_POLICY, TolerancePolicy
from . import centers
from . import orthocentric as oc
from . import simplex as sx

__all__ = [
    "KiteSpec",
    "KiteMetrics",
    "RectSpec",
    "RectMetrics",
    "RegularMetrics",
    "EquiradialSpec",
    "EquiradialSolution",
    "regular",
    "regular_metrics",
    "kite",
    "kite_metrics",
    "equiradial_kite",
    "rectangular",
    "rect_metrics",
    "rect_centers_distinct",
    "lift_to_rectangular",
    "equiradial_admissible",
    "equiradial_general",
]


# ---------------------------------------------------------------------------
# regular simplices


@dataclass(frozen=True)
class RegularMetrics:
    circumradius: float
    inradius: float
    altitude: float
    volume: float


def regular(d: int, s: float, policy: TolerancePolicy = DEFAULT_POLICY) -> sx.Simplex:
    """Regular d-simplex of edge s, centered at the origin.

    Built by centering the standard basis of (d+1)-space and reflecting its
    span onto the first d coordinates, so the output is a closed form with
    no eigensolve involved.
    """
    if d < 1:
        raise InputError(f"dimension must be >= 1, got {d}")
    if not (s > 0):
        raise InputError(f"edge length must be positive, got {s}")
    n = d + 1
    pts = np.eye(n) - 1.0 / n
    w = np.full(n, 1.0 / math.sqrt(n))
    w[-1] -= 1.0  # Householder vector sending (1..1)/sqrt(n) to e_n
    h = np.eye(n) - 2.0 * np.outer(w, w) / float(w @ w)
    coords = (pts @ h.T)[:, :d]  # last coordinate is 0 on the centered span
    return sx.from_vertices(d, coords * (s / math.sqrt(2.0)), policy)


def regular_metrics(d: int, s: float) -> RegularMetrics:
    """Closed-form R, r, altitude and volume of the regular d-simplex:

        R^2 = s^2 d / (2 (d+1))          h = s sqrt((d+1) / (2d))
        V   = s^d sqrt((d+1) / 2^d) / d!  r = s / sqrt(2 d (d+1))
    """
    if d < 1 or not (s > 0):
        raise InputError("need d >= 1 and s > 0")
    return RegularMetrics(
        circumradius=s * math.sqrt(d / (2.0 * (d + 1))),
        inradius=s / math.sqrt(2.0 * d * (d + 1)),
        altitude=s * math.sqrt((d + 1) / (2.0 * d)),
        volume=s**d * math.sqrt((d + 1) / 2.0**d) / math.factorial(d),
    )


# ---------------------------------------------------------------------------
# kites


@dataclass(frozen=True)
class KiteSpec:
    """Kite with regular (d-1)-base of edge ``s`` and apex edges ``t``."""

    d: int
    s: float
    t: float

    def __post_init__(self):
        if self.d < 3:
            raise InputError(f"kites need dimension >= 3, got {self.d}")
        if not (self.s > 0 and self.t > 0):
            raise InputError("kite edges must be positive")
        lo = (self.d - 1) / (2.0 * self.d)
        if self.eccentricity**2 <= lo:
            raise DegenerateKiteError(
                f"eccentricity^2 = {self.eccentricity**2:.6g} must exceed "
                f"(d-1)/(2d) = {lo:.6g}; the apex collapses into the base hyperplane"
            )

    @property
    def eccentricity(self) -> float:
        return self.t / self.s


@dataclass(frozen=True)
class KiteMetrics:
    circumradius: float
    inradius: float
    altitude: float
    volume: float
    base_circumradius: float
    circumcenter_interior: bool
    equiradial: bool
    orthocenter_interior: bool
    rectangular_at_apex: bool


def kite(spec: KiteSpec, policy: TolerancePolicy = DEFAULT_POLICY) -> sx.Simplex:
    """Coordinates of the kite: regular base centered at the origin of the
    first d-1 axes, apex on the last axis at the closed-form height."""
    d, s = spec.d, spec.s
    base = regular(d - 1, s, policy).vertices
    h = kite_metrics(spec, policy).altitude
    verts = np.zeros((d + 1, d))
    verts[:d, : d - 1] = base
    verts[d, d - 1] = h
    return sx.from_vertices(d, verts, policy)


def kite_metrics(spec: KiteSpec, policy: TolerancePolicy = DEFAULT_POLICY) -> KiteMetrics:
    """Closed-form kite metrics in terms of eps = t/s:

        h   = s sqrt((2 eps^2 d - (d-1)) / (2d))
        R   = s eps^2 sqrt(d / (2 (2 eps^2 d - (d-1))))
        V   = s^d sqrt((2 eps^2 d - (d-1)) / 2^d) / d!
        r   = s sqrt(2 eps^2 d - (d-1)) /
              (sqrt(2) (sqrt(d) + d sqrt(2 eps^2 (d-1) - (d-2))))

    plus the base circumradius and the interiority/equiradiality flags.
    """
    d, s = spec.d, spec.s
    e2 = spec.eccentricity**2
    core = 2.0 * e2 * d - (d - 1)
    rho = s * math.sqrt((d - 1) / (2.0 * d))
    eq_target = (d - 2) / d
    scale2 = max(e2, 1.0)
    return KiteMetrics(
        circumradius=s * e2 * math.sqrt(d / (2.0 * core)),
        inradius=s
        * math.sqrt(core)
        / (math.sqrt(2.0) * (math.sqrt(d) + d * math.sqrt(2.0 * e2 * (d - 1) - (d - 2)))),
        altitude=s * math.sqrt(core / (2.0 * d)),
        volume=s**d * math.sqrt(core / 2.0**d) / math.factorial(d),
        base_circumradius=rho,
        circumcenter_interior=e2 > (d - 1) / d,
        equiradial=(
            abs(e2 - eq_target) <= policy.rel * scale2
            or abs(e2 - 1.0) <= policy.rel * scale2
        ),
        orthocenter_interior=e2 > 0.5,
        rectangular_at_apex=abs(e2 - 0.5) <= policy.rel * scale2,
    )


def equiradial_kite(d: int, policy: TolerancePolicy = DEFAULT_POLICY) -> KiteSpec:
    """The unique non-regular equiradial kite shape: eps^2 = (d-2)/d, base
    edge 1.  Exists for d >= 4; for d = 4 it is rectangular at the apex."""
    if d <= 3:
        raise InputError(
            f"equiradial kites of dimension {d} are regular; need d >= 4"
        )
    return KiteSpec(d=d, s=1.0, t=math.sqrt((d - 2) / d))


# ---------------------------------------------------------------------------
# rectangular simplices


@dataclass(frozen=True)
class RectSpec:
    """Rectangular d-simplex with the given leg lengths."""

    d: int
    legs: tuple[float, ...]

    def __post_init__(self):
        if self.d < 2:
            raise InputError(f"dimension must be >= 2, got {self.d}")
        if len(self.legs) != self.d:
            raise InputError(f"need {self.d} legs, got {len(self.legs)}")
        if not all(np.isfinite(b) and b > 0 for b in self.legs):
            raise InputError("legs must be positive and finite")


@dataclass(frozen=True)
class RectMetrics:
    volume: float
    hyp_volume: float
    altitude: float
    inradius: float
    r_squared: float
    circumcenter: np.ndarray
    hyp_orthocenter: np.ndarray
    hyp_orthocenter_bary: np.ndarray


def rectangular(spec: RectSpec, policy: TolerancePolicy = DEFAULT_POLICY) -> sx.Simplex:
    """Vertex i on the positive i-th axis at its leg length; the
    right-angle vertex (= orthocenter) last, at the origin."""
    verts = np.zeros((spec.d + 1, spec.d))
    verts[: spec.d] = np.diag(spec.legs)
    return sx.from_vertices(spec.d, verts, policy)


def rect_metrics(spec: RectSpec) -> RectMetrics:
    """Closed forms in the legs b_1..b_d:

        V      = b_1 ... b_d / d!
        V_hyp  = (b_1 ... b_d / (d-1)!) sqrt(sum 1/b_i^2)
        h      = 1 / sqrt(sum 1/b_i^2)
        r      = 1 / (sum 1/b_i + sqrt(sum 1/b_i^2))
        R^2    = (sum b_i^2) / 4
        C      = (A_1 + ... + A_d) / 2
        B      = hypotenuse-facet orthocenter, barycentrics prop. to 1/b_i^2
    """
    b = np.asarray(spec.legs, dtype=float)
    d = spec.d
    prod = float(np.prod(b))
    inv2 = float(np.sum(1.0 / b**2))
    verts = np.diag(b)
    w = (1.0 / b**2) / inv2
    return RectMetrics(
        volume=prod / math.factorial(d),
        hyp_volume=prod / math.factorial(d - 1) * math.sqrt(inv2),
        altitude=1.0 / math.sqrt(inv2),
        inradius=1.0 / (float(np.sum(1.0 / b)) + math.sqrt(inv2)),
        r_squared=float(np.sum(b**2)) / 4.0,
        circumcenter=verts.sum(axis=0) / 2.0,
        hyp_orthocenter=w @ verts,
        hyp_orthocenter_bary=w,
    )


def rect_centers_distinct(
    spec: RectSpec, policy: TolerancePolicy = DEFAULT_POLICY
) -> centers.CenterReport:
    """Center report of a rectangular simplex; its four classical centers
    are always pairwise distinct and the circumcenter is never interior
    (barycentrics (1/2, ..., 1/2, (2-d)/2))."""
    s = rectangular(spec, policy)
    report = centers.center_report(s, policy)
    assert not report.coincident_pairs, "rectangular centers can never coincide"
    bary = _barycentric(s, report.circumcenter)
    expected = np.full(spec.d + 1, 0.5)
    expected[-1] = (2 - spec.d) / 2.0
    assert np.max(np.abs(bary - expected)) <= policy.rel * max(spec.d, 1.0), (
        "circumcenter barycentrics must be (1/2, ..., 1/2, (2-d)/2)"
    )
    return report


def _barycentric(s: sx.Simplex, point) -> np.ndarray:
    m = np.vstack([s.vertices.T, np.ones(s.n)])
    return np.linalg.solve(m, np.concatenate([np.asarray(point, float), [1.0]]))


def lift_to_rectangular(
    t: sx.Simplex, policy: TolerancePolicy = DEFAULT_POLICY
) -> tuple[RectSpec, sx.Simplex]:
    """Realize an orthocentric simplex with negative obtuseness as the
    hypotenuse facet of a rectangular simplex one dimension up.

    The legs satisfy b_i^2 t_i = -sigma with t_i the orthocenter
    barycentrics of the input; the Pythagorean identity
    b_i^2 + b_j^2 = -sigma (1/t_i + 1/t_j) reproduces the edge table.
    """
    p = oc.params_of(t, policy)
    if p.rectangular or p.obtuseness >= 0:
        raise NotLiftableError(
            f"not liftable: obtuseness {p.obtuseness:g} >= 0 "
            f"(the orthocenter must be interior)"
        )
    legs = tuple(float(v) for v in np.sqrt(-p.obtuseness / p.bary))
    spec = RectSpec(d=t.dim + 1, legs=legs)
    return spec, rectangular(spec, policy)


# ---------------------------------------------------------------------------
# generalized-kite equiradial family


def _admissibility_sides(d: int, m: int) -> tuple[int, float]:
    n = d + 1 - m
    bound = ((d * d - 3 * d + 4) / (2.0 * (d - 2))) ** 2
    return m * n, bound


def equiradial_admissible(d: int, m: int) -> bool:
    """Existence test for the two-group equiradial family:
    m (d+1-m) < ((d^2 - 3d + 4) / (2 (d-2)))^2 (strict; equality never
    occurs).  Admissibility forces d >= 9."""
    if not (2 <= m <= d - 1):
        raise InputError(f"need 2 <= m <= d-1, got m={m}, d={d}")
    lhs, rhs = _admissibility_sides(d, m)
    return lhs < rhs


@dataclass(frozen=True)
class EquiradialSpec:
    """Two-group equiradial simplex: m equal coordinates, then n = d+1-m
    equal coordinates; ``branch`` selects one of the two root assignments."""

    d: int
    m: int
    branch: int

    def __post_init__(self):
        if self.branch not in (1, 2):
            raise InputError(f"branch must be 1 or 2, got {self.branch}")
        if not (2 <= self.m <= self.d - 1):
            raise InputError(f"need 2 <= m <= d-1, got m={self.m}, d={self.d}")
        lhs, rhs = _admissibility_sides(self.d, self.m)
        if not lhs < rhs:
            raise AdmissibilityError(
                f"(d, m) = ({self.d}, {self.m}) inadmissible: "
                f"m(d+1-m) = {lhs} >= {rhs:.6f}",
                lhs=lhs,
                rhs=rhs,
            )

    @property
    def n(self) -> int:
        return self.d + 1 - self.m


@dataclass(frozen=True)
class EquiradialSolution:
    """Roots and derived parameters of the quadratic
    Q(Z) = Z^2 - (d^2-3d+4-2mn) Z + mn(mn-d):
    xi = (x+m)(1-n), eta = (y+n)(1-m), barycentrics a = -1/x, b = -1/y."""

    xi: float
    eta: float
    x: float
    y: float
    a: float
    b: float


def equiradial_general(
    d: int, m: int, branch: int, policy: TolerancePolicy = DEFAULT_POLICY
) -> tuple[sx.Simplex, EquiradialSolution]:
    """Construct one of the two non-similar equiradial simplices with
    coordinate pattern (a x m, b x n).

    Solves Q(Z) for xi and eta (branch swaps the assignment), recovers
    x = xi/(1-n) - m and y = eta/(1-m) - n, and embeds the all-positive
    parameter vector (-1/x repeated m times, -1/y repeated n times) at
    unit obtuseness scale.  The m-group occupies the first vertex indices.
    """
    spec = EquiradialSpec(d=d, m=m, branch=branch)
    n = spec.n
    mn = m * n
    p = d * d - 3 * d + 4 - 2 * mn
    q = mn * (mn - d)
    disc = p * p - 4.0 * q
    assert disc > 0, "admissibility guarantees distinct real roots"
    root_hi = (p + math.sqrt(disc)) / 2.0
    root_lo = (p - math.sqrt(disc)) / 2.0
    xi, eta = (root_hi, root_lo) if branch == 1 else (root_lo, root_hi)
    x = xi / (1.0 - n) - m
    y = eta / (1.0 - m) - n
    a = -1.0 / x
    b = -1.0 / y
    sol = EquiradialSolution(xi=xi, eta=eta, x=x, y=y, a=a, b=b)

    assert xi > 0 and eta > 0
    assert x + m < 0 and y + n < 0
    scale = abs(x * y)
    assert abs(x * y + n * x + m * y) <= policy.rel * scale
    assert abs(x * y + x + y - (d - 3) * (d - 1)) <= policy.rel * scale
    assert abs(m * a + n * b - 1.0) <= policy.rel

    bary = np.concatenate([np.full(m, a), np.full(n, b)])
    return oc.construct(bary, scale=1.0, policy=policy), sol
