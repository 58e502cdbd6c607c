"""Numerical verification suites for the center-coincidence theory.

Each suite sweeps constructed family fixtures and seeded random samples,
evaluating the relevant identities and predicates.  A check compares a
residual against its allowance; ``max_residual`` reports the largest
normalized ratio residual/allowance seen (pass means every ratio <= 1),
and the first violation is captured as a counterexample payload carrying
the simplex vertices and the named residual scalars.

Coincidence theorems of the form "centers coincide => regular" are tested
contrapositively (non-regular => centers separated), since exact
coincidence is a measure-zero event under sampling.  Equivalences are
tested in margin-robust form: a side must hold with 10x margin before the
other side is enforced at plain tolerance.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import DegenerateSimplexError, InputError, NotLiftableError
from .numerics import DEFAULT_POLICY, TolerancePolicy
from . import centers
from . import families
from . import orthocentric as oc
from . import simplex as sx

__all__ = [
    "SuiteConfig",
    "SuiteResult",
    "VerificationReport",
    "SUITE_NAMES",
    "suite_center_equivalences",
    "suite_regularity",
    "suite_euler_feuerbach",
    "suite_rectangular",
    "run_all",
]

SUITE_NAMES = (
    "center_equivalences",
    "regularity",
    "euler_feuerbach",
    "rectangular",
)

_ALIASES = {
    "centers": "center_equivalences",
    "equivalences": "center_equivalences",
    "euler": "euler_feuerbach",
    "feuerbach": "euler_feuerbach",
    "rect": "rectangular",
}


@dataclass(frozen=True)
class SuiteConfig:
    suites: tuple[str, ...] = SUITE_NAMES
    samples: int = 60
    seed: int = 42
    d_min: int = 2
    d_max: int = 6
    policy: TolerancePolicy = DEFAULT_POLICY

    def __post_init__(self):
        if self.samples < 1:
            raise InputError(f"samples must be >= 1, got {self.samples}")
        if self.seed < 0:
            raise InputError(f"seed must be non-negative, got {self.seed}")
        if not (2 <= self.d_min <= self.d_max <= 10):
            raise InputError(
                f"need 2 <= d_min <= d_max <= 10, got [{self.d_min}, {self.d_max}]"
            )
        object.__setattr__(self, "suites", canonical_suites(self.suites))


def canonical_suites(names) -> tuple[str, ...]:
    out = []
    for name in names:
        resolved = _ALIASES.get(name, name)
        if resolved not in SUITE_NAMES:
            raise InputError(f"unknown suite {name!r}; known: {', '.join(SUITE_NAMES)}")
        if resolved not in out:
            out.append(resolved)
    return tuple(out)


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    passed: bool
    samples: int
    max_residual: float
    counterexample: dict | None
    elapsed_ms: int


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    seed: int
    suites: tuple[SuiteResult, ...]

    def to_json_dict(self, timings: bool = False) -> dict:
        """JSON payload; elapsed_ms is zeroed unless timings are requested,
        keeping the default report byte-deterministic for a fixed seed."""
        return {
            "pass": self.passed,
            "seed": self.seed,
            "suites": [
                {
                    "suite": r.suite,
                    "pass": r.passed,
                    "samples": r.samples,
                    "max_residual": r.max_residual,
                    "counterexample": r.counterexample,
                    "elapsed_ms": r.elapsed_ms if timings else 0,
                }
                for r in self.suites
            ],
        }


class _Recorder:
    """Accumulates checks; the first violation becomes the counterexample."""

    def __init__(self, name: str):
        self.name = name
        self.samples = 0
        self.max_ratio = 0.0
        self.counterexample: dict | None = None

    def sample(self):
        self.samples += 1

    def check(self, label: str, residual: float, allowed: float,
              simplex: sx.Simplex | None = None, **extra):
        ratio = float(residual) / float(allowed)
        self.max_ratio = max(self.max_ratio, ratio)
        if residual > allowed and self.counterexample is None:
            payload = {
                "check": label,
                "residual": float(residual),
                "allowed": float(allowed),
                "residuals": {k: _plain(v) for k, v in extra.items()},
            }
            if simplex is not None:
                payload["simplex"] = {
                    "dim": simplex.dim,
                    "vertices": simplex.vertices.tolist(),
                }
            self.counterexample = payload

    def fail(self, label: str, simplex: sx.Simplex | None = None, **extra):
        self.check(label, 1.0, 0.5, simplex=simplex, **extra)

    def result(self, elapsed_ms: int) -> SuiteResult:
        return SuiteResult(
            suite=self.name,
            passed=self.counterexample is None,
            samples=self.samples,
            max_residual=self.max_ratio,
            counterexample=self.counterexample,
            elapsed_ms=elapsed_ms,
        )


def _plain(v):
    if isinstance(v, (np.floating, float)):
        return float(v)
    if isinstance(v, (np.integer, int)):
        return int(v)
    if isinstance(v, np.ndarray):
        return v.tolist()
    return v


def _sub_seed(config: SuiteConfig, *parts: int) -> int:
    ss = np.random.SeedSequence([config.seed, *parts])
    return int(ss.generate_state(1, dtype=np.uint64)[0] >> 1)


def _random_simplex(d: int, rng, policy) -> sx.Simplex:
    while True:
        try:
            return sx.from_vertices(d, rng.normal(0.0, 1.0, size=(d + 1, d)), policy)
        except DegenerateSimplexError:
            continue


def _per_dim(config: SuiteConfig) -> int:
    ndims = config.d_max - config.d_min + 1
    return max(1, config.samples // ndims)


# ---------------------------------------------------------------------------
# suite: center equivalences


def suite_center_equivalences(config: SuiteConfig) -> SuiteResult:
    """Margin-robust tests of the three center-coincidence equivalences:
    incenter=centroid <-> equiareal; centroid=circumcenter <-> equal
    per-facet squared-edge sums; circumcenter=incenter <-> circumcenter
    interior and equiradial."""
    t0 = time.perf_counter()
    rec = _Recorder("center_equivalences")
    pol = config.policy
    tol = pol.rel
    for d in range(config.d_min, config.d_max + 1):
        rng = np.random.default_rng(_sub_seed(config, 1, d))
        fixtures = [families.regular(d, 1.5, pol)]
        legs = tuple(rng.uniform(0.5, 2.0, size=d))
        fixtures.append(families.rectangular(families.RectSpec(d, legs), pol))
        if d >= 4:
            fixtures.append(families.kite(families.equiradial_kite(d, pol), pol))
        if d >= 9:
            for branch in (1, 2):
                try:
                    fixtures.append(families.equiradial_general(d, 2, branch, pol)[0])
                except InputError:
                    pass
        for _ in range(_per_dim(config)):
            fixtures.append(_random_simplex(d, rng, pol))
        for s in fixtures:
            rec.sample()
            _check_equivalences(rec, s, pol, tol)
    return rec.result(int((time.perf_counter() - t0) * 1000))


def _check_equivalences(rec: _Recorder, s: sx.Simplex, pol: TolerancePolicy, tol: float):
    diam = sx.diameter(s)
    g = centers.centroid(s)
    c, big_r = centers.circumcenter(s)
    i, inr = centers.incenter(s)
    d_ig = float(np.linalg.norm(i - g)) / diam
    d_gc = float(np.linalg.norm(g - c)) / diam
    d_ci = float(np.linalg.norm(c - i)) / diam

    # contract checks keep the suite sensitive to faulty center
    # implementations (the equivalence implications alone are blind to
    # mutations that preserve symmetric fixtures)
    vertex_dists = np.linalg.norm(s.vertices - c, axis=1)
    facet_dists = [
        np.linalg.norm(
            i - sx.project_to_affine_hull(i, s.vertices[list(sx.facet_indices(s, k))])
        )
        for k in range(s.n)
    ]

    areas_spread = pol.spread(sx.facet_volumes(s))
    sq = sx.squared_edge_table(s)
    wde_spread = pol.spread(
        [
            sum(sq[a][b] for a, b in combinations(sx.facet_indices(s, k), 2))
            for k in range(s.n)
        ]
    )
    radii_spread = pol.spread(
        [centers.circumcenter(sx.face(s, sx.facet_indices(s, k), pol))[1] for k in range(s.n)]
    )
    m = np.vstack([s.vertices.T, np.ones(s.n)])
    cc_bary = np.linalg.solve(m, np.concatenate([c, [1.0]]))
    bary_min = float(np.min(cc_bary))

    scal = dict(d_ig=d_ig, d_gc=d_gc, d_ci=d_ci, areas_spread=areas_spread,
                wde_spread=wde_spread, radii_spread=radii_spread, cc_bary_min=bary_min)

    rec.check("circumcenter equidistance contract",
              float(np.max(np.abs(vertex_dists - big_r))), tol * diam, s, **scal)
    rec.check("incenter facet-distance contract",
              float(np.max(np.abs(np.asarray(facet_dists) - inr))), tol * diam, s, **scal)

    if d_ig <= tol / 10:
        rec.check("incenter=centroid => equiareal", areas_spread, tol, s, **scal)
    if areas_spread <= tol / 10:
        rec.check("equiareal => incenter=centroid", d_ig, tol, s, **scal)
    if d_gc <= tol / 10:
        rec.check("centroid=circumcenter => well-distributed edges", wde_spread, tol, s, **scal)
    if wde_spread <= tol / 10:
        rec.check("well-distributed edges => centroid=circumcenter", d_gc, tol, s, **scal)
    if d_ci <= tol / 10:
        rec.check("circumcenter=incenter => equiradial", radii_spread, tol, s, **scal)
        rec.check("circumcenter=incenter => interior", max(-bary_min, 0.0), tol, s, **scal)
    if radii_spread <= tol / 10 and bary_min >= 10 * tol:
        rec.check("equiradial and interior => circumcenter=incenter", d_ci, tol, s, **scal)


# ---------------------------------------------------------------------------
# suite: regularity (contrapositive coincidence theorems)


def suite_regularity(config: SuiteConfig) -> SuiteResult:
    """Non-regular orthocentric simplices must keep all four centers
    pairwise separated, and center separations must shrink along a
    near-regular perturbation sequence."""
    t0 = time.perf_counter()
    rec = _Recorder("regularity")
    pol = config.policy
    for d in range(config.d_min, config.d_max + 1):
        per_kind = max(1, _per_dim(config) // 2)
        for kind in (oc.ACUTE, oc.OBTUSE):
            produced = 0
            attempt = 0
            while produced < per_kind:
                p = oc.sample_params(d, kind, _sub_seed(config, 2, d, attempt))
                attempt += 1
                s = oc.construct(p.bary, 1.0, pol)
                if pol.spread(sx.edge_lengths(s)) < 0.01:
                    continue  # too close to regular for the contrapositive
                produced += 1
                rec.sample()
                _check_separation(rec, s, pol)

        # continuity sanity: separations shrink with the perturbation
        rng = np.random.default_rng(_sub_seed(config, 2, d, 10**6))
        base = families.regular(d, 1.0, pol)
        dirs = rng.normal(size=base.vertices.shape)
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
        seps = []
        for delta in (1e-2, 1e-3, 1e-4):
            s = sx.from_vertices(d, base.vertices + delta * dirs, pol)
            rep = centers.center_report(s, pol)
            pts = [rep.centroid, rep.circumcenter, rep.incenter, rep.monge]
            sep = max(
                float(np.linalg.norm(a - b)) for a, b in combinations(pts, 2)
            ) / sx.diameter(s)
            rec.check(
                "near-regular separation bounded by perturbation",
                sep,
                100.0 * delta,
                s,
                delta=delta,
                separation=sep,
            )
            seps.append(sep)
        rec.sample()
        for k in range(len(seps) - 1):
            rec.check(
                "separations shrink with the perturbation",
                seps[k + 1],
                seps[k],
                delta_from=(1e-2, 1e-3, 1e-4)[k],
                separations=seps,
            )
    return rec.result(int((time.perf_counter() - t0) * 1000))


def _check_separation(rec: _Recorder, s: sx.Simplex, pol: TolerancePolicy):
    rep = centers.center_report(s, pol)
    diam = sx.diameter(s)
    pts = dict(centroid=rep.centroid, circumcenter=rep.circumcenter,
               incenter=rep.incenter, orthocenter=rep.monge)
    for (na, a), (nb, b) in combinations(pts.items(), 2):
        sep = float(np.linalg.norm(a - b))
        # separation must exceed the coincidence threshold: ratio < 1
        rec.check(
            f"separated: {na}-{nb}",
            pol.rel * diam,
            sep,
            s,
            pair=f"{na}-{nb}",
            separation=sep,
        )


# ---------------------------------------------------------------------------
# suite: Euler line and mid-face spheres


def suite_euler_feuerbach(config: SuiteConfig) -> SuiteResult:
    """On every orthocentric fixture: centroid on the circumcenter-
    orthocenter segment at ratio (d-1):2, the whole family of mid-face
    spheres equidistant from the k-face centroids, altitude feet on the
    facet-centroid sphere, the vertex-sum identity, and the reciprocal
    distance parameters of the orthocentric system."""
    t0 = time.perf_counter()
    rec = _Recorder("euler_feuerbach")
    pol = config.policy
    for d in range(config.d_min, config.d_max + 1):
        rng = np.random.default_rng(_sub_seed(config, 3, d))
        fixtures = [families.regular(d, 1.0, pol)]
        legs = tuple(rng.uniform(0.5, 2.0, size=d))
        fixtures.append(families.rectangular(families.RectSpec(d, legs), pol))
        if d >= 4:
            fixtures.append(families.kite(families.equiradial_kite(d, pol), pol))
        per_kind = max(1, _per_dim(config) // 2)
        for kind in (oc.ACUTE, oc.OBTUSE):
            for i in range(per_kind):
                p = oc.sample_params(d, kind, _sub_seed(config, 3, d, i))
                fixtures.append(oc.construct(p.bary, 1.0, pol))
        for s in fixtures:
            rec.sample()
            _check_euler_feuerbach(rec, s, pol)
    return rec.result(int((time.perf_counter() - t0) * 1000))


def _check_euler_feuerbach(rec: _Recorder, s: sx.Simplex, pol: TolerancePolicy):
    d = s.dim
    diam = sx.diameter(s)
    h = centers.orthocenter(s, pol)
    assert h is not None, "fixtures are orthocentric by construction"
    euler = centers.euler_line(s, pol)
    if not euler.coincident:
        rec.check("euler collinearity", euler.collinearity_residual, pol.rel * diam, s,
                  ratio=euler.ratio)
        target = (d - 1) / 2.0
        rec.check("euler ratio (d-1):2", abs(euler.ratio - target), 10 * pol.rel * target,
                  s, ratio=euler.ratio)

    g = centers.centroid(s)
    c, big_r = centers.circumcenter(s)
    vec = (s.vertices - c).sum(axis=0) - (d - 1) * (h - c)
    rec.check("vertex sum identity", float(np.linalg.norm(vec)), pol.rel * diam, s)

    for k in range(d):
        sphere = centers.feuerbach_sphere(s, k, pol)
        rec.check(f"feuerbach k={k} equidistance", sphere.max_residual,
                  10 * pol.rel * sphere.radius, s, k=k, radius=sphere.radius)
        if k == 0:
            rec.check("feuerbach k=0 center is circumcenter",
                      float(np.linalg.norm(sphere.center - c)), pol.rel * diam, s)
            rec.check("feuerbach k=0 radius is circumradius",
                      abs(sphere.radius - big_r), pol.rel * big_r, s)
        if k == d - 1:
            feet = np.array([
                sx.project_to_affine_hull(
                    s.vertices[i], s.vertices[list(sx.facet_indices(s, i))]
                )
                for i in range(s.n)
            ])
            dist = np.linalg.norm(feet - sphere.center, axis=1)
            rec.check("altitude feet on facet-centroid sphere",
                      float(np.max(np.abs(dist - sphere.radius))),
                      10 * pol.rel * sphere.radius, s)

    p = oc.params_of(s, pol)
    if not p.rectangular:
        lam = oc.lambda_params(p)
        rec.check("reciprocal lambda sum", abs(float(np.sum(1.0 / lam.all_values))),
                  100 * pol.abs, s)
        pts = np.vstack([h, s.vertices])
        vals = lam.all_values
        for a, b in combinations(range(d + 2), 2):
            want = vals[a] + vals[b]
            got = float(np.sum((pts[a] - pts[b]) ** 2))
            rec.check("lambda pairwise distances", abs(want - got), pol.rel * diam**2, s,
                      pair=(a, b))


# ---------------------------------------------------------------------------
# suite: rectangular simplices


def suite_rectangular(config: SuiteConfig) -> SuiteResult:
    """Closed-form leg metrics against coordinate oracles, pairwise-distinct
    centers, hypotenuse-facet lift round trips, and rejection of lifts from
    non-negative obtuseness."""
    t0 = time.perf_counter()
    rec = _Recorder("rectangular")
    pol = config.policy
    for d in range(max(config.d_min, 2), min(config.d_max, 8) + 1):
        rng = np.random.default_rng(_sub_seed(config, 4, d))
        for _ in range(_per_dim(config)):
            rec.sample()
            legs = tuple(rng.uniform(0.5, 2.0, size=d))
            _check_rectangular(rec, families.RectSpec(d, legs), pol)
        if d >= 3:
            rec.sample()
            p = oc.sample_params(d - 1, oc.OBTUSE, _sub_seed(config, 4, d, 7))
            t = oc.construct(p.bary, 1.0, pol)
            try:
                families.lift_to_rectangular(t, pol)
            except NotLiftableError:
                pass
            else:
                rec.fail("lift must reject non-negative obtuseness", t)
    return rec.result(int((time.perf_counter() - t0) * 1000))


def _check_rectangular(rec: _Recorder, spec: families.RectSpec, pol: TolerancePolicy):
    d = spec.d
    s = families.rectangular(spec, pol)
    m = families.rect_metrics(spec)
    diam = sx.diameter(s)
    scale = max(spec.legs)

    rec.check("legs volume", abs(m.volume - sx.volume(s)), pol.rel * m.volume, s)
    hyp = tuple(range(d))
    rec.check("hypotenuse facet volume",
              abs(m.hyp_volume - sx.subset_volume(s, hyp)), pol.rel * m.hyp_volume, s)
    foot = sx.project_to_affine_hull(s.vertices[d], s.vertices[list(hyp)])
    rec.check("corner altitude", abs(m.altitude - float(np.linalg.norm(foot - s.vertices[d]))),
              pol.rel * m.altitude, s)
    i, r = centers.incenter(s)
    rec.check("leg inradius", abs(m.inradius - r), pol.rel * r, s)
    rec.check("incenter equals (r, ..., r)",
              float(np.max(np.abs(i - m.inradius))), pol.rel * diam, s)
    c, big_r = centers.circumcenter(s)
    rec.check("leg circumradius", abs(m.r_squared - big_r**2), pol.rel * m.r_squared, s)
    rec.check("circumcenter midpoint form",
              float(np.linalg.norm(c - m.circumcenter)), pol.rel * diam, s)
    rec.check("hypotenuse orthocenter",
              float(np.linalg.norm(m.hyp_orthocenter - foot)), pol.rel * diam, s)

    report = families.rect_centers_distinct(spec, pol)
    pts = dict(centroid=report.centroid, circumcenter=report.circumcenter,
               incenter=report.incenter, orthocenter=report.monge)
    for (na, a), (nb, b) in combinations(pts.items(), 2):
        rec.check(f"rect separated: {na}-{nb}", pol.rel * diam,
                  float(np.linalg.norm(a - b)), s, pair=f"{na}-{nb}")

    if d >= 3:  # the d = 2 hypotenuse facet is a segment, below the lift's domain
        facet = sx.face(s, hyp, pol)
        lifted_spec, _ = families.lift_to_rectangular(facet, pol)
        rec.check("lift round trip",
                  float(np.max(np.abs(np.asarray(lifted_spec.legs) - np.asarray(spec.legs)))),
                  10 * pol.rel * scale, s, legs=list(spec.legs),
                  lifted=list(lifted_spec.legs))


# ---------------------------------------------------------------------------


_SUITES = {
    "center_equivalences": suite_center_equivalences,
    "regularity": suite_regularity,
    "euler_feuerbach": suite_euler_feuerbach,
    "rectangular": suite_rectangular,
}


def run_all(config: SuiteConfig) -> VerificationReport:
    """Run the requested suites; deterministic for a fixed config seed."""
    results = tuple(_SUITES[name](config) for name in config.suites)
    return VerificationReport(
        passed=all(r.passed for r in results),
        seed=config.seed,
        suites=results,
    )
