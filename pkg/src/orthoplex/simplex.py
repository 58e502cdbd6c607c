"""Simplex representation, faces, volumes and shape predicates.

A :class:`Simplex` is d+1 vertices in d-space, validated for affine
independence on construction.  Faces are re-embedded isometrically into
their intrinsic dimension so that every operation in the package applies
uniformly at any level; only the edge-length table of a face is
contractual, not its vertex positions.

Vertex indices are 0-based everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import factorial

import numpy as np

from .errors import DegenerateSimplexError, InputError
from .numerics import DEFAULT_POLICY, SymMatrix, TolerancePolicy, gram_embed, sym_eigen

__all__ = [
    "Simplex",
    "Metrics",
    "ShapeFlags",
    "from_vertices",
    "gram",
    "volume",
    "metrics",
    "face",
    "shape_predicates",
    "dihedral_cosines",
    "edge_lengths",
    "squared_edge_table",
    "diameter",
    "facet_indices",
    "subset_volume",
    "facet_volumes",
    "facet_normals",
    "project_to_affine_hull",
    "edge_perpendicularity_residual",
]


@dataclass(frozen=True)
class Simplex:
    """d+1 affinely independent vertices in d-space (d >= 1)."""

    dim: int
    vertices: np.ndarray  # shape (dim+1, dim), read-only

    @property
    def n(self) -> int:
        return self.dim + 1

    def __repr__(self):
        return f"Simplex(dim={self.dim})"


@dataclass(frozen=True)
class Metrics:
    volume: float
    circumradius: float
    inradius: float
    diameter: float


@dataclass(frozen=True)
class ShapeFlags:
    is_regular: bool
    is_equiareal: bool
    is_equiradial: bool
    has_well_distributed_edges: bool


def from_vertices(dim, vertices, policy: TolerancePolicy = DEFAULT_POLICY) -> Simplex:
    """Validate and build a Simplex from dim+1 coordinate vectors.

    Degeneracy is decided on the eigenvalue ratio of the edge-vector Gram
    matrix, so the test is invariant under similarity.
    """
    try:
        arr = np.array(vertices, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"vertices are not a numeric array: {exc}") from exc
    if dim < 1:
        raise InputError(f"dimension must be >= 1, got {dim}")
    if arr.ndim != 2 or arr.shape != (dim + 1, dim):
        raise InputError(
            f"expected {dim + 1} vertices of length {dim}, got array of shape {arr.shape}"
        )
    if not np.all(np.isfinite(arr)):
        raise InputError("vertex coordinates must be finite")
    edges = arr[:-1] - arr[-1]
    g = edges @ edges.T
    vals, _ = sym_eigen(SymMatrix(g, policy))
    lam_max = float(vals[0])
    ratio = float(vals[-1]) / lam_max if lam_max > 0 else 0.0
    if lam_max <= 0 or ratio <= policy.rank_cut:
        raise DegenerateSimplexError(
            f"vertices are affinely dependent (eigenvalue ratio {ratio:.3e})",
            eigen_ratio=ratio,
        )
    arr.flags.writeable = False
    return Simplex(dim=dim, vertices=arr)


def gram(s: Simplex, origin) -> SymMatrix:
    """Gram matrix of the vertices relative to ``origin``."""
    o = np.asarray(origin, dtype=float)
    if o.shape != (s.dim,):
        raise InputError(f"origin must have length {s.dim}")
    p = s.vertices - o
    return SymMatrix(p @ p.T)


def volume(s: Simplex) -> float:
    """d-volume via the edge-vector Gram determinant."""
    return subset_volume(s, range(s.n))


def subset_volume(s: Simplex, index_set) -> float:
    """k-volume of the face spanned by the selected vertices (k = |I|-1)."""
    idx = _check_indices(s, index_set)
    pts = s.vertices[list(idx)]
    k = len(idx) - 1
    if k == 0:
        return 1.0  # counting measure of a point
    edges = pts[:-1] - pts[-1]
    det = float(np.linalg.det(edges @ edges.T))
    return float(np.sqrt(max(det, 0.0))) / factorial(k)


def edge_lengths(s: Simplex) -> np.ndarray:
    """All C(d+1, 2) edge lengths, in lexicographic (i < j) order."""
    v = s.vertices
    return np.array([np.linalg.norm(v[i] - v[j]) for i, j in combinations(range(s.n), 2)])


def squared_edge_table(s: Simplex) -> np.ndarray:
    """(d+1) x (d+1) table of squared distances, zero diagonal."""
    v = s.vertices
    diff = v[:, None, :] - v[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def diameter(s: Simplex) -> float:
    return float(np.max(edge_lengths(s)))


def facet_indices(s: Simplex, i: int) -> tuple[int, ...]:
    """Index set of the facet opposite vertex i."""
    return tuple(j for j in range(s.n) if j != i)


def facet_volumes(s: Simplex) -> np.ndarray:
    """(d-1)-volumes of all d+1 facets, facet i opposite vertex i."""
    return np.array([subset_volume(s, facet_indices(s, i)) for i in range(s.n)])


def metrics(s: Simplex) -> Metrics:
    from . import centers  # circumradius/inradius live there

    _, big_r = centers.circumcenter(s)
    _, small_r = centers.incenter(s)
    return Metrics(
        volume=volume(s),
        circumradius=big_r,
        inradius=small_r,
        diameter=diameter(s),
    )


def face(s: Simplex, index_set, policy: TolerancePolicy = DEFAULT_POLICY) -> Simplex:
    """Face spanned by the selected vertices, re-embedded isometrically
    into (|I|-1)-space.  Vertex order follows the index set."""
    idx = _check_indices(s, index_set)
    if len(idx) < 2:
        raise InputError("a face needs at least 2 vertices")
    pts = s.vertices[list(idx)]
    centered = pts - pts.mean(axis=0)
    emb = gram_embed(SymMatrix(centered @ centered.T, policy), policy)
    k = len(idx) - 1
    assert emb.shape[1] == k, "face of a valid simplex cannot be degenerate"
    return from_vertices(k, emb, policy)


def _check_indices(s: Simplex, index_set) -> tuple[int, ...]:
    idx = tuple(int(i) for i in index_set)
    if len(set(idx)) != len(idx):
        raise InputError(f"duplicate vertex indices in {idx}")
    if any(i < 0 or i >= s.n for i in idx):
        raise InputError(f"vertex index out of range in {idx}")
    return idx


def project_to_affine_hull(point, pts) -> np.ndarray:
    """Orthogonal projection of ``point`` onto the affine hull of ``pts``."""
    base = pts[0]
    basis = pts[1:] - base
    if basis.shape[0] == 0:
        return np.array(base, dtype=float)
    g = basis @ basis.T
    coeff = np.linalg.solve(g, basis @ (np.asarray(point, float) - base))
    return base + coeff @ basis


def facet_normals(s: Simplex) -> np.ndarray:
    """Outward unit normals, row i for the facet opposite vertex i.

    The outward direction is from the vertex toward its altitude foot.
    """
    normals = np.empty_like(s.vertices)
    for i in range(s.n):
        pts = s.vertices[list(facet_indices(s, i))]
        foot = project_to_affine_hull(s.vertices[i], pts)
        v = foot - s.vertices[i]
        normals[i] = v / np.linalg.norm(v)
    return normals


def dihedral_cosines(s: Simplex) -> np.ndarray:
    """Cosines of the interior dihedral angles, cos(phi_ij) = -n_i . n_j.

    Diagonal entries are NaN (unused).
    """
    if s.dim < 2:
        raise InputError("dihedral angles need dimension >= 2")
    n = facet_normals(s)
    table = -(n @ n.T)
    np.fill_diagonal(table, np.nan)
    return table


def shape_predicates(s: Simplex, policy: TolerancePolicy = DEFAULT_POLICY) -> ShapeFlags:
    """Regular / equiareal / equiradial / well-distributed-edge tests.

    All four compare per-facet (or per-edge) quantities with max-relative
    scaling, so the flags are invariant under similarity.
    """
    from . import centers

    edges = edge_lengths(s)
    sq = squared_edge_table(s)

    facet_radii = []
    facet_sq_sums = []
    for i in range(s.n):
        idx = facet_indices(s, i)
        f = face(s, idx, policy)
        _, r = centers.circumcenter(f)
        facet_radii.append(r)
        facet_sq_sums.append(sum(sq[a][b] for a, b in combinations(idx, 2)))

    return ShapeFlags(
        is_regular=policy.all_close(edges),
        is_equiareal=policy.all_close(facet_volumes(s)),
        is_equiradial=policy.all_close(facet_radii),
        has_well_distributed_edges=policy.all_close(facet_sq_sums),
    )


def edge_perpendicularity_residual(s: Simplex) -> float:
    """Worst normalized |(A_i - A_j) . (A_k - A_l)| over disjoint edge pairs.

    Zero residual characterizes orthocentric simplices; for d = 2 there
    are no disjoint pairs and the residual is 0.
    """
    v = s.vertices
    worst = 0.0
    for (i, j), (k, l) in combinations(combinations(range(s.n), 2), 2):
        if {i, j} & {k, l}:
            continue
        e1 = v[i] - v[j]
        e2 = v[k] - v[l]
        res = abs(float(e1 @ e2)) / (np.linalg.norm(e1) * np.linalg.norm(e2))
        worst = max(worst, res)
    return worst
