"""Shared numerical kernels.

Everything geometric in this package funnels its floating-point decisions
through a single :class:`TolerancePolicy`, so that no predicate carries a
private epsilon.  The other kernels are a symmetric eigensolver wrapper, a
rank-revealing embedding of positive semidefinite Gram matrices into
coordinates, and the closed-form determinant of the "constant rows plus
diagonal" matrix that drives the orthocentric sign analysis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, NotPSDError, NumericError

__all__ = [
    "TolerancePolicy",
    "DEFAULT_POLICY",
    "SymMatrix",
    "sym_eigen",
    "det_structured",
    "gram_embed",
]


@dataclass(frozen=True)
class TolerancePolicy:
    """Tolerance bundle used by every geometric predicate.

    rel        relative tolerance for comparisons of like-scaled quantities
    abs        absolute floor for quantities that may legitimately vanish
    rank_cut   eigenvalue ratio (lambda / lambda_max) below which an
               eigenvalue counts as zero in rank decisions
    """

    rel: float = 1e-9
    abs: float = 1e-12
    rank_cut: float = 1e-10

    def __post_init__(self):
        for name in ("rel", "abs", "rank_cut"):
            v = getattr(self, name)
            if not (0.0 < v < 1.0):
                raise InputError(f"tolerance {name}={v!r} must lie strictly in (0, 1)")

    def isclose(self, x: float, y: float) -> bool:
        """Max-relative closeness: |x-y| <= rel * max(|x|, |y|, abs)."""
        return abs(x - y) <= self.rel * max(abs(x), abs(y), self.abs)

    def all_close(self, values) -> bool:
        """True when every pairwise gap in ``values`` passes :meth:`isclose`."""
        v = np.asarray(values, dtype=float)
        if v.size == 0:
            return True
        scale = max(float(np.max(np.abs(v))), self.abs)
        return float(np.max(v) - np.min(v)) <= self.rel * scale

    def spread(self, values) -> float:
        """Relative spread (max - min) / max(|values|, abs) of a sample."""
        v = np.asarray(values, dtype=float)
        scale = max(float(np.max(np.abs(v))), self.abs)
        return float(np.max(v) - np.min(v)) / scale


DEFAULT_POLICY = TolerancePolicy()


class SymMatrix:
    """Real symmetric matrix of small order.

    Input is checked for symmetry within tolerance and then symmetrized
    exactly, so downstream eigensolves never see an asymmetric residue.
    """

    __slots__ = ("a",)

    def __init__(self, entries, policy: TolerancePolicy = DEFAULT_POLICY):
        arr = np.array(entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InputError(f"expected a square matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise InputError("matrix entries must be finite")
        scale = max(float(np.max(np.abs(arr))) if arr.size else 0.0, 1.0)
        skew = float(np.max(np.abs(arr - arr.T))) if arr.size else 0.0
        if skew > policy.rel * scale + policy.abs:
            raise InputError(f"matrix is not symmetric (max asymmetry {skew:g})")
        sym = (arr + arr.T) / 2.0
        sym.flags.writeable = False
        object.__setattr__(self, "a", sym)

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def __repr__(self):
        return f"SymMatrix(n={self.n})"


def sym_eigen(m: SymMatrix | np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a symmetric matrix.

    Returns (eigenvalues in descending order, eigenvectors as matching
    orthonormal columns).
    """
    a = m.a if isinstance(m, SymMatrix) else SymMatrix(m).a
    try:
        vals, vecs = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"symmetric eigensolve failed to converge: {exc}") from exc
    order = np.argsort(vals)[::-1]
    return vals[order], vecs[:, order]


def det_structured(a, b) -> float:
    """Determinant of the n x n matrix with row-constant entries a_i off the
    diagonal and a_i + b_i on it.

    Evaluates the polynomial form  prod(b) + sum_i a_i * prod_{j != i} b_j,
    which equals (b_1 ... b_n) (1 + sum a_i / b_i) away from zeros of b and
    extends it continuously onto them.  Total: never raises.
    """
    av = np.asarray(a, dtype=float)
    bv = np.asarray(b, dtype=float)
    if av.shape != bv.shape or av.ndim != 1:
        raise InputError("a and b must be 1-d sequences of equal length")
    n = av.size
    if n == 0:
        return 1.0
    # prefix[i] = b_0 ... b_{i-1}, suffix[i] = b_{i+1} ... b_{n-1}
    prefix = np.concatenate(([1.0], np.cumprod(bv)[:-1]))
    suffix = np.concatenate((np.cumprod(bv[::-1])[:-1][::-1], [1.0]))
    prod_except = prefix * suffix
    full = prefix[-1] * bv[-1]
    return float(full + np.dot(av, prod_except))


def gram_embed(g: SymMatrix, policy: TolerancePolicy = DEFAULT_POLICY) -> np.ndarray:
    """Embed a PSD Gram matrix as points whose inner products reproduce it.

    Returns an (n, r) array of row points, r being the numerical rank:
    the count of eigenvalues above rank_cut * lambda_max.  Eigenvalues in
    the band [-rank_cut * lambda_max, rank_cut * lambda_max] are treated
    as round-off from exact singularity and clamped to zero; anything
    below the band raises :class:`NotPSDError`.
    """
    vals, vecs = sym_eigen(g)
    lam_max = max(float(vals[0]), 0.0)
    cut = policy.rank_cut * lam_max
    if float(vals[-1]) < -cut:
        ratio = float(vals[-1]) / lam_max if lam_max > 0 else float(vals[-1])
        raise NotPSDError(
            f"matrix has a negative eigenvalue {vals[-1]:g} below tolerance",
            min_ratio=ratio,
        )
    keep = vals > cut
    r = int(np.count_nonzero(keep))
    pts = vecs[:, keep] * np.sqrt(np.clip(vals[keep], 0.0, None))
    return pts
