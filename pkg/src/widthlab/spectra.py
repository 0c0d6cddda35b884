"""Finite-dimensional operator model: s-numbers, widths, ellipsoids, sections.

Index conventions used across the package:

* s-numbers are 1-indexed: ``s(1) >= s(2) >= ...`` are the singular values
  of the generating matrix (the eigenvalues of ``(A^T A)^(1/2)``);
* Kolmogorov widths are 0-indexed and, for an ellipsoid ``K = A(B)``,
  satisfy ``d_n(K) = s_{n+1}(A)``, with ``d_n = 0`` beyond the rank.

All public objects are immutable after construction; every operation here is
a pure function, so unrestricted concurrent use is safe.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError

__all__ = [
    "RANK_RCOND",
    "SingularSpectrum",
    "WidthSequence",
    "Ellipsoid",
    "singular_spectrum",
    "ellipsoid",
    "kolmogorov_widths",
    "section_spectrum",
    "truncate_ellipsoid",
    "scale_ellipsoid",
    "ellipsoid_membership",
]

# Singular values below RANK_RCOND * s_1 count as zero for rank decisions.
RANK_RCOND = 1e-12

# Orthonormality slack accepted for subspace bases.
ORTHO_TOL = 1e-9


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.setflags(write=False)
    return a


def _as_operator(a, name: str = "matrix") -> np.ndarray:
    """Validate and return a dense 2-d float array."""
    arr = np.asarray(a, dtype=float)
    if arr.ndim != 2:
        raise InputError(f"{name}: expected a 2-d array, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InputError(f"{name}: dimensions must be positive, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{name}: entries must be finite")
    return arr


def _as_vector(y, dim: int, name: str = "vector") -> np.ndarray:
    v = np.asarray(y, dtype=float).reshape(-1)
    if v.shape[0] != dim:
        raise InputError(f"{name}: expected length {dim}, got {v.shape[0]}")
    if not np.all(np.isfinite(v)):
        raise InputError(f"{name}: entries must be finite")
    return v


def _check_orthonormal_columns(q: np.ndarray, name: str) -> None:
    if q.shape[1] == 0:
        return
    gram = q.T @ q
    if np.max(np.abs(gram - np.eye(q.shape[1]))) > ORTHO_TOL:
        raise InputError(f"{name}: columns are not orthonormal (tolerance {ORTHO_TOL:g})")


def _rank_from_values(values: np.ndarray, rcond: float) -> int:
    if values.size == 0:
        return 0
    cutoff = rcond * values[0]
    return int(np.count_nonzero(values > max(cutoff, 0.0)))


def nullspace_basis(m: np.ndarray, rcond: float = RANK_RCOND) -> np.ndarray:
    """Orthonormal basis of ker(m) as columns.

    Columns of ``m`` that are exactly zero contribute exact coordinate basis
    vectors; the rest of the kernel comes from an SVD of the nonzero-column
    block.  The split keeps kernels of axis-aligned constraints exact in
    floating point, which the diagonal-model experiments rely on.
    """
    m = np.atleast_2d(np.asarray(m, dtype=float))
    n = m.shape[1]
    if m.shape[0] == 0:
        return np.eye(n)
    zero_cols = np.where(~m.any(axis=0))[0]
    live_cols = np.where(m.any(axis=0))[0]
    blocks = []
    if zero_cols.size:
        coord = np.zeros((n, zero_cols.size))
        coord[zero_cols, np.arange(zero_cols.size)] = 1.0
        blocks.append(coord)
    if live_cols.size:
        sub = m[:, live_cols]
        _, sv, vh = np.linalg.svd(sub)
        rank = _rank_from_values(sv, rcond)
        if rank < sub.shape[1]:
            emb = np.zeros((n, sub.shape[1] - rank))
            emb[live_cols, :] = vh[rank:].T
            blocks.append(emb)
    if not blocks:
        return np.zeros((n, 0))
    return np.hstack(blocks)


@dataclass(frozen=True, eq=False)
class SingularSpectrum:
    """Nonincreasing s-numbers with the rank decided by a relative cutoff.

    ``values`` is 0-based storage for the 1-indexed sequence; use :meth:`s`
    for the conventional indexing.
    """

    values: np.ndarray
    rank: int

    def __post_init__(self):
        object.__setattr__(self, "values", _freeze(np.asarray(self.values, dtype=float).reshape(-1)))
        v = self.values
        if v.size and (np.any(v < 0) or np.any(np.diff(v) > 0)):
            raise InputError("singular spectrum must be nonnegative and nonincreasing")
        if not 0 <= self.rank <= v.size:
            raise InputError(f"rank {self.rank} outside [0, {v.size}]")

    def __len__(self) -> int:
        return int(self.values.size)

    def s(self, n: int) -> float:
        """1-indexed s-number; zero beyond the stored length."""
        if n < 1:
            raise InputError(f"s-numbers are 1-indexed, got n={n}")
        return float(self.values[n - 1]) if n <= len(self) else 0.0


@dataclass(frozen=True, eq=False)
class WidthSequence:
    """Kolmogorov widths ``d_0 >= d_1 >= ...`` of an ellipsoid; zero beyond rank."""

    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _freeze(np.asarray(self.values, dtype=float).reshape(-1)))
        v = self.values
        if v.size and (np.any(v < 0) or np.any(np.diff(v) > 0)):
            raise InputError("width sequence must be nonnegative and nonincreasing")

    def __len__(self) -> int:
        return int(self.values.size)

    def width(self, n: int) -> float:
        """0-indexed width; zero beyond the stored length."""
        if n < 0:
            raise InputError(f"widths are 0-indexed, got n={n}")
        return float(self.values[n]) if n < len(self) else 0.0


@dataclass(frozen=True, eq=False)
class Ellipsoid:
    """The set ``A(B)``: image of the unit ball under ``generator``.

    ``span_basis`` holds orthonormal columns spanning the column space of the
    generator (the closed linear span of the ellipsoid); ``right_basis``
    holds the matching right singular vectors, so
    ``generator ~= span_basis @ diag(s_1..s_r) @ right_basis.T``.
    """

    generator: np.ndarray
    spectrum: SingularSpectrum
    span_basis: np.ndarray
    right_basis: np.ndarray
    rcond: float = RANK_RCOND

    def __post_init__(self):
        object.__setattr__(self, "generator", _freeze(self.generator))
        object.__setattr__(self, "span_basis", _freeze(self.span_basis))
        object.__setattr__(self, "right_basis", _freeze(self.right_basis))
        _check_orthonormal_columns(self.span_basis, "span_basis")
        if self.span_basis.shape[1] != self.spectrum.rank:
            raise InputError("span dimension must equal the spectrum rank")

    @property
    def ambient_dim(self) -> int:
        return int(self.generator.shape[0])

    @property
    def domain_dim(self) -> int:
        return int(self.generator.shape[1])

    @property
    def rank(self) -> int:
        return self.spectrum.rank


def singular_spectrum(a, rcond: float = RANK_RCOND) -> SingularSpectrum:
    """Singular values of ``a`` in nonincreasing order, with rank cutoff."""
    arr = _as_operator(a)
    values = np.linalg.svd(arr, compute_uv=False)
    return SingularSpectrum(values=values, rank=_rank_from_values(values, rcond))


def ellipsoid(a, rcond: float = RANK_RCOND) -> Ellipsoid:
    """Build the ellipsoid ``a(B)`` with its SVD data cached."""
    arr = _as_operator(a, "generator")
    u, sv, vh = np.linalg.svd(arr, full_matrices=False)
    rank = _rank_from_values(sv, rcond)
    return Ellipsoid(
        generator=arr,
        spectrum=SingularSpectrum(values=sv, rank=rank),
        span_basis=u[:, :rank],
        right_basis=vh[:rank].T,
        rcond=rcond,
    )


def kolmogorov_widths(e: Ellipsoid) -> WidthSequence:
    """Widths of the ellipsoid: ``d_n = s_{n+1}`` below the rank, then zero.

    In 0-based storage the shift cancels: ``d[n] = spectrum.values[n]`` for
    ``n < rank`` and ``d[n] = 0`` from the rank on.
    """
    sv = e.spectrum.values
    vals = np.zeros(sv.size)
    vals[: e.rank] = sv[: e.rank]
    return WidthSequence(values=vals)


def section_spectrum(e: Ellipsoid, y) -> SingularSpectrum:
    """Spectrum of the section ``K ∩ Y⊥`` cut out by the subspace ``Y``.

    ``y`` must hold orthonormal columns in the ambient space of ``e`` (a
    ``(ambient_dim, 0)`` array means no constraint).  The section equals the
    image of the unit ball of ``ker(Y^T A)`` under the generator ``A``, so
    its s-numbers are those of ``A`` composed with an orthonormal kernel
    basis.  They interlace: ``s_{n+m}(A) <= sigma_n <= s_n(A)`` for a
    section of codimension ``m``.
    """
    if y is None:
        y = np.zeros((e.ambient_dim, 0))
    yarr = np.asarray(y, dtype=float)
    if yarr.ndim != 2 or yarr.shape[0] != e.ambient_dim:
        raise InputError(
            f"section subspace: expected shape ({e.ambient_dim}, m), got {yarr.shape}"
        )
    if yarr.shape[1] == 0:
        return e.spectrum
    if not np.all(np.isfinite(yarr)):
        raise InputError("section subspace: entries must be finite")
    _check_orthonormal_columns(yarr, "section subspace")
    kernel = nullspace_basis(yarr.T @ e.generator, rcond=e.rcond)
    if kernel.shape[1] == 0:
        return SingularSpectrum(values=np.zeros(0), rank=0)
    return singular_spectrum(e.generator @ kernel, rcond=e.rcond)


def truncate_ellipsoid(e: Ellipsoid, r: int) -> Ellipsoid:
    """Ellipsoid generated by the rank-``r`` truncated SVD of the generator.

    Built directly from the cached SVD so the spectrum equals the first
    ``r`` values exactly (a fresh decomposition of the reconstruction would
    contaminate the cut directions with round-off rank).
    """
    if not 1 <= r <= e.rank:
        raise InputError(f"truncation rank {r} outside [1, {e.rank}]")
    u = e.span_basis[:, :r]
    sv = e.spectrum.values[:r]
    vt = e.right_basis[:, :r].T
    return Ellipsoid(
        generator=u @ (sv[:, None] * vt),
        spectrum=SingularSpectrum(values=sv, rank=r),
        span_basis=u,
        right_basis=e.right_basis[:, :r],
        rcond=e.rcond,
    )


def scale_ellipsoid(e: Ellipsoid, c: float) -> Ellipsoid:
    """The ellipsoid ``c * K``, generated by ``c`` times the generator."""
    if not (np.isfinite(c) and c > 0):
        raise InputError(f"scale must be a positive finite number, got {c}")
    return Ellipsoid(
        generator=c * e.generator,
        spectrum=SingularSpectrum(values=c * e.spectrum.values, rank=e.rank),
        span_basis=e.span_basis,
        right_basis=e.right_basis,
        rcond=e.rcond,
    )


def ellipsoid_membership(e: Ellipsoid, y, tol: float = 1e-9) -> bool:
    """True iff ``y`` lies in the ellipsoid (within ``tol``).

    Checks that ``y`` sits in the column space of the generator and that the
    minimum-norm preimage has norm at most ``1 + tol``.
    """
    v = _as_vector(y, e.ambient_dim, "point")
    norm_y = float(np.linalg.norm(v))
    if norm_y == 0.0:
        return True
    coords = e.span_basis.T @ v
    residual = float(np.linalg.norm(v - e.span_basis @ coords))
    if residual > tol * norm_y:
        return False
    sv = e.spectrum.values[: e.rank]
    preimage_norm = float(np.linalg.norm(coords / sv)) if e.rank else 0.0
    return preimage_norm <= 1.0 + tol
