"""Operators expanding a matrix seminorm: ``||A T x|| >= ||A x||`` for all x.

Membership is a PSD test on ``T^T A^T A T - A^T A``, and transposition turns
it into the covering test for the ellipsoid of ``A^T`` — an exactly
checkable identity in the finite real model, used here as a cross-module
consistency oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .covering import ALGEBRA_AK, EVERYTHING, PSD_TOL, ClassificationVerdict, covers
from .errors import InputError
from .seqlab import SequenceModel, is_lacunary
from .spectra import _as_operator, ellipsoid

__all__ = ["ExpandVerdict", "is_expanding", "expanding_dual_check", "classify_WE"]


@dataclass(frozen=True)
class ExpandVerdict:
    """``margin`` is the smallest eigenvalue of ``T^T A^T A T - A^T A``
    scaled by ``1 + lambda_max`` of the two forms; expanding iff it clears
    ``-tol``."""

    expanding: bool
    margin: float


def is_expanding(t, a, tol: float = PSD_TOL) -> ExpandVerdict:
    """Does ``T`` expand the seminorm ``x -> ||A x||``?"""
    t = _as_operator(t, "T")
    a = _as_operator(a, "A")
    if t.shape != a.shape or t.shape[0] != t.shape[1]:
        raise InputError(f"T and A must be square of one size, got {t.shape} and {a.shape}")
    at = a @ t
    g1 = at.T @ at
    g2 = a.T @ a
    diff = g1 - g2
    lam_min = float(np.linalg.eigvalsh(0.5 * (diff + diff.T))[0])
    scale = 1.0 + max(float(np.linalg.norm(at, 2)) ** 2, float(np.linalg.norm(a, 2)) ** 2)
    margin = lam_min / scale
    return ExpandVerdict(margin >= -tol, margin)


def expanding_dual_check(t, a) -> bool:
    """Cross-check: ``T`` expands for ``A`` iff ``T^T`` covers ``A^T(B)``.

    Both sides evaluate the same matrix inequality through different code
    paths, so outside the round-off band this always returns True.
    """
    t = _as_operator(t, "T")
    a = _as_operator(a, "A")
    if t.shape != a.shape or t.shape[0] != t.shape[1]:
        raise InputError(f"T and A must be square of one size, got {t.shape} and {a.shape}")
    e = ellipsoid(a.T)
    return is_expanding(t, a).expanding == covers(t.T, e, e).holds


def classify_WE(model: SequenceModel, kernel_trivial: bool) -> ClassificationVerdict:
    """Closure of the expanding set, from the s-number model of ``A``.

    Non-lacunary s-numbers give everything; lacunary ones give the algebra
    of operators that leave ``ker A`` invariant, which collapses back to
    everything when the kernel is trivial.
    """
    lac = is_lacunary(model)
    if not lac.lacunary:
        return ClassificationVerdict(EVERYTHING, exact=lac.exact)
    if kernel_trivial:
        return ClassificationVerdict(
            EVERYTHING, exact=lac.exact,
            note="lacunary, but a trivial kernel collapses the invariance condition",
        )
    return ClassificationVerdict(
        ALGEBRA_AK, exact=lac.exact, note="operators preserving ker A"
    )
