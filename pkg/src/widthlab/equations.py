"""The bilinear equation ``X A Y = B``: solvability, constructions, density kernels.

Solvability in the finite model is a rank comparison; the constructive
solver is a fixed SVD-balanced recipe so tests are deterministic.  The
density-flavoured operations are the two constructive kernels behind
strong-operator approximation: exact factorizations ``X Y = B`` through a
doubled internal space, and invertible operators matching finitely many
vector constraints on both ``V`` and ``V^{-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleError, InputError, UnsolvableError, WidthlabError
from .seqlab import MajorizationVerdict, SequenceModel, majorizes
from .spectra import _as_operator, _freeze, nullspace_basis

__all__ = [
    "SolvabilityVerdict",
    "SolutionPair",
    "MatchCertificate",
    "xay_solvable",
    "solve_xay",
    "first_component_member",
    "factor_pair",
    "match_invertible",
    "approx_factorization",
]

_RANK_RCOND = 1e-12
_RESIDUAL_TOL = 1e-9


def _rank(m: np.ndarray) -> int:
    sv = np.linalg.svd(m, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.count_nonzero(sv > _RANK_RCOND * sv[0]))


@dataclass(frozen=True)
class SolvabilityVerdict:
    """Finite branch: solvable iff rank(B) <= rank(A).  When sequence models
    for the s-numbers are supplied, the asymptotic majorization verdict is
    reported alongside."""

    solvable: bool
    rank_A: int
    rank_B: int
    asymptotic: MajorizationVerdict | None = None


@dataclass(frozen=True, eq=False)
class SolutionPair:
    """A solution (X, Y) with its relative Frobenius residual."""

    X: np.ndarray
    Y: np.ndarray
    residual: float

    def __post_init__(self):
        object.__setattr__(self, "X", _freeze(self.X))
        object.__setattr__(self, "Y", _freeze(self.Y))


@dataclass(frozen=True, eq=False)
class MatchCertificate:
    """An invertible operator matching vector constraints on both sides.

    ``operator`` is V itself; ``condition`` its 2-norm condition number;
    the residual tuples report ``||V x_i - x_i'||`` and ``||V^-1 y_j - y_j'||``.
    """

    operator: np.ndarray
    condition: float
    x_residuals: tuple
    y_residuals: tuple

    def __post_init__(self):
        object.__setattr__(self, "operator", _freeze(self.operator))


def xay_solvable(a, b, a_model: SequenceModel | None = None,
                 b_model: SequenceModel | None = None) -> SolvabilityVerdict:
    """Decide solvability of ``X A Y = B`` (square operators on one space)."""
    a = _as_operator(a, "A")
    b = _as_operator(b, "B")
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise InputError(f"A and B must be square with equal shapes, got {a.shape} and {b.shape}")
    ra, rb = _rank(a), _rank(b)
    asym = None
    if a_model is not None and b_model is not None:
        asym = majorizes(a_model, b_model)
    return SolvabilityVerdict(rb <= ra, ra, rb, asym)


def solve_xay(a, b) -> SolutionPair:
    """One canonical solution of ``X A Y = B``.

    With ``A = U_A S_A V_A^T`` and ``B = U_B S_B V_B^T`` and ``r = rank(B)``,
    take ``Y = V_A[:,:r] S_A^{-1/2} V_B[:,:r]^T`` and
    ``X = U_B[:,:r] S_B S_A^{-1/2} U_A[:,:r]^T``: the ``S_A`` factors cancel
    and the square-root split balances the two factor norms.  The solution
    is not unique; this particular one is fixed for determinism.
    """
    verdict = xay_solvable(a, b)
    if not verdict.solvable:
        raise UnsolvableError(
            f"rank(B)={verdict.rank_B} exceeds rank(A)={verdict.rank_A}", verdict
        )
    a = _as_operator(a, "A")
    b = _as_operator(b, "B")
    ua, sa, vta = np.linalg.svd(a)
    ub, sb, vtb = np.linalg.svd(b)
    r = verdict.rank_B
    if r == 0:
        d = a.shape[0]
        return SolutionPair(np.zeros((d, d)), np.zeros((d, d)), 0.0)
    root = np.sqrt(sa[:r])
    y = vta[:r].T @ ((1.0 / root)[:, None] * vtb[:r])
    x = ub[:, :r] @ ((sb[:r] / root)[:, None] * ua[:, :r].T)
    residual = float(np.linalg.norm(x @ a @ y - b) / (1.0 + np.linalg.norm(b)))
    if residual > _RESIDUAL_TOL:
        raise WidthlabError(f"internal: solver residual {residual:g} above {_RESIDUAL_TOL:g}")
    return SolutionPair(x, y, residual)


def first_component_member(x, a, b) -> bool:
    """Is ``X`` the first component of some solution: ``col(B) ⊆ col(X A)``?"""
    x = _as_operator(x, "X")
    a = _as_operator(a, "A")
    b = _as_operator(b, "B")
    if x.shape[1] != a.shape[0] or x.shape[0] != b.shape[0]:
        raise InputError("shape mismatch between X, A and B")
    xa = x @ a
    return _rank(np.hstack([xa, b])) == _rank(xa)


def factor_pair(b) -> SolutionPair:
    """An exact factorization ``X Y = B`` with dense image and trivial kernel.

    Works in a doubled internal space split into two copies of the original:
    with the coordinate isometries ``U1, U2`` onto the summands,
    ``Y = U1`` and ``X = B U1^T + U2^T = [B | I]``.  Then ``X Y = B``
    exactly, ``X`` has full row rank and ``Y`` has no kernel, which is what
    the invertible-twist family ``(X V^{-1}, V Y)`` needs.
    """
    b = _as_operator(b, "B")
    if b.shape[0] != b.shape[1]:
        raise InputError(f"B must be square, got {b.shape}")
    d = b.shape[0]
    eye = np.eye(d)
    y = np.vstack([eye, np.zeros((d, d))])
    x = np.hstack([b, eye])
    residual = float(np.linalg.norm(x @ y - b) / (1.0 + np.linalg.norm(b)))
    return SolutionPair(x, y, residual)


def _columns(vectors, dim: int | None, name: str) -> np.ndarray:
    arrs = [np.asarray(v, dtype=float).reshape(-1) for v in vectors]
    if not arrs:
        return np.zeros((dim or 0, 0))
    d = arrs[0].size if dim is None else dim
    for i, v in enumerate(arrs):
        if v.size != d:
            raise InputError(f"{name}[{i}]: expected length {d}, got {v.size}")
        if not np.all(np.isfinite(v)):
            raise InputError(f"{name}[{i}]: entries must be finite")
    return np.column_stack(arrs)


def _orthogonal_direction(span_cols: np.ndarray, align_to: np.ndarray,
                          rng: np.random.Generator) -> np.ndarray:
    """Unit vector orthogonal to the given columns, sign-aligned with
    ``align_to`` so adding it can never cancel the existing component."""
    d = span_cols.shape[0]
    q = np.linalg.qr(span_cols)[0] if span_cols.shape[1] else np.zeros((d, 0))
    for _ in range(64):
        v = rng.normal(size=d)
        v -= q @ (q.T @ v)
        norm = np.linalg.norm(v)
        if norm > 1e-8:
            v /= norm
            if float(align_to @ v) < 0:
                v = -v
            return v
    raise WidthlabError("internal: could not draw an orthogonal perturbation direction")


def match_invertible(xs, xs_target, ys, ys_target, eps: float,
                     seed: int = 0) -> MatchCertificate:
    """Invertible ``V`` with ``||V x_i - x_i'|| < eps`` and
    ``||V^{-1} y_j - y_j'|| < eps``.

    The targets are first tried verbatim; if either stacked system is
    (nearly) dependent, they are nudged by at most ``eps/4`` along seeded
    directions orthogonal to the spans already present.  ``V`` maps the span
    of ``(x_i, w_j)`` onto the span of ``(z_i, y_j)`` by construction and a
    bijection between the two orthogonal complements completes it to an
    invertible operator.
    """
    if not (np.isfinite(eps) and eps > 0):
        raise InputError(f"eps must be positive, got {eps}")
    x = _columns(xs, None, "xs")
    if x.shape[1] == 0:
        raise InputError("xs must be nonempty")
    d = x.shape[0]
    xt = _columns(xs_target, d, "xs_target")
    yv = _columns(ys, d, "ys")
    yt = _columns(ys_target, d, "ys_target")
    n, m = x.shape[1], yv.shape[1]
    if xt.shape[1] != n or yt.shape[1] != m or m == 0:
        raise InputError("xs/xs_target and ys/ys_target must pair up and be nonempty")
    if _rank(x) != n:
        raise InputError("xs must be linearly independent")
    if _rank(yv) != m:
        raise InputError("ys must be linearly independent")
    if d < n + m:
        raise InputError(f"ambient dimension {d} below |xs| + |ys| = {n + m}")

    def well_posed(mat: np.ndarray) -> bool:
        sv = np.linalg.svd(mat, compute_uv=False)
        return sv[-1] > 1e-8 * (1.0 + sv[0])

    rng = np.random.default_rng(seed)
    z, w = xt.copy(), yt.copy()
    if not (well_posed(np.hstack([x, w])) and well_posed(np.hstack([z, yv]))):
        # nudge every target by eps/4 along fresh orthogonal directions
        z, w = np.empty_like(xt), np.empty_like(yt)
        for j in range(m):
            r = _orthogonal_direction(np.hstack([x, w[:, :j]]), yt[:, j], rng)
            w[:, j] = yt[:, j] + 0.25 * eps * r
        for i in range(n):
            r = _orthogonal_direction(np.hstack([yv, z[:, :i]]), xt[:, i], rng)
            z[:, i] = xt[:, i] + 0.25 * eps * r

    dom = np.hstack([x, w])
    img = np.hstack([z, yv])
    f_dom = np.hstack([dom, nullspace_basis(dom.T)])
    f_img = np.hstack([img, nullspace_basis(img.T)])
    if f_dom.shape != (d, d) or f_img.shape != (d, d):
        raise InfeasibleError("perturbed constraint systems are still degenerate")
    v = f_img @ np.linalg.inv(f_dom)
    v_inv = np.linalg.inv(v)
    rx = tuple(float(np.linalg.norm(v @ x[:, i] - xt[:, i])) for i in range(n))
    ry = tuple(float(np.linalg.norm(v_inv @ yv[:, j] - yt[:, j])) for j in range(m))
    worst = max(rx + ry)
    if worst >= eps:
        raise InfeasibleError(f"constraint residual {worst:g} not below eps={eps:g}", worst)
    condition = float(np.linalg.norm(v, 2) * np.linalg.norm(v_inv, 2))
    return MatchCertificate(v, condition, rx, ry)


def _independent_subset(vectors: np.ndarray) -> tuple[list[int], float]:
    """Greedy maximal independent column subset and the worst l1 coefficient
    norm needed to express the remaining columns through it."""
    d, t = vectors.shape
    chosen: list[int] = []
    basis = np.zeros((d, 0))
    gamma = 1.0
    for i in range(t):
        v = vectors[:, i]
        if np.linalg.norm(v) == 0:
            raise InputError(f"test vector {i} is zero")
        resid = v - basis @ (basis.T @ v) if basis.shape[1] else v
        if np.linalg.norm(resid) > 1e-10 * np.linalg.norm(v):
            chosen.append(i)
            q = resid / np.linalg.norm(resid)
            basis = np.hstack([basis, q[:, None]])
        else:
            coeff = np.linalg.lstsq(vectors[:, chosen], v, rcond=None)[0]
            gamma = max(gamma, float(np.abs(coeff).sum()))
    return chosen, gamma


def approx_factorization(b, x0, y0, test_vectors, eps: float,
                         seed: int = 0) -> SolutionPair:
    """A factorization of ``B`` close to prescribed targets on test vectors.

    Starting from :func:`factor_pair`, an invertible twist ``V`` of the
    internal space is matched so that ``(X V^{-1}, V Y)`` stays an exact
    factorization while ``||(V Y - U1 Y0) v|| < eps`` and
    ``||(X V^{-1} U1 - X0) v|| < eps`` for every test vector ``v`` (``U1``
    embeds the original space as the first internal summand).
    """
    b = _as_operator(b, "B")
    d = b.shape[0]
    x0 = _as_operator(x0, "X target")
    y0 = _as_operator(y0, "Y target")
    if b.shape != (d, d) or x0.shape != (d, d) or y0.shape != (d, d):
        raise InputError("B and both targets must be square of one size")
    vmat = _columns(test_vectors, d, "test_vectors")
    if vmat.shape[1] == 0:
        raise InputError("need at least one test vector")
    if not (np.isfinite(eps) and eps > 0):
        raise InputError(f"eps must be positive, got {eps}")

    pair = factor_pair(b)
    x, y = np.asarray(pair.X), np.asarray(pair.Y)
    u1 = np.vstack([np.eye(d), np.zeros((d, d))])
    x_pinv = np.linalg.pinv(x)

    chosen, gamma = _independent_subset(vmat)
    sel = vmat[:, chosen]
    xs = [y @ sel[:, i] for i in range(sel.shape[1])]
    xs_t = [u1 @ (y0 @ sel[:, i]) for i in range(sel.shape[1])]
    ys = [u1 @ sel[:, i] for i in range(sel.shape[1])]
    ys_t = [x_pinv @ (x0 @ sel[:, i]) for i in range(sel.shape[1])]

    delta = eps / (2.0 * gamma * (1.0 + np.linalg.norm(x, 2)))
    match = match_invertible(xs, xs_t, ys, ys_t, delta, seed=seed)
    v = np.asarray(match.operator)
    v_inv = np.linalg.inv(v)
    xn, yn = x @ v_inv, v @ y

    y_res = np.linalg.norm(yn @ vmat - u1 @ (y0 @ vmat), axis=0)
    x_res = np.linalg.norm(xn @ (u1 @ vmat) - x0 @ vmat, axis=0)
    worst = float(max(y_res.max(), x_res.max()))
    if worst >= eps:
        raise InfeasibleError(
            f"achieved residual {worst:g} not below eps={eps:g} at dimension {d}", worst
        )
    residual = float(np.linalg.norm(xn @ yn - b) / (1.0 + np.linalg.norm(b)))
    if residual > _RESIDUAL_TOL:
        raise InfeasibleError(f"product drifted to relative residual {residual:g}", residual)
    return SolutionPair(xn, yn, residual)
