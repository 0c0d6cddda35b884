"""Width-sequence models and the asymptotic predicates built on them.

Supported models are finite ``Samples`` and three parametric families:
``Geometric(q)`` with ``a_n = q^n``, ``Power(p)`` with ``a_n = (n+1)^-p``
and ``SuperGeometric(b)`` with ``a_n = b^(-n^2)``, plus ``Shifted`` and
``Scaled`` wrappers.

Asymptotic predicates (lacunarity, majorization, strict majorization, shift
classification) are undecidable from finite data, so every predicate has two
branches: an exact branch driven by closed-form ratio analysis of the
parametric families, and a windowed surrogate for ``Samples`` whose verdict
carries ``exact=False`` together with the window and threshold used.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import ClassificationError, InputError

__all__ = [
    "SequenceModel",
    "Samples",
    "Geometric",
    "Power",
    "SuperGeometric",
    "Shifted",
    "Scaled",
    "MajorizationVerdict",
    "LacunarityVerdict",
    "ShiftClassification",
    "sample",
    "is_lacunary",
    "majorizes",
    "strictly_majorizes",
    "max_majorizing_shift",
    "equivalent",
    "parse_model",
    "DEFAULT_WINDOW",
    "RATIO_THRESHOLD",
    "MIN_TERM",
]

DEFAULT_WINDOW = 64          # terms examined by the windowed surrogates
RATIO_THRESHOLD = 1e-3       # tau: consecutive-ratio threshold for surrogates
MIN_TERM = 1e-300            # terms below this are refused, never flushed to 0


class SequenceModel:
    """A nonincreasing positive sequence, sampled lazily by index."""

    def term(self, i: int) -> float:
        raise NotImplementedError

    def terms_available(self) -> int | None:
        """Number of defined terms, or None when unbounded."""
        return None


@dataclass(frozen=True)
class Samples(SequenceModel):
    values: tuple

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if not vals:
            raise InputError("samples model needs at least one term")
        if any(not math.isfinite(v) or v <= 0 for v in vals):
            raise InputError("samples must be finite and positive")
        if any(b > a for a, b in zip(vals, vals[1:])):
            raise InputError("samples must be nonincreasing")

    def term(self, i: int) -> float:
        if i >= len(self.values):
            raise InputError(f"samples model has only {len(self.values)} terms, index {i} requested")
        return self.values[i]

    def terms_available(self) -> int | None:
        return len(self.values)


@dataclass(frozen=True)
class Geometric(SequenceModel):
    q: float

    def __post_init__(self):
        if not (0.0 < self.q < 1.0):
            raise InputError(f"geometric ratio must lie in (0, 1), got {self.q}")

    def term(self, i: int) -> float:
        return _checked_term(self.q ** i, self, i)


@dataclass(frozen=True)
class Power(SequenceModel):
    p: float

    def __post_init__(self):
        if not self.p > 0:
            raise InputError(f"power exponent must be positive, got {self.p}")

    def term(self, i: int) -> float:
        return _checked_term((i + 1.0) ** (-self.p), self, i)


@dataclass(frozen=True)
class SuperGeometric(SequenceModel):
    b: float

    def __post_init__(self):
        if not self.b > 1.0:
            raise InputError(f"super-geometric base must exceed 1, got {self.b}")

    def term(self, i: int) -> float:
        return _checked_term(self.b ** float(-(i * i)), self, i)


@dataclass(frozen=True)
class Shifted(SequenceModel):
    k: int
    inner: SequenceModel

    def __post_init__(self):
        if self.k < 0 or self.k != int(self.k):
            raise InputError(f"shift must be a nonnegative integer, got {self.k}")
        object.__setattr__(self, "k", int(self.k))

    def term(self, i: int) -> float:
        return self.inner.term(i + self.k)

    def terms_available(self) -> int | None:
        n = self.inner.terms_available()
        return None if n is None else max(n - self.k, 0)


@dataclass(frozen=True)
class Scaled(SequenceModel):
    c: float
    inner: SequenceModel

    def __post_init__(self):
        if not (math.isfinite(self.c) and self.c > 0):
            raise InputError(f"scale must be a positive finite number, got {self.c}")

    def term(self, i: int) -> float:
        return self.c * self.inner.term(i)

    def terms_available(self) -> int | None:
        return self.inner.terms_available()


def _checked_term(value: float, model: SequenceModel, i: int) -> float:
    if value < MIN_TERM:
        raise InputError(f"{model!r}: term {i} falls below {MIN_TERM:g} (positive underflow refused)")
    return value


def sample(model: SequenceModel, n: int) -> list[float]:
    """First ``n`` terms ``a_0 .. a_{n-1}``."""
    if n < 1:
        raise InputError(f"sample length must be at least 1, got {n}")
    return [model.term(i) for i in range(n)]


# ----------------------------------------------------------------------
# Verdicts
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class MajorizationVerdict:
    """Does ``a`` majorize ``b`` (b_n <= C a_n for a uniform C)?

    ``constant`` is the minimal C on the exact branch and the observed
    window maximum of ``b_n / a_n`` otherwise; ``window`` counts the terms
    examined (None on the exact branch).
    """

    holds: bool
    constant: float | None
    window: int | None
    exact: bool


@dataclass(frozen=True)
class LacunarityVerdict:
    """Is ``liminf a_{n+1}/a_n = 0``?  ``witness_ratio`` is the smallest
    derived (exact branch) or observed (windowed branch) consecutive ratio."""

    lacunary: bool
    witness_ratio: float
    exact: bool


@dataclass(frozen=True)
class ShiftClassification:
    """Largest left shift of ``a`` that still majorizes ``b``.

    ``k is None`` means every shift tested up to the budget ``exhausted_at``
    majorizes.
    """

    k: int | None
    exhausted_at: int


# ----------------------------------------------------------------------
# Canonical forms and exact ratio analysis
# ----------------------------------------------------------------------

_GEOM, _POW, _SUPER, _SAMPLES = "geom", "pow", "supergeom", "samples"
_DECAY_ORDER = {_POW: 0, _GEOM: 1, _SUPER: 2}


@dataclass(frozen=True)
class _Canon:
    kind: str
    scale: float
    param: float | None
    offset: int
    values: tuple | None = None

    def log_term(self, n: int) -> float:
        if self.kind == _SAMPLES:
            return math.log(self.values[n])
        base = math.log(self.scale)
        m = n + self.offset
        if self.kind == _GEOM:
            return base + m * math.log(self.param)
        if self.kind == _POW:
            return base - self.param * math.log(m + 1.0)
        return base - (m * m) * math.log(self.param)


def _canon(model: SequenceModel) -> _Canon:
    if isinstance(model, Samples):
        return _Canon(_SAMPLES, 1.0, None, 0, model.values)
    if isinstance(model, Geometric):
        return _Canon(_GEOM, 1.0, model.q, 0)
    if isinstance(model, Power):
        return _Canon(_POW, 1.0, model.p, 0)
    if isinstance(model, SuperGeometric):
        return _Canon(_SUPER, 1.0, model.b, 0)
    if isinstance(model, Shifted):
        c = _canon(model.inner)
        if c.kind == _SAMPLES:
            if model.k >= len(c.values):
                raise InputError(f"shift {model.k} exhausts a {len(c.values)}-term samples model")
            return _Canon(_SAMPLES, 1.0, None, 0, c.values[model.k:])
        if c.kind == _GEOM:
            # a shift of a geometric sequence is the same sequence rescaled
            return _Canon(_GEOM, c.scale * c.param**model.k, c.param, 0)
        return _Canon(c.kind, c.scale, c.param, c.offset + model.k)
    if isinstance(model, Scaled):
        c = _canon(model.inner)
        if c.kind == _SAMPLES:
            return _Canon(_SAMPLES, 1.0, None, 0, tuple(model.c * v for v in c.values))
        return _Canon(c.kind, c.scale * model.c, c.param, c.offset)
    raise InputError(f"unknown sequence model {model!r}")


def _same_shape(a: _Canon, b: _Canon) -> bool:
    """Equality up to a positive scale (scaling never changes a verdict)."""
    if a.kind != b.kind:
        return False
    if a.kind == _SAMPLES:
        if len(a.values) != len(b.values):
            return False
        r = b.values[0] / a.values[0]
        return all(abs(y - r * x) <= 1e-12 * r * x for x, y in zip(a.values, b.values))
    return a.param == b.param and a.offset == b.offset


@dataclass(frozen=True)
class _RatioProfile:
    bounded: bool
    to_zero: bool
    sup: float | None


def _profile(a: _Canon, b: _Canon) -> _RatioProfile:
    """Exact behaviour of ``r_n = b_n / a_n`` for parametric models.

    In every bounded case the log-ratio's derivative changes sign at most
    once (+ to -), so the supremum sits at n = 0 or at the analytic vertex;
    we evaluate the integer candidates around it.
    """
    def lr(n: int) -> float:
        return b.log_term(n) - a.log_term(n)

    def sup_at(candidates) -> float:
        ns = sorted({max(0, int(c)) for c in candidates})
        best = max(lr(n) for n in ns)
        return math.exp(best) if best < 700.0 else math.inf

    def around(v: float):
        if not math.isfinite(v):
            return (0,)
        return (0, math.floor(v) - 1, math.floor(v), math.ceil(v), math.ceil(v) + 1)

    oa, ob = _DECAY_ORDER[a.kind], _DECAY_ORDER[b.kind]
    if ob < oa:
        return _RatioProfile(False, False, None)
    if ob > oa:
        # b decays strictly faster than every shift of a
        if a.kind == _POW and b.kind == _GEOM:
            vertex = -a.param / math.log(b.param) - (a.offset + 1)
        elif a.kind == _POW and b.kind == _SUPER:
            lb = math.log(b.param)
            bb = b.offset + a.offset + 1
            cc = b.offset * (a.offset + 1) - a.param / (2 * lb)
            disc = bb * bb - 4 * cc
            vertex = (-bb + math.sqrt(disc)) / 2 if disc >= 0 else 0.0
        else:  # a geometric, b super-geometric
            vertex = -math.log(a.param) / (2 * math.log(b.param)) - b.offset
        return _RatioProfile(True, True, sup_at(around(vertex)))

    if a.kind == _GEOM:
        slope = math.log(b.param) - math.log(a.param)
        if slope > 0:
            return _RatioProfile(False, False, None)
        return _RatioProfile(True, slope < 0, sup_at((0,)))

    if a.kind == _POW:
        if b.param < a.param:
            return _RatioProfile(False, False, None)
        if b.param > a.param:
            vertex = (b.param * (a.offset + 1) - a.param * (b.offset + 1)) / (a.param - b.param)
            return _RatioProfile(True, True, sup_at(around(vertex)))
        if a.offset >= b.offset:
            return _RatioProfile(True, False, sup_at((0,)))
        # ratio increases toward its limit scale_b / scale_a
        return _RatioProfile(True, False, b.scale / a.scale)

    # both super-geometric
    la, lb = math.log(a.param), math.log(b.param)
    lead = la - lb
    if lead > 0:
        return _RatioProfile(False, False, None)
    if lead < 0:
        vertex = (b.offset * lb - a.offset * la) / (la - lb)
        return _RatioProfile(True, True, sup_at(around(vertex)))
    if a.offset > b.offset:
        return _RatioProfile(False, False, None)
    if a.offset < b.offset:
        return _RatioProfile(True, True, sup_at((0,)))
    return _RatioProfile(True, False, sup_at((0,)))


# ----------------------------------------------------------------------
# Windowed surrogates
# ----------------------------------------------------------------------

def _window_length(*models: SequenceModel, window: int) -> int:
    n = window
    for m in models:
        avail = m.terms_available()
        if avail is not None:
            n = min(n, avail)
    if n < 1:
        raise InputError("no overlapping terms to compare")
    return n


def _window_ratios(a: SequenceModel, b: SequenceModel, window: int) -> np.ndarray:
    n = _window_length(a, b, window=window)
    av = np.array(sample(a, n))
    bv = np.array(sample(b, n))
    return bv / av


def _is_parametric(c: _Canon) -> bool:
    return c.kind != _SAMPLES


# ----------------------------------------------------------------------
# Public predicates
# ----------------------------------------------------------------------

def is_lacunary(model: SequenceModel, tau: float = RATIO_THRESHOLD,
                window: int = DEFAULT_WINDOW) -> LacunarityVerdict:
    """Exact for parametric families; windowed ratio scan for samples."""
    c = _canon(model)
    if c.kind == _GEOM:
        return LacunarityVerdict(False, c.param, True)
    if c.kind == _POW:
        o = c.offset
        worst = ((o + 1.0) / (o + 2.0)) ** c.param
        return LacunarityVerdict(False, worst, True)
    if c.kind == _SUPER:
        return LacunarityVerdict(True, 0.0, True)
    vals = c.values
    n = min(window, len(vals) - 1)
    if n < 1:
        raise InputError("lacunarity scan needs at least two sample terms")
    ratios = [vals[i + 1] / vals[i] for i in range(n)]
    worst = min(ratios)
    return LacunarityVerdict(worst < tau, worst, False)


def majorizes(a: SequenceModel, b: SequenceModel,
              window: int = DEFAULT_WINDOW) -> MajorizationVerdict:
    """Is there a uniform C with ``b_n <= C a_n``?

    Exact (with minimal C) for parametric pairs.  When samples are involved
    any finite window is trivially bounded, so the verdict holds with the
    observed C and ``exact=False``.
    """
    ca, cb = _canon(a), _canon(b)
    if _is_parametric(ca) and _is_parametric(cb):
        prof = _profile(ca, cb)
        return MajorizationVerdict(prof.bounded, prof.sup, None, True)
    ratios = _window_ratios(a, b, window)
    return MajorizationVerdict(True, float(ratios.max()), int(ratios.size), False)


def strictly_majorizes(a: SequenceModel, b: SequenceModel,
                       window: int = DEFAULT_WINDOW,
                       tau: float = RATIO_THRESHOLD) -> MajorizationVerdict:
    """Does ``b_n / a_n`` tend to zero?

    Exact for parametric pairs.  The samples surrogate is a trend test: the
    ratio maximum over the last quarter of the window must fall below
    ``tau`` times the window maximum.
    """
    ca, cb = _canon(a), _canon(b)
    if _is_parametric(ca) and _is_parametric(cb):
        prof = _profile(ca, cb)
        return MajorizationVerdict(prof.to_zero, prof.sup, None, True)
    ratios = _window_ratios(a, b, window)
    tail = ratios[-max(1, ratios.size // 4):]
    holds = bool(tail.max() <= tau * ratios.max())
    return MajorizationVerdict(holds, float(ratios.max()), int(ratios.size), False)


def _exact_max_shift(ca: _Canon, cb: _Canon, strict: bool) -> int | None:
    """Largest majorizing shift for parametric pairs; None means all shifts.

    Only the equal-base super-geometric pair is shift-sensitive: every other
    family combination keeps its (strict) majorization under arbitrary
    shifts of ``a``.  Assumes shift 0 already (strictly) majorizes.
    """
    if ca.kind == _SUPER and cb.kind == _SUPER and ca.param == cb.param:
        gap = cb.offset - ca.offset
        return gap - 1 if strict else gap
    return None


def max_majorizing_shift(a: SequenceModel, b: SequenceModel, k_max: int,
                         window: int = DEFAULT_WINDOW) -> ShiftClassification:
    """Largest ``k <= k_max`` whose left shift of ``a`` still majorizes ``b``."""
    if k_max < 0:
        raise InputError(f"shift budget must be nonnegative, got {k_max}")
    if not majorizes(a, b, window=window).holds:
        raise ClassificationError("not even k=0: the unshifted sequence does not majorize")
    ca, cb = _canon(a), _canon(b)
    if _is_parametric(ca) and _is_parametric(cb):
        k = _exact_max_shift(ca, cb, strict=False)
        if k is None or k > k_max:
            return ShiftClassification(None, k_max)
        return ShiftClassification(k, k_max)
    for k in range(1, k_max + 1):
        try:
            holds = majorizes(Shifted(k, a), b, window=window).holds
        except InputError:
            # shift exhausted a finite samples model: every testable shift held
            return ShiftClassification(None, k - 1)
        if not holds:
            return ShiftClassification(k - 1, k_max)
    return ShiftClassification(None, k_max)


def equivalent(a: SequenceModel, b: SequenceModel,
               window: int = DEFAULT_WINDOW) -> bool:
    """True iff each sequence majorizes the other."""
    return majorizes(a, b, window=window).holds and majorizes(b, a, window=window).holds


# ----------------------------------------------------------------------
# Model grammar
# ----------------------------------------------------------------------

_NUMBER_RE = re.compile(r"[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")
_NAME_RE = re.compile(r"[A-Za-z_]+")


class _Parser:
    """Recursive-descent parser for the model grammar, whitespace-insensitive.

    grammar: geom(q) | pow(p) | supergeom(b) | shift(k, M) | scale(c, M)
             | samples(v1, v2, ...) | spectrum(path.mat)
    """

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise InputError(f"sequence model: position {self.pos}: {message}")

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, ch: str):
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            found = self.text[self.pos] if self.pos < len(self.text) else "end of input"
            self.error(f"expected {ch!r}, found {found!r}")
        self.pos += 1

    def number(self) -> float:
        self.skip_ws()
        m = _NUMBER_RE.match(self.text, self.pos)
        if not m:
            self.error("expected a number")
        self.pos = m.end()
        return float(m.group(0))

    def name(self) -> str:
        self.skip_ws()
        m = _NAME_RE.match(self.text, self.pos)
        if not m:
            self.error("expected a model name")
        self.pos = m.end()
        return m.group(0)

    def path(self) -> str:
        self.skip_ws()
        end = self.text.find(")", self.pos)
        if end < 0:
            self.error("unterminated spectrum(...) path")
        raw = self.text[self.pos:end].strip()
        if not raw:
            self.error("empty path in spectrum(...)")
        self.pos = end
        return raw

    def model(self) -> SequenceModel:
        kind = self.name().lower()
        self.expect("(")
        if kind == "geom":
            m = Geometric(self.number())
        elif kind == "pow":
            m = Power(self.number())
        elif kind == "supergeom":
            m = SuperGeometric(self.number())
        elif kind == "shift":
            k = self.number()
            if k != int(k):
                self.error("shift count must be an integer")
            self.expect(",")
            m = Shifted(int(k), self.model())
        elif kind == "scale":
            c = self.number()
            self.expect(",")
            m = Scaled(c, self.model())
        elif kind == "samples":
            vals = [self.number()]
            self.skip_ws()
            while self.pos < len(self.text) and self.text[self.pos] == ",":
                self.pos += 1
                vals.append(self.number())
            m = Samples(tuple(vals))
        elif kind == "spectrum":
            m = _spectrum_model(self.path())
        else:
            self.error(f"unknown model {kind!r}")
        self.expect(")")
        return m


def _spectrum_model(path: str) -> Samples:
    from .matrixio import read_matrix
    from .spectra import singular_spectrum

    spec = singular_spectrum(read_matrix(path))
    if spec.rank == 0:
        raise InputError(f"{path}: matrix has no nonzero singular values")
    return Samples(tuple(spec.values[: spec.rank]))


def parse_model(text: str) -> SequenceModel:
    """Parse a model expression such as ``shift(1, geom(0.5))``."""
    parser = _Parser(text)
    model = parser.model()
    parser.skip_ws()
    if parser.pos != len(text):
        parser.error("trailing input after model expression")
    return model
