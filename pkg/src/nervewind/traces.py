"""Overflow-safe asymptotic trace coordinates on the Fricke cubic.

The large-R trace coordinates are 2 cosh of arguments growing like
2 sqrt(R); they are held in log scale (log-magnitude plus phase) so sweeps
up to R = 1e12 and beyond stay finite.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import NerveWindError

#: Sums whose cancellation leaves less than this fraction of the term
#: magnitudes are reported as exact zeros.
ZERO_SNAP = 1e-14


def _wrap_phase(phase):
    """Wrap into (-pi, pi]."""
    w = math.remainder(phase, math.tau)
    return math.pi if w == -math.pi else w


@dataclass(frozen=True)
class LogComplex:
    """A complex number as (log-magnitude, phase), or an exact zero.

    Valid for |logmag| far beyond float exponent range; to_complex is only
    usable when exp(logmag) is representable.
    """

    logmag: float
    phase: float
    is_zero: bool = False

    @classmethod
    def zero(cls):
        return cls(-math.inf, 0.0, True)

    @classmethod
    def from_complex(cls, z):
        z = complex(z)
        r = abs(z)
        if r == 0.0:
            return cls.zero()
        return cls(math.log(r), _wrap_phase(math.atan2(z.imag, z.real)), False)

    @classmethod
    def from_real(cls, x):
        return cls.from_complex(complex(x))

    def to_complex(self):
        if self.is_zero:
            return 0.0 + 0.0j
        return cmath.rect(math.exp(self.logmag), self.phase)

    def __mul__(self, other):
        if self.is_zero or other.is_zero:
            return LogComplex.zero()
        return LogComplex(
            self.logmag + other.logmag,
            _wrap_phase(self.phase + other.phase),
            False,
        )

    def __neg__(self):
        if self.is_zero:
            return self
        return LogComplex(self.logmag, _wrap_phase(self.phase + math.pi), False)

    @property
    def abs_equals_zero(self):
        return self.is_zero


def log_sum(terms: Sequence[LogComplex]) -> LogComplex:
    """Sum in log scale by factoring out the largest log-magnitude."""
    live = [t for t in terms if not t.is_zero]
    if not live:
        return LogComplex.zero()
    top = max(t.logmag for t in live)
    acc = 0.0 + 0.0j
    weight = 0.0
    for t in live:
        m = math.exp(t.logmag - top)
        acc += cmath.rect(m, t.phase)
        weight += m
    if abs(acc) <= ZERO_SNAP * weight:
        return LogComplex.zero()
    phase = math.atan2(acc.imag, acc.real)
    return LogComplex(top + math.log(abs(acc)), _wrap_phase(phase), False)


def cosh_log(rho, delta):
    """2 cosh(i delta + rho) in log representation, overflow-free in rho.

    Factoring e^{|rho|} leaves the bounded factor
    (1 + e^{-2|rho|}) cos(delta) +/- i (1 - e^{-2|rho|}) sin(delta),
    so |rho| up to 1e8 and beyond is exact.  Magnitudes of the bounded
    factor below 1e-14 (reachable only within float rounding of the zeros
    rho = 0, delta = pi/2 + k pi) are snapped to an exact zero.
    """
    if not (math.isfinite(rho) and math.isfinite(delta)):
        raise NerveWindError("cosh_log arguments must be finite")
    r = abs(rho)
    d = delta if rho >= 0.0 else -delta
    damp = math.exp(-2.0 * r) if r < 400.0 else 0.0
    u = complex((1.0 + damp) * math.cos(d), (1.0 - damp) * math.sin(d))
    if abs(u) <= ZERO_SNAP:
        return LogComplex.zero()
    phase = math.atan2(u.imag, u.real)
    return LogComplex(r + math.log(abs(u)), _wrap_phase(phase), False)


@dataclass(frozen=True)
class MuProfile:
    """Unitary phase profile mu_j(R, phi), 2pi-periodic in phi.

    Variants: zero; constant values; or a smooth random Fourier series with
    deterministic seed.  Random amplitudes decay like 1/k and are kept
    modest so that finite-R dominance gaps are never swamped by phase
    factors.
    """

    variant: str = "zero"
    mu0: float = 0.0
    mu1: float = 0.0
    mut: float = 0.0
    seed: int = 0
    harmonics: int = 3
    amplitude: float = 0.1
    _coeffs: tuple = field(default=(), repr=False)

    @classmethod
    def zero(cls):
        return cls(variant="zero")

    @classmethod
    def constant(cls, mu0, mu1, mut):
        return cls(variant="constant", mu0=mu0, mu1=mu1, mut=mut)

    @classmethod
    def random(cls, seed, harmonics=3, amplitude=0.1):
        rng = np.random.default_rng(int(seed))
        coeffs = []
        for _ in range(3):  # one series per puncture
            rows = []
            for k in range(1, harmonics + 1):
                a = float(rng.uniform(-amplitude, amplitude)) / k
                b = float(rng.uniform(-amplitude, amplitude)) / k
                rows.append((a, b))
            coeffs.append(tuple(rows))
        return cls(
            variant="random",
            seed=int(seed),
            harmonics=harmonics,
            amplitude=amplitude,
            _coeffs=tuple(coeffs),
        )

    @classmethod
    def parse(cls, spec):
        """Parse 'zero', 'const:MU0,MU1,MUT' or 'random:SEED'."""
        if isinstance(spec, MuProfile):
            return spec
        s = str(spec).strip()
        if s == "zero":
            return cls.zero()
        if s.startswith("const:"):
            parts = [float(x) for x in s[len("const:"):].split(",")]
            if len(parts) != 3:
                raise ValueError("const profile needs three values")
            return cls.constant(*parts)
        if s.startswith("random:"):
            return cls.random(int(s[len("random:"):]))
        raise ValueError(f"unknown mu profile {spec!r}")

    def values(self, R, phi):
        if self.variant == "zero":
            return (0.0, 0.0, 0.0)
        if self.variant == "constant":
            return (self.mu0, self.mu1, self.mut)
        out = []
        for rows in self._coeffs:
            v = 0.0
            for k, (a, b) in enumerate(rows, start=1):
                v += a * math.cos(k * phi) + b * math.sin(k * phi)
            out.append(v)
        return tuple(out)


@dataclass(frozen=True)
class TraceTriple:
    X1: LogComplex
    X2: LogComplex
    X3: LogComplex
    R: float
    phi: float

    @property
    def logmags(self):
        return tuple(
            -math.inf if X.is_zero else X.logmag for X in (self.X1, self.X2, self.X3)
        )


def trace_coordinates(R, phi, tri, mu=None):
    """Asymptotic trace coordinates at radius R and angle phi.

    X1 = 2cosh(i(mu1 - mu0) + 2 sqrt(R) Re(e^{i phi/2} a)) and cyclically
    for X2 (side b, mu0 - mut) and X3 (side c, mut - mu1).
    """
    if R < 0.0:
        raise ValueError("R must be nonnegative")
    if mu is None:
        mu = MuProfile.zero()
    rot = cmath.exp(0.5j * phi)
    scale = 2.0 * math.sqrt(R)
    m0, m1, mt = mu.values(R, phi)
    X1 = cosh_log(scale * (rot * tri.a).real, m1 - m0)
    X2 = cosh_log(scale * (rot * tri.b).real, m0 - mt)
    X3 = cosh_log(scale * (rot * tri.c).real, mt - m1)
    return TraceTriple(X1, X2, X3, float(R), float(phi))


@dataclass(frozen=True)
class ProjectivePoint:
    """[X0 : X1 : X2 : X3] with X0 = 1, as relative log-magnitudes with
    max 0 (zero coordinates are -inf) plus phases."""

    logmags: tuple
    phases: tuple

    def __post_init__(self):
        if max(self.logmags) != 0.0:
            raise ValueError("projective log-magnitudes must be normalized to max 0")


def projective_normalize(tt):
    """Dominant-coordinate normalization of (1, X1, X2, X3)."""
    raw = (0.0,) + tt.logmags
    phases = (0.0,) + tuple(
        0.0 if X.is_zero else X.phase for X in (tt.X1, tt.X2, tt.X3)
    )
    top = max(raw)
    return ProjectivePoint(tuple(m - top for m in raw), phases)


def fricke_residual(tt, s=(0.0, 0.0, 0.0, 0.0)):
    """Value of X1 X2 X3 + X1^2 + X2^2 + X3^2 - s1 X1 - s2 X2 - s3 X3 + s4
    in log-scale arithmetic.

    Diagnostic only: the asymptotic traces need not satisfy the cubic
    relation exactly for any particular constants.
    """
    X1, X2, X3 = tt.X1, tt.X2, tt.X3
    s1, s2, s3, s4 = (LogComplex.from_complex(v) for v in s)
    terms = [
        X1 * X2 * X3,
        X1 * X1,
        X2 * X2,
        X3 * X3,
        -(s1 * X1),
        -(s2 * X2),
        -(s3 * X3),
        s4,
    ]
    return log_sum(terms)
