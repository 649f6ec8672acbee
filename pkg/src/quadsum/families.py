"""Orthonormal polynomial families: recurrence coefficients, measures, and
recurrence-based evaluation.

Five built-in families are provided.  Charlier and Meixner carry infinite
discrete measures on the nonnegative integers, Krawtchouk a finite one on
0..M.  The continuous dual Hahn and Wilson families live in a squared
spectral variable y = x^2: their measure has a continuous density on
x in [0, inf) and, for mu < 0, finitely many point masses at y = -(k+mu)^2.
A Custom family wraps an explicit recurrence stream and measure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import NumericalError, ValidationError
from .special import ln_abs_gamma_sq, ln_gamma, ln_pochhammer_signed

__all__ = [
    "TruncationPolicy",
    "RecurrenceStream",
    "ContinuousPart",
    "DiscretePart",
    "MeasureSpec",
    "FamilySpec",
    "Charlier",
    "Meixner",
    "Krawtchouk",
    "ContinuousDualHahn",
    "Wilson",
    "Custom",
    "recurrence",
    "measure",
    "eval_poly",
]


@dataclass(frozen=True)
class TruncationPolicy:
    """Cutoff for sums over infinite discrete measures.

    Accumulation stops once ``run_length`` consecutive terms fall below
    ``rel_tail`` times the running total of absolute terms, or at
    ``max_terms``, whichever comes first.
    """

    rel_tail: float = 1e-18
    max_terms: int = 1_000_000
    run_length: int = 3


@dataclass(frozen=True)
class RecurrenceStream:
    """Coefficient sequence {a_n, b_n} of a symmetric three-term recurrence.

    ``size`` is the number of valid diagonal coefficients (None if infinite);
    off-diagonal b_n is valid and nonzero for n <= size - 2.
    """

    a: Callable[[int], float]
    b: Callable[[int], float]
    size: int | None = None

    def require_order(self, n: int) -> None:
        """Validate that coefficients a_0..a_{n-1}, b_0..b_{n-2} exist."""
        if n < 1:
            raise ValidationError(f"order must be >= 1, got {n}")
        if self.size is not None and n > self.size:
            raise ValidationError(
                f"order {n} exceeds the stream's valid size {self.size}"
            )


@dataclass(frozen=True)
class ContinuousPart:
    """Continuous density with its support interval."""

    density: Callable[[float], float]
    support: tuple[float, float]


class DiscretePart:
    """Point masses {(x_k, xi_k)}, finite or lazily-generated infinite.

    ``density`` is the smooth continuation of the mass function used for
    derivative weights at non-integer nodes (None when not applicable).
    """

    def __init__(
        self,
        point_at: Callable[[int], float],
        mass_at: Callable[[int], float],
        size: int | None,
        density: Callable[[float], float] | None = None,
    ):
        self.point_at = point_at
        self.mass_at = mass_at
        self.size = size
        self.density = density
        if size is not None:
            self.points = tuple(point_at(k) for k in range(size))
            self.masses = tuple(mass_at(k) for k in range(size))
            for k, xi in enumerate(self.masses):
                if not xi > 0.0:
                    raise NumericalError(
                        f"discrete mass xi_{k} = {xi!r} is not positive"
                    )
            if any(
                self.points[k] >= self.points[k + 1] for k in range(size - 1)
            ):
                raise NumericalError("discrete points are not strictly increasing")

    @property
    def finite(self) -> bool:
        return self.size is not None

    def weighted_sum(
        self, f: Callable[[float], float], policy: TruncationPolicy | None = None
    ) -> float:
        """Sum of xi_k f(x_k) over the support, truncated per policy if infinite."""
        if self.finite:
            return math.fsum(xi * f(x) for x, xi in zip(self.points, self.masses))
        policy = policy or TruncationPolicy()
        total = 0.0
        abs_total = 0.0
        small_run = 0
        for k in range(policy.max_terms):
            term = self.mass_at(k) * f(self.point_at(k))
            total += term
            abs_total += abs(term)
            if abs(term) < policy.rel_tail * abs_total:
                small_run += 1
                if small_run >= policy.run_length:
                    break
            else:
                small_run = 0
        return total


@dataclass(frozen=True)
class MeasureSpec:
    """Continuous density and/or discrete point masses defining a measure."""

    continuous: ContinuousPart | None = None
    discrete: DiscretePart | None = None

    def __post_init__(self):
        if self.continuous is None and self.discrete is None:
            raise ValidationError("measure needs a continuous or discrete component")


class FamilySpec:
    """Base class for polynomial family specifications."""

    kind: str = "custom"


@dataclass(frozen=True)
class Charlier(FamilySpec):
    mu: float
    kind = "charlier"

    def __post_init__(self):
        if not self.mu > 0.0:
            raise ValidationError(f"charlier requires mu > 0, got mu={self.mu!r}")


@dataclass(frozen=True)
class Meixner(FamilySpec):
    mu: float
    beta: float
    kind = "meixner"

    def __post_init__(self):
        if not self.mu > 0.0:
            raise ValidationError(f"meixner requires mu > 0, got mu={self.mu!r}")
        if not 0.0 < self.beta < 1.0:
            raise ValidationError(
                f"meixner requires 0 < beta < 1, got beta={self.beta!r}"
            )


@dataclass(frozen=True)
class Krawtchouk(FamilySpec):
    m: int
    gamma: float
    kind = "krawtchouk"

    def __post_init__(self):
        if not (isinstance(self.m, int) and self.m >= 1):
            raise ValidationError(f"krawtchouk requires integer M >= 1, got M={self.m!r}")
        if not 0.0 < self.gamma < 1.0:
            raise ValidationError(
                f"krawtchouk requires 0 < gamma < 1, got gamma={self.gamma!r}"
            )


@dataclass(frozen=True)
class ContinuousDualHahn(FamilySpec):
    mu: float
    alpha: float
    beta: float
    kind = "cdh"

    def __post_init__(self):
        if self.mu == 0.0:
            raise ValidationError("continuous dual Hahn requires mu != 0")
        if self.mu > 0.0:
            if not (self.alpha > 0.0 and self.beta > 0.0):
                raise ValidationError(
                    "continuous dual Hahn with mu > 0 requires alpha > 0 and "
                    f"beta > 0, got alpha={self.alpha!r}, beta={self.beta!r}"
                )
        else:
            if not (self.alpha + self.mu > 0.0 and self.beta + self.mu > 0.0):
                raise ValidationError(
                    "continuous dual Hahn with mu < 0 requires alpha + mu > 0 "
                    f"and beta + mu > 0, got alpha={self.alpha!r}, "
                    f"beta={self.beta!r}, mu={self.mu!r}"
                )


@dataclass(frozen=True)
class Wilson(FamilySpec):
    mu: float
    nu: float
    alpha: float
    beta: float
    kind = "wilson"

    def __post_init__(self):
        others = {"nu": self.nu, "alpha": self.alpha, "beta": self.beta}
        if self.mu == 0.0:
            raise ValidationError("wilson requires mu != 0")
        if self.mu > 0.0:
            bad = {k: v for k, v in others.items() if not v > 0.0}
            if bad:
                raise ValidationError(
                    f"wilson with mu > 0 requires nu, alpha, beta > 0; violated by {bad!r}"
                )
        else:
            bad = {k: v for k, v in others.items() if not v + self.mu > 0.0}
            if bad:
                raise ValidationError(
                    f"wilson with mu < 0 requires nu + mu, alpha + mu, beta + mu > 0; "
                    f"violated by {bad!r} with mu={self.mu!r}"
                )


@dataclass(frozen=True)
class Custom(FamilySpec):
    stream: RecurrenceStream
    spec_measure: MeasureSpec
    kind = "custom"


def recurrence(spec: FamilySpec) -> RecurrenceStream:
    """Closed-form recurrence coefficient stream for a family.

    For ContinuousDualHahn and Wilson the recurrence variable is y = x^2;
    nodes and matrix elements downstream live in that squared variable.
    """
    if isinstance(spec, Charlier):
        mu = spec.mu
        return RecurrenceStream(
            a=lambda n: n + mu,
            b=lambda n: -math.sqrt(mu * (n + 1)),
        )
    if isinstance(spec, Meixner):
        mu, beta = spec.mu, spec.beta
        sq = math.sqrt(beta) / (1.0 - beta)
        return RecurrenceStream(
            a=lambda n: (n * (1.0 + beta) + 2.0 * mu * beta) / (1.0 - beta),
            b=lambda n: -sq * math.sqrt((n + 1) * (n + 2.0 * mu)),
        )
    if isinstance(spec, Krawtchouk):
        m, g = spec.m, spec.gamma
        return RecurrenceStream(
            a=lambda n: m * g + n * (1.0 - 2.0 * g),
            b=lambda n: -math.sqrt((n + 1) * (m - n) * g * (1.0 - g)),
            size=m + 1,
        )
    if isinstance(spec, ContinuousDualHahn):
        mu, al, be = spec.mu, spec.alpha, spec.beta
        return RecurrenceStream(
            a=lambda n: (n + mu + al) * (n + mu + be)
            + n * (n + al + be - 1.0)
            - mu * mu,
            b=lambda n: -math.sqrt(
                (n + 1) * (n + al + be) * (n + mu + al) * (n + mu + be)
            ),
        )
    if isinstance(spec, Wilson):
        mu, nu, al, be = spec.mu, spec.nu, spec.alpha, spec.beta
        s = mu + nu + al + be

        def a(n: int) -> float:
            t1 = (
                (n + mu + nu)
                * (n + mu + al)
                * (n + mu + be)
                * (n + s - 1.0)
                / ((2.0 * n + s) * (2.0 * n + s - 1.0))
            )
            t2 = (
                n
                * (n + nu + al - 1.0)
                * (n + nu + be - 1.0)
                * (n + al + be - 1.0)
                / ((2.0 * n + s - 1.0) * (2.0 * n + s - 2.0))
            )
            return t1 + t2 - mu * mu

        def b(n: int) -> float:
            num = (
                (n + 1)
                * (n + mu + nu)
                * (n + al + be)
                * (n + mu + al)
                * (n + mu + be)
                * (n + nu + al)
                * (n + nu + be)
                * (n + s - 1.0)
            )
            den = (2.0 * n + s - 1.0) * (2.0 * n + s + 1.0)
            return -math.sqrt(num / den) / (2.0 * n + s)

        return RecurrenceStream(a=a, b=b)
    if isinstance(spec, Custom):
        return spec.stream
    raise ValidationError(f"unknown family spec {spec!r}")


def _charlier_measure(mu: float) -> MeasureSpec:
    def ln_mass(x: float) -> float:
        return x * math.log(mu) - mu - ln_gamma(x + 1.0)

    return MeasureSpec(
        discrete=DiscretePart(
            point_at=float,
            mass_at=lambda k: math.exp(ln_mass(float(k))),
            size=None,
            density=lambda x: math.exp(ln_mass(x)),
        )
    )


def _meixner_measure(mu: float, beta: float) -> MeasureSpec:
    c = 2.0 * mu * math.log1p(-beta) - ln_gamma(2.0 * mu)

    def ln_mass(x: float) -> float:
        return c + ln_gamma(2.0 * mu + x) + x * math.log(beta) - ln_gamma(x + 1.0)

    return MeasureSpec(
        discrete=DiscretePart(
            point_at=float,
            mass_at=lambda k: math.exp(ln_mass(float(k))),
            size=None,
            density=lambda x: math.exp(ln_mass(x)),
        )
    )


def _krawtchouk_measure(m: int, g: float) -> MeasureSpec:
    # Binomial masses C(M,k) g^k (1-g)^{M-k}; the exponent on (1-g) uses the
    # spectrum size M, which is what makes the masses sum to one.
    c = ln_gamma(m + 1.0)

    def ln_mass(x: float) -> float:
        return (
            c
            - ln_gamma(m - x + 1.0)
            - ln_gamma(x + 1.0)
            + x * math.log(g)
            + (m - x) * math.log1p(-g)
        )

    return MeasureSpec(
        discrete=DiscretePart(
            point_at=float,
            mass_at=lambda k: math.exp(ln_mass(float(k))),
            size=m + 1,
            density=lambda x: math.exp(ln_mass(x)),
        )
    )


def _squared_variable_masses(
    mu: float,
    ln_front: float,
    poch_up: tuple[float, ...],
    poch_down: tuple[float, ...],
    alternating_sign: bool,
) -> DiscretePart:
    """Point masses at y_k = -(k+mu)^2 for every k >= 0 with k + mu < 0.

    Each mass is assembled in log space from a constant prefactor,
    the (-mu-k) factor, Pochhammer products, and 1/k!; signs of the
    individual factors are tracked and the final mass must be positive.
    """
    points: list[float] = []
    masses: list[float] = []
    k = 0
    while k + mu < 0.0:
        ln = ln_front + math.log(-(mu + k)) - ln_gamma(k + 1.0)
        sign = -1.0 if (alternating_sign and k % 2 == 1) else 1.0
        for base in poch_up:
            l, s = ln_pochhammer_signed(base, k)
            ln += l
            sign *= s
        for base in poch_down:
            l, s = ln_pochhammer_signed(base, k)
            if s == 0.0:
                raise NumericalError(
                    f"vanishing Pochhammer denominator ({base})_{k} in discrete mass"
                )
            ln -= l
            sign *= s
        xi = sign * math.exp(ln)
        if not xi > 0.0:
            raise NumericalError(
                f"discrete mass xi_{k} = {xi!r} is not positive; "
                "weight formula and parameters are inconsistent"
            )
        points.append(-((k + mu) ** 2))
        masses.append(xi)
        k += 1
    pts = tuple(points)
    ms = tuple(masses)
    return DiscretePart(
        point_at=lambda i: pts[i],
        mass_at=lambda i: ms[i],
        size=len(pts),
    )


def _cdh_measure(mu: float, al: float, be: float) -> MeasureSpec:
    ln_c = (
        -math.log(2.0 * math.pi)
        - ln_gamma(mu + al)
        - ln_gamma(mu + be)
        - ln_gamma(al + be)
    )

    def sigma(x: float) -> float:
        if x == 0.0:
            return 0.0
        ln = (
            ln_c
            + ln_abs_gamma_sq(mu, x)
            + ln_abs_gamma_sq(al, x)
            + ln_abs_gamma_sq(be, x)
            - ln_abs_gamma_sq(0.0, 2.0 * x)
        )
        return math.exp(ln)

    discrete = None
    if mu < 0.0:
        ln_front = (
            math.log(2.0)
            + ln_gamma(al - mu)
            + ln_gamma(be - mu)
            - ln_gamma(al + be)
            - ln_gamma(1.0 - 2.0 * mu)
        )
        discrete = _squared_variable_masses(
            mu,
            ln_front,
            poch_up=(mu + al, mu + be, 2.0 * mu),
            poch_down=(mu - al + 1.0, mu - be + 1.0),
            alternating_sign=True,  # the (-1)^k k! denominator
        )
    return MeasureSpec(
        continuous=ContinuousPart(density=sigma, support=(0.0, math.inf)),
        discrete=discrete,
    )


def _wilson_measure(mu: float, nu: float, al: float, be: float) -> MeasureSpec:
    ln_c = (
        -math.log(2.0 * math.pi)
        + ln_gamma(mu + nu + al + be)
        - ln_gamma(mu + nu)
        - ln_gamma(al + be)
        - ln_gamma(mu + al)
        - ln_gamma(mu + be)
        - ln_gamma(nu + al)
        - ln_gamma(nu + be)
    )

    def sigma(x: float) -> float:
        if x == 0.0:
            return 0.0
        ln = (
            ln_c
            + ln_abs_gamma_sq(mu, x)
            + ln_abs_gamma_sq(nu, x)
            + ln_abs_gamma_sq(al, x)
            + ln_abs_gamma_sq(be, x)
            - ln_abs_gamma_sq(0.0, 2.0 * x)
        )
        return math.exp(ln)

    discrete = None
    if mu < 0.0:
        ln_front = (
            math.log(2.0)
            + ln_gamma(mu + nu + al + be)
            + ln_gamma(nu - mu)
            + ln_gamma(al - mu)
            + ln_gamma(be - mu)
            - ln_gamma(-2.0 * mu + 1.0)
            - ln_gamma(al + be)
            - ln_gamma(al + nu)
            - ln_gamma(be + nu)
        )
        discrete = _squared_variable_masses(
            mu,
            ln_front,
            poch_up=(2.0 * mu, mu + nu, mu + al, mu + be),
            poch_down=(mu - nu + 1.0, mu - al + 1.0, mu - be + 1.0),
            alternating_sign=False,  # plain k! denominator here
        )
    return MeasureSpec(
        continuous=ContinuousPart(density=sigma, support=(0.0, math.inf)),
        discrete=discrete,
    )


def measure(spec: FamilySpec) -> MeasureSpec:
    """Measure of a family: discrete masses, continuous density, or both.

    For ContinuousDualHahn and Wilson the continuous density is a function
    of x on [0, inf) while discrete points are given in the squared variable
    y = x^2 (every k >= 0 with k + mu < 0 contributes y_k = -(k+mu)^2, which
    is exactly the index range with positive masses).
    """
    if isinstance(spec, Charlier):
        return _charlier_measure(spec.mu)
    if isinstance(spec, Meixner):
        return _meixner_measure(spec.mu, spec.beta)
    if isinstance(spec, Krawtchouk):
        return _krawtchouk_measure(spec.m, spec.gamma)
    if isinstance(spec, ContinuousDualHahn):
        return _cdh_measure(spec.mu, spec.alpha, spec.beta)
    if isinstance(spec, Wilson):
        return _wilson_measure(spec.mu, spec.nu, spec.alpha, spec.beta)
    if isinstance(spec, Custom):
        return spec.spec_measure
    raise ValidationError(f"unknown family spec {spec!r}")


def eval_poly(stream: RecurrenceStream, n: int, x: float) -> float:
    """Evaluate the orthonormal polynomial p_n(x) by forward recurrence.

    Seeds are p_0 = 1 and p_1 = (x - a_0)/b_0; then
    x p_k = a_k p_k + b_{k-1} p_{k-1} + b_k p_{k+1}.
    """
    if n < 0:
        raise ValidationError(f"polynomial degree must be >= 0, got {n}")
    if stream.size is not None and n > stream.size - 1:
        raise ValidationError(
            f"degree {n} out of range for a finite family of size {stream.size}"
        )
    p_prev = 1.0
    if n == 0:
        return p_prev
    p_cur = (x - stream.a(0)) / stream.b(0)
    for k in range(1, n):
        p_prev, p_cur = (
            p_cur,
            ((x - stream.a(k)) * p_cur - stream.b(k - 1) * p_prev) / stream.b(k),
        )
    return p_cur
