"""Explicit mode resolvent on the hyperbolic cone and its numerical checks.

Radial coordinate r > 0 maps to sigma = 1/cosh^2(r/2) in (0, 1).  In sigma
the mode operator is hypergeometric: with a = 1/2 - i*lambda, b = a + s,
c = 2a, the kernel is built from u1 = F(a,b;c;sigma), the solution selected
at sigma = 0 (r = infinity), and u2 = F(a,b;1+s;1-sigma), selected at
sigma = 1 (r = 0).  The resolvent applied to a compactly supported radial
profile f is

    (R f)(sigma) = P [ u1(sigma) int_sigma^1 f u2 w drho
                       + u2(sigma) int_0^sigma f u1 w drho ],

P = Gamma(a)Gamma(b) / (Gamma(c)Gamma(1+s)), and the weight factorizes as
w(sigma, rho) = sigma^alpha (1-sigma)^beta rho^e1 (1-rho)^e2 with
alpha = n/2 - i*lambda, beta = -(n-1)/4 + s/2, e1 = -1 - n/2 - i*lambda,
e2 = s/2 + (n-1)/4.  The sigma factors leave the integrals, so many
evaluation points can share cumulative integrals over one partition; that
sharing is what keeps finite-difference residual checks clean.

Evaluation routes: Gamma(a)Gamma(b)F(a,b;c;z)/Gamma(c) is computed as one
fused series whose terms stay finite through the Gamma poles and zeros
(removable parameter points get their exact limit, taken along the
lambda-direction where (a, b, c) move at rates (1, 1, 2)); u2 is switched
to the Euler transform sigma^(c'-a-b) F(c'-a, c'-b; c'; 1-sigma) whenever
Re(1+s-a-b) = -2 Im(lambda) is small, which removes the catastrophic
cancellation of the direct series in the upper half plane.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import (
    DomainError,
    LowerParameterPole,
    NoConvergence,
    ParameterPole,
    PoleEvaluation,
    ProbeInconclusive,
    UndecidableMembership,
    ValidationError,
)
from .quadrature import integrate
from .resonances import (
    HypergeomParams,
    PoleVerdict,
    classify_pole,
    hypergeom_params,
    s_param,
)
from .specfun import (
    SeriesControl,
    gamma,
    gauss_series,
    is_nonpositive_integer,
    ln_gamma,
)
from .crosssec import Mode


@dataclass(frozen=True)
class QuadratureControl:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 200


_DEFAULT_QC = QuadratureControl()
# cumulative-partition integrals feed finite differences, so they run tight
_GRID_QC = QuadratureControl(abs_tol=1e-15, rel_tol=5e-14, max_subdivisions=60)
# kernel series run to the roundoff floor: their values enter finite
# differences and Wronskian cancellations that amplify any truncation tail
_SERIES = SeriesControl(rel_tol=3e-16, max_terms=10000)


# -- coordinates and measure --------------------------------------------------

def sigma_of_r(r: float) -> float:
    """sigma = 1/cosh^2(r/2), mapping r in (0, inf) onto (0, 1)."""
    if not (r > 0 and math.isfinite(r)):
        raise DomainError(f"r must be in (0, inf), got {r!r}")
    return 1.0 / math.cosh(0.5 * r) ** 2


def r_of_sigma(sigma: float) -> float:
    """Inverse map r = 2 acosh(1/sqrt(sigma)) on (0, 1]."""
    if not (0.0 < sigma <= 1.0):
        raise DomainError(f"sigma must be in (0, 1], got {sigma!r}")
    return 2.0 * math.acosh(1.0 / math.sqrt(sigma))


def measure_density(n: int, sigma: float) -> float:
    """Density of sinh(r)^n dr in sigma: 2^n (1-sigma)^((n-1)/2) sigma^-(n+1).

    At sigma = 1 (the cone tip) the limit is 2 for n = 1 and 0 for n >= 2.
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"n must be an integer >= 1, got {n!r}")
    if not (0.0 < sigma <= 1.0):
        raise DomainError(f"sigma must be in (0, 1], got {sigma!r}")
    return 2.0 ** n * (1.0 - sigma) ** ((n - 1) / 2.0) * sigma ** (-(n + 1))


@dataclass(frozen=True)
class IndicialData:
    """Frobenius exponents of the mode operator in sigma.

    At sigma = 0 the exponents are alpha_pm = n/2 +- i*lambda; at sigma = 1
    they are beta_pm = -(n-1)/4 +- s/2.  selected is the (alpha, beta) pair
    entering the kernel weight: the outgoing exponent n/2 - i*lambda and
    beta_plus.  degenerate flags a coinciding pair (lambda = 0 or s = 0),
    where the second solution picks up a logarithm.
    """

    alpha_plus: complex
    alpha_minus: complex
    beta_plus: float
    beta_minus: float
    selected: tuple[complex, float]
    degenerate: bool


def indicial_roots(n: int, mode: Mode, lam: complex) -> IndicialData:
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"n must be an integer >= 1, got {n!r}")
    lam = complex(lam)
    sv = s_param(n, mode)
    a_plus = 0.5 * n + 1j * lam
    a_minus = 0.5 * n - 1j * lam
    b_plus = -(n - 1) / 4.0 + 0.5 * sv.value
    b_minus = -(n - 1) / 4.0 - 0.5 * sv.value
    degenerate = lam == 0 or sv.value == 0.0
    return IndicialData(a_plus, a_minus, b_plus, b_minus,
                        (a_minus, b_plus), degenerate)


# -- radial source profiles ---------------------------------------------------

@dataclass(frozen=True)
class RadialProfile:
    """A radial source f(sigma) supported in a compact subinterval of (0, 1).

    func is only consulted inside the open support; outside, the profile is
    exactly zero.  Compact support away from both endpoints keeps the kernel
    integrals convergent for every lambda.
    """

    func: Callable[[float], complex]
    support: tuple[float, float]

    def __post_init__(self):
        lo, hi = self.support
        if not (0.0 < lo < hi < 1.0):
            raise ValidationError(
                f"support must satisfy 0 < lo < hi < 1, got {self.support!r}")

    def __call__(self, sigma: float) -> complex:
        lo, hi = self.support
        if lo < sigma < hi:
            return self.func(sigma)
        return 0.0

    @classmethod
    def bump(cls, lo: float = 0.3, hi: float = 0.6) -> "RadialProfile":
        """C^2 bump ((sigma-lo)(hi-sigma))^3, normalized to peak value 1."""
        if not (0.0 < lo < hi < 1.0):
            raise ValidationError(
                f"support must satisfy 0 < lo < hi < 1, got {(lo, hi)!r}")
        scale = ((hi - lo) / 2.0) ** 6

        def f(x: float) -> float:
            return ((x - lo) * (hi - x)) ** 3 / scale

        return cls(f, (lo, hi))


# -- kernel basis functions ---------------------------------------------------

def u1(p: HypergeomParams, sigma: float) -> complex:
    """F(a, b; c; sigma): the solution selected at sigma = 0.

    Undefined when c is a non-positive integer (use the fused resolvent
    routines there); diverges like (1-sigma)^(-s) as sigma -> 1.
    """
    if not (0.0 <= sigma < 1.0):
        raise DomainError(f"sigma must be in [0, 1), got {sigma!r}")
    if is_nonpositive_integer(p.c) or _exact_index(p.c_sym) is not None:
        raise LowerParameterPole(
            f"c = {p.c} is a non-positive integer; F(a,b;c;z) is undefined")
    return gauss_series(p.a, p.b, p.c, complex(sigma), _SERIES)


def u2(p: HypergeomParams, sigma: float) -> complex:
    """F(a, b; 1+s; 1-sigma): the solution selected at sigma = 1.

    For Im(lambda) < 0 the series parameters (a, b) have negative real
    parts and the direct sum cancels badly, so the Euler transform
    sigma^(1+s-a-b) F(1+s-a, 1+s-b; 1+s; 1-sigma) is used instead: its
    parameters 1+s-a and 1-a have real parts 1/2+s-Im(lambda) and
    1/2-Im(lambda), positive exactly on that half plane, and its terms
    accumulate without cancellation.  The two branches agree where both
    converge.
    """
    if not (0.0 < sigma <= 1.0):
        raise DomainError(f"sigma must be in (0, 1], got {sigma!r}")
    c2 = 1.0 + p.s
    w = 1.0 - sigma
    if p.lam.imag < 0.0:
        d = c2 - p.a - p.b
        pref = cmath.exp(d * math.log(sigma)) if sigma != 1.0 else 1.0
        return pref * gauss_series(c2 - p.a, c2 - p.b, complex(c2),
                                   complex(w), _SERIES)
    return gauss_series(p.a, p.b, complex(c2), complex(w), _SERIES)


def _exact_index(sym) -> int | None:
    # index m >= 0 such that the symbolic value equals -m, else None
    if sym is None:
        return None
    rat, coef = sym
    if coef == 0 and rat.denominator == 1 and rat <= 0:
        return int(-rat)
    return None


def wronskian_closed_form(p: HypergeomParams, sigma: float) -> complex:
    """W(u1, u2) = -Gamma(1+s)Gamma(c)/(Gamma(a)Gamma(b)) sigma^-c (1-sigma)^(-1-s).

    At exact parameter points where Gamma(c) is singular the limit is taken
    along lambda: a in -N gives Gamma(2a)/Gamma(a) -> (-1)^p p!/(2 (2p)!)
    at a = -p, and b in -N with c = -m gives Gamma(c)/Gamma(b) ->
    (-1)^(m+q) q!/(2 m!) at b = -q.  When c is a non-positive integer and
    neither limit applies, the basis itself degenerates and ParameterPole
    is raised.
    """
    if not (0.0 < sigma < 1.0):
        raise DomainError(f"sigma must be in (0, 1), got {sigma!r}")
    pw = cmath.exp(-p.c * math.log(sigma)) * (1.0 - sigma) ** (-1.0 - p.s)
    g1s = gamma(complex(1.0 + p.s))
    ia = _exact_index(p.a_sym)
    ib = _exact_index(p.b_sym)
    ic = _exact_index(p.c_sym)
    if ic is None and is_nonpositive_integer(p.c):
        raise ParameterPole(
            f"c = {p.c} sits on a Gamma pole without exact parameter data")
    if ia is not None:
        lim = (-1.0) ** ia * math.factorial(ia) / (2.0 * math.factorial(2 * ia))
        rb = 0.0 if ib is not None else 1.0 / gamma(p.b)
        return -g1s * lim * rb * pw
    if ic is not None and ib is not None:
        lim = ((-1.0) ** (ic + ib) * math.factorial(ib)
               / (2.0 * math.factorial(ic)))
        return -g1s * lim / gamma(p.a) * pw
    if ic is not None:
        raise ParameterPole(
            f"Gamma(c) is singular at c = {p.c} and neither a nor b rescues "
            f"the limit; the (u1, u2) basis degenerates here")
    quot = cmath.exp(ln_gamma(p.c) - ln_gamma(p.a) - ln_gamma(p.b))
    return -g1s * quot * pw


# -- the fused kernel series --------------------------------------------------

class _KernelData:
    """Per-(n, mode, lambda) evaluation state for the resolvent kernel."""

    def __init__(self, n: int, p: HypergeomParams,
                 qc: QuadratureControl) -> None:
        self.n = n
        self.p = p
        self.qc = qc
        self.alpha = 0.5 * n - 1j * p.lam
        self.beta = -(n - 1) / 4.0 + 0.5 * p.s
        self.e1 = -1.0 - 0.5 * n - 1j * p.lam
        self.e2 = 0.5 * p.s + (n - 1) / 4.0
        self.lat = (_exact_index(p.a_sym), _exact_index(p.b_sym),
                    _exact_index(p.c_sym))
        self.inv_g1s = 1.0 / gamma(complex(1.0 + p.s))
        if self.lat == (None, None, None):
            for v, name in ((p.a, "a"), (p.b, "b"), (p.c, "c")):
                if is_nonpositive_integer(v):
                    raise PoleEvaluation(
                        f"{name} = {v} lands exactly on a Gamma pole/zero "
                        f"but carries no exact form to resolve the limit")
            self.t0 = cmath.exp(ln_gamma(p.a) + ln_gamma(p.b) - ln_gamma(p.c))
        else:
            self.t0 = None
        res = [-v.real for v in (p.a, p.b, p.c)]
        self.kmin = max(0, math.ceil(max(res)))

    # G1(z) = Gamma(a)Gamma(b)/Gamma(c) * F(a,b;c;z), poles fused into terms
    def g1(self, z: float) -> complex:
        if not (0.0 <= z < 1.0):
            raise DomainError(f"kernel argument must be in [0, 1), got {z!r}")
        if self.t0 is not None:
            return self._g1_recurrence(z)
        return self._g1_exact(z)

    def _g1_recurrence(self, z: float) -> complex:
        a, b, c = self.p.a, self.p.b, self.p.c
        term = self.t0
        total = term
        small = 0
        if z == 0.0:
            return total
        for k in range(_SERIES.max_terms):
            term *= (a + k) * (b + k) * z / ((c + k) * (k + 1))
            total += term
            if abs(term) <= _SERIES.rel_tol * max(abs(total), 1e-300):
                small += 1
                if small >= 3 and k >= self.kmin:
                    return total
            else:
                small = 0
        raise NoConvergence(
            f"fused kernel series failed to converge at z = {z}")

    def _g1_exact(self, z: float) -> complex:
        # per-term log-space evaluation; a lattice hit at index X turns
        # Gamma(x+k) into the pole coefficient (-1)^(X-k)/((X-k)! * rate)
        # with rate = d(x)/d(delta) along lambda: 1 for a and b, 2 for c
        A, B, C = self.lat
        p = self.p
        lz = math.log(z) if z > 0.0 else None
        total = 0.0 + 0.0j
        small = 0
        for k in range(_SERIES.max_terms):
            l_sum = complex(-math.lgamma(k + 1), 0.0)
            order = 0
            for sign, val, idx, rate in ((1, p.a, A, 1.0), (1, p.b, B, 1.0),
                                         (-1, p.c, C, 2.0)):
                if idx is not None and k <= idx:
                    nu = idx - k
                    lg = complex(-math.lgamma(nu + 1) - math.log(rate),
                                 math.pi * nu)
                    pole = 1
                elif idx is not None:
                    lg = complex(math.lgamma(k - idx), 0.0)
                    pole = 0
                else:
                    lg = ln_gamma(val + k)
                    pole = 0
                l_sum += sign * lg
                order += sign * pole
            if order > 0:
                raise PoleEvaluation(
                    f"kernel term k = {k} is genuinely singular at these "
                    f"parameters (a = {p.a}, b = {p.b}, c = {p.c})")
            if order < 0:
                # structurally zero (unmatched denominator pole): says
                # nothing about tail decay, so skip the convergence count
                small = 0
                continue
            if k > 0 and lz is None:
                break
            term = cmath.exp(l_sum + (k * lz if k else 0.0))
            total += term
            if abs(term) <= _SERIES.rel_tol * max(abs(total), 1e-300):
                small += 1
                if small >= 3 and k >= self.kmin:
                    return total
            else:
                small = 0
        if lz is None:
            return total
        raise NoConvergence(
            f"fused kernel series failed to converge at z = {z}")

    def u2(self, sigma: float) -> complex:
        return u2(self.p, sigma)

    def rho_weight(self, rho: float) -> complex:
        return cmath.exp(self.e1 * math.log(rho)) * (1.0 - rho) ** self.e2

    def sigma_prefactor(self, sigma: float) -> complex:
        return (cmath.exp(self.alpha * math.log(sigma))
                * (1.0 - sigma) ** self.beta)


def _guarded_params(n: int, mode: Mode, lam: complex,
                    lam_im_exact=None) -> HypergeomParams:
    p = hypergeom_params(n, mode, lam, lam_im_exact=lam_im_exact)
    try:
        pc = classify_pole(p)
    except UndecidableMembership:
        return p  # near-pole floats evaluate honestly (to large values)
    if pc.verdict is PoleVerdict.GENUINE_POLE:
        raise PoleEvaluation(
            f"lambda = {lam} is a genuine pole of the mode resolvent "
            f"(case {pc.case_id.value}); the kernel cannot be evaluated")
    return p


def apply_resolvent(n: int, mode: Mode, lam: complex, f: RadialProfile,
                    sigma: float, *, control: QuadratureControl | None = None,
                    lam_im_exact=None) -> complex:
    """(R(lambda) f)(sigma) for a single evaluation point.

    Raises PoleEvaluation at exactly classified genuine poles; removable
    and regular parameter points evaluate through the fused limits.
    """
    if not (0.0 < sigma < 1.0):
        raise DomainError(f"sigma must be in (0, 1), got {sigma!r}")
    qc = control or _DEFAULT_QC
    p = _guarded_params(n, mode, lam, lam_im_exact)
    kd = _KernelData(n, p, qc)
    lo, hi = f.support
    upper = 0.0 + 0.0j
    if sigma < hi:
        upper = integrate(
            lambda r: f(r) * kd.u2(r) * kd.rho_weight(r),
            max(sigma, lo), hi, abs_tol=qc.abs_tol, rel_tol=qc.rel_tol,
            max_subdivisions=qc.max_subdivisions)
    lower = 0.0 + 0.0j
    if sigma > lo:
        lower = integrate(
            lambda r: f(r) * kd.g1(r) * kd.rho_weight(r),
            lo, min(sigma, hi), abs_tol=qc.abs_tol, rel_tol=qc.rel_tol,
            max_subdivisions=qc.max_subdivisions)
    total = 0.0 + 0.0j
    if upper != 0.0:
        total += kd.g1(sigma) * upper
    if lower != 0.0:
        total += kd.u2(sigma) * lower
    return total * kd.sigma_prefactor(sigma) * kd.inv_g1s


def _resolvent_on_grid(kd: _KernelData, f: RadialProfile,
                       sigmas: Sequence[float]) -> dict[float, complex]:
    """(R f) at many sigma sharing one cumulative partition of the support.

    All evaluation points see the same panel integrals, so differences of
    nearby values carry only the panels between them; finite-difference
    stencils on the output lose none of the panel accuracy to cancellation.
    """
    lo, hi = f.support
    qc = kd.qc
    pts = sorted(set(sigmas))
    if not pts or not (0.0 < pts[0] and pts[-1] < 1.0):
        raise DomainError("grid points must lie in (0, 1)")
    cuts = sorted({lo, hi, *[x for x in pts if lo < x < hi]})
    cum_g1 = {cuts[0]: 0.0 + 0.0j}
    cum_u2 = {cuts[0]: 0.0 + 0.0j}
    acc_g1 = acc_u2 = 0.0 + 0.0j
    for left, right in zip(cuts, cuts[1:]):
        acc_g1 += integrate(
            lambda r: f(r) * kd.g1(r) * kd.rho_weight(r), left, right,
            abs_tol=qc.abs_tol, rel_tol=qc.rel_tol,
            max_subdivisions=qc.max_subdivisions)
        acc_u2 += integrate(
            lambda r: f(r) * kd.u2(r) * kd.rho_weight(r), left, right,
            abs_tol=qc.abs_tol, rel_tol=qc.rel_tol,
            max_subdivisions=qc.max_subdivisions)
        cum_g1[right] = acc_g1
        cum_u2[right] = acc_u2
    tot_u2 = acc_u2

    def lower_g1(x: float) -> complex:
        if x <= lo:
            return 0.0 + 0.0j
        if x >= hi:
            return cum_g1[hi]
        return cum_g1[x]

    def upper_u2(x: float) -> complex:
        if x >= hi:
            return 0.0 + 0.0j
        if x <= lo:
            return tot_u2
        return tot_u2 - cum_u2[x]

    out = {}
    for x in pts:
        up = upper_u2(x)
        low = lower_g1(x)
        val = 0.0 + 0.0j
        if up != 0.0:
            val += kd.g1(x) * up
        if low != 0.0:
            val += kd.u2(x) * low
        out[x] = val * kd.sigma_prefactor(x) * kd.inv_g1s
    return out


# -- finite-difference residual of the radial equation ------------------------

_D2 = (-1.0, 16.0, -30.0, 16.0, -1.0)   # / (12 h^2)
_D1 = (1.0, -8.0, 0.0, 8.0, -1.0)       # / (12 h)


@dataclass(frozen=True)
class ResidualReport:
    coordinate: str
    h: float
    grid: tuple[float, ...]
    residuals: tuple[float, ...]
    max_residual: float
    normalization: float


def _default_grid() -> list[float]:
    return [0.1 + 0.016 * i for i in range(51)]


def residual_check(n: int, mode: Mode, lam: complex, f: RadialProfile, *,
                   grid: Sequence[float] | None = None, h: float = 1e-3,
                   coordinate: str = "sigma",
                   control: QuadratureControl | None = None) -> ResidualReport:
    """Max norm of L (R f) - f over a validation grid, via 5-point stencils.

    coordinate selects the form of the radial operator that is differenced:
    "sigma" checks
        -sigma^2(1-sigma) u'' + sigma((n-1) + (3-n)sigma/2) u'
            + (mu^2 sigma^2/(4(1-sigma)) - lambda^2 - n^2/4) u = f,
    and "r" independently checks the same identity in the r variable,
        -u'' - n coth(r) u' + (mu^2/sinh^2(r) - lambda^2 - n^2/4) u = f,
    with the grid still given in sigma.  Residuals are normalized by
    1 + max |f| over the grid.  Grid spacing must be at least 10 h.
    """
    if coordinate not in ("sigma", "r"):
        raise ValidationError(f"coordinate must be 'sigma' or 'r', "
                              f"got {coordinate!r}")
    if not (0.0 < h <= 1e-2):
        raise ValidationError(f"h must be in (0, 1e-2], got {h!r}")
    pts = list(grid) if grid is not None else _default_grid()
    if len(pts) < 1 or any(y <= x for x, y in zip(pts, pts[1:])):
        raise ValidationError("grid must be strictly increasing")
    lam = complex(lam)
    p = _guarded_params(n, mode, lam, None)
    kd = _KernelData(n, p, control or _GRID_QC)
    mu_sq = mode.mu_sq
    shift = lam * lam + 0.25 * n * n

    if coordinate == "sigma":
        if not (pts[0] - 2 * h > 0.0 and pts[-1] + 2 * h < 1.0):
            raise ValidationError("grid (with stencils) must stay in (0, 1)")
        if any(y - x < 10 * h for x, y in zip(pts, pts[1:])):
            raise ValidationError("grid spacing must be at least 10 h")
        nodes = [x + j * h for x in pts for j in (-2, -1, 0, 1, 2)]
        uval = _resolvent_on_grid(kd, f, nodes)
        residuals = []
        fmax = max(abs(f(x)) for x in pts)
        norm = 1.0 + fmax
        for x in pts:
            st = [uval[x + j * h] for j in (-2, -1, 0, 1, 2)]
            d2 = sum(c * v for c, v in zip(_D2, st)) / (12.0 * h * h)
            d1 = sum(c * v for c, v in zip(_D1, st)) / (12.0 * h)
            lu = (-x * x * (1.0 - x) * d2
                  + x * ((n - 1) + (3 - n) * x / 2.0) * d1
                  + (mu_sq * x * x / (4.0 * (1.0 - x)) - shift) * st[2])
            residuals.append(abs(lu - f(x)) / norm)
    else:
        rs = [r_of_sigma(x) for x in reversed(pts)]
        if any(y - x < 10 * h for x, y in zip(rs, rs[1:])):
            raise ValidationError("grid spacing in r must be at least 10 h")
        nodes = [sigma_of_r(r + j * h) for r in rs for j in (-2, -1, 0, 1, 2)]
        uval = _resolvent_on_grid(kd, f, nodes)
        residuals_r = []
        fmax = max(abs(f(sigma_of_r(r))) for r in rs)
        norm = 1.0 + fmax
        for r in rs:
            st = [uval[sigma_of_r(r + j * h)] for j in (-2, -1, 0, 1, 2)]
            d2 = sum(c * v for c, v in zip(_D2, st)) / (12.0 * h * h)
            d1 = sum(c * v for c, v in zip(_D1, st)) / (12.0 * h)
            sh = math.sinh(r)
            lu = (-d2 - n * math.cosh(r) / sh * d1
                  + (mu_sq / (sh * sh) - shift) * st[2])
            residuals_r.append(abs(lu - f(sigma_of_r(r))) / norm)
        residuals = list(reversed(residuals_r))
    return ResidualReport(coordinate, h, tuple(pts), tuple(residuals),
                          max(residuals), norm)


# -- symmetry of the Green pairing --------------------------------------------

def green_pairing(n: int, mode: Mode, lam: complex, f: RadialProfile,
                  g: RadialProfile, *, points: int = 257,
                  control: QuadratureControl | None = None) -> complex:
    """<R f, g> = int (R f)(sigma) g(sigma) mu_n(sigma) dsigma.

    The kernel satisfies G(sigma, rho) mu_n(sigma) = G(rho, sigma) mu_n(rho),
    so swapping f and g must reproduce the same value; comparing the two
    orientations is an end-to-end check of the kernel's branch structure.
    (R f) is evaluated on a shared-partition grid over the support of g and
    the outer integral is a composite Simpson rule.
    """
    if points < 5 or points % 2 == 0:
        raise ValidationError(f"points must be odd and >= 5, got {points!r}")
    lam = complex(lam)
    p = _guarded_params(n, mode, lam, None)
    kd = _KernelData(n, p, control or _GRID_QC)
    lo, hi = g.support
    step = (hi - lo) / (points - 1)
    xs = [lo + i * step for i in range(points)]
    xs[-1] = hi
    inner = [x for x in xs if 0.0 < x < 1.0]
    uval = _resolvent_on_grid(kd, f, inner)
    ys = []
    for x in xs:
        gx = g(x)
        ys.append(uval[x] * gx * measure_density(n, x) if gx != 0.0 else 0.0)
    total = ys[0] + ys[-1] + 4.0 * sum(ys[1:-1:2]) + 2.0 * sum(ys[2:-2:2])
    return total * step / 3.0


# -- contour probe for genuine poles -------------------------------------------

@dataclass(frozen=True)
class ProbeResult:
    """Outcome of a small-circle residue probe around lambda0.

    residue approximates (1/2 pi i) of the contour integral of
    (R(lambda) f)(sigma0); ratio = |residue| / max |samples| is the
    scale-free pole indicator compared against the threshold.
    """

    lam0: complex
    residue: complex
    max_abs_sample: float
    ratio: float
    is_pole: bool
    radius: float
    points: int


def residue_probe(n: int, mode: Mode, lam0: complex, *,
                  profile: RadialProfile | None = None, sigma0: float = 0.45,
                  radius: float = 1e-2, points: int = 16,
                  threshold: float = 1e-6,
                  control: QuadratureControl | None = None) -> ProbeResult:
    """Detect a genuine resolvent pole at lambda0 by a contour residue.

    Samples u_m = (R(lambda_m) f)(sigma0) on the circle
    lambda_m = lambda0 + radius e^(i theta_m) and forms the trapezoidal
    residue (radius/points) sum u_m e^(i theta_m), which converges
    geometrically in points for a meromorphic resolvent.  Verdict: pole if
    ratio >= 10*threshold, regular if ratio <= threshold/10; the band in
    between raises ProbeInconclusive.
    """
    if not (radius > 0 and radius < 0.2):
        raise ValidationError(f"radius must be in (0, 0.2), got {radius!r}")
    if points < 8:
        raise ValidationError(f"points must be >= 8, got {points!r}")
    if not (threshold > 0):
        raise ValidationError(f"threshold must be > 0, got {threshold!r}")
    f = profile if profile is not None else RadialProfile.bump()
    lam0 = complex(lam0)
    qc = control or _DEFAULT_QC
    acc = 0.0 + 0.0j
    max_abs = 0.0
    for m in range(points):
        theta = 2.0 * math.pi * m / points
        phase = cmath.exp(1j * theta)
        lam = lam0 + radius * phase
        um = apply_resolvent(n, mode, lam, f, sigma0, control=qc)
        acc += um * phase
        max_abs = max(max_abs, abs(um))
    residue = acc * radius / points
    if max_abs == 0.0:
        raise ProbeInconclusive(
            "all probe samples vanished; choose sigma0 inside the support")
    ratio = abs(residue) / max_abs
    if ratio >= 10.0 * threshold:
        return ProbeResult(lam0, residue, max_abs, ratio, True, radius, points)
    if ratio <= threshold / 10.0:
        return ProbeResult(lam0, residue, max_abs, ratio, False, radius,
                           points)
    raise ProbeInconclusive(
        f"residue ratio {ratio:.3e} falls between {threshold / 10.0:.1e} and "
        f"{10.0 * threshold:.1e}; refine the probe before trusting it")
