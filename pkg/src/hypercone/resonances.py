"""Resonance lattice of a hyperbolic cone and the Gamma-pole case analysis.

For a cross-section mode with eigenvalue mu^2, put s = sqrt(((n-1)/2)^2 +
mu^2).  Modes with s in 1/2 + Z contribute nothing; every other mode
contributes resonances at lambda_{j,k} = -i(1/2 + k + s_j), k = 0, 1, 2, ...
with the mode's multiplicity.  The mode resolvent's prefactor is
Gamma(a)Gamma(b) / (Gamma(c)Gamma(1+s)) with a = 1/2 - i*lambda, b = a + s,
c = 2a, and whether a prefactor pole survives in the full kernel is a
six-way case split on which of a, b, c sit in {0, -1, -2, ...}.

Integer-lattice membership is decided exactly whenever the inputs allow it.
A value here has the form r + w*s with rational r, w; if s is rational the
value folds to a rational, and if s^2 is rational but s is not, any value
with w != 0 is irrational and membership is settled.  Floats within 1e-9 of
the lattice without an exact form raise UndecidableMembership rather than
guessing.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .crosssec import GenericityVerdict, Mode, SpectrumSpec, _rational_sqrt, is_generic
from .errors import (
    InconsistentParams,
    InvalidDimension,
    TruncationInsufficient,
    UndecidableMembership,
    ValidationError,
)

_LATTICE_TOL = 1e-9

# (rational part, coefficient of s); exact value is rat + coef * s
_Sym = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class SValue:
    """s = sqrt(((n-1)/2)^2 + mu^2) with whatever exactness survives.

    exact is set when s itself is rational; sq_exact is set whenever mu^2 is
    exact (so irrationality of s is certified when sq_exact is present but
    exact is not).
    """

    value: float
    exact: Fraction | None = None
    sq_exact: Fraction | None = None


def s_param(n: int, mode: Mode) -> SValue:
    if not isinstance(n, int) or n < 1:
        raise InvalidDimension(f"n must be an integer >= 1, got {n!r}")
    if mode.mu_sq_exact is not None:
        sq = Fraction(n - 1, 2) ** 2 + mode.mu_sq_exact
        root = _rational_sqrt(sq)
        value = float(root) if root is not None else math.sqrt(sq)
        return SValue(value, root, sq)
    return SValue(math.sqrt(((n - 1) / 2.0) ** 2 + mode.mu_sq), None, None)


@dataclass(frozen=True)
class HypergeomParams:
    """Mode-resolvent hypergeometric parameters at spectral point lambda.

    Invariants c = 2a and b = a + s hold by construction.  The *_sym fields
    carry exact (rational, coefficient-of-s) forms when lambda is purely
    imaginary with known-exact imaginary part; they drive the pole
    classifier's exact lattice decisions.
    """

    a: complex
    b: complex
    c: complex
    s: float
    lam: complex
    s_exact: Fraction | None = None
    s_sq_exact: Fraction | None = None
    a_sym: _Sym | None = None
    b_sym: _Sym | None = None
    c_sym: _Sym | None = None


def _build_params(n: int, mode: Mode, lam: complex,
                  y_sym: _Sym | None) -> HypergeomParams:
    # y_sym encodes Im(lambda) = rat + coef * s when known exactly
    sv = s_param(n, mode)
    lam = complex(lam)
    a = 0.5 - 1j * lam
    b = a + sv.value
    c = 2.0 * a
    a_sym = b_sym = c_sym = None
    if y_sym is not None:
        u, v = y_sym
        if sv.exact is not None:
            a_sym = (Fraction(1, 2) + u + v * sv.exact, Fraction(0))
            b_sym = (a_sym[0] + sv.exact, Fraction(0))
            c_sym = (2 * a_sym[0], Fraction(0))
        elif sv.sq_exact is not None:
            a_sym = (Fraction(1, 2) + u, v)
            b_sym = (Fraction(1, 2) + u, v + 1)
            c_sym = (1 + 2 * u, 2 * v)
        # float-only s: no exact decisions possible, leave syms unset
    return HypergeomParams(a, b, c, sv.value, lam, sv.exact, sv.sq_exact,
                           a_sym, b_sym, c_sym)


def hypergeom_params(n: int, mode: Mode, lam: complex, *,
                     lam_im_exact: Fraction | None = None) -> HypergeomParams:
    """Parameters (a, b, c, s) for the mode resolvent at lambda.

    i*lambda is carried exactly when lambda is purely imaginary: any float
    imaginary part is itself a rational, so Re(lambda) == 0 is enough; an
    explicit lam_im_exact (must match to 1e-12) can also be supplied.
    """
    lam = complex(lam)
    if lam_im_exact is not None:
        if abs(lam.imag - float(lam_im_exact)) > 1e-12 * (1.0 + abs(lam.imag)):
            raise InconsistentParams(
                f"lam_im_exact = {lam_im_exact} disagrees with lam = {lam}")
        if lam.real != 0.0:
            raise InconsistentParams(
                "lam_im_exact supplied for a lambda with nonzero real part")
        y: _Sym | None = (lam_im_exact, Fraction(0))
    elif lam.real == 0.0:
        y = (Fraction(lam.imag), Fraction(0))
    else:
        y = None
    return _build_params(n, mode, lam, y)


def candidate_params(n: int, mode: Mode, k: int) -> HypergeomParams:
    """Parameters at the candidate resonance position lambda = -i(1/2 + k + s).

    The imaginary part involves s itself, so this constructor keeps it in
    symbolic form; for irrational s this is the only way to classify the
    candidate exactly (e.g. s = sqrt(13)/2 gives a = -s, b = 0, c = -2s)."""
    if not isinstance(k, int) or k < 0:
        raise ValidationError(f"k must be an integer >= 0, got {k!r}")
    sv = s_param(n, mode)
    lam = complex(0.0, -(0.5 + k + sv.value))
    u = Fraction(-1, 2) - k
    v = Fraction(-1)
    if mode.mu_sq_exact is None:
        return _build_params(n, mode, lam, None)
    return _build_params(n, mode, lam, (u, v))


class PoleVerdict(enum.Enum):
    REGULAR = "regular"
    GENUINE_POLE = "genuine_pole"
    REMOVABLE = "removable"


class CaseId(enum.Enum):
    cN_bN_aN = "cN_bN_aN"
    cN_bY = "cN_bY"
    cY_bN_aN = "cY_bN_aN"
    cY_bN_aY = "cY_bN_aY"
    cY_bY_aN = "cY_bY_aN"
    cY_bY_aY = "cY_bY_aY"


@dataclass(frozen=True)
class PoleClass:
    verdict: PoleVerdict
    case_id: CaseId


_GENUINE_CASES = {CaseId.cN_bY, CaseId.cY_bY_aY}


def _in_lattice(value: complex, sym: _Sym | None, p: HypergeomParams,
                what: str) -> bool:
    # membership in {0, -1, -2, ...}
    if sym is not None:
        rat, coef = sym
        if coef == 0:
            return rat.denominator == 1 and rat <= 0
        if p.s_sq_exact is not None and p.s_exact is None:
            return False  # rat + coef*s is irrational
        raise InconsistentParams(f"symbolic form of {what} lost its s data")
    nearest = min(round(value.real), 0)
    dist = math.hypot(value.real - nearest, value.imag)
    if dist <= _LATTICE_TOL:
        raise UndecidableMembership(
            f"{what} = {value} is within {_LATTICE_TOL} of the non-positive "
            f"integers and no exact form is available")
    return False


def classify_pole(p: HypergeomParams) -> PoleClass:
    """Six-way case split on lattice membership of (c, b, a).

    c not in Z_-: regular unless b is (genuine pole).  c in Z_-: a pole of
    Gamma(c) can cancel the prefactor poles, leaving these parameter points
    regular (neither a nor b in the lattice), removable (exactly one), or a
    genuine pole (both).  a in the lattice forces c = 2a in it too, so the
    remaining combination cannot arise from consistent parameters.
    """
    if abs(p.c - 2.0 * p.a) > 1e-12 * (1.0 + abs(p.c)):
        raise InconsistentParams(f"c = {p.c} is not 2a = {2.0 * p.a}")
    if abs(p.b - (p.a + p.s)) > 1e-12 * (1.0 + abs(p.b)):
        raise InconsistentParams(f"b = {p.b} is not a + s = {p.a + p.s}")
    c_in = _in_lattice(p.c, p.c_sym, p, "c")
    b_in = _in_lattice(p.b, p.b_sym, p, "b")
    a_in = _in_lattice(p.a, p.a_sym, p, "a")
    if a_in and not c_in:
        raise InconsistentParams(
            f"a = {p.a} in the lattice but c = 2a = {p.c} is not")
    if not c_in:
        if b_in:
            return PoleClass(PoleVerdict.GENUINE_POLE, CaseId.cN_bY)
        return PoleClass(PoleVerdict.REGULAR, CaseId.cN_bN_aN)
    if a_in and b_in:
        return PoleClass(PoleVerdict.GENUINE_POLE, CaseId.cY_bY_aY)
    if a_in:
        return PoleClass(PoleVerdict.REMOVABLE, CaseId.cY_bN_aY)
    if b_in:
        return PoleClass(PoleVerdict.REMOVABLE, CaseId.cY_bY_aN)
    return PoleClass(PoleVerdict.REGULAR, CaseId.cY_bN_aN)


@dataclass(frozen=True)
class Truncation:
    j_max: int
    k_max: int
    lambda_max: float


@dataclass(frozen=True)
class Resonance:
    """One resonance: lambda = -i * t with t = -Im(lambda) > 0.

    im_part_exact is the exact rational t when every contributing s is
    rational.  contributors lists (mode label j, order k) pairs, and
    multiplicity is the sum of the contributing modes' multiplicities.
    """

    lam: complex
    multiplicity: int
    contributors: tuple[tuple[int, int], ...]
    im_part_exact: Fraction | None = None
    surd_key: tuple[Fraction, int] | None = field(default=None, repr=False)

    @property
    def t(self) -> float:
        return -self.lam.imag

    def t_le(self, bound: float) -> bool:
        # exact comparison whenever an exact form is carried
        if self.im_part_exact is not None:
            return self.im_part_exact <= Fraction(bound)
        if self.surd_key is not None:
            s_sq, k = self.surd_key
            rhs = Fraction(bound) - Fraction(1, 2) - k
            if rhs < 0:
                return False
            return s_sq <= rhs * rhs
        return self.t <= bound


@dataclass
class ResonanceSet:
    resonances: list[Resonance]
    truncation: Truncation
    spectrum: SpectrumSpec
    exact: bool

    def complete_up_to(self, bound: float) -> bool:
        """True when the truncation provably captures every resonance with
        |lambda| <= bound: the last listed mode's 1/2 + s exceeds the bound
        (so do all unlisted modes) and so does 1/2 + k_max + s_first."""
        modes = self.spectrum.modes
        if not modes:
            return True
        n = self.spectrum.dimension_n
        s_last = s_param(n, modes[-1])
        s_first = s_param(n, modes[0])
        return (_s_exceeds(s_last, Fraction(0), bound)
                and _s_exceeds(s_first, Fraction(self.truncation.k_max), bound))


def _s_exceeds(sv: SValue, offset: Fraction, bound: float) -> bool:
    # decides 1/2 + offset + s > bound, exactly when possible
    if sv.exact is not None:
        return Fraction(1, 2) + offset + sv.exact > Fraction(bound)
    if sv.sq_exact is not None:
        rhs = Fraction(bound) - Fraction(1, 2) - offset
        if rhs < 0:
            return True
        return sv.sq_exact > rhs * rhs
    return 0.5 + float(offset) + sv.value > bound


def enumerate_resonances(spec: SpectrumSpec, k_max: int,
                         lambda_max: float) -> ResonanceSet:
    """All resonances with |lambda| <= lambda_max from the truncated
    spectrum, k = 0..k_max, merged across coinciding positions.

    Merging is exact whenever every generic mode carries exact s data: two
    positions 1/2 + k + s coincide only if both s are rational (compare the
    rationals) or the modes share the same irrational s (compare (s^2, k)).
    Otherwise positions are clustered with a 1e-9 tolerance on -Im lambda.
    Raises UndecidableMembership if any mode's genericity is unknown_float.
    """
    if not isinstance(k_max, int) or k_max < 0:
        raise ValidationError(f"k_max must be an integer >= 0, got {k_max!r}")
    if not (isinstance(lambda_max, (int, float)) and lambda_max >= 0):
        raise ValidationError(f"lambda_max must be >= 0, got {lambda_max!r}")
    n = spec.dimension_n
    generic: list[tuple[Mode, SValue]] = []
    for mode in spec.modes:
        verdict = is_generic(mode, n)
        if verdict is GenericityVerdict.UNKNOWN_FLOAT:
            raise UndecidableMembership(
                f"mode j = {mode.label} (mu_sq = {mode.mu_sq}) sits within "
                f"1e-9 of the half-odd-integer lattice without an exact form")
        if verdict is GenericityVerdict.NON_GENERIC:
            continue
        generic.append((mode, s_param(n, mode)))
    all_exact = all(sv.exact is not None or sv.sq_exact is not None
                    for _, sv in generic)
    entries = []
    for mode, sv in generic:
        for k in range(k_max + 1):
            t = 0.5 + k + sv.value
            if sv.exact is not None:
                t_exact = Fraction(1, 2) + k + sv.exact
                if t_exact > Fraction(lambda_max):
                    break
                key = ("rat", t_exact)
                entries.append((float(t_exact), key, t_exact, None, mode, k))
            elif sv.sq_exact is not None:
                if not (_le_surd(sv.sq_exact, k, lambda_max)):
                    break
                key = ("surd", sv.sq_exact, k)
                entries.append((t, key, None, (sv.sq_exact, k), mode, k))
            else:
                if t > lambda_max:
                    break
                entries.append((t, None, None, None, mode, k))
    groups: list[list] = []
    if all_exact:
        by_key: dict = {}
        for e in entries:
            by_key.setdefault(e[1], []).append(e)
        groups = list(by_key.values())
    else:
        for e in sorted(entries, key=lambda e: e[0]):
            if groups and e[0] - groups[-1][-1][0] <= _LATTICE_TOL:
                groups[-1].append(e)
            else:
                groups.append([e])
    resonances = []
    for grp in groups:
        t = grp[0][0]
        exact_t = grp[0][2]
        surd = grp[0][3]
        if not all_exact and any(e[1] is None or e[1] != grp[0][1]
                                 for e in grp):
            exact_t = surd = None
        contributors = tuple(sorted((e[4].label, e[5]) for e in grp))
        mult = sum(e[4].multiplicity for e in grp)
        resonances.append(Resonance(complex(0.0, -t), mult, contributors,
                                    exact_t, surd))
    resonances.sort(key=lambda r: r.t)
    trunc = Truncation(spec.modes[-1].label if spec.modes else -1,
                       k_max, float(lambda_max))
    return ResonanceSet(resonances, trunc, spec, all_exact)


def _le_surd(s_sq: Fraction, k: int, bound: float) -> bool:
    # 1/2 + k + sqrt(s_sq) <= bound, exact
    rhs = Fraction(bound) - Fraction(1, 2) - k
    if rhs < 0:
        return False
    return s_sq <= rhs * rhs


def weyl_count(rset: ResonanceSet, lambda_bound: float) -> int:
    """Number of resonances (with multiplicity) of modulus <= lambda_bound.

    Refuses to count when the set's truncation cannot certify completeness
    up to the bound."""
    if not rset.complete_up_to(lambda_bound):
        raise TruncationInsufficient(
            f"enumeration (j_max = {rset.truncation.j_max}, k_max = "
            f"{rset.truncation.k_max}) is not provably complete up to "
            f"lambda = {lambda_bound}")
    return sum(r.multiplicity for r in rset.resonances if r.t_le(lambda_bound))


def weyl_leading_term(n: int, vol_y: float, lam: float) -> float:
    """Leading-order resonance count |B_n| Vol(Y) lambda^(n+1) /
    ((2 pi)^n (n+1)), with |B_n| the Euclidean unit-ball volume."""
    if not isinstance(n, int) or n < 1:
        raise InvalidDimension(f"n must be an integer >= 1, got {n!r}")
    if not (vol_y > 0 and math.isfinite(vol_y)):
        raise ValidationError(f"volume must be positive, got {vol_y!r}")
    if lam < 0:
        raise ValidationError(f"lambda must be >= 0, got {lam!r}")
    ball = math.pi ** (n / 2.0) / math.gamma(n / 2.0 + 1.0)
    return ball * vol_y * lam ** (n + 1) / ((2.0 * math.pi) ** n * (n + 1))
