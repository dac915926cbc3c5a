"""Cross-section spectra: built-in round spheres and circles, JSON-file
spectra, and the half-odd-integer exclusion predicate.

A cross-section is described by its Laplace eigenvalues mu_j^2 (with
multiplicities) and its volume.  Exact rational forms ride along whenever
they exist, because the question "is s_j in 1/2 + Z?" sits on a knife edge
that float arithmetic cannot decide honestly: the generic/non-generic call
is made in exact rational arithmetic when possible and reported as
unknown_float otherwise.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .errors import InvalidDimension, InvalidRadius, ParseError, ValidationError

_EXACT_MATCH_TOL = 1e-15


class GenericityVerdict(enum.Enum):
    GENERIC = "generic"
    NON_GENERIC = "non_generic"
    UNKNOWN_FLOAT = "unknown_float"


@dataclass(frozen=True)
class Mode:
    """One eigenvalue mu_sq of the cross-section Laplacian.

    mu_sq_exact, when present, is the exact rational value and must agree
    with the float to 1e-15 relative.  label is the mode's index j in its
    spectrum (assigned by the spectrum constructors, ascending in mu_sq).
    """

    mu_sq: float
    multiplicity: int
    mu_sq_exact: Fraction | None = None
    label: int = 0

    def __post_init__(self):
        if not (isinstance(self.mu_sq, (int, float)) and math.isfinite(self.mu_sq)):
            raise ValidationError(f"mu_sq must be a finite number, got {self.mu_sq!r}")
        if self.mu_sq < 0:
            raise ValidationError(f"mu_sq must be >= 0, got {self.mu_sq}")
        if not isinstance(self.multiplicity, int) or self.multiplicity < 1:
            raise ValidationError(
                f"multiplicity must be an integer >= 1, got {self.multiplicity!r}")
        if self.mu_sq_exact is not None:
            err = abs(self.mu_sq - float(self.mu_sq_exact))
            if err > _EXACT_MATCH_TOL * (1.0 + abs(self.mu_sq)):
                raise ValidationError(
                    f"mu_sq_exact = {self.mu_sq_exact} disagrees with "
                    f"mu_sq = {self.mu_sq}")


@dataclass
class SpectrumSpec:
    """A truncated cross-section spectrum: dimension n, sorted modes, volume.

    source records provenance: 'sphere', 'circle', or 'file'.  volume is
    optional for file spectra (the Weyl comparison then refuses to run).
    """

    dimension_n: int
    modes: list[Mode]
    volume: float | None
    source: str

    def __post_init__(self):
        if not isinstance(self.dimension_n, int) or self.dimension_n < 1:
            raise InvalidDimension(
                f"dimension n must be an integer >= 1, got {self.dimension_n!r}")
        for i in range(len(self.modes) - 1):
            if self.modes[i].mu_sq > self.modes[i + 1].mu_sq:
                raise ValidationError("modes must be sorted by mu_sq ascending")


def _relabel(modes: list[Mode]) -> list[Mode]:
    return [Mode(m.mu_sq, m.multiplicity, m.mu_sq_exact, j)
            for j, m in enumerate(modes)]


def sphere_spectrum(n: int, j_max: int) -> SpectrumSpec:
    """Round unit n-sphere: mu_j^2 = j(j+n-1) with the standard spherical
    harmonic multiplicities, for j = 0..j_max.  n = 1 delegates to the
    circle of radius 1."""
    if not isinstance(n, int) or n < 1:
        raise InvalidDimension(f"sphere dimension must be an integer >= 1, got {n!r}")
    if not isinstance(j_max, int) or j_max < 0:
        raise ValidationError(f"j_max must be an integer >= 0, got {j_max!r}")
    if n == 1:
        return circle_spectrum(1, j_max)
    modes = []
    for j in range(j_max + 1):
        mu = j * (j + n - 1)
        if j == 0:
            m = 1
        else:
            m = math.comb(n + j, n) - math.comb(n + j - 2, n)
        modes.append(Mode(float(mu), m, Fraction(mu), j))
    vol = 2.0 * math.pi ** ((n + 1) / 2.0) / math.gamma((n + 1) / 2.0)
    return SpectrumSpec(n, modes, vol, "sphere")


def circle_spectrum(rho, j_max: int) -> SpectrumSpec:
    """Circle of radius rho (n = 1): mu_j^2 = j^2 / rho^2, multiplicity 1 for
    j = 0 and 2 for j >= 1, volume 2*pi*rho.

    Exact rational tracking requires an exactly-known radius: pass an int,
    Fraction, or string ("1/3", "0.5").  A float radius is taken at face
    value and produces a float-only spectrum.
    """
    exact_rho = None
    if isinstance(rho, (int, Fraction, str)):
        try:
            exact_rho = Fraction(rho)
        except (ValueError, ZeroDivisionError) as e:
            raise InvalidRadius(f"cannot parse radius {rho!r}: {e}") from e
        rho_f = float(exact_rho)
    elif isinstance(rho, float):
        rho_f = rho
    else:
        raise InvalidRadius(f"unsupported radius type {type(rho).__name__}")
    if rho_f <= 0 or not math.isfinite(rho_f):
        raise InvalidRadius(f"circle radius must be positive, got {rho!r}")
    if not isinstance(j_max, int) or j_max < 0:
        raise ValidationError(f"j_max must be an integer >= 0, got {j_max!r}")
    modes = []
    for j in range(j_max + 1):
        exact = Fraction(j * j) / (exact_rho * exact_rho) if exact_rho is not None else None
        mu = float(exact) if exact is not None else (j / rho_f) ** 2
        modes.append(Mode(mu, 1 if j == 0 else 2, exact, j))
    return SpectrumSpec(1, modes, 2.0 * math.pi * rho_f, "circle")


_TOP_KEYS = {"n", "volume", "modes"}
_MODE_KEYS = {"mu_sq", "mu_sq_exact", "m"}


def _parse_mode_entry(entry, idx: int) -> Mode:
    if not isinstance(entry, dict):
        raise ValidationError(f"modes[{idx}] must be an object")
    unknown = set(entry) - _MODE_KEYS
    if unknown:
        raise ValidationError(
            f"modes[{idx}] has unknown field(s): {', '.join(sorted(unknown))}")
    if "mu_sq" not in entry:
        raise ValidationError(f"modes[{idx}] is missing required field 'mu_sq'")
    if "m" not in entry:
        raise ValidationError(f"modes[{idx}] is missing required field 'm'")
    mu_sq = entry["mu_sq"]
    if isinstance(mu_sq, bool) or not isinstance(mu_sq, (int, float)):
        raise ValidationError(f"modes[{idx}].mu_sq must be a number")
    m = entry["m"]
    if isinstance(m, bool) or not isinstance(m, int):
        raise ValidationError(f"modes[{idx}].m must be an integer")
    exact = None
    if "mu_sq_exact" in entry:
        raw = entry["mu_sq_exact"]
        if not isinstance(raw, str):
            raise ValidationError(f"modes[{idx}].mu_sq_exact must be a string 'p/q'")
        try:
            exact = Fraction(raw)
        except (ValueError, ZeroDivisionError) as e:
            raise ValidationError(
                f"modes[{idx}].mu_sq_exact = {raw!r} is not a valid rational: {e}")
    try:
        return Mode(float(mu_sq), m, exact)
    except ValidationError as e:
        raise ValidationError(f"modes[{idx}]: {e}") from e


def _merge_duplicates(modes: list[Mode]) -> list[Mode]:
    merged: list[Mode] = []
    for mode in sorted(modes, key=lambda m: m.mu_sq):
        if merged and merged[-1].mu_sq == mode.mu_sq:
            prev = merged[-1]
            if (prev.mu_sq_exact is None) != (mode.mu_sq_exact is None) or (
                    prev.mu_sq_exact is not None
                    and prev.mu_sq_exact != mode.mu_sq_exact):
                raise ValidationError(
                    f"duplicate mu_sq = {mode.mu_sq} entries carry inconsistent "
                    f"exact forms")
            merged[-1] = Mode(prev.mu_sq, prev.multiplicity + mode.multiplicity,
                              prev.mu_sq_exact)
        else:
            merged.append(mode)
    return merged


def load_spectrum(source) -> SpectrumSpec:
    """Read a spectrum from a JSON file (path or open stream).

    Schema: {"n": int >= 1, "volume": number (optional),
             "modes": [{"mu_sq": number, "mu_sq_exact": "p/q" (optional),
                        "m": int >= 1}, ...]}
    Unknown fields are rejected; duplicate mu_sq entries are merged with
    multiplicities summed; modes come back sorted ascending.
    """
    if isinstance(source, (str, Path)):
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as e:
            raise ParseError(f"cannot read {source}: {e}") from e
    else:
        text = source.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(
            f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from e
    if not isinstance(data, dict):
        raise ValidationError("top-level value must be an object")
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise ValidationError(f"unknown top-level field(s): {', '.join(sorted(unknown))}")
    if "n" not in data:
        raise ValidationError("missing required field 'n'")
    n = data["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValidationError(f"'n' must be an integer >= 1, got {n!r}")
    volume = None
    if "volume" in data:
        volume = data["volume"]
        if isinstance(volume, bool) or not isinstance(volume, (int, float)) or volume <= 0:
            raise ValidationError(f"'volume' must be a positive number, got {volume!r}")
        volume = float(volume)
    if "modes" not in data:
        raise ValidationError("missing required field 'modes'")
    if not isinstance(data["modes"], list) or not data["modes"]:
        raise ValidationError("'modes' must be a non-empty array")
    modes = [_parse_mode_entry(e, i) for i, e in enumerate(data["modes"])]
    modes = _relabel(_merge_duplicates(modes))
    return SpectrumSpec(n, modes, volume, "file")


def spectrum_to_dict(spec: SpectrumSpec) -> dict:
    """Schema-shaped dict for a spectrum; load_spectrum round-trips it."""
    out: dict = {"n": spec.dimension_n, "modes": []}
    if spec.volume is not None:
        out["volume"] = spec.volume
    for m in spec.modes:
        entry: dict = {"mu_sq": m.mu_sq, "m": m.multiplicity}
        if m.mu_sq_exact is not None:
            entry["mu_sq_exact"] = (f"{m.mu_sq_exact.numerator}/"
                                    f"{m.mu_sq_exact.denominator}")
        out["modes"].append(entry)
    return out


def save_spectrum(spec: SpectrumSpec, target) -> None:
    text = json.dumps(spectrum_to_dict(spec), sort_keys=True, indent=1)
    if isinstance(target, (str, Path)):
        Path(target).write_text(text + "\n", encoding="utf-8")
    else:
        target.write(text + "\n")


def _rational_sqrt(q: Fraction) -> Fraction | None:
    # sqrt(q) as a Fraction when q is a perfect rational square, else None
    if q < 0:
        return None
    pn = math.isqrt(q.numerator)
    pd = math.isqrt(q.denominator)
    if pn * pn == q.numerator and pd * pd == q.denominator:
        return Fraction(pn, pd)
    return None


def is_generic(mode: Mode, n: int) -> GenericityVerdict:
    """Decide whether s = sqrt(((n-1)/2)^2 + mu^2) avoids 1/2 + Z.

    Modes with s in 1/2 + Z contribute no resonances.  With an exact mu_sq
    the test is exact: s in 1/2 + Z iff 4*(((n-1)/2)^2 + mu^2) is the square
    of an odd integer.  On floats the verdict is generic when s is farther
    than 1e-9 from the half-odd lattice and unknown_float when within it.
    """
    if not isinstance(n, int) or n < 1:
        raise InvalidDimension(f"n must be an integer >= 1, got {n!r}")
    if mode.mu_sq_exact is not None:
        q4 = 4 * (Fraction(n - 1, 2) ** 2 + mode.mu_sq_exact)
        if q4.denominator == 1:
            root = math.isqrt(q4.numerator)
            if root * root == q4.numerator and root % 2 == 1:
                return GenericityVerdict.NON_GENERIC
        return GenericityVerdict.GENERIC
    s = math.sqrt(((n - 1) / 2.0) ** 2 + mode.mu_sq)
    if abs(s - (math.floor(s) + 0.5)) <= 1e-9 or abs(s - (math.floor(s) - 0.5)) <= 1e-9:
        return GenericityVerdict.UNKNOWN_FLOAT
    return GenericityVerdict.GENERIC
