"""Typed exceptions shared across the package.

Numerical code here never returns inf/nan to signal trouble; every failure
mode has a named exception so callers (and the CLI exit-code map) can react
to the cause rather than parsing messages.
"""


class HyperconeError(Exception):
    """Base class for all package errors."""


# special functions

class PoleAtNonPositiveInteger(HyperconeError):
    """Gamma (or log-Gamma) evaluated exactly at 0, -1, -2, ..."""


class LowerParameterPole(HyperconeError):
    """2F1 lower parameter c is exactly a non-positive integer."""


class NoConvergence(HyperconeError):
    """A series failed to meet its stopping rule within max_terms."""


# cross-section spectra

class InvalidDimension(HyperconeError):
    """Cross-section dimension n must be an integer >= 1."""


class InvalidRadius(HyperconeError):
    """Circle radius must be positive."""


class ParseError(HyperconeError):
    """Spectrum file is not well-formed JSON."""


class ValidationError(HyperconeError):
    """Spectrum data violates the schema or an internal consistency rule."""


# resonance bookkeeping

class InconsistentParams(HyperconeError):
    """Hypergeometric parameters break the c = 2a or b = a + s constraints."""


class UndecidableMembership(HyperconeError):
    """A float is within threshold of the integer lattice and no exact form
    is available to decide membership honestly."""


class TruncationInsufficient(HyperconeError):
    """The enumerated resonance set cannot certify completeness up to the
    requested bound."""


# resolvent kernel

class DomainError(HyperconeError):
    """Argument outside the documented domain (e.g. sigma not in (0,1))."""


class ParameterPole(HyperconeError):
    """A closed-form expression is genuinely infinite at these parameters."""


class PoleEvaluation(HyperconeError):
    """apply_resolvent called at a genuine pole of the resolvent."""


class QuadratureFailure(HyperconeError):
    """Adaptive quadrature exhausted its subdivision budget."""


class ProbeInconclusive(HyperconeError):
    """Contour residue magnitude straddles the decision threshold."""
