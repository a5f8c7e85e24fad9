"""Exception types raised by the effectkit modules.

Everything derives from EffectKitError so callers can catch the whole
family at once.  Validation failures on *inputs* (shape, hermiticity,
spectrum, parameter ranges) are distinct from failures of *mathematical
checks* (order violations, quotient breakdowns, fit rejections); the CLI
maps the former to exit code 2 and the latter to exit code 1.
"""


class EffectKitError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(EffectKitError):
    """Matrix or vector has the wrong shape, or dimensions disagree."""


class HermiticityViolation(EffectKitError):
    """Matrix is not Hermitian within tolerance."""


class NotPositiveSemidefinite(EffectKitError):
    """Matrix has an eigenvalue below the PSD tolerance."""


class SpectrumOutOfRange(EffectKitError):
    """Hermitian matrix has spectrum outside [0, 1] beyond tolerance."""


class RankError(EffectKitError):
    """Operand does not have the rank required by the operation."""


class OrderViolation(EffectKitError):
    """Required Loewner ordering between operands does not hold."""


class OrthogonalityError(EffectKitError):
    """Operands required to be orthogonal are not."""


class SpanError(EffectKitError):
    """Vector lies outside the required subspace."""


class DegenerateRanges(EffectKitError):
    """Rank-one operands have coinciding ranges where distinct ones are needed."""


class QuotientFailure(EffectKitError):
    """Sequential quotient could not be formed within tolerance."""


class DomainError(EffectKitError):
    """Scalar argument lies outside the domain of the function."""


class ParamError(EffectKitError):
    """Parameter outside its admissible range."""


class FitError(EffectKitError):
    """Regression input is unusable or the fitted parameters are invalid."""


class NotScalarAction(EffectKitError):
    """Map does not act as a scalar on the tested ray."""


class NotInFamily(EffectKitError):
    """Black-box map is inconsistent with the fractional order automorphism family."""


class UnitarityViolation(EffectKitError):
    """Matrix expected to be unitary is not, within tolerance."""
