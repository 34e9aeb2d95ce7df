"""Exception hierarchy.

Three families matter to callers:

* ``InputError`` -- the input is structurally malformed (bad JSON shape,
  wrong coefficient count, certificate that violates its own schema).
  The CLI maps these to exit code 1.
* ``DomainError`` -- the input is well-formed but the requested object
  does not exist or the operation does not apply (field is not CM,
  curve is singular, B < 2, ...).  CLI exit code 2.
* ``CertificationViolation`` is not an exception: verdicts are reported
  in-band.  The CLI exits 3 when a report contains a violation.
"""


class CmboundError(Exception):
    """Base class for all package errors."""


class InputError(CmboundError):
    """Structurally malformed input."""


class MalformedCertificateError(InputError):
    """Quaternion embedding certificate violates its own shape constraints."""


class DomainError(CmboundError):
    """Well-formed input for which the requested object does not exist."""


class DegenerateInputError(DomainError):
    """Operation undefined for this input (e.g. discriminant of a constant)."""


class NotIrreducibleError(DomainError):
    """Defining polynomial of a number field must be irreducible."""


class NotCMError(DomainError):
    """Field has a real embedding or no complex-conjugation automorphism."""


class UnsupportedDegreeError(DomainError):
    """Operation restricted to sextic (or quadratic) CM fields."""


class NotAnOrderError(DomainError):
    """Lattice basis is not multiplicatively closed or does not contain 1."""


class NotAGeneratorError(DomainError):
    """Element does not generate the field."""


class InvalidBError(DomainError):
    """B must be an integer >= 2."""


class SingularCurveError(DomainError):
    """Curve discriminant vanishes."""


class InvalidInvariantsError(DomainError):
    """Invariant vector matches no normal-form case."""


class AmbiguousReconstructionError(DomainError):
    """Not enough digits to pin down a unique rational below the bound."""


class PrecisionExhaustedError(CmboundError):
    """Certified refinement failed to separate roots at the precision cap.

    Retry with a larger ``precision_bits``; reaching this on an
    irreducible polynomial indicates an internal bug.
    """
