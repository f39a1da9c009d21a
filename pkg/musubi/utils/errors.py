from typing import Optional

from pydantic import BaseModel


class MusubiError(Exception):
    """Base class for every error raised by musubi.

    Subclasses carry a default ``detail`` so callers can raise them bare.
    """

    detail: str = "Computation failed"
    exit_code: int = 2

    def __init__(self, detail: Optional[str] = None):
        if detail is not None:
            self.detail = detail
        super().__init__(self.detail)


class IncompatibleAlgebraError(MusubiError):
    detail = "Operands belong to different quaternion algebras"


class NonUnitError(MusubiError):
    detail = "Quaternion is not a unit"


class UnsupportedAlgebraError(MusubiError):
    detail = "Operation is not available for this quaternion algebra"


class DegenerateAxisError(MusubiError):
    detail = "Axis direction is null; the shift is undefined"


class PureTranslationError(MusubiError):
    detail = "Element is a pure translation and has no axis"


class IdentityClassError(MusubiError):
    detail = "Linear part is the identity"


class OffVarietyError(MusubiError):
    detail = "Point does not lie on the representation variety"


class NoAffineDeformationError(MusubiError):
    detail = "No affine deformation exists at this parameter"


class TrivialDeformationError(MusubiError):
    detail = "Affine deformation is trivial (s = 0) at this parameter"


class NotHyperbolicError(MusubiError):
    detail = "Linear part is not hyperbolic"


class EigenvalueCollisionError(NotHyperbolicError):
    detail = "Eigenvalues are not separated within tolerance"


class UnsupportedCaseError(MusubiError):
    detail = "Operation is not defined for this case"


class WordSyntaxError(MusubiError):
    detail = "Malformed group word"


class VerificationFailure(MusubiError):
    detail = "Verification failed"
    exit_code = 1

    def __init__(self, detail: Optional[str] = None, *, fact: Optional[str] = None):
        self.fact = fact
        super().__init__(detail)


class ErrorMessage(BaseModel, frozen=True):
    result: str = "error"
    kind: str
    detail: str

    @classmethod
    def from_exception(cls, exc: MusubiError) -> "ErrorMessage":
        return cls(kind=type(exc).__name__, detail=exc.detail)
