# Copyright (C) 2026 sobolev-extender contributors
# SPDX-License-Identifier: MIT

""" Exceptions raised by the constructions and checks """


class ExtenderError(Exception):
    """Base class for all errors raised by the package."""

    code = "extender_error"
    exit_status = 1


class ValidationError(ExtenderError):
    """Input outside the range where a construction is defined."""

    code = "validation_error"
    exit_status = 2


class InvalidParameter(ValidationError):
    code = "invalid_parameter"


class OutOfDomain(ValidationError):
    code = "out_of_domain"


class InvalidLetter(ValidationError):
    code = "invalid_letter"


class ParamMismatch(ValidationError):
    code = "param_mismatch"


class PreconditionViolated(ValidationError):
    code = "precondition_violated"


class ConfigError(ValidationError):
    code = "config_error"


class DegenerateInterval(ValidationError):
    code = "degenerate_interval"


class NegativeWeight(ValidationError):
    code = "negative_weight"


class DegenerateTriangle(ExtenderError):
    """Triangle with non-positive signed area."""

    code = "degenerate_triangle"


class DegenerateSource(DegenerateTriangle):
    """Source triangle too thin for a well defined affine map."""

    code = "degenerate_source"


class DivergentIntegral(ExtenderError):
    code = "divergent_integral"


class VerificationError(ExtenderError):
    code = "verification_failed"
    exit_status = 3


class InjectivityCheckFailed(VerificationError):
    """Central region map failed the numerical injectivity test."""

    code = "injectivity_check_failed"

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class PropertySuiteFailed(VerificationError):
    code = "property_suite_failed"

    def __init__(self, message, results=None):
        super().__init__(message)
        self.results = results or {}
