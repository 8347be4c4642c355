"""Exception hierarchy.

Every error carries a short ``kind`` string that the CLI reports in its
structured error document.
"""


class LTForgeError(Exception):
    kind = "computation_error"


class InputError(LTForgeError, ValueError):
    kind = "invalid_input"


class NotPrime(InputError):
    kind = "not_prime"


class NotIrreducibleModP(InputError):
    kind = "not_irreducible_mod_p"


class NotEisenstein(InputError):
    kind = "not_eisenstein"


class DegreeCap(InputError):
    kind = "degree_cap"


class CapExceeded(InputError):
    kind = "cap_exceeded"


class FieldMismatch(InputError):
    kind = "field_mismatch"


class PrecisionExhausted(LTForgeError, ArithmeticError):
    kind = "precision_exhausted"


class ZeroResidue(InputError):
    kind = "zero_residue"


class NotInGlobalModel(InputError):
    kind = "not_in_global_model"


class WildRamificationNeedsOverride(InputError):
    kind = "wild_ramification_needs_override"


class NonzeroConstantTerm(InputError):
    kind = "nonzero_constant_term"


class NonUnitLinearTerm(InputError):
    kind = "non_unit_linear_term"


class NotInMaximalIdeal(InputError):
    kind = "not_in_maximal_ideal"


class NonIntegralCoefficients(InputError):
    kind = "non_integral_coefficients"


class BadLinearTerm(InputError):
    kind = "bad_linear_term"


class BadFrobeniusReduction(InputError):
    kind = "bad_frobenius_reduction"


class UniformizerMismatch(InputError):
    kind = "uniformizer_mismatch"


class NotPolynomialFrobenius(InputError):
    kind = "not_polynomial_frobenius"


class LevelTooLarge(InputError):
    kind = "level_too_large"


class ReducibleNeedsChoice(InputError):
    kind = "reducible_needs_choice"

    def __init__(self, factors):
        self.factors = factors
        super().__init__(
            "polynomial is reducible; choose one of the factors "
            + ", ".join(str(list(map(str, fac))) for fac in factors)
        )


class DegreeBlowup(InputError):
    kind = "degree_blowup"


class NotUniformizer(InputError):
    kind = "not_uniformizer"


class HodgeTateSumZero(InputError):
    """Raised by the weight condition when h = 0; that case has its own rule."""

    kind = "hodge_tate_sum_zero"


class ContextMismatch(InputError):
    kind = "context_mismatch"


class MissingH1Flag(InputError):
    kind = "missing_h1_flag"


class MissingConductorBound(InputError):
    kind = "missing_conductor_bound"


class NotBaseQp(InputError):
    kind = "not_base_qp"
