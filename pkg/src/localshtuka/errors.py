"""Exception types; each carries a short machine-readable ``code``."""


class ShtukaError(Exception):
    code = "error"


class PrecisionError(ShtukaError, ArithmeticError):
    """A result would depend on coefficients beyond the known horizon."""
    code = "precision"

    def __init__(self, message="insufficient precision"):
        super().__init__(message)


class NotInvertibleError(ShtukaError, ZeroDivisionError):
    code = "not-invertible"

    def __init__(self, message="not invertible at this precision"):
        super().__init__(message)


class BudgetExceededError(ShtukaError):
    code = "budget"


class NotEtaleError(ShtukaError, ValueError):
    code = "not-etale"

    def __init__(self, message="not étale"):
        super().__init__(message)


class NotQuasiIsogenyError(ShtukaError, ValueError):
    code = "not-quasi-isogeny"


class NeronModelError(ShtukaError, ValueError):
    code = "not-in-neron-model"

    def __init__(self, message="not in the Néron model"):
        super().__init__(message)


class CharacteristicError(ShtukaError, ValueError):
    code = "characteristic"
