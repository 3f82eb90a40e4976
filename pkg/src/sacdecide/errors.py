"""Exception hierarchy shared by all modules."""


class ZeroDivisorSplit(ArithmeticError):
    """A coefficient is a zero divisor: the tower level must be split.

    ``origin`` is the internal level object that detected the zero divisor,
    ``level`` its 1-based height and ``factors`` the two monic coprime factors
    of that level's defining polynomial.
    """

    def __init__(self, level, factors, origin):
        super().__init__(f"zero divisor at tower level {level}")
        self.level = level
        self.factors = factors
        self.origin = origin


class NonInvertibleLead(ZeroDivisorSplit):
    """Leading coefficient of a divisor is a zero divisor of the coefficient ring."""


class ZeroPolynomialError(ValueError):
    pass


class ConstantPolynomialError(ValueError):
    pass


class SymbolicUnderdetermined(RuntimeError):
    """Every parameter value satisfies the divisibility system."""


class NotDivisible(ArithmeticError):
    pass


class InvalidInput(ValueError):
    pass


class ConstantComponent(InvalidInput):
    pass


class MalformedCertificate(ValueError):
    pass


class PolySyntaxError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ExponentOverflow(PolySyntaxError):
    pass
