class PQConductorError(Exception):
    pass


class InvalidInputError(PQConductorError, ValueError):
    pass


class UnsupportedPrimeError(InvalidInputError):
    pass


class IncompleteFactorizationError(PQConductorError, ArithmeticError):
    def __init__(self, value: int, found: dict, cofactor: int):
        self.value = value
        self.found = found
        self.cofactor = cofactor
        super().__init__(
            f"could not split cofactor {cofactor} of {value} within the effort budget"
        )


class CrossCheckError(PQConductorError, ArithmeticError):
    pass
