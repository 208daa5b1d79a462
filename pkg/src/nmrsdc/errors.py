"""Exception types shared across the package."""


class NmrSdcError(Exception):
    """Base class for all errors raised by nmrsdc."""


class NotHermitianError(NmrSdcError, ValueError):
    def __init__(self, residual):
        self.residual = float(residual)
        super().__init__(f"matrix is not Hermitian (max |A - A^H| = {self.residual:.3e})")


class TraceNotOneError(NmrSdcError, ValueError):
    def __init__(self, residual):
        self.residual = float(residual)
        super().__init__(f"trace differs from 1 by {self.residual:.3e}")


class NotPositiveError(NmrSdcError, ValueError):
    def __init__(self, residual):
        self.residual = float(residual)
        super().__init__(f"matrix has a negative eigenvalue {self.residual:.3e}")


class NotUnitaryError(NmrSdcError, ValueError):
    def __init__(self, residual):
        self.residual = float(residual)
        super().__init__(f"matrix is not unitary (max |U U^H - I| = {self.residual:.3e})")


class OutOfRangeError(NmrSdcError, ValueError):
    pass


class NonPhysicalError(NmrSdcError, ValueError):
    pass


class TooLargeError(NmrSdcError, ValueError):
    pass


class ParameterFileError(NmrSdcError, ValueError):
    def __init__(self, path, lineno, message):
        self.path = str(path)
        self.lineno = lineno
        super().__init__(f"{self.path}:{lineno}: {message}")
