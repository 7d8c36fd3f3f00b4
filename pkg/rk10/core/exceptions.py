class Rk10Exception(Exception):
    @property
    def msg(self):
        return self.args[0]

    @msg.setter
    def msg(self, msg):
        self.args = (msg,) + self.args[1:]


class Rk10Error(Rk10Exception):
    pass


class Rk10UsageError(Rk10Error):
    pass


class Rk10FormatError(Rk10Error):
    """Raised when a tableau file, number or field literal cannot be parsed"""

    def __init__(self, msg, line=None):
        if line is not None:
            msg = f"{msg} (line {line})"
        super().__init__(msg)
        self.line = line


class Rk10FieldError(Rk10Error):
    pass


class Rk10DivisionByZeroError(Rk10FieldError, ZeroDivisionError):
    pass


class NamedRk10Error(Rk10Error):
    def __init__(self, name, msg):
        super(NamedRk10Error, self).__init__(msg)
        self.name = name


class Rk10SingularSystemError(NamedRk10Error):
    "A linear system met during a solve has no unique solution"


class Rk10ConstructionError(NamedRk10Error):
    pass


class Rk10VerificationError(Rk10ConstructionError):
    """Raised when a freshly constructed tableau fails its own exact order check,
    which can only happen through a bug in the construction"""


class Rk10DualityError(Rk10Error):
    pass


class Rk10ConvergenceError(Rk10Error):
    def __init__(self, msg, residual=None):
        super().__init__(msg)
        self.residual = residual


class Rk10StepError(Rk10Error):
    pass
