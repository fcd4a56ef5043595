"""Exception types raised across the package."""


class EnvalgError(Exception):
    pass


class DivisionByZero(EnvalgError, ZeroDivisionError):
    pass


class FieldMismatch(EnvalgError, ValueError):
    pass


class EquationSyntaxError(EnvalgError, SyntaxError):
    def __init__(self, message, text="", position=0):
        super().__init__(f"{message} at position {position}")
        self.text = text
        self.position = position


class EmptyEquation(EnvalgError, ValueError):
    pass


class UnboundVariable(EnvalgError, KeyError):
    def __str__(self):
        return f"unbound variable {self.args[0]!r}"


class RankMismatch(EnvalgError, ValueError):
    pass


class UnknownAlgebra(EnvalgError, ValueError):
    pass


class UnknownVariety(EnvalgError, ValueError):
    pass


class BadStructureFile(EnvalgError, ValueError):
    pass


class CapTooSmall(EnvalgError, ValueError):
    pass


class NotCertified(EnvalgError, RuntimeError):
    pass


class StateMismatch(EnvalgError, ValueError):
    pass
