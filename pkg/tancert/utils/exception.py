#!/usr/bin/env python
# Created by "Thieu" at 09:20, 02/09/2026 ----------%
#       Email: nguyenthieu2102@gmail.com            %
#       Github: https://github.com/thieu1995        %
# --------------------------------------------------%


class TancertError(Exception):
    """Base class for every error raised by tancert."""


class InputError(TancertError, ValueError):
    """Malformed input: wrong dimension, bad schema, unknown flag value."""


class ExprSyntaxError(InputError):
    """
    Syntax error inside a constraint expression.

    Args:
        message (str): What went wrong
        offset (int): Byte offset into the expression text
        text (str): The expression text
    """

    def __init__(self, message, offset=0, text=""):
        self.offset = offset
        self.text = text
        super().__init__(f"{message} at offset {offset}")


class PreconditionError(TancertError, ValueError):
    """An operation was called on a point or set violating its precondition."""


class InfeasibleError(PreconditionError):
    """The polyhedron (or constraint system) has no feasible point."""


class NumericalFailure(TancertError, ArithmeticError):
    """
    A numerical procedure did not produce a trustworthy value.

    Args:
        message (str): What went wrong
        sequence (list, optional): Raw values behind the failure (e.g. difference quotients)
    """

    def __init__(self, message, sequence=None):
        self.sequence = sequence
        super().__init__(message)


class EvalDomainError(NumericalFailure):
    """sqrt evaluated at a value below -tol_eval."""


class InconclusiveError(NumericalFailure):
    """Sampling or grid search found too little feasible data to decide."""
