"""Exception types shared across the package."""


class FCError(Exception):
    pass


class ModelParseError(FCError):
    def __init__(self, message, line=None, column=None, field=None):
        self.line, self.column, self.field = line, column, field
        where = []
        if line is not None:
            where.append("line %d" % line)
        if column is not None:
            where.append("col %d" % column)
        if field is not None:
            where.append("field %r" % field)
        super().__init__("%s: %s" % (", ".join(where), message) if where else message)


class ValidationError(FCError):
    """Input data violates a structural axiom."""


class VerificationError(FCError):
    """An exact identity failed to hold."""


class ReconstructionError(FCError):
    """No exact value could be recovered from a numeric approximation."""


class PreconditionError(FCError):
    """An operation was called on input outside its domain."""


class BudgetExceeded(FCError):
    pass
