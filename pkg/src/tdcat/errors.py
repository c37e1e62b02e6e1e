"""Exception hierarchy shared by every module."""


class TdcatError(Exception):
    """Base class for all errors raised by tdcat."""


class InputError(TdcatError):
    """Malformed or invalid input (CLI exit code 3)."""


class ParseError(InputError):
    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"line {line}: "
        elif where:
            where += " "
        super().__init__(where + message)


class CategoryError(InputError):
    """A composition table that does not describe a category."""


class MissingComposite(CategoryError):
    pass


class CompositeTypeError(CategoryError):
    pass


class AssociativityViolation(CategoryError):
    def __init__(self, triple, message=None):
        self.triple = triple
        super().__init__(message or f"associativity fails for (h, g, f) = {triple}")


class IdentityViolation(CategoryError):
    pass


class FunctorError(InputError):
    pass


class PosetError(InputError):
    pass


class PresheafError(InputError):
    pass


class ProfunctorError(InputError):
    pass


class SizeGuardExceeded(InputError):
    def __init__(self, what, count, bound):
        self.what = what
        self.count = count
        self.bound = bound
        super().__init__(f"size guard exceeded: {what} = {count} > {bound}")


class NotALattice(TdcatError):
    def __init__(self, pair, missing):
        self.pair = pair
        self.missing = missing
        super().__init__(f"pair {pair!r} has no {missing}")


class NotJoinDense(TdcatError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"{element!r} is not the join of the generators below it")


class AdjunctionViolation(TdcatError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class NotFullyFaithful(TdcatError):
    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"functor is not fully faithful on objects {pair!r}")


class VerificationFailure(TdcatError):
    def __init__(self, message, sample=None, sizes=None):
        self.sample = sample
        self.sizes = sizes
        super().__init__(message)


class InterpolationFailure(TdcatError):
    pass


class NoRightAdjointOnSample(TdcatError):
    pass


class InternalInconsistency(TdcatError):
    pass
