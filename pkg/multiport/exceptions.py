# -*- coding: utf-8 -*-


class MultiportError(Exception):

    def __init__(self, message='', **extra):
        super(MultiportError, self).__init__(message)
        self.message = message
        self.extra = extra

    def to_dict(self):
        """Structured form used by the command line error channel."""
        out = {
            'error': self.__class__.__name__,
            'message': self.message,
        }
        out.update(self.extra)
        return out


class ShapeMismatch(MultiportError):
    pass


class CutoffTooSmall(MultiportError):
    pass


class NormError(MultiportError):
    pass


class ZeroScatteringAmplitude(MultiportError):
    pass


class NotNormalizedScattering(MultiportError):
    pass


class BadBlockIndex(MultiportError):
    pass


class NotInvertible(MultiportError):
    pass


class IllConditionedGram(MultiportError):
    pass


class ZeroState(MultiportError):
    pass


class TooManyModes(MultiportError):
    pass


class TooLarge(MultiportError):
    pass


class NoConvergence(MultiportError):
    """Raised when no restart of a product-state search converges. Restarts
    that fail individually are only counted in
    ``ProductSearchResult.unconverged``.

    """


class IncomparableModes(MultiportError):
    pass


class VerificationFailed(MultiportError):

    def __init__(self, message='', report=None, **extra):
        super(VerificationFailed, self).__init__(message, **extra)
        self.report = report


class SchemaError(MultiportError):

    def __init__(self, message='', pointer='', **extra):
        super(SchemaError, self).__init__(message, pointer=pointer, **extra)
        self.pointer = pointer


class InvariantError(MultiportError):
    pass


class EmptySuperposition(InvariantError):
    pass


class DegenerateLeadingCoefficient(InvariantError):
    pass


class CoincidentCoherentAmplitudes(InvariantError):
    pass


class ZeroCatCoefficient(InvariantError):
    pass
