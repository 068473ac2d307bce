"""Exception hierarchy.

Format problems derive from :class:`PgmError`; numerical degeneracies of the
enhancement procedure derive from :class:`EnhanceMathError`. The CLI maps the
two families to distinct exit codes.
"""


class HomEnhanceError(Exception):
    pass


class PgmError(HomEnhanceError, ValueError):
    pass


class BadMagic(PgmError):
    pass


class HeaderParse(PgmError):
    pass


class Truncated(PgmError):
    pass


class SampleOutOfRange(PgmError):
    pass


class MaxvalOutOfRange(PgmError):
    pass


class EnhanceMathError(HomEnhanceError, ArithmeticError):
    pass


class ConstantImage(EnhanceMathError):
    """Image has a single gray level, so min == max."""


class DegenerateNodes(EnhanceMathError):
    """Interpolation nodes are not strictly ordered by the minimum gap."""


class EmptyPartition(EnhanceMathError):
    pass


class GammaUndefined(EnhanceMathError):
    """No finite exponent passes the curve through both interior nodes."""


class Overflow(EnhanceMathError):
    pass
