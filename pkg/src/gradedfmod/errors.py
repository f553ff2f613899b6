class NotHomogeneousError(ValueError):
    """An element was required to be homogeneous but is not."""


class PrecisionError(ValueError):
    """A truncated homomorphism was evaluated beyond its known coefficients."""


class StructureError(ValueError):
    """Invalid structure-map parameter (e.g. a twist of nonzero degree)."""


class ParseError(ValueError):
    pass
