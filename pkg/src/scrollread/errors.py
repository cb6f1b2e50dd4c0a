"""Exception types shared across the toolkit.

Everything raised for bad input data derives from DataError, so callers
(notably the CLI) can distinguish data problems from internal bugs.
"""


class DataError(Exception):
    """Base class for all input-data problems."""


class SessionFormatError(DataError):
    """A session record is malformed; message names the record and field."""


class EventOrderError(DataError):
    """Scroll events are not strictly increasing in time."""


class CorpusError(DataError):
    """Article corpus is missing files or malformed."""


class LexiconError(DataError):
    """AoA lexicon file is malformed."""


class DegenerateLayoutError(DataError):
    """Content fits in the viewport; engagement rule cannot apply."""


class InsufficientEventsError(DataError):
    """Too few scroll events to compute the requested measure."""


class TextTooShortError(DataError):
    """Text has too few tokens/sentences for the requested feature."""


class NoCoverageError(DataError):
    """No token of the text is present in the lexicon."""


class ConstantInputError(DataError):
    """Correlation undefined for constant input."""


class CohortTooSmallError(DataError):
    """Subgroup has too few sessions for the requested analysis."""


class FeatureSelectionError(DataError):
    """Feature matrix cannot be built for the requested selection."""


class SingleClassError(DataError):
    """Training data contains only one class."""
