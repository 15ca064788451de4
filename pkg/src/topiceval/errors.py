"""Exception hierarchy for topiceval.

``TopicEvalError`` is the common base; the CLI maps it (and plain I/O
failures) to exit code 2, anything unexpected to exit code 3.
"""


class TopicEvalError(Exception):
    """Base class for all domain errors raised by this package."""


# --- corpus / preprocessing ---------------------------------------------


class EmptyCorpus(TopicEvalError):
    pass


class UnreadableInput(TopicEvalError):
    pass


class UnknownFormat(TopicEvalError):
    pass


# --- co-occurrence statistics --------------------------------------------


class EmptyWordSet(TopicEvalError):
    pass


class UnknownWord(TopicEvalError):
    pass


# --- coherence ------------------------------------------------------------


class TopicTooSmall(TopicEvalError):
    pass


class WordNotInCorpus(TopicEvalError):
    pass


class ZeroVector(TopicEvalError):
    pass


class EmptyScores(TopicEvalError):
    pass


# --- divergence -----------------------------------------------------------


class InfiniteDivergence(TopicEvalError):
    pass


class TooFewTopics(TopicEvalError):
    pass


# --- models ----------------------------------------------------------------


class NegativeInput(TopicEvalError):
    pass


# --- embeddings / pipeline --------------------------------------------------


class BadMagic(TopicEvalError):
    pass


class TruncatedFile(TopicEvalError):
    pass


class ChecksumMismatch(TopicEvalError):
    pass


class NonFiniteValue(TopicEvalError):
    pass


class EmptyEmbeddings(TopicEvalError):
    pass


class TooFewPoints(TopicEvalError):
    pass


class NoClusters(TopicEvalError):
    pass


class MisalignedInputs(TopicEvalError):
    pass


# --- reporting ---------------------------------------------------------------


class EmptyRecords(TopicEvalError):
    pass


class DegenerateCovariance(UserWarning):
    """Warning: requested projection dimension exceeds the data rank."""
