"""Exception hierarchy shared across the pipeline.

The CLI maps these onto exit codes: ConfigError -> 1, DataError -> 2,
NumericalError -> 3.
"""


class BuzzcastError(Exception):
    """Base class for all package errors."""


class ConfigError(BuzzcastError):
    """Bad usage or configuration (missing keys, unknown predictor sets...)."""


class DataError(BuzzcastError):
    """Input data violates a contract (bad files, empty categories...)."""


class CorpusQualityError(DataError):
    """Too many malformed records in a corpus to trust the rest."""


class NumericalError(BuzzcastError):
    """A numerical routine cannot produce a meaningful answer."""


class SingularDesignError(NumericalError):
    """Design matrix is rank deficient; names the offending columns."""

    def __init__(self, columns):
        self.columns = tuple(columns)
        super().__init__(
            "singular design matrix: column(s) %s are linearly dependent"
            % ", ".join(repr(c) for c in self.columns)
        )
