""" Definition of custom exceptions"""


class TsaBadUserInput(Exception):
    """bad user input"""


class TsaInternalError(Exception):
    """should never have reached this position in the code"""


class TsaBadInputShape(Exception):
    """catching bad input shapes"""


class TsaMissingInput(Exception):
    """catching missing user inputs"""


class CaseParseError(Exception):
    """malformed line in a case file"""

    def __init__(self, msg, line_number=None):
        if line_number is not None:
            msg = f"line {line_number}: {msg}"
        super().__init__(msg)
        self.line_number = line_number


class CaseValidationError(Exception):
    """case parsed but violates a network invariant"""


class SingularJacobianError(Exception):
    """power-flow Jacobian cannot be factorized"""


class SingularNetworkError(Exception):
    """network admittance block cannot be inverted"""


class GenerationFailure(Exception):
    """too many scenarios failed during dataset generation"""

    def __init__(self, n_failed, n_total, limit=0.2):
        super().__init__(
            f"{n_failed} of {n_total} scenarios failed, more than the tolerated "
            f"{limit:.0%}"
        )
        self.n_failed = n_failed
        self.n_total = n_total
        self.limit = limit


class DatasetFormatError(Exception):
    """malformed dataset file"""

    def __init__(self, msg, row=None):
        if row is not None:
            msg = f"row {row}: {msg}"
        super().__init__(msg)
        self.row = row


class ModelFormatError(Exception):
    """model file cannot be loaded"""


class ModelVersionError(ModelFormatError):
    """model file written by an unsupported format version"""


class ModelTruncatedError(ModelFormatError):
    """model file incomplete or not parseable"""


class ModelChecksumError(ModelFormatError):
    """model file content does not match its checksum"""


class OperatingPointError(Exception):
    """no admissible operating point within the redraw budget"""


class TsaUsageError(Exception):
    """invalid command line or run configuration"""
