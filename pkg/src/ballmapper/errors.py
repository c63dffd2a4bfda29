"""Exception hierarchy shared across the workbench.

Every domain failure raises a subclass of :class:`BallMapperError` so the CLI
and HTTP layers can map them to exit code 1 / HTTP 422 uniformly.  Each class
carries a stable machine-readable ``code`` used on the wire.
"""


class BallMapperError(Exception):
    code = "error"


class UnknownColumnError(BallMapperError):
    code = "unknown_column"


class EmptyCloudError(BallMapperError):
    code = "empty_cloud"


class AttributeTypeError(BallMapperError):
    code = "non_numeric_attribute"


class ParameterError(BallMapperError):
    code = "bad_parameter"


class ConsistencyError(BallMapperError):
    code = "inconsistent_inputs"


class UnknownBallError(BallMapperError):
    code = "unknown_ball"


class IncompleteFunctionError(BallMapperError):
    code = "incomplete_row_function"


class DegenerateScaleError(BallMapperError):
    code = "degenerate_scale"


class SampleSizeError(BallMapperError):
    code = "sample_too_small"


class CollinearityError(BallMapperError):
    code = "collinear_regressors"

    def __init__(self, message: str, column: str | None = None):
        super().__init__(message)
        self.column = column
