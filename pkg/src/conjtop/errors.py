"""Exception hierarchy shared by all modules.

Two failure modes are kept apart on purpose: bad input data (malformed
files, contract violations, dimension mismatches) versus inputs that are
well formed but contradict a theorem the library enforces.  The CLI maps
them to exit codes 2 and 1 respectively.
"""


class InputError(ValueError):
    """Malformed or contract-violating input."""


class ModelIntegrityError(Exception):
    """Well-formed input that violates an enforced theorem.

    Such an input cannot arise from an actual real structure; the payload
    carries whatever numeric trace the check produced.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
