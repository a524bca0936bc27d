"""Exception hierarchy.

Every error carries a short ``category`` string; the CLI prints it on stderr so
scripts can branch on the failure kind without parsing messages.
"""


class ExpertLOPError(Exception):
    category = "error"


class InputError(ExpertLOPError, ValueError):
    """Malformed or invariant-violating input."""

    category = "input"


class IdenticalLabelsError(InputError):
    category = "identical-labels"


class UnknownLabelError(InputError, KeyError):
    category = "unknown-label"

    def __str__(self):
        return Exception.__str__(self)


class UnknownStateError(InputError, KeyError):
    category = "unknown-state"

    def __str__(self):
        return Exception.__str__(self)


class MissingEdgeError(InputError, KeyError):
    category = "missing-edge"

    def __str__(self):
        return Exception.__str__(self)


class IncompleteGraphError(InputError):
    category = "incomplete-graph"


class InvalidTableError(InputError):
    category = "invalid-table"


class InvalidEpsilonError(InputError):
    category = "invalid-epsilon"


class SizeLimitError(ExpertLOPError):
    category = "size-limit"


class DegenerateStratumError(InputError, ZeroDivisionError):
    """A conditioning stratum has no mass after restriction."""

    category = "degenerate-stratum"


class ZeroPropensityError(DegenerateStratumError):
    category = "zero-propensity"


class DocumentError(InputError):
    """Problem in a serialized document, addressed by line or field path."""

    category = "document"

    def __init__(self, message, *, field=None, line=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(field)
        prefix = f"[{', '.join(where)}] " if where else ""
        super().__init__(prefix + message)
        self.field = field
        self.line = line


class SolverError(ExpertLOPError):
    category = "solver"
