"""Error types. Each carries the short code used in reports and exit statuses."""


class ArrlabError(Exception):
    code = "ERROR"


class ParseError(ArrlabError):
    code = "PARSE_ERROR"


class NonReducedError(ArrlabError):
    code = "NON_REDUCED"


class ConstructionFailed(ArrlabError):
    code = "CONSTRUCTION_FAILED"


class NotEssentialError(ArrlabError):
    code = "NOT_ESSENTIAL"


class NotStabilizedError(ArrlabError):
    code = "NOT_STABILIZED"


class InternalError(ArrlabError):
    code = "INTERNAL_ERROR"


class MixedContextError(ArrlabError, ValueError):
    code = "MIXED_CONTEXT"
