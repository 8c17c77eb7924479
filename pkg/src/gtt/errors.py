"""Exception hierarchy shared by every kernel module."""


class GttError(Exception):
    """Base class; ``span`` is filled in by the front end when known."""

    def __init__(self, message: str, span=None):
        super().__init__(message)
        self.span = span


class MalformedExpr(GttError):
    pass


class NotComposable(MalformedExpr):
    def __init__(self, left_source, right_target, span=None):
        super().__init__(
            "not composable: source %r of left factor vs target %r of right factor"
            % (left_source, right_target), span)
        self.left_source = left_source
        self.right_target = right_target


class DepthExceeded(GttError):
    pass


class IllTyped(GttError):
    def __init__(self, message: str, term=None, span=None):
        super().__init__(message, span)
        self.term = term


class TypeMismatch(IllTyped):
    pass


class NotABulletin(GttError):
    pass


class NotAPath(GttError):
    pass


class UnknownIndeterminate(GttError):
    pass


class NotClosedSource(GttError):
    pass


class TargetMismatch(GttError):
    pass


class ParseError(GttError):
    pass
