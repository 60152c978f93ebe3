"""Exception types shared across the toolchain."""


class SvgxError(Exception):
    """Base class for all toolchain errors."""


class MalformedXml(SvgxError):
    pass


class NoRootSvg(SvgxError):
    pass


class NoCanvasSize(SvgxError):
    pass


class BadPathData(SvgxError):
    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class DanglingReference(SvgxError):
    pass


class UnsupportedNode(SvgxError):
    pass


class EmptySequence(SvgxError):
    pass


class MissingField(SvgxError):
    pass


class GroupMismatch(SvgxError):
    pass


class InsufficientSamples(SvgxError):
    pass


class IdOutOfRange(SvgxError):
    pass


class WrongCount(SvgxError):
    pass


class RendererFailed(SvgxError):
    def __init__(self, message, diagnostic=""):
        super().__init__(message)
        self.diagnostic = diagnostic
