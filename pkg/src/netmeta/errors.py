"""Exception hierarchy shared by all netmeta modules."""


class NetmetaError(Exception):
    """Base class for every error raised by netmeta."""


class SelfLoop(NetmetaError, ValueError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"self-loop on node {node}")


class InvalidTimestamp(NetmetaError, ValueError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"timestamp {label!r} is not a YYYYMM month label")


class UnknownNode(NetmetaError, KeyError):
    def __init__(self, node):
        self.node = node
        super().__init__(node)

    def __str__(self):
        return f"node {self.node} is not in the snapshot"


class ParseError(NetmetaError, ValueError):
    def __init__(self, line, reason, source=None):
        self.line = line
        self.reason = reason
        self.source = source
        where = f"{source}:{line}" if source else f"line {line}"
        super().__init__(f"{where}: {reason}")


class OrderViolation(NetmetaError, ValueError):
    pass


class SeriesError(NetmetaError, ValueError):
    """A snapshot sequence breaks the ordering or window invariants."""


class CapExceeded(NetmetaError, ValueError):
    pass


class InsufficientPoints(NetmetaError, ValueError):
    pass


class TailTooSmall(NetmetaError, ValueError):
    pass


class EmptyGraph(NetmetaError, ValueError):
    pass


class EmptySnapshot(NetmetaError, ValueError):
    pass


class NeverSeen(NetmetaError, KeyError):
    def __init__(self, node):
        self.node = node
        super().__init__(node)

    def __str__(self):
        return f"node {self.node} appears in no snapshot"


class ManifestError(NetmetaError, ValueError):
    pass


class ConfigError(NetmetaError, ValueError):
    pass
