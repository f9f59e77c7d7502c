"""Exception hierarchy; the CLI maps each class to one exit code."""


class BridgeError(Exception):
    pass


class UsageError(BridgeError):
    """Bad invocation: missing files or invalid configuration.  Exit 2."""


class SchemaError(BridgeError):
    """Input rows break a table contract (header, fields, labels).  Exit 3."""


class ModelLoadError(BridgeError):
    """The requested classifier cannot be constructed.  Exit 5."""
