class InputError(ValueError):
    """Malformed or out-of-contract input (CLI exit code 2)."""


class ResourceLimitError(RuntimeError):
    """An exact oracle was asked to exceed its configured size limit (exit code 3)."""


class ProtocolError(RuntimeError):
    """An online algorithm or adversary violated the interaction protocol (exit code 1)."""
