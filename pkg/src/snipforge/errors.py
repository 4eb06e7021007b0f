class SnipforgeError(Exception):
    """Base class for errors raised by snipforge."""


class DuplicateDocumentError(SnipforgeError):
    pass


class EmptyQueryError(SnipforgeError):
    pass


class IndexFormatError(SnipforgeError):
    """Raised when a saved index cannot be loaded.

    ``section`` names the top-level part of the file that was at fault
    ("meta", "docs", "postings" or "file" when the JSON itself is broken).
    """

    def __init__(self, section: str, message: str):
        super().__init__(f"[{section}] {message}")
        self.section = section


class ConfigError(SnipforgeError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class OutputError(SnipforgeError):
    pass
