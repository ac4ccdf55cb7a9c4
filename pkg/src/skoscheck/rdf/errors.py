class RDFParseError(ValueError):
    """Base class for parse failures; carries a 1-based line and column."""

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class RDFSyntaxError(RDFParseError):
    pass


class UnsupportedFeature(RDFParseError):
    """The document uses a construct outside the supported Turtle subset."""
