"""Exception types shared across the package."""


class IntentError(Exception):
    """Base class for all package errors."""


class LexiconError(IntentError, ValueError):
    pass


class MissingLexicon(LexiconError):
    def __init__(self, name):
        super().__init__(f"lexicon {name!r} not found")
        self.name = name


class EmptyLexicon(LexiconError):
    def __init__(self, name):
        super().__init__(f"lexicon {name!r} has no entries")
        self.name = name


class MalformedEntry(LexiconError):
    def __init__(self, file, line_no, text=""):
        super().__init__(f"{file}:{line_no}: malformed entry {text!r}")
        self.file = file
        self.line_no = line_no


class UnparseableUrl(IntentError, ValueError):
    def __init__(self, raw):
        super().__init__(f"cannot extract a host from {raw!r}")
        self.raw = raw


class BothEmpty(IntentError, ValueError):
    def __init__(self):
        super().__init__("Levenshtein ratio undefined for two empty strings")


class InsufficientData(IntentError, ValueError):
    pass


class MissingWeight(IntentError, KeyError):
    def __init__(self, lf_id):
        super().__init__(lf_id)
        self.lf_id = lf_id

    def __str__(self):
        return f"no fitted weight for labelling function {self.lf_id!r}"


class LengthMismatch(IntentError, ValueError):
    def __init__(self, n_a, n_b):
        super().__init__(f"inputs differ in length: {n_a} != {n_b}")


class EmptyInput(IntentError, ValueError):
    def __init__(self, what="input"):
        super().__init__(f"{what} is empty")


class UnknownLabel(IntentError, ValueError):
    def __init__(self, line_no, text):
        super().__init__(f"line {line_no}: unknown intent label {text!r}")
        self.line_no = line_no
        self.text = text


class MalformedRow(IntentError, ValueError):
    def __init__(self, line_no, reason):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no


class SinkFailure(IntentError, OSError):
    def __init__(self, n_written, cause):
        super().__init__(f"output failed after {n_written} records: {cause}")
        self.n_written = n_written
        self.cause = cause
