class QConfineError(Exception):
    pass


class ConfigError(QConfineError):

    def __init__(self, message, lineNumber=None, key=None):
        super().__init__(message)
        self.message = message
        self.lineNumber = lineNumber
        self.key = key

    @classmethod
    def forKey(cls, key, message):
        return cls(f"{key}: {message}", key=key)

    def __str__(self):
        if self.lineNumber is None:
            return self.message
        return f"line {self.lineNumber}: {self.message}"


class NumericalError(QConfineError):

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class VerificationError(QConfineError):
    pass
