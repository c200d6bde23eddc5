EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONFIGURATION = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


class IntuitionRLError(Exception):
    EXIT_CODE = EXIT_USAGE


class UsageError(IntuitionRLError):
    EXIT_CODE = EXIT_USAGE


class ConfigurationError(IntuitionRLError):
    EXIT_CODE = EXIT_CONFIGURATION


class NetParseError(ConfigurationError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = "line %(line)s, column %(column)s: %(message)s" % dict(
                line=line, column=column, message=message)
        ConfigurationError.__init__(self, message)


class NumericalFailureError(IntuitionRLError):
    EXIT_CODE = EXIT_NUMERICAL


class CheckpointError(IntuitionRLError):
    EXIT_CODE = EXIT_IO


def exitCodeFor(exception):
    if isinstance(exception, IntuitionRLError):
        return exception.EXIT_CODE
    if isinstance(exception, (IOError, OSError)):
        return EXIT_IO
    raise exception
