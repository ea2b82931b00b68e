class PathpackError(Exception):
    def __init__(self, message, context=None):
        super().__init__(message, context or { })

        self.message = message
        self.context = context or { }


    def __str__(self):
        if not self.context:
            return self.message

        details = ', '.join(
            '{}={!r}'.format(key, value)
            for key, value in self.context.items()
        )

        return '{} ({})'.format(self.message, details)


class InvalidParameter(PathpackError, ValueError):
    pass


class InvalidOverlap(InvalidParameter):
    pass


class DisconnectedGraph(PathpackError):
    pass


class GraphValidationError(PathpackError, ValueError):
    pass


class GraphParseError(PathpackError, ValueError):
    def __init__(self, message, line_number, context=None):
        context = dict(context or { })
        context['line'] = line_number

        super().__init__(message, context)

        self.line_number = line_number


class NotATree(PathpackError):
    pass


class NotACaterpillar(PathpackError):
    pass


class NonCanonicalSpec(PathpackError, ValueError):
    pass


class MalformedPattern(PathpackError):
    pass


class IncompatiblePattern(PathpackError):
    pass


class UnsupportedSpec(PathpackError):
    pass


class InvalidColoring(PathpackError, ValueError):
    pass


class NotIntegral(PathpackError):
    pass


class IncompleteSolution(PathpackError):
    pass


class NodeLimitReached(PathpackError):
    pass
