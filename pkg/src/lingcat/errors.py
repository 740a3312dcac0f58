"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: parse errors 2, bounds 3, domain 4.
"""


class LingcatError(Exception):
    exit_code = 1


class ParseError(LingcatError, ValueError):
    exit_code = 2


class BoundsError(LingcatError):
    exit_code = 3


class DomainError(LingcatError, ValueError):
    exit_code = 4


class AlphabetError(DomainError):
    pass


class UnorderedDfaError(DomainError):
    pass


class FitError(DomainError):
    pass
