"""
Errores del dominio. Cada clase lleva el código de salida que usan los
comandos de gestión (2 = entrada inválida, 3 = contexto no soportado).
"""

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_UNSUPPORTED = 3


class AutoenlaceError(Exception):
    """Base de todos los errores de la app"""
    exit_code = EXIT_INPUT_ERROR


# --- Entrada inválida ---

class UnknownGeneratorError(AutoenlaceError):
    pass


class ContextMismatchError(AutoenlaceError):
    pass


class WordSyntaxError(AutoenlaceError):
    pass


class ExponentOverflowError(AutoenlaceError):
    pass


class IdentityElementError(AutoenlaceError):
    pass


class NotInCentralizerError(AutoenlaceError):
    pass


class InvalidSeifertDataError(AutoenlaceError):
    pass


class InconsistentDescriptorError(AutoenlaceError):
    pass


class ManifestError(AutoenlaceError):

    def __init__(self, message, errors=None):
        super().__init__(message)
        self.errors = errors or {}


class UnknownSuiteError(AutoenlaceError):
    pass


class MoveNotApplicableError(AutoenlaceError):
    pass


class InvalidGaussCodeError(AutoenlaceError):

    def __init__(self, diagnostics):
        super().__init__('; '.join(diagnostics))
        self.diagnostics = list(diagnostics)


# --- Contexto no soportado ---

class UnsupportedContextError(AutoenlaceError):
    exit_code = EXIT_UNSUPPORTED


class ClosedSeifertError(UnsupportedContextError):
    pass


class TorsionElementError(UnsupportedContextError):
    pass


class NonUnimodularError(UnsupportedContextError):
    pass


class DecompositionError(UnsupportedContextError):
    pass
