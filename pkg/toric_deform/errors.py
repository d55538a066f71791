"""Gerarchia delle eccezioni; ogni classe porta il codice di uscita della CLI."""

from __future__ import annotations

from .constants import EXIT_GUARD, EXIT_INPUT


class ToricError(Exception):
    exit_code = EXIT_INPUT


class InputError(ToricError, ValueError):
    """Dati in ingresso che violano un invariante del dominio."""


class DimensionMismatchError(InputError):
    pass


class EmptyConeError(InputError):
    pass


class NotAPolygonError(InputError):
    pass


class NotSimplicialError(InputError):
    pass


class NotGorensteinError(InputError):
    pass


class NotGorensteinHomogeneousError(InputError):
    pass


class NotFibreCompatibleError(InputError):
    pass


class NotACircuitError(InputError):
    pass


class NoPositiveRelationError(InputError):
    pass


class GuardExceededError(ToricError):
    """Superato un limite di calcolo configurato (vedi limits.py)."""

    exit_code = EXIT_GUARD


class SearchExhaustedError(GuardExceededError):
    pass
