from __future__ import annotations

from typing import Any


# Class: QuasiError - Erreur de base de la bibliothèque.
class QuasiError(Exception):
    """Base class for every error raised by ideal_quasi."""


# Class: RankRangeError - Rang hors de la plage valide du type.
class RankRangeError(QuasiError, ValueError):
    """Raised when a rank is outside the validity range of a root system type."""


# Class: DomainError - Précondition mathématique non satisfaite.
class DomainError(QuasiError, ValueError):
    """Raised when an operation receives data outside its mathematical domain."""


class UnsupportedTypeError(DomainError):
    """Raised when an operation has no convention for the given root system type."""


# Class: CapacityError - Budget de calcul dépassé.
class CapacityError(QuasiError):
    """Raised when a work estimate exceeds the configured budget."""

    def __init__(self, message: str, *, estimate: int = 0, budget: int = 0) -> None:
        super().__init__(message)
        self.estimate = estimate
        self.budget = budget


class PeriodExhaustedError(QuasiError):
    """Raised when no candidate period reproduces the oracle counts."""


class DispatchError(QuasiError):
    """Raised when a closed form is called outside the case it covers."""


# Class: TypeACase - Signal de réduction: l'idéal ne contient aucune racine somme.
class TypeACase(QuasiError):
    """Signals that an ideal falls in the plus-root-free case; use the product over DP."""

    def __init__(self, message: str, *, sign_flip: bool = False) -> None:
        super().__init__(message)
        self.sign_flip = sign_flip


# Class: ParityError - Demi-somme impossible (coefficients impairs).
class ParityError(QuasiError, ArithmeticError):
    """Raised when a half-sum formula meets a summand total that is not divisible by 2."""

    def __init__(self, message: str, *, summands: tuple[Any, ...] = ()) -> None:
        super().__init__(message)
        self.summands = summands


# Class: MismatchError - Désaccord entre formule fermée et oracle.
class MismatchError(QuasiError):
    """Raised when two independent computations of the same quantity disagree."""


class IdealSpecError(QuasiError, ValueError):
    """Raised when an ideal or root literal cannot be parsed."""
