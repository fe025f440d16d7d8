"""Characteristic quasi-polynomials of ideals of classical root systems."""

from .app_meta import APP_NAME, APP_VERSION

__all__ = ["APP_NAME", "APP_VERSION"]
