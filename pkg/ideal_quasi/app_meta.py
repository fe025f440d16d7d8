from __future__ import annotations


APP_NAME = "PyQuasi - Quasi-polynômes caractéristiques des idéaux"
APP_VERSION = "0.1.0"
