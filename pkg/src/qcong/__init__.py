"""Exact verification of q-series congruences, series identities and p-adic supercongruences."""

__version__ = "0.1.0"

from .kernels import BACKEND  # noqa: E402

__all__ = ["__version__", "BACKEND"]
