"""Numerical toolkit for N-sequential conclusive discrimination of quantum
states: Helstrom-optimal receiver chains, quantum instruments and their
indirect-measurement realizations, and the optimal two-receiver protocols
under depolarizing noise."""

from ._core import *  # noqa: F401,F403

__version__ = "0.1.0"
