"""Covering array construction and asymptotic size bounds."""

from ecca._core import *  # noqa: F401,F403
