"""Anti-learning datasets, from-scratch classifiers and a cross-validation
granularity harness. Everything lives in the compiled `_core` module."""

from antilearn._core import *  # noqa: F401,F403
from antilearn._core import __version__  # noqa: F401
