"""mod-2 level-5 modular forms and their Hecke algebra."""

from ._core import *  # noqa: F401,F403

__all__ = [name for name in dir() if not name.startswith("_")]
