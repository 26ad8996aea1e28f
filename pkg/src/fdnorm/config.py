"""Size bounds for the exponential searches.

The bounds live in a context variable so that callers can tighten or relax
them for a block of code without threading a parameter through every call::

    with size_limits(keys=12):
        candidate_keys(attrs, fds)
"""

from __future__ import annotations

import contextlib
import contextvars
import dataclasses

from .errors import SizeLimitExceeded


@dataclasses.dataclass(frozen=True)
class Limits:
    keys: int = 20  # candidate key / determinant search width
    projection: int = 16  # FD projection onto a scope (2^n subsets)
    powerset_witness: int = 8  # full powerset of beta candidates for transitive witnesses


DEFAULT_LIMITS = Limits()

_current: contextvars.ContextVar[Limits] = contextvars.ContextVar("fdnorm_limits", default=DEFAULT_LIMITS)


def current_limits() -> Limits:
    return _current.get()


@contextlib.contextmanager
def size_limits(**overrides):
    token = _current.set(dataclasses.replace(_current.get(), **overrides))
    try:
        yield _current.get()
    finally:
        _current.reset(token)


def check_size(what: str, size: int, bound: int) -> None:
    if size > bound:
        raise SizeLimitExceeded(what, size, bound)
