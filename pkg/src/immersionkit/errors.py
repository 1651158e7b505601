"""Exception types shared by every module.

The CLI maps these onto exit codes: ``PreconditionViolated`` -> 2,
``InternalAssertion`` -> 3.
"""

from __future__ import annotations


class ImmersionKitError(Exception):
    """Base class for errors raised by this package."""


class PreconditionViolated(ImmersionKitError, ValueError):
    """The caller supplied input outside an operation's domain."""


class InternalAssertion(ImmersionKitError, AssertionError):
    """A guaranteed combinatorial fact failed at runtime.

    Every check that raises this is backed by a proof, so seeing one means
    the implementation (not the input) is wrong.
    """


class SizeLimit(ImmersionKitError, ValueError):
    """An exhaustive routine was asked to run beyond its size guard."""


def require(cond: bool, msg: str) -> None:
    if not cond:
        raise PreconditionViolated(msg)


def ensure(cond: bool, msg: str) -> None:
    if not cond:
        raise InternalAssertion(msg)
