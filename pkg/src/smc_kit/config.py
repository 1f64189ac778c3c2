"""Shared resource limits and error types."""

from __future__ import annotations

from dataclasses import dataclass


class SmcKitError(Exception):
    """Base class for all errors raised by this package."""


class InputError(SmcKitError):
    """Malformed user input: bad quiver, bad workspace document, bad names."""


class BoundExceeded(SmcKitError):
    """A configured resource bound (pd length, strip cap, path cap) was hit."""


class NotRigidError(SmcKitError):
    """Mutation requested at a non-rigid object without force."""


@dataclass(frozen=True)
class Limits:
    """Resource bounds; every knob here is surfaced as a CLI flag."""

    prime: int = 32003
    pd_bound: int = 32
    gldim_bound: int = 32
    strip_cap: int = 10_000
    path_cap: int = 4096
    iso_trials: int = 40
    certify: bool = False
    # enumeration budget for the certified isomorphism search over the
    # rationals; beyond this we fall back to random sampling
    certify_points: int = 20_000


DEFAULT_LIMITS = Limits()
