"""Exception hierarchy and resource caps shared across the package."""

from __future__ import annotations

from dataclasses import dataclass


class RankKernelError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(RankKernelError, ValueError):
    """Malformed graph, cover, instance, or CNF text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(RankKernelError, ValueError):
    """An operation was called with arguments violating its contract."""


class ResourceError(RankKernelError):
    """A configured size cap would be exceeded."""


@dataclass(frozen=True)
class Caps:
    """Size limits for exponential routines.

    ``max_vertices`` and ``max_budget`` bound the brute-force solver,
    ``max_coords`` bounds incidence-vector dimension and ``max_subset``
    bounds |D| in subset-mode rank checks.
    """

    max_vertices: int = 24
    max_budget: int = 5
    max_coords: int = 1 << 22
    max_subset: int = 20

    @classmethod
    def parse(cls, text: str) -> "Caps":
        """Parse ``"vertices=30,budget=4"`` style overrides."""
        names = {
            "vertices": "max_vertices",
            "budget": "max_budget",
            "coords": "max_coords",
            "subset": "max_subset",
        }
        kwargs = {}
        for item in filter(None, (s.strip() for s in text.split(","))):
            key, sep, value = item.partition("=")
            if not sep or key.strip() not in names:
                raise ValueError(f"bad cap specification {item!r}")
            kwargs[names[key.strip()]] = int(value)
        return cls(**kwargs)


DEFAULT_CAPS = Caps()
