"""Registry of reasoning-method tags.

Method tags are free-form strings; callers may register their own. The
preloaded trio covers direct judgment and the two derivation styles used by
the worked examples.
"""

from __future__ import annotations

from typing import Iterable

from .errors import UnknownMethodError
from .similarity import DIRECT

BAYESIAN = "bayesian"
FIDUCIAL = "fiducial"

DEFAULT_METHODS: tuple[str, ...] = (DIRECT, BAYESIAN, FIDUCIAL)


def ensure_known_methods(
    methods: Iterable[str] | None, registry: Iterable[str] = DEFAULT_METHODS
) -> None:
    if methods is None:
        return
    known = set(registry)
    for m in methods:
        if m not in known:
            raise UnknownMethodError(
                f"method {m!r} is not registered", detail={"registered": sorted(known)}
            )
