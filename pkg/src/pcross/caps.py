"""Size caps bounding every enumeration in the library.

Defaults are tuned so the shipped instances complete in well under a minute.
All caps are overridable from the CLI (--cap-*) or an instance file's "caps"
object.
"""

from __future__ import annotations

from dataclasses import dataclass, replace, fields

from .errors import SizeCapExceeded


@dataclass(frozen=True)
class Caps:
    group_order: int = 64
    ring_size: int = 10_000
    unit_group: int = 4096
    cochain_enum: int = 50_000
    degree: int = 3
    graded_ring_size: int = 4096
    iso_search: int = 100_000
    bimodule_size: int = 81
    monoid_size: int = 32

    def check(self, what: str, size: int, cap_name: str) -> None:
        cap = getattr(self, cap_name)
        if size > cap:
            raise SizeCapExceeded(what, size, cap)

    def with_overrides(self, **kwargs) -> "Caps":
        known = {f.name for f in fields(self)}
        bad = set(kwargs) - known
        if bad:
            raise ValueError(f"unknown cap names: {sorted(bad)}")
        return replace(self, **kwargs)


DEFAULT_CAPS = Caps()
