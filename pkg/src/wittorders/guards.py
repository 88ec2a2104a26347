"""Cost guards.

Every search or expansion whose size can blow up checks one of these
bounds.  Ceilings can be raised through the ``WITTORDERS_GUARD_OVERRIDE``
environment variable, e.g. ``max_candidates=10000000,max_rank=96``.
"""
import os
from dataclasses import dataclass, fields, replace

from .errors import CostGuardExceeded, SchemaError

ENV_VAR = "WITTORDERS_GUARD_OVERRIDE"


@dataclass(frozen=True)
class Guards:
    max_rank: int = 64
    max_candidates: int = 10**6
    max_monomials: int = 10**6
    unit_samples: int = 10**4

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise SchemaError(f"guard {f.name} must be positive")

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def check(self, name, value, what=""):
        bound = getattr(self, name)
        if value > bound:
            raise CostGuardExceeded(f"{what or name}: {value} exceeds {name}={bound}")


DEFAULT = Guards()


def _parse_override(text):
    out = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        key, _, val = item.partition("=")
        key = key.strip()
        if key not in Guards.__dataclass_fields__:
            raise SchemaError(f"unknown guard in {ENV_VAR}: {key!r}")
        try:
            out[key] = int(float(val))
        except ValueError:
            raise SchemaError(f"bad value for guard {key!r}: {val!r}") from None
    return out


def ceilings():
    """Guard ceilings: the defaults, raised or lowered by the environment."""
    text = os.environ.get(ENV_VAR, "")
    return replace(DEFAULT, **_parse_override(text)) if text else DEFAULT


def requested(**values):
    """Build a Guards from user requests, refusing anything above the ceiling."""
    top = ceilings()
    chosen = {}
    for key, val in values.items():
        if val is None:
            continue
        if val > getattr(top, key):
            raise SchemaError(f"requested {key}={val} exceeds ceiling {getattr(top, key)} (set {ENV_VAR})")
        chosen[key] = val
    return replace(top, **chosen)
