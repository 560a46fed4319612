"""Decoders addressable by name."""
from __future__ import annotations

from .base import Decoder, WidthMismatch, fresh_ids, make_context, run, static_contexts
from .shatter import Shatter
from .simple import AcceptAll, DegreeOne, EvenCycle, Revealing
from .watermelon import Watermelon

_FACTORIES = {
    "revealing": Revealing,
    "deg1": DegreeOne,
    "deg1-loose": lambda: DegreeOne(common_beta=False),
    "cycle": EvenCycle,
    "shatter": Shatter,
    "watermelon": Watermelon,
    "accept-all": AcceptAll,
}

NAMES = tuple(_FACTORIES)
PROTOCOLS = ("revealing", "deg1", "cycle", "shatter", "watermelon")

# the class each protocol is complete for
DEFAULT_CLASS = {
    "revealing": "bipartite",
    "deg1": "min-degree-one",
    "deg1-loose": "min-degree-one",
    "cycle": "even-cycle",
    "shatter": "shatter-point",
    "watermelon": "watermelon",
    "accept-all": "all-connected",
}


def get_decoder(name: str) -> Decoder:
    try:
        return _FACTORIES[name]()
    except KeyError:
        raise ValueError(f"unknown decoder {name!r}; choose from {', '.join(NAMES)}") from None


__all__ = ["Decoder", "WidthMismatch", "run", "get_decoder", "NAMES", "PROTOCOLS", "DEFAULT_CLASS",
           "fresh_ids", "make_context", "static_contexts", "Revealing", "DegreeOne", "EvenCycle",
           "Shatter", "Watermelon", "AcceptAll"]
