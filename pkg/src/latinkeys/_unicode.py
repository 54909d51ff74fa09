"""Small Unicode helpers shared across modules.

Python's ``unicodedata`` has no Script property, so script lookups go through
the ``regex`` package.
"""

from __future__ import annotations

import unicodedata
from functools import lru_cache

import regex

_LATIN = regex.compile(r"\p{Script=Latin}")
_COMMON_OR_INHERITED = regex.compile(r"[\p{Script=Common}\p{Script=Inherited}]")


@lru_cache(maxsize=4096)
def is_latin(ch: str) -> bool:
    return bool(_LATIN.match(ch))


@lru_cache(maxsize=4096)
def is_common_or_inherited(ch: str) -> bool:
    return bool(_COMMON_OR_INHERITED.match(ch))


def is_letter(ch: str) -> bool:
    return unicodedata.category(ch).startswith("L")


def simple_lower(ch: str) -> str:
    # Only U+0130 has a multi-scalar full lowercase; its simple mapping is "i".
    low = ch.lower()
    return low if len(low) == 1 else low[0]


def simple_upper(ch: str) -> str:
    # Keys hold exactly one scalar, so ß, ŉ, ǰ and friends stay as they are.
    up = ch.upper()
    return up if len(up) == 1 else ch


def lower_text(text: str) -> str:
    return "".join(simple_lower(ch) for ch in text)
