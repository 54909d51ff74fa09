"""Which base key should host an extended Latin letter as a long-press.

Canonical decomposition is tried first (``ó`` -> ``o`` + U+0301). Letters
without a decomposition onto a-z fall back to a shipped, editable table
(``æ`` -> ``a``); precomposed letters whose decomposition starts with such a
letter (``ǣ`` -> ``æ`` + U+0304) go through both steps.
"""

from __future__ import annotations

import enum
import unicodedata
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple

from latinkeys._unicode import is_latin, is_letter, simple_lower

LATIN_1_SUPPLEMENT = (0x0080, 0x00FF)
LATIN_EXTENDED_A = (0x0100, 0x017F)
LATIN_EXTENDED_B = (0x0180, 0x024F)
LATIN_BLOCKS = (LATIN_1_SUPPLEMENT, LATIN_EXTENDED_A, LATIN_EXTENDED_B)

_BASIC = frozenset("abcdefghijklmnopqrstuvwxyz")


class Provenance(str, enum.Enum):
    CANONICAL = "canonical-decomposition"
    FALLBACK = "fallback-table"


class UnattributableCharacter(LookupError):
    def __init__(self, character: str):
        name = unicodedata.name(character, "unnamed")
        super().__init__(f"no base key for {character!r} (U+{ord(character):04X} {name})")
        self.character = character


@dataclass(frozen=True)
class BaseKeyAttribution:
    character: str
    base: str
    provenance: Provenance
    marks: tuple[str, ...] = ()


class Census(NamedTuple):
    decomposable: int
    fallback: int
    uncovered: list[str]


def parse_fallback_table(text: str, source: str = "<table>") -> dict[str, str]:
    table = {}
    for lineno, line in enumerate(text.split("\n"), start=1):
        line = line.rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or len(parts[0]) != 1 or parts[1] not in _BASIC:
            raise ValueError(f"{source}:{lineno}: expected '<char><TAB><a-z>', got {line!r}")
        table[parts[0]] = parts[1]
    return table


def load_fallback_table(path: str | Path) -> dict[str, str]:
    path = Path(path)
    return parse_fallback_table(path.read_text(encoding="utf-8"), str(path))


@lru_cache(maxsize=1)
def default_fallback_table() -> Mapping[str, str]:
    text = resources.files("latinkeys").joinpath("data/fallback_bases.tsv").read_text("utf-8")
    return parse_fallback_table(text, "fallback_bases.tsv")


def canonical_base(character: str) -> BaseKeyAttribution | None:
    decomposed = unicodedata.normalize("NFD", character)
    lead = simple_lower(decomposed[0])
    if lead not in _BASIC:
        return None
    return BaseKeyAttribution(character, lead, Provenance.CANONICAL, tuple(decomposed[1:]))


def fallback_base(character: str, table: Mapping[str, str] | None = None) -> str | None:
    if table is None:
        table = default_fallback_table()
    return table.get(character) or table.get(simple_lower(character))


def base_key_for(character: str, table: Mapping[str, str] | None = None) -> BaseKeyAttribution:
    attribution = canonical_base(character)
    if attribution is not None:
        return attribution
    decomposed = unicodedata.normalize("NFD", character)
    base = fallback_base(decomposed[0], table)
    if base is None:
        raise UnattributableCharacter(character)
    return BaseKeyAttribution(character, base, Provenance.FALLBACK, tuple(decomposed[1:]))


def block_letters(blocks: Iterable[tuple[int, int]]) -> list[str]:
    """Latin-script letters in the given inclusive code point ranges."""
    letters = []
    for start, end in blocks:
        for cp in range(start, end + 1):
            ch = chr(cp)
            if is_letter(ch) and is_latin(ch):
                letters.append(ch)
    return letters


def decomposition_census(blocks: Iterable[tuple[int, int]] = LATIN_BLOCKS,
                         table: Mapping[str, str] | None = None) -> Census:
    """Classify each Latin letter in *blocks* by how base_key_for resolves it."""
    decomposable = fallback = 0
    uncovered = []
    for ch in block_letters(blocks):
        try:
            attribution = base_key_for(ch, table)
        except UnattributableCharacter:
            uncovered.append(ch)
            continue
        if attribution.provenance is Provenance.CANONICAL:
            decomposable += 1
        else:
            fallback += 1
    return Census(decomposable, fallback, uncovered)
