"""Random layouts and character pools shared by property and acceptance tests."""

from __future__ import annotations

import random
import unicodedata

from latinkeys.layout import EMPTY, SPECIAL_KEYS, KeySlot, Layout, LayoutView
from latinkeys.unicode_base import LATIN_BLOCKS, block_letters


def _case_safe(ch: str) -> bool:
    up = ch.upper()
    return len(up) == 1 and (up == ch or up.lower() == ch)


# Lowercase Latin letters whose uppercase round-trips, so shift views never collide.
LETTER_POOL = sorted(
    set("abcdefghijklmnopqrstuvwxyz")
    | {ch for ch in block_letters(LATIN_BLOCKS)
       if unicodedata.category(ch) == "Ll" and _case_safe(ch) and ch not in "ıſ"}
)
# Comma is a legal key but never a long-press (it is the softkey splitter).
SYMBOL_POOL = list(".;:!?¿¡-'\"()[]&<>") + list("0123456789") + ["€", "₹"]


def random_layout(rng: random.Random, language_tag: str = "xx",
                  max_rows: int = 5, max_cols: int = 12) -> Layout:
    rows, cols = rng.randint(1, max_rows), rng.randint(1, max_cols)
    pool = LETTER_POOL + SYMBOL_POOL
    rng.shuffle(pool)
    used: set[str] = set()

    def take() -> str | None:
        while pool:
            ch = pool.pop()
            if ch not in used:
                used.add(ch)
                return ch
        return None

    grid = []
    for _ in range(rows):
        row = []
        for _ in range(cols):
            roll = rng.random()
            if roll < 0.15:
                row.append(EMPTY)
                continue
            if roll < 0.22:
                row.append(KeySlot.special(rng.choice(SPECIAL_KEYS)))
                continue
            ch = take() if rng.random() > 0.05 else ("," if "," not in used else None)
            if ch is None:
                row.append(EMPTY)
                continue
            used.add(ch)
            long_press = [lp for lp in (take() for _ in range(rng.randint(0, 4))) if lp]
            row.append(KeySlot.char(ch, long_press, punc=rng.random() < 0.05))
        grid.append(tuple(row))
    return Layout(language_tag, language_tag, LayoutView(tuple(grid)),
                  base_layout_name=rng.choice(["", "qwerty", "azerty", "nordic"]))
