"""Keyboard layout model and its spreadsheet-friendly CSV codec.

Each keyboard row is stored as two CSV lines: ``press{i}`` carries
long-presses (space-separated, in frequency order) or a special key name,
``row{i}`` carries the visible character. Example::

    Visible layout,,,,,,,,,,
    press1,1,2,3,4,5,6,7,8,9,0
    row1,q,w,e,r,t,y,u,i,o,p
    ...
    press4,,,,Space,,,,"[punc]",Enter,
    row4,,",",,,,,,.,,

An optional ``Shift layout`` block with the same structure gives the shifted
view; without it the shifted view is derived by uppercasing.
"""

from __future__ import annotations

import csv
import enum
import io
import unicodedata
from dataclasses import dataclass, field, replace
from functools import lru_cache
from importlib import resources
from typing import Iterator

from latinkeys._unicode import simple_lower, simple_upper

SPECIAL_KEYS = ("Shift", "Del", "Space", "Enter")
PUNC_TOKEN = "[punc]"
VISIBLE_HEADER = "Visible layout"
SHIFT_HEADER = "Shift layout"

BUILTIN_LAYOUTS = ("qwerty", "qwerty_n_tilde", "azerty", "qwertz", "dvorak", "colemak")


class LayoutError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class SlotKind(enum.Enum):
    CHAR = "char"
    SPECIAL = "special"
    EMPTY = "empty"


@dataclass(frozen=True)
class KeySlot:
    kind: SlotKind = SlotKind.EMPTY
    value: str = ""
    long_press: tuple[str, ...] = ()
    # The period key carries the punctuation placeholder until synthesis fills it.
    punc: bool = False

    @classmethod
    def char(cls, ch: str, long_press=(), punc: bool = False) -> KeySlot:
        return cls(SlotKind.CHAR, ch, tuple(long_press), punc)

    @classmethod
    def special(cls, name: str) -> KeySlot:
        if name not in SPECIAL_KEYS:
            raise LayoutError(f"unknown special key {name!r}")
        return cls(SlotKind.SPECIAL, name)

    @property
    def is_char(self) -> bool:
        return self.kind is SlotKind.CHAR

    @property
    def is_empty(self) -> bool:
        return self.kind is SlotKind.EMPTY


EMPTY = KeySlot()


@dataclass(frozen=True)
class LayoutView:
    rows: tuple[tuple[KeySlot, ...], ...] = ()

    def __post_init__(self):
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise LayoutError(f"rows have unequal widths {sorted(widths)}")

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def slots(self) -> Iterator[tuple[int, int, KeySlot]]:
        for r, row in enumerate(self.rows):
            for c, slot in enumerate(row):
                yield r, c, slot

    def replace_slot(self, r: int, c: int, slot: KeySlot) -> LayoutView:
        rows = [list(row) for row in self.rows]
        rows[r][c] = slot
        return LayoutView(tuple(tuple(row) for row in rows))


@dataclass(frozen=True)
class Layout:
    name: str
    language_tag: str
    default_view: LayoutView
    shift_view: LayoutView = field(default=None)  # type: ignore[assignment]
    currency_symbol: str | None = None
    base_layout_name: str = ""

    def __post_init__(self):
        if self.shift_view is None:
            object.__setattr__(self, "shift_view", derive_shift_view(self.default_view))
        if self.default_view.shape != self.shift_view.shape:
            raise LayoutError(
                f"shift view shape {self.shift_view.shape} differs from "
                f"default view shape {self.default_view.shape}"
            )
        for r, c, slot in self.default_view.slots():
            shifted = self.shift_view.rows[r][c]
            if slot.is_char and (not shifted.is_char or shifted.value != simple_upper(slot.value)):
                raise LayoutError(
                    f"shift view slot ({r},{c}) is not the uppercase of {slot.value!r}"
                )

    def with_default_view(self, view: LayoutView) -> Layout:
        """Replace the default view and re-derive the shifted one."""
        return replace(self, default_view=view, shift_view=derive_shift_view(view))


def derive_shift_view(view: LayoutView) -> LayoutView:
    """Uppercase every character slot and long-press entry.

    A long-press whose uppercase form is already present in the view (``ı`` on
    the I key) keeps its original form instead of appearing twice.
    """
    seen = {slot.value for _, _, slot in view.slots() if slot.is_char}
    seen = {simple_upper(ch) for ch in seen}
    rows = []
    for row in view.rows:
        new_row = []
        for slot in row:
            if not slot.is_char:
                new_row.append(slot)
                continue
            long_press = []
            for ch in slot.long_press:
                up = simple_upper(ch)
                if up in seen:
                    if ch in seen:
                        continue
                    up = ch
                seen.add(up)
                long_press.append(up)
            new_row.append(replace(slot, value=simple_upper(slot.value),
                                   long_press=tuple(long_press)))
        rows.append(tuple(new_row))
    return LayoutView(tuple(rows))


def visible_characters(layout: Layout) -> set[str]:
    return {simple_lower(slot.value) for _, _, slot in layout.default_view.slots()
            if slot.is_char}


# --- CSV codec -------------------------------------------------------------


def _parse_cells(press: str, row: str, lineno: int, row_lineno: int) -> KeySlot:
    press = unicodedata.normalize("NFC", press)
    row = unicodedata.normalize("NFC", row)
    tokens = press.split()
    if len(row) > 1:
        raise LayoutError(f"key {row!r} is not a single character", row_lineno)

    if len(tokens) == 1 and tokens[0] in SPECIAL_KEYS:
        if row:
            raise LayoutError(f"special key {tokens[0]} over character {row!r}", lineno)
        return KeySlot.special(tokens[0])

    punc = False
    long_press: list[str] = []
    for tok in tokens:
        if tok == PUNC_TOKEN:
            punc = True
        elif tok in SPECIAL_KEYS:
            raise LayoutError(f"special key {tok} mixed with long-presses", lineno)
        elif len(tok) != 1:
            raise LayoutError(f"unknown special keyword {tok!r}", lineno)
        elif tok in long_press:
            raise LayoutError(f"duplicate long-press {tok!r}", lineno)
        else:
            long_press.append(tok)

    if not row:
        if tokens:
            raise LayoutError(f"long-press {press!r} attached to an empty key", lineno)
        return EMPTY
    return KeySlot.char(row, long_press, punc)


def _read_block(records: list[tuple[int, list[str]]], pos: int,
                width: int) -> tuple[LayoutView, int]:
    rows = []
    i = 1
    while pos < len(records):
        lineno, rec = records[pos]
        label = rec[0]
        if label in (VISIBLE_HEADER, SHIFT_HEADER):
            break
        if label != f"press{i}":
            if label.startswith("row"):
                raise LayoutError(f"{label} without preceding press{i}", lineno)
            raise LayoutError(f"expected press{i}, got {label!r}", lineno)
        if pos + 1 >= len(records) or records[pos + 1][1][0] != f"row{i}":
            raise LayoutError(f"press{i} without matching row{i}", lineno)
        row_lineno, row_rec = records[pos + 1]
        for ln, r in ((lineno, rec), (row_lineno, row_rec)):
            if len(r) - 1 != width:
                raise LayoutError(f"expected {width} keys, found {len(r) - 1}", ln)
        rows.append(tuple(_parse_cells(p, c, lineno, row_lineno)
                          for p, c in zip(rec[1:], row_rec[1:])))
        pos += 2
        i += 1
    return LayoutView(tuple(rows)), pos


def parse_csv(text: str, *, name: str = "", language_tag: str = "und",
              base_layout_name: str = "", currency_symbol: str | None = None) -> Layout:
    """Parse layout CSV text. Metadata not carried by the CSV is passed in."""
    if text.startswith("\ufeff"):
        text = text[1:]
    records = []
    reader = csv.reader(io.StringIO(text, newline=""), strict=True)
    try:
        for rec in reader:
            if rec and any(cell.strip() for cell in rec):
                records.append((reader.line_num, rec))
    except csv.Error as e:
        raise LayoutError(f"malformed CSV: {e}", reader.line_num) from None

    if not records or records[0][1][0] != VISIBLE_HEADER:
        raise LayoutError(f"first line must be '{VISIBLE_HEADER}'", records[0][0] if records else 1)
    width = len(records[0][1]) - 1
    default, pos = _read_block(records, 1, width)

    shift = None
    if pos < len(records):
        lineno, rec = records[pos]
        if rec[0] != SHIFT_HEADER:
            raise LayoutError(f"unexpected block {rec[0]!r}", lineno)
        if len(rec) - 1 != width:
            raise LayoutError(f"expected {width} keys, found {len(rec) - 1}", lineno)
        shift, pos = _read_block(records, pos + 1, width)
        if pos < len(records):
            raise LayoutError(f"unexpected block {records[pos][1][0]!r}", records[pos][0])
    return Layout(name, language_tag, default, shift, currency_symbol, base_layout_name)


def _quote(cell: str) -> str:
    if (any(c in cell for c in ',"\n\r') or cell != cell.strip()
            or PUNC_TOKEN in cell):
        return '"' + cell.replace('"', '""') + '"'
    return cell


def _press_cell(slot: KeySlot) -> str:
    if slot.kind is SlotKind.SPECIAL:
        return slot.value
    tokens = ([PUNC_TOKEN] if slot.punc else []) + list(slot.long_press)
    return " ".join(tokens)


def _block_lines(header: str, view: LayoutView, width: int) -> list[str]:
    lines = [",".join([header] + [""] * width)]
    for i, row in enumerate(view.rows, start=1):
        lines.append(",".join([f"press{i}"] + [_quote(_press_cell(s)) for s in row]))
        lines.append(",".join([f"row{i}"] + [_quote(s.value if s.is_char else "") for s in row]))
    return lines


def serialize_csv(layout: Layout) -> str:
    width = layout.default_view.shape[1]
    lines = _block_lines(VISIBLE_HEADER, layout.default_view, width)
    if layout.shift_view != derive_shift_view(layout.default_view):
        lines += _block_lines(SHIFT_HEADER, layout.shift_view, width)
    return "\n".join(lines) + "\n"


# --- built-in base layouts ---------------------------------------------------


@lru_cache(maxsize=None)
def builtin_base_layout(name: str) -> Layout:
    if name not in BUILTIN_LAYOUTS:
        raise LayoutError(
            f"unknown base layout {name!r}; choose from {', '.join(BUILTIN_LAYOUTS)}"
        )
    text = resources.files("latinkeys").joinpath(f"data/layouts/{name}.csv").read_text("utf-8")
    return parse_csv(text, name=name, base_layout_name=name)
