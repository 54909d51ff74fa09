"""Loading raw language data into normalized character streams.

Two input formats are supported: plain UTF-8 text, and tab-separated
``word<TAB>count`` frequency lists. Everything is brought to NFC, with the
byte-order mark, stray control characters, and orphan combining marks removed.
"""

from __future__ import annotations

import logging
import unicodedata
from dataclasses import dataclass
from pathlib import Path

log = logging.getLogger(__name__)

_KEEP_CONTROLS = frozenset("\n\t")


class CorpusFormatError(ValueError):
    """Input file is not in the expected format."""

    def __init__(self, message: str, *, path: str | None = None,
                 line: int | None = None, offset: int | None = None):
        super().__init__(message)
        self.path = path
        self.line = line
        self.offset = offset


@dataclass(frozen=True)
class CorpusDocument:
    source_id: str
    text: str
    weight: int = 1

    def __post_init__(self):
        if self.weight < 1:
            raise ValueError(f"document weight must be positive, got {self.weight}")


@dataclass(frozen=True)
class WordFrequencyEntry:
    word: str
    count: int


def normalize_text(text: str, source: str = "<text>") -> str:
    """Return *text* in NFC with BOM, controls and orphan marks removed."""
    if text.startswith("\ufeff"):
        text = text[1:]
    text = "".join(
        ch for ch in text
        if ch in _KEEP_CONTROLS or unicodedata.category(ch) != "Cc"
    )
    text = unicodedata.normalize("NFC", text)

    out: list[str] = []
    dropped = 0
    has_base = False
    for ch in text:
        if unicodedata.category(ch).startswith("M"):
            if not has_base:
                dropped += 1
                continue
        else:
            has_base = not ch.isspace()
        out.append(ch)
    if dropped:
        log.warning("%s: dropped %d orphan combining mark(s)", source, dropped)
    return "".join(out)


def _read_utf8(path: Path) -> str:
    data = path.read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise CorpusFormatError(
            f"{path}: invalid UTF-8 at byte offset {e.start}",
            path=str(path), offset=e.start,
        ) from None


def load_plain_text(path: str | Path, weight: int = 1,
                    source_id: str | None = None) -> CorpusDocument:
    path = Path(path)
    text = normalize_text(_read_utf8(path), str(path))
    return CorpusDocument(source_id or str(path), text, weight)


def load_word_frequency_list(path: str | Path) -> list[WordFrequencyEntry]:
    """Read a ``word<TAB>count`` list. Blank and ``#`` lines are skipped."""
    path = Path(path)
    text = _read_utf8(path)
    if text.startswith("\ufeff"):
        text = text[1:]

    entries = []
    for lineno, line in enumerate(text.split("\n"), start=1):
        line = line.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise CorpusFormatError(
                f"{path}:{lineno}: expected 'word<TAB>count'",
                path=str(path), line=lineno,
            )
        word = normalize_text(parts[0].strip(), f"{path}:{lineno}")
        try:
            count = int(parts[1].strip())
        except ValueError:
            raise CorpusFormatError(
                f"{path}:{lineno}: count {parts[1].strip()!r} is not an integer",
                path=str(path), line=lineno,
            ) from None
        if count < 1:
            raise CorpusFormatError(
                f"{path}:{lineno}: nonpositive count {count}",
                path=str(path), line=lineno,
            )
        if not word:
            raise CorpusFormatError(f"{path}:{lineno}: empty word",
                                    path=str(path), line=lineno)
        entries.append(WordFrequencyEntry(word, count))
    return entries
