"""Case-insensitive character tallies, partitioned by Unicode category."""

from __future__ import annotations

import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from latinkeys._unicode import (
    is_common_or_inherited,
    is_latin,
    simple_lower,
)
from latinkeys.corpus import CorpusDocument, WordFrequencyEntry

PUNCTUATION_CATEGORIES = frozenset({"Po", "Pi", "Pf", "Ps", "Pe", "Pd", "Pc"})


def _sorted_by_count(counts: Mapping[str, int]) -> list[tuple[str, int]]:
    return sorted(counts.items(), key=lambda kv: (-kv[1], ord(kv[0])))


@dataclass(frozen=True)
class CharacterTally:
    letter_counts: dict[str, int] = field(default_factory=dict)
    rejected_letters: dict[str, int] = field(default_factory=dict)
    punct_counts: dict[str, tuple[int, str]] = field(default_factory=dict)
    digit_counts: dict[str, int] = field(default_factory=dict)
    other_counts: dict[str, int] = field(default_factory=dict)

    @property
    def total_letters(self) -> int:
        return sum(self.letter_counts.values())

    @classmethod
    def from_counts(cls, counts: Mapping[str, int]) -> CharacterTally:
        """Partition raw per-character counts. Letters are lowercased first."""
        letters: Counter[str] = Counter()
        rejected: Counter[str] = Counter()
        punct: Counter[str] = Counter()
        digits: Counter[str] = Counter()
        other: Counter[str] = Counter()
        for ch, n in counts.items():
            if n <= 0 or ch.isspace():
                continue
            ch = simple_lower(ch)
            cat = unicodedata.category(ch)
            if cat.startswith("L"):
                if is_latin(ch):
                    letters[ch] += n
                elif is_common_or_inherited(ch):
                    other[ch] += n
                else:
                    rejected[ch] += n
            elif cat in PUNCTUATION_CATEGORIES:
                punct[ch] += n
            elif cat == "Nd":
                digits[ch] += n
            else:
                other[ch] += n
        return cls(
            dict(letters),
            dict(rejected),
            {ch: (n, unicodedata.category(ch)) for ch, n in punct.items()},
            dict(digits),
            dict(other),
        )

    def counts(self) -> Counter[str]:
        """Flatten all partitions back into one counter."""
        flat: Counter[str] = Counter()
        flat.update(self.letter_counts)
        flat.update(self.rejected_letters)
        flat.update({ch: n for ch, (n, _) in self.punct_counts.items()})
        flat.update(self.digit_counts)
        flat.update(self.other_counts)
        return flat

    def __add__(self, other: CharacterTally) -> CharacterTally:
        return CharacterTally.from_counts(self.counts() + other.counts())

    def scaled(self, factor: int) -> CharacterTally:
        return CharacterTally.from_counts(
            {ch: n * factor for ch, n in self.counts().items()}
        )


def tally(documents: Iterable[CorpusDocument] = (),
          wordlists: Iterable[Iterable[WordFrequencyEntry]] = ()) -> CharacterTally:
    """Count every non-whitespace character, case-insensitively.

    Document counts are multiplied by the document weight, word-list counts
    by the word's frequency.
    """
    counts: Counter[str] = Counter()
    for doc in documents:
        for ch, n in Counter(doc.text).items():
            counts[ch] += n * doc.weight
    for entries in wordlists:
        for entry in entries:
            for ch, n in Counter(entry.word).items():
                counts[ch] += n * entry.count
    return CharacterTally.from_counts(counts)


def latin_letters_by_frequency(t: CharacterTally,
                               min_count: int = 1) -> list[tuple[str, int]]:
    return [(ch, n) for ch, n in _sorted_by_count(t.letter_counts) if n >= min_count]


def punctuation_by_frequency(t: CharacterTally) -> list[str]:
    counts = {ch: n for ch, (n, cat) in t.punct_counts.items()
              if cat in PUNCTUATION_CATEGORIES}
    return [ch for ch, _ in _sorted_by_count(counts)]


def report_tsv(t: CharacterTally) -> str:
    """Render the tally as ``char<TAB>category<TAB>count`` lines.

    Rows are grouped by partition (Latin letters, rejected letters,
    punctuation, digits, other), each group in descending count order.
    """
    lines = ["char\tcategory\tcount"]
    lines += [f"{ch}\tlatin\t{n}" for ch, n in _sorted_by_count(t.letter_counts)]
    lines += [f"{ch}\tnon-latin\t{n}" for ch, n in _sorted_by_count(t.rejected_letters)]
    punct = {ch: n for ch, (n, _) in t.punct_counts.items()}
    lines += [f"{ch}\tpunct-{t.punct_counts[ch][1]}\t{n}"
              for ch, n in _sorted_by_count(punct)]
    lines += [f"{ch}\tdigit\t{n}" for ch, n in _sorted_by_count(t.digit_counts)]
    lines += [f"{ch}\tother\t{n}" for ch, n in _sorted_by_count(t.other_counts)]
    return "\n".join(lines) + "\n"
