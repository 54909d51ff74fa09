"""From a character tally to a finished layout.

The pipeline keeps a familiar base layout and only adds long-presses:

1. pick a base layout (explicit choice, else QWERTY-with-ñ when ñ is common);
2. collect the tallied Latin letters the base layout does not show;
3. hang each one on the key of its base letter, most frequent first;
4. put the corpus punctuation (and a currency symbol) on the period key;
5. derive the shifted view.

Problems that should not abort a run (a letter with no base key, an
overcrowded key) are collected in a :class:`SynthesisReport`.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from latinkeys.charstats import (
    CharacterTally,
    latin_letters_by_frequency,
    punctuation_by_frequency,
)
from latinkeys.config import SynthesisConfig
from latinkeys.layout import (
    Layout,
    builtin_base_layout,
    visible_characters,
)
from latinkeys._unicode import simple_lower
from latinkeys.unicode_base import UnattributableCharacter, base_key_for


class SynthesisError(ValueError):
    pass


@dataclass
class SynthesisReport:
    base_layout_chosen: str = ""
    discarded_non_latin: list[tuple[str, int]] = field(default_factory=list)
    unplaceable: list[tuple[str, int, str]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    placements: list[tuple[str, str, str]] = field(default_factory=list)


def choose_base_layout(tally: CharacterTally, config: SynthesisConfig) -> str:
    if config.base_layout:
        return config.base_layout
    total = tally.total_letters
    if total and tally.letter_counts.get("ñ", 0) / total >= config.special_letter_threshold:
        return "qwerty_n_tilde"
    return "qwerty"


def missing_characters(tally: CharacterTally, base: Layout,
                       config: SynthesisConfig) -> list[tuple[str, int]]:
    visible = visible_characters(base)
    return [(ch, n) for ch, n in latin_letters_by_frequency(tally, config.min_count)
            if ch not in visible]


def assign_long_presses(base: Layout, missing: list[tuple[str, int]],
                        config: SynthesisConfig) -> tuple[Layout, SynthesisReport]:
    """Add each missing letter to its base key's long-press list.

    *missing* must already be in descending frequency order; that order is
    kept within every key. New letters go ahead of whatever the key already
    had (e.g. a digit).
    """
    report = SynthesisReport(base_layout_chosen=base.base_layout_name or base.name)
    view = base.default_view
    key_at: dict[str, tuple[int, int]] = {}
    for r, c, slot in view.slots():
        if slot.is_char:
            key_at.setdefault(simple_lower(slot.value), (r, c))

    additions: dict[tuple[int, int], list[str]] = {}
    for ch, n in missing:
        try:
            attribution = base_key_for(ch, config.fallback_table)
        except UnattributableCharacter as e:
            report.unplaceable.append((ch, n, str(e)))
            continue
        pos = key_at.get(attribution.base)
        if pos is None:
            report.unplaceable.append((ch, n, f"base key {attribution.base!r} not on layout"))
            continue
        additions.setdefault(pos, []).append(ch)
        report.placements.append((ch, attribution.base, attribution.provenance.value))

    placed = {ch for chars in additions.values() for ch in chars}
    for r, c, slot in view.slots():
        new = additions.get((r, c), [])
        existing = [ch for ch in slot.long_press if ch not in placed]
        if not new and len(existing) == len(slot.long_press):
            continue
        if new and existing:
            report.warnings.append(
                f"key {slot.value!r}: letters {' '.join(new)} placed ahead of "
                f"existing long-presses {' '.join(existing)}"
            )
        long_press = new + existing
        if len(long_press) > config.long_press_warn:
            report.warnings.append(
                f"key {slot.value!r} has {len(long_press)} long-presses "
                f"(warning threshold {config.long_press_warn})"
            )
        view = view.replace_slot(r, c, replace(slot, long_press=tuple(long_press)))
    return base.with_default_view(view), report


def attach_punctuation(layout: Layout, punct: list[str], config: SynthesisConfig) -> Layout:
    """Fill the period key's placeholder with corpus punctuation."""
    targets = [(r, c, s) for r, c, s in layout.default_view.slots() if s.is_char and s.punc]
    if len(targets) != 1:
        raise SynthesisError(
            f"layout needs exactly one punctuation placeholder key, found {len(targets)}"
        )
    r, c, slot = targets[0]
    on_layout = set()
    for _, _, s in layout.default_view.slots():
        if s.is_char:
            on_layout.add(s.value)
            on_layout.update(s.long_press)

    long_press = list(slot.long_press)
    long_press += [p for p in punct if p not in on_layout][:config.punctuation_limit]
    symbol = config.currency_symbol
    if symbol and symbol not in on_layout and symbol not in long_press:
        long_press.append(symbol)
    view = layout.default_view.replace_slot(
        r, c, replace(slot, long_press=tuple(long_press), punc=False))
    return replace(layout.with_default_view(view), currency_symbol=symbol)


def synthesize(tally: CharacterTally, config: SynthesisConfig) -> tuple[Layout, SynthesisReport]:
    if not tally.letter_counts:
        raise SynthesisError("no Latin letters in the input; nothing to design from")
    base_name = choose_base_layout(tally, config)
    base = builtin_base_layout(base_name)
    missing = missing_characters(tally, base, config)
    layout, report = assign_long_presses(base, missing, config)
    layout = attach_punctuation(layout, punctuation_by_frequency(tally), config)
    layout = replace(layout, name=config.language_tag, language_tag=config.language_tag,
                     base_layout_name=base_name)
    report.base_layout_chosen = base_name
    report.discarded_non_latin = sorted(tally.rejected_letters.items(),
                                        key=lambda kv: (-kv[1], ord(kv[0])))
    return layout, report


def report_tsv(report: SynthesisReport) -> str:
    """Render the report as ``kind<TAB>char<TAB>count<TAB>detail`` lines."""
    lines = ["kind\tchar\tcount\tdetail", f"base_layout\t\t\t{report.base_layout_chosen}"]
    lines += [f"placement\t{ch}\t\t{base} {prov}" for ch, base, prov in report.placements]
    lines += [f"discarded\t{ch}\t{n}\tnon-Latin script" for ch, n in report.discarded_non_latin]
    lines += [f"unplaceable\t{ch}\t{n}\t{why}" for ch, n, why in report.unplaceable]
    lines += [f"warning\t\t\t{w}" for w in report.warnings]
    return "\n".join(lines) + "\n"
