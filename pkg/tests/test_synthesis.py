from collections import Counter
from importlib import resources

import pytest
from hypothesis import given, settings, strategies as st

from latinkeys.charstats import CharacterTally, tally
from latinkeys.config import SynthesisConfig
from latinkeys.corpus import CorpusDocument, normalize_text
from latinkeys.layout import KeySlot, builtin_base_layout, parse_csv, visible_characters
from latinkeys.synthesis import (
    SynthesisError,
    assign_long_presses,
    attach_punctuation,
    choose_base_layout,
    missing_characters,
    report_tsv,
    synthesize,
)
from latinkeys.unicode_base import UnattributableCharacter, base_key_for

CFG = SynthesisConfig(language_tag="xx")
ASCII = {ch: 40 for ch in "abcdefghijklmnopqrstuvwxyz"}


def key(layout, ch):
    for _, _, s in layout.default_view.slots():
        if s.is_char and s.value == ch:
            return s
    raise KeyError(ch)


def long_press_map(layout):
    return {s.value: s.long_press for _, _, s in layout.default_view.slots() if s.is_char}


def udhr(lang):
    text = resources.files("latinkeys").joinpath(f"data/udhr/{lang}.txt").read_text("utf-8")
    return tally([CorpusDocument(lang, normalize_text(text))])


def test_choose_base_by_n_tilde_share():
    counts = {"n": 100, "ñ": 10, "a": 890}
    assert choose_base_layout(CharacterTally.from_counts(counts), CFG) == "qwerty_n_tilde"
    counts = {"n": 100, "ñ": 4, "a": 896}
    assert choose_base_layout(CharacterTally.from_counts(counts), CFG) == "qwerty"
    assert choose_base_layout(CharacterTally.from_counts(ASCII), CFG) == "qwerty"


def test_explicit_base_wins():
    t = CharacterTally.from_counts({"ñ": 500, "a": 500})
    assert choose_base_layout(t, SynthesisConfig(base_layout="azerty")) == "azerty"
    lay, report = synthesize(t, SynthesisConfig(base_layout="azerty"))
    assert report.base_layout_chosen == "azerty"
    assert key(lay, "n").long_press == ("ñ",)


def test_missing_characters_in_frequency_order():
    t = CharacterTally.from_counts({**ASCII, "ó": 9, "õ": 3, "á": 9, "ñ": 1})
    base = builtin_base_layout("qwerty")
    assert missing_characters(t, base, CFG) == [("á", 9), ("ó", 9), ("õ", 3), ("ñ", 1)]
    base = builtin_base_layout("qwerty_n_tilde")
    assert [ch for ch, _ in missing_characters(t, base, CFG)] == ["á", "ó", "õ"]
    assert missing_characters(t, base, SynthesisConfig(min_count=5)) == [("á", 9), ("ó", 9)]


def test_portuguese_vowels():
    t = CharacterTally.from_counts({**ASCII, "ó": 30, "õ": 20, "á": 25})
    lay, report = synthesize(t, CFG)
    assert key(lay, "o").long_press == ("ó", "õ")
    assert key(lay, "a").long_press == ("á",)
    assert ("õ", "o", "canonical-decomposition") in report.placements


def test_most_frequent_goes_first():
    t = CharacterTally.from_counts({**ASCII, "è": 50, "é": 10, "ê": 10})
    assert key(synthesize(t, CFG)[0], "e").long_press == ("è", "é", "ê")


def test_fallback_letters():
    t = CharacterTally.from_counts({**ASCII, "ß": 7, "æ": 3, "ŋ": 2})
    lay, report = synthesize(t, CFG)
    assert key(lay, "s").long_press == ("ß",)
    assert key(lay, "a").long_press == ("æ",)
    assert key(lay, "n").long_press == ("ŋ",)
    assert ("ß", "s", "fallback-table") in report.placements


def test_unattributable_letter_is_reported():
    t = CharacterTally.from_counts({**ASCII, "ʘ": 4})
    lay, report = synthesize(t, CFG)
    assert [u[:2] for u in report.unplaceable] == [("ʘ", 4)]
    assert "ʘ" not in str(long_press_map(lay))


def test_non_latin_is_discarded():
    t = tally([CorpusDocument("d", "abc абв γ")])
    lay, report = synthesize(t, CFG)
    assert dict(report.discarded_non_latin) == {"а": 1, "б": 1, "в": 1, "γ": 1}
    assert all(not lp for lp in long_press_map(lay).values()
               if lp and lp[0] not in ".")


def test_existing_long_presses_kept_behind_with_warning(sample_csv_text):
    base = parse_csv(sample_csv_text, name="s")
    lay, report = assign_long_presses(base, [("ŵ", 5)], CFG)
    assert key(lay, "w").long_press == ("ŵ", "2")
    assert any("ahead of existing" in w for w in report.warnings)


def test_overcrowded_key_warns():
    vi = "àáảãạăằắẳẵặâầấẩẫậ"
    lay, report = assign_long_presses(builtin_base_layout("qwerty"),
                                      [(ch, 1) for ch in vi], CFG)
    assert key(lay, "a").long_press == tuple(vi)
    assert any("17 long-presses" in w for w in report.warnings)


def test_attach_punctuation():
    lay = attach_punctuation(builtin_base_layout("qwerty"), ["¿", "¡", ",", "."], CFG)
    dot = key(lay, ".")
    assert dot.long_press == ("¿", "¡")
    assert not dot.punc


def test_currency_only():
    cfg = SynthesisConfig(currency_symbol="₹")
    assert key(attach_punctuation(builtin_base_layout("qwerty"), [], cfg), ".").long_press == ("₹",)


def test_punctuation_limit():
    cfg = SynthesisConfig(punctuation_limit=2, currency_symbol="€")
    lay = attach_punctuation(builtin_base_layout("qwerty"), list("!?;:"), cfg)
    assert key(lay, ".").long_press == ("!", "?", "€")


def test_no_placeholder_is_an_error():
    lay = attach_punctuation(builtin_base_layout("qwerty"), [], CFG)
    with pytest.raises(SynthesisError, match="found 0"):
        attach_punctuation(lay, ["!"], CFG)


def test_empty_tally_is_an_error():
    with pytest.raises(SynthesisError):
        synthesize(CharacterTally.from_counts({}), CFG)
    with pytest.raises(SynthesisError):
        synthesize(tally([CorpusDocument("d", "123 ... абв")]), CFG)


@pytest.mark.parametrize("lang", ["pt", "vi", "wo"])
def test_udhr_most_frequent_letter_leads_its_key(lang):
    t = udhr(lang)
    lay, report = synthesize(t, SynthesisConfig(language_tag=lang))
    missing = [(ch, n) for ch, n in t.letter_counts.items() if ch not in visible_characters(
        builtin_base_layout(report.base_layout_chosen))]
    top = min(missing, key=lambda kv: (-kv[1], ord(kv[0])))[0]
    base = base_key_for(top).base
    assert key(lay, base).long_press[0] == top
    assert not report.unplaceable


def test_portuguese_udhr():
    lay, report = synthesize(udhr("pt"), SynthesisConfig(language_tag="pt"))
    assert report.base_layout_chosen == "qwerty"
    assert "ç" in key(lay, "c").long_press
    assert key(lay, "a").long_press[0] == "ã"
    assert "ê" in key(lay, "e").long_press
    assert "í" in key(lay, "i").long_press


def test_deterministic():
    t = udhr("vi")
    a = synthesize(t, SynthesisConfig(language_tag="vi"))
    b = synthesize(t, SynthesisConfig(language_tag="vi"))
    assert a == b
    assert report_tsv(a[1]) == report_tsv(b[1])


def test_report_tsv():
    t = CharacterTally.from_counts({**ASCII, "ß": 2, "ʘ": 1, "ж": 3})
    text = report_tsv(synthesize(t, CFG)[1])
    lines = text.splitlines()
    assert lines[0] == "kind\tchar\tcount\tdetail"
    assert "base_layout\t\t\tqwerty" in lines
    assert "placement\tß\t\ts fallback-table" in lines
    assert "discarded\tж\t3\tnon-Latin script" in lines
    assert any(line.startswith("unplaceable\tʘ\t1\t") for line in lines)


# --- properties ---------------------------------------------------------------

POOL = list("abcdefghijklmnopqrstuvwxyz") + list("áàâãäåçéèêëíìîïñóòôõöúùûüýÿßæøœðþłŋđħ")
tallies = st.dictionaries(st.sampled_from(POOL), st.integers(1, 10_000), min_size=1).map(
    CharacterTally.from_counts)


def rank(t):
    return {ch: i for i, (ch, _) in enumerate(
        sorted(t.letter_counts.items(), key=lambda kv: (-kv[1], ord(kv[0]))))}


@given(tallies)
def test_every_letter_reachable(t):
    lay, report = synthesize(t, CFG)
    reachable = visible_characters(lay) | {c for lp in long_press_map(lay).values() for c in lp}
    assert set(t.letter_counts) <= reachable
    assert not report.unplaceable


@given(tallies)
def test_long_press_order_follows_frequency(t):
    lay, _ = synthesize(t, CFG)
    order = rank(t)
    for lp in long_press_map(lay).values():
        letters = [ch for ch in lp if ch in order]
        assert letters == sorted(letters, key=order.get)


@given(tallies)
def test_no_character_appears_twice(t):
    lay, _ = synthesize(t, CFG)
    seen = Counter()
    for _, _, s in lay.default_view.slots():
        if s.is_char:
            seen.update([s.value, *s.long_press])
    assert max(seen.values()) == 1


@given(tallies, st.integers(2, 50))
def test_scaling_does_not_change_layout(t, k):
    assert synthesize(t, CFG)[0] == synthesize(t.scaled(k), CFG)[0]


@settings(max_examples=50)
@given(tallies, st.sampled_from(POOL), st.integers(1, 100))
def test_adding_a_letter_never_removes_one(t, ch, n):
    before = synthesize(t, CFG)[0]
    grown = t + CharacterTally.from_counts({ch: n})
    after = synthesize(grown, CFG)[0]
    reach = lambda lay: visible_characters(lay) | {
        c for lp in long_press_map(lay).values() for c in lp}
    assert reach(before) | {ch} <= reach(after)
