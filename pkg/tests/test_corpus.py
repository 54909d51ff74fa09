import codecs
import unicodedata

import pytest
from hypothesis import given, strategies as st

from latinkeys.corpus import (
    CorpusDocument,
    CorpusFormatError,
    load_plain_text,
    load_word_frequency_list,
    normalize_text,
)


def test_decomposed_input_is_composed(tmp_path):
    p = tmp_path / "a.txt"
    p.write_text("Olá", encoding="utf-8")
    doc = load_plain_text(p)
    assert doc.text == "Olá"
    assert doc.weight == 1


def test_empty_file(tmp_path):
    p = tmp_path / "empty.txt"
    p.write_bytes(b"")
    doc = load_plain_text(p)
    assert doc.text == ""
    assert doc.weight == 1


def test_bom_is_stripped(tmp_path):
    raw = codecs.BOM_UTF8 + b"abc"
    p = tmp_path / "bom.txt"
    p.write_bytes(raw)
    # reference decoder for the BOM prefix
    assert load_plain_text(p).text == raw.decode("utf-8-sig") == "abc"


def test_control_characters_removed_but_newline_and_tab_kept(tmp_path):
    p = tmp_path / "c.txt"
    p.write_text("a\x00b\x07\r\nc\td", encoding="utf-8")
    assert load_plain_text(p).text == "ab\nc\td"


def test_orphan_marks_dropped(caplog):
    assert normalize_text("́abc ̀d") == "abc d"
    assert "orphan" in caplog.text


def test_marks_after_uncomposable_base_kept():
    # ŋ + acute has no precomposed form; the mark is attached, not orphaned
    assert normalize_text("ŋ́") == "ŋ́"


def test_invalid_utf8_reports_offset(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_bytes(b"abc\xffdef")
    with pytest.raises(CorpusFormatError) as err:
        load_plain_text(p)
    assert err.value.offset == 3
    assert "byte offset 3" in str(err.value)


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_plain_text(tmp_path / "nope.txt")


def test_weight_must_be_positive():
    with pytest.raises(ValueError):
        CorpusDocument("x", "abc", 0)


def test_word_list(tmp_path):
    p = tmp_path / "w.tsv"
    p.write_text("# comment\nkalaallisut\t42\n\n   \nnũ\t3\n", encoding="utf-8")
    entries = load_word_frequency_list(p)
    assert [(e.word, e.count) for e in entries] == [("kalaallisut", 42), ("nũ", 3)]


@pytest.mark.parametrize("line, fragment", [
    ("word\t0", "nonpositive count"),
    ("word\t-4", "nonpositive count"),
    ("word\tmany", "not an integer"),
    ("word 12", "expected 'word<TAB>count'"),
    ("\t12", "empty word"),
])
def test_word_list_errors_name_the_line(tmp_path, line, fragment):
    p = tmp_path / "w.tsv"
    p.write_text(f"ok\t1\n\n{line}\n", encoding="utf-8")
    with pytest.raises(CorpusFormatError) as err:
        load_word_frequency_list(p)
    assert err.value.line == 3
    assert fragment in str(err.value)
    assert ":3:" in str(err.value)


texts = st.text(alphabet=st.characters(blacklist_categories=("Cs",)), max_size=60)


@given(texts)
def test_normalization_is_idempotent(text):
    once = normalize_text(text)
    assert normalize_text(once) == once
    assert unicodedata.is_normalized("NFC", once)


@given(texts)
def test_loading_is_deterministic_and_idempotent(tmp_path_factory, text):
    d = tmp_path_factory.mktemp("docs")
    a, b = d / "a.txt", d / "b.txt"
    a.write_text(text, encoding="utf-8", newline="")
    first = load_plain_text(a, source_id="x")
    assert load_plain_text(a, source_id="x") == first
    b.write_text(first.text, encoding="utf-8", newline="")
    assert load_plain_text(b, source_id="x") == first
