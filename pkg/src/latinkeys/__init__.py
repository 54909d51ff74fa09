"""Automatic Latin-script mobile keyboard layouts from corpus data."""

from latinkeys.android import emit_package, key_id_for
from latinkeys.charstats import CharacterTally, tally
from latinkeys.config import EmitConfig, SynthesisConfig, load_config
from latinkeys.corpus import load_plain_text, load_word_frequency_list
from latinkeys.layout import Layout, builtin_base_layout, parse_csv, serialize_csv
from latinkeys.preview import render_svg
from latinkeys.synthesis import synthesize
from latinkeys.unicode_base import base_key_for, decomposition_census

__version__ = "0.1.0"

__all__ = [
    "CharacterTally",
    "EmitConfig",
    "Layout",
    "SynthesisConfig",
    "base_key_for",
    "builtin_base_layout",
    "decomposition_census",
    "emit_package",
    "key_id_for",
    "load_config",
    "load_plain_text",
    "load_word_frequency_list",
    "parse_csv",
    "render_svg",
    "serialize_csv",
    "synthesize",
    "tally",
]
