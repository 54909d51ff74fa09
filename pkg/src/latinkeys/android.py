"""Emit a layout as a set of Android IME keyboard XML resources.

One language package consists of five files::

    ime_<tag>.xml                 keyboard variants and IME-wide flags
    keyboard_fragment_<tag>.xml   ties grid, keymapping and softkeys together
    layout_grid_<shape>.xml       LinearLayout grid of key positions (shareable)
    keymapping_<tag>.xml          grid position -> softkey id, default and SHIFT
    softkeys_<tag>.xml            softkey id -> press text and long-presses

plus registry entries (IME list, keyboard ids, softkey ids) collected in
``manifest.tsv`` at the output root. Output is byte-deterministic.
"""

from __future__ import annotations

import hashlib
import re
import unicodedata
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable

from latinkeys.config import EmitConfig
from latinkeys.layout import Layout, SlotKind

STANDARD_VARIANTS = ("qwerty", "qwertz", "azerty", "dvorak", "colemak")
SPLITTER = ","
KEY_WEIGHT = 100
ANDROID_NS = "http://schemas.android.com/apk/res/android"

SPECIAL_KEY_IDS = {
    "Shift": "key_shift",
    "Del": "key_delete",
    "Space": "key_space",
    "Enter": "key_enter",
}

_LETTER_PREFIXES = (
    ("LATIN SMALL LETTER ", False),
    ("LATIN CAPITAL LETTER ", True),
    ("LATIN SMALL LIGATURE ", False),
    ("LATIN CAPITAL LIGATURE ", True),
    ("LATIN LETTER ", False),
)

MANIFEST_NAME = "manifest.tsv"
MANIFEST_HEADER = "language\tkind\tpath\tbytes\tsha256"


class EmitError(ValueError):
    pass


class OutputConflict(FileExistsError):
    pass


@dataclass(frozen=True)
class EmittedFile:
    kind: str
    path: str
    size: int
    digest: str
    shared: bool = False


@dataclass
class EmitManifest:
    language_tag: str
    files: list[EmittedFile] = field(default_factory=list)
    registry_entries: list[str] = field(default_factory=list)


# --- naming -----------------------------------------------------------------


def _name_words(text: str) -> str:
    return re.sub(r"[\s\-]+", "_", text.strip().lower())


def key_id_for(character: str, shifted: bool = False) -> str:
    """Softkey id derived from the character's Unicode name.

    >>> key_id_for("ñ")
    'latin_n_tilde'
    >>> key_id_for("q", shifted=True)
    'latin_Q'
    """
    if shifted:
        up = character.upper()
        character = up if len(up) == 1 else character
    name = unicodedata.name(character, "")
    if not name:
        raise EmitError(f"no Unicode name for U+{ord(character):04X}; cannot derive a key id")
    for prefix, capital in _LETTER_PREFIXES:
        if name.startswith(prefix):
            words = [w for w in name[len(prefix):].split(" ") if w != "WITH"]
            tail = _name_words(" ".join(words))
            if not capital:
                return f"latin_{tail}"
            if len(tail) == 1:
                return f"latin_{tail.upper()}"
            return f"latin_{tail}_upper"
    return _name_words(name)


def resource_tag(language_tag: str) -> str:
    tag = re.sub(r"[^a-z0-9]+", "_", language_tag.lower()).strip("_")
    if not tag or not tag[0].isalpha():
        raise EmitError(f"cannot derive a resource name from language tag {language_tag!r}")
    return tag


def grid_shape(layout: Layout) -> tuple[int, ...]:
    """Number of non-empty slots in each row of the default view."""
    return tuple(sum(not s.is_empty for s in row) for row in layout.default_view.rows)


def grid_name(layout: Layout) -> str:
    return "grid_" + "_".join(str(n) for n in grid_shape(layout))


# --- XML helpers ------------------------------------------------------------


def escape_attr(value: str) -> str:
    """Escape for a double-quoted attribute; non-ASCII becomes ``&#xHHHH;``."""
    out = []
    for ch in value:
        if ch == "&":
            out.append("&amp;")
        elif ch == "<":
            out.append("&lt;")
        elif ch == ">":
            out.append("&gt;")
        elif ch == '"':
            out.append("&quot;")
        elif ord(ch) > 0x7E or ord(ch) < 0x20:
            out.append(f"&#x{ord(ch):04X};")
        else:
            out.append(ch)
    return "".join(out)


def _element(tag: str, attrs: Iterable[tuple[str, str]], indent: int, close: bool = True) -> str:
    parts = " ".join(f'{k}="{escape_attr(v)}"' for k, v in attrs)
    sep = " " if parts else ""
    return f"{'  ' * indent}<{tag}{sep}{parts}{'/' if close else ''}>"


def _check_layout(layout: Layout) -> None:
    rows, cols = layout.default_view.shape
    if rows == 0 or cols == 0:
        raise EmitError(f"layout {layout.name!r} has no key rows to emit")


# --- key ids ----------------------------------------------------------------


@dataclass(frozen=True)
class _SoftKey:
    key_id: str
    press: str | None = None
    long_press: tuple[str, ...] = ()
    special: str | None = None


def _softkey_table(layout: Layout) -> tuple[dict[tuple[int, int, int], str], list[_SoftKey]]:
    """Assign an id to every non-empty slot of both views.

    Returns the (view, row, grid column) -> id map and the distinct softkeys in
    emission order (default then shifted, position by position).
    """
    ids: dict[tuple[int, int, int], str] = {}
    keys: dict[str, _SoftKey] = {}
    views = (layout.default_view, layout.shift_view)
    for r, row in enumerate(layout.default_view.rows):
        col = 0
        for c, slot in enumerate(row):
            if slot.is_empty:
                continue
            for v, view in enumerate(views):
                s = view.rows[r][c]
                if s.kind is SlotKind.SPECIAL:
                    key = _SoftKey(SPECIAL_KEY_IDS[s.value], special=s.value)
                else:
                    if SPLITTER in s.long_press:
                        raise EmitError(
                            f"key {s.value!r}: long-press list contains the splitter {SPLITTER!r}"
                        )
                    key = _SoftKey(key_id_for(s.value), s.value, s.long_press)
                # A caseless key whose long-presses differ between the two views.
                if v == 1 and keys.get(key.key_id, key) != key:
                    key = replace(key, key_id=f"{key.key_id}_shifted")
                if keys.get(key.key_id, key) != key:
                    raise EmitError(f"conflicting definitions for softkey id {key.key_id}")
                keys.setdefault(key.key_id, key)
                ids[(v, r, col)] = key.key_id
            col += 1
    return ids, list(keys.values())


# --- file bodies ------------------------------------------------------------


def emit_ime_xml(layout: Layout, config: EmitConfig | None = None) -> str:
    config = config or EmitConfig()
    _check_layout(layout)
    tag = resource_tag(layout.language_tag)
    first = layout.base_layout_name or "qwerty"
    variants = [first] + [v for v in STANDARD_VARIANTS if v != first]
    lines = ["<framework>"]
    lines.append(_element("ime", [
        ("string_id", config.ime_name or f"ime_{tag}"),
        ("language", layout.language_tag),
        ("ascii_capable", str(config.ascii_capable).lower()),
        ("auto_capital", str(config.auto_capital).lower()),
    ], 1, close=False))
    for i, variant in enumerate(variants):
        attrs = [("variant", variant)]
        if i == 0:
            attrs.append(("variant_label", f"@string/variant_{tag}"))
        lines.append(_element("keyboard_group", attrs, 2, close=False))
        lines.append(_element("keyboard", [("type", "prime"),
                                           ("def", f"@xml/keyboard_fragment_{tag}")], 3, close=False))
        lines.append(_element("merge", [("def", f"@xml/keyboard_{variant}")], 4))
        lines.append("      </keyboard>")
        lines.append("    </keyboard_group>")
    lines.append("  </ime>")
    lines.append("</framework>")
    return "\n".join(lines) + "\n"


def emit_keyboard_xml(layout: Layout, config: EmitConfig | None = None) -> str:
    _check_layout(layout)
    tag = resource_tag(layout.language_tag)
    return "\n".join([
        "<framework>",
        _element("include", [("href", "@xml/keyboard_base")], 1),
        "  <keyboard>",
        _element("view", [("type", "body"), ("layout", f"@layout/{grid_name(layout)}")],
                 2, close=False),
        _element("include", [("href", f"@xml/keymapping_{tag}")], 3),
        _element("softkeys", [("href", f"@xml/softkeys_{tag}")], 3),
        "    </view>",
        "  </keyboard>",
        "</framework>",
    ]) + "\n"


def emit_layout_grid_xml(layout: Layout, config: EmitConfig | None = None) -> str:
    """Grid of key views; depends only on the per-row key counts."""
    config = config or EmitConfig()
    _check_layout(layout)
    lines = [_element("LinearLayout", [("xmlns:android", ANDROID_NS),
                                       ("style", "@style/Input.Grid")], 0, close=False)]
    for r, n in enumerate(grid_shape(layout)):
        lines.append(_element("LinearLayout", [("style", "@style/KeyboardRow")], 1, close=False))
        for c in range(n):
            lines.append(_element(config.view_class, [
                ("android:id", f"@id/key_pos_{r}_{c}"),
                ("style", "@style/SoftKey.MiddleInset"),
                ("android:layout_weight", str(KEY_WEIGHT)),
            ], 2))
        lines.append("  </LinearLayout>")
    lines.append("</LinearLayout>")
    return "\n".join(lines) + "\n"


def emit_keymapping_xml(layout: Layout, config: EmitConfig | None = None) -> str:
    _check_layout(layout)
    ids, _ = _softkey_table(layout)
    lines = ["<framework>"]
    for v, opener in ((0, "<key_mapping>"), (1, '<key_mapping state="SHIFT">')):
        lines.append("  " + opener)
        for (view, r, c), key_id in ids.items():
            if view == v:
                lines.append(_element("mapping", [("view_id", f"@id/key_pos_{r}_{c}"),
                                                  ("key_id", f"@id/{key_id}")], 2))
        lines.append("  </key_mapping>")
    lines.append("</framework>")
    return "\n".join(lines) + "\n"


def emit_softkeys_xml(layout: Layout, config: EmitConfig | None = None) -> str:
    _check_layout(layout)
    _, keys = _softkey_table(layout)
    lines = [
        "<framework>",
        "  <!-- hint and content_description attributes are filled in by hand -->",
        "  <softkeys>",
        _element("softkey_list", [("splitter", SPLITTER)], 2, close=False),
    ]
    for key in keys:
        if key.special is not None:
            attrs = [("id", f"@id/{key.key_id}"),
                     ("template", f"@xml/softkey_template_{key.special.lower()}")]
        else:
            attrs = [("id", f"@id/{key.key_id}"), ("press", key.press)]
            if key.long_press:
                attrs.append(("long_press", SPLITTER.join(key.long_press)))
        lines.append(_element("softkey", attrs, 3))
    lines += ["    </softkey_list>", "  </softkeys>", "</framework>"]
    return "\n".join(lines) + "\n"


def softkey_ids(layout: Layout) -> list[str]:
    return [k.key_id for k in _softkey_table(layout)[1]]


# --- package ----------------------------------------------------------------


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _write(path: Path, data: bytes, force: bool) -> None:
    if path.exists() and not force and path.read_bytes() != data:
        raise OutputConflict(f"{path} exists with different content (use --force to overwrite)")
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(data)


def write_package(layout: Layout, config: EmitConfig | None, outdir: str | Path,
                  known_grids: dict[str, str] | None = None,
                  force: bool = False) -> EmitManifest:
    """Write the five files under ``outdir/<tag>/xml/``.

    *known_grids* maps grid file names to paths (relative to *outdir*) already
    written for other languages; an identical grid there is reused instead of
    written again.
    """
    config = config or EmitConfig()
    outdir = Path(outdir)
    _check_layout(layout)
    tag = resource_tag(layout.language_tag)
    xml_dir = Path(tag) / "xml"

    grid_file = f"layout_{grid_name(layout)}.xml"
    bodies = [
        ("ime", f"ime_{tag}.xml", emit_ime_xml(layout, config)),
        ("keyboard", f"keyboard_fragment_{tag}.xml", emit_keyboard_xml(layout, config)),
        ("layout_grid", grid_file, emit_layout_grid_xml(layout, config)),
        ("keymapping", f"keymapping_{tag}.xml", emit_keymapping_xml(layout, config)),
        ("softkeys", f"softkeys_{tag}.xml", emit_softkeys_xml(layout, config)),
    ]
    manifest = EmitManifest(layout.language_tag)
    for kind, name, body in bodies:
        data = body.encode("utf-8")
        rel = (xml_dir / name).as_posix()
        shared = False
        if kind == "layout_grid" and known_grids and name in known_grids:
            other = outdir / known_grids[name]
            if other.is_file() and other.read_bytes() == data:
                rel, shared = known_grids[name], True
        if not shared:
            _write(outdir / rel, data, force)
        manifest.files.append(EmittedFile(kind, rel, len(data), _digest(data), shared))

    manifest.registry_entries.append(f"ime_list:@xml/ime_{tag}")
    manifest.registry_entries.append(f"keyboard_ids:keyboard_fragment_{tag}")
    manifest.registry_entries += [f"softkey_ids:{k}" for k in softkey_ids(layout)]
    return manifest


def read_manifest(outdir: str | Path) -> list[list[str]]:
    path = Path(outdir) / MANIFEST_NAME
    if not path.exists():
        return []
    lines = path.read_text(encoding="utf-8").splitlines()
    return [line.split("\t") for line in lines[1:] if line]


def known_grids(outdir: str | Path, exclude: Iterable[str] = ()) -> dict[str, str]:
    """Grid files already written by other languages, from the manifest."""
    exclude = set(exclude)
    grids = {}
    for lang, kind, path, *_ in read_manifest(outdir):
        name = path.rsplit("/", 1)[-1]
        if lang not in exclude and kind == "file" and name.startswith("layout_grid_"):
            grids.setdefault(name, path)
    return grids


def _manifest_rows(m: EmitManifest) -> list[list[str]]:
    rows = [[m.language_tag, "shared" if f.shared else "file", f.path, str(f.size), f.digest]
            for f in m.files]
    rows += [[m.language_tag, "registry", entry, "", ""] for entry in m.registry_entries]
    return rows


def update_manifest(outdir: str | Path, manifests: Iterable[EmitManifest]) -> Path:
    """Replace the rows of the given languages in ``manifest.tsv``."""
    manifests = list(manifests)
    replaced = {m.language_tag for m in manifests}
    rows = [r for r in read_manifest(outdir) if r[0] not in replaced]
    for m in manifests:
        rows += _manifest_rows(m)
    rows.sort(key=lambda r: r[0])
    path = Path(outdir) / MANIFEST_NAME
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join([MANIFEST_HEADER] + ["\t".join(r) for r in rows]) + "\n",
                    encoding="utf-8")
    return path


def emit_package(layout: Layout, config: EmitConfig | None, outdir: str | Path,
                 force: bool = False) -> EmitManifest:
    grids = known_grids(outdir, exclude=[layout.language_tag])
    manifest = write_package(layout, config, outdir, grids, force)
    update_manifest(outdir, [manifest])
    return manifest
