"""Static SVG previews of a layout view."""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape, quoteattr

from latinkeys.layout import Layout, SlotKind

HINT_CORNERS = ("top-right", "top-left", "bottom-right", "bottom-left")


@dataclass(frozen=True)
class RenderStyle:
    key_width: int = 40
    key_height: int = 54
    gap: int = 6
    margin: int = 10
    corner_radius: int = 6
    font_size: int = 22
    hint_font_size: int = 11
    hint_corner: str = "top-right"

    def __post_init__(self):
        for name in ("key_width", "key_height", "corner_radius", "font_size", "hint_font_size"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.gap < 0 or self.margin < 0:
            raise ValueError("gap and margin must be nonnegative")
        if self.hint_corner not in HINT_CORNERS:
            raise ValueError(f"hint_corner must be one of {', '.join(HINT_CORNERS)}")


_CSS = (
    ".key{fill:#f4f4f4;stroke:#9a9a9a;stroke-width:1}"
    ".special{fill:#d8dce3}"
    ".label{font-family:sans-serif;fill:#202020}"
    ".hint{font-family:sans-serif;fill:#6a6a6a}"
)


def render_svg(layout: Layout, view: str = "default", style: RenderStyle | None = None) -> str:
    """Draw one rounded key per non-empty slot, with the top long-press as a hint."""
    style = style or RenderStyle()
    if view not in ("default", "shift"):
        raise ValueError(f"view must be 'default' or 'shift', got {view!r}")
    grid = layout.default_view if view == "default" else layout.shift_view
    rows, cols = grid.shape
    s = style
    width = 2 * s.margin + cols * s.key_width + max(cols - 1, 0) * s.gap
    height = 2 * s.margin + rows * s.key_height + max(rows - 1, 0) * s.gap

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f"<style>{_CSS}</style>",
    ]
    pad = max(s.hint_font_size // 2, 3)
    for r, c, slot in grid.slots():
        if slot.kind is SlotKind.EMPTY:
            continue
        x = s.margin + c * (s.key_width + s.gap)
        y = s.margin + r * (s.key_height + s.gap)
        special = slot.kind is SlotKind.SPECIAL
        cls = "key special" if special else "key"
        out.append(
            f'<rect class="{cls}" x="{x}" y="{y}" width="{s.key_width}" '
            f'height="{s.key_height}" rx="{s.corner_radius}" ry="{s.corner_radius}"/>'
        )
        size = s.font_size if not special else max(s.font_size * 5 // 11, 1)
        out.append(
            f'<text class="label" x="{x + s.key_width // 2}" y="{y + s.key_height // 2}" '
            f'font-size="{size}" text-anchor="middle" dominant-baseline="central">'
            f"{escape(slot.value)}</text>"
        )
        if slot.kind is SlotKind.CHAR and slot.long_press:
            right = s.hint_corner.endswith("right")
            hx = x + s.key_width - pad if right else x + pad
            hy = y + pad if s.hint_corner.startswith("top") else y + s.key_height - pad
            anchor = "end" if right else "start"
            baseline = "hanging" if s.hint_corner.startswith("top") else "auto"
            out.append(
                f'<text class="hint" x="{hx}" y="{hy}" font-size="{s.hint_font_size}" '
                f'text-anchor="{anchor}" dominant-baseline="{baseline}" '
                f'data-long-press={quoteattr(" ".join(slot.long_press))}>'
                f"{escape(slot.long_press[0])}</text>"
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
