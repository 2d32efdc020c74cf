#!/usr/bin/env python3
"""Standalone generator used to freeze golden pages.

Reimplements seeded tile selection and the page skeleton directly from the
tile-set JSON, without any of the C++ code, so a port (for example a
browser build) can be checked byte-for-byte against the same files.

usage: generate_oracle.py TILESET.json SEED
"""
import json
import sys

MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed):
        self.state = seed & MASK

    def next(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def below(self, bound):
        threshold = (1 << 64) % bound
        while True:
            x = self.next()
            if x >= threshold:
                return x % bound


def esc_text(s):
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def esc_attr(s):
    return s.replace("&", "&amp;").replace('"', "&quot;")


def page(tileset, seed):
    rng = SplitMix64(seed)
    css = []
    html = {}
    for slot in tileset["slots"]:
        value = slot["tiles"][rng.below(len(slot["tiles"]))]
        if slot["kind"] == "css_property":
            css.append("  %s: %s;\n" % (slot["target"], value))
        else:
            html[slot["target"]] = value

    img = "<img"
    if "img_src" in html:
        img += ' src="%s"' % esc_attr(html["img_src"])
    if "img_alt" in html:
        img += ' alt="%s"' % esc_attr(html["img_alt"])
    img += ">"

    return (
        "<!DOCTYPE html>\n"
        '<html lang="en">\n'
        "<head>\n"
        '<meta charset="utf-8">\n'
        '<meta name="viewport" content="width=device-width, initial-scale=1">\n'
        "<title>Untitled creation</title>\n"
        "<style>\n.content {\n" + "".join(css) + "}\n</style>\n"
        "</head>\n"
        "<body>\n"
        '<div class="content">\n'
        "<figure>\n"
        + img + "\n"
        "<figcaption>" + esc_text(html.get("figcaption_text", "")) + "</figcaption>\n"
        "</figure>\n"
        "<span>" + esc_text(html.get("span_text", "")) + "</span>\n"
        "</div>\n"
        "</body>\n"
        "</html>\n"
    )


if __name__ == "__main__":
    with open(sys.argv[1], encoding="utf-8") as f:
        ts = json.load(f)
    sys.stdout.write(page(ts, int(sys.argv[2])))
