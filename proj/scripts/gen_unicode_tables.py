#!/usr/bin/env python3
"""Regenerates src/unicode_tables.inc from the Python unicodedata module.

Usage: python3 scripts/gen_unicode_tables.py > src/unicode_tables.inc
"""
import string
import sys
import unicodedata


def ranges(points):
    out = []
    start = prev = None
    for p in points:
        if start is None:
            start = prev = p
        elif p == prev + 1:
            prev = p
        else:
            out.append((start, prev))
            start = prev = p
    if start is not None:
        out.append((start, prev))
    return out


def main():
    ascii_punct = {ord(c) for c in string.punctuation}
    punct = [cp for cp in range(0x110000)
             if cp in ascii_punct or unicodedata.category(chr(cp)).startswith("P")]
    space = [cp for cp in range(0x110000) if chr(cp).isspace()]
    lower = []
    for cp in range(0x110000):
        low = chr(cp).lower()
        if low != chr(cp):
            # Simple (single code point) mapping; full mappings keep their first code point.
            lower.append((cp, ord(low[0])))

    w = sys.stdout.write
    w(f"// Generated by scripts/gen_unicode_tables.py (Unicode {unicodedata.unidata_version}). Do not edit.\n\n")
    w("constexpr CodeRange kPunctuationRanges[] = {\n")
    for a, b in ranges(punct):
        w(f"    {{0x{a:04X}, 0x{b:04X}}},\n")
    w("};\n\n")
    w("constexpr CodeRange kSpaceRanges[] = {\n")
    for a, b in ranges(space):
        w(f"    {{0x{a:04X}, 0x{b:04X}}},\n")
    w("};\n\n")
    w("constexpr CaseMapping kLowercaseMap[] = {\n")
    for a, b in lower:
        w(f"    {{0x{a:04X}, 0x{b:04X}}},\n")
    w("};\n")


if __name__ == "__main__":
    main()
