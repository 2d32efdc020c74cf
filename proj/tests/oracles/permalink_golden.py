#!/usr/bin/env python3
"""Computes permalink golden vectors with Python's zlib binding.

Settings mirror the pinned stream configuration: level 9, raw stream
(wbits -15), memLevel 8, default strategy.

usage: permalink_golden.py TEXT
"""
import base64
import sys
import zlib


def encode(text):
    c = zlib.compressobj(9, zlib.DEFLATED, -15, 8, zlib.Z_DEFAULT_STRATEGY)
    raw = c.compress(text.encode("utf-8")) + c.flush()
    return "v1." + base64.urlsafe_b64encode(raw).decode("ascii").rstrip("=")


if __name__ == "__main__":
    print(encode(sys.argv[1]))
