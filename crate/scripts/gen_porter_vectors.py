#!/usr/bin/env python3
"""Regenerate fixtures/porter/vocabulary.txt ("word stem" per line).

Words come from the Snowball English sample vocabulary (argv[1]); stems are
produced by NLTK's PorterStemmer in MARTIN_EXTENSIONS mode, which reproduces
Martin Porter's published reference output (voc.txt -> output.txt).
"""
import re
import sys
from pathlib import Path

from nltk.stem.porter import PorterStemmer

stemmer = PorterStemmer(mode=PorterStemmer.MARTIN_EXTENSIONS)
out = Path(__file__).resolve().parent.parent / "fixtures/porter/vocabulary.txt"
words = sorted({w.strip() for w in open(sys.argv[1], encoding="utf-8") if re.match(r"^[a-z]+$", w.strip())})
with open(out, "w", encoding="utf-8") as fh:
    for w in words:
        fh.write(f"{w} {stemmer.stem(w)}\n")
print(len(words), "pairs ->", out)
