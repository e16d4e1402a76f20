#!/usr/bin/env python3
"""Regenerate crates/core/data/dictionary_en.txt.

Inputs (pip wheels): english-words (GCIDE + Webster's 2nd lemma lists, MIT) and
pyspellchecker (English frequency list, MIT), plus the Snowball English sample
vocabulary (BSD) passed as argv[1].

A word is kept when it is a lemma (or a regular inflection of a lemma) AND it is
attested in the frequency list at least MIN_FREQ times, or when it occurs in the
Snowball vocabulary.
"""
import gzip
import json
import pickle
import re
import sys
import zipfile
from pathlib import Path

MIN_FREQ = 200
ALPHA = re.compile(r"^[a-z]+$")


def wheel(pattern):
    return zipfile.ZipFile(next(Path(sys.argv[2]).glob(pattern)))


def main():
    ew = wheel("english_words-*.whl")
    lemmas = pickle.loads(ew.read("english_words/data/gcide_alpha_lower.pickle"))
    lemmas |= pickle.loads(ew.read("english_words/data/web2_alpha_lower.pickle"))
    sc = wheel("pyspellchecker-*.whl")
    freq = json.loads(gzip.decompress(sc.read("spellchecker/resources/en.json.gz")))

    def lemma_of(w):
        if w in lemmas:
            return w
        for suf, rep in (("ies", "y"), ("ied", "y"), ("es", ""), ("s", ""), ("ed", ""),
                         ("ed", "e"), ("ing", ""), ("ing", "e"), ("er", ""), ("est", ""),
                         ("ly", ""), ("ily", "y")):
            if w.endswith(suf) and len(w) > len(suf) + 2:
                base = w[: -len(suf)] + rep
                if base in lemmas:
                    return base
                # doubled consonant: stopped -> stop
                if rep == "" and len(base) > 2 and base[-1] == base[-2] and base[:-1] in lemmas:
                    return base[:-1]
        return None

    words = {w for w, n in freq.items() if n >= MIN_FREQ and ALPHA.match(w) and len(w) > 1 and lemma_of(w)}
    words |= {w.strip() for w in open(sys.argv[1], encoding="utf-8") if ALPHA.match(w.strip())}
    words |= {"a", "i"}
    out = Path(__file__).resolve().parent.parent / "crates/core/data/dictionary_en.txt"
    with open(out, "w", encoding="utf-8") as fh:
        fh.write("# English word list: lemmas + attested inflections. See scripts/build_dictionary.py\n")
        for w in sorted(words):
            fh.write(w + "\n")
    print(len(words), "words ->", out)


if __name__ == "__main__":
    main()
