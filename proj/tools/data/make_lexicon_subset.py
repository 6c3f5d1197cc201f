#!/usr/bin/env python3
# Extracts the entries of a CMU-format pronouncing dictionary for every word
# appearing in the given text files, writing them in upper-case CMU layout
# (WORD  PH PH ..., variants as WORD(1), WORD(2)).
#
# usage: make_lexicon_subset.py cmudict.dict words.txt [more.txt ...] > subset.dict
import re
import sys

WORD = re.compile(r"[A-Za-z][A-Za-z']*")


def wanted_words(paths):
    words = set()
    for path in paths:
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                if line.startswith("#"):
                    continue
                # Strip word/TAG annotations so tagged corpora can be passed too.
                line = re.sub(r"/[A-Z]+", " ", line)
                words.update(w.lower().strip("'") for w in WORD.findall(line))
    return words


def main(dict_path, paths):
    words = wanted_words(paths)
    seen = {}
    with open(dict_path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            head, *phones = line.split()
            base = re.sub(r"\(\d+\)$", "", head)
            if base not in words:
                continue
            n = seen.get(base, 0)
            seen[base] = n + 1
            key = base.upper() if n == 0 else f"{base.upper()}({n})"
            sys.stdout.write(f"{key}  {' '.join(phones)}\n")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2:])
