#!/usr/bin/env python3
# Converts the Brill word->Penn-tag lexicon (as shipped with textblob/pattern,
# en-lexicon.txt) into the word<TAB>UNIVERSAL_TAG form read by the tagger.
#
# usage: convert_brill_lexicon.py en-lexicon.txt > data/pos/lexicon.tsv
import sys

PENN_TO_UNIVERSAL = {
    "NN": "NOUN", "NNS": "NOUN", "NNP": "PROPN", "NNPS": "PROPN",
    "VB": "VERB", "VBD": "VERB", "VBG": "VERB", "VBN": "VERB", "VBP": "VERB", "VBZ": "VERB",
    "MD": "AUX", "JJ": "ADJ", "JJR": "ADJ", "JJS": "ADJ",
    "RB": "ADV", "RBR": "ADV", "RBS": "ADV", "WRB": "ADV",
    "IN": "ADP", "RP": "ADP", "TO": "PART", "POS": "PART",
    "DT": "DET", "PDT": "DET", "WDT": "DET",
    "PRP": "PRON", "PRP$": "PRON", "WP": "PRON", "WP$": "PRON", "EX": "PRON",
    "CC": "CONJ", "CD": "NUM", "UH": "INTJ", "SYM": "SYM", "FW": "X", "LS": "X",
    ".": "PUNCT", ",": "PUNCT", ":": "PUNCT", "(": "PUNCT", ")": "PUNCT",
    '"': "PUNCT", "``": "PUNCT", "''": "PUNCT", "#": "SYM", "$": "SYM",
}

AUX = {"be", "is", "am", "are", "was", "were", "been", "being", "'s", "'re", "'m"}
SCONJ = {"because", "although", "though", "if", "unless", "whether", "while",
         "whereas", "since", "once", "until", "till"}


def main(path):
    out = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.startswith(";;;"):
                continue
            parts = line.split()
            if len(parts) < 2:
                continue
            word, tag = parts[0], parts[1]
            if word.startswith("@") or word.startswith("http") or "#" in word[1:]:
                continue
            uni = PENN_TO_UNIVERSAL.get(tag)
            if uni is None:
                continue
            low = word.lower()
            if low in AUX:
                uni = "AUX"
            elif low in SCONJ and uni == "ADP":
                uni = "SCONJ"
            # Keep capitalised entries only when they are proper nouns.
            key = word if uni == "PROPN" else low
            out.setdefault(key, uni)
    for key in sorted(out):
        sys.stdout.write(f"{key}\t{out[key]}\n")


if __name__ == "__main__":
    main(sys.argv[1])
