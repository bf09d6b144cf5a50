#!/usr/bin/env python3
"""Writes the pinned surrogate embedding file data/embeddings_surrogate_300d.txt.

Each word vector is a weighted sum of unit directions:

    shared noun direction + category direction + subgroup direction
    (+ a weak "transport" direction for pack animals) + word-specific noise

scaled to a per-word norm in [4, 8]. The weights put same-subgroup cosine
near 0.5, same-category near 0.4 and cross-category near 0.15, the range
seen for common concrete nouns in 300-d GloVe / word2vec vectors.

Any word2vec-format text file covering the lexicon can replace this one.
"""
import argparse
import csv

import numpy as np

DIM = 300
SEED = 20231016

SUBGROUPS = {
    "animal": {
        "domestic": "dog cat horse cow pig sheep goat rabbit mouse donkey hamster",
        "wild": "lion tiger bear wolf fox deer elephant monkey zebra giraffe camel "
                "leopard squirrel kangaroo rhino panda moose otter cheetah",
    },
    "vehicle": {
        "land": "car truck bus bicycle motorcycle locomotive tram taxi van tractor scooter "
                "ambulance jeep sedan lorry minivan limousine trolley wagon skateboard",
        "air_water": "airplane helicopter boat ship submarine yacht canoe ferry glider rocket",
    },
    "furniture": {
        "seating": "chair sofa bed stool bench couch armchair ottoman recliner futon "
                   "cot hammock crib chaise footstool loveseat",
        "storage": "table desk shelf cabinet wardrobe dresser bookcase cupboard nightstand "
                   "sideboard bureau credenza hutch vanity",
    },
}
TRANSPORT_ANIMALS = {"horse", "camel", "donkey"}

W_SHARED, W_CATEGORY, W_SUBGROUP, W_TRANSPORT, W_NOISE = 0.15, 0.25, 0.10, 0.08, 0.50


def unit(rng):
    v = rng.standard_normal(DIM)
    return v / np.linalg.norm(v)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--lexicon", default="data/lexicon.csv")
    ap.add_argument("--out", default="data/embeddings_surrogate_300d.txt")
    args = ap.parse_args()

    rng = np.random.default_rng(SEED)
    shared = unit(rng)
    transport = unit(rng)
    cat_dir = {c: unit(rng) for c in SUBGROUPS}
    sub_dir = {(c, s): unit(rng) for c, groups in SUBGROUPS.items() for s in groups}
    group_of = {w: (c, s) for c, groups in SUBGROUPS.items() for s, ws in groups.items() for w in ws.split()}

    with open(args.lexicon, newline="") as f:
        words = [row["word"] for row in csv.DictReader(f)]

    lines = [f"{len(words)} {DIM}"]
    for w in words:
        c, s = group_of[w]
        # Per-word typicality jitter on the category weight.
        wc = W_CATEGORY * rng.uniform(0.7, 1.3)
        v = (np.sqrt(W_SHARED) * shared + np.sqrt(wc) * cat_dir[c] + np.sqrt(W_SUBGROUP) * sub_dir[(c, s)]
             + np.sqrt(W_NOISE) * unit(rng))
        if w in TRANSPORT_ANIMALS:
            v += np.sqrt(W_TRANSPORT) * (cat_dir["vehicle"] + transport) / np.sqrt(2)
        v *= rng.uniform(4.0, 8.0) / np.linalg.norm(v)
        lines.append(w + " " + " ".join(f"{x:.6f}" for x in v))

    with open(args.out, "w") as f:
        f.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
