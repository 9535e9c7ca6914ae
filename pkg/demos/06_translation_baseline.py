"""Sense labeling from translations of the target word.

If a translation system renders two senses of an ambiguous word with two
different words, the translations themselves are sense identifiers: group
the contexts by the most frequent (optionally stemmed) translation. The
translations arrive from an offline sidecar file; here they are inlined.
"""

import senseclust as sc
from senseclust.mt_label import TranslationRecord

records = [
    TranslationRecord("c1", ["jar"]),
    TranslationRecord("c2", ["jar", "jars"]),
    TranslationRecord("c3", ["bank"]),
    TranslationRecord("c4", ["banks"]),
    TranslationRecord("c5", ["Bank", "jar"]),   # tie after normalization
]

for algo in ("identity", "porter"):
    labeling = sc.label_by_translation(records, sc.Stemmer(algo))
    clusters = {}
    for cid, label in labeling.assignments.items():
        clusters.setdefault(label, []).append(cid)
    print(f"{algo} stemmer -> {len(clusters)} clusters")
    for label in sorted(clusters):
        print(f"  {label!r}: {sorted(clusters[label])}")
    print()

print("stemming merges inflected translations:",
      sc.porter_stem("banks"), "==", sc.porter_stem("bank"))
print("frequency ties break to the lexicographically smallest form")

# score the baseline against gold senses: c1..c2 are 'jar' senses,
# c3..c5 'bank' senses
gold = {"c1": "jar", "c2": "jar", "c3": "bank", "c4": "bank", "c5": "bank"}
pred = sc.label_by_translation(records, sc.Stemmer("porter")).assignments
order = sorted(gold)
print("\nARI of the porter-normalized baseline:",
      round(sc.ari([gold[c] for c in order], [pred[c] for c in order]), 3))
