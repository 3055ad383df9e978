"""Freezes ChrF reference scores from sacrebleu into tests/data/chrf_oracle.json.

sacrebleu's CHRF with whitespace kept and no epsilon smoothing is the
reference; its score is divided by 100. Run once; the output is committed.

    pip install sacrebleu==2.6.0
    python3 tools/oracles/chrf_oracle.py > tests/data/chrf_oracle.json
"""

import json
import random

import sacrebleu
from sacrebleu.metrics import CHRF

VOCAB = [
    "get", "set", "is", "has", "count", "lines", "apple", "orange", "to", "string",
    "find", "by", "id", "remove", "add", "all", "value", "values", "parse", "int",
    "a", "x", "load", "save", "file", "name", "größe", "naïve", "ü", "café",
]


def sample(rng):
    return " ".join(rng.choice(VOCAB) for _ in range(rng.randint(1, 5)))


def main():
    rng = random.Random(20240611)
    pairs = [
        ("get get get get orange", "get apple"),
        ("count lines", "lines count"),
        ("get apple", "get apple"),
        ("a", "x"),
        ("x", "x y"),
        ("to string", "string"),
    ]
    while len(pairs) < 50:
        hyp, ref = sample(rng), sample(rng)
        if rng.random() < 0.3:
            ref = hyp if rng.random() < 0.3 else " ".join(reversed(hyp.split()))
        pairs.append((hyp, ref))
    metric = CHRF(char_order=6, word_order=0, beta=2, whitespace=True, eps_smoothing=False)
    out = {
        "reference": f"sacrebleu {sacrebleu.__version__} CHRF(char_order=6, word_order=0, beta=2, "
        "whitespace=True, eps_smoothing=False), score / 100",
        "pairs": [
            {"hypothesis": h, "reference": r, "chrf": metric.sentence_score(h, [r]).score / 100}
            for h, r in pairs
        ],
    }
    print(json.dumps(out, indent=1, ensure_ascii=False))


if __name__ == "__main__":
    main()
