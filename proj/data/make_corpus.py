"""Writes the bundled synthetic two-topic corpus.

Each title belongs to one of two categories. Titles mix words from their
category's vocabulary, an occasional planted multiword phrase, generic title
words shared by both categories, and stopwords.
"""

import random
from pathlib import Path

HERE = Path(__file__).resolve().parent

TOPICS = {
    "mining": {
        "words": "clustering classification itemsets sequential graphs outlier "
        "detection streams ensemble kernel features association rules "
        "subspace density boosting bayesian networks".split(),
        "phrases": ["support vector machines", "frequent pattern mining",
                    "decision trees"],
    },
    "databases": {
        "words": "relational indexing storage transactions concurrency recovery "
        "joins optimizer views schema distributed replication xml sql "
        "caching partitioning logging".split(),
        "phrases": ["query processing", "transaction management",
                    "materialized views maintenance"],
    },
}
GENERIC = "novel approach efficient study towards new improved framework method analysis".split()
STOPWORDS = "a an the of for in on with and to using via".split()


def main(seed=7, per_topic=300):
    rng = random.Random(seed)
    titles, categories = [], []
    for name, spec in TOPICS.items():
        for _ in range(per_topic):
            words = rng.sample(spec["words"], rng.randint(2, 3))
            if rng.random() < 0.35:
                words += rng.choice(spec["phrases"]).split()
            if rng.random() < 0.5:
                words.append(rng.choice(GENERIC))
            for _ in range(rng.randint(0, 2)):
                words.insert(rng.randrange(len(words) + 1), rng.choice(STOPWORDS))
            title = " ".join(words)
            titles.append(title[0].upper() + title[1:])
            categories.append(name)
    order = list(range(len(titles)))
    rng.shuffle(order)
    (HERE / "titles.txt").write_text("".join(titles[i] + "\n" for i in order))
    (HERE / "categories.tsv").write_text(
        "doc_id\tcategory\n" + "".join(f"{d}\t{categories[i]}\n" for d, i in enumerate(order)))
    (HERE / "stopwords.txt").write_text("".join(w + "\n" for w in STOPWORDS))


if __name__ == "__main__":
    main()
