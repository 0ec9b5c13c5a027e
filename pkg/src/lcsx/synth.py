"""Synthetic collection generator.

Stands in for real (non-redistributable) catalog data: topic popularity
follows a power law and a configurable share of topics carries multiple
broader terms, which is what drives copy redundancy in the unfolded tree.
Deterministic for a given seed.
"""

from __future__ import annotations

import random

from .ingest.records import AuthorityRecord, BibRecord


def generate_collection(
    n_topics: int = 400,
    n_records: int = 600,
    seed: int = 0,
    multi_parent_fraction: float = 0.35,
    zipf_exponent: float = 1.1,
    max_subjects: int = 4,
    root_topics: int = 4,
) -> tuple[list[AuthorityRecord], list[BibRecord]]:
    """Build an authority hierarchy plus bib records assigned to it.

    Topics are created oldest-first; parents are drawn from earlier topics
    (biased toward recent ones, which deepens the hierarchy), so the broader
    relation is acyclic by construction. Every topic is assignable; record
    subjects are sampled with probability proportional to 1/rank^exponent.
    """
    rng = random.Random(seed)
    names = [f"Topic {i:04d}" for i in range(1, n_topics + 1)]

    auths: list[AuthorityRecord] = []
    for i, name in enumerate(names):
        broader: list[str] = []
        if i >= root_topics:
            n_parents = 1
            if rng.random() < multi_parent_fraction:
                n_parents = rng.choice((2, 2, 3))
            # bias toward recent topics: sample from the trailing window
            window = max(1, min(i, 25))
            pool = list(range(i - window, i))
            rng.shuffle(pool)
            broader = [names[p] for p in sorted(pool[:n_parents])]
        auths.append(AuthorityRecord(id=f"auth-{i + 1:05d}", heading=name, broader=broader))

    weights = [1.0 / (rank**zipf_exponent) for rank in range(1, n_topics + 1)]
    bibs: list[BibRecord] = []
    for j in range(1, n_records + 1):
        k = rng.randint(1, max_subjects)
        subjects: list[str] = []
        seen: set[str] = set()
        for name in rng.choices(names, weights=weights, k=k):
            if name not in seen:
                seen.add(name)
                subjects.append(name)
        bibs.append(
            BibRecord(
                id=f"rec-{j:05d}",
                title=f"Studies in {subjects[0].lower()} ({j})",
                year=1950 + rng.randint(0, 70),
                subjects=subjects,
            )
        )
    return auths, bibs
