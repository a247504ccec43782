"""Seed-reproducible random structures for property suites and search.

All randomness flows through an explicit random.Random so that identical
arguments always produce identical objects; suites derive one seed per
trial so every failure replays in isolation.
"""

from __future__ import annotations

import random
from typing import Optional, Sequence

from ..relcore import Atom, Const, Database, Fact, Query, Schema, ValidationError

__all__ = ["derive_seed", "random_database", "random_query"]


def derive_seed(seed: int, trial: int) -> int:
    """Per-trial seed; spacing keeps neighboring streams uncorrelated."""
    return seed * 1_000_003 + trial


def _all_tuples(elements: Sequence[str], arity: int):
    if arity == 0:
        yield ()
        return
    for rest in _all_tuples(elements, arity - 1):
        for e in elements:
            yield rest + (e,)


def random_database(
    schema: Schema,
    domain_size: int,
    density: float,
    seed: int,
    nontrivial: bool = True,
) -> Database:
    """Each possible fact independently with probability density.

    Elements are e1..eN; with nontrivial=True the two distinguished
    constants go to e1 and e2 (so the result is non-trivial by
    construction), and that requires a domain of at least two.
    """
    if not 0.0 <= density <= 1.0:
        raise ValidationError(f"density must be in [0,1], got {density}")
    if domain_size < 1:
        raise ValidationError(f"domain_size must be >= 1, got {domain_size}")
    if nontrivial and domain_size < 2:
        raise ValidationError("a non-trivial database needs at least two elements")
    rng = random.Random(seed)
    elements = tuple(f"e{i}" for i in range(1, domain_size + 1))
    facts = []
    for rel, arity in schema.relations:
        for t in _all_tuples(elements, arity):
            if rng.random() < density:
                facts.append(Fact(rel, t))
    interp = {"mars": "e1", "venus": "e2"} if nontrivial else {}
    return Database(schema, frozenset(elements), frozenset(facts), interp)


def random_query(
    schema: Schema,
    max_vars: int,
    max_atoms: int,
    seed: int,
    allow_inequalities: bool = True,
    allow_constants: bool = False,
) -> Query:
    """Small random query over the given schema.

    Terms are drawn from v1..v<max_vars> (every query gets at least one
    variable in play) and, when allowed, the schema's constants.
    """
    rng = random.Random(seed)
    n_vars = rng.randint(1, max_vars)
    variables = [f"v{i}" for i in range(1, n_vars + 1)]
    terms: list = list(variables)
    if allow_constants:
        terms += [Const(c) for c in schema.constants]

    def pick_term():
        return rng.choice(terms)

    atoms = []
    rels = list(schema.relations)
    for _ in range(rng.randint(0, max_atoms)):
        rel, arity = rng.choice(rels)
        atoms.append(Atom(rel, tuple(pick_term() for _ in range(arity))))
    neqs = []
    if allow_inequalities and rng.random() < 0.5:
        for _ in range(rng.randint(1, 2)):
            t1, t2 = pick_term(), pick_term()
            if t1 != t2:
                neqs.append((t1, t2))
    return Query(schema, tuple(atoms), tuple(neqs))
