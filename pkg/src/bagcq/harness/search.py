"""Counterexample search for declared multiplication triples.

A triple (c, phi_s, phi_b) claims that c * phi_s(D) <= phi_b(D) on every
non-trivial database.  The searcher hunts for a violating D, either by
sampling random databases or by exhausting small fact sets, and shrinks
any hit to a minimal witness by greedy fact removal.

Checks that need a rational factor q = num/den use `rhs_scale`:
violation of num * s <= den * b is searched as (c=num, rhs_scale=den).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Optional

from ..counts import Count, compare_counts
from ..qalgebra import QueryExpr, eval_expr, expr_schema
from ..relcore import MARS, VENUS, Database, Fact, Schema, ValidationError, is_nontrivial
from .generators import derive_seed, random_database

__all__ = ["SearchConfig", "search_counterexample"]


@dataclass(frozen=True)
class SearchConfig:
    max_domain: int = 3
    trials: int = 2000
    seed: int = 0
    mode: str = "random"
    max_states: int = 200_000

    def __post_init__(self) -> None:
        if self.mode not in ("random", "exhaustive"):
            raise ValidationError(f"unknown search mode {self.mode!r}")
        if self.max_domain < 2:
            raise ValidationError("searching needs at least two elements")


def _canonical_interp(schema: Schema, elements: tuple[str, ...]) -> dict[str, str]:
    # mars/venus pinned apart keeps every candidate non-trivial; remaining
    # constants rotate through the domain deterministically.
    interp: dict[str, str] = {}
    spare = 0
    for name in schema.constants:
        if name == MARS:
            interp[name] = elements[0]
        elif name == VENUS:
            interp[name] = elements[1]
        else:
            interp[name] = elements[spare % len(elements)]
            spare += 1
    return interp


def _minimize(d: Database, violates: Callable[[Database], bool]) -> Database:
    shrunk = True
    while shrunk:
        shrunk = False
        for f in sorted(d.facts, key=lambda f: (f.relation, f.elements)):
            smaller = Database(
                d.schema, d.elements, d.facts - {f}, dict(d.const_interp)
            )
            if is_nontrivial(smaller) and violates(smaller):
                d = smaller
                shrunk = True
                break
    return d


def search_counterexample(
    c: Count,
    phi_s: QueryExpr,
    phi_b: QueryExpr,
    cfg: SearchConfig,
    rhs_scale: Count = Count.of(1),
) -> Optional[Database]:
    """Return a minimal violating database, or None if the search found none."""
    schema = expr_schema(phi_s).merge(expr_schema(phi_b))

    def violates(d: Database) -> bool:
        lhs = c * eval_expr(phi_s, d)
        rhs = rhs_scale * eval_expr(phi_b, d)
        return compare_counts(lhs, rhs) == "greater"

    if cfg.mode == "exhaustive":
        states = 0
        for n in range(2, cfg.max_domain + 1):
            elements = tuple(f"e{i}" for i in range(1, n + 1))
            interp = _canonical_interp(schema, elements)
            all_facts = [
                Fact(rel, t)
                for rel, arity in schema.relations
                for t in itertools.product(elements, repeat=arity)
            ]
            top = 1 << len(all_facts) if len(all_facts) < 60 else None
            mask = 0
            while (top is None or mask < top) and states < cfg.max_states:
                facts = frozenset(
                    f for i, f in enumerate(all_facts) if mask >> i & 1
                )
                d = Database(schema, frozenset(elements), facts, dict(interp))
                states += 1
                if is_nontrivial(d) and violates(d):
                    return _minimize(d, violates)
                mask += 1
            if states >= cfg.max_states:
                break
        return None

    for trial in range(cfg.trials):
        rng = random.Random(derive_seed(cfg.seed, trial))
        size = rng.randint(2, cfg.max_domain)
        density = 0.1 + 0.8 * rng.random()
        d = random_database(schema, size, density, rng.randrange(1 << 31))
        elements = sorted(d.elements)
        interp = dict(d.const_interp)
        for name in schema.constants:
            if name not in interp:
                interp[name] = rng.choice(elements)
        d = Database(d.schema, d.elements, d.facts, interp)
        if violates(d):
            return _minimize(d, violates)
    return None
