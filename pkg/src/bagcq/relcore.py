"""Core relational data model.

Schemas, conjunctive queries (relational atoms plus inequality constraints),
databases (finite relational structures with named constants), canonical
structures, and the non-triviality test on the two distinguished constants.

All values are immutable after construction; every operation is a pure
function, so everything here is safe for concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Mapping, Union

MARS = "mars"
VENUS = "venus"


class ValidationError(ValueError):
    """A value violates a structural invariant."""


class SchemaMismatchError(ValidationError):
    """A query or database refers to a relation the schema does not declare."""


class UninterpretedConstantError(ValidationError):
    """A query uses a constant the target database does not interpret."""


class MalformedDatabaseError(ValidationError):
    """A database lacks structure an operation requires (e.g. mars/venus)."""


@dataclass(frozen=True, order=True)
class Const:
    """A constant symbol used as a query term (distinct from any variable)."""

    name: str


# A term is a variable name (plain string) or a constant symbol.
Term = Union[str, Const]


def term_key(t: Term) -> tuple[int, str]:
    """Deterministic sort key over mixed variable/constant terms."""
    return (1, t.name) if isinstance(t, Const) else (0, t)


def is_var(t: Term) -> bool:
    return isinstance(t, str)


@dataclass(frozen=True)
class Atom:
    """One relational atom: relation symbol applied to terms."""

    relation: str
    args: tuple[Term, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class Schema:
    """Relation declarations plus the constant vocabulary.

    The constant list always contains the two distinguished constants
    ``mars`` and ``venus``; relations are kept sorted by name so equal
    schemas compare equal regardless of declaration order.
    """

    relations: tuple[tuple[str, int], ...] = ()
    constants: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        pairs = self.relations.items() if isinstance(self.relations, Mapping) else self.relations
        rels = sorted(tuple(pairs))
        names = [r for r, _ in rels]
        if len(set(names)) != len(names):
            raise ValidationError(f"duplicate relation names in {names}")
        for r, ar in rels:
            if ar < 1:
                raise ValidationError(f"relation {r} has arity {ar} < 1")
        extra = sorted(set(self.constants) - {MARS, VENUS})
        object.__setattr__(self, "relations", tuple(rels))
        object.__setattr__(self, "constants", (MARS, VENUS, *extra))

    @cached_property
    def _arities(self) -> Mapping[str, int]:
        return MappingProxyType(dict(self.relations))

    def arity(self, relation: str) -> int:
        try:
            return self._arities[relation]
        except KeyError:
            raise SchemaMismatchError(f"relation {relation} not declared") from None

    def has_relation(self, relation: str) -> bool:
        return relation in self._arities

    def merge(self, other: Schema) -> Schema:
        """Union of two schemas; same-name relations must agree on arity."""
        rels = dict(self.relations)
        for r, ar in other.relations:
            if rels.setdefault(r, ar) != ar:
                raise SchemaMismatchError(
                    f"relation {r} declared with arities {rels[r]} and {ar}"
                )
        return Schema(tuple(rels.items()), self.constants + other.constants)


@dataclass(frozen=True)
class Query:
    """A boolean conjunctive query, possibly with inequality constraints.

    Atoms are deduplicated preserving first occurrence (conjunction is
    idempotent); inequalities are unordered term pairs, normalized and
    deduplicated the same way.  A query doubles as its own canonical
    structure via :func:`canonical_structure`.
    """

    schema: Schema
    atoms: tuple[Atom, ...] = ()
    inequalities: tuple[tuple[Term, Term], ...] = ()

    def __post_init__(self) -> None:
        seen: dict[Atom, None] = {}
        for a in self.atoms:
            if not isinstance(a, Atom):
                raise ValidationError(f"expected Atom, got {a!r}")
            if self.schema.arity(a.relation) != len(a.args):
                raise ValidationError(
                    f"atom {a.relation}/{len(a.args)} does not match declared arity "
                    f"{self.schema.arity(a.relation)}"
                )
            for t in a.args:
                self._check_term(t)
            seen.setdefault(a)
        pairs: dict[tuple[Term, Term], None] = {}
        for pair in self.inequalities:
            t1, t2 = pair
            self._check_term(t1)
            self._check_term(t2)
            t1, t2 = sorted((t1, t2), key=term_key)
            pairs.setdefault((t1, t2))
        object.__setattr__(self, "atoms", tuple(seen))
        object.__setattr__(self, "inequalities", tuple(pairs))

    def _check_term(self, t: Term) -> None:
        if isinstance(t, Const):
            if t.name not in self.schema.constants:
                raise ValidationError(f"constant {t.name} not in schema constants")
        elif isinstance(t, str):
            # Variables may not shadow constant names; keeps canonical
            # structures unambiguous.
            if t in self.schema.constants:
                raise ValidationError(f"variable {t!r} shadows a schema constant")
        else:
            raise ValidationError(f"bad term {t!r}")

    @cached_property
    def variables(self) -> tuple[str, ...]:
        """Var(q), sorted."""
        vs = {t for a in self.atoms for t in a.args if is_var(t)}
        for t1, t2 in self.inequalities:
            vs.update(t for t in (t1, t2) if is_var(t))
        return tuple(sorted(vs))

    @cached_property
    def constants_used(self) -> tuple[str, ...]:
        cs = {t.name for a in self.atoms for t in a.args if isinstance(t, Const)}
        for t1, t2 in self.inequalities:
            cs.update(t.name for t in (t1, t2) if isinstance(t, Const))
        return tuple(sorted(cs))


@dataclass(frozen=True)
class Fact:
    """One tuple of a relation in a database."""

    relation: str
    elements: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(self.elements))


@dataclass(frozen=True)
class Database:
    """A finite relational structure.

    ``const_interp`` maps constant names to elements and may be
    non-injective (two constants naming one element is how constant
    aliasing is represented).
    """

    schema: Schema
    elements: frozenset[str] = frozenset()
    facts: frozenset[Fact] = frozenset()
    const_interp: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        elems = frozenset(self.elements)
        facts = frozenset(self.facts)
        for f in facts:
            if self.schema.arity(f.relation) != len(f.elements):
                raise ValidationError(
                    f"fact {f.relation}{f.elements} does not match declared arity"
                )
            for e in f.elements:
                if e not in elems:
                    raise ValidationError(f"fact uses unknown element {e!r}")
        interp = dict(self.const_interp)
        for c, e in interp.items():
            if c not in self.schema.constants:
                raise ValidationError(f"interpretation of undeclared constant {c!r}")
            if e not in elems:
                raise ValidationError(f"constant {c} interpreted as unknown element {e!r}")
        object.__setattr__(self, "elements", elems)
        object.__setattr__(self, "facts", facts)
        object.__setattr__(self, "const_interp", MappingProxyType(interp))

    @cached_property
    def facts_by_relation(self) -> Mapping[str, tuple[tuple[str, ...], ...]]:
        by: dict[str, list[tuple[str, ...]]] = {}
        for f in self.facts:
            by.setdefault(f.relation, []).append(f.elements)
        return MappingProxyType({r: tuple(sorted(ts)) for r, ts in by.items()})


def canonical_structure(q: Query) -> Database:
    """The database whose elements are q's variables/constants and whose
    facts are q's atoms.  Inequality constraints carry no facts and are
    dropped; the constant interpretation is injective by construction.
    """
    interp = {c: c for c in q.constants_used}
    elements = set(q.variables) | set(interp)
    facts = {
        Fact(a.relation, tuple(t.name if isinstance(t, Const) else t for t in a.args))
        for a in q.atoms
    }
    return Database(q.schema, frozenset(elements), frozenset(facts), interp)


def is_nontrivial(d: Database) -> bool:
    """True iff the database interprets mars and venus as distinct elements."""
    try:
        return d.const_interp[MARS] != d.const_interp[VENUS]
    except KeyError as missing:
        raise MalformedDatabaseError(f"constant {missing} is not interpreted") from None


def union_databases(d1: Database, d2: Database, schema: Schema | None = None) -> Database:
    """Union by element name: elements, facts and interpretations merged.

    Interpretations must agree on shared constants.  Pass a schema to
    override the default merge of the two input schemas.
    """
    sch = schema if schema is not None else d1.schema.merge(d2.schema)
    interp = dict(d1.const_interp)
    for c, e in d2.const_interp.items():
        if interp.setdefault(c, e) != e:
            raise ValidationError(f"conflicting interpretations of constant {c}")
    return Database(sch, d1.elements | d2.elements, d1.facts | d2.facts, interp)


def map_elements(d: Database, mapping: Mapping[str, str]) -> Database:
    """Rename (and possibly merge) elements; facts and interpretations follow.

    Elements not mentioned in the mapping are kept as-is.
    """
    def m(e: str) -> str:
        return mapping.get(e, e)

    facts = {Fact(f.relation, tuple(m(e) for e in f.elements)) for f in d.facts}
    interp = {c: m(e) for c, e in d.const_interp.items()}
    return Database(d.schema, frozenset(m(e) for e in d.elements), frozenset(facts), interp)
