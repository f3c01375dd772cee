from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Mapping, Tuple


class StructureError(ValueError):
    pass


@dataclass(frozen=True)
class Relation:
    name: str
    arity: int
    tuples: FrozenSet[Tuple[int, ...]] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, 'tuples', frozenset(tuple(t) for t in self.tuples))
        for values in self.tuples:
            if len(values) != self.arity:
                raise StructureError(
                    f"Relation {self.name}/{self.arity} contains tuple {values} of wrong length"
                )

    def __contains__(self, values) -> bool:
        return tuple(values) in self.tuples


@dataclass(frozen=True)
class Structure:
    """
    A finite relational structure over the domain {0, ..., size - 1}.

    Relations and constants are stored as sorted tuples so that two equal
    structures compare and hash equal.
    """
    size: int
    relations: Tuple[Relation, ...] = ()
    constants: Tuple[Tuple[str, int], ...] = field(default=())

    def __post_init__(self):
        if self.size < 1:
            raise StructureError(f"Structure domain must have at least one element, got {self.size}")
        relations = tuple(sorted(self.relations, key=lambda r: r.name))
        constants = tuple(sorted(dict(self.constants).items()))
        object.__setattr__(self, 'relations', relations)
        object.__setattr__(self, 'constants', constants)

        names = [relation.name for relation in relations]
        if len(set(names)) != len(names):
            raise StructureError(f"Duplicate relation names in {names}")
        for relation in relations:
            for values in relation.tuples:
                if any(not 0 <= value < self.size for value in values):
                    raise StructureError(
                        f"Relation {relation.name} has tuple {values} outside domain of size {self.size}"
                    )
        for name, value in constants:
            if not 0 <= value < self.size:
                raise StructureError(f"Constant {name} = {value} outside domain of size {self.size}")

    @classmethod
    def build(
        cls,
        size: int,
        relations: Mapping[str, Tuple[int, Iterable]] = None,
        constants: Mapping[str, int] = None,
    ) -> 'Structure':
        """Build from {name: (arity, tuples)} and {name: element} mappings."""
        return cls(
            size,
            tuple(Relation(name, arity, tuples) for name, (arity, tuples) in (relations or {}).items()),
            tuple((constants or {}).items()),
        )

    @property
    def domain(self) -> range:
        return range(self.size)

    @cached_property
    def relation_map(self) -> Dict[str, Relation]:
        return {relation.name: relation for relation in self.relations}

    @cached_property
    def constant_map(self) -> Dict[str, int]:
        return dict(self.constants)

    def relation(self, name: str) -> Relation:
        try:
            return self.relation_map[name]
        except KeyError:
            raise StructureError(f"Structure has no relation named {name}") from None

    def holds(self, name: str, values: Tuple[int, ...]) -> bool:
        relation = self.relation(name)
        if len(values) != relation.arity:
            raise StructureError(
                f"Relation {name} has arity {relation.arity}, applied to {len(values)} arguments"
            )
        return values in relation.tuples

    def __str__(self):
        parts = [f"domain={self.size}"]
        parts += [f"{r.name}/{r.arity}={sorted(r.tuples)}" for r in self.relations]
        parts += [f"{name}={value}" for name, value in self.constants]
        return ' '.join(parts)
