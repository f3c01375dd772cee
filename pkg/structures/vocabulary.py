from dataclasses import dataclass
from typing import Iterable, Tuple

from structures.structure import StructureError
from syntax.analysis import predicates
from syntax.formula import Formula


@dataclass(frozen=True)
class Vocabulary:
    """Relation symbols with arities, and constant symbols."""
    relations: Tuple[Tuple[str, int], ...] = ()
    constants: Tuple[str, ...] = ()

    def __post_init__(self):
        relations = dict()
        for name, arity in self.relations:
            if relations.setdefault(name, arity) != arity:
                raise StructureError(f"Relation {name} declared with arities {relations[name]} and {arity}")
            if arity < 1:
                raise StructureError(f"Relation {name} needs a positive arity, got {arity}")
        object.__setattr__(self, 'relations', tuple(sorted(relations.items())))
        object.__setattr__(self, 'constants', tuple(sorted(set(self.constants))))

    def merge(self, other: 'Vocabulary') -> 'Vocabulary':
        return Vocabulary(self.relations + other.relations, self.constants + other.constants)

    def __str__(self):
        items = [f"{name}/{arity}" for name, arity in self.relations] + list(self.constants)
        return ','.join(items)


def parse_vocabulary(text: str) -> Vocabulary:
    """
    Parse a vocabulary such as "P/1,E/2,c": relation symbols carry an arity,
    bare names are constants. An empty string is the empty vocabulary.
    """
    relations, constants = [], []
    for item in (part.strip() for part in text.split(',')):
        if not item:
            continue
        if '/' in item:
            name, _, arity = item.partition('/')
            if not name.strip() or not arity.strip().isdigit():
                raise StructureError(f"Invalid vocabulary item: {item!r}")
            relations.append((name.strip(), int(arity)))
        else:
            constants.append(item)
    return Vocabulary(tuple(relations), tuple(constants))


def infer_vocabulary(formulas: Iterable[Formula]) -> Vocabulary:
    """The relation symbols the formulas use."""
    try:
        return Vocabulary(tuple(predicates(formulas).items()))
    except ValueError as exc:
        raise StructureError(str(exc)) from exc
