from collections import defaultdict

from structures.structure import Structure
from structures.team import Team
from syntax.formula import DepAtom, Formula, IncAtom, IndAtom, NotAnAtomError


def dependence_holds(team: Team, condition, determined: str) -> bool:
    """Any two assignments that agree on condition agree on determined."""
    cond = team.positions(condition)
    target = team.positions([determined])[0]
    seen = {}
    for row in team.rows:
        key = tuple(row[i] for i in cond)
        if seen.setdefault(key, row[target]) != row[target]:
            return False
    return True


def independence_holds(team: Team, condition, left, right) -> bool:
    """
    For assignments s, s' agreeing on condition there is s'' with
    s''(condition left right) = s(condition left) s'(right).
    """
    cond, lpos, rpos = team.positions(condition), team.positions(left), team.positions(right)
    combined = set()
    lefts, rights = defaultdict(set), defaultdict(set)
    for row in team.rows:
        key = tuple(row[i] for i in cond)
        lvals = tuple(row[i] for i in lpos)
        rvals = tuple(row[i] for i in rpos)
        combined.add((key, lvals, rvals))
        lefts[key].add(lvals)
        rights[key].add(rvals)
    return all(
        (key, lvals, rvals) in combined
        for key in lefts
        for lvals in lefts[key]
        for rvals in rights[key]
    )


def inclusion_holds(team: Team, left, right) -> bool:
    """X(left) ⊆ X(right)."""
    lpos, rpos = team.positions(left), team.positions(right)
    available = {tuple(row[i] for i in rpos) for row in team.rows}
    return all(tuple(row[i] for i in lpos) in available for row in team.rows)


def evaluate_atom(structure: Structure, team: Team, atom: Formula) -> bool:
    """
    Decide a dependence, independence or inclusion atom on a team.

    The structure does not influence these atoms; it is accepted so every
    evaluation entry point has the same shape.

    Raises:
        TeamError: If the atom mentions a variable outside the team domain
        NotAnAtomError: If the formula is not one of the three atoms
    """
    if isinstance(atom, DepAtom):
        return dependence_holds(team, atom.condition, atom.determined)
    if isinstance(atom, IndAtom):
        return independence_holds(team, atom.condition, atom.left, atom.right)
    if isinstance(atom, IncAtom):
        return inclusion_holds(team, atom.left, atom.right)
    raise NotAnAtomError(f"Not a dependence, independence or inclusion atom: {atom!r}")
