"""Valuations, teams, and team families over finite variable sets.

A valuation over variables ``N`` is stored as an integer bit pattern:
bit ``i`` is the value on ``N[i]``.  A team is then a bitmask over the
``2^|N|`` possible patterns, bit ``pattern`` recording membership.  This
gives order-independent equality, O(1) set algebra, and a canonical
enumeration order (by cardinality, then by mask).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .errors import CapExceededError, ValidationError
from .formulas import Variable

# Teams are double-exponential objects; beyond this many variables even a
# single full team mask is unreasonably large.
MAX_TEAM_VARS = 24

TEAM_ENUM_CAP = 4
FAMILY_ENUM_CAP = 2


@dataclass(frozen=True)
class VarSet:
    """Ordered, duplicate-free tuple of variables; the order fixes bit positions."""

    vars: tuple[Variable, ...]

    def __post_init__(self):
        if len(set(self.vars)) != len(self.vars):
            raise ValidationError("duplicate variables in variable set")

    @classmethod
    def of(cls, *names: str) -> "VarSet":
        return cls.from_names(names)

    @classmethod
    def from_names(cls, names: Iterable[str]) -> "VarSet":
        return cls(tuple(sorted(set(Variable(n) for n in names))))

    @classmethod
    def from_variables(cls, variables: Iterable[Variable]) -> "VarSet":
        return cls(tuple(sorted(set(variables))))

    def names(self) -> list[str]:
        return [v.name for v in self.vars]

    def index(self, var: Variable) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise ValidationError(f"variable {var.name!r} not in variable set") from None

    def union(self, other: "VarSet") -> "VarSet":
        return VarSet.from_variables(self.vars + other.vars)

    def is_subset(self, other: "VarSet") -> bool:
        return set(self.vars) <= set(other.vars)

    def __len__(self) -> int:
        return len(self.vars)

    def __iter__(self) -> Iterator[Variable]:
        return iter(self.vars)

    def __contains__(self, var: Variable) -> bool:
        return var in self.vars


@dataclass(frozen=True)
class Valuation:
    """One row of a team: a bit per variable."""

    vars: VarSet
    bits: int

    def __post_init__(self):
        if not 0 <= self.bits < (1 << len(self.vars)):
            raise ValidationError("valuation bits out of range for the variable set")

    @classmethod
    def from_row(cls, vars: VarSet, row: Iterable[int]) -> "Valuation":
        row = list(row)
        if len(row) != len(vars):
            raise ValidationError(f"row length {len(row)} does not match {len(vars)} variables")
        bits = 0
        for i, cell in enumerate(row):
            if cell not in (0, 1):
                raise ValidationError(f"valuation entries must be 0 or 1, got {cell!r}")
            bits |= cell << i
        return cls(vars, bits)

    def value(self, var: Variable) -> int:
        return (self.bits >> self.vars.index(var)) & 1

    def row(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(len(self.vars))]

    def restrict(self, sub: VarSet) -> "Valuation":
        bits = 0
        for i, var in enumerate(sub):
            bits |= self.value(var) << i
        return Valuation(sub, bits)


def _guard_width(vars: VarSet) -> None:
    if len(vars) > MAX_TEAM_VARS:
        raise CapExceededError(
            f"teams over more than {MAX_TEAM_VARS} variables are not supported"
        )


@dataclass(frozen=True)
class Team:
    """A set of valuations over a shared variable set, as a pattern bitmask."""

    vars: VarSet
    mask: int

    def __post_init__(self):
        _guard_width(self.vars)
        if not 0 <= self.mask < (1 << (1 << len(self.vars))):
            raise ValidationError("team mask out of range for the variable set")

    @classmethod
    def empty(cls, vars: VarSet) -> "Team":
        return cls(vars, 0)

    @classmethod
    def from_valuations(cls, vars: VarSet, valuations: Iterable[Valuation]) -> "Team":
        mask = 0
        for v in valuations:
            if v.vars != vars:
                raise ValidationError("valuation variable set does not match the team's")
            mask |= 1 << v.bits
        return cls(vars, mask)

    @classmethod
    def from_rows(cls, vars: VarSet, rows: Iterable[Iterable[int]]) -> "Team":
        mask = 0
        for row in rows:
            bit = 1 << Valuation.from_row(vars, row).bits
            if mask & bit:
                raise ValidationError(f"duplicated row {list(row)}")
            mask |= bit
        return cls(vars, mask)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    @property
    def is_empty(self) -> bool:
        return self.mask == 0

    def members(self) -> list[Valuation]:
        """Valuations in ascending pattern order."""
        out = []
        m = self.mask
        while m:
            low = m & -m
            out.append(Valuation(self.vars, low.bit_length() - 1))
            m ^= low
        return out

    def rows(self) -> list[list[int]]:
        return [v.row() for v in self.members()]

    def __contains__(self, valuation: Valuation) -> bool:
        return valuation.vars == self.vars and bool(self.mask >> valuation.bits & 1)

    def is_subteam_of(self, other: "Team") -> bool:
        self._same_vars(other)
        return self.mask & ~other.mask == 0

    def union(self, other: "Team") -> "Team":
        self._same_vars(other)
        return Team(self.vars, self.mask | other.mask)

    def intersection(self, other: "Team") -> "Team":
        self._same_vars(other)
        return Team(self.vars, self.mask & other.mask)

    def difference(self, other: "Team") -> "Team":
        self._same_vars(other)
        return Team(self.vars, self.mask & ~other.mask)

    def _same_vars(self, other: "Team") -> None:
        if self.vars != other.vars:
            raise ValidationError("teams are over different variable sets")

    def restrict(self, sub: VarSet) -> "Team":
        """Pointwise restriction; duplicate restricted rows collapse."""
        if not sub.is_subset(self.vars):
            raise ValidationError("restriction target is not a subset of the team's variables")
        positions = [self.vars.index(v) for v in sub]
        out = 0
        m = self.mask
        while m:
            low = m & -m
            pattern = low.bit_length() - 1
            out |= 1 << sum(((pattern >> p) & 1) << i for i, p in enumerate(positions))
            m ^= low
        return Team(sub, out)

    def sort_key(self) -> tuple[int, int]:
        return (self.size, self.mask)

    def to_json(self) -> dict:
        return {"vars": self.vars.names(), "team": self.rows()}

    @classmethod
    def from_json(cls, obj: dict) -> "Team":
        if not isinstance(obj, dict) or "vars" not in obj or "team" not in obj:
            raise ValidationError('team JSON must be {"vars": [...], "team": [[...], ...]}')
        vars = VarSet(tuple(Variable(n) for n in obj["vars"]))
        return cls.from_rows(vars, obj["team"])


def full_team(vars: VarSet) -> Team:
    """The team of all ``2^|vars|`` valuations.  For an empty variable set
    this is the singleton of the empty valuation."""
    _guard_width(vars)
    return Team(vars, (1 << (1 << len(vars))) - 1)


def restrict(team: Team, sub: VarSet) -> Team:
    return team.restrict(sub)


def enumerate_teams(vars: VarSet, cap: int = TEAM_ENUM_CAP) -> Iterator[Team]:
    """All ``2^(2^|vars|)`` teams, smallest cardinality first, then by mask."""
    if len(vars) > cap:
        raise CapExceededError(
            f"enumerating teams over {len(vars)} variables exceeds the cap of {cap}"
        )
    npat = 1 << len(vars)
    masks = sorted(range(1 << npat), key=lambda m: (m.bit_count(), m))
    for m in masks:
        yield Team(vars, m)


@dataclass(frozen=True)
class TeamFamily:
    """A set of teams over a fixed variable set."""

    vars: VarSet
    masks: frozenset[int]

    def __post_init__(self):
        _guard_width(self.vars)
        limit = 1 << (1 << len(self.vars))
        for m in self.masks:
            if not 0 <= m < limit:
                raise ValidationError("family contains a team mask out of range")

    @classmethod
    def from_teams(cls, teams: Iterable[Team], vars: Optional[VarSet] = None) -> "TeamFamily":
        teams = list(teams)
        if vars is None:
            if not teams:
                raise ValidationError("cannot infer the variable set of an empty family")
            vars = teams[0].vars
        for t in teams:
            if t.vars != vars:
                raise ValidationError("family teams are over different variable sets")
        return cls(vars, frozenset(t.mask for t in teams))

    def teams(self) -> list[Team]:
        return [Team(self.vars, m) for m in sorted(self.masks, key=lambda m: (m.bit_count(), m))]

    def __len__(self) -> int:
        return len(self.masks)

    def __contains__(self, team: Team) -> bool:
        return team.vars == self.vars and team.mask in self.masks

    def maximal_teams(self) -> list[Team]:
        """Members with no strict superset in the family, in canonical order."""
        out = []
        for m in self.masks:
            if not any(m != other and m & ~other == 0 for other in self.masks):
                out.append(m)
        return [Team(self.vars, m) for m in sorted(out, key=lambda m: (m.bit_count(), m))]

    def to_json(self) -> dict:
        return {"vars": self.vars.names(), "teams": [t.rows() for t in self.teams()]}

    @classmethod
    def from_json(cls, obj: dict) -> "TeamFamily":
        if not isinstance(obj, dict) or "vars" not in obj or "teams" not in obj:
            raise ValidationError('family JSON must be {"vars": [...], "teams": [[[...]], ...]}')
        vars = VarSet(tuple(Variable(n) for n in obj["vars"]))
        return cls.from_teams([Team.from_rows(vars, rows) for rows in obj["teams"]], vars)


def is_downward_closed(family: TeamFamily) -> bool:
    """True iff the family contains the empty team and every subteam of
    every member."""
    if 0 not in family.masks:
        return False
    for m in family.masks:
        s = m
        while True:
            if s not in family.masks:
                return False
            if s == 0:
                break
            s = (s - 1) & m
    return True


def enumerate_downward_closed_families(
    vars: VarSet, cap: int = FAMILY_ENUM_CAP
) -> Iterator[TeamFamily]:
    """All families over ``vars`` that contain the empty team and are closed
    under subteams, in ascending order of their membership indicator."""
    if len(vars) > cap:
        raise CapExceededError(
            f"enumerating families over {len(vars)} variables exceeds the cap of {cap}"
        )
    npat = 1 << len(vars)
    nteams = 1 << npat
    for indicator in range(1 << nteams):
        if not indicator & 1:  # empty team missing
            continue
        member_masks = [m for m in range(nteams) if indicator >> m & 1]
        ok = True
        for m in member_masks:
            s = m
            while ok:
                if not indicator >> s & 1:
                    ok = False
                    break
                if s == 0:
                    break
                s = (s - 1) & m
            if not ok:
                break
        if ok:
            yield TeamFamily(vars, frozenset(member_masks))
