"""Team-semantic evaluation and the judgments built on it.

A team satisfies:

* a variable ``p`` when every member maps it to 1, a negated variable
  when every member maps it to 0;
* ``bot`` only when the team is empty, ``top`` always;
* a dependence atom ``=(args; q)`` when members agreeing on all of
  ``args`` agree on ``q``;
* ``a & b`` when it satisfies both sides;
* ``a + b`` when it splits into two (possibly overlapping) subteams
  whose union is the whole team, one satisfying each side;
* ``a | b`` when it satisfies at least one side as a whole;
* ``a -> b`` when every subteam satisfying ``a`` also satisfies ``b``.

Two engines implement this.  ``evaluate`` is the recursive, memoized
transcription of the clauses above, with the tensor clause run as a
complement-split scan: it tries the splits ``(Y, X minus Y)`` over all
subteams ``Y``, which finds a split exactly when an overlapping one
exists because satisfaction here is preserved under shrinking a team.
``truth_set`` and friends instead build, per subformula, a bitmask over
all teams of the variable set at once, using lattice sweeps for the
subteam quantifiers.  The two engines are checked against each other
(and against a naive all-pairs tensor) in the test suite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .errors import CapExceededError, InternalInvariantError, ValidationError
from .formulas import (
    And,
    Bottom,
    Dep,
    Formula,
    IDisj,
    Impl,
    NegVar,
    PosVar,
    Tensor,
    Top,
    Variable,
    is_context,
    to_text,
    variables,
)
from .teams import Team, TeamFamily, VarSet, full_team

DEFAULT_MAX_VARS = 3
HARD_MAX_VARS = 4


def var_set(phi: Formula) -> VarSet:
    """The variables of a formula, as a canonical variable set."""
    return VarSet.from_variables(variables(phi))


def effective_cap(max_vars: int = DEFAULT_MAX_VARS, force: bool = False) -> int:
    """Variable cap for whole-truth-set operations: ``max_vars`` up to a
    default ceiling of 3, or the hard maximum of 4 when forced."""
    return HARD_MAX_VARS if force else min(max_vars, DEFAULT_MAX_VARS)


def _check_cap(n: int, max_vars: int, force: bool, what: str) -> None:
    cap = effective_cap(max_vars, force)
    if n > cap:
        hint = " (force raises it to the hard maximum of 4)" if n <= HARD_MAX_VARS else ""
        raise CapExceededError(f"{what} over {n} variables exceeds the cap of {cap}{hint}")


class EvalSession:
    """Memo shared by repeated evaluations.

    Results are keyed by (subformula occurrence, team mask), so a session
    must only be reused across teams over one variable set.  Memoized and
    unmemoized answers agree; the session only buys speed.
    """

    def __init__(self):
        self.memo: dict[tuple[int, int], bool] = {}
        self.hits = 0
        self.misses = 0
        self._node_ids: dict[int, int] = {}
        self._pins: list[Formula] = []
        self._vars: Optional[VarSet] = None

    def node_id(self, node: Formula) -> int:
        key = id(node)
        nid = self._node_ids.get(key)
        if nid is None:
            nid = len(self._node_ids)
            self._node_ids[key] = nid
            self._pins.append(node)  # keep ids stable while the session lives
        return nid

    @property
    def teams_visited(self) -> int:
        return len(self.memo)

    def bind_vars(self, vars: VarSet) -> None:
        if self._vars is None:
            self._vars = vars
        elif self._vars != vars:
            raise ValidationError("an EvalSession cannot be shared across variable sets")


# Pattern-space constants: for n variables there are 2^n valuation patterns.
# _var_ones(n, i) has bit P set iff pattern P assigns 1 to variable i.
_ones_cache: dict[tuple[int, int], int] = {}


def _var_ones(n: int, i: int) -> int:
    key = (n, i)
    got = _ones_cache.get(key)
    if got is None:
        b = 1 << i
        period = 2 * b
        unit = ((1 << b) - 1) << b
        reps = (1 << n) // period
        got = unit * (((1 << (period * reps)) - 1) // ((1 << period) - 1))
        _ones_cache[key] = got
    return got


def evaluate(phi: Formula, team: Team, session: Optional[EvalSession] = None) -> bool:
    """Whether ``team`` satisfies ``phi`` (which must be placeholder-free
    with all its variables among the team's)."""
    if is_context(phi):
        raise ValidationError("cannot evaluate a context; substitute its placeholders first")
    missing = [v.name for v in variables(phi) if v not in team.vars]
    if missing:
        raise ValidationError(f"free variables outside the team's variable set: {missing}")
    if session is None:
        session = EvalSession()
    session.bind_vars(team.vars)
    n = len(team.vars)
    index_of = {v: i for i, v in enumerate(team.vars)}

    def run(node: Formula, mask: int) -> bool:
        key = (session.node_id(node), mask)
        got = session.memo.get(key)
        if got is not None:
            session.hits += 1
            return got
        session.misses += 1
        out = clause(node, mask)
        session.memo[key] = out
        return out

    def clause(node: Formula, mask: int) -> bool:
        if isinstance(node, PosVar):
            return mask & ~_var_ones(n, index_of[node.var]) == 0
        if isinstance(node, NegVar):
            return mask & _var_ones(n, index_of[node.var]) == 0
        if isinstance(node, Bottom):
            return mask == 0
        if isinstance(node, Top):
            return True
        if isinstance(node, Dep):
            return _dep_holds(node, mask, index_of)
        if isinstance(node, And):
            return run(node.left, mask) and run(node.right, mask)
        if isinstance(node, IDisj):
            return run(node.left, mask) or run(node.right, mask)
        if isinstance(node, Tensor):
            s = mask
            while True:
                if run(node.left, s) and run(node.right, mask ^ s):
                    return True
                if s == 0:
                    return False
                s = (s - 1) & mask
        if isinstance(node, Impl):
            s = mask
            while True:
                if run(node.left, s) and not run(node.right, s):
                    return False
                if s == 0:
                    return True
                s = (s - 1) & mask
        raise InternalInvariantError(f"unknown node {node!r}")

    return run(phi, team.mask)


def _dep_holds(dep: Dep, mask: int, index_of: dict[Variable, int]) -> bool:
    arg_bits = [index_of[a] for a in dep.args]
    target_bit = index_of[dep.target]
    seen: dict[tuple[int, ...], int] = {}
    m = mask
    while m:
        low = m & -m
        pattern = low.bit_length() - 1
        m ^= low
        key = tuple((pattern >> b) & 1 for b in arg_bits)
        tval = (pattern >> target_bit) & 1
        prior = seen.setdefault(key, tval)
        if prior != tval:
            return False
    return True


# --- Indicator engine ----------------------------------------------------
#
# For a variable set with npat = 2^n patterns there are 2^npat teams.  A
# subformula's indicator is an int with bit m set iff the team with mask m
# satisfies it.  Positions are team masks, so "bit j of a position" means
# membership of valuation pattern j, and the subset/superset sweeps below
# are lattice DPs over one membership bit at a time.

_pat0_cache: dict[tuple[int, int], int] = {}


def _pat0(npat: int, j: int) -> int:
    """Positions (team masks) whose bit ``j`` is 0."""
    key = (npat, j)
    got = _pat0_cache.get(key)
    if got is None:
        b = 1 << j
        period = 2 * b
        unit = (1 << b) - 1
        reps = (1 << npat) // period
        got = unit * (((1 << (period * reps)) - 1) // ((1 << period) - 1))
        _pat0_cache[key] = got
    return got


def _superset_or(ind: int, npat: int) -> int:
    """Bit m of the result: some superset of team m has its bit set."""
    for j in range(npat):
        b = 1 << j
        ind |= (ind >> b) & _pat0(npat, j)
    return ind


def _subset_or(ind: int, npat: int) -> int:
    """Bit m of the result: some subteam of team m has its bit set."""
    for j in range(npat):
        b = 1 << j
        ind |= (ind << b) & (_pat0(npat, j) << b)
    return ind


def _strict_superset_or(ind: int, npat: int) -> int:
    closure = _superset_or(ind, npat)
    acc = 0
    for j in range(npat):
        b = 1 << j
        acc |= (closure >> b) & _pat0(npat, j)
    return acc


def _tensor_indicator(left: int, right: int, npat: int) -> int:
    if npat <= 8:
        out = 0
        for m in range(1 << npat):
            s = m
            while True:
                if (left >> s) & 1 and (right >> (m ^ s)) & 1:
                    out |= 1 << m
                    break
                if s == 0:
                    break
                s = (s - 1) & m
        return out
    # Larger pattern spaces: when both operand truth sets are closed under
    # subteams (verified here, cheaply), a team satisfies the tensor iff it
    # is covered by the union of one maximal team per side.
    if _superset_or(left, npat) == left and _superset_or(right, npat) == right:
        max_l = _bit_positions(left & ~_strict_superset_or(left, npat))
        max_r = _bit_positions(right & ~_strict_superset_or(right, npat))
        if len(max_l) * len(max_r) <= 4_000_000:
            seeds = 0
            for a in max_l:
                for b in max_r:
                    seeds |= 1 << (a | b)
            return _superset_or(seeds, npat)
    # Fallback: the exact per-team scan (slow, only reachable behind force).
    out = 0
    for m in range(1 << npat):
        s = m
        while True:
            if (left >> s) & 1 and (right >> (m ^ s)) & 1:
                out |= 1 << m
                break
            if s == 0:
                break
            s = (s - 1) & m
    return out


def _bit_positions(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def _truth_indicator(phi: Formula, vars: VarSet) -> int:
    if is_context(phi):
        raise ValidationError("cannot take the truth set of a context")
    for v in variables(phi):
        if v not in vars:
            raise ValidationError(f"variable {v.name!r} of the formula is outside the given set")
    n = len(vars)
    if n > HARD_MAX_VARS:
        raise CapExceededError(
            f"indicator construction over {n} variables exceeds the hard maximum of {HARD_MAX_VARS}"
        )
    npat = 1 << n
    all_teams = (1 << (1 << npat)) - 1
    index_of = {v: i for i, v in enumerate(vars)}
    memo: dict[int, int] = {}
    pins: list[Formula] = []

    def run(node: Formula) -> int:
        got = memo.get(id(node))
        if got is not None:
            return got
        out = build(node)
        memo[id(node)] = out
        pins.append(node)
        return out

    def build(node: Formula) -> int:
        if isinstance(node, PosVar):
            return _down_set_of(_var_ones(n, index_of[node.var]))
        if isinstance(node, NegVar):
            return _down_set_of(((1 << npat) - 1) ^ _var_ones(n, index_of[node.var]))
        if isinstance(node, Bottom):
            return 1
        if isinstance(node, Top):
            return all_teams
        if isinstance(node, Dep):
            bad = 0
            arg_bits = [index_of[a] for a in node.args]
            target_bit = index_of[node.target]
            for u in range(npat):
                for w in range(u + 1, npat):
                    if all((u >> b) & 1 == (w >> b) & 1 for b in arg_bits) and (
                        (u >> target_bit) & 1 != (w >> target_bit) & 1
                    ):
                        bad |= 1 << ((1 << u) | (1 << w))
            return all_teams & ~_subset_or(bad, npat)
        if isinstance(node, And):
            return run(node.left) & run(node.right)
        if isinstance(node, IDisj):
            return run(node.left) | run(node.right)
        if isinstance(node, Tensor):
            return _tensor_indicator(run(node.left), run(node.right), npat)
        if isinstance(node, Impl):
            bad = run(node.left) & all_teams & ~run(node.right)
            return all_teams & ~_subset_or(bad, npat)
        raise InternalInvariantError(f"unknown node {node!r}")

    def _down_set_of(allowed_patterns: int) -> int:
        # Teams all of whose members lie in the allowed pattern set.
        out = 0
        s = allowed_patterns
        while True:
            out |= 1 << s
            if s == 0:
                return out
            s = (s - 1) & allowed_patterns

    return run(phi)


def truth_set(
    phi: Formula,
    vars: Optional[VarSet] = None,
    *,
    max_vars: int = DEFAULT_MAX_VARS,
    force: bool = False,
) -> TeamFamily:
    """The family of all teams over ``vars`` satisfying ``phi``."""
    if vars is None:
        vars = var_set(phi)
    _check_cap(len(vars), max_vars, force, "truth set")
    ind = _truth_indicator(phi, vars)
    return TeamFamily(vars, frozenset(_bit_positions(ind)))


def valid(phi: Formula) -> bool:
    """Whether the full team over the formula's own variables satisfies it;
    by downward closure this means every team does."""
    return evaluate(phi, full_team(var_set(phi)))


def entails(
    phi: Formula,
    psi: Formula,
    *,
    max_vars: int = DEFAULT_MAX_VARS,
    force: bool = False,
) -> bool:
    """Whether every team (over the combined variables) satisfying ``phi``
    satisfies ``psi``."""
    vars = var_set(phi).union(var_set(psi))
    _check_cap(len(vars), max_vars, force, "entailment")
    return _truth_indicator(phi, vars) & ~_truth_indicator(psi, vars) == 0


def equivalent(
    phi: Formula,
    psi: Formula,
    *,
    max_vars: int = DEFAULT_MAX_VARS,
    force: bool = False,
) -> bool:
    """Mutual entailment: equal truth sets over the combined variables."""
    vars = var_set(phi).union(var_set(psi))
    _check_cap(len(vars), max_vars, force, "equivalence")
    return _truth_indicator(phi, vars) == _truth_indicator(psi, vars)


# --- Property suite -------------------------------------------------------


@dataclass
class CheckOutcome:
    name: str
    passed: bool
    detail: str
    witness: Optional[dict] = None

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "detail": self.detail}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class PropertyReport:
    formula: str
    vars: list[str]
    checks: list[CheckOutcome] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "formula": self.formula,
            "vars": self.vars,
            "ok": self.ok,
            "checks": [c.to_json() for c in self.checks],
        }


_FRESH_CANDIDATES = ("s", "t", "u", "w", "z")


def _fresh_variable(vars: VarSet) -> Variable:
    names = set(vars.names())
    for cand in _FRESH_CANDIDATES:
        if cand not in names:
            return Variable(cand)
    i = 1
    while f"s{i}" in names:
        i += 1
    return Variable(f"s{i}")


def check_basic_properties(
    phi: Formula,
    vars: Optional[VarSet] = None,
    *,
    seed: int = 0,
    max_vars: int = DEFAULT_MAX_VARS,
    force: bool = False,
) -> PropertyReport:
    """Check the structural properties every placeholder-free formula of
    this language family is guaranteed to have, over the given variables:
    the empty team satisfies it; satisfaction is closed under subteams;
    satisfaction only depends on the variables that occur (checked by
    extending teams with a fresh variable); and a valid ``|`` formula has a
    valid disjunct.  A failure means an evaluator bug, and the report
    carries a witness."""
    if vars is None:
        vars = var_set(phi)
    _check_cap(len(vars), max_vars, force, "property checking")
    report = PropertyReport(formula=to_text(phi), vars=vars.names())
    n = len(vars)
    npat = 1 << n
    ind = _truth_indicator(phi, vars)

    # Empty team, on both engines.
    by_ind = bool(ind & 1)
    by_eval = evaluate(phi, Team.empty(vars))
    report.checks.append(
        CheckOutcome(
            "empty_team",
            by_ind and by_eval,
            "the empty team satisfies the formula",
        )
    )

    # Downward closure: the satisfying teams contain every subteam.
    closure = _superset_or(ind, npat)
    if closure == ind:
        report.checks.append(
            CheckOutcome("downward_closure", True, "satisfaction is closed under subteams")
        )
    else:
        bad = closure & ~ind
        sub_mask = (bad & -bad).bit_length() - 1
        sup_mask = next(
            m for m in _bit_positions(ind) if sub_mask & ~m == 0 and m != sub_mask
        )
        report.checks.append(
            CheckOutcome(
                "downward_closure",
                False,
                "a satisfying team has a non-satisfying subteam",
                witness={
                    "team": Team(vars, sup_mask).rows(),
                    "subteam": Team(vars, sub_mask).rows(),
                },
            )
        )

    # Locality: extending sampled teams with a fresh variable leaves the
    # verdict unchanged.  This also cross-checks the two engines, since the
    # extended teams go through the recursive evaluator.
    rng = random.Random(seed)
    fresh = _fresh_variable(vars)
    extended = vars.union(VarSet((fresh,)))
    pos_map = [extended.index(v) for v in vars]
    fresh_pos = extended.index(fresh)
    sample = {0, (1 << npat) - 1}
    while len(sample) < 5 and len(sample) < (1 << npat):
        sample.add(rng.getrandbits(npat))
    locality_ok = True
    locality_witness = None
    for mask in sorted(sample):
        expected = bool(ind >> mask & 1)
        patterns = _bit_positions(mask)
        variants = []
        for _ in range(2):  # two random sections
            variants.append({p: (rng.getrandbits(1),) for p in patterns})
        if patterns:  # double one valuation: keep both extensions of the first
            doubled = {p: (rng.getrandbits(1),) for p in patterns}
            doubled[patterns[0]] = (0, 1)
            variants.append(doubled)
        for variant in variants:
            ext_mask = 0
            for p, bits in variant.items():
                base = sum(((p >> i) & 1) << pos for i, pos in enumerate(pos_map))
                for bit in bits:
                    ext_mask |= 1 << (base | bit << fresh_pos)
            got = evaluate(phi, Team(extended, ext_mask))
            if got != expected:
                locality_ok = False
                locality_witness = {
                    "team": Team(vars, mask).rows(),
                    "extended_team": Team(extended, ext_mask).rows(),
                    "extended_vars": extended.names(),
                    "base_verdict": expected,
                    "extended_verdict": got,
                }
                break
        if not locality_ok:
            break
    report.checks.append(
        CheckOutcome(
            "locality",
            locality_ok,
            "the verdict is invariant under fresh-variable extension",
            witness=locality_witness,
        )
    )

    # Disjunction property: a valid "|" formula has a valid disjunct.
    if isinstance(phi, IDisj):
        full_pos = (1 << npat) - 1
        if ind >> full_pos & 1:
            left_ok = bool(_truth_indicator(phi.left, vars) >> full_pos & 1)
            right_ok = bool(_truth_indicator(phi.right, vars) >> full_pos & 1)
            passed = left_ok or right_ok
            report.checks.append(
                CheckOutcome(
                    "disjunction_property",
                    passed,
                    "the formula is valid, so some disjunct must be valid",
                    witness=None if passed else {"left_valid": left_ok, "right_valid": right_ok},
                )
            )
        else:
            report.checks.append(
                CheckOutcome(
                    "disjunction_property",
                    True,
                    "not valid, so the disjunct condition is vacuous",
                )
            )
    else:
        report.checks.append(
            CheckOutcome("disjunction_property", True, "not a '|' formula; vacuous")
        )

    return report
