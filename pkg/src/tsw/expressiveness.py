"""Characteristic formulas and cross-fragment translation.

The engine room is ``theta_star``: for a nonempty team X over variables
N it builds a PD formula satisfied by exactly the teams that do NOT
contain X.  Conjoining these over all excluded teams synthesizes a PD
formula for any downward-closed family (``synth_pd``); disjoining flat
classical descriptions of the maximal teams does the same within InqL
(``synth_inql``).  ``translate`` composes a truth-set computation with
either synthesizer, giving a (deliberately non-compositional)
translation between the two fragments.
"""

from __future__ import annotations

from functools import reduce
from typing import Optional, Sequence, Union

from .errors import ValidationError
from .formulas import (
    And,
    Bottom,
    Dep,
    Formula,
    Fragment,
    IDisj,
    Impl,
    NegVar,
    PosVar,
    Tensor,
    Top,
    Variable,
)
from .semantics import (
    DEFAULT_MAX_VARS,
    _check_cap,
    _truth_indicator,
    truth_set,
)
from .teams import Team, TeamFamily, VarSet, is_downward_closed

# Synthesis targets are the two proper fragments; PT0 needs no synthesis
# of its own (anything either synthesizer emits already lives in it).
SynthTarget = Fragment


def _fold(op, parts: Sequence[Formula]) -> Formula:
    return reduce(op, parts)


def _valuation_literal(pattern: int, vars: VarSet) -> Formula:
    """Conjunction of literals pinning each variable to its bit in ``pattern``."""
    lits: list[Formula] = [
        PosVar(v) if (pattern >> i) & 1 else NegVar(v) for i, v in enumerate(vars)
    ]
    return _fold(And, lits)


def theta_star(X: Team, N: Optional[VarSet] = None, *, raw: bool = False) -> Formula:
    """A PD formula over ``N`` satisfied by a team Y iff X is not a subteam
    of Y.

    Shape: a tensor of |X|-1 copies of the all-variables constancy
    conjunction, tensored with one literal conjunction per valuation
    outside X.  By default empty tensor halves are dropped (an empty whole
    collapses to ``bot``); with ``raw`` the two halves are kept as an
    explicit top-level tensor, each half materializing as ``bot`` when
    empty.
    """
    if N is None:
        N = X.vars
    elif X.vars != N:
        raise ValidationError("the team is not over the given variable set")
    if X.is_empty:
        raise ValidationError("theta_star needs a nonempty team")
    m = X.size - 1
    copies: list[Formula] = []
    if m:
        constancy = _fold(And, [Dep((), v) for v in N])
        copies = [constancy] * m
    npat = 1 << len(N)
    lits = [
        _valuation_literal(pattern, N)
        for pattern in range(npat)
        if not (X.mask >> pattern) & 1
    ]
    if raw:
        left = _fold(Tensor, copies) if copies else Bottom()
        right = _fold(Tensor, lits) if lits else Bottom()
        return Tensor(left, right)
    parts = copies + lits
    return _fold(Tensor, parts) if parts else Bottom()


def _validate_family(K: TeamFamily) -> None:
    if not is_downward_closed(K):
        raise ValidationError(
            "synthesis needs a downward-closed family containing the empty team"
        )


def synth_pd(
    K: TeamFamily,
    *,
    minimize: bool = False,
    max_vars: int = DEFAULT_MAX_VARS,
    force: bool = False,
) -> Formula:
    """A PD formula whose truth set over ``K.vars`` is exactly ``K``: the
    conjunction, over every nonempty team outside ``K``, of that team's
    ``theta_star``.  With ``minimize``, conjuncts whose removal keeps the
    truth set intact are greedily dropped (deterministic order)."""
    _validate_family(K)
    _check_cap(len(K.vars), max_vars, force, "synthesis")
    npat = 1 << len(K.vars)
    excluded = [
        Team(K.vars, mask)
        for mask in sorted(range(1, 1 << npat), key=lambda m: (m.bit_count(), m))
        if mask not in K.masks
    ]
    conjuncts: list[Formula] = [theta_star(X, K.vars) for X in excluded]
    if not conjuncts:
        return Top()
    if minimize and len(conjuncts) > 1:
        target = sum(1 << m for m in K.masks)
        kept = list(conjuncts)
        i = 0
        while i < len(kept):
            if len(kept) == 1:
                break
            trial = kept[:i] + kept[i + 1 :]
            if _truth_indicator(_fold(And, trial), K.vars) == target:
                kept = trial
            else:
                i += 1
        conjuncts = kept
    return _fold(And, conjuncts)


def _inql_literal(pattern: int, vars: VarSet) -> Formula:
    if len(vars) == 0:
        return Impl(Bottom(), Bottom())
    lits: list[Formula] = [
        PosVar(v) if (pattern >> i) & 1 else Impl(PosVar(v), Bottom())
        for i, v in enumerate(vars)
    ]
    return _fold(And, lits)


def _classical_or(a: Formula, b: Formula) -> Formula:
    # not(not a and not b), with negation spelled as implication into bot;
    # on flat operands this is the flat (truth-value) disjunction.
    return Impl(And(Impl(a, Bottom()), Impl(b, Bottom())), Bottom())


def _flat_description(X: Team) -> Formula:
    """A flat InqL formula whose satisfying teams are exactly X's subteams."""
    if X.is_empty:
        return Bottom()
    descriptions = [_inql_literal(val.bits, X.vars) for val in X.members()]
    return _fold(_classical_or, descriptions)


def synth_inql(
    K: TeamFamily,
    *,
    max_vars: int = DEFAULT_MAX_VARS,
    force: bool = False,
) -> Formula:
    """An InqL formula whose truth set over ``K.vars`` is exactly ``K``:
    the inquisitive disjunction, over the maximal teams of ``K``, of a
    flat description of each."""
    _validate_family(K)
    _check_cap(len(K.vars), max_vars, force, "synthesis")
    branches = [_flat_description(X) for X in K.maximal_teams()]
    return _fold(IDisj, branches)


def _resolve_target(target: Union[SynthTarget, str]) -> SynthTarget:
    if isinstance(target, str):
        try:
            target = Fragment(target.lower())
        except ValueError:
            raise ValidationError(f"unknown translation target {target!r}") from None
    if target is Fragment.PT0:
        raise ValidationError("translation targets are 'pd' and 'inql'")
    return target


def translate(
    phi: Formula,
    target: Union[SynthTarget, str],
    *,
    max_vars: int = DEFAULT_MAX_VARS,
    force: bool = False,
) -> Formula:
    """An equivalent formula (over ``phi``'s own variables) in the target
    fragment, obtained by synthesizing from the truth set."""
    target = _resolve_target(target)
    K = truth_set(phi, max_vars=max_vars, force=force)
    if target is Fragment.PD:
        return synth_pd(K, max_vars=max_vars, force=force)
    return synth_inql(K, max_vars=max_vars, force=force)


def _settled(v: Variable) -> Formula:
    return IDisj(PosVar(v), Impl(PosVar(v), Bottom()))


def dep_to_inql(args: Sequence[Variable], target: Variable) -> Formula:
    """The InqL rendering of a dependence atom: knowing each argument's
    truth value settles the target's.  With no arguments this is just the
    settled-target disjunction."""
    consequent = _settled(target)
    if not args:
        return consequent
    antecedent = _fold(And, [_settled(a) for a in args])
    return Impl(antecedent, consequent)
