"""Independent reference implementations used as test oracles.

Everything here favours clarity over speed: no memoisation, no indicator
bitboards, no clever split enumeration.  The real engines must agree with
these transcriptions on small inputs.
"""

import itertools

from hypothesis import strategies as st

from tsw.formulas import (
    And,
    Bottom,
    Dep,
    Fragment,
    IDisj,
    Impl,
    NegVar,
    PosVar,
    Tensor,
    Top,
    Variable,
)
from tsw.semantics import evaluate
from tsw.teams import Team, VarSet


def subteams(team):
    """Every subteam of ``team``, the empty one included."""
    patterns = [v.bits for v in team.members()]
    for r in range(len(patterns) + 1):
        for combo in itertools.combinations(patterns, r):
            mask = 0
            for bits in combo:
                mask |= 1 << bits
            yield Team(team.vars, mask)


def reference_evaluate(phi, team):
    """Clause-by-clause transcription of the satisfaction relation.

    Exponential in team size for splits and implication; keep teams at
    two variables or so.
    """
    members = list(team.members())
    if isinstance(phi, PosVar):
        return all(v.value(phi.var) == 1 for v in members)
    if isinstance(phi, NegVar):
        return all(v.value(phi.var) == 0 for v in members)
    if isinstance(phi, Bottom):
        return team.is_empty
    if isinstance(phi, Top):
        return True
    if isinstance(phi, Dep):
        for u in members:
            for v in members:
                if all(u.value(a) == v.value(a) for a in phi.args):
                    if u.value(phi.target) != v.value(phi.target):
                        return False
        return True
    if isinstance(phi, And):
        return reference_evaluate(phi.left, team) and reference_evaluate(phi.right, team)
    if isinstance(phi, Tensor):
        subs = list(subteams(team))
        for y in subs:
            for z in subs:
                if y.mask | z.mask == team.mask:
                    if reference_evaluate(phi.left, y) and reference_evaluate(phi.right, z):
                        return True
        return False
    if isinstance(phi, IDisj):
        return reference_evaluate(phi.left, team) or reference_evaluate(phi.right, team)
    if isinstance(phi, Impl):
        for y in subteams(team):
            if reference_evaluate(phi.left, y) and not reference_evaluate(phi.right, y):
                return False
        return True
    raise AssertionError(f"reference evaluator got {phi!r}")


def naive_tensor_holds(phi, psi, team, eval_fn=evaluate):
    """Split clause by brute force: try every pair of subteams that covers."""
    subs = list(subteams(team))
    for y in subs:
        for z in subs:
            if y.mask | z.mask == team.mask:
                if eval_fn(phi, y) and eval_fn(psi, z):
                    return True
    return False


def downward_closed_family_masks(npat):
    """All nonempty downward-closed families over ``npat`` patterns.

    A family is returned as a frozenset of team masks.  Closure is
    checked against a precomputed table of required submasks.
    """
    teams = range(1 << npat)
    required = []
    for m in teams:
        r = 0
        for s in teams:
            if s & m == s:
                r |= 1 << s
        required.append(r)
    out = []
    for f in range(1, 1 << (1 << npat)):
        if all(required[m] & ~f == 0 for m in teams if f >> m & 1):
            out.append(frozenset(m for m in teams if f >> m & 1))
    return out


def context_texts_bruteforce(pool, max_size):
    """Distinct contexts over ``pool``, counted without the library's dedup.

    Builds every raw binary tree with connectives in {&, +}, then
    canonicalises commutative children by printed text (associativity is
    left alone, matching the library's convention) and collects the set
    of renderings.
    """
    from tsw.formulas import to_text

    by_size = {1: list(pool)}
    for size in range(3, max_size + 1, 2):
        trees = []
        for lsize in range(1, size - 1, 2):
            rsize = size - 1 - lsize
            for left in by_size[lsize]:
                for right in by_size[rsize]:
                    trees.append(And(left, right))
                    trees.append(Tensor(left, right))
        by_size[size] = trees

    def canon(phi):
        if isinstance(phi, (And, Tensor)):
            a = canon(phi.left)
            b = canon(phi.right)
            if to_text(a) > to_text(b):
                a, b = b, a
            return type(phi)(a, b)
        return phi

    texts = set()
    for size, trees in by_size.items():
        for tree in trees:
            texts.add(to_text(canon(tree)))
    return texts


_OPS = {
    Fragment.PT0: (And, Tensor, IDisj, Impl),
    Fragment.PD: (And, Tensor),
    Fragment.INQL: (And, IDisj, Impl),
}


def atom_pool(variables, fragment=Fragment.PT0):
    atoms = [Bottom(), Top()]
    atoms.extend(PosVar(v) for v in variables)
    if fragment is not Fragment.INQL:
        atoms.extend(NegVar(v) for v in variables)
        for target in variables:
            others = [v for v in variables if v != target]
            for r in range(len(others) + 1):
                for combo in itertools.combinations(others, r):
                    atoms.append(Dep(combo, target))
    return atoms


def st_formula(variables, fragment=Fragment.PT0, max_leaves=6):
    """Hypothesis strategy for formulas over the given variables."""
    base = st.sampled_from(atom_pool(variables, fragment))
    ops = st.sampled_from(_OPS[fragment])

    def extend(children):
        return st.builds(lambda op, a, b: op(a, b), ops, children, children)

    return st.recursive(base, extend, max_leaves=max_leaves)


def st_team(varset):
    npat = 1 << len(varset)
    return st.integers(0, (1 << npat) - 1).map(lambda m: Team(varset, m))


PQ = VarSet.of("p", "q")
P = VarSet.of("p")
PQR = VarSet.of("p", "q", "r")
NO_VARS = VarSet(())


def pvar(name):
    return PosVar(Variable(name))
