"""Uniform-definability analysis for PD contexts.

A PD context is a formula over ``&`` and ``+`` whose leaves may include
placeholders ``r1, r2, ...``; instantiating the placeholders uniformly
asks whether one fixed context can simulate a connective on every
argument vector.  The machinery here decides that question negatively
for inquisitive disjunction and implication: every PD context is refuted
by a small battery of instance vectors, and the battery's completeness
rests on the structural analysis implemented alongside it (consistency,
normalization, monotonicity, and truth functions over syntax trees).

A truth function assigns a team to every node of a context's syntax
tree so that each node's team satisfies its instantiated label, ``&``
nodes share their team with both children, and ``+`` nodes are the union
of theirs.  Satisfaction of the whole instance is equivalent to the
existence of such an assignment rooted at the given team, which is what
lets global facts about a context be read off its leaves.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Optional, Sequence

from .errors import CapExceededError, InternalInvariantError, ValidationError
from .expressiveness import theta_star
from .formulas import (
    And,
    Bottom,
    Dep,
    Formula,
    Fragment,
    Impl,
    IDisj,
    NegVar,
    Placeholder,
    PosVar,
    SyntaxTree,
    Tensor,
    Top,
    Variable,
    fragment_check,
    is_atom,
    max_placeholder,
    subformulas,
    substitute,
    syntax_tree,
    to_text,
    variables,
)
from .semantics import EvalSession, entails, equivalent, evaluate, var_set
from .teams import Team, VarSet, enumerate_teams, full_team

SEARCH_MAX_SIZE = 9


# --- Connectives ----------------------------------------------------------


def _eval_or(instances: Sequence[Formula], team: Team) -> bool:
    return evaluate(IDisj(instances[0], instances[1]), team)


def _eval_imp(instances: Sequence[Formula], team: Team) -> bool:
    return evaluate(Impl(instances[0], instances[1]), team)


def _eval_contra(instances: Sequence[Formula], team: Team) -> bool:
    return team.is_empty


@dataclass(frozen=True)
class ConnectiveSpec:
    """An m-ary team connective given by its semantic clause."""

    name: str
    arity: int
    evaluate: Callable[[Sequence[Formula], Team], bool]


IDISJ_SPEC = ConnectiveSpec("or", 2, _eval_or)
IMPL_SPEC = ConnectiveSpec("imp", 2, _eval_imp)


def contra(arity: int = 2) -> ConnectiveSpec:
    """The contradictory connective: false on every nonempty team."""
    if arity < 1:
        raise ValidationError("contra needs arity at least 1")
    return ConnectiveSpec("contra", arity, _eval_contra)


def builtin_connective(name: str, arity: int = 2) -> ConnectiveSpec:
    if name == "or":
        spec = IDISJ_SPEC
    elif name == "imp":
        spec = IMPL_SPEC
    elif name == "contra":
        return contra(arity)
    else:
        raise ValidationError(f"unknown connective {name!r} (built-ins: or, imp, contra)")
    if arity != spec.arity:
        raise ValidationError(f"{name!r} is binary")
    return spec


# --- Context basics -------------------------------------------------------


def _require_pd(phi: Formula) -> None:
    if not fragment_check(phi, Fragment.PD):
        raise ValidationError("not a PD context: only '&', '+' and atoms are allowed")


def _top_instance(phi: Formula) -> Formula:
    return substitute(phi, [Top()] * max_placeholder(phi))


def is_consistent(phi: Formula) -> bool:
    """Whether some nonempty team satisfies the all-``top`` instance.

    Satisfaction of PD formulas is closed under subteams, so scanning the
    singleton teams over the instance's own variables is exhaustive.
    """
    _require_pd(phi)
    inst = _top_instance(phi)
    vars = var_set(inst)
    session = EvalSession()
    return any(
        evaluate(inst, Team(vars, 1 << pattern), session)
        for pattern in range(1 << len(vars))
    )


# Instance pool for spot-checking that a rewritten context behaves like the
# original.  Full context equivalence quantifies over ALL substituents; the
# pool check is the documented approximation ("pool-equivalence") and a
# failure here means a rewrite bug, not a borderline input.
_P = Variable("p")
VALIDATION_POOL: tuple[Formula, ...] = (
    Bottom(),
    Top(),
    PosVar(_P),
    NegVar(_P),
    Dep((), _P),
    Tensor(PosVar(_P), NegVar(_P)),
)


def _pool_equivalent(a: Formula, b: Formula) -> bool:
    m = max(max_placeholder(a), max_placeholder(b))
    for vector in itertools.product(VALIDATION_POOL, repeat=m):
        try:
            if not equivalent(substitute(a, vector), substitute(b, vector), force=True):
                return False
        except CapExceededError:
            continue  # beyond the hard cap: this vector is unverifiable, skip
    return True


def normalize(phi: Formula) -> Formula:
    """An equivalent PD context with no inconsistent subformula.

    A tensor with exactly one inconsistent side collapses to the other
    side; everything else is rebuilt recursively.  Every rewrite preserves
    satisfaction on every team for every instantiation, because an
    inconsistent side of a tensor only ever contributes the empty team to
    a split.  The output is double-checked: every subformula must be
    consistent, and the output must agree with the input on a fixed pool
    of substituents.
    """
    if not is_consistent(phi):
        raise ValidationError("cannot normalize an inconsistent context")

    def rec(f: Formula) -> Formula:
        if is_atom(f):
            return f
        if isinstance(f, And):
            return And(rec(f.left), rec(f.right))
        if isinstance(f, Tensor):
            left_ok = is_consistent(f.left)
            right_ok = is_consistent(f.right)
            if left_ok and right_ok:
                return Tensor(rec(f.left), rec(f.right))
            if left_ok:
                return rec(f.left)
            if right_ok:
                return rec(f.right)
            raise InternalInvariantError(
                "tensor with two inconsistent sides inside a consistent context"
            )
        raise InternalInvariantError(f"non-PD node {f!r} survived the fragment check")

    result = rec(phi)
    for sub in subformulas(result):
        if not is_consistent(sub):
            raise InternalInvariantError("normalization left an inconsistent subformula")
    if not _pool_equivalent(phi, result):
        raise InternalInvariantError("normalization changed the context on the instance pool")
    return result


def check_monotone(
    phi: Formula,
    theta: Sequence[Formula],
    theta_prime: Sequence[Formula],
) -> bool:
    """Instantiation monotonicity: with every substituent strengthened
    componentwise (``theta[i]`` entails ``theta_prime[i]``), the first
    instance entails the second.  True for every PD context; a false
    return means an evaluator bug."""
    _require_pd(phi)
    if len(theta) != len(theta_prime):
        raise ValidationError("substituent vectors differ in length")
    for a, b in zip(theta, theta_prime):
        if not entails(a, b):
            raise ValidationError(
                f"precondition failure: {to_text(a)} does not entail {to_text(b)}"
            )
    return entails(substitute(phi, theta), substitute(phi, theta_prime))


# --- Truth functions ------------------------------------------------------


@dataclass
class TruthFunction:
    """A team per node of a context's syntax tree."""

    tree: SyntaxTree
    assignment: dict[int, Team]

    def team(self, node_id: int) -> Team:
        return self.assignment[node_id]

    @property
    def root_team(self) -> Team:
        return self.assignment[self.tree.root]

    def to_json(self) -> dict:
        vars = self.root_team.vars
        return {
            "vars": vars.names(),
            "nodes": [
                {
                    "id": n.id,
                    "formula": to_text(n.formula),
                    "team": self.assignment[n.id].rows(),
                }
                for n in self.tree.nodes
            ],
        }


def verify_truth_function(
    tau: TruthFunction,
    phi: Formula,
    theta: Sequence[Formula],
) -> bool:
    """Check the three defining conditions, plus the derived fact that
    teams shrink along every tree edge."""
    tree = syntax_tree(phi)
    if tuple(n.formula for n in tau.tree.nodes) != tuple(n.formula for n in tree.nodes):
        raise ValidationError("the truth function's tree does not match the context")
    missing = [n.id for n in tree.nodes if n.id not in tau.assignment]
    if missing:
        raise ValidationError(f"assignment missing nodes {missing}")
    vars = tau.assignment[tree.root].vars
    for node_id, team in tau.assignment.items():
        if team.vars != vars:
            raise ValidationError(f"node {node_id} team is over a different variable set")
    session = EvalSession()
    for node in tree.nodes:
        team = tau.assignment[node.id]
        if not evaluate(substitute(node.formula, theta), team, session):
            return False
        if isinstance(node.formula, And):
            y, z = node.children
            if tau.assignment[y] != team or tau.assignment[z] != team:
                return False
        elif isinstance(node.formula, Tensor):
            y, z = node.children
            if tau.assignment[y].union(tau.assignment[z]) != team:
                return False
        for child in node.children:
            if not tau.assignment[child].is_subteam_of(team):
                return False
    return True


def find_truth_function(
    phi: Formula,
    theta: Sequence[Formula],
    X: Team,
) -> Optional[TruthFunction]:
    """A truth function rooted at ``X``, or None exactly when ``X`` does
    not satisfy the instantiated context.  The descent copies teams
    through ``&`` nodes and takes the first satisfying complement split at
    ``+`` nodes."""
    _require_pd(phi)
    inst = substitute(phi, theta)
    session = EvalSession()
    if not evaluate(inst, X, session):
        return None
    tree = syntax_tree(phi)
    inst_of = {n.id: substitute(n.formula, theta) for n in tree.nodes}
    assignment: dict[int, Team] = {}

    def descend(node_id: int, mask: int) -> None:
        node = tree.node(node_id)
        assignment[node_id] = Team(X.vars, mask)
        if not node.children:
            return
        y, z = node.children
        if isinstance(node.formula, And):
            descend(y, mask)
            descend(z, mask)
            return
        s = mask
        while True:
            if evaluate(inst_of[y], Team(X.vars, s), session) and evaluate(
                inst_of[z], Team(X.vars, mask ^ s), session
            ):
                descend(y, s)
                descend(z, mask ^ s)
                return
            if s == 0:
                raise InternalInvariantError(
                    "no satisfying split under a satisfied tensor"
                )
            s = (s - 1) & mask

    descend(tree.root, X.mask)
    return TruthFunction(tree, assignment)


def complete_from_leaves(
    phi: Formula,
    theta: Sequence[Formula],
    leaf_assignment: dict[int, Team],
) -> Optional[TruthFunction]:
    """Extend a leaves-only assignment upward, or None when an ``&`` node
    receives unequal children (the one way propagation can fail).  Leaf
    teams must already satisfy their instantiated labels."""
    _require_pd(phi)
    tree = syntax_tree(phi)
    leaves = tree.leaves()
    missing = [n.id for n in leaves if n.id not in leaf_assignment]
    if missing:
        raise ValidationError(f"leaf assignment missing leaves {missing}")
    vars = None
    for n in leaves:
        team = leaf_assignment[n.id]
        if vars is None:
            vars = team.vars
        elif team.vars != vars:
            raise ValidationError("leaf teams are over different variable sets")
    session = EvalSession()
    for n in leaves:
        if not evaluate(substitute(n.formula, theta), leaf_assignment[n.id], session):
            raise ValidationError(
                f"leaf {n.id} ({to_text(n.formula)}) does not satisfy its label"
            )

    assignment: dict[int, Team] = {}

    def up(node_id: int) -> Optional[Team]:
        node = tree.node(node_id)
        if not node.children:
            team = leaf_assignment[node_id]
        else:
            y = up(node.children[0])
            z = up(node.children[1])
            if y is None or z is None:
                return None
            if isinstance(node.formula, And):
                if y != z:
                    return None
                team = y
            else:
                team = y.union(z)
        assignment[node_id] = team
        return team

    if up(tree.root) is None:
        return None
    tau = TruthFunction(tree, assignment)
    if not verify_truth_function(tau, phi, theta):
        raise InternalInvariantError(
            "leaf propagation produced an assignment violating the node conditions"
        )
    return tau


def proper_split(X: Team, Y: Team, Z: Team) -> tuple[Team, Team]:
    """Shrink a covering pair into a proper one: subteams of ``Y`` and
    ``Z``, still covering ``X``, with both strictly inside ``X``.  Needs
    ``|X| > 1`` and both sides nonempty."""
    X._same_vars(Y)
    X._same_vars(Z)
    if X.size <= 1:
        raise ValidationError("the covered team must have at least two members")
    if Y.is_empty or Z.is_empty:
        raise ValidationError("both covering sides must be nonempty")
    if Y.union(Z) != X:
        raise ValidationError("the two sides do not cover the team")
    y_full = Y == X
    z_full = Z == X
    if not y_full and not z_full:
        return (Y, Z)
    if y_full and z_full:
        a = X.mask & -X.mask
        return (Team(X.vars, X.mask ^ a), Team(X.vars, a))
    if y_full:
        return (Team(X.vars, X.mask & ~Z.mask), Z)
    return (Y, Team(X.vars, X.mask & ~Y.mask))


def leaf_tensor_ancestor_check(phi: Formula) -> dict[int, bool]:
    """For each placeholder leaf of the syntax tree: does some strict
    ancestor carry a ``+``?  Leaves failing this are pinned to the full
    team by every truth function, which blocks the reduced construction."""
    tree = syntax_tree(phi)
    return {
        leaf.id: any(isinstance(a.formula, Tensor) for a in tree.ancestors(leaf.id))
        for leaf in tree.placeholder_leaves()
    }


def _consistency_witness(phi: Formula, vars: VarSet, session: EvalSession) -> Team:
    """The first singleton team over ``vars`` satisfying ``phi`` (which
    must be consistent with variables inside ``vars``)."""
    for pattern in range(1 << len(vars)):
        team = Team(vars, 1 << pattern)
        if evaluate(phi, team, session):
            return team
    raise InternalInvariantError("no singleton satisfier for a consistent formula")


def build_reduced_truth_function(phi: Formula, N: VarSet) -> TruthFunction:
    """A truth function for the all-``top`` instance over the full team on
    ``N`` that keeps every placeholder leaf's team a proper subteam.

    The context is normalized first, and the returned truth function lives
    on the NORMALIZED context's tree (read it back from ``result.tree``).
    At the topmost ``+`` ancestor of each placeholder leaf the split is
    repaired to be nonempty on both sides and then properly shrunk; below,
    the ordinary descent takes over, and team shrinkage along edges keeps
    every placeholder leaf strictly small.
    """
    _require_pd(phi)
    if not is_consistent(phi):
        raise ValidationError("the context is inconsistent")
    if not all(leaf_tensor_ancestor_check(phi).values()):
        raise ValidationError("a placeholder leaf has no tensor ancestor")
    if len(N) < 1:
        raise ValidationError("need at least one variable for a proper split")
    phi = normalize(phi)
    if not all(leaf_tensor_ancestor_check(phi).values()):
        raise ValidationError(
            "a placeholder leaf has no tensor ancestor after "
            "inconsistent-subformula elimination"
        )
    inst = _top_instance(phi)
    for v in variables(inst):
        if v not in N:
            raise ValidationError(f"context variable {v.name!r} outside the given set")
    X = full_team(N)
    session = EvalSession()
    if not evaluate(inst, X, session):
        raise ValidationError("the full team does not satisfy the all-top instance")

    tree = syntax_tree(phi)
    theta = [Top()] * max_placeholder(phi)
    inst_of = {n.id: substitute(n.formula, theta) for n in tree.nodes}

    # The topmost tensor ancestor of each placeholder leaf.  Only "&"
    # nodes sit above these, so the descent hands them the full team.
    special: set[int] = set()
    for leaf in tree.placeholder_leaves():
        topmost = None
        for anc in tree.ancestors(leaf.id):
            if isinstance(anc.formula, Tensor):
                topmost = anc.id
        if topmost is not None:
            special.add(topmost)

    assignment: dict[int, Team] = {}

    def descend(node_id: int, team: Team) -> None:
        node = tree.node(node_id)
        assignment[node_id] = team
        if not node.children:
            return
        y, z = node.children
        if isinstance(node.formula, And):
            descend(y, team)
            descend(z, team)
            return
        mask = team.mask
        s = mask
        while True:
            if evaluate(inst_of[y], Team(N, s), session) and evaluate(
                inst_of[z], Team(N, mask ^ s), session
            ):
                break
            if s == 0:
                raise InternalInvariantError("no satisfying split under a satisfied tensor")
            s = (s - 1) & mask
        left, right = Team(N, s), Team(N, mask ^ s)
        if node_id in special:
            if team != X:
                raise InternalInvariantError("a topmost tensor did not receive the full team")
            if left.is_empty:
                left = _consistency_witness(inst_of[y], N, session)
            if right.is_empty:
                right = _consistency_witness(inst_of[z], N, session)
            left, right = proper_split(team, left, right)
        descend(y, left)
        descend(z, right)

    descend(tree.root, X)
    tau = TruthFunction(tree, assignment)
    if not verify_truth_function(tau, phi, theta):
        raise InternalInvariantError("reduced construction failed verification")
    for leaf in tree.placeholder_leaves():
        team = assignment[leaf.id]
        if team == X:
            raise InternalInvariantError("a placeholder leaf kept the full team")
    return tau


# --- Refutation -----------------------------------------------------------


@dataclass
class Counterexample:
    """One instance vector and one team telling a context apart from the
    connective it was supposed to define."""

    context: Formula
    connective: ConnectiveSpec
    instances: tuple[Formula, ...]
    vars: VarSet
    team: Team
    lhs: bool
    rhs: bool

    def to_json(self) -> dict:
        return {
            "context": to_text(self.context),
            "connective": self.connective.name,
            "instances": [to_text(t) for t in self.instances],
            "vars": self.vars.names(),
            "team": self.team.rows(),
            "lhs": self.lhs,
            "rhs": self.rhs,
        }


def _battery_vars(phi: Formula) -> VarSet:
    inst = _top_instance(phi)
    vars = var_set(inst)
    if len(vars) == 0:
        return VarSet((Variable("p1"),))
    return vars


def _battery(
    c: ConnectiveSpec, nprime: VarSet, extended: bool = False
) -> list[tuple[Formula, ...]]:
    theta = theta_star(full_team(nprime))
    if c.name == "or":
        vectors = [
            (Bottom(), Top()),
            (Top(), Bottom()),
            (Top(), Top()),
            (theta, theta),
        ]
        if extended:
            vectors += [(theta, Top()), (Top(), theta)]
        return vectors
    if c.name == "imp":
        vectors = [
            (Bottom(), Bottom()),
            (Top(), Bottom()),
            (Top(), Top()),
            (Top(), theta),
        ]
        if extended:
            vectors += [(theta, Top()), (theta, Bottom())]
        return vectors
    if c.name == "contra":
        # Instantiation monotonicity makes the all-top vector decisive: a
        # context is contradictory on every vector iff it is on this one.
        return [tuple(Top() for _ in range(c.arity))]
    raise ValidationError(f"no instance battery for connective {c.name!r}")


def instance_label(instances: Sequence[Formula]) -> str:
    def one(f: Formula) -> str:
        if isinstance(f, Bottom):
            return "bot"
        if isinstance(f, Top):
            return "top"
        return "theta"

    return ",".join(one(f) for f in instances)


def _refute_or_none(
    phi: Formula, c: ConnectiveSpec, extended: bool = False
) -> Optional[Counterexample]:
    _require_pd(phi)
    if max_placeholder(phi) > c.arity:
        raise ValidationError(
            f"the context uses more placeholders than the connective's arity ({c.arity})"
        )
    nprime = _battery_vars(phi)
    for instances in _battery(c, nprime, extended):
        lhs_formula = substitute(phi, instances)
        vars = var_set(lhs_formula)
        for inst in instances:
            vars = vars.union(var_set(inst))
        session = EvalSession()
        for team in enumerate_teams(vars):
            lhs = evaluate(lhs_formula, team, session)
            rhs = c.evaluate(instances, team)
            if lhs != rhs:
                return Counterexample(phi, c, instances, vars, team, lhs, rhs)
    return None


def refute_uniform_definition(
    phi: Formula, c: ConnectiveSpec, *, extended: bool = False
) -> Counterexample:
    """The first battery instance on which the context fails to match the
    connective, with the first differing team as witness.  ``extended``
    appends two asymmetric diagnostic vectors to the battery.

    Only ``or`` and ``imp`` carry a completeness argument for their
    batteries, so only they are accepted here; for them every context
    must fall to some battery instance, and an exhausted battery means
    an evaluator bug, so it raises rather than returning None.
    """
    if c.name not in ("or", "imp"):
        raise ValidationError("refutation batteries exist for 'or' and 'imp' only")
    ce = _refute_or_none(phi, c, extended)
    if ce is None:
        raise InternalInvariantError(
            f"battery exhausted without a counterexample for {to_text(phi)}; "
            "no context can define this connective, so the evaluator is wrong"
        )
    return ce


def verify_counterexample(ce: Counterexample) -> bool:
    """Recompute both sides on the recorded team; the record must
    reproduce exactly and actually disagree."""
    lhs = evaluate(substitute(ce.context, ce.instances), ce.team)
    rhs = ce.connective.evaluate(ce.instances, ce.team)
    return lhs == ce.lhs and rhs == ce.rhs and lhs != rhs


# --- Bounded exhaustive search --------------------------------------------

_enum_cache: dict[tuple[tuple[str, ...], int], list[Formula]] = {}


def enumerate_contexts(atom_pool: Sequence[Formula], max_size: int) -> list[Formula]:
    """All PD formulas with at most ``max_size`` syntax-tree nodes whose
    leaves come from ``atom_pool``, one representative per commutation
    class of ``&`` and ``+`` (the printed left side never exceeds the
    right)."""
    pool = list(atom_pool)
    for a in pool:
        if not is_atom(a):
            raise ValidationError(f"atom pool entry {to_text(a)} is not an atom")
    texts = [to_text(a) for a in pool]
    if len(set(texts)) != len(texts):
        raise ValidationError("atom pool contains duplicates")

    def by_size(size: int) -> list[Formula]:
        key = (tuple(texts), size)
        got = _enum_cache.get(key)
        if got is not None:
            return got
        if size == 1:
            out = list(pool)
        else:
            out = []
            for left_size in range(1, size - 1, 2):
                right_size = size - 1 - left_size
                for op in (And, Tensor):
                    for lhs in by_size(left_size):
                        lhs_text = to_text(lhs)
                        for rhs in by_size(right_size):
                            if lhs_text <= to_text(rhs):
                                out.append(op(lhs, rhs))
        _enum_cache[key] = out
        return out

    result: list[Formula] = []
    for size in range(1, max_size + 1, 2):
        result.extend(by_size(size))
    return result


@dataclass
class SearchReport:
    connective: str
    pool: list[str]
    max_size: int
    seed: int
    total: int = 0
    refuted: int = 0
    by_instance: dict[str, int] = field(default_factory=dict)
    unrefuted: list[str] = field(default_factory=list)
    elapsed_s: float = 0.0

    def to_json(self) -> dict:
        return {
            "connective": self.connective,
            "pool": self.pool,
            "max_size": self.max_size,
            "seed": self.seed,
            "total": self.total,
            "refuted": self.refuted,
            "by_instance": self.by_instance,
            "unrefuted": self.unrefuted,
            "elapsed_s": self.elapsed_s,
        }


def _search_one(candidate: Formula, name: str, arity: int) -> Optional[str]:
    c = builtin_connective(name, arity)
    ce = _refute_or_none(candidate, c)
    if ce is None:
        return None
    if not verify_counterexample(ce):
        raise InternalInvariantError(
            f"counterexample for {to_text(candidate)} failed re-verification"
        )
    return instance_label(ce.instances)


def search_contexts(
    c: ConnectiveSpec,
    atom_pool: Sequence[Formula],
    max_size: int,
    *,
    jobs: int = 1,
    seed: int = 0,
) -> SearchReport:
    """Run the refutation battery over every context up to ``max_size``
    and tally which instance dispatched each.  Candidates the battery
    cannot tell apart from the connective land in ``unrefuted`` (expected
    only for connectives a context CAN define, like ``contra``)."""
    if max_size > SEARCH_MAX_SIZE:
        raise CapExceededError(f"search is capped at size {SEARCH_MAX_SIZE}")
    pool_texts = [to_text(a) for a in atom_pool]
    pool_list = list(atom_pool)
    for needed in (Placeholder(1), Placeholder(2)):
        if needed not in pool_list:
            raise ValidationError("the atom pool must include r1 and r2")
    start = time.perf_counter()
    candidates = enumerate_contexts(atom_pool, max_size)
    report = SearchReport(
        connective=c.name, pool=pool_texts, max_size=max_size, seed=seed, total=len(candidates)
    )
    worker = partial(_search_one, name=c.name, arity=c.arity)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            labels = list(pool.map(worker, candidates, chunksize=64))
    else:
        labels = [worker(cand) for cand in candidates]
    for candidate, label in zip(candidates, labels):
        if label is None:
            report.unrefuted.append(to_text(candidate))
        else:
            report.refuted += 1
            report.by_instance[label] = report.by_instance.get(label, 0) + 1
    report.elapsed_s = round(time.perf_counter() - start, 3)
    return report


# --- Connective preconditions ---------------------------------------------


@dataclass
class ConditionWitness:
    condition: str
    holds: bool
    detail: str
    instances: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "condition": self.condition,
            "holds": self.holds,
            "detail": self.detail,
            "instances": self.instances,
        }


@dataclass
class ConditionReport:
    connective: str
    witnesses: list[ConditionWitness]

    @property
    def all_hold(self) -> bool:
        return all(w.holds for w in self.witnesses)

    def to_json(self) -> dict:
        return {
            "connective": self.connective,
            "all_hold": self.all_hold,
            "witnesses": [w.to_json() for w in self.witnesses],
        }


def _connective_entails_component(
    c: ConnectiveSpec, instances: Sequence[Formula], i: int
) -> bool:
    """Whether every team satisfying the applied connective satisfies the
    i-th instance (1-based)."""
    vars = VarSet(())
    for inst in instances:
        vars = vars.union(var_set(inst))
    target = instances[i - 1]
    return all(
        evaluate(target, team)
        for team in enumerate_teams(vars)
        if c.evaluate(instances, team)
    )


def condition_check(c: ConnectiveSpec) -> ConditionReport:
    """Evaluate the three preconditions of the non-definability argument
    for a built-in connective: (i) the applied connective fails to entail
    each argument for some vector, (ii) some vector makes it valid, and
    (iii) a designated vector is refuted by the full team over one
    variable."""
    p = Variable("p")
    theta = theta_star(full_team(VarSet((p,))))
    witnesses: list[ConditionWitness] = []

    if c.name == "or":
        i_vectors = [((Bottom(), Top()), 1), ((Top(), Bottom()), 2)]
        ii_vector = (Top(), Top())
        iii_vector = (theta, theta)
    elif c.name == "imp":
        i_vectors = [((Bottom(), Bottom()), 1), ((Bottom(), Bottom()), 2)]
        ii_vector = (Top(), Top())
        iii_vector = (Top(), theta)
    elif c.name == "contra":
        # No recorded witnesses exist; probe the constant vectors.
        i_vectors = [
            (tuple(Top() for _ in range(c.arity)), i + 1) for i in range(c.arity)
        ] + [(tuple(Bottom() for _ in range(c.arity)), i + 1) for i in range(c.arity)]
        ii_vector = tuple(Top() for _ in range(c.arity))
        iii_vector = tuple(Top() for _ in range(c.arity))
    else:
        raise ValidationError(f"unknown connective {c.name!r}")

    found: dict[int, Optional[Sequence[Formula]]] = {}
    for instances, i in i_vectors:
        if i not in found or found[i] is None:
            found[i] = instances if not _connective_entails_component(c, instances, i) else None
    for i in sorted(found):
        instances = found[i]
        witnesses.append(
            ConditionWitness(
                condition=f"i[{i}]",
                holds=instances is not None,
                detail=(
                    f"the applied connective does not entail argument {i}"
                    if instances is not None
                    else f"every probed vector entails argument {i}"
                ),
                instances=[to_text(f) for f in instances] if instances is not None else [],
            )
        )

    vars = VarSet(())
    for inst in ii_vector:
        vars = vars.union(var_set(inst))
    ii_holds = c.evaluate(ii_vector, full_team(vars))
    witnesses.append(
        ConditionWitness(
            condition="ii",
            holds=ii_holds,
            detail="some instance vector is valid"
            if ii_holds
            else "the probed vectors are not valid",
            instances=[to_text(f) for f in ii_vector],
        )
    )

    vars = VarSet((p,))
    for inst in iii_vector:
        vars = vars.union(var_set(inst))
    iii_holds = not c.evaluate(iii_vector, full_team(vars))
    witnesses.append(
        ConditionWitness(
            condition="iii",
            holds=iii_holds,
            detail="the full team refutes the designated vector"
            if iii_holds
            else "the full team satisfies the designated vector",
            instances=[to_text(f) for f in iii_vector],
        )
    )

    return ConditionReport(connective=c.name, witnesses=witnesses)
