"""
Truth functions over context trees
==================================

A context is a formula skeleton built from '&', '+' and atoms, with
numbered placeholder slots r1, r2, ...  A truth function decorates the
context's syntax tree with one team per node, witnessing how an
evaluation distributes the root team down the tree: conjunction copies
the team to both children, a split hands each child a part that
together covers the parent.
"""

from tsw.definability import (
    build_reduced_truth_function,
    find_truth_function,
    verify_truth_function,
)
from tsw.formulas import substitute, to_text
from tsw.parsing import parse
from tsw.semantics import evaluate
from tsw.teams import Team, VarSet, full_team

vs = VarSet.of("p")
context = parse("r1 + r2")
theta = [parse("p"), parse("!p")]
X = full_team(vs)

# The instance plugs p into r1 and !p into r2.
instance = substitute(context, theta)
print("instance:", to_text(instance))
print("X satisfies it:", evaluate(instance, X))

# A witnessing truth function exists exactly when the instance holds.
tau = find_truth_function(context, theta, X)
for node in tau.tree.nodes:
    print(f"  node {node.id} ({to_text(node.formula)}): {tau.team(node.id).rows()}")
print("root team is X:", tau.root_team == X)
print("verifies:", verify_truth_function(tau, context, theta))

# An unsatisfied instance has no truth function at all.
print("unsatisfiable case:", find_truth_function(parse("r1 & bot"), [parse("top")], X))

# The reduced construction targets the all-top instance on the full
# team and arranges a strictly smaller team at every placeholder leaf,
# using the splits to shed part of the team before a slot is reached.
# Inconsistent subformulas are normalized away first, so the returned
# tree belongs to the cleaned-up context.
context2 = parse("(bot + top) & (r1 + r2)")
reduced = build_reduced_truth_function(context2, vs)
print("reduced construction on", to_text(context2))
for node in reduced.tree.nodes:
    label = to_text(node.formula)
    print(f"  node {node.id} ({label}): {reduced.team(node.id).rows()}")
full = full_team(vs)
leaves = [n for n in reduced.tree.placeholder_leaves()]
print(
    "placeholder teams proper:",
    all(reduced.team(n.id).mask != full.mask for n in leaves),
)
