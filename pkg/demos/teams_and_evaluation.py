"""
Teams, evaluation, and the structural properties
================================================

A team is a set of valuations, and a formula is judged against the
whole team at once.  This walk-through builds a few teams by hand,
evaluates formulas on them, and then checks the structural properties
that hold for every formula of the language.
"""

from tsw.parsing import parse
from tsw.semantics import check_basic_properties, entails, evaluate, truth_set, valid
from tsw.teams import Team, VarSet

# A team over {p, q} with two members: one where both are true, one
# where only q is.
vs = VarSet.of("p", "q")
team = Team.from_rows(vs, [[1, 1], [0, 1]])
print("team:", team.to_json())

# "q" holds because every member sets q to 1; "p" fails because of the
# second member.
print("q on the team:", evaluate(parse("q"), team))
print("p on the team:", evaluate(parse("p"), team))

# The dependence atom =(p; q) says q is a function of p.  Here the two
# members disagree on p, so each p-value pins down a q-value trivially.
print("=(p; q):", evaluate(parse("=(p; q)"), team))

# Splitting disjunction vs whole-team disjunction.  "p + !p" asks for a
# split of the team into a part that satisfies p and a part that
# satisfies !p; "p | !p" asks the whole team to settle one side.
print("p + !p:", evaluate(parse("p + !p"), team))
print("p | !p:", evaluate(parse("p | !p"), team))

# truth_set enumerates every team over the declared variables that
# satisfies a formula.
family = truth_set(parse("=(p)"), vs)
print("teams satisfying =(p):", family.to_json()["teams"])

# Validity and entailment quantify over all teams.  Double negation
# needs the inql parse mode, where ! on a compound desugars to -> bot.
print("valid(!!p -> p):", valid(parse("!!p -> p", mode="inql")))
print("p + p entails p:", entails(parse("p + p"), parse("p")))

# Every formula satisfies the empty team, is downward closed, only
# depends on the variables it mentions, and has the disjunction
# property when valid.  check_basic_properties probes all four with a
# seeded generator.
report = check_basic_properties(parse("(p + !p) | q"), seed=0)
for check in report.checks:
    print(f"{check.name}: {'ok' if check.passed else 'FAILED'}  ({check.detail})")
