"""Formula syntax for team-based propositional logics.

One full language (PT0) and two fragments carved out of it:

* PD keeps all atoms but only the connectives ``&`` (conjunction) and
  ``+`` (tensor, the splitting disjunction);
* InqL keeps only plain variables and ``bot`` among the atoms, with the
  connectives ``&``, ``|`` (inquisitive disjunction), and ``->``
  (inquisitive implication).

Negation exists only at the atom level (a negated variable), never as a
unary node.  Numbered placeholder atoms ``r1, r2, ...`` turn a formula
into a context: a template awaiting uniform substitution.  ``top`` is a
primitive atom satisfied by every team; it is admitted in every fragment
so that contexts can be instantiated trivially without fragment-specific
encodings.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .errors import ValidationError

_NAME_RE = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")
_RESERVED_RE = re.compile(r"r[0-9]+\Z")
_KEYWORDS = ("bot", "top")


@dataclass(frozen=True, order=True)
class Variable:
    """A propositional variable, identified by its name."""

    name: str

    def __post_init__(self):
        if not _NAME_RE.match(self.name):
            raise ValidationError(f"bad variable name {self.name!r}")
        if _RESERVED_RE.match(self.name):
            raise ValidationError(
                f"{self.name!r} is reserved for placeholders and cannot name a variable"
            )
        if self.name in _KEYWORDS:
            raise ValidationError(f"{self.name!r} is a keyword and cannot name a variable")

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class PosVar:
    var: Variable


@dataclass(frozen=True)
class NegVar:
    var: Variable


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Dep:
    """Dependence atom ``=(args; target)``: within a team, the target's
    value is a function of the argument values.  Empty args is the
    constancy atom ``=(target)``."""

    args: tuple[Variable, ...]
    target: Variable


@dataclass(frozen=True)
class Placeholder:
    """Numbered hole ``r<index>`` filled by uniform substitution."""

    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValidationError("placeholder indices start at r1")


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Tensor:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class IDisj:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Impl:
    left: "Formula"
    right: "Formula"


Atom = Union[PosVar, NegVar, Bottom, Top, Dep, Placeholder]
Formula = Union[Atom, And, Tensor, IDisj, Impl]

BINARY_NODES = (And, Tensor, IDisj, Impl)
ATOM_NODES = (PosVar, NegVar, Bottom, Top, Dep, Placeholder)


def is_atom(phi: Formula) -> bool:
    return isinstance(phi, ATOM_NODES)


class Fragment(enum.Enum):
    PT0 = "pt0"
    PD = "pd"
    INQL = "inql"


# Per fragment: the binary node types and atom types it admits.  Placeholders
# and top are admitted everywhere (see module docstring).
_ALLOWED = {
    Fragment.PT0: (BINARY_NODES, ATOM_NODES),
    Fragment.PD: ((And, Tensor), ATOM_NODES),
    Fragment.INQL: ((And, IDisj, Impl), (PosVar, Bottom, Top, Placeholder)),
}


def fragment_check(phi: Formula, fragment: Fragment) -> bool:
    """True iff every connective and atom of ``phi`` is admitted in ``fragment``."""
    nodes, atoms = _ALLOWED[fragment]
    stack = [phi]
    while stack:
        f = stack.pop()
        if isinstance(f, BINARY_NODES):
            if not isinstance(f, nodes):
                return False
            stack.append(f.left)
            stack.append(f.right)
        elif not isinstance(f, atoms):
            return False
    return True


_GLYPH = {And: "&", Tensor: "+", IDisj: "|", Impl: "->"}


def to_text(phi: Formula) -> str:
    """Canonical text form; ``parse(to_text(phi))`` returns ``phi``.

    A child connective is parenthesized whenever it differs from its
    parent's connective; chains of one connective rely on the declared
    associativity (``&``, ``+``, ``|`` associate left, ``->`` right).
    """
    if isinstance(phi, PosVar):
        return phi.var.name
    if isinstance(phi, NegVar):
        return "!" + phi.var.name
    if isinstance(phi, Bottom):
        return "bot"
    if isinstance(phi, Top):
        return "top"
    if isinstance(phi, Dep):
        if phi.args:
            return "=({};{})".format(",".join(a.name for a in phi.args), phi.target.name)
        return "=({})".format(phi.target.name)
    if isinstance(phi, Placeholder):
        return "r%d" % phi.index
    op = _GLYPH[type(phi)]
    return "{} {} {}".format(
        _child_text(phi.left, phi, first=True),
        op,
        _child_text(phi.right, phi, first=False),
    )


def _child_text(child: Formula, parent: Formula, first: bool) -> str:
    text = to_text(child)
    if not isinstance(child, BINARY_NODES):
        return text
    if type(child) is not type(parent):
        return "(" + text + ")"
    if isinstance(parent, Impl):
        # right-associative: bare right child, parenthesized left child
        return "(" + text + ")" if first else text
    return text if first else "(" + text + ")"


def subformulas(phi: Formula) -> list[Formula]:
    """All subformulas of ``phi``, atoms not decomposed, in post-order of
    first occurrence, deduplicated by structural equality."""
    seen: set[Formula] = set()
    out: list[Formula] = []

    def walk(f: Formula) -> None:
        if isinstance(f, BINARY_NODES):
            walk(f.left)
            walk(f.right)
        if f not in seen:
            seen.add(f)
            out.append(f)

    walk(phi)
    return out


def variables(phi: Formula) -> tuple[Variable, ...]:
    """Variables occurring in ``phi``, sorted by name."""
    acc: set[Variable] = set()
    stack = [phi]
    while stack:
        f = stack.pop()
        if isinstance(f, BINARY_NODES):
            stack.append(f.left)
            stack.append(f.right)
        elif isinstance(f, (PosVar, NegVar)):
            acc.add(f.var)
        elif isinstance(f, Dep):
            acc.update(f.args)
            acc.add(f.target)
    return tuple(sorted(acc))


def placeholder_indices(phi: Formula) -> tuple[int, ...]:
    acc: set[int] = set()
    stack = [phi]
    while stack:
        f = stack.pop()
        if isinstance(f, BINARY_NODES):
            stack.append(f.left)
            stack.append(f.right)
        elif isinstance(f, Placeholder):
            acc.add(f.index)
    return tuple(sorted(acc))


def is_context(phi: Formula) -> bool:
    """True iff ``phi`` contains at least one placeholder."""
    return bool(placeholder_indices(phi))


def max_placeholder(phi: Formula) -> int:
    idx = placeholder_indices(phi)
    return idx[-1] if idx else 0


def substitute(phi: Formula, theta: Sequence[Formula]) -> Formula:
    """Replace every ``Placeholder(i)`` leaf with ``theta[i-1]``.

    ``theta`` must be long enough for every placeholder that occurs;
    unused entries are fine.
    """
    if isinstance(phi, Placeholder):
        if phi.index > len(theta):
            raise ValidationError(
                f"missing substituent for placeholder r{phi.index} "
                f"(got {len(theta)} substituents)"
            )
        return theta[phi.index - 1]
    if isinstance(phi, BINARY_NODES):
        return type(phi)(substitute(phi.left, theta), substitute(phi.right, theta))
    return phi


@dataclass(frozen=True)
class TreeNode:
    """One occurrence of a subformula within a syntax tree."""

    id: int
    formula: Formula
    parent: Optional[int]
    children: tuple[int, ...]
    depth: int


@dataclass(frozen=True)
class SyntaxTree:
    """Node-identified full binary tree of a formula.

    Node ids are assigned in pre-order, so the root is node 0.  Distinct
    occurrences of one subformula get distinct ids.
    """

    nodes: tuple[TreeNode, ...]
    root: int = 0

    def __len__(self) -> int:
        return len(self.nodes)

    def node(self, node_id: int) -> TreeNode:
        return self.nodes[node_id]

    def leaves(self) -> list[TreeNode]:
        return [n for n in self.nodes if not n.children]

    def placeholder_leaves(self) -> list[TreeNode]:
        return [n for n in self.leaves() if isinstance(n.formula, Placeholder)]

    def ancestors(self, node_id: int) -> list[TreeNode]:
        """Strict ancestors of a node, nearest first."""
        out = []
        cur = self.nodes[node_id].parent
        while cur is not None:
            out.append(self.nodes[cur])
            cur = self.nodes[cur].parent
        return out


def syntax_tree(phi: Formula) -> SyntaxTree:
    """Build the occurrence tree of ``phi``: leaves are atom occurrences,
    internal nodes are connective occurrences with exactly two children."""
    records: list[dict] = []

    def build(f: Formula, parent: Optional[int], depth: int) -> int:
        my_id = len(records)
        records.append({"formula": f, "parent": parent, "children": (), "depth": depth})
        if isinstance(f, BINARY_NODES):
            left = build(f.left, my_id, depth + 1)
            right = build(f.right, my_id, depth + 1)
            records[my_id]["children"] = (left, right)
        return my_id

    build(phi, None, 0)
    nodes = tuple(
        TreeNode(i, r["formula"], r["parent"], r["children"], r["depth"])
        for i, r in enumerate(records)
    )
    return SyntaxTree(nodes)
