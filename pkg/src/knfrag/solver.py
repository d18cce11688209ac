"""Satisfiability: a bounded exhaustive oracle and a tableau decision procedure.

`sat_bruteforce` walks canonical tree-shaped models in a fixed order (node
count ascending, then root letter mask, then the sorted child entries),
with the root as the designated world.  Trees with depth up to the
formula's modal nesting depth and branching up to its diamond count are a
complete class for satisfiability, so exhausting them up to
`tree_model_bound` worlds certifies unsatisfiability.  `sat_tableau` is a
complete decision procedure; every satisfiable verdict from either engine
carries a witness that is re-validated with `check` before being returned.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .semantics import KripkeFrame, KripkeModel, PointedModel, check
from .syntax import (
    And,
    Box,
    Diamond,
    Formula,
    Not,
    Or,
    Prop,
    Top,
    formula_modalities,
    letters,
)

__all__ = [
    "SAT",
    "UNSAT",
    "UNKNOWN_AT_BOUND",
    "SatResult",
    "CapExceeded",
    "DEFAULT_MODEL_CAP",
    "DEFAULT_NODE_CAP",
    "sat_bruteforce",
    "sat_tableau",
    "tree_model_bound",
    "to_nnf",
]

SAT = "SAT"
UNSAT = "UNSAT"
UNKNOWN_AT_BOUND = "UNKNOWN_AT_BOUND"

DEFAULT_MODEL_CAP = 10_000_000
DEFAULT_NODE_CAP = 1_000_000


class CapExceeded(RuntimeError):
    """The configured resource ceiling was hit before a verdict."""


@dataclass
class SatResult:
    status: str
    witness: PointedModel | None = None


def to_nnf(f: Formula) -> Formula:
    """Negation normal form: negation only on letters and T."""
    if isinstance(f, (Top, Prop)):
        return f
    if isinstance(f, Or):
        return Or(to_nnf(f.left), to_nnf(f.right))
    if isinstance(f, And):
        return And(to_nnf(f.left), to_nnf(f.right))
    if isinstance(f, Diamond):
        return Diamond(f.modality, to_nnf(f.operand))
    if isinstance(f, Box):
        return Box(f.modality, to_nnf(f.operand))
    g = f.operand
    if isinstance(g, (Top, Prop)):
        return f
    if isinstance(g, Not):
        return to_nnf(g.operand)
    if isinstance(g, Or):
        return And(to_nnf(Not(g.left)), to_nnf(Not(g.right)))
    if isinstance(g, And):
        return Or(to_nnf(Not(g.left)), to_nnf(Not(g.right)))
    if isinstance(g, Diamond):
        return Box(g.modality, to_nnf(Not(g.operand)))
    return Diamond(g.modality, to_nnf(Not(g.operand)))


def _nesting_depth(f: Formula) -> int:
    if isinstance(f, (Diamond, Box)):
        return 1 + _nesting_depth(f.operand)
    if isinstance(f, (Or, And)):
        return max(_nesting_depth(f.left), _nesting_depth(f.right))
    if isinstance(f, Not):
        return _nesting_depth(f.operand)
    return 0


def _diamond_count(f: Formula) -> int:
    if isinstance(f, Diamond):
        return 1 + _diamond_count(f.operand)
    if isinstance(f, Box):
        return _diamond_count(f.operand)
    if isinstance(f, (Or, And)):
        return _diamond_count(f.left) + _diamond_count(f.right)
    if isinstance(f, Not):
        return _diamond_count(f.operand)
    return 0


def tree_model_bound(f: Formula, cap: int = DEFAULT_MODEL_CAP) -> int:
    """A world count B such that f is satisfiable iff it has a model with
    at most B worlds: sum of D^k for k up to the modal nesting depth,
    where D counts diamond occurrences after NNF (at least 1)."""
    g = to_nnf(f)
    d = _nesting_depth(g)
    branching = max(1, _diamond_count(g))
    bound = sum(branching**k for k in range(d + 1))
    return min(bound, cap)


# --- Canonical tree-model enumeration ---


def _vtrees(n: int, depth: int, branch: int, n_labels: int, n_letters: int, memo) -> list:
    """Canonical valuated trees with exactly n nodes.

    A valuated tree is (letter_mask, entries) with entries a sorted tuple
    of (edge_label, child_tree).  Keeping sibling entries sorted quotients
    out both sibling orderings and world renamings, so every tree model of
    this size appears exactly once.
    """
    if n == 1:
        return [(mask, ()) for mask in range(1 << n_letters)]
    if depth == 0 or n_labels == 0:
        return []
    key = (n, depth)
    if key in memo:
        return memo[key]
    pool = []
    for size in range(1, n):
        for sub in _vtrees(size, depth - 1, branch, n_labels, n_letters, memo):
            for label in range(n_labels):
                pool.append((size, (label, sub)))
    pool.sort()
    bodies = []

    def pick(budget, count, start, chosen):
        if budget == 0:
            bodies.append(tuple(chosen))
            return
        if count == 0:
            return
        for i in range(start, len(pool)):
            size, entry = pool[i]
            if size > budget:
                break
            chosen.append(entry)
            pick(budget - size, count - 1, i, chosen)
            chosen.pop()

    pick(n - 1, branch, 0, [])
    out = [
        (mask, body) for mask in range(1 << n_letters) for body in bodies
    ]
    memo[key] = out
    return out


def _vtree_to_model(vtree, mods, letter_sets, alphabet) -> KripkeModel:
    worlds = []
    valuation = {}
    succ = {m: {} for m in mods}

    def build(node):
        mask, entries = node
        name = f"w{len(worlds)}"
        worlds.append(name)
        valuation[name] = letter_sets[mask]
        children = {}
        for label, child in entries:
            children.setdefault(mods[label], []).append(build(child))
        for m, names in children.items():
            succ[m][name] = tuple(names)
        return name

    build(vtree)
    relations = {
        m: frozenset((u, v) for u, vs in table.items() for v in vs)
        for m, table in succ.items()
        if table
    }
    frame = KripkeFrame._direct(
        tuple(worlds), relations, {m: t for m, t in succ.items() if t}
    )
    return KripkeModel._direct(frame, valuation, alphabet)


def sat_bruteforce(
    f: Formula, max_worlds: int, model_cap: int = DEFAULT_MODEL_CAP
) -> SatResult:
    """Exhaustive bounded satisfiability over canonical tree models.

    Walks every tree model (up to renaming and sibling order) with depth
    at most the formula's modal nesting depth and branching at most its
    diamond count, node counts ascending; that class is satisfiability
    complete, so exhausting it up to `tree_model_bound(f)` worlds proves
    UNSAT.  Returns the first witness in the enumeration order, UNSAT when
    the bound was reached, and UNKNOWN_AT_BOUND otherwise.  Raises
    `CapExceeded` past `model_cap` enumerated models.
    """
    if max_worlds < 1:
        raise ValueError("max_worlds must be at least 1")
    alpha = tuple(sorted(letters(f)))
    mods = tuple(sorted(formula_modalities(f)))
    nnf = to_nnf(f)
    depth = _nesting_depth(nnf)
    branch = max(1, _diamond_count(nnf))
    bound = tree_model_bound(f, model_cap)
    alphabet = frozenset(alpha)
    letter_sets = [
        frozenset(alpha[j] for j in range(len(alpha)) if mask >> j & 1)
        for mask in range(1 << len(alpha))
    ]
    memo = {}
    count = 0
    for n in range(1, min(max_worlds, bound) + 1):
        for vtree in _vtrees(n, depth, branch, len(mods), len(alpha), memo):
            count += 1
            if count > model_cap:
                raise CapExceeded(f"model cap {model_cap} exceeded")
            model = _vtree_to_model(vtree, mods, letter_sets, alphabet)
            if check(model, "w0", f):
                witness = PointedModel(model, "w0")
                return SatResult(SAT, witness)
    status = UNSAT if max_worlds >= bound else UNKNOWN_AT_BOUND
    return SatResult(status)


# --- Tableau ---


def sat_tableau(f: Formula, node_cap: int = DEFAULT_NODE_CAP) -> SatResult:
    """Complete satisfiability test; SAT verdicts carry a finite tree witness."""
    budget = [node_cap]
    tree = _expand([to_nnf(f)], budget)
    if tree is None:
        return SatResult(UNSAT)
    worlds = []
    relations = {}
    valuation = {}

    def build(node):
        atoms, children = node
        name = f"w{len(worlds)}"
        worlds.append(name)
        valuation[name] = atoms
        for mod, child in children:
            cname = build(child)
            relations.setdefault(mod, []).append((name, cname))
        return name

    build(tree)
    alphabet = letters(f)
    model = KripkeModel(KripkeFrame(worlds, relations), valuation, alphabet)
    witness = PointedModel(model, "w0")
    assert check(model, "w0", f)
    return SatResult(SAT, witness)


def _expand(pending, budget, pos=(), neg=(), boxes=None, diamonds=()):
    """Saturate one world; returns (atoms, children) or None on a clash.

    `pending` holds NNF formulas still to add to this world; the remaining
    arguments carry facts already established (so disjunction branches keep
    them).  Every box is collected before any diamond is expanded, so each
    successor sees all universal constraints.  Disjunctions branch
    left-first, which makes witnesses deterministic.
    """
    queue = deque(pending)
    pos, neg = set(pos), set(neg)
    boxes = {m: list(v) for m, v in (boxes or {}).items()}
    diamonds = list(diamonds)
    seen = set()
    while queue:
        g = queue.popleft()
        budget[0] -= 1
        if budget[0] < 0:
            raise CapExceeded("tableau node cap exceeded")
        if g in seen:
            continue
        seen.add(g)
        t = type(g)
        if t is Top:
            continue
        if t is Prop:
            if g.letter in neg:
                return None
            pos.add(g.letter)
        elif t is Not:
            op = g.operand
            if isinstance(op, Top) or op.letter in pos:
                return None
            neg.add(op.letter)
        elif t is And:
            queue.append(g.left)
            queue.append(g.right)
        elif t is Or:
            rest = list(queue)
            for disjunct in (g.left, g.right):
                r = _expand(rest + [disjunct], budget, pos, neg, boxes, diamonds)
                if r is not None:
                    return r
            return None
        elif t is Diamond:
            diamonds.append(g)
        else:
            boxes.setdefault(g.modality, []).append(g.operand)
    children = []
    for d in diamonds:
        sub = _expand([d.operand] + boxes.get(d.modality, []), budget)
        if sub is None:
            return None
        children.append((d.modality, sub))
    return (frozenset(pos), tuple(children))
