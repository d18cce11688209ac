"""Kripke frames and structures, the satisfaction relation, and model streams.

Worlds are strings; frames keep their worlds in declared order and one
accessibility relation per modality (missing modalities mean the empty
relation).  Models add a declared alphabet and a valuation; letters outside
the alphabet are simply false everywhere, so formulas mentioning fresh
letters can be checked against base models.

All values are immutable after construction and all operations are pure.
"""

from __future__ import annotations

import itertools

from .syntax import And, Box, Diamond, Formula, Not, Or, Prop, Top
from .syntax import _mod

__all__ = [
    "KripkeFrame",
    "KripkeModel",
    "PointedModel",
    "check",
    "is_extension",
    "enumerate_extensions",
    "restrict_alphabet",
    "enumerate_models",
    "model_from_json",
    "model_to_json",
]


class KripkeFrame:
    """A finite set of worlds with one relation per modality."""

    __slots__ = ("worlds", "relations", "_succ", "_world_set")

    def __init__(self, worlds, relations=None):
        worlds = tuple(str(w) for w in worlds)
        if not worlds:
            raise ValueError("a frame needs at least one world")
        if len(set(worlds)) != len(worlds):
            raise ValueError("duplicate world identifiers")
        self.worlds = worlds
        self._world_set = frozenset(worlds)
        rels = {}
        succ = {}
        for m, pairs in (relations or {}).items():
            m = _mod(m)
            pairs = frozenset((str(u), str(v)) for u, v in pairs)
            for u, v in pairs:
                if u not in self._world_set or v not in self._world_set:
                    raise ValueError(f"relation endpoint not a world: ({u}, {v})")
            if pairs:
                rels[m] = pairs
                table = {w: [] for w in worlds}
                for u, v in sorted(pairs):
                    table[u].append(v)
                succ[m] = {w: tuple(vs) for w, vs in table.items()}
        self.relations = rels
        self._succ = succ

    @classmethod
    def _direct(cls, worlds, relations, succ):
        # Internal fast path: caller guarantees consistent, normalized data.
        frame = object.__new__(cls)
        frame.worlds = worlds
        frame._world_set = frozenset(worlds)
        frame.relations = relations
        frame._succ = succ
        return frame

    def successors(self, world: str, modality) -> tuple[str, ...]:
        table = self._succ.get(_mod(modality))
        if table is None:
            return ()
        return table.get(world, ())

    def has_world(self, world: str) -> bool:
        return world in self._world_set

    def __eq__(self, other):
        if not isinstance(other, KripkeFrame):
            return NotImplemented
        return self.worlds == other.worlds and self.relations == other.relations

    def __hash__(self):
        return hash((self.worlds, frozenset(self.relations.items())))

    def __repr__(self):
        rels = {str(m): sorted(ps) for m, ps in sorted(self.relations.items())}
        return f"KripkeFrame(worlds={list(self.worlds)}, relations={rels})"


class KripkeModel:
    """A frame together with an alphabet and a valuation."""

    __slots__ = ("frame", "alphabet", "valuation")

    def __init__(self, frame: KripkeFrame, valuation=None, alphabet=None):
        self.frame = frame
        val = {}
        for w, ls in (valuation or {}).items():
            w = str(w)
            if not frame.has_world(w):
                raise ValueError(f"valuation mentions unknown world {w!r}")
            val[w] = frozenset(str(l) for l in ls)
        if alphabet is None:
            alphabet = frozenset().union(*val.values()) if val else frozenset()
        self.alphabet = frozenset(str(l) for l in alphabet)
        for w, ls in val.items():
            if not ls <= self.alphabet:
                extra = ", ".join(sorted(ls - self.alphabet))
                raise ValueError(f"letters not in the alphabet at {w!r}: {extra}")
        empty = frozenset()
        self.valuation = {w: val.get(w, empty) for w in frame.worlds}

    @classmethod
    def _direct(cls, frame, valuation, alphabet):
        # Internal fast path: caller guarantees a complete, consistent valuation.
        m = object.__new__(cls)
        m.frame = frame
        m.valuation = valuation
        m.alphabet = alphabet
        return m

    def letters_at(self, world: str) -> frozenset[str]:
        return self.valuation[world]

    def holds(self, world: str, letter: str) -> bool:
        return letter in self.valuation[world]

    def __eq__(self, other):
        if not isinstance(other, KripkeModel):
            return NotImplemented
        return (
            self.frame == other.frame
            and self.alphabet == other.alphabet
            and self.valuation == other.valuation
        )

    def __hash__(self):
        return hash((self.frame, self.alphabet, frozenset(self.valuation.items())))

    def __repr__(self):
        val = {w: sorted(ls) for w, ls in self.valuation.items() if ls}
        return f"KripkeModel({self.frame!r}, valuation={val}, alphabet={sorted(self.alphabet)})"


class PointedModel:
    """A model with a designated world."""

    __slots__ = ("model", "world")

    def __init__(self, model: KripkeModel, world: str):
        world = str(world)
        if not model.frame.has_world(world):
            raise ValueError(f"designated world {world!r} is not in the frame")
        self.model = model
        self.world = world

    def __eq__(self, other):
        if not isinstance(other, PointedModel):
            return NotImplemented
        return self.model == other.model and self.world == other.world

    def __repr__(self):
        return f"PointedModel({self.model!r}, world={self.world!r})"


def check(model: KripkeModel, world: str, f: Formula) -> bool:
    """Truth of `f` at `world` by structural recursion.

    A box over a world without successors is vacuously true; a diamond
    there is false.  Letters outside the model's alphabet are false.
    """
    if not model.frame.has_world(str(world)):
        raise ValueError(f"unknown world {world!r}")
    return _check(model, str(world), f)


def _check(model, w, f):
    t = type(f)
    if t is Prop:
        return f.letter in model.valuation[w]
    if t is Not:
        return not _check(model, w, f.operand)
    if t is Or:
        return _check(model, w, f.left) or _check(model, w, f.right)
    if t is And:
        return _check(model, w, f.left) and _check(model, w, f.right)
    if t is Diamond:
        op = f.operand
        return any(_check(model, v, op) for v in model.frame.successors(w, f.modality))
    if t is Box:
        op = f.operand
        return all(_check(model, v, op) for v in model.frame.successors(w, f.modality))
    if t is Top:
        return True
    raise TypeError(f"not a formula: {f!r}")


def is_extension(base: KripkeModel, ext: KripkeModel) -> bool:
    """True iff `ext` has the same frame, a superset alphabet, and agrees
    with `base` once restricted to the base alphabet."""
    if base.frame != ext.frame:
        return False
    if not base.alphabet <= ext.alphabet:
        return False
    return all(
        ext.valuation[w] & base.alphabet == base.valuation[w] for w in base.frame.worlds
    )


def enumerate_extensions(base: KripkeModel, new_letters):
    """All extensions of `base` over the fresh letters, exactly once each.

    The order is deterministic: one bit per (world, letter) cell, worlds in
    frame order and letters sorted, with the last cell varying fastest.
    The first yield assigns every new letter false everywhere.
    """
    new = tuple(sorted(set(str(l) for l in new_letters)))
    if any(l in base.alphabet for l in new):
        clash = ", ".join(l for l in new if l in base.alphabet)
        raise ValueError(f"letters already in the alphabet: {clash}")
    alphabet = base.alphabet | frozenset(new)
    cells = [(w, l) for w in base.frame.worlds for l in new]
    for bits in itertools.product((False, True), repeat=len(cells)):
        val = {w: set(base.valuation[w]) for w in base.frame.worlds}
        for (w, l), bit in zip(cells, bits):
            if bit:
                val[w].add(l)
        yield KripkeModel._direct(
            base.frame, {w: frozenset(ls) for w, ls in val.items()}, alphabet
        )


def restrict_alphabet(model: KripkeModel, alphabet) -> KripkeModel:
    """The same model with its valuation cut down to `alphabet`."""
    alphabet = frozenset(str(l) for l in alphabet)
    val = {w: ls & alphabet for w, ls in model.valuation.items()}
    return KripkeModel._direct(model.frame, val, alphabet)


# --- Deterministic model streams ---

_PAIR_CACHE: dict[int, list[tuple[str, str]]] = {}
_VAL_CACHE: dict = {}


def _world_names(k):
    return tuple(f"w{i}" for i in range(k))


def _pairs(k):
    if k not in _PAIR_CACHE:
        ws = _world_names(k)
        _PAIR_CACHE[k] = [(u, v) for u in ws for v in ws]
    return _PAIR_CACHE[k]


def _valuations(k, letters):
    key = (k, letters)
    if key not in _VAL_CACHE:
        ws = _world_names(k)
        cells = [(w, l) for w in ws for l in letters]
        table = []
        for mask in range(1 << len(cells)):
            val = {w: set() for w in ws}
            for b, (w, l) in enumerate(cells):
                if mask >> b & 1:
                    val[w].add(l)
            table.append({w: frozenset(ls) for w, ls in val.items()})
        _VAL_CACHE[key] = table
    return _VAL_CACHE[key]


def _models_with_exactly(alphabet, modalities, k: int):
    letters = tuple(sorted(str(l) for l in set(alphabet)))
    mods = tuple(sorted(_mod(m) for m in set(modalities)))
    alpha = frozenset(letters)
    ws = _world_names(k)
    pairs = _pairs(k)
    vals = _valuations(k, letters)
    n_pairs = len(pairs)
    for rel_masks in itertools.product(range(1 << n_pairs), repeat=len(mods)):
        relations = {}
        for m, mask in zip(mods, rel_masks):
            if mask:
                relations[m] = [pairs[b] for b in range(n_pairs) if mask >> b & 1]
        frame = KripkeFrame(ws, relations)
        for val in vals:
            yield KripkeModel._direct(frame, val, alpha)


def enumerate_models(alphabet, modalities, max_worlds: int):
    """All models over the alphabet and modalities with 1..max_worlds worlds.

    Deterministic: world count ascending, then relation bitmasks per
    modality ascending, then valuation bitmasks ascending (bit b of a
    relation mask is pair b in row-major world order; bit b of a valuation
    mask is cell b in world-then-sorted-letter order).
    """
    for k in range(1, max_worlds + 1):
        yield from _models_with_exactly(alphabet, modalities, k)


# --- JSON model files ---


def model_from_json(data: dict) -> tuple[KripkeModel, str | None]:
    """Build a model from the JSON object layout.

    Layout: {"worlds": [...], "relations": {mod: [[u, v], ...]},
    "valuation": {world: [letters]}, "alphabet": [...], "designated": w}.
    Everything but "worlds" is optional; a missing alphabet is inferred
    from the valuation.
    """
    if "worlds" not in data:
        raise ValueError('model JSON needs a "worlds" list')
    frame = KripkeFrame(data["worlds"], data.get("relations", {}))
    model = KripkeModel(frame, data.get("valuation", {}), data.get("alphabet"))
    designated = data.get("designated")
    if designated is not None:
        designated = str(designated)
        if not frame.has_world(designated):
            raise ValueError(f"designated world {designated!r} is not in the frame")
    return model, designated


def model_to_json(model: KripkeModel, designated: str | None = None) -> dict:
    """Serialize a model to the JSON object layout (sorted, deterministic)."""
    data = {
        "worlds": list(model.frame.worlds),
        "relations": {
            str(m): [list(p) for p in sorted(ps)]
            for m, ps in sorted(model.frame.relations.items())
        },
        "valuation": {
            w: sorted(ls) for w, ls in model.valuation.items() if ls
        },
        "alphabet": sorted(model.alphabet),
    }
    if designated is not None:
        data["designated"] = designated
    return data
