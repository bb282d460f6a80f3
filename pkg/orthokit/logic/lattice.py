# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

"""Finite ortholattices and their modal, ortho-Boolean and conditional enrichments."""

import enum
import itertools
import logging
from typing import Dict, Iterable, List, Optional, Sequence

import networkx as nx

from orthokit.logic.core import Base, StructureError, ValidationError, Witness
from orthokit.logic.formula import (
    And,
    Atom,
    Bot,
    Box,
    BoolAtom,
    Cond,
    Formula,
    Neg,
    Top,
    atoms,
    bool_atoms,
)
from orthokit.logic.utils import bitset

LOG = logging.getLogger(__name__)


class LatticeProperty(enum.Enum):
    ORTHOLATTICE = "Ortholattice"
    DISTRIBUTIVE = "Distributive"
    ORTHOMODULAR = "Orthomodular"
    PSEUDOCOMPLEMENT = "Pseudocomplement"
    MODAL = "Modal"
    D = "D"
    T = "T"
    WITTGENSTEIN = "Wittgenstein"
    FOUR = "Four"
    FIVE = "Five"
    B = "B"
    BOOLEAN_BLOCK_OK = "BooleanBlockOK"
    ARROW_NORMAL = "ArrowNormal"
    S5 = "S5"
    EPISTEMIC = "Epistemic"

    @classmethod
    def lookup(cls, name):
        from orthokit.logic.utils.humanize import did_you_mean

        if isinstance(name, cls):
            return name
        for p in cls:
            if p.value.lower() == str(name).lower() or p.name.lower() == str(name).lower():
                return p
        correction = did_you_mean(str(name), [p.value for p in cls])
        hint = f", did you mean '{correction}'?" if correction else ""
        raise NameError(f"Unknown lattice property '{name}'{hint}")


NEEDS_BOX = {
    LatticeProperty.MODAL,
    LatticeProperty.D,
    LatticeProperty.T,
    LatticeProperty.WITTGENSTEIN,
    LatticeProperty.FOUR,
    LatticeProperty.FIVE,
    LatticeProperty.B,
    LatticeProperty.S5,
    LatticeProperty.EPISTEMIC,
}


class FiniteOrtholattice(Base):
    """A finite lattice stored by its order, with an orthocomplement.

    Elements are indices ``0..n-1``; every public method also accepts
    element names. Meets and joins are derived from the order and memoized.

    Parameters
    ----------
    elements : list of str
        Element names, in a fixed order used for every enumeration.
    leq : iterable of pairs
        Pairs ``(i, j)`` with ``i <= j``. Only generating pairs (for instance
        the Hasse covers) are needed; the reflexive-transitive closure is taken.
    neg : sequence
        ``neg[i]`` is the orthocomplement of ``i``.
    box : sequence, optional
    bool_block : iterable, optional
    arrow : mapping ``(i, j) -> k``, optional
    validate : bool
        Run :func:`check_lattice` and fail on the first violation.
    """

    def __init__(
        self,
        elements: Sequence[str],
        leq: Iterable,
        neg: Sequence[int],
        box: Optional[Sequence[int]] = None,
        bool_block: Optional[Iterable[int]] = None,
        arrow: Optional[Dict] = None,
        validate: bool = True,
        name: Optional[str] = None,
    ):
        self.names = [str(e) for e in elements]
        self.n = len(self.names)
        self.name = name
        if self.n == 0:
            raise ValidationError("A lattice needs at least one element")
        if len(set(self.names)) != self.n:
            raise ValidationError("Duplicate element names")
        self._index = {e: i for i, e in enumerate(self.names)}

        self.up = [bitset.singleton(i) for i in range(self.n)]
        self._set_order(leq)

        self.neg = [self.index(x) for x in neg]
        if len(self.neg) != self.n:
            raise ValidationError(f"neg table has {len(self.neg)} entries, expected {self.n}")
        self.box = None if box is None else [self.index(x) for x in box]
        if self.box is not None and len(self.box) != self.n:
            raise ValidationError(f"box table has {len(self.box)} entries, expected {self.n}")
        self.bool_block = None if bool_block is None else frozenset(self.index(x) for x in bool_block)
        self.arrow = None
        if arrow is not None:
            self.arrow = {(self.index(a), self.index(b)): self.index(c) for (a, b), c in arrow.items()}
            if len(self.arrow) != self.n * self.n:
                raise ValidationError(f"arrow table has {len(self.arrow)} cells, expected {self.n * self.n}")

        self._meets = {}
        self._joins = {}

        if validate:
            w = check_lattice(self)
            if w is not None:
                raise ValidationError(f"Not an ortholattice: {w}")

    def _set_order(self, leq):
        g = nx.DiGraph()
        g.add_nodes_from(range(self.n))
        for a, b in leq:
            g.add_edge(self.index(a), self.index(b))
        closure = nx.transitive_closure(g, reflexive=True)
        for a, b in closure.edges():
            self.up[a] |= bitset.singleton(b)

        self.down = [0] * self.n
        for a in range(self.n):
            for b in bitset.indices(self.up[a]):
                self.down[b] |= bitset.singleton(a)

        for a in range(self.n):
            for b in bitset.indices(self.up[a]):
                if a != b and bitset.contains(self.up[b], a):
                    raise ValidationError(
                        f"Order is not antisymmetric: {self.names[a]} <= {self.names[b]} <= {self.names[a]}"
                    )

        everything = bitset.full(self.n)
        bottoms = [a for a in range(self.n) if self.up[a] == everything]
        tops = [a for a in range(self.n) if self.down[a] == everything]
        if not bottoms or not tops:
            raise ValidationError("Order has no least or no greatest element")
        self.zero = bottoms[0]
        self.one = tops[0]

    def __len__(self):
        return self.n

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"FiniteOrtholattice{label}({self.n} elements)"

    def index(self, x) -> int:
        if isinstance(x, int) and not isinstance(x, bool):
            if not 0 <= x < self.n:
                raise ValidationError(f"No element with index {x}")
            return x
        try:
            return self._index[str(x)]
        except KeyError:
            from orthokit.logic.utils.humanize import did_you_mean

            correction = did_you_mean(str(x), self.names)
            hint = f", did you mean '{correction}'?" if correction else ""
            raise ValidationError(f"No element named '{x}'{hint}") from None

    def label(self, a) -> str:
        return self.names[self.index(a)]

    # Order and operations

    def leq(self, a, b) -> bool:
        return bitset.contains(self.up[self.index(a)], self.index(b))

    def meet(self, a, b) -> Optional[int]:
        """Greatest lower bound, ``None`` when it does not exist."""
        a, b = self.index(a), self.index(b)
        key = (a, b) if a <= b else (b, a)
        if key not in self._meets:
            self._meets[key] = self._bound(self.down[a] & self.down[b], self.down)
        return self._meets[key]

    def join(self, a, b) -> Optional[int]:
        a, b = self.index(a), self.index(b)
        key = (a, b) if a <= b else (b, a)
        if key not in self._joins:
            self._joins[key] = self._bound(self.up[a] & self.up[b], self.up)
        return self._joins[key]

    def _bound(self, common, cones):
        if common == 0:
            return None
        best = max(bitset.indices(common), key=lambda k: bitset.count(cones[k]))
        if cones[best] != common:
            return None
        return best

    def meet_all(self, items):
        result = self.one
        for x in items:
            result = self.meet(result, x)
        return result

    def join_all(self, items):
        result = self.zero
        for x in items:
            result = self.join(result, x)
        return result

    def complement(self, a) -> int:
        return self.neg[self.index(a)]

    def necessity(self, a) -> int:
        if self.box is None:
            raise StructureError(f"{self!r} has no box operation")
        return self.box[self.index(a)]

    def possibility(self, a) -> int:
        return self.neg[self.necessity(self.neg[self.index(a)])]

    def implies(self, a, b) -> int:
        if self.arrow is None:
            raise StructureError(f"{self!r} has no arrow operation")
        return self.arrow[(self.index(a), self.index(b))]

    def elements(self):
        return range(self.n)

    # Documents

    def covers(self):
        g = nx.DiGraph()
        g.add_nodes_from(range(self.n))
        for a in range(self.n):
            for b in bitset.indices(self.up[a]):
                if a != b:
                    g.add_edge(a, b)
        return sorted(nx.transitive_reduction(g).edges())

    def to_document(self):
        doc = dict(
            kind="lattice",
            elements=list(self.names),
            leq=[[self.names[a], self.names[b]] for a, b in self.covers()],
            neg={self.names[a]: self.names[self.neg[a]] for a in range(self.n)},
        )
        if self.name:
            doc["name"] = self.name
        if self.box is not None:
            doc["box"] = {self.names[a]: self.names[self.box[a]] for a in range(self.n)}
        if self.bool_block is not None:
            doc["bool"] = [self.names[a] for a in sorted(self.bool_block)]
        if self.arrow is not None:
            doc["arrow"] = [[self.names[a], self.names[b], self.names[c]] for (a, b), c in sorted(self.arrow.items())]
        return doc

    @classmethod
    def from_document(cls, doc, validate=True):
        """Build a lattice from its JSON document.

        Table keys are element names, or indices written as strings (``"3"``)
        for unnamed positions; values are integer indices or element names.
        ``arrow`` is a list of ``[a, b, a -> b]`` triples, or a mapping keyed
        by ``"a,b"``.
        """
        try:
            elements = doc["elements"]
            names = [str(e) for e in elements]

            def ref(x):
                if isinstance(x, int):
                    return x
                return names.index(str(x))

            def key(x):
                x = str(x).strip()
                if x in names:
                    return names.index(x)
                return int(x)

            def table(d):
                if d is None:
                    return None
                result = [None] * len(names)
                for k, v in d.items():
                    result[key(k)] = ref(v)
                if None in result:
                    missing = names[result.index(None)]
                    raise ValidationError(f"Table is missing element '{missing}'")
                return result

            arrow = None
            if isinstance(doc.get("arrow"), list):
                arrow = {(ref(a), ref(b)): ref(c) for a, b, c in doc["arrow"]}
            elif doc.get("arrow") is not None:
                arrow = {}
                for k, v in doc["arrow"].items():
                    a, b = (key(x) for x in k.split(","))
                    arrow[(a, b)] = ref(v)

            return cls(
                elements,
                [(ref(a), ref(b)) for a, b in doc.get("leq", [])],
                table(doc["neg"]),
                box=table(doc.get("box")),
                bool_block=None if doc.get("bool") is None else [ref(x) for x in doc["bool"]],
                arrow=arrow,
                validate=validate,
                name=doc.get("name"),
            )
        except (KeyError, IndexError, TypeError, AttributeError) as e:
            raise ValidationError(f"Malformed lattice document: {e!r}") from e
        except ValueError as e:
            if isinstance(e, ValidationError):
                raise
            raise ValidationError(f"Malformed lattice document: {e}") from e

    def to_dot(self):
        return lattice_to_dot(self)


# Checking


def _w(L, law, *values, message=None):
    return Witness(law, [L.names[v] for v in values], message)


def _lattice_ops_witness(L):
    n = L.n
    for a, b in itertools.product(range(n), repeat=2):
        if L.meet(a, b) is None:
            return _w(L, "meet-exists", a, b)
        if L.join(a, b) is None:
            return _w(L, "join-exists", a, b)
    return None


def check_lattice(L: FiniteOrtholattice) -> Optional[Witness]:
    """Verify every ortholattice axiom on all tuples.

    Returns ``None`` when ``L`` is an ortholattice and otherwise the first
    failing tuple.
    """
    w = _lattice_ops_witness(L)
    if w is not None:
        return w

    meet, join, neg = L.meet, L.join, L.neg
    n = L.n

    for a in range(n):
        if meet(a, a) != a or join(a, a) != a:
            return _w(L, "idempotence", a)
        if meet(a, L.zero) != L.zero or join(a, L.one) != L.one:
            return _w(L, "boundedness", a)
        if neg[neg[a]] != a:
            return _w(L, "involution", a)
        if join(a, neg[a]) != L.one:
            return _w(L, "complementation", a, message="a \\/ ~a != 1")
        if meet(a, neg[a]) != L.zero:
            return _w(L, "complementation", a, message="a & ~a != 0")

    for a, b in itertools.product(range(n), repeat=2):
        if meet(a, b) != meet(b, a) or join(a, b) != join(b, a):
            return _w(L, "commutativity", a, b)
        if meet(a, join(a, b)) != a or join(a, meet(a, b)) != a:
            return _w(L, "absorption", a, b)
        if L.leq(a, b) != (meet(a, b) == a) or L.leq(a, b) != (join(a, b) == b):
            return _w(L, "order-consistency", a, b)
        if neg[meet(a, b)] != join(neg[a], neg[b]):
            return _w(L, "de-morgan", a, b)
        if L.leq(a, b) and not L.leq(neg[b], neg[a]):
            return _w(L, "order-reversal", a, b)

    # associativity follows from meets being greatest lower bounds of a
    # partial order; it is still checked so that the witness is explicit
    for a, b, c in itertools.product(range(n), repeat=3):
        if meet(a, meet(b, c)) != meet(meet(a, b), c):
            return _w(L, "associativity", a, b, c)
        if join(a, join(b, c)) != join(join(a, b), c):
            return _w(L, "associativity", a, b, c)

    return None


def _require(L, what):
    if what == "box" and L.box is None:
        raise StructureError(f"{L!r} has no box operation")
    if what == "arrow" and L.arrow is None:
        raise StructureError(f"{L!r} has no arrow operation")
    if what == "bool" and L.bool_block is None:
        raise StructureError(f"{L!r} has no Boolean block")


def _check_distributive(L, elements=None):
    elements = list(L.elements()) if elements is None else list(elements)
    meet, join = L.meet, L.join
    for a, b, c in itertools.product(elements, repeat=3):
        if meet(a, join(b, c)) != join(meet(a, b), meet(a, c)):
            return _w(L, "distributivity", a, b, c, message="a & (b \\/ c) != (a & b) \\/ (a & c)")
    return None


def _check_orthomodular(L):
    meet, join, neg = L.meet, L.join, L.neg
    for a, b in itertools.product(L.elements(), repeat=2):
        ab = join(a, b)
        if join(a, meet(neg[a], ab)) != ab:
            return _w(L, "orthomodularity", a, b, message="a \\/ (~a & (a \\/ b)) != a \\/ b")
    return None


def _check_pseudocomplement(L):
    for a, b in itertools.product(L.elements(), repeat=2):
        if L.meet(a, b) == L.zero and not L.leq(b, L.neg[a]):
            return _w(L, "pseudocomplementation", a, b, message="a & b = 0 but b is not below ~a")
    return None


def _check_modal(L):
    box = L.box
    if box[L.one] != L.one:
        return _w(L, "box-top", L.one, message="[]1 != 1")
    for a, b in itertools.product(L.elements(), repeat=2):
        if box[L.meet(a, b)] != L.meet(box[a], box[b]):
            return _w(L, "box-meet", a, b, message="[](a & b) != []a & []b")
    return None


def _check_each(L, law, test, message):
    for a in L.elements():
        if not test(a):
            return _w(L, law, a, message=message)
    return None


def _check_bool_block(L):
    block = sorted(L.bool_block)
    if L.zero not in L.bool_block or L.one not in L.bool_block:
        return Witness("bool-bounds", [], "Boolean block must contain 0 and 1")
    for a in block:
        if L.neg[a] not in L.bool_block:
            return _w(L, "bool-closure", a, message="~a outside the block")
    for a, b in itertools.product(block, repeat=2):
        if L.meet(a, b) not in L.bool_block or L.join(a, b) not in L.bool_block:
            return _w(L, "bool-closure", a, b, message="meet or join outside the block")
    return _check_distributive(L, block)


def _check_arrow(L):
    meet, imp = L.meet, L.implies
    for a in L.elements():
        if imp(a, L.one) != L.one:
            return _w(L, "arrow-top", a, message="a -> 1 != 1")
    for a, b, c in itertools.product(L.elements(), repeat=3):
        if meet(imp(a, b), imp(a, c)) != imp(a, meet(b, c)):
            return _w(L, "arrow-meet", a, b, c, message="(a -> b) & (a -> c) != a -> (b & c)")
    return None


def check_property(L: FiniteOrtholattice, p) -> Optional[Witness]:
    """Exhaustively check a named property, returning the first failing tuple.

    Raises
    ------
    StructureError
        When the property needs a box, arrow or Boolean block that ``L`` lacks.
    NameError
        When ``p`` does not name a property.
    """
    p = LatticeProperty.lookup(p)

    if p in NEEDS_BOX:
        _require(L, "box")

    if p is LatticeProperty.ORTHOLATTICE:
        return check_lattice(L)
    if p is LatticeProperty.DISTRIBUTIVE:
        return _check_distributive(L)
    if p is LatticeProperty.ORTHOMODULAR:
        return _check_orthomodular(L)
    if p is LatticeProperty.PSEUDOCOMPLEMENT:
        return _check_pseudocomplement(L)
    if p is LatticeProperty.MODAL:
        return _check_modal(L)
    if p is LatticeProperty.D:
        if L.box[L.zero] != L.zero:
            return _w(L, "D", L.zero, message="[]0 != 0")
        return None
    if p is LatticeProperty.T:
        return _check_each(L, "T", lambda a: L.leq(L.box[a], a), "[]a is not below a")
    if p is LatticeProperty.WITTGENSTEIN:
        return _check_each(
            L, "Wittgenstein", lambda a: L.meet(L.neg[a], L.possibility(a)) == L.zero, "~a & <>a != 0"
        )
    if p is LatticeProperty.FOUR:
        return _check_each(L, "Four", lambda a: L.leq(L.box[a], L.box[L.box[a]]), "[]a is not below [][]a")
    if p is LatticeProperty.FIVE:
        return _check_each(
            L, "Five", lambda a: L.leq(L.possibility(a), L.box[L.possibility(a)]), "<>a is not below []<>a"
        )
    if p is LatticeProperty.B:
        return _check_each(L, "B", lambda a: L.leq(a, L.box[L.possibility(a)]), "a is not below []<>a")
    if p is LatticeProperty.BOOLEAN_BLOCK_OK:
        _require(L, "bool")
        return _check_bool_block(L)
    if p is LatticeProperty.ARROW_NORMAL:
        _require(L, "arrow")
        return _check_arrow(L)
    if p is LatticeProperty.S5:
        for q in (LatticeProperty.T, LatticeProperty.FOUR, LatticeProperty.FIVE):
            w = check_property(L, q)
            if w is not None:
                return w
        return None
    if p is LatticeProperty.EPISTEMIC:
        for q in (LatticeProperty.MODAL, LatticeProperty.T, LatticeProperty.WITTGENSTEIN):
            w = check_property(L, q)
            if w is not None:
                return w
        return None

    raise NotImplementedError(p)


def check_diamond_laws(L: FiniteOrtholattice) -> Optional[Witness]:
    """``<>(a \\/ b) = <>a \\/ <>b`` and ``<>0 = 0``, derived from the box axioms."""
    _require(L, "box")
    dia = L.possibility
    if dia(L.zero) != L.zero:
        return _w(L, "diamond-bottom", L.zero, message="<>0 != 0")
    for a, b in itertools.product(L.elements(), repeat=2):
        if dia(L.join(a, b)) != L.join(dia(a), dia(b)):
            return _w(L, "diamond-join", a, b, message="<>(a \\/ b) != <>a \\/ <>b")
    return None


# Algebraic semantics


def _valuation_indices(L, valuation, f=None):
    v = {}
    for k, x in valuation.items():
        v[k] = L.index(x)
    if f is not None:
        for name in bool_atoms(f):
            if name in v:
                _require(L, "bool")
                if v[name] not in L.bool_block:
                    raise ValidationError(
                        f"Boolean atom '{name}' mapped to '{L.names[v[name]]}' outside the Boolean block"
                    )
    return v


def eval_alg(L: FiniteOrtholattice, valuation, f: Formula) -> int:
    """Homomorphic extension of ``valuation`` to ``f``.

    Returns the index of the resulting element.
    """
    v = _valuation_indices(L, valuation, f)

    cache = {}

    def ev(g):
        if g in cache:
            return cache[g]
        if isinstance(g, (Atom, BoolAtom)):
            if g.name not in v:
                raise ValidationError(f"Valuation does not assign atom '{g.name}'")
            r = v[g.name]
        elif isinstance(g, Bot):
            r = L.zero
        elif isinstance(g, Top):
            r = L.one
        elif isinstance(g, Neg):
            r = L.neg[ev(g.child)]
        elif isinstance(g, And):
            r = L.meet(ev(g.left), ev(g.right))
        elif isinstance(g, Box):
            r = L.necessity(ev(g.child))
        elif isinstance(g, Cond):
            r = L.implies(ev(g.antecedent), ev(g.consequent))
        else:
            raise TypeError(f"Not a formula: {g!r}")
        cache[g] = r
        return r

    return ev(f)


def entails_alg(L: FiniteOrtholattice, valuation, f: Formula, g: Formula) -> bool:
    return L.leq(eval_alg(L, valuation, f), eval_alg(L, valuation, g))


def entails_on_lattice(L: FiniteOrtholattice, f: Formula, g: Formula, bool_names: Iterable[str] = ()):
    """Check ``f |- g`` under every valuation, returning the first failing one or ``None``."""
    names = sorted(set(atoms(f, g)) | set(bool_atoms(f, g)) | set(bool_names))
    bools = set(bool_atoms(f, g)) | set(bool_names)
    domains = []
    for name in names:
        if name in bools:
            _require(L, "bool")
            domains.append(sorted(L.bool_block))
        else:
            domains.append(list(L.elements()))
    for values in itertools.product(*domains):
        v = dict(zip(names, values))
        if not entails_alg(L, v, f, g):
            return {k: L.names[x] for k, x in v.items()}
    return None


# Structure


def join_irreducibles(L: FiniteOrtholattice) -> List[int]:
    """Nonzero elements that are not the join of the elements strictly below them."""
    result = []
    for a in L.elements():
        if a == L.zero:
            continue
        below = bitset.indices(L.down[a] & ~bitset.singleton(a))
        if L.join_all(below) != a:
            result.append(a)
    return result


def generated_subortholattice(L: FiniteOrtholattice, gens: Iterable) -> FiniteOrtholattice:
    """Closure of ``gens`` together with 0 and 1 under meet, join and complement.

    The result keeps ``box`` when the closure is closed under it, and the
    part of the Boolean block that falls inside the closure.
    """
    members = {L.zero, L.one} | {L.index(g) for g in gens}
    frontier = list(members)
    while frontier:
        new = set()
        for a in frontier:
            new.add(L.neg[a])
            for b in list(members):
                new.add(L.meet(a, b))
                new.add(L.join(a, b))
        frontier = [x for x in new if x not in members]
        members.update(frontier)

    kept = sorted(members)
    position = {a: k for k, a in enumerate(kept)}
    leq = [(position[a], position[b]) for a in kept for b in kept if L.leq(a, b)]
    box = None
    if L.box is not None and all(L.box[a] in members for a in kept):
        box = [position[L.box[a]] for a in kept]
    block = None
    if L.bool_block is not None:
        block = [position[a] for a in kept if a in L.bool_block]

    LOG.debug("Generated subortholattice has %d of %d elements", len(kept), L.n)
    sub = FiniteOrtholattice(
        [L.names[a] for a in kept],
        leq,
        [position[L.neg[a]] for a in kept],
        box=box,
        bool_block=block,
        validate=False,
    )
    sub.parent_indices = kept
    return sub


def _heights(L):
    """Length of the longest chain from 0 to each element."""
    order = sorted(L.elements(), key=lambda a: bitset.count(L.down[a]))
    height = [0] * L.n
    for a in order:
        for b in bitset.indices(L.down[a]):
            if b != a:
                height[a] = max(height[a], height[b] + 1)
    return height


def _invariants(L, ortho_only=False):
    height = _heights(L)
    result = []
    for a in L.elements():
        result.append(
            (
                height[a],
                bitset.count(L.down[a]),
                bitset.count(L.up[a]),
                height[L.neg[a]],
                None if L.box is None or ortho_only else (L.box[a] == a, height[L.box[a]]),
                None if L.bool_block is None or ortho_only else a in L.bool_block,
            )
        )
    return result


def iso_check(L1: FiniteOrtholattice, L2: FiniteOrtholattice, ortho_only=False) -> Optional[Dict[int, int]]:
    """Find an isomorphism preserving order, complement, and box/arrow when present.

    With ``ortho_only`` the box, arrow and Boolean block are ignored.

    Candidates are restricted by invariant vectors (height, cone sizes,
    complement height, box behaviour), then assigned by backtracking.
    Returns the mapping from indices of ``L1`` to indices of ``L2``, or ``None``.
    """
    if L1.n != L2.n:
        return None
    use_box = L1.box is not None and not ortho_only
    use_arrow = L1.arrow is not None and not ortho_only
    if not ortho_only:
        if (L1.box is None) != (L2.box is None) or (L1.arrow is None) != (L2.arrow is None):
            return None
        if (L1.bool_block is None) != (L2.bool_block is None):
            return None

    inv1, inv2 = _invariants(L1, ortho_only), _invariants(L2, ortho_only)
    if sorted(inv1) != sorted(inv2):
        return None

    candidates = {a: [b for b in L2.elements() if inv2[b] == inv1[a]] for a in L1.elements()}
    order = sorted(L1.elements(), key=lambda a: (len(candidates[a]), inv1[a]))

    mapping = {}
    used = set()

    def consistent(a, b):
        for x, y in mapping.items():
            if L1.leq(a, x) != L2.leq(b, y) or L1.leq(x, a) != L2.leq(y, b):
                return False
        na = L1.neg[a]
        if na in mapping and mapping[na] != L2.neg[b]:
            return False
        if na == a and L2.neg[b] != b:
            return False
        if use_box:
            ba = L1.box[a]
            if ba in mapping and mapping[ba] != L2.box[b]:
                return False
            if ba == a and L2.box[b] != b:
                return False
            for x, y in mapping.items():
                if L1.box[x] == a and L2.box[y] != b:
                    return False
        return True

    def arrow_preserved():
        if not use_arrow:
            return True
        return all(L2.arrow[(mapping[u], mapping[v])] == mapping[w] for (u, v), w in L1.arrow.items())

    def search(k):
        if k == len(order):
            return arrow_preserved()
        a = order[k]
        for b in candidates[a]:
            if b in used or not consistent(a, b):
                continue
            mapping[a] = b
            used.add(b)
            if search(k + 1):
                return True
            del mapping[a]
            used.discard(b)
        return False

    if search(0):
        return dict(sorted(mapping.items()))
    return None


def two_element_lattice():
    return FiniteOrtholattice(["0", "1"], [(0, 1)], [1, 0], box=[0, 1], bool_block=[0, 1], name="two-element")


# DOT


def lattice_to_dot(L: FiniteOrtholattice, highlight: Iterable = ()) -> str:
    """Hasse diagram, bottom to top, with optional highlighted elements."""
    highlight = {L.index(x) for x in highlight}
    lines = ["digraph lattice {", "  rankdir=BT;", "  node [shape=plaintext];"]
    for a in L.elements():
        attrs = [f'label="{_dot_escape(L.names[a])}"']
        if a in highlight:
            attrs.append('highlight="true"')
        if L.bool_block is not None and a in L.bool_block:
            attrs.append('boolean="true"')
        lines.append(f"  n{a} [{', '.join(attrs)}];")
    for a, b in L.covers():
        lines.append(f"  n{a} -> n{b} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_escape(text):
    return text.replace("\\", "\\\\").replace('"', '\\"')
