"""Propositional logic over a small, explicitly declared atom universe.

Formulas are immutable trees built from Top/Bot/Atom/Not/And/Or.  A
:class:`Universe` fixes the atoms once; semantics are truth-table bitmaps
(one bit per assignment), so entailment, equivalence and consistency are
exact integer operations at desk scale.
"""

from __future__ import annotations

from typing import Iterable, Iterator

DEFAULT_MAX_ATOMS = 16

RESERVED_NAMES = {"T", "F"}


class ParseError(ValueError):
    """Malformed formula text; carries the offending offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.message = message
        self.position = position


class UnknownAtomError(ParseError):
    """An identifier that is not declared in the universe."""


# ---------------------------------------------------------------------------
# Formula trees


class Formula:
    """Base class; nodes are immutable and compare structurally."""

    __slots__ = ("_hash",)
    prec = 4  # parenthesisation precedence; higher binds tighter

    def key(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other) -> bool:
        return self is other or (isinstance(other, Formula) and self.key() == other.key())

    def __hash__(self) -> int:
        h = getattr(self, "_hash", None)
        if h is None:
            h = hash(self.key())
            object.__setattr__(self, "_hash", h)
        return h

    def __invert__(self) -> "Formula":
        return Not(self)

    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __repr__(self) -> str:
        return str(self)

    def __lt__(self, other: "Formula") -> bool:
        return self.key() < other.key()


class Top(Formula):
    __slots__ = ()

    def key(self):
        return (0,)

    def __str__(self):
        return "T"


class Bot(Formula):
    __slots__ = ()

    def key(self):
        return (1,)

    def __str__(self):
        return "F"


TOP = Top()
BOT = Bot()


class Atom(Formula):
    __slots__ = ("name", "index", "_hash")

    def __init__(self, name: str, index: int):
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "index", index)

    def key(self):
        return (2, self.index, self.name)

    def __str__(self):
        return self.name


class Not(Formula):
    __slots__ = ("child", "_hash")
    prec = 3

    def __init__(self, child: Formula):
        object.__setattr__(self, "child", child)

    def key(self):
        return (3, self.child.key())

    def __str__(self):
        c = self.child
        body = str(c) if c.prec >= self.prec else f"({c})"
        return f"~{body}"


class _BinOp(Formula):
    __slots__ = ("left", "right", "_hash")
    symbol = "?"
    rank = -1

    def __init__(self, left: Formula, right: Formula):
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    def key(self):
        return (self.rank, self.left.key(), self.right.key())

    def __str__(self):
        # chains associate to the right; a same-operator left child keeps
        # its parentheses so printing round-trips structurally
        l, r = self.left, self.right
        ls = str(l) if l.prec > self.prec else f"({l})"
        rs = str(r) if r.prec >= self.prec else f"({r})"
        return f"{ls} {self.symbol} {rs}"


class And(_BinOp):
    __slots__ = ()
    prec = 2
    symbol = "&"
    rank = 4


class Or(_BinOp):
    __slots__ = ()
    prec = 1
    symbol = "|"
    rank = 5


def atoms_of(f: Formula) -> frozenset[Atom]:
    if isinstance(f, Atom):
        return frozenset((f,))
    if isinstance(f, Not):
        return atoms_of(f.child)
    if isinstance(f, _BinOp):
        return atoms_of(f.left) | atoms_of(f.right)
    return frozenset()


def literals_of(f: Formula) -> frozenset[Formula]:
    """Literals occurring in the negation normal form of ``f``."""
    g = nnf(f)
    out: set[Formula] = set()
    stack = [g]
    while stack:
        node = stack.pop()
        if isinstance(node, (Atom, Not)):
            out.add(node)
        elif isinstance(node, _BinOp):
            stack.append(node.left)
            stack.append(node.right)
    return frozenset(out)


# ---------------------------------------------------------------------------
# Normal forms


def nnf(f: Formula) -> Formula:
    """Push negation to atoms; ~~P collapses, ~T/~F fold."""
    if isinstance(f, (Top, Bot, Atom)):
        return f
    if isinstance(f, And):
        return And(nnf(f.left), nnf(f.right))
    if isinstance(f, Or):
        return Or(nnf(f.left), nnf(f.right))
    g = f.child
    if isinstance(g, Top):
        return BOT
    if isinstance(g, Bot):
        return TOP
    if isinstance(g, Atom):
        return f
    if isinstance(g, Not):
        return nnf(g.child)
    if isinstance(g, And):
        return Or(nnf(Not(g.left)), nnf(Not(g.right)))
    return And(nnf(Not(g.left)), nnf(Not(g.right)))


def _chain(f: Formula, cls: type) -> Iterator[Formula]:
    if isinstance(f, cls):
        yield from _chain(f.left, cls)
        yield from _chain(f.right, cls)
    else:
        yield f


def _rebuild(parts: list[Formula], cls: type, empty: Formula) -> Formula:
    if not parts:
        return empty
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = cls(p, out)
    return out


def canonical(f: Formula) -> Formula:
    """NNF with flattened, sorted, deduplicated And/Or chains.

    Constant children fold away; no other simplification is applied, so
    the form is a syntactic normal form, not a semantic one.
    """
    g = nnf(f)
    return _canon(g)


def _canon(f: Formula) -> Formula:
    if isinstance(f, (Top, Bot, Atom, Not)):
        return f
    if isinstance(f, And):
        cls, absorb, neutral = And, BOT, TOP
    else:
        cls, absorb, neutral = Or, TOP, BOT
    parts: list[Formula] = []
    seen: set[Formula] = set()
    for child in _chain(f, cls):
        c = _canon(child)
        if c == absorb:
            return absorb
        if c == neutral or c in seen:
            continue
        seen.add(c)
        parts.append(c)
    parts.sort(key=lambda p: p.key())
    if not parts:
        return neutral
    if len(parts) == 1:
        return parts[0]
    return _rebuild(parts, cls, neutral)


def is_literal(f: Formula) -> bool:
    return isinstance(f, Atom) or (isinstance(f, Not) and isinstance(f.child, Atom))


def negate(f: Formula) -> Formula:
    """Canonical negation (NNF-normalised)."""
    return canonical(Not(f))


# ---------------------------------------------------------------------------
# Universe and semantics


class Universe:
    """A fixed, ordered set of atoms with table-based semantics.

    Tables are integers with one bit per model; model ``m`` assigns atom
    ``i`` the value ``(m >> i) & 1``.
    """

    def __init__(self, names: Iterable[str], max_atoms: int = DEFAULT_MAX_ATOMS):
        names = list(names)
        if len(names) > max_atoms:
            raise ValueError(f"universe of {len(names)} atoms exceeds the bound of {max_atoms}")
        if len(set(names)) != len(names):
            raise ValueError("duplicate atom names")
        for n in names:
            if n in RESERVED_NAMES:
                raise ValueError(f"atom name {n!r} is reserved")
        self.atoms: tuple[Atom, ...] = tuple(Atom(n, i) for i, n in enumerate(names))
        self.by_name = {a.name: a for a in self.atoms}
        self.n_models = 1 << len(self.atoms)
        self.full = (1 << self.n_models) - 1
        self._tables: dict[Formula, int] = {}
        self._atom_tables = [self._make_atom_table(i) for i in range(len(self.atoms))]

    def __len__(self) -> int:
        return len(self.atoms)

    def atom(self, name: str) -> Atom:
        try:
            return self.by_name[name]
        except KeyError:
            raise KeyError(f"unknown atom {name!r}") from None

    def _make_atom_table(self, i: int) -> int:
        # bits [2^i, 2^(i+1)) set, repeated by doubling up to 2^n bits
        half = 1 << i
        table = ((1 << half) - 1) << half
        width = half << 1
        while width < self.n_models:
            table |= table << width
            width <<= 1
        return table & self.full

    def table(self, f: Formula) -> int:
        t = self._tables.get(f)
        if t is None:
            t = self._compute_table(f)
            self._tables[f] = t
        return t

    def _compute_table(self, f: Formula) -> int:
        if isinstance(f, Top):
            return self.full
        if isinstance(f, Bot):
            return 0
        if isinstance(f, Atom):
            if self.atoms[f.index] != f:
                raise ValueError(f"atom {f} does not belong to this universe")
            return self._atom_tables[f.index]
        if isinstance(f, Not):
            return self.full ^ self.table(f.child)
        if isinstance(f, And):
            return self.table(f.left) & self.table(f.right)
        if isinstance(f, Or):
            return self.table(f.left) | self.table(f.right)
        raise TypeError(f"not a formula: {f!r}")

    # -- model-level API ----------------------------------------------------

    def models_of(self, f: Formula) -> frozenset[int]:
        """All satisfying assignments, as atom-indexed bit vectors."""
        t = self.table(f)
        return frozenset(m for m in range(self.n_models) if (t >> m) & 1)

    def satisfies(self, model: int, f: Formula) -> bool:
        return bool((self.table(f) >> model) & 1)

    def conjoin_tables(self, formulas: Iterable[Formula]) -> int:
        t = self.full
        for f in formulas:
            t &= self.table(f)
        return t

    # -- consequence --------------------------------------------------------

    def entails(self, premises: Iterable[Formula], f: Formula) -> bool:
        return self.conjoin_tables(premises) & ~self.table(f) == 0

    def equivalent(self, f1: Formula, f2: Formula) -> bool:
        return self.table(f1) == self.table(f2)

    def is_tautology(self, f: Formula) -> bool:
        return self.table(f) == self.full

    def is_contradiction(self, f: Formula) -> bool:
        return self.table(f) == 0

    def is_consistent_semantic(self, formulas: Iterable[Formula]) -> bool:
        return self.conjoin_tables(formulas) != 0

    def is_consistent_syntactic(self, formulas: Iterable[Formula]) -> bool:
        """No formula occurs together with its negation, up to canonical form."""
        canon = {canonical(f) for f in formulas}
        return all(negate(f) not in canon for f in canon)

    # -- parsing ------------------------------------------------------------

    def parse(self, text: str) -> Formula:
        return _Parser(text, self).parse()


# ---------------------------------------------------------------------------
# Parser: atoms, ~  &  |  ->, T/F, parentheses; precedence ~ > & > | > ->

_IDENT_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_IDENT_CONT = _IDENT_START | set("0123456789")


class _Parser:
    def __init__(self, text: str, universe: Universe):
        self.text = text
        self.universe = universe
        self.pos = 0

    def parse(self) -> Formula:
        f = self._implication()
        self._skip_ws()
        if self.pos != len(self.text):
            raise ParseError(f"unexpected {self.text[self.pos]!r}", self.pos)
        return f

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def _peek(self) -> str:
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _implication(self) -> Formula:
        left = self._disjunction()
        self._skip_ws()
        if self.text.startswith("->", self.pos):
            self.pos += 2
            right = self._implication()
            return Or(Not(left), right)
        return left

    def _disjunction(self) -> Formula:
        parts = [self._conjunction()]
        while self._peek() == "|":
            self.pos += 1
            parts.append(self._conjunction())
        return _rebuild(parts, Or, BOT)

    def _conjunction(self) -> Formula:
        parts = [self._unary()]
        while self._peek() == "&":
            self.pos += 1
            parts.append(self._unary())
        return _rebuild(parts, And, TOP)

    def _unary(self) -> Formula:
        ch = self._peek()
        if ch == "~":
            self.pos += 1
            return Not(self._unary())
        if ch == "(":
            self.pos += 1
            f = self._implication()
            if self._peek() != ")":
                raise ParseError("expected ')'", self.pos)
            self.pos += 1
            return f
        if ch in _IDENT_START:
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos] in _IDENT_CONT:
                self.pos += 1
            name = self.text[start : self.pos]
            if name == "T":
                return TOP
            if name == "F":
                return BOT
            if name not in self.universe.by_name:
                raise UnknownAtomError(f"unknown atom {name!r}", start)
            return self.universe.by_name[name]
        raise ParseError("expected a formula", self.pos)
