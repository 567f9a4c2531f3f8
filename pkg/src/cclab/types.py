"""Type language shared by both calculi.

Types live in negation normal form: negation exists on atoms (``NegAtom``)
and, during inference only, as a polarity flag on metavariables. There is
no general negation constructor, so ``negate`` is a total structural
function and an involution.

``Bottom`` is the absurdity type. It is a separate class, never a
subexpression of an ``MType``: conjunction and disjunction are defined on
m-types only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union


class TypingError(Exception):
    """A term failed to type-check."""

    def __init__(self, message: str, span=None):
        super().__init__(message)
        self.span = span


class UnificationError(TypingError):
    """Constraint solving failed: constructor clash or occurs-check."""


@dataclass(frozen=True, slots=True)
class MType:
    """Base class for m-types (the connective layer: atoms, ~atoms, &, |)."""


@dataclass(frozen=True, slots=True)
class Atom(MType):
    name: str


@dataclass(frozen=True, slots=True)
class NegAtom(MType):
    name: str


@dataclass(frozen=True, slots=True)
class Conj(MType):
    left: MType
    right: MType


@dataclass(frozen=True, slots=True)
class Disj(MType):
    left: MType
    right: MType


@dataclass(frozen=True, slots=True)
class MetaVar(MType):
    """Inference-only placeholder; ``negated`` marks an odd number of negations."""

    ident: int
    negated: bool = False


@dataclass(frozen=True, slots=True)
class Bottom:
    """The absurdity type. Not an m-type."""


BOTTOM = Bottom()

Ty = Union[MType, Bottom]


def negate(t: MType) -> MType:
    """Structural negation. De Morgan on connectives, flip on leaves.

    Hot path for inference and enumeration, hence the type() dispatch.
    """
    c = type(t)
    if c is Atom:
        return NegAtom(t.name)
    if c is NegAtom:
        return Atom(t.name)
    if c is Conj:
        return Disj(negate(t.left), negate(t.right))
    if c is Disj:
        return Conj(negate(t.left), negate(t.right))
    if c is MetaVar:
        return MetaVar(t.ident, not t.negated)
    raise TypeError(f"not an m-type: {t!r}")


def metavar_idents(t: MType) -> frozenset[int]:
    match t:
        case MetaVar(i, _):
            return frozenset((i,))
        case Conj(l, r) | Disj(l, r):
            return metavar_idents(l) | metavar_idents(r)
        case _:
            return frozenset()


def is_ground(t: Ty) -> bool:
    if isinstance(t, Bottom):
        return True
    return not metavar_idents(t)


@dataclass
class Substitution:
    """Solved metavariable bindings, fully resolved (hence idempotent)."""

    bindings: dict[int, MType]

    def apply(self, t: MType) -> MType:
        match t:
            case MetaVar(i, p):
                if i in self.bindings:
                    v = self.bindings[i]
                    return negate(v) if p else v
                return t
            case Conj(l, r):
                return Conj(self.apply(l), self.apply(r))
            case Disj(l, r):
                return Disj(self.apply(l), self.apply(r))
            case _:
                return t

    def apply_ty(self, t: Ty) -> Ty:
        return t if isinstance(t, Bottom) else self.apply(t)


def unify(constraints: Iterable[tuple[MType, MType]]) -> Substitution:
    """Solve equations between m-types.

    A negated metavariable unifying with T binds the underlying variable to
    negate(T); this keeps solutions in negation normal form for free. Raises
    UnificationError on clash or occurs-check failure.
    """
    env: dict[int, MType] = {}

    def walk(t: MType) -> MType:
        while isinstance(t, MetaVar) and t.ident in env:
            bound = env[t.ident]
            t = negate(bound) if t.negated else bound
        return t

    def occurs(ident: int, t: MType) -> bool:
        t = walk(t)
        match t:
            case MetaVar(i, _):
                return i == ident
            case Conj(l, r) | Disj(l, r):
                return occurs(ident, l) or occurs(ident, r)
            case _:
                return False

    work = [(s, t) for (s, t) in constraints]
    while work:
        s, t = work.pop()
        s, t = walk(s), walk(t)
        if s == t:
            continue
        if isinstance(s, MetaVar) or isinstance(t, MetaVar):
            m, other = (s, t) if isinstance(s, MetaVar) else (t, s)
            if occurs(m.ident, other):
                raise UnificationError(
                    f"occurs check: ?{m.ident} inside {other!r}"
                )
            env[m.ident] = negate(other) if m.negated else other
            continue
        match s, t:
            case (Conj(a, b), Conj(c, d)) | (Disj(a, b), Disj(c, d)):
                work.append((a, c))
                work.append((b, d))
            case _:
                raise UnificationError(f"cannot unify {s!r} with {t!r}")

    def resolve(t: MType) -> MType:
        t = walk(t)
        match t:
            case Conj(l, r):
                return Conj(resolve(l), resolve(r))
            case Disj(l, r):
                return Disj(resolve(l), resolve(r))
            case _:
                return t

    return Substitution({i: resolve(MetaVar(i)) for i in env})
