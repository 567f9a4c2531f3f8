"""Deterministic term generation for both calculi.

The verification suites quantify over every typable term below a size
bound, so generation here is exhaustive and size-indexed rather than
sampled; a seeded random mode exists for smoke tests past the range
exhaustion can reach.

Size conventions. C-terms cost their node count: instantiations are
recoverable by inference, so they are free. Lambda terms cost node
count plus the size of every written annotation (binder types, the
disjunctions on injections): annotations are drawn from an unbounded
pool of types, and charging for them is what keeps a size bound
meaningful. Type size is node count.

A star has type bottom and both calculi type star sides at m-types, so
in a typable term the star can only sit at the root. The enumerators
exploit this: m-typed terms are built by a size-indexed dynamic
program, bottom-typed terms by pairing duals on top.
"""

from __future__ import annotations

import itertools
from random import Random
from typing import Iterable, Optional

from .ccl import SCHEME_ARITY, App, Comb, CStar, CTerm, CVar, scheme_type
from .lambda_sym import Inj1, Inj2, Lam, LsTerm, Pair, Star, Var
from .types import BOTTOM, Atom, Conj, Disj, MType, NegAtom, Ty, negate

COMBINATOR_ORDER = ("K", "S", "C", "P", "Q1", "Q2")

ATOM_NAMES = "abcdefgh"


def atom_names(n: int) -> tuple[str, ...]:
    if not 1 <= n <= len(ATOM_NAMES):
        raise ValueError(f"supported atom counts are 1..{len(ATOM_NAMES)}")
    return tuple(ATOM_NAMES[:n])


def atom_pool(atoms: Iterable[str]) -> tuple[MType, ...]:
    """The signed atoms over the given names, positives first per name."""
    out: list[MType] = []
    for name in atoms:
        out.append(Atom(name))
        out.append(NegAtom(name))
    return tuple(out)


def standard_context(n_atoms: int = 2) -> dict[str, Ty]:
    """Dual variable pairs, one pair per atom: u:a, v:~a, p:b, q:~b, ..."""
    names = "uvpqrsmn"
    ctx: dict[str, Ty] = {}
    for i, a in enumerate(atom_names(n_atoms)):
        ctx[names[2 * i]] = Atom(a)
        ctx[names[2 * i + 1]] = NegAtom(a)
    return ctx


def type_size(ty: Ty) -> int:
    match ty:
        case Conj(l, r) | Disj(l, r):
            return 1 + type_size(l) + type_size(r)
        case _:
            return 1


def types_by_size(atoms: Iterable[str], max_size: int, signed: bool = True) -> list[list[MType]]:
    """All m-types of each node count up to max_size, indexed by size.

    Leaves are the atoms (and their negations when signed); every
    compound size is odd, so even slots stay empty.
    """
    levels: list[list[MType]] = [[] for _ in range(max_size + 1)]
    if max_size >= 1:
        levels[1] = list(atom_pool(atoms) if signed else tuple(Atom(a) for a in atoms))
    for s in range(3, max_size + 1):
        for ls in range(1, s - 1):
            for lt in levels[ls]:
                for rt in levels[s - 1 - ls]:
                    levels[s].append(Conj(lt, rt))
                    levels[s].append(Disj(lt, rt))
    return levels


def types_to_depth(atoms: Iterable[str], depth: int, signed: bool = False) -> list[MType]:
    """All m-types of depth <= depth (a leaf has depth 1).

    Grows doubly exponentially; depth 4 over two positive atoms is
    already 81,610 types.
    """
    leaves: list[MType] = list(atom_pool(atoms) if signed else tuple(Atom(a) for a in atoms))
    if depth < 1:
        return []
    cur = list(leaves)
    for _ in range(depth - 1):
        nxt = list(leaves)
        for l in cur:
            for r in cur:
                nxt.append(Conj(l, r))
                nxt.append(Disj(l, r))
        cur = nxt
    return cur


def combinator_variants(atoms: Iterable[str]) -> list[Comb]:
    """Every combinator instantiated over the signed atoms, fixed order."""
    pool = atom_pool(atoms)
    out: list[Comb] = []
    for which in COMBINATOR_ORDER:
        for inst in itertools.product(pool, repeat=SCHEME_ARITY[which]):
            out.append(Comb(which, tuple(inst)))
    return out


def c_weight(t: CTerm) -> int:
    match t:
        case CVar(_) | Comb(_, _):
            return 1
        case App(f, a):
            return 1 + c_weight(f) + c_weight(a)
        case CStar(l, r):
            return 1 + c_weight(l) + c_weight(r)
    raise TypeError(f"not a c-term: {t!r}")


def ls_weight(t: LsTerm) -> int:
    match t:
        case Var(_):
            return 1
        case Lam(_, ann, body):
            return 1 + type_size(ann) + ls_weight(body)
        case Star(l, r) | Pair(l, r):
            return 1 + ls_weight(l) + ls_weight(r)
        case Inj1(b, ann) | Inj2(b, ann):
            return 1 + type_size(ann) + ls_weight(b)
    raise TypeError(f"not a term: {t!r}")


def _add(level: dict[Ty, list], ty: Ty, t) -> None:
    level.setdefault(ty, []).append(t)


def enumerate_c(ctx: dict[str, Ty], max_size: int, atoms: Iterable[str]) -> list[tuple[Ty, CTerm]]:
    """Every typable c-term of size <= max_size over ctx, by size.

    Combinators appear fully instantiated over the signed atoms, so
    every result passes strict inference as-is.
    """
    atoms = tuple(atoms)
    m: list[dict[Ty, list[CTerm]]] = [{} for _ in range(max_size + 1)]
    if max_size >= 1:
        for x, ty in ctx.items():
            _add(m[1], ty, CVar(x))
        for comb in combinator_variants(atoms):
            assert comb.inst is not None
            _add(m[1], scheme_type(comb.which, comb.inst), comb)
    for s in range(3, max_size + 1):
        for fs in range(1, s - 1):
            for ft, fl in m[fs].items():
                if not isinstance(ft, Disj):
                    continue
                args = m[s - 1 - fs].get(negate(ft.left))
                if not args:
                    continue
                for f in fl:
                    for a in args:
                        _add(m[s], ft.right, App(f, a))
    out: list[tuple[Ty, CTerm]] = []
    for s in range(1, max_size + 1):
        for ty, terms in m[s].items():
            for t in terms:
                out.append((ty, t))
        # stars of this size: dual m-typed sides
        for ls in range(1, s - 1):
            for lt, ll in m[ls].items():
                rights = m[s - 1 - ls].get(negate(lt))
                if not rights:
                    continue
                for l in ll:
                    for r in rights:
                        out.append((BOTTOM, CStar(l, r)))
    return out


def enumerate_ls(ctx: dict[str, Ty], max_size: int, atoms: Iterable[str]) -> list[tuple[Ty, LsTerm]]:
    """Every typable lambda term of weighted size <= max_size over ctx.

    Binders are named b0, b1, ... by nesting depth, so distinct stacks
    never collide and output is deterministic. Annotations range over
    all m-types the weight budget leaves room for.
    """
    atoms = tuple(atoms)
    ty_levels = types_by_size(atoms, max_size, signed=True)
    # memo: binder stack -> (m-typed levels, bottom-typed levels)
    memo: dict[tuple[Ty, ...], tuple[list[dict[Ty, list[LsTerm]]], list[list[LsTerm]]]] = {}

    def levels(stack: tuple[Ty, ...]):
        got = memo.get(stack)
        if got is not None:
            return got
        budget = max_size - sum(1 + type_size(a) for a in stack)
        m: list[dict[Ty, list[LsTerm]]] = [{} for _ in range(max(budget, 0) + 1)]
        b: list[list[LsTerm]] = [[] for _ in range(max(budget, 0) + 1)]
        if budget >= 1:
            for x, ty in ctx.items():
                _add(m[1], ty, Var(x))
            for i, ann in enumerate(stack):
                _add(m[1], ann, Var(f"b{i}"))
        for w in range(2, budget + 1):
            for wl in range(1, w - 1):
                wr = w - 1 - wl
                for lt, ll in m[wl].items():
                    # pairs with every right side, stars with the duals
                    for rt, rl in m[wr].items():
                        ty = Conj(lt, rt)
                        for l in ll:
                            for r in rl:
                                _add(m[w], ty, Pair(l, r))
                    for r in m[wr].get(negate(lt), ()):
                        for l in ll:
                            b[w].append(Star(l, r))
            for wb in range(1, w - 2):
                for bty, bl in m[wb].items():
                    ts_other = w - 2 - wb - type_size(bty)
                    if not 1 <= ts_other < len(ty_levels):
                        continue
                    for other in ty_levels[ts_other]:
                        ann1, ann2 = Disj(bty, other), Disj(other, bty)
                        for bt in bl:
                            _add(m[w], ann1, Inj1(bt, ann1))
                            _add(m[w], ann2, Inj2(bt, ann2))
            for ts_ann in range(1, w - 3):  # a bottom body is a star, never smaller than 3
                wb = w - 1 - ts_ann
                for ann in ty_levels[ts_ann]:
                    _, sub_b = levels(stack + (ann,))
                    if wb < len(sub_b):
                        ty = negate(ann)
                        for body in sub_b[wb]:
                            _add(m[w], ty, Lam(f"b{len(stack)}", ann, body))
        memo[stack] = (m, b)
        return m, b

    m, b = levels(())
    out: list[tuple[Ty, LsTerm]] = []
    for w in range(1, max_size + 1):
        for ty, terms in m[w].items():
            for t in terms:
                out.append((ty, t))
        for t in b[w]:
            out.append((BOTTOM, t))
    return out


def _pre_levels(names: Iterable[str], max_size: int) -> list[list[CTerm]]:
    levels: list[list[CTerm]] = [[] for _ in range(max_size + 1)]
    if max_size >= 1:
        levels[1] = [CVar(x) for x in names] + [Comb(w, None) for w in COMBINATOR_ORDER]
    for s in range(3, max_size + 1):
        for fs in range(1, s - 1):
            for f in levels[fs]:
                for a in levels[s - 1 - fs]:
                    levels[s].append(App(f, a))
    return levels


def enumerate_pre_terms(names: Iterable[str], max_size: int) -> list[CTerm]:
    """Every star-free applicative term over the names and bare combinators."""
    return [t for lvl in _pre_levels(names, max_size) for t in lvl]


def enumerate_star_terms(names: Iterable[str], max_size: int) -> list[CTerm]:
    """Every root star of two star-free terms, total size <= max_size."""
    levels = _pre_levels(names, max_size)
    out: list[CTerm] = []
    for s in range(3, max_size + 1):
        for ls in range(1, s - 1):
            for l in levels[ls]:
                for r in levels[s - 1 - ls]:
                    out.append(CStar(l, r))
    return out


def random_c(ctx: dict[str, Ty], atoms: Iterable[str], max_size: int, rng: Random) -> tuple[Ty, CTerm]:
    """One random typable c-term, grown by random well-typed joins.

    Coverage is best-effort: the walk only composes what earlier draws
    produced. Deterministic for a given rng state.
    """
    pool: list[tuple[Ty, CTerm, int]] = [(ty, CVar(x), 1) for x, ty in ctx.items()]
    pool += [(scheme_type(c.which, c.inst), c, 1) for c in combinator_variants(atoms)]
    grown: list[tuple[Ty, CTerm, int]] = []
    for _ in range(16 * max_size):
        fns = [e for e in pool if isinstance(e[0], Disj)]
        if not fns:
            break
        ft, f, fs = rng.choice(fns)
        want = negate(ft.left)
        args = [e for e in pool if e[0] == want and e[2] + fs + 1 <= max_size]
        if not args:
            continue
        at, a, asz = rng.choice(args)
        entry = (ft.right, App(f, a), fs + asz + 1)
        pool.append(entry)
        grown.append(entry)
    if grown and rng.random() < 0.5:
        # try to cap the largest piece with a dual for a star
        ty, t, sz = max(grown, key=lambda e: e[2])
        duals = [e for e in pool if e[0] == negate(ty) and e[2] + sz + 1 <= max_size]
        if duals:
            dt, d, dsz = rng.choice(duals)
            return BOTTOM, CStar(t, d)
    if grown:
        ty, t, _ = rng.choice(grown)
        return ty, t
    ty, t, _ = rng.choice(pool)
    return ty, t


def random_ls(ctx: dict[str, Ty], atoms: Iterable[str], max_size: int, rng: Random) -> tuple[Ty, LsTerm]:
    """One random typable lambda term; same growth idea as random_c."""
    pool: list[tuple[Ty, LsTerm, int]] = [(ty, Var(x), 1) for x, ty in ctx.items()]
    signed = atom_pool(atoms)
    fresh = itertools.count()
    for _ in range(16 * max_size):
        move = rng.randrange(4)
        lt, l, lsz = rng.choice(pool)
        if move == 0:
            rt, r, rsz = rng.choice(pool)
            if lsz + rsz + 1 <= max_size:
                pool.append((Conj(lt, rt), Pair(l, r), lsz + rsz + 1))
        elif move == 1:
            other = rng.choice(signed)
            first = rng.random() < 0.5
            ann = Disj(lt, other) if first else Disj(other, lt)
            w = 1 + type_size(ann) + lsz
            if w <= max_size:
                pool.append((ann, Inj1(l, ann) if first else Inj2(l, ann), w))
        else:
            # abstract: bind x at the left type, cut x against a dual
            duals = [e for e in pool if e[0] == negate(lt) and e[2] + lsz + 5 <= max_size]
            if duals:
                dt, d, dsz = rng.choice(duals)
                x = f"x{next(fresh)}"
                body = Star(Var(x), d) if move == 2 else Star(d, Var(x))
                lam = Lam(x, lt, body)
                pool.append((negate(lt), lam, 1 + type_size(lt) + 2 + dsz))
    best = [e for e in pool if e[2] > 1]
    if best and rng.random() < 0.5:
        ty, t, sz = max(best, key=lambda e: e[2])
        duals = [e for e in pool if e[0] == negate(ty) and e[2] + sz + 1 <= max_size]
        if duals:
            dt, d, _ = rng.choice(duals)
            return BOTTOM, Star(t, d)
    ty, t, _ = rng.choice(best or pool)
    return ty, t
