"""The two encodings between the calculi.

Lambda to combinators (phi) eliminates binders by bracket abstraction;
combinators to lambda (psi) expands each combinator into a closed lambda
term built from projection and application macros.

phi comes in two modes. With a context it emits fully instantiated
combinators, so the image type-checks without any solving; the
instantiations are read off the source typing derivation (binder type on
the lambda, argument and result types at each application). Without a
context it emits the bare combinator skeleton, which is enough for
reduction experiments on open or untyped terms.

psi always needs types: the macro for an application (U V) binds a
variable at the result type, and the combinator images bind at the
negated scheme type, so every combinator must carry its instantiation
(use ccl.elaborate first if it does not).
"""

from __future__ import annotations

from typing import Mapping, Optional

from .ccl import (
    App,
    Comb,
    CStar,
    CTerm,
    CVar,
    ground_type_of,
    term_vars,
)
from .lambda_sym import (
    Inj1,
    Inj2,
    Lam,
    LsTerm,
    Pair,
    Star,
    Var,
    _fresh,
    free_vars,
)
from .types import (
    Bottom,
    Conj,
    Disj,
    MType,
    Ty,
    TypingError,
    negate,
)


class TranslationError(Exception):
    pass


def contains_star_c(t: CTerm) -> bool:
    from .ccl import contains_star
    return contains_star(t)


# ---- lambda -> combinators ----


def bracket_abstract(x: str, t: CTerm) -> CTerm:
    """l_x on bare (uninstantiated) combinator terms."""
    match t:
        case CVar(y) if y == x:
            return App(App(Comb("S"), Comb("K")), Comb("K"))
        case CStar(l, r):
            return App(App(Comb("C"), bracket_abstract(x, l)), bracket_abstract(x, r))
    if x not in term_vars(t):
        if contains_star_c(t):
            raise TranslationError(
                "cannot abstract over a term that is neither a pre-term "
                "nor a star of pre-terms"
            )
        return App(Comb("K"), t)
    match t:
        case App(f, a):
            return App(App(Comb("S"), bracket_abstract(x, f)), bracket_abstract(x, a))
    raise TranslationError(f"no abstraction clause applies to {t!r}")


def i_term_at(a: MType) -> CTerm:
    """((S K) K) instantiated to have type a⊥ | a.

    The inner K's second parameter is otherwise unconstrained; it is
    pinned to `a` so the result is fully ground.
    """
    dd = Disj(a, a)
    return App(
        App(Comb("S", (a, dd, a)), Comb("K", (a, negate(dd)))),
        Comb("K", (a, a)),
    )


def bracket_typed(x: str, a: MType, t: CTerm, ctx_c: dict) -> CTerm:
    match t:
        case CVar(y) if y == x:
            return i_term_at(a)
        case CStar(l, r):
            d = ground_type_of(ctx_c, r)
            if isinstance(d, Bottom):
                raise TranslationError("star of a bottom-typed term")
            return App(
                App(Comb("C", (a, d)), bracket_typed(x, a, l, ctx_c)),
                bracket_typed(x, a, r, ctx_c),
            )
    if x not in term_vars(t):
        b = ground_type_of(ctx_c, t)
        if isinstance(b, Bottom):
            raise TranslationError(
                "cannot abstract over a bottom-typed subterm that is not a star"
            )
        return App(Comb("K", (b, negate(a))), t)
    match t:
        case App(f, arg):
            d = ground_type_of(ctx_c, arg)
            ft = ground_type_of(ctx_c, f)
            if isinstance(d, Bottom) or not isinstance(ft, Disj):
                raise TranslationError("ill-typed application under abstraction")
            return App(
                App(Comb("S", (a, d, ft.right)), bracket_typed(x, a, f, ctx_c)),
                bracket_typed(x, a, arg, ctx_c),
            )
    raise TranslationError(f"no abstraction clause applies to {t!r}")


def phi(t: LsTerm, ctx: Optional[Mapping[str, Ty]] = None) -> CTerm:
    """Translate a lambda-side term; instantiated when a context is given."""
    if ctx is None:
        return _phi_untyped(t)
    _, image = _phi_typed(dict(ctx), t)
    return image


def _phi_untyped(t: LsTerm) -> CTerm:
    match t:
        case Var(x):
            return CVar(x)
        case Lam(x, _, body):
            return bracket_abstract(x, _phi_untyped(body))
        case Star(l, r):
            return CStar(_phi_untyped(l), _phi_untyped(r))
        case Pair(l, r):
            return App(App(Comb("P"), _phi_untyped(l)), _phi_untyped(r))
        case Inj1(b, _):
            return App(Comb("Q1"), _phi_untyped(b))
        case Inj2(b, _):
            return App(Comb("Q2"), _phi_untyped(b))
    raise TypeError(f"not a term: {t!r}")


def _phi_typed(ctx: dict, t: LsTerm) -> tuple[Ty, CTerm]:
    match t:
        case Var(x):
            if x not in ctx:
                raise TypingError(f"unbound variable '{x}'")
            return ctx[x], CVar(x)
        case Lam(x, ann, body):
            inner = dict(ctx)
            inner[x] = ann
            bty, image = _phi_typed(inner, body)
            if not isinstance(bty, Bottom):
                raise TypingError("a lambda body must have type #")
            return negate(ann), bracket_typed(x, ann, image, inner)
        case Star(l, r):
            lt, li = _phi_typed(ctx, l)
            rt, ri = _phi_typed(ctx, r)
            if isinstance(lt, Bottom) or isinstance(rt, Bottom) or lt != negate(rt):
                raise TypingError("sides of * are not dual m-types")
            return _bottom(), CStar(li, ri)
        case Pair(l, r):
            lt, li = _phi_typed(ctx, l)
            rt, ri = _phi_typed(ctx, r)
            if isinstance(lt, Bottom) or isinstance(rt, Bottom):
                raise TypingError("pair components must have m-types")
            return Conj(lt, rt), App(App(Comb("P", (lt, rt)), li), ri)
        case Inj1(b, ann):
            bt, bi = _phi_typed(ctx, b)
            if bt != ann.left:
                raise TypingError("injection body does not match the left disjunct")
            return ann, App(Comb("Q1", (ann.left, ann.right)), bi)
        case Inj2(b, ann):
            bt, bi = _phi_typed(ctx, b)
            if bt != ann.right:
                raise TypingError("injection body does not match the right disjunct")
            return ann, App(Comb("Q2", (ann.left, ann.right)), bi)
    raise TypeError(f"not a term: {t!r}")


def _bottom():
    from .types import BOTTOM
    return BOTTOM


# ---- combinators -> lambda ----


def pi_macro(i: int, t: LsTerm, conj: Conj) -> LsTerm:
    """Projection as a lambda term: \\z:~Ai. t * si(z : ~A1 | ~A2)."""
    comp = conj.left if i == 1 else conj.right
    ann = Disj(negate(conj.left), negate(conj.right))
    z = _fresh("_z", free_vars(t))
    inj = Inj1(Var(z), ann) if i == 1 else Inj2(Var(z), ann)
    return Lam(z, negate(comp), Star(t, inj))


def pi_path(indices: str, t: LsTerm, ty: MType) -> tuple[LsTerm, MType]:
    """pi_{i1 i2 ... in} t, applied right to left; returns term and type."""
    term, cur = t, ty
    for ch in reversed(indices):
        if not isinstance(cur, Conj):
            raise TranslationError("projection from a non-conjunction")
        i = int(ch)
        term = pi_macro(i, term, cur)
        cur = cur.left if i == 1 else cur.right
    return term, cur


def pair_app(u: LsTerm, v: LsTerm, result: MType) -> LsTerm:
    """[u, v] = \\x:~B. u * <v, x>, the application macro at result type B."""
    x = _fresh("_x", free_vars(u) | free_vars(v))
    return Lam(x, negate(result), Star(u, Pair(v, Var(x))))


def psi_comb(which: str, inst: tuple[MType, ...]) -> LsTerm:
    """The lambda image of one instantiated combinator."""
    from .ccl import scheme_type

    scheme = scheme_type(which, inst)
    t0 = negate(scheme)
    x = Var("x")

    def p(indices: str) -> tuple[LsTerm, MType]:
        return pi_path(indices, x, t0)

    match which:
        case "K":
            body = Star(p("1")[0], p("22")[0])
        case "S":
            u1, ty1 = p("1")  # ~A | (~B | C)
            u2, ty2 = p("12")  # ~A | B
            w, _ = p("122")  # A
            inner1 = pair_app(u1, w, ty1.right)
            inner2 = pair_app(u2, w, ty2.right)
            outer = pair_app(inner1, inner2, ty1.right.right)
            body = Star(outer, p("222")[0])
        case "C":
            u1, ty1 = p("1")
            u2, ty2 = p("12")
            w, _ = p("22")
            body = Star(pair_app(u1, w, ty1.right), pair_app(u2, w, ty2.right))
        case "P":
            body = Star(Pair(p("1")[0], p("12")[0]), p("22")[0])
        case "Q1":
            a, b = inst
            body = Star(Inj1(p("1")[0], Disj(a, b)), p("2")[0])
        case "Q2":
            a, b = inst
            body = Star(Inj2(p("1")[0], Disj(a, b)), p("2")[0])
        case _:
            raise TranslationError(f"unknown combinator {which}")
    return Lam("x", t0, body)


def psi(t: CTerm, ctx: Mapping[str, Ty]) -> LsTerm:
    """Translate a combinatory term; every combinator must carry inst."""
    ctx = dict(ctx)

    def go(node: CTerm) -> tuple[Ty, LsTerm]:
        match node:
            case CVar(x):
                if x not in ctx:
                    raise TypingError(f"unbound variable '{x}'")
                return ctx[x], Var(x)
            case Comb(which, inst):
                if inst is None:
                    raise TranslationError(
                        f"{which} lacks a type instantiation; "
                        "elaborate the term first"
                    )
                from .ccl import scheme_type
                return scheme_type(which, inst), psi_comb(which, inst)
            case App(f, a):
                ft, fi = go(f)
                at, ai = go(a)
                if not isinstance(ft, Disj) or negate(ft.left) != at:
                    raise TypingError("argument type does not match the function")
                return ft.right, pair_app(fi, ai, ft.right)
            case CStar(l, r):
                lt, li = go(l)
                rt, ri = go(r)
                if isinstance(lt, Bottom) or isinstance(rt, Bottom) or lt != negate(rt):
                    raise TypingError("sides of * are not dual m-types")
                return _bottom(), Star(li, ri)
        raise TypeError(f"not a term: {node!r}")

    return go(t)[1]
