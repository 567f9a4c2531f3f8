import random

import pytest

from cclab.types import (
    BOTTOM,
    Atom,
    Bottom,
    Conj,
    Disj,
    MetaVar,
    NegAtom,
    Substitution,
    TypingError,
    UnificationError,
    is_ground,
    metavar_idents,
    negate,
    unify,
)


def enumerate_types(depth, atoms, signed_leaves=True):
    if depth == 1:
        leaves = [Atom(a) for a in atoms]
        if signed_leaves:
            leaves += [NegAtom(a) for a in atoms]
        return leaves
    smaller = enumerate_types(depth - 1, atoms, signed_leaves)
    out = list(smaller)
    for l in smaller:
        for r in smaller:
            out.append(Conj(l, r))
            out.append(Disj(l, r))
    return out


def test_negate_base_cases():
    assert negate(Atom("a")) == NegAtom("a")
    assert negate(NegAtom("a")) == Atom("a")
    assert negate(Conj(Atom("a"), Atom("b"))) == Disj(NegAtom("a"), NegAtom("b"))
    assert negate(Disj(Atom("a"), Atom("b"))) == Conj(NegAtom("a"), NegAtom("b"))


def test_negate_rejects_bottom():
    with pytest.raises(TypeError):
        negate(BOTTOM)


def test_involution_small_exhaustive():
    for ty in enumerate_types(3, ("a", "b")):
        assert negate(negate(ty)) == ty


def test_negate_injective_on_small_types():
    tys = enumerate_types(2, ("a", "b"))
    images = {negate(t) for t in tys}
    assert len(images) == len(tys)


def test_negate_flips_metavar_polarity():
    m = MetaVar(0)
    assert negate(m) == MetaVar(0, True)
    assert negate(negate(m)) == m


def random_ground_type(rng, depth):
    if depth == 0 or rng.random() < 0.4:
        name = rng.choice("abc")
        return Atom(name) if rng.random() < 0.5 else NegAtom(name)
    ctor = Conj if rng.random() < 0.5 else Disj
    return ctor(random_ground_type(rng, depth - 1), random_ground_type(rng, depth - 1))


def sprinkle_metavars(rng, ty, idents):
    # replace random leaves by metavariables
    if isinstance(ty, (Atom, NegAtom)):
        if rng.random() < 0.3:
            return MetaVar(rng.choice(idents), rng.random() < 0.5)
        return ty
    if isinstance(ty, Conj):
        return Conj(
            sprinkle_metavars(rng, ty.left, idents),
            sprinkle_metavars(rng, ty.right, idents),
        )
    if isinstance(ty, Disj):
        return Disj(
            sprinkle_metavars(rng, ty.left, idents),
            sprinkle_metavars(rng, ty.right, idents),
        )
    return ty


def test_unify_soundness_on_random_instances():
    # Build solvable systems by abstracting a ground type two ways, then
    # check the solver's substitution really equalizes every pair.
    rng = random.Random(20240817)
    solved = 0
    for _ in range(300):
        ground = random_ground_type(rng, 4)
        lhs = sprinkle_metavars(rng, ground, [0, 1, 2])
        rhs = sprinkle_metavars(rng, ground, [3, 4, 5])
        try:
            subst = unify([(lhs, rhs)])
        except UnificationError:
            # same ident sprinkled over unequal subtrees, or occurs; both fine
            continue
        assert subst.apply(lhs) == subst.apply(rhs)
        solved += 1
    assert solved > 200


def test_unify_clash():
    with pytest.raises(UnificationError):
        unify([(Atom("a"), Atom("b"))])
    with pytest.raises(UnificationError):
        unify([(Conj(Atom("a"), Atom("b")), Disj(Atom("a"), Atom("b")))])


def test_unify_occurs_check():
    m = MetaVar(0)
    with pytest.raises(UnificationError):
        unify([(m, Conj(m, Atom("a")))])


def test_unify_through_negated_metavar():
    # ?0⊥ = a∧b  forces  ?0 = a⊥∨b⊥
    m = MetaVar(0, True)
    subst = unify([(m, Conj(Atom("a"), Atom("b")))])
    assert subst.apply(MetaVar(0)) == Disj(NegAtom("a"), NegAtom("b"))


def test_unify_chains_resolve_fully():
    s = unify([(MetaVar(0), MetaVar(1)), (MetaVar(1), Atom("a"))])
    assert s.apply(MetaVar(0)) == Atom("a")
    assert s.apply(MetaVar(0, True)) == NegAtom("a")


def test_substitution_apply_ty_passes_bottom():
    s = Substitution({})
    assert s.apply_ty(BOTTOM) is BOTTOM


def test_metavar_idents_and_groundness():
    ty = Conj(MetaVar(3), Disj(Atom("a"), MetaVar(7, True)))
    assert metavar_idents(ty) == frozenset({3, 7})
    assert not is_ground(ty)
    assert is_ground(Conj(Atom("a"), NegAtom("b")))
