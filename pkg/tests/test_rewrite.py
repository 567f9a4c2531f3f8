import pytest

from cclab.ccl import CRedex
from cclab.lambda_sym import Lam, LsRedex, Star, Var
from cclab.rewrite import (
    C_ENGINE,
    LS_ENGINE,
    FuelExhausted,
    ReachabilityQuery,
    Strategy,
    check_sn,
    engine_for,
    explore,
    normalize,
    omega_redexes,
    pick_redex,
    reaches,
    to_dot,
)
from cclab.syntax import parse_c, parse_context, parse_ls
from cclab.types import Atom, NegAtom

a, na = Atom("a"), NegAtom("a")


def test_normalize_identity_application():
    t = parse_c("I x")
    res = normalize(C_ENGINE, None, t, want_trace=True)
    assert res.term == parse_c("x")
    assert res.steps == 2
    assert [r for r, _, _ in res.trace] == ["s", "k"]


def test_normalize_normal_form_zero_steps():
    res = normalize(C_ENGINE, None, parse_c("x"))
    assert res.steps == 0
    res2 = normalize(LS_ENGINE, None, parse_ls("<u, v>"))
    assert res2.steps == 0


def test_normalize_projection_pair():
    ctx = parse_context("u : ~a, v : ~b, w : a")
    t = parse_ls("<u, v> * s1(w : a | b)")
    res = normalize(LS_ENGINE, ctx, t)
    assert res.term == parse_ls("u * w")
    assert res.steps == 1


def test_li_and_lo_agree_on_result_here_but_not_trace():
    t = parse_c("K (I x) y")
    lo = normalize(C_ENGINE, None, t, Strategy.LEFTMOST_OUTERMOST, want_trace=True)
    li = normalize(C_ENGINE, None, t, Strategy.LEFTMOST_INNERMOST, want_trace=True)
    assert lo.term == li.term == parse_c("x")
    assert [r for r, _, _ in lo.trace] != [r for r, _, _ in li.trace]
    assert [r for r, _, _ in li.trace][0] == "s"  # innermost redex first


def test_normalize_untyped_loop_exhausts_fuel():
    omega2 = Lam("x", a, Star(Var("x"), Var("x")))
    t = Star(omega2, omega2)
    with pytest.raises(FuelExhausted) as ei:
        normalize(LS_ENGINE, None, t, fuel=10)
    assert ei.value.steps == 10


def test_check_sn_finds_the_cycle():
    omega2 = Lam("x", a, Star(Var("x"), Var("x")))
    t = Star(omega2, omega2)
    res = check_sn(LS_ENGINE, None, t)
    assert not res.terminating
    assert res.reason == "reduction cycle found"


def test_check_sn_terminating():
    assert check_sn(C_ENGINE, None, parse_c("x")).max_path == 0
    res = check_sn(C_ENGINE, None, parse_c("I x"))
    assert res.terminating and res.max_path == 2


def test_explore_nonconfluence_lambda_side():
    t = parse_ls("(\\x:a. y * z) * \\x':~a. y' * z'")
    g = explore(LS_ENGINE, None, t)
    assert not g.truncated
    assert sorted(g.normal_form_strings()) == ["y * z", "y' * z'"]

    # with a context the triv shortcuts appear but the normal forms stay put
    ctx = parse_context("y : ~a, z : a, y' : ~b, z' : b")
    t2 = parse_ls("(\\x:a. y * z) * \\x':~a. y' * z'")
    g2 = explore(LS_ENGINE, ctx, t2)
    assert sorted(g2.normal_form_strings()) == ["y * z", "y' * z'"]
    assert any(e.rule == "triv" for e in g2.edges)


def test_explore_nonconfluence_combinatory_side():
    t = parse_c("C (K y) (K z) * C (K y') (K z')")
    g = explore(C_ENGINE, None, t)
    assert sorted(g.normal_form_strings()) == ["y * z", "y' * z'"]

    ctx = parse_context("y : ~a, z : a, y' : ~b, z' : b")
    g2 = explore(C_ENGINE, ctx, t)
    assert sorted(g2.normal_form_strings()) == ["y * z", "y' * z'"]
    assert any(e.rule == "simp" for e in g2.edges)


def test_explore_normal_form_is_single_node():
    g = explore(C_ENGINE, None, parse_c("x"))
    assert len(g.nodes) == 1 and not g.edges
    assert g.normal_forms == [g.root]


def test_explore_graph_soundness():
    ctx = parse_context("y : ~a, z : a, y' : ~b, z' : b")
    t = parse_ls("(\\x:a. y * z) * \\x':~a. y' * z'")
    g = explore(LS_ENGINE, ctx, t)
    for e in g.edges:
        src = g.nodes[e.source]
        got = LS_ENGINE.step(src, LsRedex(e.rule, e.path))
        assert LS_ENGINE.canon(got) == e.target


def test_explore_budget_truncation():
    g = explore(C_ENGINE, None, parse_c("K x (K y z)"), node_budget=1)
    assert g.truncated and g.reason == "node budget"
    # an untyped loop is a single alpha class: explores fully, no truncation
    omega2 = Lam("x", a, Star(Var("x"), Var("x")))
    g2 = explore(LS_ENGINE, None, Star(omega2, omega2))
    assert not g2.truncated
    assert len(g2.nodes) == 1 and g2.normal_forms == []


def test_reaches_basics():
    src, tgt = parse_c("K x y"), parse_c("x")
    ok, witness = reaches(C_ENGINE, None, ReachabilityQuery(src, tgt, 50, True))
    assert ok and [r for r, _ in witness] == ["k"]

    same = parse_c("x")
    ok, witness = reaches(C_ENGINE, None, ReachabilityQuery(same, same, 50, False))
    assert ok and witness == []
    ok, _ = reaches(C_ENGINE, None, ReachabilityQuery(same, same, 50, True))
    assert not ok


def test_reaches_needs_branching_search():
    # LO goes left first; the target is only on the right branch
    t = parse_ls("(\\x:a. y * z) * \\x':~a. y' * z'")
    tgt = parse_ls("y' * z'")
    ok, witness = reaches(LS_ENGINE, None, ReachabilityQuery(t, tgt, 50, True))
    assert ok
    assert [r for r, _ in witness] == ["beta_perp"]


def test_reaches_alpha_matching():
    src = parse_ls("\\x:a. (\\y:~a. y * w) * x")
    tgt = parse_ls("\\z:a. z' * w'")  # not reachable: different names free
    ok, _ = reaches(LS_ENGINE, None, ReachabilityQuery(src, tgt, 10, False))
    assert not ok
    tgt2 = parse_ls("\\q:a. q * w")  # beta then alpha-match
    ok2, _ = reaches(LS_ENGINE, None, ReachabilityQuery(src, tgt2, 10, False))
    assert ok2


def test_omega_redexes_exclude_under_lambda():
    ctx = parse_context("v : ~a, u : a")
    t = parse_ls("\\z:~a. z * \\x:a. v * x")
    full = {(r.rule, r.path) for r in LS_ENGINE.find(ctx, t)}
    assert ("beta_perp", (0,)) in full and ("eta", (0, 1)) in full
    om = {(r.rule, r.path) for r in omega_redexes(LS_ENGINE, ctx, t)}
    assert om == {("eta_perp", ())}


def test_pick_redex_omega_on_ccl_rejected():
    with pytest.raises(ValueError):
        pick_redex(C_ENGINE, None, parse_c("x"), Strategy.OMEGA)


def test_engine_for():
    assert engine_for("ls") is LS_ENGINE
    assert engine_for("ccl") is C_ENGINE
    with pytest.raises(ValueError):
        engine_for("nope")


def test_to_dot_stable_and_escaped():
    g = explore(C_ENGINE, None, parse_c("K x y"))
    dot1 = to_dot(g)
    dot2 = to_dot(explore(C_ENGINE, None, parse_c("K x y")))
    assert dot1 == dot2
    assert "digraph" in dot1 and '"k"' in dot1

    g2 = explore(LS_ENGINE, None, parse_ls("(\\x:a. y * z) * \\x':~a. y' * z'"))
    dot = to_dot(g2)
    assert "\\\\x:a" in dot  # backslash in lambda labels is escaped
    assert "!0" not in dot  # labels show the written names, not alpha-canonical ones
