"""Calculus-generic reduction: strategies, graphs, reachability, SN checks.

Both calculi are non-confluent by design, so a deterministic strategy has
to impose an order: redexes are ranked by pre-order position of their path
and then by rule priority (the order the rules are declared in). Leftmost-
innermost uses post-order position instead. The omega strategy restricts
to redexes not under any lambda and only exists on the lambda side.

Because reduction is finitely branching and (for typed terms) strongly
normalizing, exhaustive exploration modulo alpha-equivalence terminates;
budgets exist to keep untyped or adversarial inputs from spinning.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Union

from . import ccl, lambda_sym
from .syntax import print_c, print_ls
from .types import Ty

Term = Union[lambda_sym.LsTerm, ccl.CTerm]
Context = Mapping[str, Ty]
Redex = Union[lambda_sym.LsRedex, ccl.CRedex]


@dataclass(frozen=True, slots=True)
class Engine:
    name: str
    rules: tuple[str, ...]
    find: Callable
    step: Callable
    canon: Callable
    show: Callable
    typeof: Callable
    children: Callable
    is_binder: Callable


LS_ENGINE = Engine(
    name="ls",
    rules=lambda_sym.LS_RULES,
    find=lambda_sym.find_redexes,
    step=lambda_sym.reduce_at,
    canon=lambda_sym.canonical,
    show=print_ls,
    typeof=lambda_sym.infer,
    children=lambda_sym.children,
    is_binder=lambda t: isinstance(t, lambda_sym.Lam),
)

C_ENGINE = Engine(
    name="ccl",
    rules=ccl.C_RULES,
    find=ccl.find_redexes_c,
    step=ccl.reduce_at_c,
    canon=lambda t: t,  # no binders, terms are their own alpha class
    show=print_c,
    typeof=ccl.infer_c,
    children=ccl.children,
    is_binder=lambda t: False,
)


def engine_for(calculus: str) -> Engine:
    if calculus == "ls":
        return LS_ENGINE
    if calculus == "ccl":
        return C_ENGINE
    raise ValueError(f"unknown calculus {calculus!r}")


class Strategy(enum.Enum):
    LEFTMOST_OUTERMOST = "lo"
    LEFTMOST_INNERMOST = "li"
    ALL = "all"
    OMEGA = "omega"


class FuelExhausted(Exception):
    def __init__(self, term: Term, steps: int):
        self.term = term
        self.steps = steps
        super().__init__(f"no normal form within {steps} steps")


def omega_redexes(engine: Engine, ctx: Optional[Context], t: Term) -> list:
    """Redexes not in the scope of a lambda (proper ancestors only)."""
    out = []
    for r in engine.find(ctx, t):
        node = t
        under = False
        for i in r.path:
            if engine.is_binder(node):
                under = True
                break
            node = engine.children(node)[i]
        if not under:
            out.append(r)
    return out


def _postorder_indices(engine: Engine, t: Term) -> dict[tuple[int, ...], int]:
    order: dict[tuple[int, ...], int] = {}

    def walk(node, path):
        for i, c in enumerate(engine.children(node)):
            walk(c, path + (i,))
        order[path] = len(order)

    walk(t, ())
    return order


def pick_redex(engine: Engine, ctx: Optional[Context], t: Term,
               strategy: Strategy) -> Optional[Redex]:
    if strategy is Strategy.OMEGA:
        if engine.name != "ls":
            raise ValueError("omega strategy only applies to the lambda side")
        rds = omega_redexes(engine, ctx, t)
        return rds[0] if rds else None
    rds = engine.find(ctx, t)
    if not rds:
        return None
    if strategy is Strategy.LEFTMOST_OUTERMOST:
        return rds[0]
    if strategy is Strategy.LEFTMOST_INNERMOST:
        post = _postorder_indices(engine, t)
        return min(rds, key=lambda r: (post[r.path], engine.rules.index(r.rule)))
    raise ValueError(f"normalize needs a deterministic strategy, not {strategy}")


@dataclass
class NormalizeResult:
    term: Term
    steps: int
    trace: list[tuple[str, tuple[int, ...], Term]]


def normalize(engine: Engine, ctx: Optional[Context], t: Term,
              strategy: Strategy = Strategy.LEFTMOST_OUTERMOST,
              fuel: int = 1000, want_trace: bool = False) -> NormalizeResult:
    trace: list[tuple[str, tuple[int, ...], Term]] = []
    cur = t
    for step_no in range(fuel):
        r = pick_redex(engine, ctx, cur, strategy)
        if r is None:
            return NormalizeResult(cur, step_no, trace)
        cur = engine.step(cur, r)
        if want_trace:
            trace.append((r.rule, r.path, cur))
    if pick_redex(engine, ctx, cur, strategy) is None:
        return NormalizeResult(cur, fuel, trace)
    raise FuelExhausted(cur, fuel)


@dataclass(frozen=True, slots=True)
class Edge:
    source: Term  # canonical
    rule: str
    path: tuple[int, ...]
    target: Term  # canonical


@dataclass
class ReductionGraph:
    engine: Engine
    root: Term  # canonical
    nodes: dict  # canonical -> representative term
    edges: list[Edge]
    normal_forms: list  # canonical terms, in discovery order
    truncated: bool = False
    reason: Optional[str] = None

    def normal_form_strings(self) -> list[str]:
        return sorted(self.engine.show(n) for n in self.normal_forms)


def explore(engine: Engine, ctx: Optional[Context], t: Term,
            node_budget: int = 100_000,
            depth_budget: Optional[int] = None) -> ReductionGraph:
    root_c = engine.canon(t)
    nodes = {root_c: t}
    edges: list[Edge] = []
    normal_forms = []
    truncated = False
    reason = None
    queue = deque([(t, root_c, 0)])
    while queue:
        cur, cur_c, depth = queue.popleft()
        if depth_budget is not None and depth >= depth_budget:
            truncated, reason = True, "depth budget"
            continue
        rds = engine.find(ctx, cur)
        if not rds:
            normal_forms.append(cur_c)
            continue
        for r in rds:
            tgt = engine.step(cur, r)
            tgt_c = engine.canon(tgt)
            if tgt_c not in nodes:
                if len(nodes) >= node_budget:
                    truncated, reason = True, "node budget"
                    continue
                nodes[tgt_c] = tgt
                queue.append((tgt, tgt_c, depth + 1))
            edges.append(Edge(cur_c, r.rule, r.path, tgt_c))
    return ReductionGraph(engine, root_c, nodes, edges, normal_forms,
                          truncated, reason)


@dataclass(frozen=True, slots=True)
class ReachabilityQuery:
    source: Term
    target: Term
    max_steps: int = 50
    require_nonempty: bool = False


def reaches(engine: Engine, ctx: Optional[Context], q: ReachabilityQuery,
            node_budget: int = 200_000) -> tuple[bool, Optional[list]]:
    """Is q.target reachable from q.source within q.max_steps reductions?

    Returns (answer, witness); the witness is a list of (rule, path) steps.
    Tries the leftmost-outermost trace first (it usually passes straight
    through the targets the simulation lemmas predict), then falls back to
    breadth-first search over alpha classes.
    """
    target_c = engine.canon(q.target)
    if not q.require_nonempty and engine.canon(q.source) == target_c:
        return True, []

    cur = q.source
    lo_trace: list[tuple[str, tuple[int, ...]]] = []
    for _ in range(q.max_steps):
        rds = engine.find(ctx, cur)
        if not rds:
            break
        r = rds[0]
        cur = engine.step(cur, r)
        lo_trace.append((r.rule, r.path))
        if engine.canon(cur) == target_c:
            return True, lo_trace

    visited = {engine.canon(q.source)}
    frontier: list[tuple[Term, list]] = [(q.source, [])]
    for _ in range(q.max_steps):
        nxt: list[tuple[Term, list]] = []
        for term, steps in frontier:
            for r in engine.find(ctx, term):
                t2 = engine.step(term, r)
                c2 = engine.canon(t2)
                if c2 == target_c:
                    return True, steps + [(r.rule, r.path)]
                if c2 not in visited:
                    if len(visited) >= node_budget:
                        return False, None
                    visited.add(c2)
                    nxt.append((t2, steps + [(r.rule, r.path)]))
        frontier = nxt
        if not frontier:
            break
    return False, None


@dataclass
class SNResult:
    terminating: bool
    max_path: Optional[int] = None
    classes_seen: int = 0
    reason: Optional[str] = None


class _Budget(Exception):
    pass


def check_sn(engine: Engine, ctx: Optional[Context], t: Term,
             node_budget: int = 100_000) -> SNResult:
    """Exhaustive DFS over reduction sequences, memoized by alpha class.

    Returns the longest reduction path length when every sequence ends.
    A cycle would disprove termination and is reported as such.
    """
    memo: dict = {}
    on_stack: set = set()
    seen = 0

    def longest(term, key) -> int:
        nonlocal seen
        if key in memo:
            return memo[key]
        if key in on_stack:
            raise _Cycle()
        if seen >= node_budget:
            raise _Budget()
        seen += 1
        on_stack.add(key)
        best = 0
        for r in engine.find(ctx, term):
            nxt = engine.step(term, r)
            best = max(best, 1 + longest(nxt, engine.canon(nxt)))
        on_stack.discard(key)
        memo[key] = best
        return best

    try:
        n = longest(t, engine.canon(t))
        return SNResult(True, n, seen)
    except _Budget:
        return SNResult(False, None, seen, "node budget exceeded")
    except _Cycle:
        return SNResult(False, None, seen, "reduction cycle found")


class _Cycle(Exception):
    pass


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(graph: ReductionGraph) -> str:
    """Render the graph in DOT; nodes are labeled with representative terms."""
    show = graph.engine.show
    keys = sorted(graph.nodes, key=lambda k: show(graph.nodes[k]))
    ids = {k: f"n{i}" for i, k in enumerate(keys)}
    lines = ["digraph reduction {", "  rankdir=LR;"]
    nf = set(graph.normal_forms)
    for k in keys:
        attrs = [f"label={_dot_quote(show(graph.nodes[k]))}"]
        if k == graph.root:
            attrs.append("shape=box")
        if k in nf:
            attrs.append("peripheries=2")
        lines.append(f"  {ids[k]} [{', '.join(attrs)}];")
    for e in sorted(
        graph.edges, key=lambda e: (show(e.source), e.rule, e.path, show(e.target))
    ):
        label = _dot_quote(e.rule)
        lines.append(f"  {ids[e.source]} -> {ids[e.target]} [label={label}];")
    if graph.truncated:
        lines.append(f"  truncated [label={_dot_quote('truncated: ' + (graph.reason or ''))}, shape=note];")
    lines.append("}")
    return "\n".join(lines)
