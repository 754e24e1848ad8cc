"""Hardness constructions for deletion of wheels other than W_4.

Two executable artifacts live here: the reduction from CNF-SAT (parameter:
number of variables) to the deletion problem with a vertex-cover parameter,
and the family of graphs showing that no finite rank characterizes the
property.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb

from .errors import DEFAULT_CAPS, Caps, ParseError, PreconditionError, ResourceError
from .graph import DeletionInstance, Graph, VertexCoverCert, iter_bits, to_mask
from .incidence import check_sum, enumerate_coords
from .obstructions.properties import ALMOST_WHEEL
from .obstructions.wheels import has_wheel, is_induced_wheel, wheel_not_4
from .solver import brute_force_decide


@dataclass(frozen=True)
class CnfFormula:
    """Clauses are frozensets of signed variable indices (``-3`` is ``¬x3``)."""

    n: int
    clauses: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise PreconditionError("variable count must be non-negative")
        for clause in self.clauses:
            if any(lit == 0 or abs(lit) > self.n for lit in clause):
                raise PreconditionError(f"clause {sorted(clause)} has a literal out of range")

    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def is_normalized(self) -> bool:
        return not any(-lit in clause for clause in self.clauses for lit in clause)

    def normalized(self) -> "CnfFormula":
        """Drop tautological clauses; duplicate literals are already merged by the sets."""
        return CnfFormula(self.n, tuple(c for c in self.clauses if not any(-lit in c for lit in c)))

    def satisfied_by(self, assignment) -> bool:
        """``assignment[i]`` is the value of ``x_{i+1}``."""
        return all(any((lit > 0) == bool(assignment[abs(lit) - 1]) for lit in c) for c in self.clauses)

    def satisfying_assignment(self) -> tuple[bool, ...] | None:
        for values in product((False, True), repeat=self.n):
            if self.satisfied_by(values):
                return values
        return None

    def satisfiable(self) -> bool:
        return self.satisfying_assignment() is not None

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.n} {self.m}"]
        for clause in self.clauses:
            lines.append(" ".join(str(lit) for lit in sorted(clause, key=lambda l: (abs(l), l))) + " 0")
        return "\n".join(lines) + "\n"


def parse_dimacs_cnf(text: str) -> CnfFormula:
    """Parse DIMACS CNF and normalize it.

    Clauses end at ``0`` and may span lines; a missing final ``0`` closes
    the last clause.  The clause count must match the header.
    """
    header = None
    clauses: list[frozenset[int]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise ParseError("duplicate header", lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError("header must read 'p cnf <vars> <clauses>'", lineno)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError("header counts must be integers", lineno) from None
            if header[0] < 0 or header[1] < 0:
                raise ParseError("header counts must be non-negative", lineno)
            continue
        if header is None:
            raise ParseError("clause before header", lineno)
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise ParseError(f"bad literal {token!r}", lineno) from None
            if lit == 0:
                clauses.append(frozenset(current))
                current = []
            elif abs(lit) > header[0]:
                raise ParseError(f"literal {lit} out of range for {header[0]} variables", lineno)
            else:
                current.append(lit)
    if header is None:
        raise ParseError("missing 'p cnf' header")
    if current:
        clauses.append(frozenset(current))
    if len(clauses) != header[1]:
        raise ParseError(f"header declares {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], tuple(clauses)).normalized()


@dataclass(frozen=True)
class HardnessInstance:
    formula: CnfFormula
    instance: DeletionInstance
    literals: dict[int, tuple[int, int]] = field(default_factory=dict)
    gadgets: dict[tuple[int, int], tuple[int, int]] = field(default_factory=dict)
    clause_vertices: tuple[int, ...] = ()

    @property
    def small_branch(self) -> bool:
        return self.formula.n <= 4

    def literal_vertex(self, lit: int) -> int:
        pos, neg = self.literals[abs(lit)]
        return pos if lit > 0 else neg

    def selection(self, assignment) -> frozenset[int]:
        """Literal vertices deleted for a truth assignment: the true literals."""
        return frozenset(self.literal_vertex(i if assignment[i - 1] else -i) for i in self.literals)


def cnf_to_awfd(f: CnfFormula) -> HardnessInstance:
    """Build the deletion instance equivalent to satisfiability of ``f``.

    Vertex ids: ``v_{x_i} = 2(i-1)``, ``v_{¬x_i} = 2(i-1)+1``; then
    ``u_i^j, w_i^j`` in pairs from ``2n`` onward ordered by (i, j); then one
    vertex per clause.
    """
    if not f.is_normalized:
        raise PreconditionError("formula has a tautological clause; normalize it first")
    n, m = f.n, f.m
    if n <= 4:
        if f.satisfiable():
            inst = DeletionInstance(Graph.empty(0), VertexCoverCert(()), 0)
        else:
            w3 = Graph.wheel(3)
            inst = DeletionInstance(w3, VertexCoverCert(range(4)), 0)
        return HardnessInstance(f, inst)

    literals = {i: (2 * (i - 1), 2 * (i - 1) + 1) for i in range(1, n + 1)}
    edges = []
    for i in range(1, n + 1):
        a, b = literals[i]
        edges.append((a, b))
        nxt = literals[i % n + 1]
        edges.extend((s, t) for s in (a, b) for t in nxt)
    gadgets = {}
    base = 2 * n
    for i in range(1, n + 1):
        for j in range(1, n + 2):
            u = base + 2 * ((i - 1) * (n + 1) + (j - 1))
            w = u + 1
            gadgets[(i, j)] = (u, w)
            edges.append((u, w))
            edges.extend((g, lv) for g in (u, w) for lv in literals[i])
    cover_size = base + 2 * n * (n + 1)
    clause_vertices = []
    for idx, clause in enumerate(f.clauses):
        cv = cover_size + idx
        clause_vertices.append(cv)
        mentioned = {abs(lit) for lit in clause}
        for lit in clause:
            pos, neg = literals[abs(lit)]
            edges.append((cv, pos if lit > 0 else neg))
        for q in range(1, n + 1):
            if q not in mentioned:
                edges.extend((cv, lv) for lv in literals[q])
    g = Graph.from_edges(cover_size + m, edges)
    inst = DeletionInstance(g, VertexCoverCert(range(cover_size)), n)
    return HardnessInstance(f, inst, literals, gadgets, tuple(clause_vertices))


@dataclass(frozen=True)
class PptReport:
    n: int
    m: int
    satisfiable: bool
    feasible: bool
    vertices: int
    cover_size: int
    budget: int
    solution: frozenset[int] | None = None
    audited: bool = False

    @property
    def agree(self) -> bool:
        return self.satisfiable == self.feasible

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "satisfiable": self.satisfiable,
            "feasible": self.feasible,
            "agree": self.agree,
            "vertices": self.vertices,
            "cover_size": self.cover_size,
            "budget": self.budget,
            "solution": None if self.solution is None else sorted(self.solution),
            "audited": self.audited,
        }


def verify_ppt(f: CnfFormula, audit: bool = False, max_variables: int = 12) -> PptReport:
    """Compare satisfiability of ``f`` with feasibility of its deletion instance.

    Any solution must delete exactly one literal vertex per variable, so
    feasibility is decided over the 2^n literal selections, each confirmed
    with the wheel detector.  ``audit`` re-decides with the generic solver.
    """
    if f.n > max_variables:
        raise ResourceError(f"{f.n} variables exceed the cap of {max_variables}")
    hi = cnf_to_awfd(f)
    inst = hi.instance
    sat = f.satisfiable()
    solution = None
    if hi.small_branch:
        res = brute_force_decide(inst, ALMOST_WHEEL)
        feasible, solution = res.feasible, res.solution
    else:
        feasible = False
        full = inst.graph.vertex_mask
        for values in product((False, True), repeat=f.n):
            s = hi.selection(values)
            if not ALMOST_WHEEL.contains(inst.graph, full & ~to_mask(s)):
                feasible, solution = True, s
                break
    if audit:
        caps = Caps(max_vertices=inst.graph.n, max_budget=max(inst.budget, 1))
        res = brute_force_decide(inst, ALMOST_WHEEL, caps=caps)
        if res.feasible != feasible:
            raise AssertionError("structured and generic feasibility checks disagree")
    return PptReport(
        f.n, f.m, sat, feasible, inst.graph.n, len(inst.cover), inst.budget, solution, audit
    )


@dataclass(frozen=True)
class RankCounterexample:
    """Apex over an n-cycle plus one vertex per q-subset of the cycle.

    Ids: cycle ``0..n-1`` (the cover, in cycle order), apex ``n``, then the
    subset vertices in lexicographic order of their subsets.
    """

    c: int
    i: int
    n: int
    q: int
    graph: Graph
    cover: tuple[int, ...]
    apex: int
    d: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "c": self.c, "i": self.i, "n": self.n, "q": self.q,
            "vertices": self.graph.n, "d_size": len(self.d), "apex": self.apex,
        }


def counterexample_parameters(c: int) -> tuple[int, int, int]:
    """``(i, n, q)`` with i the least index such that ``q = 2^(i-1) - 1 > c``."""
    if c < 1:
        raise PreconditionError("rank must be at least 1")
    i = 1
    while (1 << (i - 1)) - 1 <= c:
        i += 1
    n, q = (1 << i) - 1, (1 << (i - 1)) - 1
    if n < 5:
        raise PreconditionError(f"c={c} gives a cycle of length {n}; at least 5 is needed")
    return i, n, q


def rank_counterexample(c: int, max_d: int = 10_000) -> RankCounterexample:
    i, n, q = counterexample_parameters(c)
    size = comb(n, q)
    if size > max_d:
        raise ResourceError(f"C({n},{q}) = {size} subset vertices exceed the cap of {max_d}")
    apex = n
    edges = [(j, (j + 1) % n) for j in range(n)] + [(apex, j) for j in range(n)]
    d = []
    for offset, subset in enumerate(combinations(range(n), q)):
        dv = n + 1 + offset
        d.append(dv)
        edges.extend((dv, j) for j in subset)
    g = Graph.from_edges(n + 1 + size, edges)
    return RankCounterexample(c, i, n, q, g, tuple(range(n)), apex, tuple(d))


@dataclass
class CounterexampleReport:
    c: int
    sum_equality: bool
    wheel_without_d: tuple[int, tuple[int, ...]] | None
    free_without_apex: bool
    cycle_hubs_only_w4: bool
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        w = self.wheel_without_d
        return {
            "c": self.c,
            "sum_equality": self.sum_equality,
            "wheel_without_d": None if w is None else {"hub": w[0], "rim": list(w[1])},
            "free_without_apex": self.free_without_apex,
            "cycle_hubs_only_w4": self.cycle_hubs_only_w4,
            "failures": list(self.failures),
            "ok": self.ok,
        }


def verify_counterexample(ce: RankCounterexample, caps: Caps = DEFAULT_CAPS) -> CounterexampleReport:
    """Check that ``ce`` defeats rank-c replacement.

    (a) the apex's vector is the sum over d; (b) removing d leaves a wheel of
    size other than 4; (c) removing the apex leaves none.  By heredity (c)
    rules out every subset of d at once.
    """
    g = ce.graph
    full = g.vertex_mask
    idx = enumerate_coords(ce.cover, ce.c, cap=caps.max_coords)
    sum_ok = check_sum(g, idx, ce.apex, ce.d)

    wheel = has_wheel(g, wheel_not_4, full & ~to_mask(ce.d))
    wheel_ok = wheel is not None and is_induced_wheel(g, *wheel)

    free = not ALMOST_WHEEL.contains(g, full & ~(1 << ce.apex))

    # Each cycle vertex's neighbourhood minus its two cycle neighbours is independent.
    hubs_ok = True
    cover = ce.cover
    for j, vj in enumerate(cover):
        prev, nxt = cover[j - 1], cover[(j + 1) % len(cover)]
        rest = g.adj[vj] & ~(1 << ce.apex) & ~(1 << prev) & ~(1 << nxt)
        if any(g.adj[u] & rest for u in iter_bits(rest)) or g.has_edge(prev, nxt):
            hubs_ok = False

    failures = []
    if not sum_ok:
        failures.append("(a) incidence vectors of d do not sum to the apex's vector")
    if not wheel_ok:
        failures.append("(b) graph minus d has no wheel of size 3 or at least 5")
    elif len(wheel[1]) != ce.n:
        failures.append(f"(b) expected the apex wheel W_{ce.n}, found W_{len(wheel[1])}")
    if not free:
        failures.append("(c) graph minus the apex still has a wheel of size 3 or at least 5")
    if not hubs_ok:
        failures.append("(c) a cycle vertex's neighbourhood has no 2-vertex cover by its cycle neighbours")
    return CounterexampleReport(ce.c, sum_ok, wheel, free, hubs_ok, failures)
