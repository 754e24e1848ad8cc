"""Seeded randomized trial runners: kernel equivalence and rank-c replacement.

Trial ``t`` draws everything from ``trial_seed(seed, t)``, so a rerun with
the same configuration reproduces the report byte for byte, whatever order
the trials finish in.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable

from .errors import DEFAULT_CAPS, Caps, ParseError, PreconditionError, ResourceError
from .graph import (
    DeletionInstance,
    Graph,
    VertexCoverCert,
    format_instance,
    iter_bits,
    parse_instance,
    random_planted_instance,
    to_mask,
)
from .gf2 import BitVec, Gf2Basis
from .hardness import rank_counterexample
from .incidence import (
    adjacency_share_subset,
    check_sum,
    enumerate_coords,
    inc_vector,
    project,
    share_projection,
    sum_vectors,
)
from .kernel import get_preset, kernelize
from .obstructions.asteroidal import AW_KINDS, make_aw
from .obstructions.properties import get_property
from .obstructions.rankc import COUNTEREXAMPLE, PREMISE_FAILED, check_rank_c
from .solver import brute_force_decide

AGREE = "agree"
DISAGREE = "disagree"
SKIPPED = "skipped-by-cap"
MISS = "premise-miss"


def trial_seed(seed: int, t: int) -> int:
    return int.from_bytes(hashlib.sha256(f"{seed}:{t}".encode()).digest()[:8], "big")


def _check_range(name: str, r: tuple[int, int] | tuple[float, float], lo: float = 0) -> None:
    if len(r) != 2 or r[0] > r[1] or r[0] < lo:
        raise PreconditionError(f"{name} range {r} is invalid")


@dataclass(frozen=True)
class TrialConfig:
    """Parameters for one batch of trials.

    ``target`` names a preset for equivalence trials and a property for
    rank-c trials.  Ranges are inclusive.
    """

    target: str
    trials: int = 100
    seed: int = 0
    cover: tuple[int, int] = (1, 6)
    independent: tuple[int, int] = (0, 10)
    edge_probability: tuple[float, float] = (0.2, 0.8)
    budget: tuple[int, int] = (0, 3)
    caps: Caps = DEFAULT_CAPS
    fault: bool = False
    c: int | None = None
    singleton: bool = True
    subset_budget: int = 200_000
    min_hits: int = 200
    feed_counterexample: bool = False
    workers: int = 1

    def __post_init__(self):
        if self.trials < 0:
            raise PreconditionError("trial count must be non-negative")
        _check_range("cover", self.cover)
        _check_range("independent", self.independent)
        _check_range("budget", self.budget)
        _check_range("edge probability", self.edge_probability)
        if self.edge_probability[1] > 1:
            raise PreconditionError("edge probabilities must lie in [0, 1]")
        if self.c is not None and self.c < 1:
            raise PreconditionError("c must be at least 1")
        if self.workers < 1:
            raise PreconditionError("workers must be at least 1")

    def summary(self) -> dict:
        out = asdict(self)
        out["caps"] = asdict(self.caps)
        return out


@dataclass(frozen=True)
class TrialOutcome:
    trial: int
    status: str
    input_vertices: int = 0
    output_vertices: int = 0
    bound: int | None = None
    detail: str = ""
    dump: str | None = None


@dataclass
class TrialReport:
    kind: str
    config: dict
    outcomes: list[TrialOutcome] = field(default_factory=list)
    min_hits: int = 0
    expect_violations: bool = False

    def count(self, status: str) -> int:
        return sum(1 for o in self.outcomes if o.status == status)

    @property
    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for o in self.outcomes:
            out[o.status] = out.get(o.status, 0) + 1
        return dict(sorted(out.items()))

    @property
    def violations(self) -> int:
        return self.count(DISAGREE) + self.count(COUNTEREXAMPLE)

    @property
    def premise_hits(self) -> int:
        return sum(1 for o in self.outcomes if o.status not in (MISS, SKIPPED))

    @property
    def inconclusive(self) -> bool:
        return self.kind == "rankc" and self.premise_hits < self.min_hits

    @property
    def exit_code(self) -> int:
        return 1 if self.violations or self.inconclusive else 0

    def size_stats(self) -> dict:
        sized = [o for o in self.outcomes if o.bound is not None]
        if not sized:
            return {}
        return {
            "reduced_runs": len(sized),
            "mean_input": round(sum(o.input_vertices for o in sized) / len(sized), 3),
            "mean_output": round(sum(o.output_vertices for o in sized) / len(sized), 3),
            "min_slack": min(o.bound - o.output_vertices for o in sized),
            "shrunk": sum(1 for o in sized if o.output_vertices < o.input_vertices),
            "feasible": sum(1 for o in sized if o.detail == "feasible=True"),
        }

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "config": self.config,
            "counts": self.counts,
            "trials": len(self.outcomes),
            "premise_hits": self.premise_hits if self.kind == "rankc" else None,
            "inconclusive": self.inconclusive,
            "violations": self.violations,
            "size_stats": self.size_stats(),
            "failures": [asdict(o) for o in self.outcomes if o.status in (DISAGREE, COUNTEREXAMPLE)],
            "exit_code": self.exit_code,
        }

    def to_text(self) -> str:
        lines = [f"{self.kind} trials: {len(self.outcomes)}"]
        lines += [f"  {status}: {n}" for status, n in self.counts.items()]
        for key, value in self.size_stats().items():
            lines.append(f"  {key}: {value}")
        if self.kind == "rankc":
            lines.append(f"  premise hits: {self.premise_hits} (required {self.min_hits})")
            if self.premise_hits == 0:
                lines.append("  premise never satisfied in this batch")
            if self.inconclusive:
                lines.append("  INCONCLUSIVE: too few premise-satisfying instances")
        for o in self.outcomes:
            if o.status in (DISAGREE, COUNTEREXAMPLE):
                lines.append(f"  trial {o.trial}: {o.status} {o.detail}")
                if o.dump:
                    lines += ["    " + ln for ln in o.dump.rstrip("\n").splitlines()]
        lines.append("RESULT: " + ("FAIL" if self.exit_code else "OK"))
        return "\n".join(lines) + "\n"

    def dump_failures(self, directory: str) -> list[str]:
        """Write each failing instance to ``directory``; returns the paths."""
        os.makedirs(directory, exist_ok=True)
        paths = []
        for o in self.outcomes:
            if o.dump and o.status in (DISAGREE, COUNTEREXAMPLE):
                path = os.path.join(directory, f"{self.kind}-trial{o.trial}.txt")
                with open(path, "w") as fh:
                    fh.write(o.dump)
                paths.append(path)
        return paths


def _run(fn, cfg: TrialConfig) -> list[TrialOutcome]:
    if cfg.workers > 1 and cfg.trials > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            outcomes = list(pool.map(fn, [cfg] * cfg.trials, range(cfg.trials)))
    else:
        outcomes = [fn(cfg, t) for t in range(cfg.trials)]
    return sorted(outcomes, key=lambda o: o.trial)


# -- kernel equivalence -----------------------------------------------------


def _flip_one_edge(inst: DeletionInstance, rng: random.Random) -> DeletionInstance:
    """Toggle one pair touching the cover, keeping the cover valid."""
    g = inst.graph
    cover = sorted(inst.cover.cover)
    pairs = [(u, v) for u in cover for v in range(g.n) if v != u and (v not in inst.cover.cover or v > u)]
    if not pairs:
        return inst
    u, v = rng.choice(pairs)
    adj = list(g.adj)
    adj[u] ^= 1 << v
    adj[v] ^= 1 << u
    return DeletionInstance(Graph(g.n, adj), inst.cover, inst.budget)


def equivalence_trial(cfg: TrialConfig, t: int) -> TrialOutcome:
    rng = random.Random(trial_seed(cfg.seed, t))
    preset = get_preset(cfg.target)
    prop = get_property(preset.property_id)
    xs = rng.randint(*cfg.cover)
    ys = rng.randint(*cfg.independent)
    p_in = rng.uniform(*cfg.edge_probability)
    p_cross = rng.uniform(*cfg.edge_probability)
    k = min(rng.randint(*cfg.budget), xs + ys)
    inst = random_planted_instance(xs, ys, (p_in, p_cross), k, rng.getrandbits(64))
    n = inst.graph.n
    try:
        kernel = kernelize(inst, preset, coord_cap=cfg.caps.max_coords)
        out = kernel.instance
        if cfg.fault:
            out = _flip_one_edge(out, rng)
        before = brute_force_decide(inst, prop, cfg.caps)
        after = brute_force_decide(out, prop, cfg.caps)
    except ResourceError as exc:
        return TrialOutcome(t, SKIPPED, n, detail=str(exc))
    bound = kernel.trace.bound if kernel.trace else None
    if kernel.trace and out.graph.n > bound:
        raise AssertionError(f"trial {t}: kernel exceeds its size bound")
    if before.feasible == after.feasible:
        return TrialOutcome(t, AGREE, n, out.graph.n, bound, f"feasible={before.feasible}")
    dump = (
        f"# preset {preset.name}, trial {t}, seed {cfg.seed}\n"
        f"# input answer {before.feasible}, kernel answer {after.feasible}\n"
        + format_instance(inst)
        + "# kernel instance\n"
        + "".join("# " + ln + "\n" for ln in format_instance(out).splitlines())
    )
    return TrialOutcome(
        t, DISAGREE, n, out.graph.n, bound,
        f"input feasible={before.feasible}, kernel feasible={after.feasible}", dump,
    )


def run_equivalence_trials(cfg: TrialConfig) -> TrialReport:
    """Kernelize random planted instances and compare exact answers before and after."""
    get_preset(cfg.target)
    return TrialReport("equivalence", cfg.summary(), _run(equivalence_trial, cfg))


def replay_equivalence_dump(text: str, preset: str, caps: Caps = DEFAULT_CAPS) -> bool:
    """Re-decide a dumped input instance and its fresh kernel; True iff they agree."""
    inst = parse_instance(text)
    p = get_preset(preset)
    prop = get_property(p.property_id)
    kernel = kernelize(inst, p, coord_cap=caps.max_coords)
    return brute_force_decide(inst, prop, caps).feasible == brute_force_decide(kernel.instance, prop, caps).feasible


# -- rank-c replacement -----------------------------------------------------


@dataclass(frozen=True)
class RankInstance:
    """``h`` with cover ``x``, summing set ``d`` and target ``v``; ``obstruction`` is planted."""

    h: Graph
    x: frozenset[int]
    d: frozenset[int]
    v: int
    obstruction: frozenset[int]
    strategy: str = ""

    def dump(self) -> str:
        inst = DeletionInstance(self.h, VertexCoverCert(self.x), 0)
        return (
            format_instance(inst)
            + f"# rank-d {' '.join(map(str, sorted(self.d)))}\n"
            + f"# rank-v {self.v}\n"
        )


def parse_rank_dump(text: str) -> RankInstance:
    inst = parse_instance(text)
    d = v = None
    for line in text.splitlines():
        if line.startswith("# rank-d"):
            d = frozenset(int(t) for t in line.split()[2:])
        elif line.startswith("# rank-v"):
            v = int(line.split()[2])
    if d is None or v is None:
        raise ParseError("rank dump lacks '# rank-d' or '# rank-v' lines")
    return RankInstance(inst.graph, inst.cover.cover, d, v, frozenset())


def _obstruction(rng: random.Random, prop_id: str) -> tuple[int, list[tuple[int, int]]]:
    """A random small obstruction for the property: vertex count and edges."""

    def cycle(n):
        return n, [(i, (i + 1) % n) for i in range(n)]

    def anticycle(n):
        return n, [(i, j) for i in range(n) for j in range(i + 2, n) if (i, j) != (0, n - 1)]

    def wheel(n):
        return n + 1, [(i, (i + 1) % n) for i in range(n)] + [(n, i) for i in range(n)]

    def aw():
        kind = rng.choice(AW_KINDS)
        g, _ = make_aw(kind, rng.randint(2, 3))
        return g.n, g.edges()

    choices = {
        "odd-hole": lambda: cycle(rng.choice((5, 7, 9))),
        "odd-antihole": lambda: anticycle(rng.choice((5, 7))),
        "perfect": lambda: rng.choice((cycle, anticycle))(rng.choice((5, 7))),
        "even-hole": lambda: cycle(rng.choice((4, 6, 8))),
        "hole4": lambda: cycle(rng.randint(4, 8)),
        "hole6": lambda: cycle(rng.randint(6, 8)),
        "wheel": lambda: wheel(rng.randint(3, 6)),
        "almost-wheel": lambda: wheel(rng.choice((3, 5, 6))),
        "at": lambda: aw() if rng.random() < 0.7 else cycle(rng.randint(6, 7)),
        "interval": lambda: aw() if rng.random() < 0.5 else cycle(rng.randint(4, 7)),
    }
    if prop_id not in choices:
        raise PreconditionError(f"no planter for property {prop_id!r}")
    return choices[prop_id]()


def _independent_directions(rng: random.Random, width: int, count: int) -> list[int] | None:
    if count > width:
        return None
    dirs: list[int] = []
    span = {0}
    while len(dirs) < count:
        cand = rng.randrange(1, 1 << width)
        if cand in span:
            continue
        dirs.append(cand)
        span |= {s ^ cand for s in span}
    return dirs


def plant_rank_instance(rng: random.Random, prop_id: str, c: int) -> RankInstance:
    """Plant an obstruction, a target ``v`` and a set ``d`` whose vectors usually sum to v's.

    ``d`` is built from a twin of v plus cancelling pairs, from an affine
    subspace of neighbourhoods through v's of dimension ``c + 1`` (every
    entry is a polynomial of degree at most c, which sums to zero over such
    a subspace), or by solving over a random pool of neighbourhoods.
    """
    on, oedges = _obstruction(rng, prop_id)
    extra_cover = rng.randint(0, 2)
    inside = rng.random() < 0.85
    edges = list(oedges)
    n = on
    if inside:
        v = rng.randrange(on)
        x = [u for u in range(on) if u != v]
    else:
        v = None
        x = list(range(on))
    for _ in range(extra_cover):
        e = n
        n += 1
        edges += [(e, u) for u in x if rng.random() < 0.4]
        x.append(e)
    width = len(x)
    adj_mask: dict[int, int] = {}  # non-cover vertex -> neighbour mask over positions in x

    def add_vertex(mask: int) -> int:
        nonlocal n
        u = n
        n += 1
        adj_mask[u] = mask
        return u

    if inside:
        touching = {a ^ b ^ v for a, b in oedges if v in (a, b)}
        vmask = sum(1 << i for i, u in enumerate(x) if u in touching)
    else:
        vmask = rng.randrange(1 << width)
        v = add_vertex(vmask)

    strategy = rng.choices(("twin", "affine", "pool"), weights=(4, 5, 1))[0]
    dirs = _independent_directions(rng, width, c + 1)
    if strategy == "affine" and (dirs is None or (1 << (c + 1)) > 64):
        strategy = "twin"
    d: list[int] = []
    if strategy == "twin":
        d.append(add_vertex(vmask))
    elif strategy == "affine":
        span = [0]
        for dv in dirs:
            span += [s ^ dv for s in span]
        d += [add_vertex(vmask ^ s) for s in span[1:]]
    else:
        pool = [rng.randrange(1 << width) for _ in range(min((1 << (c + 1)) + 4, 40))]
        idx = enumerate_coords(range(width), c)
        basis = Gf2Basis(len(idx))
        for i, m in enumerate(pool):
            basis.insert(i, BitVec(len(idx), idx.bits_for(m)))
        rep = basis.represent(BitVec(len(idx), idx.bits_for(vmask)))
        chosen = sorted(rep) if rep else [0]
        d += [add_vertex(pool[i]) for i in chosen]
    for _ in range(rng.randint(0, 2)):
        m = rng.randrange(1 << width)
        d += [add_vertex(m), add_vertex(m)]
    for _ in range(rng.randint(0, 2)):
        add_vertex(rng.randrange(1 << width))  # bystanders outside d

    for u, m in adj_mask.items():
        edges += [(u, x[i]) for i in iter_bits(m)]
    h = Graph.from_edges(n, edges)
    return RankInstance(h, frozenset(x), frozenset(d), v, frozenset(range(on)), strategy)


def adjacency_share_ok(ri: RankInstance, c: int, s: Iterable[int]) -> str | None:
    """Check the adjacency-share subset for ``s``; returns a failure message or None."""
    idx = enumerate_coords(ri.x, c)
    s = frozenset(s)
    shared = adjacency_share_subset(ri.h, idx, ri.v, ri.d, s)
    if not shared or len(shared) % 2 == 0:
        return f"shared set {sorted(shared)} is not of odd size"
    qp, rp = share_projection(ri.h, idx, ri.v, s)
    lhs = project(inc_vector(ri.h, idx, ri.v), qp, rp)
    rhs = sum_vectors((project(inc_vector(ri.h, idx, u), qp, rp) for u in shared), lhs.index)
    if lhs.bits != rhs.bits:
        return f"projected sums differ for S={sorted(s)}"
    return None


def projection_invariance_failures(
    ri: RankInstance, c: int, rng: random.Random, subgraphs: int = 5
) -> list[str]:
    """Sum equality must survive every smaller rank and induced subgraphs keeping d and v."""
    failures = []
    for cp in range(c + 1):
        if not check_sum(ri.h, enumerate_coords(ri.x, cp), ri.v, ri.d):
            failures.append(f"sum fails at c'={cp}")
    keep_always = ri.d | {ri.v}
    for _ in range(subgraphs):
        keep = [u for u in range(ri.h.n) if u in keep_always or rng.random() < 0.5]
        sub, mapping = ri.h.induced_subgraph(keep)
        x = [mapping[u] for u in ri.x if u in mapping]
        if not check_sum(sub, enumerate_coords(x, c), mapping[ri.v], [mapping[u] for u in ri.d]):
            failures.append(f"sum fails on induced subgraph {keep}")
    return failures


def _share_set(ri: RankInstance, c: int, rng: random.Random) -> frozenset[int]:
    nbrs = [u for u in ri.obstruction if u in ri.x and ri.h.has_edge(u, ri.v)]
    if nbrs and rng.random() < 0.5:
        return frozenset(rng.sample(nbrs, min(c, len(nbrs))))
    pool = sorted(ri.x)
    return frozenset(rng.sample(pool, rng.randint(0, min(c, len(pool)))))


def rankc_trial(cfg: TrialConfig, t: int) -> TrialOutcome:
    prop = get_property(cfg.target)
    c = cfg.c if cfg.c is not None else prop.rank
    if c is None:
        raise PreconditionError(f"property {prop.id} has no rank; pass c explicitly")
    rng = random.Random(trial_seed(cfg.seed, t))
    if cfg.feed_counterexample and t == 0:
        ce = rank_counterexample(c)
        ri = RankInstance(ce.graph, frozenset(ce.cover), frozenset(ce.d), ce.apex,
                          frozenset(ce.cover) | {ce.apex}, "counterexample")
    else:
        ri = plant_rank_instance(rng, prop.id, c)
    try:
        verdict = check_rank_c(
            prop, c, ri.h, ri.x, ri.d, ri.v,
            singleton_only=cfg.singleton,
            subset_cap=None if not cfg.singleton else cfg.caps.max_subset,
            candidate_budget=cfg.subset_budget,
            coord_cap=cfg.caps.max_coords,
        )
    except ResourceError as exc:
        return TrialOutcome(t, SKIPPED, ri.h.n, detail=str(exc))
    if verdict.status == PREMISE_FAILED:
        return TrialOutcome(t, MISS, ri.h.n, detail=verdict.reason)
    if verdict.status == COUNTEREXAMPLE:
        return TrialOutcome(t, COUNTEREXAMPLE, ri.h.n, detail=verdict.reason, dump=ri.dump())
    share = adjacency_share_ok(ri, c, _share_set(ri, c, rng))
    if share:
        return TrialOutcome(t, DISAGREE, ri.h.n, detail="adjacency share: " + share, dump=ri.dump())
    return TrialOutcome(t, AGREE, ri.h.n, detail=ri.strategy)


def run_rankc_trials(cfg: TrialConfig) -> TrialReport:
    """Sample premise-satisfying instances and look for failed replacements."""
    get_property(cfg.target)
    return TrialReport("rankc", cfg.summary(), _run(rankc_trial, cfg), min_hits=cfg.min_hits)


def replay_rank_dump(text: str, prop: str, c: int, singleton: bool = True) -> str:
    ri = parse_rank_dump(text)
    return check_rank_c(get_property(prop), c, ri.h, ri.x, ri.d, ri.v,
                        singleton_only=singleton, subset_cap=None).status


def report_bytes(report: TrialReport, as_json: bool = False) -> bytes:
    if as_json:
        return (json.dumps(report.to_json(), sort_keys=True, indent=2) + "\n").encode()
    return report.to_text().encode()
