"""Discrete search over the quarter-turn space.

Strategies: exhaustive enumeration (ground truth, capped), seeded random
sampling, and Bayesian optimization with a bagged-regression-tree
surrogate and a greedy (predicted-argmin) acquisition rule. Slot values
are cyclic categories, so tree splits partition the four levels into
subsets instead of thresholding them.

All strategies accept an optional ``active_slots`` restriction: only the
listed slots are searched, the rest stay frozen at a base assignment.
Traces always record full-length assignments.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._engine import compile_objective
from .ansatz import AnsatzTemplate, ParameterAssignment
from .errors import SpaceExhausted, SpaceTooLarge
from .objective import EnergyRecord
from .pauli import Hamiltonian

DEFAULT_EXHAUSTIVE_CAP = 2**24
WARMUP_CEILING = 1000


@dataclass(frozen=True)
class SearchConfig:
    """Knobs shared by the sampling strategies; all randomness flows from seed."""

    budget: int
    seed: int
    warmup: int | None = None  # None: min(1000, space // 4), capped at budget
    pool_size: int = 500
    trees: int = 20
    stop_on_stagnation: tuple[int, float] | None = None  # (window, tolerance)

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError("budget must be >= 1")
        if self.warmup is not None and not 1 <= self.warmup <= self.budget:
            raise ValueError("need 1 <= warmup <= budget")
        if self.pool_size < 1:
            raise ValueError("pool_size must be >= 1")
        if self.trees < 1:
            raise ValueError("trees must be >= 1")
        if self.stop_on_stagnation is not None:
            window, tol = self.stop_on_stagnation
            if window < 1 or tol < 0:
                raise ValueError("stagnation stop needs window >= 1 and tol >= 0")


@dataclass(frozen=True)
class TraceEntry:
    iteration: int  # 1-based evaluation ordinal
    assignment: object  # ParameterAssignment (or ExtendedAssignment for kT)
    record: EnergyRecord
    best_so_far: float
    odd_slots: int | None = None


@dataclass
class SearchTrace:
    strategy: str
    entries: list[TraceEntry] = field(default_factory=list)
    best_assignment: object = None
    best_record: EnergyRecord | None = None
    evaluations_used: int = 0
    space_size: int = 0
    warmup_used: int = 0
    seed: int | None = None
    k: int | None = None

    @property
    def best_total(self) -> float:
        return self.best_record.total

    @property
    def iterations_to_best(self) -> int:
        """First evaluation ordinal that reached the final best value."""
        for e in self.entries:
            if e.record.total == self.best_record.total:
                return e.iteration
        return self.evaluations_used

    @property
    def guided_iterations_to_best(self) -> int:
        """Evaluations past warmup needed to reach the best value."""
        return max(0, self.iterations_to_best - self.warmup_used)

    def record_eval(self, assignment, record: EnergyRecord, odd_slots=None):
        self.evaluations_used += 1
        if self.best_record is None or record.total < self.best_record.total:
            self.best_record = record
            self.best_assignment = assignment
        self.entries.append(
            TraceEntry(
                self.evaluations_used,
                assignment,
                record,
                self.best_record.total,
                odd_slots,
            )
        )

    def csv_rows(self):
        for e in self.entries:
            yield e.iteration, e.record.total, e.best_so_far

    def to_jsonable(self) -> dict:
        out = {
            "strategy": self.strategy,
            "space_size": self.space_size,
            "warmup_used": self.warmup_used,
            "evaluations_used": self.evaluations_used,
            "iterations_to_best": self.iterations_to_best,
            "guided_iterations_to_best": self.guided_iterations_to_best,
            "best": {
                "assignment": list(self.best_assignment.indices),
                "raw_energy": self.best_record.raw_energy,
                "penalty": self.best_record.penalty,
                "total": self.best_record.total,
            },
            "entries": [
                {
                    "iteration": e.iteration,
                    "assignment": list(e.assignment.indices),
                    "raw_energy": e.record.raw_energy,
                    "penalty": e.record.penalty,
                    "total": e.record.total,
                    "best_so_far": e.best_so_far,
                    **({"odd_slots": e.odd_slots} if e.odd_slots is not None else {}),
                }
                for e in self.entries
            ],
        }
        if self.seed is not None:
            out["seed"] = self.seed
        if self.k is not None:
            out["k"] = self.k
        return out


class SubspaceEvaluator:
    """Maps searched sub-vectors onto full assignments and evaluates them.

    ``active_slots`` must be strictly ascending so that sub-vector
    lexicographic order coincides with gate execution order (which the
    exhaustive enumerator exploits to share circuit prefixes).
    """

    def __init__(
        self,
        t: AnsatzTemplate,
        h: Hamiltonian,
        active_slots=None,
        base: ParameterAssignment | None = None,
    ):
        if h.n != t.n:
            raise ValueError(f"Hamiltonian width {h.n} != template width {t.n}")
        self.template = t
        self.hamiltonian = h
        if active_slots is None:
            active_slots = range(t.num_slots)
        self.active = tuple(active_slots)
        if not self.active:
            raise ValueError("need at least one active slot")
        for s in self.active:
            if not 0 <= s < t.num_slots:
                raise ValueError(f"active slot {s} outside template")
        if any(a >= b for a, b in zip(self.active, self.active[1:])):
            raise ValueError("active slots must be strictly ascending")
        base_idx = base.indices if base is not None else (0,) * t.num_slots
        if len(base_idx) != t.num_slots:
            raise ValueError("base assignment length mismatch")
        self.base = tuple(base_idx)
        self._full = self.active == tuple(range(t.num_slots))
        self._compiled = compile_objective(t, h, self.active, base)

    @property
    def dims(self) -> int:
        return len(self.active)

    @property
    def space_size(self) -> int:
        return 4**self.dims

    def full_assignment(self, sub: tuple[int, ...]) -> ParameterAssignment:
        if self._full:
            return ParameterAssignment(sub)
        idx = list(self.base)
        for slot, v in zip(self.active, sub):
            idx[slot] = v
        return ParameterAssignment(tuple(idx))

    def evaluate(self, sub: tuple[int, ...]):
        raw, penalty, values = self._compiled.evaluate_sub(sub)
        return self.full_assignment(sub), EnergyRecord(raw, penalty, raw + penalty, values)


def exhaustive(
    t: AnsatzTemplate,
    h: Hamiltonian,
    cap: int = DEFAULT_EXHAUSTIVE_CAP,
    active_slots=None,
    base: ParameterAssignment | None = None,
    keep_entries: bool = True,
) -> SearchTrace:
    """Evaluate every point once; ties keep the lexicographically first.

    ``keep_entries=False`` records only the running best (the entry list
    of a full enumeration can dwarf the search itself).
    """
    ev = SubspaceEvaluator(t, h, active_slots, base)
    if ev.space_size > cap:
        raise SpaceTooLarge(ev.space_size, cap)
    trace = SearchTrace("exhaustive", space_size=ev.space_size)

    if keep_entries:
        def visit(sub, raw, penalty, values):
            trace.record_eval(
                ev.full_assignment(sub),
                EnergyRecord(raw, penalty, raw + penalty, values),
            )
    else:
        def visit(sub, raw, penalty, values):
            trace.evaluations_used += 1
            total = raw + penalty
            if trace.best_record is None or total < trace.best_record.total:
                trace.best_record = EnergyRecord(raw, penalty, total, values)
                trace.best_assignment = ev.full_assignment(sub)

    ev._compiled.run_exhaustive(visit)
    return trace


def _draw_new(rng: np.random.Generator, p: int, seen: set) -> tuple[int, ...]:
    while True:
        cand = tuple(int(v) for v in rng.integers(0, 4, p))
        if cand not in seen:
            return cand


def _random_phase(
    rng: np.random.Generator,
    ev: SubspaceEvaluator,
    trace: SearchTrace,
    seen: set,
    count: int,
):
    for _ in range(count):
        sub = _draw_new(rng, ev.dims, seen)
        seen.add(sub)
        a, rec = ev.evaluate(sub)
        trace.record_eval(a, rec)


def random_search(
    t: AnsatzTemplate,
    h: Hamiltonian,
    config: SearchConfig,
    active_slots=None,
    base: ParameterAssignment | None = None,
) -> SearchTrace:
    """Budget distinct uniform samples; the Fig.-style baseline."""
    ev = SubspaceEvaluator(t, h, active_slots, base)
    if config.budget > ev.space_size:
        raise SpaceExhausted(
            f"budget {config.budget} exceeds the {ev.space_size}-point space"
        )
    trace = SearchTrace(
        "random", space_size=ev.space_size, seed=config.seed,
        warmup_used=config.budget,
    )
    rng = np.random.default_rng(config.seed)
    _random_phase(rng, ev, trace, set(), config.budget)
    return trace


def resolve_warmup(config: SearchConfig, space_size: int) -> int:
    if config.warmup is not None:
        return min(config.warmup, config.budget)
    return max(1, min(WARMUP_CEILING, space_size // 4, config.budget))


def bo_search(
    t: AnsatzTemplate,
    h: Hamiltonian,
    config: SearchConfig,
    active_slots=None,
    base: ParameterAssignment | None = None,
) -> SearchTrace:
    """Warmup sampling, then greedy argmin of a forest surrogate per step."""
    ev = SubspaceEvaluator(t, h, active_slots, base)
    if config.budget > ev.space_size:
        raise SpaceExhausted(
            f"budget {config.budget} exceeds the {ev.space_size}-point space"
        )
    warmup = resolve_warmup(config, ev.space_size)
    trace = SearchTrace(
        "bo", space_size=ev.space_size, seed=config.seed, warmup_used=warmup
    )
    rng = np.random.default_rng(config.seed)
    seen: set = set()
    history: list[tuple[int, ...]] = []
    _random_phase(rng, ev, trace, seen, warmup)
    history.extend(tuple(e.assignment.indices[s] for s in ev.active) for e in trace.entries)

    engine = GreedySurrogateEngine(
        rng=rng,
        dims=ev.dims,
        alphabet=4,
        pool_size=config.pool_size,
        trees=config.trees,
        space_size=ev.space_size,
    )
    last_best = trace.best_record.total
    last_improve_iter = trace.iterations_to_best
    while trace.evaluations_used < config.budget:
        if config.stop_on_stagnation is not None:
            window, tol = config.stop_on_stagnation
            if trace.evaluations_used - last_improve_iter >= window:
                break
        totals = [e.record.total for e in trace.entries]
        sub = engine.propose(history, totals, seen)
        if sub is None:
            raise SpaceExhausted("no unevaluated assignment remains")
        seen.add(sub)
        history.append(sub)
        a, rec = ev.evaluate(sub)
        trace.record_eval(a, rec)
        if rec.total < last_best - (
            config.stop_on_stagnation[1] if config.stop_on_stagnation else 0.0
        ):
            last_improve_iter = trace.evaluations_used
        last_best = min(last_best, rec.total)
    return trace


class GreedySurrogateEngine:
    """Forest-fit / pool / argmin proposal step shared by the BO searches."""

    MUTATION_PARENTS = 5
    MAX_DRAW_FACTOR = 50
    REFIT_EVERY = 5  # full rebuild cadence; leaves update incrementally between

    def __init__(
        self,
        rng,
        dims,
        alphabet,
        pool_size,
        trees,
        feasible=None,
        sampler=None,
        space_size=None,
    ):
        self.rng = rng
        self.dims = dims
        self.alphabet = alphabet
        self.pool_size = pool_size
        self.trees = trees
        self.feasible = feasible  # optional predicate on candidate tuples
        self.sampler = sampler  # optional feasible-by-construction draw
        self.space_size = space_size  # feasible-point count, when known
        self._forest: SurrogateForest | None = None
        self._fitted_rows = 0
        self._inserted_rows = 0

    def _random_candidate(self):
        if self.sampler is not None:
            return self.sampler()
        return tuple(int(v) for v in self.rng.integers(0, self.alphabet, self.dims))

    def _build_pool(self, history, totals, seen):
        pool: list[tuple[int, ...]] = []
        pool_set: set = set()
        target = self.pool_size
        if self.space_size is not None:
            target = min(target, self.space_size - len(seen))
        if target <= 0:
            return pool

        def admit(cand) -> bool:
            if cand in seen or cand in pool_set:
                return False
            if self.feasible is not None and not self.feasible(cand):
                return False
            pool.append(cand)
            pool_set.add(cand)
            return True

        # exploitation half: the full single-slot mutation neighborhood of
        # the current top parents (subsampled if it exceeds its quota)
        order = sorted(range(len(totals)), key=lambda i: (totals[i], i))
        parents = [history[i] for i in order[: self.MUTATION_PARENTS]]
        neighborhood: list[tuple[int, ...]] = []
        nb_set: set = set()
        for parent in parents:
            for slot in range(self.dims):
                for delta in range(1, self.alphabet):
                    child = list(parent)
                    child[slot] = (child[slot] + delta) % self.alphabet
                    cand = tuple(child)
                    if cand not in nb_set:
                        nb_set.add(cand)
                        neighborhood.append(cand)
        quota = min(target - target // 2, len(neighborhood))
        if len(neighborhood) > quota:
            keep = self.rng.choice(len(neighborhood), size=quota, replace=False)
            neighborhood = [neighborhood[i] for i in keep]
        for cand in neighborhood:
            if len(pool) >= target:
                break
            admit(cand)

        # exploration half: uniform draws fill the remainder
        attempts = 0
        cap = self.MAX_DRAW_FACTOR * max(1, target)
        while len(pool) < target and attempts < cap:
            attempts += 1
            admit(self._random_candidate())
        return pool

    def _refresh_model(self, history, totals):
        rows = len(history)
        if self._forest is None or rows - self._fitted_rows >= self.REFIT_EVERY:
            self._forest = SurrogateForest(
                trees=self.trees,
                seed=int(self.rng.integers(2**63)),
                levels=self.alphabet,
            )
            self._forest.fit(np.asarray(history, dtype=np.uint8), np.asarray(totals))
            self._fitted_rows = rows
        else:
            for i in range(self._inserted_rows, rows):
                self._forest.insert(history[i], totals[i])
        self._inserted_rows = rows

    def propose(self, history, totals, seen):
        """Next candidate, or None when the space is exhausted."""
        pool = self._build_pool(history, totals, seen)
        if not pool:
            pool = self._enumerate_remaining(seen)
            if not pool:
                return None
        self._refresh_model(history, totals)
        preds = self._forest.predict(np.asarray(pool, dtype=np.uint8))
        best = preds.min()
        ties = np.flatnonzero(preds == best)
        pick = int(ties[self.rng.integers(0, len(ties))]) if len(ties) > 1 else int(ties[0])
        return pool[pick]

    def _enumerate_remaining(self, seen, limit=1 << 16):
        space = self.alphabet**self.dims
        if space > limit:
            # bounded draws failed on a huge space: extremely unlikely unless
            # nearly exhausted, which a huge space cannot be within budget
            while True:
                cand = self._random_candidate()
                if cand not in seen and (self.feasible is None or self.feasible(cand)):
                    return [cand]
        out = []
        sub = [0] * self.dims
        while True:
            cand = tuple(sub)
            if cand not in seen and (self.feasible is None or self.feasible(cand)):
                out.append(cand)
            i = self.dims - 1
            while i >= 0 and sub[i] == self.alphabet - 1:
                sub[i] = 0
                i -= 1
            if i < 0:
                break
            sub[i] += 1
        return out


_PURITY_TOL = 1e-10


class SurrogateForest:
    """Bagged regression trees over categorical slot features.

    Splits partition a slot's levels into two subsets (quarter-turns are
    cyclic, so ordinal thresholds would be meaningless); the optimal
    subset for squared error is found by sorting levels by their running
    mean. Trees grow until purity (no depth limit, min samples 2) and are
    built breadth-first so a whole depth level is one batch of numpy ops.

    ``insert`` routes a new sample to each tree's leaf and updates the
    leaf mean in place, which keeps per-iteration model refreshes cheap
    between full refits.
    """

    def __init__(self, trees: int = 20, seed: int = 0, min_split: int = 2, levels: int = 4):
        self.trees = trees
        self.seed = seed
        self.min_split = min_split
        self.levels = levels
        self._feature = None  # (total_nodes,) int32; -1 marks a leaf
        self._mask = None
        self._left = None
        self._right = None
        self._value = None
        self._count = None
        self._roots = None  # (trees,) node id of each tree's root

    # ---- fitting ----

    def fit(self, X: np.ndarray, y: np.ndarray) -> "SurrogateForest":
        X = np.asarray(X, dtype=np.uint8)
        y = np.asarray(y, dtype=np.float64)
        rng = np.random.default_rng(self.seed)
        m = len(y)
        parts = []
        roots = []
        offset = 0
        for _ in range(self.trees):
            boot = rng.integers(0, m, m)
            arrays = self._grow(X[boot], y[boot])
            roots.append(offset)
            parts.append(arrays)
            offset += len(arrays[0])
        self._roots = np.asarray(roots, dtype=np.int64)
        feature, mask, left, right, value, count = (
            np.concatenate([p[i] for p in parts]) for i in range(6)
        )
        # child pointers are tree-local; shift them into the stacked space
        shift = np.repeat(self._roots, [len(p[0]) for p in parts])
        internal = feature >= 0
        left[internal] += shift[internal]
        right[internal] += shift[internal]
        self._feature, self._mask = feature, mask
        self._left, self._right = left, right
        self._value, self._count = value, count
        return self

    def _grow(self, Xb: np.ndarray, yb: np.ndarray):
        """Breadth-first growth; returns tree-local node arrays."""
        m, p = Xb.shape
        L = self.levels
        col_base = np.arange(p, dtype=np.intp) * L

        feature = [np.full(1, -2, dtype=np.int32)]  # wave arrays, merged at the end
        mask = [np.zeros(1, dtype=np.int64)]
        left = [np.full(1, -1, dtype=np.int32)]
        right = [np.full(1, -1, dtype=np.int32)]
        value = [np.zeros(1, dtype=np.float64)]
        count = [np.zeros(1, dtype=np.float64)]

        node_of = np.zeros(m, dtype=np.int64)
        start, end = 0, 1
        while start < end:
            rows = np.flatnonzero(node_of >= start)
            F = end - start
            loc = node_of[rows] - start
            Xa = Xb[rows]
            ya = yb[rows]

            tn = np.bincount(loc, minlength=F).astype(np.float64)
            ts = np.bincount(loc, weights=ya, minlength=F)
            tss = np.bincount(loc, weights=ya * ya, minlength=F)
            occupied = tn > 0
            means_node = np.divide(ts, tn, out=np.zeros(F), where=occupied)
            value[-1][:] = means_node
            count[-1][:] = tn

            pure = tss - ts * means_node <= _PURITY_TOL * np.maximum(tn, 1.0)
            splittable = occupied & (tn >= self.min_split) & ~pure
            if not splittable.any():
                feature[-1][:] = -1
                break

            flat = (loc[:, None] * (p * L) + col_base[None, :] + Xa).ravel()
            counts = np.bincount(flat, minlength=F * p * L).astype(np.float64)
            sums = np.bincount(flat, weights=np.repeat(ya, p), minlength=F * p * L)
            counts = counts.reshape(F, p, L)
            sums = sums.reshape(F, p, L)

            with np.errstate(invalid="ignore", divide="ignore"):
                lv_means = np.where(counts > 0, sums / counts, np.inf)
            order = np.argsort(lv_means, axis=2, kind="stable")
            oc = np.take_along_axis(counts, order, axis=2)
            osum = np.take_along_axis(sums, order, axis=2)
            cn = np.cumsum(oc, axis=2)[:, :, :-1]
            cs = np.cumsum(osum, axis=2)[:, :, :-1]
            tn3 = tn[:, None, None]
            ts3 = ts[:, None, None]
            valid = (cn > 0) & (cn < tn3)
            with np.errstate(invalid="ignore", divide="ignore"):
                score = cs * cs / cn + (ts3 - cs) ** 2 / (tn3 - cn)
            score = np.where(valid, score, -np.inf)
            flat_score = score.reshape(F, p * (L - 1))
            best_j = np.argmax(flat_score, axis=1)
            base = np.divide(ts * ts, tn, out=np.zeros(F), where=occupied)
            gains = flat_score[np.arange(F), best_j] - base
            split = splittable & np.isfinite(gains) & (gains > 1e-12)
            if not split.any():
                feature[-1][:] = -1
                break

            best_f = (best_j // (L - 1)).astype(np.int32)
            best_pos = best_j % (L - 1)
            # levels are distinct powers of two, so cumulative OR == cumsum
            cum_bits = np.cumsum(1 << order, axis=2)
            node_idx = np.arange(F)
            best_mask = cum_bits[node_idx, best_f, best_pos]

            n_split = int(split.sum())
            child_left = np.full(F, -1, dtype=np.int32)
            child_right = np.full(F, -1, dtype=np.int32)
            child_left[split] = end + 2 * np.arange(n_split)
            child_right[split] = child_left[split] + 1

            feature[-1][:] = np.where(split, best_f, -1).astype(np.int32)
            mask[-1][:] = np.where(split, best_mask, 0)
            left[-1][:] = child_left
            right[-1][:] = child_right

            moving = split[loc]
            mrows = rows[moving]
            mloc = loc[moving]
            fv = Xb[mrows, best_f[mloc]]
            go_left = ((best_mask[mloc] >> fv) & 1).astype(bool)
            node_of[mrows] = np.where(go_left, child_left[mloc], child_right[mloc])

            start, end = end, end + 2 * n_split
            feature.append(np.full(2 * n_split, -2, dtype=np.int32))
            mask.append(np.zeros(2 * n_split, dtype=np.int64))
            left.append(np.full(2 * n_split, -1, dtype=np.int32))
            right.append(np.full(2 * n_split, -1, dtype=np.int32))
            value.append(np.zeros(2 * n_split, dtype=np.float64))
            count.append(np.zeros(2 * n_split, dtype=np.float64))

        return (
            np.concatenate(feature),
            np.concatenate(mask),
            np.concatenate(left),
            np.concatenate(right),
            np.concatenate(value),
            np.concatenate(count),
        )

    # ---- incremental refresh ----

    def insert(self, x_row, y: float):
        """Push one sample to each tree's leaf and update the running mean."""
        if self._roots is None:
            raise RuntimeError("forest is not fitted")
        feature, mask = self._feature, self._mask
        left, right = self._left, self._right
        for node in self._roots:
            node = int(node)
            while feature[node] >= 0:
                bit = (int(mask[node]) >> int(x_row[feature[node]])) & 1
                node = int(left[node]) if bit else int(right[node])
            self._count[node] += 1.0
            self._value[node] += (y - self._value[node]) / self._count[node]

    # ---- prediction ----

    def predict(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.uint8)
        if self._roots is None:
            raise RuntimeError("forest is not fitted")
        q = len(X)
        node = np.broadcast_to(self._roots, (q, self.trees)).copy()
        rows = np.arange(q)
        while True:
            f = self._feature[node]
            active = f >= 0
            if not active.any():
                break
            r, t = np.nonzero(active)
            levels = X[r, f[r, t]]
            bits = (self._mask[node[r, t]] >> levels) & 1
            node[r, t] = np.where(
                bits.astype(bool), self._left[node[r, t]], self._right[node[r, t]]
            )
        return self._value[node].mean(axis=1)
