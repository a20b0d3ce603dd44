"""Cross-checks between the three dynamics and the conserved quantities."""

from __future__ import annotations

import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import partial

from .carrier import Carrier, EnergyReport, energy_profile, energy_sites_predicted, r_step, transfer
from .matching import check_paren_seq, match_rounds, match_stack, stack_permutation
from .poset import (
    MAX_BRUTE_FORCE,
    Partition,
    antichain_decomposition,
    depth_chains,
    greene_I,
    lambda_of,
    lambda_prime_of,
    pair_points,
    stack_poset,
    transpose,
)
from .rsk import p_symbol, shape
from .state import BoxBallState, evolve_tts, parse_state, solitons, steps_to_asymptotic
from .walkpath import (
    delete_concave,
    delete_convex,
    evolve_reflect,
    to_walk,
    walk_to_state,
    zero_free_above_diagonal,
)

EXAMPLE_STATE = "0010011011"
ASYMPTOTIC_HORIZON = 200


def random_corpus(seed: int = 42, count: int = 500, max_window: int = 40, max_balls: int = 12) -> list[BoxBallState]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        width = rng.randint(1, max_window)
        n = rng.randint(0, min(max_balls, width))
        out.append(BoxBallState.from_positions(rng.sample(range(width), n)))
    return out


@dataclass
class Verdict:
    name: str
    passed: bool
    cases: int = 0
    detail: str = ""
    counterexample: dict | None = None


@dataclass
class StepRecord:
    step: int
    state: str
    stack_permutation: list[int]
    shape: list[int]
    depth_histogram: list[int]
    energy: dict

    @classmethod
    def of(cls, step: int, p: BoxBallState, l_max: int, r=r_step) -> StepRecord:
        seq = match_stack(p)
        w = stack_permutation(seq)
        return cls(
            step,
            str(p),
            list(w),
            list(shape(p_symbol(w))),
            list(seq.depth_histogram()),
            energy_profile(p, l_max, r).to_json(),
        )


@dataclass
class InvariantReport:
    records: list[StepRecord] = field(default_factory=list)
    verdicts: list[Verdict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "records": [asdict(r) for r in self.records],
            "verdicts": [asdict(v) for v in self.verdicts],
        }

    @classmethod
    def from_json(cls, data: dict) -> InvariantReport:
        return cls(
            [StepRecord(**r) for r in data["records"]],
            [Verdict(**v) for v in data["verdicts"]],
        )


class _Tally:
    def __init__(self, origin: str):
        self.origin = origin
        self.cases: Counter = Counter()
        self.failures: dict[str, dict] = {}
        self.notes: Counter = Counter()

    def check(self, name: str, ok: bool, step: int | None = None, l: int | None = None, **extra):
        self.cases[name] += 1
        if not ok and name not in self.failures:
            cx = {"state": self.origin, "step": step, "l": l}
            cx.update({k: repr(v) for k, v in extra.items()})
            self.failures[name] = cx

    def guard(self, name: str, fn, step=None, l=None):
        """Run ``fn``; an exception counts as a failure of ``name``."""
        try:
            value = fn()
        except Exception as exc:
            self.check(name, False, step, l, error=exc)
            return None
        self.check(name, True, step, l)
        return value


def corrupted_r_step(c: Carrier, b: int):
    """Deliberately wrong carrier rule: forgets to count one kind of unload."""
    out, c2, bumped = r_step(c, b)
    if bumped and c.ones == 2:
        return out, c2, False
    return out, c2, bumped


def r_step_bijective(capacity: int, step=r_step) -> bool:
    domain = [(Carrier(capacity, m), b) for m in range(capacity + 1) for b in (0, 1)]
    images = set()
    for c, b in domain:
        out, c2, _ = step(c, b)
        if c2.capacity != capacity or c2.ones + out != c.ones + b:
            return False
        images.add((c2.ones, out))
    return len(images) == len(domain)


def _static_checks(t: _Tally, p: BoxBallState, step: int, r):
    """Checks on a single state that need no evolution."""
    n = p.n_balls
    seq = match_stack(p)
    t.check("matching.rounds_eq_stack", match_rounds(p) == seq, step)
    t.check("matching.padding_independent", match_stack(p, n + 5) == seq == match_rounds(p, n + 5), step)
    t.guard("matching.structure", lambda: check_paren_seq(seq), step)
    hist = seq.depth_histogram()
    t.check("matching.depth_histogram_decreasing", all(a >= b for a, b in zip(hist, hist[1:])), step)
    w = stack_permutation(seq)
    if seq.max_depth <= 1:
        t.check("matching.depth1_identity", w == tuple(range(1, n + 1)), step)

    pts = pair_points(seq)
    poset = stack_poset(seq)
    lemma9 = True
    for a in seq.pairs:
        for b in seq.pairs:
            if a.pair_id < b.pair_id:
                comparable = poset.comparable(pts[a.pair_id], pts[b.pair_id])
                lemma9 &= comparable == a.disjoint(b)
    t.check("poset.lemma9", lemma9, step)

    family = t.guard("poset.depth_chains", lambda: depth_chains(seq), step)
    anti = antichain_decomposition(seq)
    depth_of = {pts[p_.pair_id]: p_.depth for p_ in seq.pairs}
    flat = [x for a in anti.antichains for x in a]
    ok = sorted(flat) == sorted(pts.values()) and all(
        poset.is_antichain(a) and sorted(depth_of[x] for x in a) == list(range(1, len(a) + 1))
        for a in anti.antichains
    )
    t.check("poset.antichain_decomposition", ok, step)

    lam = shape(p_symbol(w))
    t.check("rsk.semistandard", p_symbol(w).is_semistandard(), step)
    t.check("rsk.shape_eq_depth_histogram", tuple(lam) == hist, step)

    walk = to_walk(seq)
    t.check("walk.round_trip", walk_to_state(walk) == p, step)
    t.check("walk.convex_eq_concave", delete_convex(walk) == delete_concave(walk), step, walk=walk.text())
    t.check("walk.zero_free_above_diagonal", zero_free_above_diagonal(seq), step)
    counts = []
    cur = walk
    while cur.steps:
        counts.append(match_stack(walk_to_state(cur)).depth_histogram()[0])
        cur = delete_convex(cur)
    t.check("walk.corner_recursion", tuple(counts) == hist, step)

    energy = energy_profile(p, max(n, 1), r)
    for l in range(1, n + 1):
        t.check("energy.sites", energy.sites[l] == energy_sites_predicted(seq, l), step, l)
    vals = [energy.values[l] for l in sorted(energy.values)]
    ok = all(a <= b for a, b in zip(vals, vals[1:]))
    ok &= all(energy.values[l] == energy.saturated for l in energy.values if l >= seq.max_depth)
    ok &= all(energy.sites[l] <= energy.sites[l + 1] for l in energy.sites if l + 1 in energy.sites)
    t.check("energy.report_shape", ok, step)
    diffs = energy.differences()
    t.check("formula.main", all(d == lam.part(l) for l, d in enumerate(diffs, 1)), step, lam=lam, diffs=diffs)

    if n <= MAX_BRUTE_FORCE:
        lam_b = lambda_of(poset)
        t.check("rsk.shape_eq_greene", lam_b == lam, step, greene=lam_b, rsk=lam)
        t.check("poset.duality", lambda_prime_of(poset) == transpose(lam_b), step)
        for k in range(1, n + 1):
            I_k = greene_I(poset, k)
            if family is not None:
                t.check("poset.depth_chains_optimal", family.union_size(k) == I_k, step, k)
            t.check("energy.equals_I", energy.values[k] == I_k, step, k)
    return lam, energy


def check_state(p: BoxBallState, steps: int = 20, brute_steps: int = 1, r=r_step) -> _Tally:
    """Run every check on ``p`` and its first ``steps`` iterates.

    The exhaustive Greene comparisons run on the first ``brute_steps`` states only.
    """
    t = _Tally(str(p))
    n = p.n_balls
    cap = max(n, 1)
    lam0 = energy0 = None
    q = p
    for s in range(steps + 1):
        if s < brute_steps:
            res = _static_checks(t, q, s, r)
        else:
            seq = match_stack(q)
            lam = shape(p_symbol(stack_permutation(seq)))
            res = lam, energy_profile(q, cap, r)
        lam, energy = res
        if s == 0:
            lam0, energy0 = lam, energy
        else:
            t.check("conservation.shape", lam == lam0, s)
            t.check("conservation.energy", energy.values == energy0.values, s, E=energy.values)
            t.check("formula.main", all(d == lam.part(l) for l, d in enumerate(energy.differences(), 1)), s)
        if s == steps:
            break
        nxt = evolve_tts(q)
        t.check("tts.ball_count", nxt.n_balls == n, s)
        if n:
            t.check("tts.leftmost_advances", nxt.offset > q.offset, s)
        t.check("dynamics.reflect_eq_tts", walk_to_state(evolve_reflect(to_walk(match_stack(q)))) == nxt, s)
        t.check("dynamics.carrier_eq_tts", transfer(q, cap, r)[0] == nxt, s, l=cap)
        t.check("dynamics.unbounded_carrier_eq_tts", transfer(q, None, r)[0] == nxt, s)
        q = nxt

    reached = steps_to_asymptotic(p, max(n, 1), ASYMPTOTIC_HORIZON)
    if reached is None:
        t.notes["asymptotic.unreached"] += 1
    else:
        _, a = reached
        prof = solitons(a)
        counts = prof.counts
        lam = shape(p_symbol(stack_permutation(match_stack(a))))
        energy = energy_profile(a, cap, r)
        expected = {l: sum(min(l, k) * nk for k, nk in counts.items()) for l in range(1, cap + 1)}
        t.check("asymptotic.energy", energy.values == expected, l=None, E=energy.values, expected=expected)
        t.check("asymptotic.columns", Partition(sorted(prof.lengths, reverse=True)) == transpose(lam), lam=lam)
        t.check("asymptotic.stays", all(
            steps_to_asymptotic(b, max(n, 1), 0) is not None
            for b in _iterates(a, 10)
        ))
    return t


def _iterates(p, k):
    out = []
    for _ in range(k):
        p = evolve_tts(p)
        out.append(p)
    return out


def _check_one(p, steps, brute_steps, r):
    t = check_state(p, steps, brute_steps, r)
    return dict(t.cases), t.failures, dict(t.notes)


def verify_corpus(states, steps: int = 20, brute_steps: int = 1, r=r_step, jobs: int = 1) -> InvariantReport:
    """Run :func:`check_state` over ``states`` and fold the results into verdicts."""
    work = partial(_check_one, steps=steps, brute_steps=brute_steps, r=r)
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(work, states, chunksize=16))
    else:
        results = [work(p) for p in states]
    cases: Counter = Counter()
    notes: Counter = Counter()
    failures: dict[str, dict] = {}
    failed_states: Counter = Counter()
    for c, f, nt in results:
        cases.update(c)
        notes.update(nt)
        for name, cx in f.items():
            failed_states[name] += 1
            failures.setdefault(name, cx)

    verdicts = []
    for l in range(1, 7):
        ok = r_step_bijective(l, r)
        verdicts.append(Verdict(f"carrier.r_step_bijective[l={l}]", ok, 1,
                                counterexample=None if ok else {"state": None, "step": None, "l": l}))
    for name in sorted(set(cases) | set(failures)):
        if name in failures:
            verdicts.append(Verdict(name, False, cases[name],
                                    f"failed on {failed_states[name]} state(s)", failures[name]))
        else:
            verdicts.append(Verdict(name, True, cases[name]))
    unreached = notes["asymptotic.unreached"]
    verdicts.append(Verdict(
        "asymptotic.reached", True, len(states),
        f"{len(states) - unreached} reached within {ASYMPTOTIC_HORIZON} steps, {unreached} did not",
    ))
    return InvariantReport([], verdicts)


def invariant_report(p: BoxBallState, steps: int, l_max: int | None = None, r=r_step) -> InvariantReport:
    """Per-step conserved quantities of one trajectory, flagging any that change."""
    if l_max is None:
        l_max = max(p.n_balls, 1)
    records = []
    q = p
    for s in range(steps + 1):
        records.append(StepRecord.of(s, q, l_max, r))
        q = evolve_tts(q)
    verdicts = []
    conserved = (
        ("conservation.shape", lambda rec: rec.shape),
        ("conservation.energy", lambda rec: rec.energy["E"]),
        ("conservation.depth_histogram", lambda rec: rec.depth_histogram),
    )
    for name, key in conserved:
        bad = next((rec for rec in records if key(rec) != key(records[0])), None)
        verdicts.append(Verdict(
            name, bad is None, len(records),
            counterexample=None if bad is None else {"state": str(p), "step": bad.step, "l": None},
        ))
    bad = None
    for rec in records:
        diffs = EnergyReport.from_json(rec.energy).differences()
        lam = Partition(rec.shape)
        if any(d != lam.part(l) for l, d in enumerate(diffs, 1)):
            bad = rec
            break
    verdicts.append(Verdict("formula.main", bad is None, len(records),
                            counterexample=None if bad is None else {"state": str(p), "step": bad.step, "l": None}))
    return InvariantReport(records, verdicts)


def example_state() -> BoxBallState:
    return parse_state(EXAMPLE_STATE)
