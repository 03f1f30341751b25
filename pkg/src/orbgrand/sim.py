"""Monte Carlo BLER estimation, schedule dumping/verification, and the
empirical-schedule estimator.

The engine simulates blocks in fixed-size batches. Batch ``b`` draws its
messages and noise from the Philox stream (seed, b), and batches are merged
strictly in index order, so results are byte-identical for any worker
count: workers only change who computes a batch, never what it contains or
whether it is included. The stopping rule (min_block_errors on the first
schedule arm, or the max_blocks cap) is evaluated on the ordered prefix of
batches; speculative batches beyond the stopping point are discarded.

Because every batch of every run with the same seed sees the same noise,
runs are paired by construction; ``paired=True`` additionally decodes all
schedule arms on the same pass over blocks and records the joint per-block
error outcomes, which is what the discordant-pair significance tests
consume. Channel work (encode, noise, syndromes, reliability sort) is
vectorized per batch; only blocks whose hard decision fails the check run
the per-pattern query loop, using the packed-integer syndrome masks of the
code.

Abandonment counts as a block error; a decoded codeword different from the
transmitted one is counted both as a block error and separately as an
undetected error (miscorrection).
"""

from __future__ import annotations

import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import binomtest, norm

from .channel import make_rng, noise_sigma
from .codes import build_code
from .decoder import make_schedule
from .patterns import (
    improved_logistic_weight,
    logistic_weight,
    read_pattern_file,
    tail_count_matrix,
    validate_support,
    write_pattern_file,
)

CSV_HEADER = (
    "code,schedule,ebn0_db,qmax,hmax,blocks,block_errors,undetected,"
    "bler,mean_queries,max_queries,seed"
)


@dataclass(frozen=True)
class ScheduleSpec:
    """One decoder arm: a schedule kind plus its query budget and h cap."""

    kind: str
    q_max: int
    h_max: int | None = None
    pattern_file: str | None = None

    def __post_init__(self):
        if self.q_max < 1:
            raise ValueError("q_max must be >= 1")

    @property
    def label(self):
        return self.kind


@dataclass(frozen=True)
class SimConfig:
    code: object = "bch127"  # name, config path, or a code object
    schedules: tuple = (ScheduleSpec("lwo", 1000),)
    ebn0_list: tuple = (7.0,)
    min_block_errors: int = 100
    max_blocks: int = 10**6
    seed: int = 1
    workers: int = 1
    paired: bool = False
    batch_size: int = 4096

    def __post_init__(self):
        if self.min_block_errors < 1:
            raise ValueError("min_block_errors must be >= 1")
        if self.max_blocks < 1:
            raise ValueError("max_blocks must be >= 1")
        if not self.schedules:
            raise ValueError("at least one schedule arm is required")


@dataclass
class SimResult:
    code: str
    schedule: str
    ebn0_db: float
    qmax: int
    hmax: int | None
    blocks: int
    block_errors: int
    undetected: int
    bler: float
    mean_queries: float
    max_queries: int
    seed: int
    wall_seconds: float = 0.0
    stop_reason: str = ""


@dataclass
class SimRun:
    results: list
    # per ebn0 (paired runs only): Counter over per-block arm error tuples
    joint_errors: dict = field(default_factory=dict)


def discordant_counts(joint, i=0, j=1):
    """(errors only in arm i, errors only in arm j) from a joint counter."""
    only_i = sum(c for flags, c in joint.items() if flags[i] and not flags[j])
    only_j = sum(c for flags, c in joint.items() if flags[j] and not flags[i])
    return only_i, only_j


def paired_sign_test(n_ref_only, n_other_only):
    """One-sided p-value that the reference arm errs more than the other,
    from the discordant pairs of a paired run."""
    total = n_ref_only + n_other_only
    if total == 0:
        return 1.0
    return float(binomtest(n_ref_only, total, 0.5, alternative="greater").pvalue)


def wilson_interval(errors, trials, confidence=0.95):
    """Wilson score interval for a binomial proportion."""
    if trials == 0:
        return (0.0, 1.0)
    z = float(norm.ppf(0.5 + confidence / 2.0))
    phat = errors / trials
    denom = 1.0 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * np.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return (max(0.0, center - half), min(1.0, center + half))


# ---------------------------------------------------------------------------
# Batch engine


class _Engine:
    def __init__(self, code, schedules, seed):
        self.code = code
        self.schedules = schedules  # list of materialized pattern lists
        self.seed = seed
        self.masks = np.asarray(code.syndrome_masks, dtype=np.int64)
        self.check_f32 = np.asarray(code.check_matrix, dtype=np.float32)
        m = self.check_f32.shape[1]
        self.pack = (1 << np.arange(m, dtype=np.int64)).astype(np.float64)

    def run_batch(self, sigma, batch_idx, size):
        rng = make_rng(self.seed, batch_idx)
        code = self.code
        msgs = rng.integers(0, 2, size=(size, code.k), dtype=np.uint8)
        cw = code.encode(msgs)
        y = (1.0 - 2.0 * cw) + sigma * rng.standard_normal((size, code.n))
        hard = (y < 0).astype(np.uint8)
        err = hard ^ cw
        err_w = err.sum(axis=1)
        synd_bits = (hard.astype(np.float32) @ self.check_f32) % 2
        base = (synd_bits.astype(np.float64) @ self.pack).astype(np.int64)

        arms = len(self.schedules)
        errors = [0] * arms
        undetected = [0] * arms
        qsum = [0] * arms
        qmax = [1] * arms
        joint = Counter()

        loop_rows = np.flatnonzero(base != 0)
        q1_wrong = int(np.count_nonzero((base == 0) & (err_w > 0)))
        clean = size - loop_rows.size - q1_wrong

        joint[(False,) * arms] += clean
        if q1_wrong:
            # Hard decision lands on a codeword that is not the sent one.
            joint[(True,) * arms] += q1_wrong
            for a in range(arms):
                errors[a] += q1_wrong
                undetected[a] += q1_wrong
        for a in range(arms):
            qsum[a] += size - loop_rows.size  # one query for every non-looping block

        if loop_rows.size:
            pis = np.argsort(np.abs(y[loop_rows]), axis=1, kind="stable")
            pms = self.masks[pis]
            err_rows = err[loop_rows]
            for r in range(loop_rows.size):
                b = int(base[loop_rows[r]])
                pm = pms[r].tolist()
                pi_list = pis[r].tolist()
                true_pos = None
                flags = []
                for a, sched in enumerate(self.schedules):
                    q = 0
                    hit = None
                    for supp in sched:
                        q += 1
                        s = b
                        for j in supp:
                            s ^= pm[j]
                        if s == 0:
                            hit = supp
                            break
                    qsum[a] += q
                    if q > qmax[a]:
                        qmax[a] = q
                    if hit is None:
                        errors[a] += 1
                        flags.append(True)
                    else:
                        if true_pos is None:
                            true_pos = frozenset(np.flatnonzero(err_rows[r]).tolist())
                        wrong = frozenset(pi_list[j] for j in hit) != true_pos
                        if wrong:
                            errors[a] += 1
                            undetected[a] += 1
                        flags.append(wrong)
                joint[tuple(flags)] += 1
        return {
            "blocks": size,
            "errors": errors,
            "undetected": undetected,
            "qsum": qsum,
            "qmax": qmax,
            "joint": joint,
        }


def _merge(into, tally):
    into["blocks"] += tally["blocks"]
    for key in ("errors", "undetected", "qsum"):
        into[key] = [a + b for a, b in zip(into[key], tally[key])]
    into["qmax"] = [max(a, b) for a, b in zip(into["qmax"], tally["qmax"])]
    into["joint"].update(tally["joint"])


def _empty_tally(arms):
    return {
        "blocks": 0,
        "errors": [0] * arms,
        "undetected": [0] * arms,
        "qsum": [0] * arms,
        "qmax": [1] * arms,
        "joint": Counter(),
    }


_WORKER_ENGINE = None


def _worker_init(code, schedules, seed):
    global _WORKER_ENGINE
    _WORKER_ENGINE = _Engine(code, schedules, seed)


def _worker_task(sigma, batch_idx, size):
    return batch_idx, _WORKER_ENGINE.run_batch(sigma, batch_idx, size)


def _batch_sizes(max_blocks, batch_size):
    sizes = []
    remaining = max_blocks
    while remaining > 0:
        sizes.append(min(batch_size, remaining))
        remaining -= sizes[-1]
    return sizes


def _run_point(cfg, engine, pool, sigma):
    """Accumulate batches in index order until the stopping rule fires on
    the first arm. Returns the merged tally and the stop reason."""
    arms = len(engine.schedules)
    total = _empty_tally(arms)
    sizes = _batch_sizes(cfg.max_blocks, cfg.batch_size)

    def stopped():
        return total["errors"][0] >= cfg.min_block_errors

    if pool is None:
        for batch_idx, size in enumerate(sizes):
            _merge(total, engine.run_batch(sigma, batch_idx, size))
            if stopped():
                break
    else:
        # Submit a sliding window of speculative batches but merge strictly
        # in index order; anything beyond the stopping point is discarded.
        window = max(2, cfg.workers * 2)
        pending = {}
        next_submit = 0
        next_consume = 0
        while next_consume < len(sizes):
            while next_submit < len(sizes) and len(pending) < window:
                pending[next_submit] = pool.submit(
                    _worker_task, sigma, next_submit, sizes[next_submit]
                )
                next_submit += 1
            _, tally = pending.pop(next_consume).result()
            _merge(total, tally)
            next_consume += 1
            if stopped():
                break
        for fut in pending.values():
            fut.cancel()
    reason = "min_block_errors" if stopped() else "max_blocks"
    return total, reason


def run_bler(cfg):
    """Estimate BLER for every (Eb/N0, schedule arm) pair of ``cfg``.

    Paired mode decodes all arms on the same blocks in one pass and stops
    when the first arm reaches ``min_block_errors`` (or at ``max_blocks``);
    otherwise each arm runs and stops independently. Given identical
    ``cfg`` the output is byte-identical for any ``workers`` value.
    """
    code = cfg.code if not isinstance(cfg.code, str) else build_code(cfg.code)
    code_name = getattr(code, "name", "generic")
    schedules = [
        make_schedule(s.kind, code.n, s.q_max, h_max=s.h_max, pattern_file=s.pattern_file)
        for s in cfg.schedules
    ]
    run = SimRun(results=[])
    arm_groups = [list(range(len(cfg.schedules)))] if cfg.paired else [
        [i] for i in range(len(cfg.schedules))
    ]
    for ebn0 in cfg.ebn0_list:
        sigma = noise_sigma(ebn0, code.rate)
        point_results = [None] * len(cfg.schedules)
        for group in arm_groups:
            engine = _Engine(code, [schedules[i] for i in group], cfg.seed)
            t0 = time.perf_counter()
            if cfg.workers > 1:
                with ProcessPoolExecutor(
                    max_workers=cfg.workers,
                    initializer=_worker_init,
                    initargs=(code, engine.schedules, cfg.seed),
                ) as pool:
                    total, reason = _run_point(cfg, engine, pool, sigma)
            else:
                total, reason = _run_point(cfg, engine, None, sigma)
            wall = time.perf_counter() - t0
            blocks = total["blocks"]
            for pos, arm in enumerate(group):
                spec = cfg.schedules[arm]
                point_results[arm] = SimResult(
                    code=code_name,
                    schedule=spec.label,
                    ebn0_db=ebn0,
                    qmax=spec.q_max,
                    hmax=spec.h_max,
                    blocks=blocks,
                    block_errors=total["errors"][pos],
                    undetected=total["undetected"][pos],
                    bler=total["errors"][pos] / blocks,
                    mean_queries=total["qsum"][pos] / blocks,
                    max_queries=total["qmax"][pos],
                    seed=cfg.seed,
                    wall_seconds=wall,
                    stop_reason=reason,
                )
            if cfg.paired:
                run.joint_errors[ebn0] = total["joint"]
        run.results.extend(point_results)
    return run


def results_to_csv(results, stop_comments=True):
    """Render results as CSV with the fixed column set; the stopping-rule
    trigger goes into '#' comment lines so the header stays canonical."""
    lines = [CSV_HEADER]
    for r in results:
        if stop_comments:
            lines.append(
                f"# ebn0={r.ebn0_db:g} schedule={r.schedule} qmax={r.qmax} "
                f"stop={r.stop_reason}"
            )
        hmax = "none" if r.hmax is None else str(r.hmax)
        lines.append(
            f"{r.code},{r.schedule},{r.ebn0_db:g},{r.qmax},{hmax},{r.blocks},"
            f"{r.block_errors},{r.undetected},{r.bler:.10g},"
            f"{r.mean_queries:.10g},{r.max_queries},{r.seed}"
        )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Pattern dumping and schedule verification


def dump_patterns(kind, n, q, h_max=None, out=None, pattern_file=None):
    """Materialize a schedule prefix; optionally write it in the pattern
    text format. Returns the pattern list."""
    patterns = make_schedule(kind, n, q, h_max=h_max, pattern_file=pattern_file)
    if out is not None:
        write_pattern_file(patterns, out)
    return patterns


@dataclass
class ScheduleReport:
    n: int
    num_patterns: int
    duplicates: list  # (first_line, dup_line, support)
    violations: list  # (earlier_line, later_line, earlier_supp, later_supp)

    @property
    def ok(self):
        return not self.duplicates and not self.violations

    def summary(self):
        if self.ok:
            return f"{self.num_patterns} patterns, no duplicates, no order violations"
        parts = []
        for first, dup, supp in self.duplicates:
            parts.append(f"duplicate of line {first} at line {dup}: '{' '.join(map(str, supp))}'")
        for i, j, a, b in self.violations:
            parts.append(
                f"order violation: line {j} pattern '{' '.join(map(str, b))}' precedes "
                f"line {i} pattern '{' '.join(map(str, a))}' in the partial order"
            )
        return "\n".join(parts)


def verify_schedule(source, n):
    """Check a pattern sequence for duplicates and partial-order violations.

    A violation is a pair emitted in the order (b, a) although a strictly
    precedes b in the universal partial order. Since every UPO move strictly
    increases the logistic weight, only pairs whose LW decreases along the
    sequence can violate; those candidates get the exact tail-count
    dominance test.
    """
    if isinstance(source, (list, tuple)):
        patterns = [tuple(p) for p in source]
    else:
        patterns = read_pattern_file(source)
    for lineno, supp in enumerate(patterns, start=1):
        try:
            validate_support(supp, n)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None

    duplicates = []
    seen = {}
    for idx, supp in enumerate(patterns):
        if supp in seen:
            duplicates.append((seen[supp] + 1, idx + 1, supp))
        else:
            seen[supp] = idx

    violations = []
    if patterns:
        lws = np.array([logistic_weight(p) for p in patterns], dtype=np.int64)
        running_max = np.maximum.accumulate(lws)
        suspects = np.flatnonzero(lws < running_max)
        if suspects.size:
            dmat = tail_count_matrix(patterns, n)
            for j in suspects:
                cand = np.flatnonzero(lws[:j] > lws[j])
                if cand.size == 0:
                    continue
                dominated = np.all(dmat[cand] >= dmat[j], axis=1)
                for i in cand[dominated]:
                    violations.append((int(i) + 1, int(j) + 1, patterns[i], patterns[j]))
    return ScheduleReport(
        n=n, num_patterns=len(patterns), duplicates=duplicates, violations=violations
    )


# ---------------------------------------------------------------------------
# Empirical schedule estimation


def estimate_empirical_schedule(code, ebn0_db, num_blocks, q_out, seed=0, batch_size=8192):
    """Rank sorted-space true error patterns by observed frequency.

    Simulates transmissions, maps each block's hard-decision error pattern
    into sorted-reliability index space, and returns the ``q_out`` most
    frequent patterns (descending frequency, ties by ascending iLW then
    lexicographic support), with the all-zero pattern always first.
    """
    if isinstance(code, str):
        code = build_code(code)
    sigma = noise_sigma(ebn0_db, code.rate)
    counts = Counter()
    done = 0
    batch_idx = 0
    while done < num_blocks:
        size = min(batch_size, num_blocks - done)
        rng = make_rng(seed, batch_idx)
        msgs = rng.integers(0, 2, size=(size, code.k), dtype=np.uint8)
        cw = code.encode(msgs)
        y = (1.0 - 2.0 * cw) + sigma * rng.standard_normal((size, code.n))
        hard = (y < 0).astype(np.uint8)
        err = hard ^ cw
        err_rows = np.flatnonzero(err.any(axis=1))
        counts[()] += size - err_rows.size
        if err_rows.size:
            pis = np.argsort(np.abs(y[err_rows]), axis=1, kind="stable")
            sorted_err = np.take_along_axis(err[err_rows], pis, axis=1)
            for row in sorted_err:
                counts[tuple(np.flatnonzero(row).tolist())] += 1
        done += size
        batch_idx += 1

    ranked = sorted(
        counts.items(),
        key=lambda kv: (-kv[1], improved_logistic_weight(kv[0]), kv[0]),
    )
    top = [supp for supp, _ in ranked[:q_out]]
    if () in top:
        top.remove(())
    else:
        top = top[: max(0, q_out - 1)]
    return [()] + top
