"""Experiment Agent: exhaustive, Monte Carlo and truncated coprimality counts over L(nP_inf)^m"""
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np

from .curve_places import split_range
from .errors import GuardLimitExceeded, InputError
from .oracles import TupleSample, first_places, is_coprime, truncation_member
from .reports import EXHAUSTIVE, MONTE_CARLO, TRUNCATED, ExperimentReport, wilson_interval
from .rr_space import RATIONAL, SpaceDesc, enumerate_space, rr_basis, sample_uniform
from .zeta_density import DensityKind, exact_density


def _tuple_at(elements: Sequence, m: int, index: int) -> TupleSample:
    # first component is the least significant digit
    size = len(elements)
    components = []
    for _ in range(m):
        index, digit = divmod(index, size)
        components.append(elements[digit])
    return TupleSample(tuple(components))


def _count_coprime_range(space: SpaceDesc, m: int, start: int, stop: int,
                         search: str, place_guard: int) -> int:
    elements = list(enumerate_space(space, guard=space.size))
    return sum(1 for i in range(start, stop)
               if is_coprime(_tuple_at(elements, m, i), search, place_guard))


def _count_truncated_range(space: SpaceDesc, m: int, start: int, stop: int, places) -> int:
    elements = list(enumerate_space(space, guard=space.size))
    return sum(1 for i in range(start, stop)
               if truncation_member(_tuple_at(elements, m, i), places))


def _monte_carlo_block(space: SpaceDesc, m: int, seed: int, block: int, count: int,
                       search: str, place_guard: int) -> int:
    """Coprime hits among `count` uniform tuples drawn from stream `block` of `seed`."""
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(block,)))
    hits = 0
    for _ in range(count):
        sample = TupleSample(tuple(sample_uniform(space, rng) for _ in range(m)))
        if is_coprime(sample, search, place_guard):
            hits += 1
    return hits


class ExperimentAgent:
    def __init__(self, config):
        self.config = config
        self.guards = config['guards']
        exp_cfg = config['experiment']
        self.workers = exp_cfg['workers']
        self.block_size = exp_cfg['block_size']
        self.confidence_level = exp_cfg['confidence_level']
        self.place_search = exp_cfg['place_search']

    @staticmethod
    def space(kind: DensityKind, n: int) -> SpaceDesc:
        return rr_basis(kind, n)

    @staticmethod
    def theoretical_density(space: SpaceDesc, m: int) -> Fraction:
        return exact_density(space.field if space.kind == RATIONAL else space.curve, m)

    def _run_ranges(self, fn, space: SpaceDesc, m: int, total: int, extra: tuple,
                    workers: Optional[int]) -> int:
        workers = workers or self.workers
        ranges = split_range(total, workers)
        if workers <= 1 or len(ranges) == 1:
            return fn(space, m, 0, total, *extra)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(fn, space, m, lo, hi, *extra) for lo, hi in ranges]
            return sum(f.result() for f in futures)

    def _tuple_total(self, space: SpaceDesc, m: int) -> int:
        """Size of L(nP_inf)^m for a run that enumerates it; sampling runs skip both guards."""
        if m < 2:
            raise InputError(f"tuples need m >= 2, got {m}")
        if space.size > self.guards['space_enumeration']:
            raise GuardLimitExceeded(f"L({space.n}P_inf) over F_{space.q}", space.size,
                                     self.guards['space_enumeration'])
        total = space.size ** m
        limit = self.guards['tuple_enumeration']
        if total > limit:
            raise GuardLimitExceeded(f"exhaustive run over L({space.n}P_inf)^{m}", total, limit)
        return total

    def exhaustive_density(self, space: SpaceDesc, m: int, workers: Optional[int] = None,
                           log_capture=None) -> ExperimentReport:
        """Exact coprime fraction over all q^(m*l) tuples."""
        total = self._tuple_total(space, m)
        theoretical = self.theoretical_density(space, m)
        if log_capture:
            log_capture.add(f"Exhaustive {space.kind} q={space.q} n={space.n} m={m}: {total} tuples", "INFO")

        start_time = time.perf_counter()
        coprime = self._run_ranges(_count_coprime_range, space, m, total,
                                   (self.place_search, self.guards['place_search']), workers)
        report = ExperimentReport(
            space=space.kind, q=space.q, n=space.n, m=m, mode=EXHAUSTIVE,
            total=total, coprime=coprime, theoretical=theoretical,
            wall_time=time.perf_counter() - start_time,
        )
        if log_capture:
            log_capture.add(f"✓ n={space.n}: {report.empirical} (limit {theoretical})", "SUCCESS")
        return report

    def monte_carlo_density(self, space: SpaceDesc, m: int, trials: int, seed: int,
                            workers: Optional[int] = None, log_capture=None) -> ExperimentReport:
        """Uniform sampling in blocks; block k always uses stream (seed, k), whatever the worker count."""
        if m < 2:
            raise InputError(f"tuples need m >= 2, got {m}")
        if trials < 1:
            raise InputError(f"trials must be >= 1, got {trials}")
        workers = workers or self.workers
        theoretical = self.theoretical_density(space, m)
        blocks = [(k, min(self.block_size, trials - k * self.block_size))
                  for k in range(-(-trials // self.block_size))]
        extra = (self.place_search, self.guards['place_search'])
        if log_capture:
            log_capture.add(f"Monte Carlo {space.kind} q={space.q} n={space.n} m={m}: "
                            f"{trials} trials in {len(blocks)} blocks, seed {seed}", "INFO")

        start_time = time.perf_counter()
        if workers <= 1 or len(blocks) == 1:
            coprime = sum(_monte_carlo_block(space, m, seed, k, count, *extra) for k, count in blocks)
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futures = [pool.submit(_monte_carlo_block, space, m, seed, k, count, *extra)
                           for k, count in blocks]
                coprime = sum(f.result() for f in futures)
        ci_low, ci_high = wilson_interval(coprime, trials, self.confidence_level)
        report = ExperimentReport(
            space=space.kind, q=space.q, n=space.n, m=m, mode=MONTE_CARLO,
            total=trials, coprime=coprime, theoretical=theoretical,
            ci_low=ci_low, ci_high=ci_high, seed=seed,
            wall_time=time.perf_counter() - start_time,
        )
        if log_capture:
            covered = ci_low <= float(theoretical) <= ci_high
            log_capture.add(f"{'✓' if covered else '⚠️'} estimate {float(report.empirical):.5f} "
                            f"CI [{ci_low:.5f}, {ci_high:.5f}] vs {float(theoretical):.5f}",
                            "SUCCESS" if covered else "WARN")
        return report

    def exhaustive_truncated_density(self, space: SpaceDesc, m: int, t: int,
                                     workers: Optional[int] = None, log_capture=None) -> ExperimentReport:
        """Fraction of tuples with no common zero among the first t places; theoretical is the finite product."""
        if t < 1:
            raise InputError(f"t must be >= 1, got {t}")
        total = self._tuple_total(space, m)
        places = first_places(space, t)
        theoretical = Fraction(1)
        for place in places:
            theoretical *= 1 - Fraction(1, space.q ** (m * place.degree))
        if log_capture:
            log_capture.add(f"Truncated run over the first {t} places, {total} tuples", "INFO")

        start_time = time.perf_counter()
        coprime = self._run_ranges(_count_truncated_range, space, m, total, (places,), workers)
        return ExperimentReport(
            space=space.kind, q=space.q, n=space.n, m=m, mode=TRUNCATED,
            total=total, coprime=coprime, theoretical=theoretical,
            wall_time=time.perf_counter() - start_time,
        )

    def convergence_scan(self, kind: DensityKind, n_values: Iterable[int], m: int, mode: str = EXHAUSTIVE,
                         trials: Optional[int] = None, seed: Optional[int] = None,
                         workers: Optional[int] = None, log_capture=None) -> List[ExperimentReport]:
        """One report per n along the chain nP_inf."""
        exp_cfg = self.config['experiment']
        trials = trials or exp_cfg['default_trials']
        seed = exp_cfg['default_seed'] if seed is None else seed
        reports = []
        for n in n_values:
            space = self.space(kind, n)
            if mode == EXHAUSTIVE:
                report = self.exhaustive_density(space, m, workers, log_capture)
            elif mode == MONTE_CARLO:
                report = self.monte_carlo_density(space, m, trials, seed, workers, log_capture)
            else:
                raise InputError(f"scan mode must be {EXHAUSTIVE} or {MONTE_CARLO}, got {mode!r}")
            reports.append(report)
        return reports


def scan_summary(reports: Sequence[ExperimentReport]) -> Dict:
    """Largest and smallest empirical value over the upper half of the chain, plus the final deviation."""
    if not reports:
        return {'sup': None, 'inf': None, 'final_deviation': None, 'initial_deviation': None}
    tail = reports[len(reports) // 2:]
    return {
        'sup': max(r.empirical for r in tail),
        'inf': min(r.empirical for r in tail),
        'final_deviation': reports[-1].abs_err,
        'initial_deviation': reports[0].abs_err,
    }
