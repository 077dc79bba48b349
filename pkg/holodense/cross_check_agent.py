"""Cross Check Agent: independent coprimality oracles must agree on random tuples"""
from typing import Callable, Dict, Optional, Sequence

import numpy as np

from .curve_places import CurveDesc
from .errors import OracleDisagreement
from .oracles import (NORM_SEARCH, SCAN_SEARCH, TupleSample, coprime_gcd_oracle, coprime_module_oracle,
                      coprime_place_oracle, irreducible_divisor_oracle)
from .parameter_parsing import parse_field
from .rr_space import SpaceDesc, rr_basis, sample_uniform


class CrossCheckAgent:
    def __init__(self, config):
        self.config = config
        self.default_trials = config['cross_check']['default_trials']
        self.default_seed = config['cross_check']['default_seed']
        self.place_guard = config['guards']['place_search']

    def _samples(self, space: SpaceDesc, m: int, trials: int, seed: int):
        rng = np.random.default_rng(seed)
        for _ in range(trials):
            yield TupleSample(tuple(sample_uniform(space, rng) for _ in range(m)))

    def _compare(self, space: SpaceDesc, m: int, trials: Optional[int], seed: Optional[int],
                 oracles: Dict[str, Callable[[TupleSample], bool]], log_capture=None) -> Dict:
        trials = self.default_trials if trials is None else trials
        seed = self.default_seed if seed is None else seed
        if log_capture:
            log_capture.add(f"Cross-checking {', '.join(oracles)} on {trials} tuples "
                            f"({space.kind} q={space.q} n={space.n} m={m}, seed {seed})", "INFO")

        coprime = 0
        for sample in self._samples(space, m, trials, seed):
            verdicts = {name: oracle(sample) for name, oracle in oracles.items()}
            if len(set(verdicts.values())) > 1:
                if log_capture:
                    log_capture.add(f"Oracles disagree on {sample!r}: {verdicts}", "ERROR")
                raise OracleDisagreement(f"oracles disagree on {sample!r}: {verdicts}", sample)
            coprime += next(iter(verdicts.values()))

        if log_capture:
            log_capture.add(f"✅ {trials} tuples, zero disagreements", "SUCCESS")
        return {
            'space': space.kind, 'q': space.q, 'n': space.n, 'm': m,
            'trials': trials, 'seed': seed, 'coprime': coprime,
            'oracles': list(oracles), 'agree': True,
        }

    def cross_oracle_check(self, q: int, n: int, m: int, trials: Optional[int] = None,
                           seed: Optional[int] = None, log_capture=None) -> bool:
        """gcd oracle vs irreducible-divisor oracle on F_q[x]; raises OracleDisagreement on the first mismatch."""
        space = rr_basis(parse_field(q), n)
        self._compare(space, m, trials, seed, {
            'gcd': coprime_gcd_oracle,
            'irreducible_divisor': irreducible_divisor_oracle,
        }, log_capture)
        return True

    def cross_check_elliptic(self, E: CurveDesc, n: int, m: int, trials: Optional[int] = None,
                             seed: Optional[int] = None, searches: Sequence[str] = (NORM_SEARCH,),
                             log_capture=None) -> bool:
        """Place oracle (each requested search) vs the Hermite-form module oracle on A(E)."""
        oracles = {f'place_{s}': (lambda t, s=s: coprime_place_oracle(t, s, self.place_guard))
                   for s in searches}
        oracles['module'] = coprime_module_oracle
        self._compare(rr_basis(E, n), m, trials, seed, oracles, log_capture)
        return True

    def summary(self, kind, n: int, m: int, trials: Optional[int] = None, seed: Optional[int] = None,
                scan: bool = False, log_capture=None) -> Dict:
        """JSON-ready result for the CLI; kind is a CurveDesc or a field size.

        The literal place scan joins the elliptic comparison only with scan=True.
        """
        if isinstance(kind, CurveDesc):
            oracles = {'place_norm': lambda t: coprime_place_oracle(t, NORM_SEARCH, self.place_guard)}
            if scan:
                oracles['place_scan'] = lambda t: coprime_place_oracle(t, SCAN_SEARCH, self.place_guard)
            oracles['module'] = coprime_module_oracle
            return self._compare(rr_basis(kind, n), m, trials, seed, oracles, log_capture)
        return self._compare(rr_basis(parse_field(kind), n), m, trials, seed, {
            'gcd': coprime_gcd_oracle,
            'irreducible_divisor': irreducible_divisor_oracle,
        }, log_capture)
