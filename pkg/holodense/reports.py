"""Experiment reports, Wilson intervals and the CSV / JSON codecs"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, fields, replace
from fractions import Fraction
from math import sqrt
from statistics import NormalDist
from typing import Dict, Iterable, List, Optional, TextIO, Tuple

from .errors import InputError

EXHAUSTIVE = 'exhaustive'
MONTE_CARLO = 'monte_carlo'
TRUNCATED = 'truncated'
MODES = (EXHAUSTIVE, MONTE_CARLO, TRUNCATED)

CSV_HEADER = ['space', 'q', 'n', 'm', 'mode', 'total', 'coprime', 'empirical', 'theoretical',
              'abs_err', 'ci_low', 'ci_high', 'seed']


@dataclass(frozen=True)
class ExperimentReport:
    space: str
    q: int
    n: int
    m: int
    mode: str
    total: int
    coprime: int
    theoretical: Fraction
    ci_low: Optional[float] = None
    ci_high: Optional[float] = None
    seed: Optional[int] = None
    wall_time: float = 0.0

    def __post_init__(self):
        if self.mode not in MODES:
            raise InputError(f"unknown experiment mode {self.mode!r}")
        if not 0 <= self.coprime <= self.total or self.total < 1:
            raise InputError(f"need 0 <= coprime <= total and total >= 1, got {self.coprime}/{self.total}")

    @property
    def empirical(self) -> Fraction:
        return Fraction(self.coprime, self.total)

    @property
    def abs_err(self) -> Fraction:
        return abs(self.empirical - self.theoretical)

    def without_timing(self) -> 'ExperimentReport':
        return replace(self, wall_time=0.0)

    def to_row(self) -> Dict[str, str]:
        return {
            'space': self.space,
            'q': str(self.q),
            'n': str(self.n),
            'm': str(self.m),
            'mode': self.mode,
            'total': str(self.total),
            'coprime': str(self.coprime),
            'empirical': str(self.empirical),
            'theoretical': str(self.theoretical),
            'abs_err': str(self.abs_err),
            'ci_low': _float_cell(self.ci_low),
            'ci_high': _float_cell(self.ci_high),
            'seed': '' if self.seed is None else str(self.seed),
        }

    def to_dict(self) -> Dict:
        data = asdict(self)
        data['theoretical'] = str(self.theoretical)
        data['empirical'] = str(self.empirical)
        data['abs_err'] = str(self.abs_err)
        return data

    @classmethod
    def from_dict(cls, data: Dict) -> 'ExperimentReport':
        names = {f.name for f in fields(cls)}
        kwargs = {k: v for k, v in data.items() if k in names}
        kwargs['theoretical'] = Fraction(kwargs['theoretical'])
        report = cls(**kwargs)
        if 'empirical' in data and Fraction(data['empirical']) != report.empirical:
            raise InputError(f"empirical {data['empirical']} does not match {report.coprime}/{report.total}")
        return report

    @classmethod
    def from_row(cls, row: Dict[str, str]) -> 'ExperimentReport':
        return cls(
            space=row['space'],
            q=int(row['q']),
            n=int(row['n']),
            m=int(row['m']),
            mode=row['mode'],
            total=int(row['total']),
            coprime=int(row['coprime']),
            theoretical=Fraction(row['theoretical']),
            ci_low=float(row['ci_low']) if row['ci_low'] else None,
            ci_high=float(row['ci_high']) if row['ci_high'] else None,
            seed=int(row['seed']) if row['seed'] else None,
        )


def _float_cell(value: Optional[float]) -> str:
    return '' if value is None else repr(float(value))


def wilson_interval(successes: int, trials: int, level: float = 0.95) -> Tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise InputError("the Wilson interval needs at least one trial")
    if not 0 < level < 1:
        raise InputError(f"confidence level must lie in (0, 1), got {level}")
    z = NormalDist().inv_cdf(0.5 + level / 2)
    p = successes / trials
    z2 = z * z
    centre = (p + z2 / (2 * trials)) / (1 + z2 / trials)
    half = z * sqrt(p * (1 - p) / trials + z2 / (4 * trials * trials)) / (1 + z2 / trials)
    # the interval always contains p; rounding must not push p outside at 0 or 1
    return max(0.0, min(p, centre - half)), min(1.0, max(p, centre + half))


def write_csv(reports: Iterable[ExperimentReport], fh: TextIO):
    writer = csv.DictWriter(fh, fieldnames=CSV_HEADER, lineterminator='\n')
    writer.writeheader()
    for report in reports:
        writer.writerow(report.to_row())


def reports_to_csv(reports: Iterable[ExperimentReport]) -> str:
    buffer = io.StringIO()
    write_csv(reports, buffer)
    return buffer.getvalue()


def read_csv(fh: TextIO) -> List[ExperimentReport]:
    reader = csv.DictReader(fh)
    if reader.fieldnames != CSV_HEADER:
        raise InputError(f"unexpected CSV header {reader.fieldnames}")
    return [ExperimentReport.from_row(row) for row in reader]


def reports_to_json(reports: Iterable[ExperimentReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2)


def reports_from_json(text: str) -> List[ExperimentReport]:
    return [ExperimentReport.from_dict(d) for d in json.loads(text)]
