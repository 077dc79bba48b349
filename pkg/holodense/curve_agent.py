"""Curve Agent: point-count tables and place listings for one elliptic curve"""
import csv
import io
from typing import Dict, List, Optional

from .curve_places import (CurveDesc, count_points_bruteforce, enumerate_affine_places, hasse_holds,
                           place_counts, traces_and_counts)
from .errors import InconsistentCounts

COUNT_HEADER = ['d', 'N_d', 'a_d', 'B_d', 'brute_force']
PLACE_HEADER = ['degree', 'x_rep', 'y_rep']


class CurveAgent:
    def __init__(self, config):
        self.config = config
        self.point_guard = config['guards']['point_scan']
        self.workers = config['experiment']['workers']

    def count_table(self, E: CurveDesc, dmax: int, verify: bool = True,
                    workers: Optional[int] = None, log_capture=None) -> List[Dict]:
        """N_d from the trace recursion, a_d = q^d + 1 - N_d, affine place counts B_d.

        With verify, every N_d whose field fits under the point-scan guard is recounted by brute force.
        """
        workers = workers or self.workers
        q = E.q
        counts = traces_and_counts(E, dmax, guard=self.point_guard)
        places = place_counts(E, dmax, counts)
        rows = []
        for d, (n_d, b_d) in enumerate(zip(counts, places), start=1):
            a_d = q ** d + 1 - n_d
            if not hasse_holds(q, d, a_d):
                raise InconsistentCounts(f"a_{d} = {a_d} violates the Hasse bound for q = {q}")
            brute = None
            if verify and q ** d <= self.point_guard:
                brute = count_points_bruteforce(E, d, self.point_guard, workers)
                if brute != n_d:
                    raise InconsistentCounts(f"N_{d}: recursion gives {n_d}, brute force {brute}")
            rows.append({'d': d, 'N_d': n_d, 'a_d': a_d, 'B_d': b_d, 'brute_force': brute})
            if log_capture:
                checked = "" if brute is None else " (brute force ✓)"
                log_capture.add(f"d={d}: N={n_d} a={a_d} B={b_d}{checked}", "INFO")
        return rows

    def place_rows(self, E: CurveDesc, dmax: int) -> List[Dict]:
        rows = []
        for P in enumerate_affine_places(E, dmax, self.point_guard):
            point = P.representative
            rows.append({
                'degree': P.degree,
                'x_rep': point.field.format_rep(point.x.rep),
                'y_rep': point.field.format_rep(point.y.rep),
            })
        return rows


def rows_to_csv(rows: List[Dict], header: List[str]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=header, lineterminator='\n')
    writer.writeheader()
    for row in rows:
        writer.writerow({k: '' if row[k] is None else row[k] for k in header})
    return buffer.getvalue()
