"""Coverage study of MCAP intervals on the toy model.

Replicate ``r`` (0-based) simulates its data from data stream ``r`` and
evaluates likelihoods with seeds ``[r*N*K, (r+1)*N*K)`` of the likelihood
streams, so replicates never share draws and can run in any order or
process. Results are collected in replicate order, which keeps the floating
point sums, and hence the report, identical for any worker count.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from ..core import mcap
from ..errors import NumericalError, ReplicateFailureRate, ValidationError
from ..normal import chi2_1_ppf
from .model import exact_interval, run_profile, simulate_data
from .rng import PURPOSE_DATA, PURPOSE_LIKELIHOOD

MIN_REPLICATIONS = 100
MAX_FAILURE_RATE = 0.02
STUDY_SPAN = 0.75
STUDY_NGRID = 1000


@dataclass(frozen=True)
class CoverageReport:
    replications: int
    mcap_coverage: float
    exact_coverage: float
    mean_width_ratio: float
    coverage_mc_se: dict
    failed_replicates: int

    def to_dict(self):
        return asdict(self)


def binomial_se(p, n):
    return math.sqrt(p * (1.0 - p) / n) if n > 0 else math.nan


def likelihood_seed_base(spec, replicate_index):
    return replicate_index * spec.seeds_per_replicate


def seed_intervals(spec, replications):
    """Half-open seed ranges ``(purpose, lo, hi)`` used by each replicate.

    Data streams and likelihood streams live under different purposes, so
    only ranges with the same purpose can collide.
    """
    out = []
    for r in range(replications):
        out.append((PURPOSE_DATA, r, r + 1))
        base = likelihood_seed_base(spec, r)
        out.append((PURPOSE_LIKELIHOOD, base, base + spec.seeds_per_replicate))
    return out


def run_replicate(spec, replicate_index, confidence=0.95):
    """One replicate: ``(mcap_covers, exact_covers, width_ratio)`` or None on failure."""
    y = simulate_data(spec, replicate_index)
    try:
        points = run_profile(spec, y, s=likelihood_seed_base(spec, replicate_index))
        result = mcap(points, confidence=confidence, span=STUDY_SPAN, ngrid=STUDY_NGRID)
    except NumericalError:
        return None
    lo, hi = exact_interval(y, 0.5 * chi2_1_ppf(confidence))
    mcap_covers = result.ci[0] <= spec.phi0 <= result.ci[1]
    exact_covers = lo < spec.phi0 < hi
    return mcap_covers, exact_covers, result.width / (hi - lo)


def _replicate_task(args):
    return run_replicate(*args)


def coverage_study(spec, replications, confidence=0.95, threads=1):
    """Estimate coverage of MCAP and exact-profile intervals over ``replications`` datasets.

    Coverage and the mean width ratio are computed over replicates that
    completed; failures are counted in ``failed_replicates``. If more than
    2% of replicates fail, :class:`ReplicateFailureRate` is raised with the
    report attached.
    """
    if int(replications) != replications or replications < MIN_REPLICATIONS:
        raise ValidationError(f"replications must be an integer >= {MIN_REPLICATIONS}, got {replications}")
    chi2_1_ppf(confidence)  # validates confidence before spawning work
    tasks = [(spec, r, confidence) for r in range(replications)]
    if threads is None or threads <= 1:
        outcomes = [_replicate_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(_replicate_task, tasks, chunksize=max(1, replications // (8 * threads))))

    done = [o for o in outcomes if o is not None]
    failed = replications - len(done)
    ok = len(done)
    mcap_cov = sum(1 for o in done if o[0]) / ok if ok else math.nan
    exact_cov = sum(1 for o in done if o[1]) / ok if ok else math.nan
    ratio = math.fsum(o[2] for o in done) / ok if ok else math.nan
    report = CoverageReport(
        replications=int(replications),
        mcap_coverage=mcap_cov,
        exact_coverage=exact_cov,
        mean_width_ratio=ratio,
        coverage_mc_se={"mcap": binomial_se(mcap_cov, ok), "exact": binomial_se(exact_cov, ok)},
        failed_replicates=failed,
    )
    if failed > MAX_FAILURE_RATE * replications:
        raise ReplicateFailureRate(report, f"{failed} of {replications} replicates failed")
    return report
