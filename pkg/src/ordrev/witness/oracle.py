"""Bounded exhaustive search for witness plans.

Enumerates MergeShift and SparseChain plans within coefficient bounds and
returns the first one the verifier accepts. It never consults the closed-form
criterion, so a hit is independent evidence of non-reversibility.
"""
from __future__ import annotations

import logging
from collections.abc import Iterator
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from functools import lru_cache
from math import gcd

from ordrev.core.natrev import NatMultiset, NatProgression, SemigroupCertificate
from ordrev.witness.models import MergeShift, SparseChain, WitnessPlan
from ordrev.witness.verifier import verify_witness

logger = logging.getLogger(__name__)


@lru_cache(maxsize=4096)
def brute_force_certificate(
    target: int, gens: tuple[int, ...], max_coeff: int
) -> SemigroupCertificate | None:
    """First coefficient vector (each <= max_coeff, lexicographic) summing to target, or None."""
    ordered = sorted(set(gens))

    def search(i: int, remaining: int, chosen: tuple[int, ...]) -> tuple[int, ...] | None:
        if i == len(ordered):
            return chosen if remaining == 0 and any(chosen) else None
        g = ordered[i]
        for c in range(min(max_coeff, remaining // g) + 1):
            found = search(i + 1, remaining - c * g, chosen + (c,))
            if found is not None:
                return found
        return None

    if target < 1 or not ordered:
        return None
    coefficients = search(0, target, ())
    if coefficients is None:
        return None
    return SemigroupCertificate.from_mapping(target, dict(zip(ordered, coefficients)))


def _merge_shift_candidates(
    m: NatMultiset, max_target: int, max_coeff: int
) -> Iterator[WitnessPlan]:
    k = m.k
    for t in k:
        if t > max_target:
            continue
        cert = brute_force_certificate(t, tuple(v for v in k if v != t), max_coeff)
        if cert is not None:
            yield MergeShift(t, cert)


def _sparse_chain_candidates(
    m: NatMultiset, prog: NatProgression, k0: int, max_coeff: int
) -> Iterator[WitnessPlan]:
    k = m.k
    init = brute_force_certificate(prog.member(k0), k, max_coeff)
    if init is None:
        return
    for stride in range(1, max_coeff + 1):
        step = brute_force_certificate(prog.d * stride, k, max_coeff)
        if step is None:
            continue
        yield SparseChain(
            g=gcd(*k),
            source=prog,
            k0=k0,
            stride=stride,
            init_cert=init,
            step_cert=step,
            donor_doubling=frozenset(v for v, c in step.coefficients if c >= 1),
        )


def _jobs(m: NatMultiset, max_target: int, max_coeff: int) -> list[tuple]:
    jobs: list[tuple] = [("merge", max_target, max_coeff)]
    if m.k:
        for prog in m.progressions:
            for k0 in range(max_coeff + 1):
                jobs.append(("sparse", prog, k0, max_coeff))
    return jobs


def _run_job(m: NatMultiset, job: tuple, depth: int) -> WitnessPlan | None:
    if job[0] == "merge":
        candidates = _merge_shift_candidates(m, job[1], job[2])
    else:
        candidates = _sparse_chain_candidates(m, job[1], job[2], job[3])
    for plan in candidates:
        if verify_witness(m, plan, depth=depth):
            return plan
    return None


def bounded_oracle_search(
    m: NatMultiset,
    max_target: int,
    max_coeff: int,
    *,
    workers: int = 1,
    depth: int = 64,
) -> WitnessPlan | None:
    """
    Search for a verified plan with target <= max_target and coefficients,
    k0 and stride <= max_coeff.

    With workers > 1 the jobs run in a process pool and whichever valid plan
    arrives first is returned.
    """
    if max_target < 1 or max_coeff < 1:
        raise ValueError("oracle bounds must be positive")

    jobs = _jobs(m, max_target, max_coeff)
    logger.debug(f"Oracle over {m}: {len(jobs)} jobs, {workers} worker(s)")

    if workers <= 1:
        for job in jobs:
            plan = _run_job(m, job, depth)
            if plan is not None:
                return plan
        return None

    with ProcessPoolExecutor(max_workers=workers) as pool:
        pending = {pool.submit(_run_job, m, job, depth) for job in jobs}
        while pending:
            done, pending = wait(pending, return_when=FIRST_COMPLETED)
            for future in done:
                plan = future.result()
                if plan is not None:
                    for other in pending:
                        other.cancel()
                    return plan
    return None
