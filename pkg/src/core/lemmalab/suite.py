"""校验套件: exhaustive and randomised verification runs at desk scale.

Each suite returns a VerifyReport. A VerificationFailure raised by a single
instance is counted as a failure of that instance; the suite keeps going.
"""
from __future__ import annotations

import json
import logging
import random
import time
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Tuple

from pydantic import BaseModel, Field

from src.config import settings
from src.core.autgrp.search import automorphism_group, canonical_form
from src.core.census.bounds import BoundParams, bound_eval
from src.core.census.classify import classify
from src.core.census.runner import exact_census, unlabelled_census
from src.core.digraph.cayley import cayley
from src.core.digraph.connection_set import ConnectionSet
from src.core.digraph.digraph import is_automorphism
from src.core.errors import VerificationFailure
from src.core.groups.catalog import catalog, make_group
from src.core.groups.finite_group import FiniteGroup
from src.core.groups.structure import (
    automorphism_group_of,
    proper_normal_subgroups,
    quotient_group,
    regular_image,
    regular_representation,
    right_multiplication,
)
from src.core.lemmalab.fixed_subsets import few_fixed_points_bound, fixed_subsets_count, scan_fixed_subsets
from src.core.lemmalab.fixing import partition_fixing_check, phi_census, sigma
from src.core.lemmalab.invariant_digraphs import arc_orbit_count, count_invariant_digraphs, invariant_digraph_count
from src.core.perm.algorithms import core_in, same_group
from src.core.perm.group import PermGroup, group_from_generators
from src.core.perm.permutation import Permutation
from src.core.quotient.partition import BlockPartition
from src.core.quotient.quotients import (
    cell_action_kernel,
    conjugate_intersection,
    coset_partition,
    induced_cell_permutation,
    normal_quotient,
    odd_connection_set,
    odd_fibre_bound,
    odd_fibre_size,
    odd_quotient,
    parity_subset_counts,
    subgroup_fixing_partition,
)

logger = logging.getLogger(__name__)

_MAX_MESSAGES = 5


class VerifyReport(BaseModel):
    """校验报告"""
    name: str = Field(..., description="suite name")
    passed: bool = Field(..., description="no instance failed")
    instances: int = Field(..., description="instances checked")
    failures: int = Field(..., description="instances that failed")
    messages: List[str] = Field(default_factory=list, description="first failure messages")
    wall_time_s: Optional[float] = Field(default=None, exclude=True, description="wall time, logged only")


class _Tally:
    def __init__(self, name: str):
        self.name = name
        self.instances = 0
        self.failures = 0
        self.messages: List[str] = []
        self.started = time.perf_counter()

    def check(self, fn: Callable[[], None]) -> None:
        self.instances += 1
        try:
            fn()
        except VerificationFailure as e:
            self.failures += 1
            if len(self.messages) < _MAX_MESSAGES:
                self.messages.append(str(e))

    def report(self) -> VerifyReport:
        elapsed = time.perf_counter() - self.started
        report = VerifyReport(
            name=self.name,
            passed=self.failures == 0,
            instances=self.instances,
            failures=self.failures,
            messages=self.messages,
            wall_time_s=elapsed,
        )
        level = logging.INFO if report.passed else logging.ERROR
        logger.log(level, f"verify {self.name}: {self.instances} instances, {self.failures} failures in {elapsed:.2f}s")
        return report


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise VerificationFailure(message)


def _groups(max_order: int, min_order: int = 1) -> Iterator[FiniteGroup]:
    for spec in catalog(max_order):
        grp = make_group(spec)
        if grp.order >= min_order:
            yield grp


def _with_normal_subgroups(max_order: int) -> List[Tuple[FiniteGroup, Tuple[int, ...]]]:
    return [(grp, sub) for grp in _groups(max_order) for sub in proper_normal_subgroups(grp)]


# ----------------------------------------------------------------------
# suites
# ----------------------------------------------------------------------
def verify_fixed_subsets(max_order: int = 12) -> VerifyReport:
    """Every element of every regular image: scanned count = 2^{#cycles} <= bound."""
    tally = _Tally("fixed_subsets")
    for grp in _groups(max_order):
        for g in range(grp.order):
            p = right_multiplication(grp, g)

            def check(p: Permutation = p) -> None:
                exact, bound = fixed_subsets_count(p)
                scanned = scan_fixed_subsets(p)
                _expect(scanned == exact, f"{p}: scan found {scanned}, expected {exact}")
                if not p.is_identity():
                    _expect(exact <= few_fixed_points_bound(p), f"{p}: {exact} > 2^(3n/4)")

            tally.check(check)
    return tally.report()


def _transitive_groups(max_order: int, rng: random.Random) -> Iterator[PermGroup]:
    for grp in _groups(max_order, min_order=2):
        reg = regular_representation(grp)
        yield reg
        subsets = range(1 << grp.order) if grp.order <= 4 else [rng.getrandbits(grp.order) for _ in range(8)]
        for bits in subsets:
            yield automorphism_group(cayley(grp, ConnectionSet(grp.order, bits)), seed=reg)


def verify_invariant_digraphs(max_order: int = 6, seed: int = 0) -> VerifyReport:
    """2^κ invariant digraphs: brute force for degree <= 3, arc orbits otherwise."""
    tally = _Tally("invariant_digraphs")
    rng = random.Random(seed)
    for group in _transitive_groups(max_order, rng):

        def check(group: PermGroup = group) -> None:
            kappa, count = invariant_digraph_count(group)
            orbits = arc_orbit_count(group)
            _expect(orbits == kappa, f"degree {group.degree}, order {group.order}: {orbits} arc orbits, rank {kappa}")
            if group.degree <= 3:
                brute = count_invariant_digraphs(group)
                _expect(brute == count, f"degree {group.degree}, order {group.order}: {brute} invariant digraphs != {count}")

        tally.check(check)
    return tally.report()


def verify_partition_fixing(max_order: int = 8) -> VerifyReport:
    """Exhaustive over groups, proper normal subgroups and all connection sets."""
    tally = _Tally("partition_fixing")
    for grp, sub in _with_normal_subgroups(max_order):
        for bits in range(1 << grp.order):
            tally.check(lambda grp=grp, sub=sub, bits=bits: partition_fixing_check(grp, sub, ConnectionSet(grp.order, bits)))
    return tally.report()


def verify_sigma(instances: int = 1000, max_order: int = 12, seed: int = 0) -> VerifyReport:
    """Adjacency-computed common neighbourhoods against S_j ∩ S·u."""
    tally = _Tally("sigma")
    rng = random.Random(seed)
    cases = _with_normal_subgroups(max_order)
    for _ in range(instances):
        grp, sub = rng.choice(cases)
        partition = coset_partition(grp, sub)
        S = ConnectionSet(grp.order, rng.getrandbits(grp.order))
        u = rng.randrange(grp.order)
        j = rng.randrange(partition.cell_count)

        def check(grp=grp, S=S, u=u, j=j, partition=partition) -> None:
            common = sigma(grp, S, u, j, partition)
            if u == 0:
                expected = frozenset(v for v in partition.cells[j] if v in S)
                _expect(common == expected, f"sigma with u = 0 differs from S_j for S = {S.to_hex()}")

        tally.check(check)
    return tally.report()


def verify_phi(max_order: int = 10) -> VerifyReport:
    """|Φ_i| <= min(2^r, bound) for both variants; normaliser count <= plain count."""
    tally = _Tally("phi")
    for grp, sub in _with_normal_subgroups(max_order):
        cells = grp.order // len(sub)
        for i in range(1, cells):

            def check(grp=grp, sub=sub, i=i) -> None:
                plain, _ = phi_census(grp, sub, i, "plain")
                normaliser, _ = phi_census(grp, sub, i, "normaliser")
                _expect(normaliser <= plain, f"{grp.name} N={list(sub)} cell {i}: {normaliser} > {plain}")

            tally.check(check)
    return tally.report()


def verify_parity(max_bits: int = 16, max_order: int = 8) -> VerifyReport:
    """Even/odd subset counts, and odd-connection-set fibres of size 2^{r - r/n}."""
    tally = _Tally("parity")
    for m in range(1, max_bits + 1):
        tally.check(lambda m=m: _expect(parity_subset_counts(m) == (1 << (m - 1), 1 << (m - 1)), f"parity counts wrong for m = {m}"))
    for grp, sub in _with_normal_subgroups(max_order):
        r, n = grp.order, len(sub)
        for bits in range(1 << (r // n)):

            def check(grp=grp, sub=sub, bits=bits, r=r, n=n) -> None:
                size = odd_fibre_size(grp, sub, ConnectionSet(r // n, bits))
                _expect(size == 1 << (r - r // n), f"{grp.name} N={list(sub)}: fibre of {bits:#x} has size {size}")
                _expect(size <= odd_fibre_bound(r, n), f"{grp.name}: fibre size {size} above 2^(r - r/n + 1)")

            tally.check(check)
    return tally.report()


def _check_quotient_instance(grp: FiniteGroup, sub: Tuple[int, ...], S: ConnectionSet, kernel: bool) -> None:
    gamma = cayley(grp, S)
    partition = coset_partition(grp, sub)
    quotient_grp, _ = quotient_group(grp, sub)
    odd = odd_quotient(gamma, partition)
    _expect(odd == cayley(quotient_grp, odd_connection_set(grp, sub, S)), f"{grp.name} S={S.to_hex()}: odd quotient mismatch")

    aut = automorphism_group(gamma, seed=regular_representation(grp))
    for g in aut.generators:
        induced = induced_cell_permutation(g, partition)
        if induced is not None:
            _expect(is_automorphism(odd, induced), f"{grp.name} S={S.to_hex()}: {g} does not induce a quotient automorphism")

    reg = regular_representation(grp)
    normal_quotient(gamma, reg, regular_image(grp, sub))  # raises on a failed stabiliser identity

    if kernel:
        core = core_in(aut, reg)
        blocks = BlockPartition.from_orbits(core)
        product = group_from_generators(grp.order, list(aut.point_stabilizer(0).generators) + list(core.generators))
        if product.order > settings.fingerprint_element_cap:
            logger.debug(f"{grp.name} S={S.to_hex()}: |G_0 G_R| = {product.order}, kernel identity skipped")
            return
        kernel_group = subgroup_fixing_partition(gamma, blocks, seed=core)
        if aut.order <= settings.fingerprint_element_cap:
            _expect(same_group(kernel_group, cell_action_kernel(aut, blocks)), f"{grp.name} S={S.to_hex()}: kernel computations disagree")
        _expect(
            same_group(kernel_group, conjugate_intersection(aut, product)),
            f"{grp.name} S={S.to_hex()}: kernel on core orbits differs from the core of G_0 G_R",
        )


def verify_quotients(instances: int = 200, max_order: int = 16, kernel_max_order: int = 10, seed: int = 0) -> VerifyReport:
    tally = _Tally("quotients")
    rng = random.Random(seed)
    cases = _with_normal_subgroups(max_order)
    for _ in range(instances):
        grp, sub = rng.choice(cases)
        S = ConnectionSet(grp.order, rng.getrandbits(grp.order))
        tally.check(lambda grp=grp, sub=sub, S=S: _check_quotient_instance(grp, sub, S, grp.order <= kernel_max_order))
    return tally.report()


def verify_unlabelled(max_order: int = 10, relabelings: int = 3, seed: int = 0) -> VerifyReport:
    """Unlabelled cross-checks, and canonical forms stable under random relabelling."""
    tally = _Tally("unlabelled")
    rng = random.Random(seed)
    for grp in _groups(max_order):
        tally.check(lambda grp=grp: unlabelled_census(grp))

        def relabel_check(grp=grp) -> None:
            gamma = cayley(grp, ConnectionSet(grp.order, rng.getrandbits(grp.order)))
            code = canonical_form(gamma)
            for _ in range(relabelings):
                images = list(range(grp.order))
                rng.shuffle(images)
                other = canonical_form(gamma.relabel(Permutation.from_images(images)))
                _expect(other == code, f"{grp.name}: canonical form changed under relabelling")

        tally.check(relabel_check)
    return tally.report()


def verify_orbit_constancy(max_order: int = 8) -> VerifyReport:
    """Classification is constant on Aut(R)-orbits of connection sets."""
    tally = _Tally("orbit_constancy")
    for grp in _groups(max_order):
        reg = regular_representation(grp)
        auts = automorphism_group_of(grp).generators
        for bits in range(1 << grp.order):
            S = ConnectionSet(grp.order, bits)

            def check(grp=grp, S=S, reg=reg) -> None:
                base = classify(grp, S, reg)
                for phi in auts:
                    other = classify(grp, S.image(phi), reg)
                    _expect(
                        (other.aut_order, other.classification) == (base.aut_order, base.classification),
                        f"{grp.name}: S={S.to_hex()} and its image {S.image(phi).to_hex()} classify differently",
                    )

            tally.check(check)
    return tally.report()


def verify_census(max_order: int = 10) -> VerifyReport:
    """Orbit reduction leaves the tallies unchanged; pinned small values."""
    tally = _Tally("census")
    for grp in _groups(max_order):

        def check(grp=grp) -> None:
            plain = exact_census(grp)
            reduced = exact_census(grp, reduce_by_aut=True)
            _expect(plain.counts == reduced.counts, f"{grp.name}: reduction changed the tallies")

        tally.check(check)
    tally.check(lambda: _expect(exact_census(make_group("klein4")).counts["DRR"] == 0, "klein4 has a DRR"))
    tally.check(lambda: _expect(exact_census(make_group("cyclic:3")).counts["DRR"] == 4, "cyclic:3 DRR count is not 4"))
    return tally.report()


TREND_FIXTURE = "cyclic_drr_trend.json"


def verify_drr_trend(
    orders: Iterable[int] = range(5, 15),
    fixture: Optional[Path] = None,
    cross_check_max_order: int = 10,
) -> VerifyReport:
    """Exact DRR proportions of the cyclic groups, compared with the pinned
    fixture; the proportion at the last order must exceed the first.

    Orders missing from the fixture are pinned once every check passed, after
    an unreduced census agrees with the reduced one (up to cross_check_max_order).
    """
    tally = _Tally("drr_trend")
    orders = list(orders)
    path = settings.fixtures_dir / TREND_FIXTURE if fixture is None else fixture
    pinned: Dict[str, str] = json.loads(path.read_text(encoding="utf-8")) if path.exists() else {}
    observed: Dict[str, str] = {}

    for r in orders:

        def check(r: int = r) -> None:
            grp = make_group(f"cyclic:{r}")
            summary = exact_census(grp, reduce_by_aut=True)
            key = str(r)
            if key in pinned:
                _expect(summary.drr_proportion == pinned[key], f"cyclic:{r}: DRR proportion {summary.drr_proportion}, pinned {pinned[key]}")
            elif r <= cross_check_max_order:
                _expect(exact_census(grp).counts == summary.counts, f"cyclic:{r}: reduction changed the tallies")
            observed[key] = summary.drr_proportion

        tally.check(check)

    first, last = str(orders[0]), str(orders[-1])
    if len(orders) > 1 and first in observed and last in observed:
        tally.check(lambda: _expect(
            Fraction(observed[last]) > Fraction(observed[first]),
            f"DRR proportion {observed[last]} at r = {last} does not exceed {observed[first]} at r = {first}",
        ))

    fresh = {k: v for k, v in observed.items() if k not in pinned}
    if fresh and tally.failures == 0:
        merged = dict(sorted({**pinned, **fresh}.items(), key=lambda kv: int(kv[0])))
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(merged, indent=2) + "\n", encoding="utf-8")
        logger.info(f"Pinned DRR proportions for r = {', '.join(fresh)} in {path}")
    return tally.report()


def verify_bounds() -> VerifyReport:
    """Hand-derived spot values, relative tolerance 1e-9."""
    tally = _Tally("bounds")
    spots = [
        ("normaliser_fixed_orbit", BoundParams(r=16, n=4), 21.0),
        ("non_drr", BoundParams(r=1024, b=0), 1026.0),
        ("small_stabiliser", BoundParams(r=1024, epsilon=0.001), 768 + 1024 ** 0.999),
    ]
    for kind, params, expected in spots:

        def check(kind=kind, params=params, expected=expected) -> None:
            value = bound_eval(kind, params)
            _expect(abs(value - expected) <= 1e-9 * abs(expected), f"{kind}: {value} != {expected}")

        tally.check(check)
    return tally.report()


SUITES: Dict[str, Callable[[], VerifyReport]] = {
    "fixed_subsets": verify_fixed_subsets,
    "invariant_digraphs": verify_invariant_digraphs,
    "partition_fixing": verify_partition_fixing,
    "sigma": verify_sigma,
    "phi": verify_phi,
    "parity": verify_parity,
    "quotients": verify_quotients,
    "unlabelled": verify_unlabelled,
    "orbit_constancy": verify_orbit_constancy,
    "census": verify_census,
    "drr_trend": verify_drr_trend,
    "bounds": verify_bounds,
}


def run_suites(name: str = "all") -> List[VerifyReport]:
    """Run one suite by name, or every suite in registration order."""
    if name == "all":
        return [fn() for fn in SUITES.values()]
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}, expected one of {', '.join(SUITES)} or 'all'")
    return [SUITES[name]()]
