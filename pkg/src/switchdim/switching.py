"""Admissible switching sets and the minimum-dimensionality driver.

A switching set can lower the dimensionality of a representation only when
its characteristic vector lies in the right idempotent subspace.  This
module classifies those sets (by structural rules for the Johnson/Hamming
families, by exhaustive exact search for small graphs), evaluates single
switches by two independent routes (direct congruence elimination and the
spectral shortcut), and drives the search that reproduces the reference
minimum-dimensionality tables.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Sequence

import numpy as np

from .exact import Matrix, Signature, centroid_weights, gower_center, inertia
from .graphs import Graph, SrgParams, hamming, johnson, seidel_switch, srg_params
from .spectral import (
    SUBSPACE_E0E1,
    SUBSPACE_E0E2,
    Dissimilarity,
    NoFastPathError,
    SpectralReport,
    SrgIdempotents,
    annihilating_pairs,
    dissimilarity_matrix,
    in_subspace,
    spectral_signature,
    srg_idempotents,
    srg_spectrum,
    switched_eigenvalues,
)

BRUTE_FORCE_LIMIT = 24


class UnsupportedClassificationError(ValueError):
    """No structural description of the admissible family is known here."""


@dataclass(frozen=True)
class AdmissibleFamily:
    """All non-empty subsets (up to complement, |U| <= n/2) in one subspace."""

    family: str | None
    m: int | None
    subspace: str
    sets: tuple[frozenset[int], ...]
    names: tuple[str, ...]
    provenance: str

    def __post_init__(self):
        if len(self.sets) != len(set(self.sets)) or len(self.names) != len(self.sets):
            raise ValueError("sets must be distinct and named one-to-one")


def _canonical(sets_and_names: Iterable[tuple[frozenset[int], str]]):
    ordered = sorted(sets_and_names, key=lambda sn: (len(sn[0]), sorted(sn[0])))
    return tuple(s for s, _ in ordered), tuple(n for _, n in ordered)


def brute_force_admissible(g: Graph, idem: SrgIdempotents, subspace: str) -> AdmissibleFamily:
    """Exhaustive exact search over all subsets with |U| <= n/2.

    The complementary projector is scaled to an integer matrix, so the test
    "projector annihilates the characteristic vector" is a pure integer
    computation and therefore exact even though it runs vectorized.
    """
    n = g.n
    if n > BRUTE_FORCE_LIMIT:
        raise ValueError(
            f"brute force classification is limited to {BRUTE_FORCE_LIMIT} vertices "
            f"(got {n}); use structural_admissible for the graph families"
        )
    proj = {SUBSPACE_E0E1: idem.e2, SUBSPACE_E0E2: idem.e1}[subspace]
    den = math.lcm(*(proj[i, j].denominator for i in range(n) for j in range(n)))
    w = np.array([[int(proj[i, j] * den) for j in range(n)] for i in range(n)], dtype=np.int64)

    found: list[tuple[frozenset[int], str]] = []
    shifts = np.arange(n, dtype=np.int64)
    chunk = 1 << 15
    for start in range(1, 1 << n, chunk):
        masks = np.arange(start, min(start + chunk, 1 << n), dtype=np.int64)
        bits = (masks[:, None] >> shifts) & 1
        keep = 2 * bits.sum(axis=1) <= n
        bits, masks = bits[keep], masks[keep]
        if not len(masks):
            continue
        hits = masks[~(bits @ w.T).any(axis=1)]
        for mask in hits.tolist():
            subset = frozenset(i for i in range(n) if mask >> i & 1)
            found.append((subset, "verts:" + ",".join(map(str, sorted(subset)))))
    sets, names = _canonical(found)
    return AdmissibleFamily(
        family=None, m=None, subspace=subspace, sets=sets, names=names, provenance="brute-force"
    )


def structural_admissible(family: str, m: int, subspace: str) -> AdmissibleFamily:
    """The classified admissible families for the Johnson and Hamming graphs.

    Johnson, E0+E1: the point cliques {S : i in S} (size m-1); for m = 4
    their complements are the other point cliques and also fit under the
    |U| <= n/2 cap.  Johnson, E0+E2: the three label matchings for m = 4 and
    the twelve pentagon-inducing 5-sets for m = 5.  Hamming, E0+E1: unions
    of up to floor(m/2) row cliques, and the same for columns.  Hamming,
    E0+E2: the six diagonal cocliques for m = 3.
    """
    if family == "johnson":
        if m < 4:
            raise UnsupportedClassificationError("johnson classification needs m >= 4")
        g = johnson(m)
        if subspace == SUBSPACE_E0E1:
            out = []
            for i in range(1, m + 1):
                clique = frozenset(v for v, lab in enumerate(g.labels) if i in lab)
                out.append((clique, f"clique:{i - 1}"))
                if m == 4:
                    comp = frozenset(range(g.n)) - clique
                    out.append((comp, f"clique:{i - 1}|complement"))
            sets, names = _canonical(out)
            return AdmissibleFamily(family, m, subspace, sets, names, "delsarte-cliques")
        if subspace == SUBSPACE_E0E2 and m == 4:
            matchings = []
            for v, lab in enumerate(g.labels):
                partner = next(
                    w for w, lab2 in enumerate(g.labels) if not set(lab) & set(lab2)
                )
                if v < partner:
                    matchings.append(
                        (frozenset({v, partner}), f"verts:{v},{partner}")
                    )
            sets, names = _canonical(matchings)
            return AdmissibleFamily(family, m, subspace, sets, names, "label-matchings")
        if subspace == SUBSPACE_E0E2 and m == 5:
            out = []
            for combo in combinations(range(g.n), 5):
                if _induces_cycle(g, combo):
                    subset = frozenset(combo)
                    out.append((subset, "verts:" + ",".join(map(str, sorted(subset)))))
            sets, names = _canonical(out)
            return AdmissibleFamily(family, m, subspace, sets, names, "pentagon-sets")
        raise UnsupportedClassificationError(
            f"no structural classification for johnson m={m}, subspace {subspace}"
        )
    if family == "hamming":
        if m < 2:
            raise UnsupportedClassificationError("hamming classification needs m >= 2")
        g = hamming(m)
        if subspace == SUBSPACE_E0E1:
            out = []
            for size in range(1, m // 2 + 1):
                for index_set in combinations(range(1, m + 1), size):
                    rows = frozenset(v for v, (x, _) in enumerate(g.labels) if x in index_set)
                    cols = frozenset(v for v, (_, y) in enumerate(g.labels) if y in index_set)
                    key = ",".join(map(str, index_set))
                    out.append((rows, f"rows:{key}"))
                    out.append((cols, f"cols:{key}"))
            sets, names = _canonical(out)
            return AdmissibleFamily(family, m, subspace, sets, names, "row-col-unions")
        if subspace == SUBSPACE_E0E2 and m == 3:
            out = []
            for perm in permutations(range(1, 4)):
                subset = frozenset(
                    v for v, (x, y) in enumerate(g.labels) if perm[x - 1] == y
                )
                out.append((subset, "verts:" + ",".join(map(str, sorted(subset)))))
            sets, names = _canonical(out)
            return AdmissibleFamily(family, m, subspace, sets, names, "diagonal-cocliques")
        raise UnsupportedClassificationError(
            f"no structural classification for hamming m={m}, subspace {subspace}"
        )
    raise UnsupportedClassificationError(f"unknown family {family!r}")


def _induces_cycle(g: Graph, vertices: Sequence[int]) -> bool:
    inside = set(vertices)
    degs = [len(inside.intersection(g.neighbours(v))) for v in vertices]
    if any(d != 2 for d in degs):
        return False
    seen = {vertices[0]}
    stack = [vertices[0]]
    while stack:
        x = stack.pop()
        for y in g.neighbours(x):
            if y in inside and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(vertices)


@dataclass(frozen=True)
class SwitchReport:
    """Outcome of one switching evaluation: exact signature by both routes."""

    subset: frozenset[int]
    a: Fraction
    b: Fraction
    signature: Signature
    dimensionality: int
    spectral: SpectralReport | None
    degenerate: bool

    @property
    def realizable(self) -> bool:
        return not self.degenerate


def switch_dimensionality(
    g: Graph,
    subset: Iterable[int],
    a,
    b,
    *,
    params: SrgParams | None = None,
    idem: SrgIdempotents | None = None,
    spectrum=None,
) -> SwitchReport:
    """Signature of the centered switched dissimilarity, by two routes.

    The direct route always runs: switch, build the dissimilarity, center,
    take the exact inertia.  The spectral route runs whenever an exact
    shortcut exists (idempotents for strongly regular graphs, or an
    equitable partition with a known spectrum) and must agree exactly.
    """
    u_set = frozenset(subset)
    a, b = Fraction(a), Fraction(b)
    switched = seidel_switch(g, u_set)
    d_prime = dissimilarity_matrix(Dissimilarity(switched, a, b))
    centered = gower_center(d_prime, centroid_weights(g.n))
    signature = inertia(centered)

    if idem is None and spectrum is None:
        try:
            params = params or srg_params(g)
        except ValueError:
            params = None
        if params is not None:
            idem = srg_idempotents(g, params)
    report = None
    try:
        report = spectral_signature(
            Dissimilarity(g, a, b), u_set, idem=idem, spectrum=spectrum
        )
    except NoFastPathError:
        report = None
    if report is not None and report.signature_f != signature:
        raise RuntimeError(
            f"spectral route {report.signature_f} disagrees with direct inertia "
            f"{signature} for subset {sorted(u_set)}, (a,b)=({a},{b})"
        )
    return SwitchReport(
        subset=u_set,
        a=a,
        b=b,
        signature=signature,
        dimensionality=signature.dimensionality,
        spectral=report,
        degenerate=d_prime.is_zero(),
    )


@dataclass(frozen=True)
class Witness:
    signature: tuple[int, int]
    subset_spec: str
    vertices: tuple[int, ...]
    a: Fraction
    b: Fraction


@dataclass(frozen=True)
class TableRow:
    family: str
    m: int
    order: int
    min_dimension: int
    signatures: tuple[tuple[int, int], ...]
    witnesses: tuple[Witness, ...]
    pruned_routes: tuple[str, ...] = ()


@dataclass(frozen=True)
class HammingSplit:
    """Exact side information for the row/column-union size threshold.

    The threshold (m/2)(1 - sqrt((m-4)/(m-2))) is irrational; integer
    comparisons against it reduce to the sign of 2s(s-m)(m-2) + m^2, which
    is positive below the threshold and negative above it for 0 <= s <= m/2.
    """

    m: int
    radicand: Fraction
    interval: tuple[Fraction, Fraction]

    def position(self, s: int) -> int:
        """-1 when s is below the threshold, +1 when above; never equal."""
        if not 0 <= 2 * s <= self.m:
            raise ValueError(f"s={s} outside the valid range 0..{self.m // 2}")
        value = 2 * s * (s - self.m) * (self.m - 2) + self.m * self.m
        if value == 0:
            raise ArithmeticError("clique-union size hit the threshold exactly")
        return -1 if value > 0 else 1


def hamming_threshold(m: int) -> HammingSplit:
    if m < 5:
        raise ValueError("the size threshold only exists for m >= 5")
    radicand = Fraction(m - 4, m - 2)
    lo, hi = Fraction(0), Fraction(m, 2)
    # x < threshold  <=>  (1 - 2x/m)^2 > radicand, valid on [0, m/2)
    while hi - lo >= Fraction(1, 4):
        mid = (lo + hi) / 2
        if mid < Fraction(m, 2) and (1 - 2 * mid / m) ** 2 > radicand:
            lo = mid
        else:
            hi = mid
    return HammingSplit(m=m, radicand=radicand, interval=(lo, hi))


def golden_johnson_row(m: int) -> tuple[int, frozenset[tuple[int, int]]]:
    """Reference minimum dimensionality for the Johnson switching class."""
    if m < 4:
        raise ValueError("reference rows start at m = 4")
    if m == 4:
        return 2, frozenset({(2, 0), (1, 1)})
    if m <= 9:
        return m - 1, frozenset({(m - 1, 0)})
    if m == 10:
        return 8, frozenset({(8, 0)})
    return m - 1, frozenset({(m - 1, 0), (m - 2, 1)})


def golden_hamming_row(m: int) -> tuple[int, frozenset[tuple[int, int]]]:
    """Reference minimum dimensionality for the Hamming switching class."""
    if m < 2:
        raise ValueError("reference rows start at m = 2")
    if m == 2:
        return 1, frozenset({(1, 0)})
    if m == 3:
        return 4, frozenset({(4, 0)})
    if m == 4:
        return 5, frozenset({(5, 0)})
    return 2 * m - 2, frozenset({(2 * m - 2, 0), (2 * m - 3, 1)})


def golden_row(family: str, m: int):
    return golden_johnson_row(m) if family == "johnson" else golden_hamming_row(m)


def build_family_graph(family: str, m: int) -> Graph:
    if family == "johnson":
        if m < 4:
            raise ValueError("minimum dimensionality driver supports johnson m >= 4")
        return johnson(m)
    if family == "hamming":
        return hamming(m)
    raise ValueError(f"unknown family {family!r}")


def minimum_dimensionality(family: str, m: int) -> TableRow:
    """Minimum p+q over the switching class, with all extremal signatures.

    Searches the distance pairs that annihilate one idempotent coefficient
    and, for each, the classified admissible switching sets plus the empty
    set.  Routes without a classification cannot beat the classified ones:
    the signature (p, q) of the uncentered matrix does not depend on the
    switching set, and centering changes each count by at most one, so that
    route's dimensionality is at least p+q-2; this exact bound is checked
    before the route is pruned.  The 4-vertex Hamming class is small enough
    to enumerate outright.  Degenerate switches (identically zero
    dissimilarity, a single-point configuration) are excluded.
    """
    g = build_family_graph(family, m)
    params = srg_params(g)
    if params is None:
        raise RuntimeError("family graphs are strongly regular by construction")
    idem = srg_idempotents(g, params)
    split = hamming_threshold(m) if family == "hamming" and m >= 5 else None

    candidates: list[tuple[SwitchReport, str]] = []
    pruned: list[str] = []
    deferred: list[tuple[str, Fraction, Fraction, int]] = []

    for tag, a, b in annihilating_pairs(params):
        if family == "hamming" and m == 2:
            subsets = _all_halved_subsets(g.n)
        else:
            try:
                fam = structural_admissible(family, m, tag)
                subsets = [("empty", frozenset())] + list(zip(fam.names, fam.sets))
            except UnsupportedClassificationError:
                mus = switched_eigenvalues(Dissimilarity(g, a, b), srg_spectrum(params))
                rank = sum(mult for mu, mult in mus if mu != 0)
                deferred.append((tag, a, b, rank - 2))
                continue
        for spec, subset in subsets:
            report = switch_dimensionality(g, subset, a, b, params=params, idem=idem)
            if report.degenerate:
                continue
            if split is not None and tag == SUBSPACE_E0E1 and len(subset) % m == 0:
                _check_threshold_branch(split, m, len(subset) // m, report)
            candidates.append((report, spec))

    min_dim = min(rep.dimensionality for rep, _ in candidates)
    for tag, a, b, lower_bound in deferred:
        if lower_bound <= min_dim:
            raise RuntimeError(
                f"cannot prune unclassified route {tag} with (a,b)=({a},{b}): "
                f"lower bound {lower_bound} does not exceed {min_dim}"
            )
        pruned.append(
            f"{tag} route (a,b)=({a},{b}) pruned: dimensionality >= {lower_bound} > {min_dim}"
        )

    sig_to_witness: dict[tuple[int, int], Witness] = {}
    for report, spec in candidates:
        if report.dimensionality != min_dim:
            continue
        pair = report.signature.pair
        if pair not in sig_to_witness:
            sig_to_witness[pair] = Witness(
                signature=pair,
                subset_spec=spec,
                vertices=tuple(sorted(report.subset)),
                a=report.a,
                b=report.b,
            )
    signatures = tuple(sorted(sig_to_witness))
    return TableRow(
        family=family,
        m=m,
        order=g.n,
        min_dimension=min_dim,
        signatures=signatures,
        witnesses=tuple(sig_to_witness[s] for s in signatures),
        pruned_routes=tuple(pruned),
    )


def _check_threshold_branch(split: HammingSplit, m: int, s: int, report: SwitchReport) -> None:
    expected = (2 * m - 2, 0) if split.position(s) < 0 else (2 * m - 3, 1)
    if report.signature.pair != expected:
        raise RuntimeError(
            f"threshold branch mismatch at s={s}: expected {expected}, "
            f"computed {report.signature.pair}"
        )


def _all_halved_subsets(n: int):
    out = [("empty", frozenset())]
    for size in range(1, n // 2 + 1):
        for combo in combinations(range(n), size):
            out.append(("verts:" + ",".join(map(str, combo)), frozenset(combo)))
    return out


def matches_golden(row: TableRow) -> bool:
    dim, sigs = golden_row(row.family, row.m)
    return row.min_dimension == dim and frozenset(row.signatures) == sigs


def sample_non_admissible(
    g: Graph, idem: SrgIdempotents, subspace: str, count: int, seed: int
) -> list[frozenset[int]]:
    """Seeded sample of non-empty subsets outside the admissible subspace."""
    rng = random.Random(seed)
    out: list[frozenset[int]] = []
    while len(out) < count:
        size = rng.randint(1, max(1, g.n // 2))
        subset = frozenset(rng.sample(range(g.n), size))
        if not in_subspace(idem, subset, subspace):
            out.append(subset)
    return out
