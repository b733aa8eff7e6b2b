"""Spectral analysis of dissimilarity matrices over switching classes.

For a connected regular graph with adjacency matrix A and a dissimilarity
D = a*A + b*(complement), the matrix 2D - (a+b)J differs from the signed
adjacency (a-b)(2A - J + I) by a multiple of the identity, and switching on
a subset U conjugates it by the diagonal sign matrix of U.  Eigenvalues are
therefore independent of U; only the main angles (projections of the
all-ones vector onto the transported eigenspaces) move.  This module
computes those eigenvalues and angles exactly and turns them into the exact
signature of the centered matrix, which is the minimum (p, q) of any
pseudo-Euclidean realization.

Strongly regular graphs get the full treatment through their primitive
idempotents; for other connected regular graphs with a known rational
spectrum, an equitable {U, V-U} partition is enough.  Everything else falls
back to direct congruence elimination in :mod:`switchdim.exact`.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import Matrix, Signature, dot
from .graphs import Graph, SrgParams, adjacency_matrix, equitable_quotient, mask_of

SUBSPACE_E0E1 = "e0e1"
SUBSPACE_E0E2 = "e0e2"

Spectrum = tuple[tuple[Fraction, int], ...]  # (eigenvalue, multiplicity), principal first


class NoFastPathError(RuntimeError):
    """No exact spectral shortcut applies; compute the centered matrix directly."""


@dataclass(frozen=True)
class Dissimilarity:
    """Distance assignment on a graph: scalar square a on edges, b on non-edges."""

    graph: Graph
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.a == self.b:
            raise ValueError("dissimilarity requires two distinct values a != b")


def dissimilarity_matrix(d: Dissimilarity) -> Matrix:
    g = d.graph
    return Matrix(
        [
            [0 if i == j else (d.a if g.has_edge(i, j) else d.b) for j in range(g.n)]
            for i in range(g.n)
        ]
    )


def s_matrix(d: Dissimilarity) -> Matrix:
    """(a-b)(2A - J + I): the dissimilarity minus its complement-swapped twin."""
    g = d.graph
    c = d.a - d.b
    return Matrix(
        [
            [0 if i == j else (c if g.has_edge(i, j) else -c) for j in range(g.n)]
            for i in range(g.n)
        ]
    )


@dataclass(frozen=True)
class SrgIdempotents:
    """Primitive idempotents E0, E1, E2 of a strongly regular graph, exact."""

    params: SrgParams
    e0: Matrix
    e1: Matrix
    e2: Matrix

    def projector(self, i: int) -> Matrix:
        return (self.e0, self.e1, self.e2)[i]


def srg_idempotents(g: Graph, params: SrgParams) -> SrgIdempotents:
    """E_i as the Lagrange polynomial of A at eigenvalue i, all entries rational."""
    a = adjacency_matrix(g)
    eye = Matrix.identity(g.n)
    lams = params.eigenvalues
    projs = []
    for i in range(3):
        num = eye
        den = Fraction(1)
        for j in range(3):
            if j == i:
                continue
            num = num @ (a - lams[j] * eye)
            den *= lams[i] - lams[j]
        projs.append(num * (1 / den))
    return SrgIdempotents(params=params, e0=projs[0], e1=projs[1], e2=projs[2])


def srg_spectrum(params: SrgParams) -> Spectrum:
    return tuple(zip(params.eigenvalues, params.multiplicities))


def idempotent_coefficients(d: Dissimilarity, params: SrgParams) -> tuple[Fraction, ...]:
    """Coefficients of D in the idempotent basis: D = sum_i coeff_i * E_i."""
    n = params.n
    out = []
    for i, lam in enumerate(params.eigenvalues):
        coeff = (d.a - d.b) * lam - d.b + (d.b * n if i == 0 else 0)
        out.append(coeff)
    return tuple(out)


def annihilating_pairs(params: SrgParams) -> tuple[tuple[str, Fraction, Fraction], ...]:
    """The distance pairs that kill one non-principal idempotent coefficient.

    Killing the E2 coefficient makes E0+E1 the relevant admissible subspace
    for switching sets, and vice versa.  Pairs are canonicalized to integer
    (a, b) with a > 0; both always exist for our families since no
    non-principal eigenvalue equals -1.
    """
    pairs = []
    for which, tag in ((2, SUBSPACE_E0E1), (1, SUBSPACE_E0E2)):
        lam = params.eigenvalues[which]
        if lam == -1:
            raise ValueError("eigenvalue -1 admits no annihilating pair with a != 0")
        a, b = lam + 1, lam
        if a < 0:
            a, b = -a, -b
        pairs.append((tag, Fraction(a), Fraction(b)))
    return tuple(pairs)


def switched_eigenvalues(d: Dissimilarity, spectrum: Spectrum) -> Spectrum:
    """Eigenvalues of 2D' - (a+b)J for the switched dissimilarity, any subset.

    One output line per input line: the principal eigenvalue k maps to
    (a-b)(2k-n+1) - (a+b), every other eigenvalue lam to
    (a-b)(2*lam+1) - (a+b).  Requires a connected regular graph.
    """
    g = d.graph
    _require_connected_regular(g)
    k, n = Fraction(g.degree(0)), g.n
    if spectrum[0][0] != k or spectrum[0][1] != 1:
        raise ValueError("spectrum must start with the principal line (k, 1)")
    if sum(m for _, m in spectrum) != n:
        raise ValueError("spectrum multiplicities must sum to the order")
    c, s = d.a - d.b, d.a + d.b
    out = [(c * (2 * k - n + 1) - s, 1)]
    for lam, mult in spectrum[1:]:
        out.append((c * (2 * lam + 1) - s, mult))
    return tuple(out)


def characteristic_vector(subset: Iterable[int], n: int) -> list[Fraction]:
    mask = mask_of(subset)
    if mask >> n:
        raise ValueError("subset contains a vertex outside the graph")
    return [Fraction(1) if mask >> i & 1 else Fraction(0) for i in range(n)]


def in_subspace(idem: SrgIdempotents, subset: Iterable[int], tag: str) -> bool:
    """Exact test whether the characteristic vector lies in E0+E1 or E0+E2.

    Membership in E0+E_i is equivalent to the complementary projector
    annihilating the characteristic vector.
    """
    proj = {SUBSPACE_E0E1: idem.e2, SUBSPACE_E0E2: idem.e1}[tag]
    u = characteristic_vector(subset, idem.params.n)
    return all(x == 0 for x in proj.matvec(u))


@dataclass(frozen=True)
class EigenLine:
    """One distinct eigenvalue of 2D' - (a+b)J with its switching-aware main data."""

    value: Fraction
    multiplicity: int
    is_main: bool
    main_angle_sq: Fraction  # beta^2; zero exactly when not main


@dataclass(frozen=True)
class SpectralReport:
    lines: tuple[EigenLine, ...]  # distinct values, descending
    signature_big: Signature  # signature of 2D' - (a+b)J, independent of U
    fast_path: str  # "membership" | "equitable" | "baseline"
    signature_f: Signature | None = None


def zero_eigenspace_in_ones_perp(lines: Sequence[EigenLine]) -> bool:
    """Whether the 0-eigenspace (empty if 0 is not an eigenvalue) avoids j."""
    return not any(line.value == 0 and line.is_main for line in lines)


def main_eigenvalue_analysis(
    d: Dissimilarity,
    subset: Iterable[int],
    *,
    idem: SrgIdempotents | None = None,
    spectrum: Spectrum | None = None,
) -> SpectralReport:
    """Main eigenvalues and exact main angles of 2D' - (a+b)J after switching.

    With idempotents (strongly regular case) the angles are computed for any
    subset from the quadratic forms (j-2u)^T E_i (j-2u); when only |U| and a
    single non-principal eigenvalue can be main, the closed forms
    n*beta_0^2 = (n-2|U|)^2/n and beta_other^2 = 1 - beta_0^2 are verified
    against them.  Without idempotents, a connected regular graph with a
    known rational spectrum and an equitable {U, V-U} partition is enough.
    Anything else raises :class:`NoFastPathError`.
    """
    g = d.graph
    _require_connected_regular(g)
    u_set = frozenset(subset)
    n = g.n
    if u_set and (min(u_set) < 0 or max(u_set) >= n):
        raise ValueError("subset contains a vertex outside the graph")

    if idem is not None:
        lines = _membership_lines(d, u_set, idem)
        path = "membership"
    elif len(u_set) in (0, n):
        if spectrum is None:
            raise NoFastPathError("baseline analysis needs an exact spectrum")
        lines = _baseline_lines(d, spectrum)
        path = "baseline"
    elif spectrum is not None:
        lines = _equitable_lines(d, u_set, spectrum)
        path = "equitable"
    else:
        raise NoFastPathError(
            "no exact spectral shortcut: need SRG idempotents, or a rational "
            "spectrum with an equitable {U, V-U} partition"
        )

    merged = _merge_lines(lines)
    total = sum(l.main_angle_sq for l in merged)
    if total != 1:
        raise RuntimeError(f"main angles must sum to 1 exactly, got {total}")
    sig = _signature_of_lines(merged)
    return SpectralReport(lines=merged, signature_big=sig, fast_path=path)


def _require_connected_regular(g: Graph) -> None:
    if not g.is_regular():
        raise ValueError("spectral analysis requires a regular graph")
    if not g.is_connected():
        raise ValueError("spectral analysis requires a connected graph")


def _baseline_lines(d: Dissimilarity, spectrum: Spectrum):
    # No switching (or switching on everything): only the principal line is main.
    mus = switched_eigenvalues(d, spectrum)
    return [
        (mu, mult, i == 0, Fraction(1) if i == 0 else Fraction(0))
        for i, (mu, mult) in enumerate(mus)
    ]


def _membership_lines(d: Dissimilarity, u_set: frozenset, idem: SrgIdempotents):
    params = idem.params
    n = params.n
    mus = switched_eigenvalues(d, srg_spectrum(params))
    j2u = [Fraction(1 - 2 * int(i in u_set)) for i in range(n)]
    lines = []
    n_betas = []
    for i, (mu, mult) in enumerate(mus):
        nb = dot(j2u, idem.projector(i).matvec(j2u))  # n * beta_i^2, exact
        n_betas.append(nb)
        lines.append((mu, mult, nb != 0, nb / n))
    _check_closed_forms(n, len(u_set), n_betas)
    return lines


def _check_closed_forms(n: int, usize: int, n_betas) -> None:
    # When at most one non-principal line is main, the angles depend only on |U|.
    mains = [i for i, nb in enumerate(n_betas) if nb]
    expected0 = Fraction((n - 2 * usize) ** 2, n)
    if len(mains) == 2 and 0 in mains:
        other = next(i for i in mains if i != 0)
        if n_betas[0] != expected0 or n_betas[other] != n - expected0:
            raise RuntimeError("two-main-angle closed forms disagree with projectors")
    elif mains and 0 not in mains and len(mains) == 1:
        if usize * 2 != n or n_betas[mains[0]] != n:
            raise RuntimeError("single-main-angle closed form disagrees with projectors")


def _equitable_lines(d: Dissimilarity, u_set: frozenset, spectrum: Spectrum):
    g = d.graph
    n = g.n
    eq = equitable_quotient(g, u_set)
    if eq is None:
        raise NoFastPathError("partition {U, V-U} is not equitable")
    k = g.degree(0)
    (b11, b12), (b21, b22) = eq.b
    lam_b = Fraction(b11 + b22 - k)  # trace minus the principal eigenvalue k
    if (b11 - k) * (b22 - k) - b12 * b21 != 0:
        raise RuntimeError("quotient matrix must have the degree as an eigenvalue")
    mus = switched_eigenvalues(d, spectrum)
    which = next((i for i, (lam, _) in enumerate(spectrum) if i > 0 and lam == lam_b), None)
    if which is None:
        raise ValueError(f"quotient eigenvalue {lam_b} is missing from the given spectrum")
    main0 = 2 * len(u_set) != n
    nb0 = Fraction((n - 2 * len(u_set)) ** 2, n) if main0 else Fraction(0)
    lines = []
    for i, (mu, mult) in enumerate(mus):
        if i == 0:
            lines.append((mu, mult, main0, nb0 / n))
        elif i == which:
            lines.append((mu, mult, True, (n - nb0) / n))
        else:
            lines.append((mu, mult, False, Fraction(0)))
    return lines


def _merge_lines(lines) -> tuple[EigenLine, ...]:
    by_value: dict[Fraction, list] = {}
    for mu, mult, main, beta_sq in lines:
        slot = by_value.setdefault(mu, [0, False, Fraction(0)])
        slot[0] += mult
        slot[1] = slot[1] or main
        slot[2] += beta_sq
    return tuple(
        EigenLine(value=v, multiplicity=m, is_main=mn, main_angle_sq=bs)
        for v, (m, mn, bs) in sorted(by_value.items(), key=lambda kv: kv[0], reverse=True)
    )


def _signature_of_lines(lines: Sequence[EigenLine]) -> Signature:
    pos = sum(l.multiplicity for l in lines if l.value > 0)
    neg = sum(l.multiplicity for l in lines if l.value < 0)
    zero = sum(l.multiplicity for l in lines if l.value == 0)
    return Signature(pos, neg, zero)


def signature_from_spectrum(
    lines: Sequence[EigenLine], zero_eigenspace_in_jperp: bool
) -> Signature:
    """Exact signature of the centered matrix from main eigenvalues and angles.

    Four cases on the signature (p, q) of the uncentered matrix: when the
    0-eigenspace meets the all-ones vector the centering changes nothing and
    the result is (q, p); otherwise the sign of sum(beta_i^2 / mu_i) over the
    main eigenvalues decides between (q-1, p-1), (q, p-1) and (q-1, p).
    """
    sig = _signature_of_lines(lines)
    p, q = sig.positive, sig.negative
    n = sig.order
    has_main_zero = any(l.value == 0 and l.is_main for l in lines)
    if zero_eigenspace_in_jperp:
        if has_main_zero:
            raise ValueError(
                "contradictory input: a main zero eigenvalue cannot have its "
                "eigenspace inside the orthogonal complement of the all-ones vector"
            )
        weighted = sum(
            (l.main_angle_sq / l.value for l in lines if l.is_main), Fraction(0)
        )
        if weighted == 0:
            result = Signature(q - 1, p - 1, n - p - q + 2)
        elif weighted > 0:
            result = Signature(q, p - 1, n - p - q + 1)
        else:
            result = Signature(q - 1, p, n - p - q + 1)
    else:
        if not has_main_zero:
            raise ValueError(
                "contradictory input: the 0-eigenspace can only meet the all-ones "
                "vector if 0 is a main eigenvalue"
            )
        result = Signature(q, p, n - p - q)
    if result.positive < 0 or result.negative < 0:
        raise RuntimeError("impossible main-eigenvalue configuration")
    return result


def spectral_signature(
    d: Dissimilarity,
    subset: Iterable[int],
    *,
    idem: SrgIdempotents | None = None,
    spectrum: Spectrum | None = None,
) -> SpectralReport:
    """Main-eigenvalue analysis with the centered signature filled in."""
    rep = main_eigenvalue_analysis(d, subset, idem=idem, spectrum=spectrum)
    sig = signature_from_spectrum(rep.lines, zero_eigenspace_in_ones_perp(rep.lines))
    return replace(rep, signature_f=sig)


def srg_dimensionality(d: Dissimilarity, idem: SrgIdempotents) -> tuple[Signature, int]:
    """Signature and dimensionality of the unswitched representation.

    Centering with uniform weights kills the E0 component, so the centered
    matrix is -(a1*E1 + a2*E2) and the dimensionality is the total rank of
    the idempotents with non-zero coefficient.
    """
    params = idem.params
    coeffs = idempotent_coefficients(d, params)
    pos = neg = dim = 0
    for i in (1, 2):
        mult = params.multiplicities[i]
        if coeffs[i] < 0:
            pos += mult
        elif coeffs[i] > 0:
            neg += mult
        if coeffs[i] != 0:
            dim += mult
    return Signature(pos, neg, params.n - pos - neg), dim


def main_polynomial_shifted(
    mains: Sequence[tuple[Fraction, Fraction]], shift: Fraction
) -> tuple[Fraction, ...]:
    """Monic polynomial whose roots are the main eigenvalues after adding shift*J.

    ``mains`` lists (mu_i, n*beta_i^2) for the main eigenvalues of the
    unshifted matrix.  Adding a multiple of J only moves eigenvalues inside
    the span of the projected all-ones vector; the new values are the roots
    of  prod(x - mu_i) - shift * sum_i n*beta_i^2 * prod_{j != i}(x - mu_j).
    """
    shift = Fraction(shift)
    poly = [Fraction(1)]  # ascending coefficients of prod (x - mu_i)
    for mu, _ in mains:
        poly = _poly_mul(poly, [-mu, Fraction(1)])
    for i, (_, nbeta) in enumerate(mains):
        part = [Fraction(1)]
        for j, (mu, _) in enumerate(mains):
            if j != i:
                part = _poly_mul(part, [-mu, Fraction(1)])
        part = [shift * nbeta * c for c in part] + [Fraction(0)]
        poly = [a - b for a, b in zip(poly, part)]
    return tuple(reversed(poly))


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def shifted_signature(report: SpectralReport, shift: Fraction) -> Signature:
    """Exact signature of (2D' - (a+b)J) + shift*J, e.g. of 2D' with shift a+b.

    Used to decide sphericity of a realization: a representation lies on a
    common sphere exactly when the rank of the uncentered matrix exceeds the
    rank of the centered one by one.
    """
    n = sum(l.multiplicity for l in report.lines)
    mains = [(l.value, n * l.main_angle_sq) for l in report.lines if l.is_main]
    pos = sum(l.multiplicity - l.is_main for l in report.lines if l.value > 0)
    neg = sum(l.multiplicity - l.is_main for l in report.lines if l.value < 0)
    zero = sum(l.multiplicity - l.is_main for l in report.lines if l.value == 0)
    if len(mains) == 1:
        root = mains[0][0] + shift * mains[0][1]
        pos, neg, zero = _count_root(root, pos, neg, zero)
    elif len(mains) == 2:
        _, b, c = main_polynomial_shifted(mains, shift)
        if b * b - 4 * c < 0:
            raise RuntimeError("main polynomial of a symmetric matrix must split")
        if c == 0:
            zero += 1
            pos, neg, zero = _count_root(-b, pos, neg, zero)
        elif c < 0:
            pos += 1
            neg += 1
        else:
            # both roots share the sign of their sum
            if b < 0:
                pos += 2
            else:
                neg += 2
    else:
        raise NotImplementedError("shifted signature implemented for at most two mains")
    return Signature(pos, neg, zero)


def _count_root(root: Fraction, pos: int, neg: int, zero: int):
    if root > 0:
        return pos + 1, neg, zero
    if root < 0:
        return pos, neg + 1, zero
    return pos, neg, zero + 1
