"""Number of independent invariants from the generic rank of the commutator table.

The count is ``dim - rank(F(x))`` where ``F(x)_ab = sum_c f_ab^c x_c`` is
evaluated at random rational points ``x``.  Ranks are computed exactly with
fraction-free (Bareiss) elimination.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import AlgebraSpec, dimension, generators, structure_table
from .errors import ConfigurationError, DomainError
from .rational import Q, Rational, rational_str

logger = logging.getLogger(__name__)

__all__ = [
    "RankReport",
    "DeficitReport",
    "commutator_matrix",
    "rank_ff",
    "random_point",
    "casimir_count",
    "expected_count",
    "z_offset",
    "centerless_deficit",
    "functional_rank",
    "matrix_to_json",
]

# random points: numerators in [-999, 999], denominators in [1, 99]
NUM_RANGE = (-999, 999)
DEN_RANGE = (1, 99)


def commutator_matrix(spec: AlgebraSpec, point: Sequence) -> list[list[Rational]]:
    gens = generators(spec)
    if len(point) != len(gens):
        raise DomainError(f"point has length {len(point)}, the algebra has dimension {len(gens)}")
    value = {g: Q(x) for g, x in zip(gens, point)}
    table = structure_table(spec)
    zero = Q(0)
    mat = []
    for a in gens:
        row = []
        for b in gens:
            entry = zero
            for c, f in table.get((a, b), ()):
                entry += f * value[c]
            row.append(entry)
        mat.append(row)
    return mat


def rank_ff(matrix: Sequence[Sequence]) -> int:
    """Exact rank by fraction-free Gaussian elimination.

    Rows are first scaled to integers; the Bareiss update then keeps every
    intermediate entry an integer (each one is a minor of the input).
    """
    rows = [[Q(x) for x in row] for row in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    work: list[list[int]] = []
    for row in rows:
        if len(row) != ncols:
            raise DomainError("ragged matrix")
        scale = math.lcm(*(int(x.denominator) for x in row)) if row else 1
        work.append([int(x * scale) for x in row])
    nrows = len(work)
    rank, prev = 0, 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if work[r][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        p_row = work[rank]
        p = p_row[col]
        for r in range(rank + 1, nrows):
            row = work[r]
            lead = row[col]
            for j in range(col + 1, ncols):
                q, rem = divmod(row[j] * p - lead * p_row[j], prev)
                assert rem == 0, "Bareiss division must be exact"
                row[j] = q
            row[col] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def random_point(rng: random.Random, dim: int) -> list[Rational]:
    return [Q(rng.randint(*NUM_RANGE), rng.randint(*DEN_RANGE)) for _ in range(dim)]


@dataclass
class RankReport:
    dim: int
    ranks: list[int]
    generic_rank: int
    invariant_count: int
    seed: int
    trials: int
    spec: AlgebraSpec | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "dim": self.dim,
            "ranks": self.ranks,
            "generic_rank": self.generic_rank,
            "invariant_count": self.invariant_count,
            "seed": self.seed,
            "trials": self.trials,
        }
        if self.spec is not None:
            out["spec"] = self.spec.to_json()
        if self.notes:
            out["notes"] = self.notes
        return out


def casimir_count(spec: AlgebraSpec, trials: int = 5, seed: int = 42) -> RankReport:
    """Generic rank of the commutator table over ``trials`` seeded random points.

    The points come from ``random.Random(seed)`` (Mersenne Twister), drawn
    trial after trial, so the report depends only on ``(spec, trials, seed)``.
    """
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    dim = dimension(spec)
    rng = random.Random(seed)
    ranks = [rank_ff(commutator_matrix(spec, random_point(rng, dim))) for _ in range(trials)]
    generic = max(ranks)
    notes = []
    if len(set(ranks)) > 1:
        msg = f"trial ranks disagree for {spec}: {ranks}"
        logger.warning(msg)
        notes.append(msg)
    return RankReport(dim, ranks, generic, dim - generic, seed, trials, spec, notes)


def expected_count(d: int) -> int:
    """Size of the constructed Casimir set: ``(d+1)/2`` (odd d), ``(d+2)/2`` (even d)."""
    if d < 1:
        raise DomainError(f"d must be positive, got {d}")
    return (d + 1) // 2 if d % 2 else (d + 2) // 2


def z_offset(report: RankReport, spec: AlgebraSpec) -> int:
    """``invariant_count - expected_count(d)``; 1 means the central element accounts for the difference."""
    return report.invariant_count - expected_count(spec.d)


def matrix_to_json(matrix: Sequence[Sequence]) -> list[list[str]]:
    return [[rational_str(x) for x in row] for row in matrix]


def functional_rank(elements: Sequence, spec: AlgebraSpec, trials: int = 3, seed: int = 0) -> int:
    """Number of functionally independent elements among pairwise commuting polynomials.

    Every generator occurring in ``elements`` must commute with every other
    one in ``spec`` (true for the ``Z -> 0`` limits, which only involve the
    vector generators), so the elements are ordinary polynomials and the
    answer is the generic rank of their Jacobian.
    """
    table = structure_table(spec)
    variables = sorted({g for e in elements for m, _ in e.items() for g in m})
    for a in variables:
        for b in variables:
            if (a, b) in table:
                raise DomainError(f"{a!r} and {b!r} do not commute; the elements are not commutative polynomials")
    if not variables:
        return 0
    col = {g: k for k, g in enumerate(variables)}
    rng = random.Random(seed)
    best = 0
    for _ in range(trials):
        point = dict(zip(variables, random_point(rng, len(variables))))
        jac = []
        for e in elements:
            row = [Q(0)] * len(variables)
            for mono, c in e.items():
                for k, g in enumerate(mono):
                    # d/dg of a commutative monomial, one factor at a time
                    if k and mono[k - 1] == g:
                        continue
                    exp = mono.count(g)
                    val = c * exp
                    for h in mono[:k] + mono[k + 1:]:
                        val *= point[h]
                    row[col[g]] += val
            jac.append(row)
        best = max(best, rank_ff(jac))
    return best


@dataclass
class DeficitReport:
    """Centerless invariant count against the catalog elements that survive ``Z -> 0``.

    ``surviving`` counts the nonzero limits, ``independent`` their
    functionally independent number; ``deficit`` uses the latter.
    """

    spec: AlgebraSpec
    invariant_count: int
    surviving: int
    independent: int
    degenerate: list[str]
    rank: RankReport

    @property
    def deficit(self) -> int:
        return self.invariant_count - self.independent

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "invariant_count": self.invariant_count,
            "surviving_limit_invariants": self.surviving,
            "independent_limit_invariants": self.independent,
            "vanishing_in_limit": self.degenerate,
            "deficit": self.deficit,
        }


def centerless_deficit(spec: AlgebraSpec, trials: int = 5, seed: int = 42) -> DeficitReport:
    """Compare the centerless invariant count with the catalog elements surviving ``Z -> 0``."""
    from .verify import check_z_limit

    if spec.extended:
        raise DomainError("centerless_deficit takes the centerless algebra")
    try:
        extended = spec.with_extended(True)
    except ConfigurationError:
        raise ConfigurationError(f"no central extension exists for {spec}") from None
    limit = check_z_limit(extended)
    report = casimir_count(spec, trials, seed)
    survivors = [elem for _, elem, _ in limit.entries if elem]
    independent = functional_rank(survivors, spec, trials, seed)
    return DeficitReport(spec, report.invariant_count, limit.surviving, independent, limit.degenerate, report)
