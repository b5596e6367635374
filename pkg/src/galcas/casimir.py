"""Decoupled operators and the Casimir elements built from them.

``script_L(n)`` commutes with every vector generator and rotation and spans
an sl(2) (scaled by ``Z``); ``script_M(i, j)`` commutes with the vector
generators and the ``L_n`` and transforms as a rotation generator.  The
quartic invariant is the sl(2) Casimir of the former, the rotation
invariants are traces of powers and (for even ``d``) the Pfaffian of the
antisymmetric matrix formed by the latter.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from functools import lru_cache

from .algebra import AlgebraSpec, Gen, HalfInt, Z, C_KIND, M_KIND
from .rational import Q, Rational
from .errors import DomainError
from .uea import UEAElement, embed, multiply, unit, element_to_json

logger = logging.getLogger(__name__)

__all__ = [
    "build_script_L",
    "build_script_M",
    "script_M_matrix",
    "quartic_casimir",
    "cyclic_trace",
    "trace_casimir",
    "pfaffian_casimir",
    "identity_check",
    "CasimirCatalog",
    "build_catalog",
    "trace_range",
]


def _parity_sign(twice: int) -> int:
    """``(-1)**x`` for ``x = twice / 2``, which must be an integer."""
    assert twice % 2 == 0, f"sign of a non-integer power {twice}/2"
    return -1 if (twice // 2) % 2 else 1


def _require_extended(spec: AlgebraSpec, what: str) -> None:
    if not spec.extended:
        raise DomainError(f"{what} is defined only for the centrally extended algebra")


def _gen_product(a: Gen, b: Gen, spec: AlgebraSpec) -> UEAElement:
    return multiply(embed(a), embed(b), spec)


@lru_cache(maxsize=None)
def build_script_L(n: int, spec: AlgebraSpec) -> UEAElement:
    """``Z L_n - 1/2 sum_alpha s(alpha) C_i^(-alpha) C_j^(alpha+n) eta_ij`` in normal order.

    ``s(alpha) = (-1)^(l-alpha) (alpha - l n) / ((l+alpha)! (l-alpha)!)``.
    Summands whose ``C^(alpha+n)`` does not exist are skipped; their
    coefficient vanishes anyway.
    """
    _require_extended(spec, "script_L")
    if n not in (-1, 0, 1):
        raise DomainError(f"n must be -1, 0 or 1, got {n}")
    lt = spec.l.twice
    out = multiply(embed(Z), embed(Gen.L(n)), spec)
    for alpha in spec.alphas():
        a = alpha.twice
        weight = Q(a - lt * n, 2)
        target = a + 2 * n
        if not -lt <= target <= lt:
            assert weight == 0, (alpha, n)
            continue
        if weight == 0:
            continue
        coeff = (
            Q(-1, 2)
            * _parity_sign(lt - a)
            * weight
            / (math.factorial((lt + a) // 2) * math.factorial((lt - a) // 2))
        )
        for i in range(1, spec.d + 1):
            for j in range(1, spec.d + 1):
                eta = spec.eta_value(i, j)
                if eta:
                    out = out + (coeff * eta) * _gen_product(Gen(C_KIND, -a, i), Gen(C_KIND, target, j), spec)
    return out


@lru_cache(maxsize=None)
def build_script_M(i: int, j: int, spec: AlgebraSpec) -> UEAElement:
    """``Z M_ij - 1/2 sum_alpha w(alpha) (C_i^(-alpha) eta_jk C_k^(alpha) - (i <-> j))``.

    ``w(alpha) = (-1)^(l-alpha) / ((l+alpha)! (l-alpha)!)``.  Antisymmetric
    in ``(i, j)``; the diagonal is zero.
    """
    _require_extended(spec, "script_M")
    d = spec.d
    if d < 2:
        raise DomainError("script_M needs d >= 2")
    if not (1 <= i <= d and 1 <= j <= d):
        raise DomainError(f"indices ({i}, {j}) out of range 1..{d}")
    if i == j:
        return UEAElement()
    if i > j:
        return -build_script_M(j, i, spec)
    lt = spec.l.twice
    out = multiply(embed(Z), embed(Gen(M_KIND, i, j)), spec)
    for alpha in spec.alphas():
        a = alpha.twice
        w = (
            Q(-1, 2)
            * _parity_sign(lt - a)
            / (math.factorial((lt + a) // 2) * math.factorial((lt - a) // 2))
        )
        for k in range(1, d + 1):
            eta_jk = spec.eta_value(j, k)
            if eta_jk:
                out = out + (w * eta_jk) * _gen_product(Gen(C_KIND, -a, i), Gen(C_KIND, a, k), spec)
            eta_ik = spec.eta_value(i, k)
            if eta_ik:
                out = out - (w * eta_ik) * _gen_product(Gen(C_KIND, -a, j), Gen(C_KIND, a, k), spec)
    return out


def script_M_matrix(spec: AlgebraSpec) -> list[list[UEAElement]]:
    d = spec.d
    return [[build_script_M(i, j, spec) for j in range(1, d + 1)] for i in range(1, d + 1)]


def quartic_casimir(spec: AlgebraSpec) -> UEAElement:
    """``(L_-1 L_1 + L_1 L_-1)/2 - L_0^2`` in the decoupled operators."""
    _require_extended(spec, "quartic_casimir")
    lm, l0, lp = (build_script_L(n, spec) for n in (-1, 0, 1))
    sym = multiply(lm, lp, spec) + multiply(lp, lm, spec)
    return Q(1, 2) * sym - multiply(l0, l0, spec)


def trace_range(d: int) -> range:
    """Valid ``k`` for :func:`trace_casimir`: ``2k <= d-1`` (odd d) or ``2k <= d-2`` (even d)."""
    top = (d - 1) // 2 if d % 2 else d // 2 - 1
    return range(1, top + 1)


def _matmul(a: list[list[UEAElement]], b: list[list[UEAElement]], spec: AlgebraSpec) -> list[list[UEAElement]]:
    d = len(a)
    out = []
    for r in range(d):
        row = []
        for c in range(d):
            acc = UEAElement()
            for k in range(d):
                if a[r][k] and b[k][c]:
                    acc = acc + multiply(a[r][k], b[k][c], spec)
            row.append(acc)
        out.append(row)
    return out


def _contraction_terms(num_factors: int, d: int):
    """Index pairs of the cyclic contraction ``M_{i1 i2} M_{i2 i3} ... M_{iN i1}``."""
    for idx in itertools.product(range(d), repeat=num_factors):
        pairs = [(idx[t], idx[(t + 1) % num_factors]) for t in range(num_factors)]
        if all(p != q for p, q in pairs):
            yield 1, pairs


def _pfaffian_terms(d: int):
    for perm in itertools.permutations(range(d)):
        yield _perm_sign(perm), [(perm[t], perm[t + 1]) for t in range(0, d, 2)]


def _perm_sign(perm) -> int:
    sign, seen = 1, set()
    for start in range(len(perm)):
        if start in seen:
            continue
        length, k = 0, start
        while k not in seen:
            seen.add(k)
            k = perm[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _symmetrized(terms, spec: AlgebraSpec) -> UEAElement:
    """Average of each product over all orderings of its factors."""
    mat = script_M_matrix(spec)
    total = UEAElement()
    for sign, pairs in terms:
        perms = list(itertools.permutations(pairs))
        acc = UEAElement()
        for order in perms:
            prod = unit()
            for p, q in order:
                prod = multiply(prod, mat[p][q], spec)
            acc = acc + prod
        total = total + Q(sign, len(perms)) * acc
    return total


def _accept(element: UEAElement, terms_fn, spec: AlgebraSpec, label: str) -> UEAElement:
    # left-to-right product first; symmetrize only if that fails centrality
    from .verify import is_central

    if is_central(element, spec).central:
        return element
    logger.warning("%s is not central in left-to-right order for %s; symmetrizing", label, spec)
    return _symmetrized(terms_fn(), spec)


def cyclic_trace(num_factors: int, spec: AlgebraSpec, *, check: bool = True) -> UEAElement:
    """``sum M_{i1 i2} M_{i2 i3} ... M_{iN i1}`` for an even number ``N`` of factors."""
    _require_extended(spec, "cyclic_trace")
    if spec.d < 2:
        raise DomainError("rotation invariants need d >= 2")
    if num_factors < 2 or num_factors % 2:
        raise DomainError(f"only contractions of an even number of factors are invariants, got {num_factors}")
    mat = script_M_matrix(spec)
    power = mat
    for _ in range(num_factors - 2):
        power = _matmul(power, mat, spec)
    trace = UEAElement()
    d = spec.d
    for a in range(d):
        for b in range(d):
            if power[a][b] and mat[b][a]:
                trace = trace + multiply(power[a][b], mat[b][a], spec)
    if check:
        trace = _accept(trace, lambda: _contraction_terms(num_factors, d), spec, f"trace({num_factors})")
    return trace


def trace_casimir(k: int, spec: AlgebraSpec, *, check: bool = True) -> UEAElement:
    """Trace of the ``2k``-th power of the matrix of ``script_M``."""
    _require_extended(spec, "trace_casimir")
    if spec.d < 2 or k not in trace_range(spec.d):
        raise DomainError(f"k={k} outside the trace invariant range for d={spec.d}")
    return cyclic_trace(2 * k, spec, check=check)


def pfaffian_casimir(spec: AlgebraSpec, *, check: bool = True) -> UEAElement:
    """``sum eps_{i1...id} M_{i1 i2} ... M_{i(d-1) id}`` for even ``d``."""
    _require_extended(spec, "pfaffian_casimir")
    d = spec.d
    if d % 2:
        raise DomainError(f"the Pfaffian invariant needs even d, got d={d}")
    mat = script_M_matrix(spec)
    out = UEAElement()
    for sign, pairs in _pfaffian_terms(d):
        prod = unit()
        for p, q in pairs:
            prod = multiply(prod, mat[p][q], spec)
        out = out + sign * prod
    if check:
        out = _accept(out, lambda: _pfaffian_terms(d), spec, "pfaffian")
    return out


def _factorial(x: HalfInt) -> int:
    if not x.is_integer:
        raise DomainError(f"factorial of non-integer {x}")
    if x.twice < 0:
        raise DomainError(f"factorial of negative integer {x}")
    return math.factorial(x.as_int())


def identity_check(l, alpha, n: int) -> Rational:
    """Evaluate the recursion identity for the coefficients of ``script_L``.

    ``(alpha - l n) - (-1)^n (alpha + n(l+1)) (l+alpha)! (l-alpha)!
    / ((l+n+alpha)! (l-n-alpha)!)``; zero whenever the arguments are valid.
    """
    l, alpha = HalfInt.parse(l), HalfInt.parse(alpha)
    if n not in (-1, 0, 1):
        raise DomainError(f"n must be -1, 0 or 1, got {n}")
    lf, af = l.as_rational(), alpha.as_rational()
    first = af - lf * n
    ratio = Q(
        _factorial(l + alpha) * _factorial(l - alpha),
        _factorial(l + alpha + n) * _factorial(l - alpha - n),
    )
    return first - (-1) ** (n % 2) * (af + n * (lf + 1)) * ratio


@dataclass(frozen=True)
class CasimirCatalog:
    quartic: UEAElement
    traces: list[tuple[int, UEAElement]]
    pfaffian: UEAElement | None
    spec: AlgebraSpec

    def elements(self) -> list[tuple[str, UEAElement]]:
        out = [("quartic", self.quartic)]
        out += [(f"trace{2 * k}", e) for k, e in self.traces]
        if self.pfaffian is not None:
            out.append(("pfaffian", self.pfaffian))
        return out

    @property
    def size(self) -> int:
        return len(self.elements())

    def to_json(self) -> list[dict]:
        return [{"name": name, **element_to_json(e)} for name, e in self.elements()]


@lru_cache(maxsize=None)
def build_catalog(spec: AlgebraSpec) -> CasimirCatalog:
    """Quartic, trace and (even d) Pfaffian invariants; cached per spec."""
    _require_extended(spec, "build_catalog")
    quartic = quartic_casimir(spec)
    traces: list[tuple[int, UEAElement]] = []
    pfaffian = None
    if spec.d >= 2:
        traces = [(k, trace_casimir(k, spec)) for k in trace_range(spec.d)]
        if spec.d % 2 == 0:
            pfaffian = pfaffian_casimir(spec)
    return CasimirCatalog(quartic, traces, pfaffian, spec)
