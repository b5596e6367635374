"""Universal enveloping algebra in a PBW basis.

A monomial is a non-decreasing tuple of :class:`~galcas.algebra.Gen`
(repeated entries encode exponents), so the empty tuple is the unit.  An
element is a sparse map ``monomial -> Rational``.  Products are brought to
normal order by straightening ``g h -> h g + [g, h]`` whenever ``g > h``.
"""

from __future__ import annotations

import bisect
import functools
import itertools
import json
from collections import defaultdict
from typing import Iterable, Mapping, Sequence

from .algebra import Gen, AlgebraSpec, Z, Z_KIND, check_generator, structure_table
from .rational import Q, Rational
from .errors import DomainError

__all__ = [
    "UEAElement",
    "embed",
    "unit",
    "multiply",
    "commutator",
    "ad_generator",
    "set_central_charge",
    "normal_order",
    "factors",
    "element_to_json",
    "element_from_json",
]

Monomial = tuple  # tuple[Gen, ...], non-decreasing


def factors(mono: Monomial) -> list[tuple[Gen, int]]:
    """``(generator, exponent)`` pairs of a monomial."""
    return [(g, len(list(grp))) for g, grp in itertools.groupby(mono)]


def _coeff_str(c: Rational) -> str:
    return f"{c.numerator}/{c.denominator}"


class UEAElement:
    """Rational combination of normal-ordered PBW monomials.

    Instances are treated as immutable.  Addition, subtraction and scaling
    by numbers are operators; products need the algebra and go through
    :func:`multiply`.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Rational] | None = None, *, _trusted: bool = False):
        if _trusted:
            self._terms = terms
            return
        clean: dict[Monomial, Rational] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if any(mono[k] > mono[k + 1] for k in range(len(mono) - 1)):
                raise DomainError(f"monomial {mono!r} is not normal-ordered; use normal_order()")
            if c != 0:
                clean[mono] = clean.get(mono, 0) + Q(c)
        self._terms = {m: c for m, c in clean.items() if c != 0}

    @classmethod
    def _from_acc(cls, acc: dict) -> "UEAElement":
        return cls({m: c for m, c in acc.items() if c != 0}, _trusted=True)

    @property
    def terms(self) -> dict[Monomial, Rational]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, mono: Sequence[Gen]) -> Rational:
        return self._terms.get(tuple(mono), Q(0))

    def degree(self) -> int:
        return max((len(m) for m in self._terms), default=-1)

    def generators_used(self) -> set[Gen]:
        return {g for m in self._terms for g in m}

    def __eq__(self, other) -> bool:
        if isinstance(other, UEAElement):
            return self._terms == other._terms
        if isinstance(other, (int, Rational)) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "UEAElement") -> "UEAElement":
        if not isinstance(other, UEAElement):
            return NotImplemented
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, 0) + c
        return UEAElement._from_acc(acc)

    def __neg__(self) -> "UEAElement":
        return UEAElement({m: -c for m, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other: "UEAElement") -> "UEAElement":
        if not isinstance(other, UEAElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar) -> "UEAElement":
        if isinstance(scalar, UEAElement):
            raise TypeError("use multiply(x, y, spec) for products of elements")
        scalar = Q(scalar)
        if scalar == 0:
            return UEAElement()
        return UEAElement({m: scalar * c for m, c in self._terms.items()}, _trusted=True)

    __rmul__ = __mul__

    def sorted_items(self) -> list[tuple[Monomial, Rational]]:
        return sorted(self._terms.items(), key=lambda mc: (len(mc[0]), mc[0]))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self.sorted_items():
            body = "*".join(g.pretty() if e == 1 else f"{g.pretty()}^{e}" for g, e in factors(mono))
            mag = abs(c)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            if not parts:
                parts.append(text if c > 0 else f"-{text}")
            else:
                parts.append(("+ " if c > 0 else "- ") + text)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"UEAElement({self})"


def unit() -> UEAElement:
    return UEAElement({(): Q(1)}, _trusted=True)


def embed(g: Gen, spec: AlgebraSpec | None = None) -> UEAElement:
    if spec is not None:
        check_generator(g, spec)
    return UEAElement({(g,): Q(1)}, _trusted=True)


def from_monomial(word: Iterable[Gen], spec: AlgebraSpec, coeff=1) -> UEAElement:
    """Normal-ordered value of the (not necessarily ordered) product of ``word``."""
    return normal_order({tuple(word): Q(coeff)}, spec)


class _Straightener:
    """Memoized right multiplication of a monomial by a generator."""

    def __init__(self, spec: AlgebraSpec):
        self.spec = spec
        self.table = structure_table(spec)
        self.memo: dict[tuple[Monomial, Gen], dict[Monomial, Rational]] = {}

    def right_mul(self, mono: Monomial, g: Gen) -> dict[Monomial, Rational]:
        if not mono or mono[-1] <= g:
            return {mono + (g,): 1}
        key = (mono, g)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        table = self.table
        pos = bisect.bisect_right(mono, g)
        if g.kind == Z_KIND or all((h, g) not in table for h in mono[pos:]):
            out = {mono[:pos] + (g,) + mono[pos:]: 1}
            self.memo[key] = out
            return out
        # mono = rest * h with h > g:  rest h g = (rest g) h + rest [h, g]
        rest, h = mono[:-1], mono[-1]
        acc: dict[Monomial, Rational] = defaultdict(int)
        # termination: (length, inversions) decreases lexicographically
        inversions = len(mono) - pos
        for m1, c1 in self.right_mul(rest, g).items():
            if len(m1) == len(mono):
                assert m1[-1] <= h, (mono, g)
            else:
                assert len(m1) < len(mono)
            for m2, c2 in self.right_mul(m1, h).items():
                acc[m2] += c1 * c2
        for k, cb in self.table.get((h, g), ()):
            for m1, c1 in self.right_mul(rest, k).items():
                acc[m1] += cb * c1
        assert inversions >= 1
        out = {m: c for m, c in acc.items() if c != 0}
        self.memo[key] = out
        return out

    def insert(self, prefix: Monomial, k: Gen, suffix: Monomial) -> dict[Monomial, Rational]:
        """Normal order of ``prefix * k * suffix`` where ``prefix + suffix`` is ordered."""
        table = self.table
        if prefix and prefix[-1] > k:
            p = bisect.bisect_right(prefix, k)
            if all((h, k) not in table for h in prefix[p:]):
                return {prefix[:p] + (k,) + prefix[p:] + suffix: 1}
        elif suffix and suffix[0] < k:
            s = bisect.bisect_left(suffix, k)
            if all((h, k) not in table for h in suffix[:s]):
                return {prefix + suffix[:s] + (k,) + suffix[s:]: 1}
        else:
            return {prefix + (k,) + suffix: 1}
        key = (prefix, k, suffix)
        hit = self.memo.get(key)
        if hit is None:
            hit = self.mul_word(self.right_mul(prefix, k), suffix)
            hit = {m: c for m, c in hit.items() if c != 0}
            self.memo[key] = hit
        return hit

    def mul_word(self, left: dict, word: Sequence[Gen]) -> dict:
        cur = left
        for g in word:
            acc: dict[Monomial, Rational] = defaultdict(int)
            for m, c in cur.items():
                for m2, c2 in self.right_mul(m, g).items():
                    acc[m2] += c * c2
            cur = acc
        return cur


@functools.lru_cache(maxsize=None)
def _straightener(spec: AlgebraSpec) -> _Straightener:
    return _Straightener(spec)


def clear_caches() -> None:
    _straightener.cache_clear()


def normal_order(terms: Mapping[Sequence[Gen], Rational], spec: AlgebraSpec) -> UEAElement:
    """Normal-order an arbitrary combination of words in the generators."""
    st = _straightener(spec)
    acc: dict[Monomial, Rational] = defaultdict(int)
    for word, c in terms.items():
        for g in word:
            check_generator(g, spec)
        for m, c2 in st.mul_word({(): Q(c)}, tuple(word)).items():
            acc[m] += c2
    return UEAElement._from_acc(acc)


def multiply(x: UEAElement, y: UEAElement, spec: AlgebraSpec) -> UEAElement:
    """Normal-ordered product ``x * y``."""
    st = _straightener(spec)
    acc: dict[Monomial, Rational] = defaultdict(int)
    x_terms = x._terms
    for my, cy in y._terms.items():
        for m, c in st.mul_word(x_terms, my).items():
            acc[m] += c * cy
    return UEAElement._from_acc(acc)


def product(elements: Sequence[UEAElement], spec: AlgebraSpec) -> UEAElement:
    out = unit()
    for e in elements:
        out = multiply(out, e, spec)
    return out


def commutator(x: UEAElement, y: UEAElement, spec: AlgebraSpec) -> UEAElement:
    """``x*y - y*x`` in normal order."""
    return multiply(x, y, spec) - multiply(y, x, spec)


def ad_generator(x: UEAElement, g: Gen, spec: AlgebraSpec) -> UEAElement:
    """``[x, g]`` computed through the derivation rule on each monomial.

    Agrees with ``commutator(x, embed(g), spec)`` but never forms the
    cancelling top-degree terms.
    """
    st = _straightener(spec)
    table = st.table
    acc: dict[Monomial, Rational] = defaultdict(int)
    for mono, c in x._terms.items():
        for j, a in enumerate(mono):
            bracket = table.get((a, g))
            if not bracket:
                continue
            prefix, suffix = mono[:j], mono[j + 1:]
            for k, cb in bracket:
                ccb = c * cb
                for m, c2 in st.insert(prefix, k, suffix).items():
                    acc[m] += ccb * c2
    return UEAElement._from_acc(acc)


def set_central_charge(x: UEAElement, value, spec: AlgebraSpec) -> UEAElement:
    """Substitute ``Z -> value`` (times the unit) in every monomial."""
    if not spec.extended:
        raise DomainError("set_central_charge needs the centrally extended algebra")
    value = Q(value)
    acc: dict[Monomial, Rational] = defaultdict(int)
    for mono, c in x._terms.items():
        # Z is the smallest generator, so its powers form a prefix
        power = 0
        while power < len(mono) and mono[power] == Z:
            power += 1
        if power and value == 0:
            continue
        acc[mono[power:]] += c * value**power
    return UEAElement._from_acc(acc)


def element_to_json(x: UEAElement) -> dict:
    return {
        "terms": [
            {"monomial": [[g.tag, e] for g, e in factors(mono)], "coeff": _coeff_str(c)}
            for mono, c in x.sorted_items()
        ]
    }


def element_from_json(data: dict | str) -> UEAElement:
    if isinstance(data, str):
        data = json.loads(data)
    terms: dict[Monomial, Rational] = {}
    for term in data["terms"]:
        mono: list[Gen] = []
        for tag, exp in term["monomial"]:
            if int(exp) < 1:
                raise DomainError(f"exponent must be positive, got {exp}")
            mono += [Gen.from_tag(tag)] * int(exp)
        key = tuple(mono)
        terms[key] = terms.get(key, 0) + Q(term["coeff"])
    return UEAElement(terms)
