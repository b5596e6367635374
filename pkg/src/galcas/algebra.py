"""Basis and structure constants of the l-conformal Galilei algebra.

The basis consists of the sl(2) generators ``L_{-1}, L_0, L_1``, the
rotations ``M_ij`` (``i < j``), the vector generators ``C_i^(alpha)`` with
``alpha = -l, ..., l`` and, for the centrally extended algebra, the central
element ``Z``.  All coefficients are exact rationals.
"""

from __future__ import annotations

import enum
import functools
import itertools
import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple

from .errors import ConfigurationError, DomainError
from .rational import Q, Rational

__all__ = [
    "HalfInt",
    "Eta",
    "AlgebraSpec",
    "Gen",
    "LieCombo",
    "JacobiReport",
    "generators",
    "bracket",
    "jacobi_check",
    "dimension",
    "default_grid",
]


@functools.total_ordering
@dataclass(frozen=True)
class HalfInt:
    """An integer or half-integer, stored as ``twice`` its value."""

    twice: int

    @classmethod
    def parse(cls, text: str | int | Fraction | "HalfInt") -> "HalfInt":
        if isinstance(text, HalfInt):
            return text
        if isinstance(text, str):
            text = text.strip()
            if not text or "." in text or "e" in text.lower():
                raise ConfigurationError(f"not an exact integer or half-integer: {text!r}")
            try:
                value = Fraction(text)
            except ValueError:
                raise ConfigurationError(f"cannot parse {text!r} as a fraction") from None
        else:
            value = Fraction(text)
        if (2 * value).denominator != 1:
            raise ConfigurationError(f"{text!r} is neither an integer nor a half-integer")
        return cls(int(2 * value))

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def as_rational(self) -> Rational:
        return Q(self.twice, 2)

    def as_int(self) -> int:
        if not self.is_integer:
            raise DomainError(f"{self} is not an integer")
        return self.twice // 2

    def __add__(self, other: "HalfInt | int") -> "HalfInt":
        if isinstance(other, int):
            return HalfInt(self.twice + 2 * other)
        return HalfInt(self.twice + other.twice)

    __radd__ = __add__

    def __sub__(self, other: "HalfInt | int") -> "HalfInt":
        if isinstance(other, int):
            return HalfInt(self.twice - 2 * other)
        return HalfInt(self.twice - other.twice)

    def __rsub__(self, other: int) -> "HalfInt":
        return HalfInt(2 * other - self.twice)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __lt__(self, other: "HalfInt") -> bool:
        return self.twice < other.twice

    def __str__(self) -> str:
        if self.is_integer:
            return str(self.twice // 2)
        return f"{self.twice}/2"


def _fmt_twice(twice: int) -> str:
    return str(twice // 2) if twice % 2 == 0 else f"{twice}/2"


class Eta(enum.Enum):
    SYMMETRIC = "symmetric"  # eta_ij = delta_ij
    SYMPLECTIC = "symplectic"  # eta_ij = eps_ij, eps_12 = +1


@dataclass(frozen=True)
class AlgebraSpec:
    """The parameters (l, d) fixing one member of the family.

    ``eta`` is derived from ``l`` when omitted: half-integer ``l`` gives the
    symmetric form, integer ``l`` (which requires ``d = 2`` when extended)
    gives the symplectic one.  Passing ``eta`` explicitly is allowed so that
    inconsistent choices can be exercised by :func:`jacobi_check`.
    """

    l: HalfInt
    d: int
    extended: bool = True
    eta: Eta = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        l = HalfInt.parse(self.l)
        object.__setattr__(self, "l", l)
        if l.twice < 1:
            raise ConfigurationError(f"l must be at least 1/2, got {l}")
        if not isinstance(self.d, int) or isinstance(self.d, bool) or self.d < 1:
            raise ConfigurationError(f"d must be a positive integer, got {self.d!r}")
        if l.is_integer and self.extended and self.d != 2:
            raise ConfigurationError(
                f"the central extension for integer l={l} exists only for d=2, got d={self.d}"
            )
        eta = self.eta
        if eta is None:
            eta = Eta.SYMPLECTIC if (l.is_integer and self.d == 2) else Eta.SYMMETRIC
        eta = Eta(eta)
        if eta is Eta.SYMPLECTIC and self.d != 2:
            raise ConfigurationError("the symplectic form eps_ij needs d=2")
        object.__setattr__(self, "eta", eta)

    @property
    def canonical_eta(self) -> bool:
        """Whether ``eta`` is the form dictated by the parity of ``l``."""
        if self.l.is_integer:
            return self.d != 2 or self.eta is Eta.SYMPLECTIC
        return self.eta is Eta.SYMMETRIC

    def eta_value(self, i: int, j: int) -> int:
        if self.eta is Eta.SYMMETRIC:
            return 1 if i == j else 0
        if (i, j) == (1, 2):
            return 1
        if (i, j) == (2, 1):
            return -1
        return 0

    def alphas(self) -> list[HalfInt]:
        return [HalfInt(t) for t in range(-self.l.twice, self.l.twice + 1, 2)]

    def with_extended(self, extended: bool) -> "AlgebraSpec":
        return AlgebraSpec(self.l, self.d, extended, self.eta)

    def to_json(self) -> dict:
        return {"l": str(self.l), "d": self.d, "extended": self.extended}

    @classmethod
    def from_json(cls, data: dict | str) -> "AlgebraSpec":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(HalfInt.parse(str(data["l"])), int(data["d"]), bool(data["extended"]))

    def __str__(self) -> str:
        ext = "extended" if self.extended else "centerless"
        return f"l={self.l}, d={self.d}, {ext}"


# Generator kinds.  Tuple order of Gen is the fixed PBW order:
# Z < L_-1 < L_0 < L_1 < M_ij (lex) < C_i^(alpha) (lex in (alpha, i)).
Z_KIND, L_KIND, M_KIND, C_KIND = 0, 1, 2, 3


class Gen(NamedTuple):
    """A basis generator.

    ``L_n`` is ``(1, n, 0)``, ``M_ij`` is ``(2, i, j)``, ``C_i^(alpha)`` is
    ``(3, 2*alpha, i)`` and ``Z`` is ``(0, 0, 0)``; plain tuple comparison is
    the PBW order.
    """

    kind: int
    a: int = 0
    b: int = 0

    @staticmethod
    def L(n: int) -> "Gen":
        return Gen(L_KIND, n, 0)

    @staticmethod
    def M(i: int, j: int) -> "Gen":
        if not i < j:
            raise DomainError(f"M_ij is stored with i < j, got ({i}, {j})")
        return Gen(M_KIND, i, j)

    @staticmethod
    def C(alpha: HalfInt | str | Fraction, i: int) -> "Gen":
        return Gen(C_KIND, HalfInt.parse(alpha).twice, i)

    @property
    def alpha(self) -> HalfInt:
        return HalfInt(self.a)

    @property
    def tag(self) -> str:
        if self.kind == Z_KIND:
            return "Z"
        if self.kind == L_KIND:
            return f"L{self.a}"
        if self.kind == M_KIND:
            return f"M:{self.a}:{self.b}"
        return f"C:{_fmt_twice(self.a)}:{self.b}"

    @classmethod
    def from_tag(cls, tag: str) -> "Gen":
        try:
            if tag == "Z":
                return Z
            if tag.startswith("L"):
                return cls.L(int(tag[1:]))
            kind, x, y = tag.split(":")
            if kind == "M":
                return cls.M(int(x), int(y))
            if kind == "C":
                return cls.C(x, int(y))
        except (ValueError, ConfigurationError):
            pass
        raise DomainError(f"unknown generator tag {tag!r}")

    def pretty(self) -> str:
        if self.kind == Z_KIND:
            return "Z"
        if self.kind == L_KIND:
            return f"L{self.a}"
        if self.kind == M_KIND:
            return f"M{self.a}{self.b}"
        return f"C{self.b}({_fmt_twice(self.a)})"

    def __repr__(self) -> str:
        return self.pretty()


Z = Gen(Z_KIND)


class LieCombo:
    """A finite rational combination of generators, zero terms dropped."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[Gen, Rational] | Iterable[tuple[Gen, Rational]] = ()):
        items = terms.items() if isinstance(terms, dict) else terms
        acc: dict[Gen, Rational] = {}
        for g, c in items:
            acc[g] = acc.get(g, 0) + c
        self._terms = {g: Q(acc[g]) for g in sorted(acc) if acc[g] != 0}

    @property
    def terms(self) -> dict[Gen, Rational]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self) -> Iterator[Gen]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __getitem__(self, g: Gen) -> Rational:
        return self._terms.get(g, Q(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, LieCombo):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __add__(self, other: "LieCombo") -> "LieCombo":
        return LieCombo(itertools.chain(self._terms.items(), other._terms.items()))

    def __neg__(self) -> "LieCombo":
        return LieCombo({g: -c for g, c in self._terms.items()})

    def __sub__(self, other: "LieCombo") -> "LieCombo":
        return self + (-other)

    def __mul__(self, scalar) -> "LieCombo":
        return LieCombo({g: scalar * c for g, c in self._terms.items()})

    __rmul__ = __mul__

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*{g.pretty()}" for g, c in self._terms.items()).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# structure constants


def _sign(power: int) -> int:
    return -1 if power % 2 else 1


def _in_range(twice_alpha: int, spec: AlgebraSpec) -> bool:
    return -spec.l.twice <= twice_alpha <= spec.l.twice


def _m_term(i: int, j: int, coeff: int) -> list[tuple[Gen, Rational]]:
    # M_ji = -M_ij, M_ii = 0
    if i == j or coeff == 0:
        return []
    if i < j:
        return [(Gen(M_KIND, i, j), Q(coeff))]
    return [(Gen(M_KIND, j, i), Q(-coeff))]


def _raw_bracket(a: Gen, b: Gen, spec: AlgebraSpec) -> list[tuple[Gen, Rational]]:
    """Bracket of two basis generators with ``a.kind <= b.kind``."""
    ka, kb = a.kind, b.kind
    if ka == Z_KIND or kb == Z_KIND:
        return []
    if ka == L_KIND and kb == L_KIND:
        n, m = a.a, b.a
        if m == n:
            return []
        return [(Gen.L(n + m), Q(m - n))]
    if ka == L_KIND and kb == C_KIND:
        n, twice_alpha, i = a.a, b.a, b.b
        # alpha - l*n
        coeff = Q(twice_alpha - spec.l.twice * n, 2)
        target = twice_alpha + 2 * n
        if not _in_range(target, spec):
            # only alpha = l, n = 1 and alpha = -l, n = -1 leave the range
            assert coeff == 0, (a, b, coeff)
            return []
        if coeff == 0:
            return []
        return [(Gen(C_KIND, target, i), coeff)]
    if ka == L_KIND and kb == M_KIND:
        return []
    if ka == M_KIND and kb == M_KIND:
        i, j, k, l = a.a, a.b, b.a, b.b
        out: list[tuple[Gen, Rational]] = []
        if i == k:
            out += _m_term(j, l, 1)
        if j == l:
            out += _m_term(i, k, 1)
        if i == l:
            out += _m_term(j, k, -1)
        if j == k:
            out += _m_term(i, l, -1)
        return out
    if ka == M_KIND and kb == C_KIND:
        i, j, twice_alpha, k = a.a, a.b, b.a, b.b
        out = []
        if i == k:
            out.append((Gen(C_KIND, twice_alpha, j), Q(1)))
        if j == k:
            out.append((Gen(C_KIND, twice_alpha, i), Q(-1)))
        return out
    if ka == C_KIND and kb == C_KIND:
        if not spec.extended or a.a + b.a != 0:
            return []
        eta = spec.eta_value(a.b, b.b)
        if eta == 0:
            return []
        # alpha + l and beta + l are non-negative integers
        p = (a.a + spec.l.twice) // 2
        q = (b.a + spec.l.twice) // 2
        coeff = _sign(p) * math.factorial(p) * math.factorial(q) * eta
        return [(Z, Q(coeff))]
    raise AssertionError((a, b))  # pragma: no cover


@functools.lru_cache(maxsize=None)
def _generators(spec: AlgebraSpec) -> tuple[Gen, ...]:
    gens: list[Gen] = []
    if spec.extended:
        gens.append(Z)
    gens += [Gen.L(n) for n in (-1, 0, 1)]
    gens += [Gen(M_KIND, i, j) for i in range(1, spec.d + 1) for j in range(i + 1, spec.d + 1)]
    gens += [Gen(C_KIND, t, i) for t in range(-spec.l.twice, spec.l.twice + 1, 2) for i in range(1, spec.d + 1)]
    assert gens == sorted(gens)
    return tuple(gens)


@functools.lru_cache(maxsize=None)
def _generator_set(spec: AlgebraSpec) -> frozenset[Gen]:
    return frozenset(_generators(spec))


@functools.lru_cache(maxsize=None)
def structure_table(spec: AlgebraSpec) -> dict[tuple[Gen, Gen], tuple[tuple[Gen, Rational], ...]]:
    """All nonzero brackets ``[a, b]`` of basis generators, both orders."""
    table: dict[tuple[Gen, Gen], tuple[tuple[Gen, Rational], ...]] = {}
    gens = _generators(spec)
    for a, b in itertools.combinations(gens, 2):
        if a.kind <= b.kind:
            value = LieCombo(_raw_bracket(a, b, spec))
        else:
            value = -LieCombo(_raw_bracket(b, a, spec))
        if value:
            table[(a, b)] = tuple(value.items())
            table[(b, a)] = tuple((g, -c) for g, c in value.items())
    return table


def generators(spec: AlgebraSpec) -> list[Gen]:
    """The basis of the algebra in PBW order."""
    return list(_generators(spec))


def check_generator(g: Gen, spec: AlgebraSpec) -> None:
    if g not in _generator_set(spec):
        raise DomainError(f"{g!r} is not a generator of the algebra ({spec})")


def bracket(a: Gen, b: Gen, spec: AlgebraSpec) -> LieCombo:
    check_generator(a, spec)
    check_generator(b, spec)
    return LieCombo(structure_table(spec).get((a, b), ()))


def bracket_combo(x: LieCombo, y: LieCombo, spec: AlgebraSpec) -> LieCombo:
    """Bilinear extension of :func:`bracket`."""
    table = structure_table(spec)
    acc: list[tuple[Gen, Rational]] = []
    for a, ca in x.items():
        for b, cb in y.items():
            for g, c in table.get((a, b), ()):
                acc.append((g, ca * cb * c))
    return LieCombo(acc)


def dimension(spec: AlgebraSpec) -> int:
    """``3 + d(d+1)/2 + 2dl``, plus one for the central element."""
    d = spec.d
    # 2dl = d * (2l)
    return 3 + d * (d + 1) // 2 + d * spec.l.twice + (1 if spec.extended else 0)


@dataclass
class JacobiReport:
    ok: bool
    triples: int
    violations: list[tuple[Gen, Gen, Gen, LieCombo]]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "triples": self.triples,
            "violations": [
                {"triple": [a.tag, b.tag, c.tag], "residual": {g.tag: str(v) for g, v in r.items()}}
                for a, b, c, r in self.violations
            ],
        }


def jacobi_check(spec: AlgebraSpec) -> JacobiReport:
    """Exhaustive Jacobi identity over all unordered triples of distinct generators."""
    gens = _generators(spec)
    unit = {g: LieCombo([(g, Q(1))]) for g in gens}
    violations = []
    count = 0
    for a, b, c in itertools.combinations(gens, 3):
        count += 1
        residual = (
            bracket_combo(unit[a], bracket_combo(unit[b], unit[c], spec), spec)
            + bracket_combo(unit[b], bracket_combo(unit[c], unit[a], spec), spec)
            + bracket_combo(unit[c], bracket_combo(unit[a], unit[b], spec), spec)
        )
        if residual:
            violations.append((a, b, c, residual))
    return JacobiReport(not violations, count, violations)


GRID_L = ("1/2", "1", "3/2", "2", "5/2")
GRID_D = (1, 2, 3, 4, 5)


def default_grid(extended: bool = True, env: str | None = "GALCAS_GRID") -> list[AlgebraSpec]:
    """The test grid; integer l only with d = 2.

    The environment variable named by ``env`` may hold a comma separated
    list of ``l:d`` pairs (e.g. ``"1/2:1,1:2"``) replacing the default.
    """
    override = os.environ.get(env) if env else None
    if override:
        pairs = []
        for item in override.split(","):
            l_text, d_text = item.strip().split(":")
            pairs.append((HalfInt.parse(l_text), int(d_text)))
    else:
        pairs = [
            (HalfInt.parse(l_text), d)
            for l_text in GRID_L
            for d in GRID_D
            if not HalfInt.parse(l_text).is_integer or d == 2
        ]
    return [AlgebraSpec(l, d, extended) for l, d in pairs]
