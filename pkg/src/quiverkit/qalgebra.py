"""Exact coefficients in Q(v) and the truncated twisted series algebra.

Coefficients live in the field of rational functions in one variable v
(whose square plays the role of q).  Series are finitely supported maps
from exponent vectors in N^n (total degree capped) to such coefficients,
multiplied with the twist  y^a * y^b = v^{lambda(a,b)} * y^(a+b).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence

from sympy import QQ
from sympy.polys.fields import field as _sympy_field

from quiverkit.quiver import Quiver, QuiverError

_FIELD, _V = _sympy_field("v", QQ)


class AlgebraError(ValueError):
    """Illegal coefficient or series operation requested by the caller."""


def _to_ground(value) -> object:
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, int):
        return QQ(value)
    raise AlgebraError(f"cannot convert {value!r} to an exact rational")


class QCoefficient:
    """An exact rational function in v, always stored reduced.

    Equality and hashing are canonical; the exposed numerator and
    denominator are normalized so that the denominator is monic.
    """

    __slots__ = ("_f",)

    def __init__(self, frac) -> None:
        self._f = frac

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls) -> "QCoefficient":
        return _ZERO

    @classmethod
    def one(cls) -> "QCoefficient":
        return _ONE

    @classmethod
    def from_rational(cls, value) -> "QCoefficient":
        """From an int, Fraction, or 'p/q' string."""
        if isinstance(value, str):
            num, _, den = value.partition("/")
            value = Fraction(int(num), int(den) if den else 1)
        return cls(_FIELD(_to_ground(value)))

    @classmethod
    def v_power(cls, k: int) -> "QCoefficient":
        return _v_power(k)

    @classmethod
    def from_coefficients(cls, num: Sequence, den: Sequence = (1,)) -> "QCoefficient":
        """From dense coefficient lists for numerator and denominator,
        lowest degree first."""
        np = sum(_FIELD(_to_ground(Fraction(c))) * _V**i for i, c in enumerate(num))
        dp = sum(_FIELD(_to_ground(Fraction(c))) * _V**i for i, c in enumerate(den))
        if not dp:
            raise AlgebraError("denominator polynomial is zero")
        return cls(np / dp)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "QCoefficient") -> "QCoefficient":
        return QCoefficient(self._f + other._f)

    def __sub__(self, other: "QCoefficient") -> "QCoefficient":
        return QCoefficient(self._f - other._f)

    def __mul__(self, other: "QCoefficient") -> "QCoefficient":
        return QCoefficient(self._f * other._f)

    def __truediv__(self, other: "QCoefficient") -> "QCoefficient":
        if not other._f:
            raise AlgebraError("division by the zero coefficient")
        return QCoefficient(self._f / other._f)

    def __neg__(self) -> "QCoefficient":
        return QCoefficient(-self._f)

    def inverse(self) -> "QCoefficient":
        if not self._f:
            raise AlgebraError("the zero coefficient has no inverse")
        return QCoefficient(self._f**-1)

    def __eq__(self, other) -> bool:
        return isinstance(other, QCoefficient) and self._f == other._f

    def __hash__(self) -> int:
        return hash(self._f)

    def __bool__(self) -> bool:
        return bool(self._f)

    @property
    def is_zero(self) -> bool:
        return not self._f

    # -- views -----------------------------------------------------------

    def _normalized_pair(self):
        """(numerator, denominator) scaled so the denominator is monic."""
        num, den = self._f.numer, self._f.denom
        lc = den.LC
        if lc != 1:
            inv = QQ(1) / lc
            num = num * inv
            den = den * inv
        return num, den

    @staticmethod
    def _dense(poly) -> list[Fraction]:
        if not poly:
            return [Fraction(0)]
        deg = max(mon[0] for mon, _ in poly.terms())
        out = [Fraction(0)] * (deg + 1)
        for (e,), c in poly.terms():
            out[e] = Fraction(int(c.numerator), int(c.denominator))
        return out

    def numerator_coefficients(self) -> list[Fraction]:
        """Dense numerator coefficients (v^0 first), denominator-monic form."""
        num, _ = self._normalized_pair()
        return self._dense(num)

    def denominator_coefficients(self) -> list[Fraction]:
        _, den = self._normalized_pair()
        return self._dense(den)

    def __repr__(self) -> str:
        return f"QCoefficient({self._f})"

    def __str__(self) -> str:
        return str(self._f)


_ZERO = QCoefficient(_FIELD.zero)
_ONE = QCoefficient(_FIELD.one)


@lru_cache(maxsize=None)
def _v_power(k: int) -> QCoefficient:
    return QCoefficient(_V**k if k >= 0 else _FIELD.one / _V ** (-k))


def _rat_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# -- the twist form ----------------------------------------------------


def lambda_of(q: Quiver) -> tuple[tuple[int, ...], ...]:
    """The antisymmetric pairing matrix of a quiver: lambda[i][j] = b[i][j].

    With this convention an arrow 1 -> 2 gives y1*y2 = q*y2*y1, the
    premise of the pentagon identity.
    """
    if q.is_framed():
        raise QuiverError("lambda_of expects an unframed quiver")
    return q.mutable_block()


def lambda_pairing(lam: Sequence[Sequence[int]], a: Sequence[int], b: Sequence[int]) -> int:
    total = 0
    for i, ai in enumerate(a):
        if not ai:
            continue
        row = lam[i]
        for j, bj in enumerate(b):
            if bj:
                total += ai * row[j] * bj
    return total


class QuantumSeries:
    """Truncated element of the twisted power-series algebra.

    Two series interoperate only when their variable count, degree cap,
    and twist matrix agree; exponents beyond the cap are discarded by
    every operation.
    """

    __slots__ = ("n", "degree_cap", "lam", "terms")

    def __init__(
        self,
        n: int,
        degree_cap: int,
        lam: Sequence[Sequence[int]],
        terms: Mapping[tuple[int, ...], QCoefficient],
    ) -> None:
        self.n = n
        self.degree_cap = degree_cap
        self.lam = tuple(tuple(int(x) for x in row) for row in lam)
        clean = {}
        for alpha, coeff in terms.items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != n or any(a < 0 for a in alpha):
                raise AlgebraError(f"exponent {alpha} is not in N^{n}")
            if sum(alpha) <= degree_cap and coeff:
                clean[alpha] = coeff
        self.terms = clean

    # -- constructors --------------------------------------------------

    @classmethod
    def one(cls, n: int, degree_cap: int, lam) -> "QuantumSeries":
        return cls(n, degree_cap, lam, {(0,) * n: QCoefficient.one()})

    @classmethod
    def monomial(
        cls, n: int, degree_cap: int, lam, alpha: Sequence[int], coeff: Optional[QCoefficient] = None
    ) -> "QuantumSeries":
        return cls(n, degree_cap, lam, {tuple(alpha): coeff or QCoefficient.one()})

    # -- helpers ---------------------------------------------------------

    def _require_compatible(self, other: "QuantumSeries") -> None:
        if self.n != other.n or self.degree_cap != other.degree_cap or self.lam != other.lam:
            raise AlgebraError(
                "series are not comparable: variable count, degree cap, and "
                "twist matrix must all agree"
            )

    def coefficient(self, alpha: Sequence[int]) -> QCoefficient:
        return self.terms.get(tuple(alpha), QCoefficient.zero())

    def constant_term(self) -> QCoefficient:
        return self.coefficient((0,) * self.n)

    # -- algebra -----------------------------------------------------------

    def __add__(self, other: "QuantumSeries") -> "QuantumSeries":
        self._require_compatible(other)
        out = dict(self.terms)
        for alpha, coeff in other.terms.items():
            acc = out.get(alpha)
            out[alpha] = coeff if acc is None else acc + coeff
        return QuantumSeries(self.n, self.degree_cap, self.lam, out)

    def __sub__(self, other: "QuantumSeries") -> "QuantumSeries":
        return self + (-other)

    def __neg__(self) -> "QuantumSeries":
        return QuantumSeries(
            self.n, self.degree_cap, self.lam, {a: -c for a, c in self.terms.items()}
        )

    def scale(self, coeff: QCoefficient) -> "QuantumSeries":
        return QuantumSeries(
            self.n, self.degree_cap, self.lam, {a: c * coeff for a, c in self.terms.items()}
        )

    def __mul__(self, other: "QuantumSeries") -> "QuantumSeries":
        self._require_compatible(other)
        cap = self.degree_cap
        lam = self.lam
        out: dict[tuple[int, ...], QCoefficient] = {}
        for alpha, ca in self.terms.items():
            da = sum(alpha)
            for beta, cb in other.terms.items():
                if da + sum(beta) > cap:
                    continue
                gamma = tuple(x + y for x, y in zip(alpha, beta))
                coeff = ca * cb * _v_power(lambda_pairing(lam, alpha, beta))
                acc = out.get(gamma)
                out[gamma] = coeff if acc is None else acc + coeff
        return QuantumSeries(self.n, cap, lam, out)

    def inverse(self) -> "QuantumSeries":
        """Two-sided inverse by degree-by-degree elimination.

        Requires an invertible (nonzero) constant term.
        """
        a0 = self.constant_term()
        if a0.is_zero:
            raise AlgebraError("series has zero constant term, no inverse exists")
        inv0 = a0.inverse()
        zero = (0,) * self.n
        out = {zero: inv0}
        by_degree: dict[int, list[tuple[int, ...]]] = {}
        for alpha in self.terms:
            if alpha != zero:
                by_degree.setdefault(sum(alpha), []).append(alpha)
        for d in range(1, self.degree_cap + 1):
            for gamma in _exponents_of_degree(self.n, d):
                acc = None
                for db in range(1, d + 1):
                    for beta in by_degree.get(db, ()):
                        rest = tuple(g - b for g, b in zip(gamma, beta))
                        if any(x < 0 for x in rest):
                            continue
                        prev = out.get(rest)
                        if prev is None:
                            continue
                        term = (
                            self.terms[beta]
                            * prev
                            * _v_power(lambda_pairing(self.lam, beta, rest))
                        )
                        acc = term if acc is None else acc + term
                if acc is not None and acc:
                    out[gamma] = -(inv0 * acc)
        return QuantumSeries(self.n, self.degree_cap, self.lam, out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QuantumSeries)
            and self.n == other.n
            and self.degree_cap == other.degree_cap
            and self.lam == other.lam
            and self.terms == other.terms
        )

    def is_one(self) -> bool:
        return self.terms == {(0,) * self.n: QCoefficient.one()}

    # -- views -------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple[int, ...], QCoefficient]]:
        return sorted(self.terms.items(), key=lambda item: (sum(item[0]), item[0]))

    def to_json_terms(self) -> list[dict]:
        out = []
        for alpha, coeff in self.sorted_terms():
            out.append(
                {
                    "exp": list(alpha),
                    "num": [_rat_str(c) for c in coeff.numerator_coefficients()],
                    "den": [_rat_str(c) for c in coeff.denominator_coefficients()],
                }
            )
        return out

    def __repr__(self) -> str:
        return f"QuantumSeries(n={self.n}, D={self.degree_cap}, {len(self.terms)} terms)"


def _exponents_of_degree(n: int, d: int) -> Iterable[tuple[int, ...]]:
    if n == 1:
        yield (d,)
        return
    for first in range(d + 1):
        for rest in _exponents_of_degree(n - 1, d - first):
            yield (first,) + rest


# -- the quantum dilogarithm -------------------------------------------


@lru_cache(maxsize=None)
def dilog_coefficient(k: int) -> QCoefficient:
    """Coefficient of y^k in the dilogarithm series.

    c_0 = 1 and c_k = v^(k^2) / prod_{i<k} (v^(2k) - v^(2i)); only even
    powers of v enter the denominator, so everything stays in Q(v).
    """
    if k == 0:
        return QCoefficient.one()
    num = _V ** (k * k)
    den = _FIELD.one
    for i in range(k):
        den *= _V ** (2 * k) - _V ** (2 * i)
    return QCoefficient(num / den)


def dilog_series(
    n: int, degree_cap: int, lam, beta: Sequence[int], sign: int = 1
) -> QuantumSeries:
    """The dilogarithm series in the monomial y^beta, truncated.

    ``sign=-1`` returns the series inverse (used for non-green factors).
    The exponent beta must be a nonzero vector in N^n; since the twist
    pairing of beta with itself vanishes, powers need no correction.
    """
    beta = tuple(int(x) for x in beta)
    if len(beta) != n or any(x < 0 for x in beta):
        raise AlgebraError(f"beta must lie in N^{n}, got {beta}")
    if not any(beta):
        raise AlgebraError("beta must be nonzero")
    if sign not in (1, -1):
        raise AlgebraError(f"sign must be +1 or -1, got {sign}")
    weight = sum(beta)
    terms = {}
    k = 0
    while k * weight <= degree_cap:
        terms[tuple(k * x for x in beta)] = dilog_coefficient(k)
        k += 1
    series = QuantumSeries(n, degree_cap, lam, terms)
    return series.inverse() if sign == -1 else series
