"""Dilogarithm products over mutation sequences and Y-seed periodicity probes."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from sympy import QQ
from sympy.polys.fields import field as _sympy_field

from quiverkit.qalgebra import (
    AlgebraError,
    QCoefficient,
    QuantumSeries,
    dilog_series,
    lambda_of,
)
from quiverkit.quiver import (
    InternalInvariantError,
    Permutation,
    Quiver,
    QuiverError,
    frame,
)
from quiverkit.search import find_reddening_sequences, verify_sequence


class UnknownWithinBounds(Exception):
    """The search bounds were exhausted without finding a reddening sequence.

    This never means a sequence does not exist.
    """


@dataclass(frozen=True)
class DTProduct:
    """An ordered product of dilogarithm factors read off a mutation sequence."""

    quiver: Quiver
    sequence: tuple[int, ...]
    degree_cap: int
    value: QuantumSeries
    factors: tuple[tuple[tuple[int, ...], int], ...]  # (c-vector, sign) per step

    def to_dict(self) -> dict:
        return {
            "quiver": self.quiver.to_dict(),
            "sequence": list(self.sequence),
            "degree": self.degree_cap,
            "factors": [{"beta": list(beta), "eps": eps} for beta, eps in self.factors],
            "series": self.value.to_json_terms(),
        }


def dt_product(q: Quiver, seq: Sequence[int], degree_cap: int) -> DTProduct:
    """Multiply the dilogarithm factors attached to a mutation sequence.

    The t-th factor uses the c-vector of the vertex mutated at step t,
    taken in the state before that step; its common sign decides between
    the series and its inverse.  An empty sequence gives the constant 1.
    """
    if q.is_framed():
        raise QuiverError("dt_product expects an unframed quiver")
    if degree_cap < 1:
        raise QuiverError("degree cap must be >= 1")
    lam = lambda_of(q)
    n = q.n
    value = QuantumSeries.one(n, degree_cap, lam)
    factors = []
    state = frame(q)
    for k in seq:
        if not (1 <= k <= n):
            raise QuiverError(f"vertex {k} out of range 1..{n}")
        c = state.c_matrix()
        beta = c.row(k)
        eps = c.row_sign(k)
        abs_beta = tuple(x * eps for x in beta)
        value = value * dilog_series(n, degree_cap, lam, abs_beta, sign=eps)
        factors.append((beta, eps))
        state = state.mutate(k)
    return DTProduct(q, tuple(seq), degree_cap, value, tuple(factors))


@dataclass(frozen=True)
class IdentityReport:
    equal: bool
    witness_exponent: Optional[tuple[int, ...]] = None
    coefficient_a: Optional[QCoefficient] = None
    coefficient_b: Optional[QCoefficient] = None

    def to_dict(self) -> dict:
        out = {"equal": self.equal}
        if not self.equal:
            out["witness"] = {
                "exp": list(self.witness_exponent),
                "lhs": str(self.coefficient_a),
                "rhs": str(self.coefficient_b),
            }
        return out


def verify_identity(
    q: Quiver, seq_a: Sequence[int], seq_b: Sequence[int], degree_cap: int
) -> IdentityReport:
    """Compare the products of two sequences as exact coefficient maps.

    On inequality the witness is the smallest differing exponent in
    (total degree, lexicographic) order, with both coefficients.
    """
    pa = dt_product(q, seq_a, degree_cap)
    pb = dt_product(q, seq_b, degree_cap)
    if pa.value == pb.value:
        return IdentityReport(True)
    exps = set(pa.value.terms) | set(pb.value.terms)
    for alpha in sorted(exps, key=lambda e: (sum(e), e)):
        ca = pa.value.coefficient(alpha)
        cb = pb.value.coefficient(alpha)
        if ca != cb:
            return IdentityReport(False, alpha, ca, cb)
    raise InternalInvariantError("series compared unequal but no witness found")


def dt_invariant(
    q: Quiver,
    degree_cap: int,
    reddening: Optional[Sequence[int]] = None,
    max_depth: int = 12,
    max_nodes: int = 20_000,
) -> QuantumSeries:
    """The truncated invariant series of a quiver admitting a reddening sequence.

    With an explicit sequence, it is checked to be reddening; otherwise a
    bounded search runs, and when it finds at least two sequences their
    products are cross-checked for equality before one is returned.
    """
    if reddening is not None:
        report = verify_sequence(q, reddening)
        if not report.is_reddening():
            raise QuiverError(
                f"sequence {tuple(reddening)} is not reddening "
                f"(verdict: {report.verdict})"
            )
        return dt_product(q, reddening, degree_cap).value
    found, truncated = find_reddening_sequences(q, max_depth, max_nodes, limit=2)
    if not found:
        raise UnknownWithinBounds(
            f"no reddening sequence found within bounds "
            f"(max_depth={max_depth}, max_nodes={max_nodes}); "
            "existence is unknown within these bounds"
        )
    if len(found) >= 2:
        check = verify_identity(q, found[0], found[1], degree_cap)
        if not check.equal:
            raise InternalInvariantError(
                f"products over {found[0]} and {found[1]} disagree at "
                f"{check.witness_exponent}"
            )
    return dt_product(q, found[0], degree_cap).value


def conjugate_monomial(product: DTProduct, alpha: Sequence[int], degree_cap: int) -> QuantumSeries:
    """E * y^alpha * E^{-1} truncated to the requested cap.

    Nonnegative monomials stay inside the algebra, so the truncated
    conjugation is well defined.  The product is rebuilt from its stored
    factors when the cap differs from the one it was computed at.
    """
    alpha = tuple(int(a) for a in alpha)
    if any(a < 0 for a in alpha):
        raise AlgebraError(f"alpha must lie in N^n, got {alpha}")
    q = product.quiver
    lam = lambda_of(q)
    if degree_cap == product.degree_cap:
        value = product.value
    else:
        value = QuantumSeries.one(q.n, degree_cap, lam)
        for beta, eps in product.factors:
            abs_beta = tuple(x * eps for x in beta)
            value = value * dilog_series(q.n, degree_cap, lam, abs_beta, sign=eps)
    mono = QuantumSeries.monomial(q.n, degree_cap, lam, alpha)
    return value * mono * value.inverse()


# -- commutative Y-seed dynamics -----------------------------------------


@lru_cache(maxsize=None)
def _y_field(n: int):
    names = ",".join(f"Y{i}" for i in range(1, n + 1))
    created = _sympy_field(names, QQ)
    return created[0], tuple(created[1:])


class YSeed:
    """A commutative shadow seed: exchange matrix plus rational functions.

    Each coordinate is an exact reduced fraction in the initial
    variables Y1..Yn.
    """

    __slots__ = ("b", "y")

    def __init__(self, b, y) -> None:
        self.b = tuple(tuple(int(x) for x in row) for row in b)
        self.y = tuple(y)

    @classmethod
    def initial(cls, q: Quiver) -> "YSeed":
        if q.is_framed():
            raise QuiverError("YSeed.initial expects an unframed quiver")
        _, gens = _y_field(q.n)
        return cls(q.mutable_block(), gens)

    @property
    def n(self) -> int:
        return len(self.y)

    def __eq__(self, other) -> bool:
        return isinstance(other, YSeed) and self.b == other.b and self.y == other.y

    def __repr__(self) -> str:
        return f"YSeed(n={self.n})"


def y_seed_mutate(seed: YSeed, k: int) -> YSeed:
    """Mutate a Y-seed at vertex k.

    The mutated coordinate inverts; coordinate j gains a factor
    y_k^[b_kj]_+ / (1+y_k)^{b_kj}; the exchange matrix mutates as usual.
    """
    n = seed.n
    if not (1 <= k <= n):
        raise QuiverError(f"vertex {k} out of range 1..{n}")
    yk = seed.y[k - 1]
    one_plus = yk**0 + yk  # 1 + y_k in the right field
    row = seed.b[k - 1]
    new_y = []
    for j in range(n):
        if j == k - 1:
            new_y.append(yk**-1)
            continue
        bkj = row[j]
        if bkj > 0:
            new_y.append(seed.y[j] * yk**bkj / one_plus**bkj)
        elif bkj < 0:
            new_y.append(seed.y[j] * one_plus ** (-bkj))
        else:
            new_y.append(seed.y[j])
    new_b = Quiver(n, 0, seed.b).mutate(k).b
    return YSeed(new_b, new_y)


# -- the order probe -------------------------------------------------------


def _coframe_relabeling(q: Quiver, reddening: Sequence[int]) -> Permutation:
    """The permutation identifying the final framed quiver with the
    coframed original: row i of the final c-matrix must be -e_{sigma(i)}."""
    report = verify_sequence(q, reddening)
    if not report.is_reddening():
        raise QuiverError(
            f"sequence {tuple(reddening)} is not reddening (verdict {report.verdict}); "
            "no frozen isomorphism to the coframed quiver exists"
        )
    c = report.final_state.c_matrix()
    n = q.n
    images = []
    for i in range(1, n + 1):
        row = c.row(i)
        negs = [j for j, x in enumerate(row) if x == -1]
        if len(negs) != 1 or any(x not in (0, -1) for x in row):
            raise InternalInvariantError(
                f"final c-matrix row {i} of a reddening sequence is not a "
                f"negated unit vector: {row}"
            )
        images.append(negs[0] + 1)
    sigma = Permutation(tuple(images))
    final_b = report.final_state.quiver
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if final_b.b[i - 1][j - 1] != q.b[sigma(i) - 1][sigma(j) - 1]:
                raise InternalInvariantError(
                    "final mutable quiver does not match the relabeled original"
                )
    return sigma


def _mutate_point(b, vals, k: int, p: int):
    """One Y-mutation on values modulo a prime."""
    ki = k - 1
    yk = vals[ki]
    one_plus = (1 + yk) % p
    if yk == 0 or one_plus == 0:
        raise ZeroDivisionError
    new = list(vals)
    new[ki] = pow(yk, -1, p)
    row = b[ki]
    for j in range(len(vals)):
        if j == ki:
            continue
        bkj = row[j]
        if bkj > 0:
            new[j] = new[j] * pow(yk, bkj, p) * pow(one_plus, -bkj, p) % p
        elif bkj < 0:
            new[j] = new[j] * pow(one_plus, -bkj, p) % p
    return new


_PROBE_PRIMES = (2**61 - 1, 2**89 - 1, 2**107 - 1, 2**127 - 1)


def dt_order_probe(q: Quiver, reddening: Sequence[int], max_rounds: int) -> Optional[int]:
    """Iterate the relabeled reddening word on a Y-seed; report the first
    round count that restores the initial seed, or None within bounds.

    Round r applies the word with every vertex pushed through the
    inverse relabeling r times; the seed counts as restored when it
    equals the initial seed transported along the accumulated
    relabeling (so the recorded period does not depend on which
    reddening sequence of the quiver is used).

    Rounds are tracked through modular evaluations at fixed generic
    points (fast and exact for inequality); a candidate match is
    confirmed by replaying the rounds symbolically.  None never means
    the word has infinite order, only that no period was found.
    """
    if max_rounds < 1:
        raise QuiverError("max_rounds must be >= 1")
    sigma_inv = _coframe_relabeling(q, reddening).inverse()
    n = q.n
    word0 = tuple(int(k) for k in reddening)

    for attempt in range(3):
        rng = random.Random(0xD1106 + attempt)
        shadows = []
        for p in _PROBE_PRIMES[attempt : attempt + 2]:
            vals = [rng.randrange(2, p - 2) for _ in range(n)]
            shadows.append((p, vals, list(vals)))
        b0 = q.mutable_block()
        try:
            return _probe_rounds(q, b0, word0, sigma_inv, shadows, max_rounds)
        except ZeroDivisionError:
            continue  # unlucky evaluation point; retry with fresh parameters
    raise InternalInvariantError("order probe failed to find usable evaluation points")


def _probe_rounds(q, b0, word0, sigma_inv, shadows, max_rounds):
    n = q.n
    b = b0
    relabel = Permutation.identity(n)
    schedule = []
    for round_index in range(max_rounds):
        word = tuple(relabel(k) for k in word0)
        schedule.append(word)
        for k in word:
            for p, vals0, vals in shadows:
                vals[:] = _mutate_point(b, vals, k, p)
            b = Quiver(n, 0, b).mutate(k).b
        relabel = sigma_inv.compose(relabel)
        perm = relabel.inverse()  # the relabeling accumulated so far
        b_match = all(
            b[i][j] == b0[perm(i + 1) - 1][perm(j + 1) - 1]
            for i in range(n)
            for j in range(n)
        )
        if b_match and all(
            vals == [vals0[perm(i + 1) - 1] for i in range(n)]
            for _, vals0, vals in shadows
        ):
            seed = YSeed.initial(q)
            for w in schedule:
                for k in w:
                    seed = y_seed_mutate(seed, k)
            _, gens = _y_field(n)
            if all(seed.y[i] == gens[perm(i + 1) - 1] for i in range(n)):
                return round_index + 1
    return None
