"""Exact quivers, framed quivers, mutation, and frozen isomorphism.

A quiver on vertices 1..n (plus optional frozen vertices stored at
indices n+1..n+f) is encoded by its skew-symmetric integer matrix:
entry ``b[i][j]`` is the net number of arrows i -> j.  All values here
are immutable; every operation returns a fresh value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class QuiverError(ValueError):
    """Invalid input data or an illegal operation requested by the caller."""


class InternalInvariantError(RuntimeError):
    """A structural guarantee failed.  This is a bug, never a user error."""


Matrix = tuple[tuple[int, ...], ...]


def _freeze(rows: Iterable[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


@dataclass(frozen=True)
class Quiver:
    """A quiver with ``n`` mutable and ``f`` frozen vertices.

    Mutable vertices carry the 1-based labels 1..n; the frozen vertex
    attached to vertex i sits at internal index n+i.  Entries between
    two frozen vertices are kept identically zero.
    """

    n: int
    f: int
    b: Matrix

    # -- construction ------------------------------------------------

    @classmethod
    def from_arrows(cls, n: int, arrows: Iterable[Sequence[int]]) -> "Quiver":
        """Build an unframed quiver from (source, target, multiplicity) triples.

        A pair ``(s, t)`` counts as multiplicity 1.  Loops and
        out-of-range vertices are rejected.
        """
        if n < 1:
            raise QuiverError(f"vertex count must be >= 1, got {n}")
        b = [[0] * n for _ in range(n)]
        for arrow in arrows:
            if len(arrow) == 2:
                s, t = arrow
                m = 1
            else:
                s, t, m = arrow
            s, t, m = int(s), int(t), int(m)
            if not (1 <= s <= n and 1 <= t <= n):
                raise QuiverError(f"arrow ({s},{t}) out of range 1..{n}")
            if s == t:
                raise QuiverError(f"loop arrow at vertex {s} is not allowed")
            if m < 1:
                raise QuiverError(f"arrow multiplicity must be >= 1, got {m}")
            b[s - 1][t - 1] += m
            b[t - 1][s - 1] -= m
        return cls(n, 0, _freeze(b))

    @classmethod
    def from_matrix(cls, rows: Iterable[Sequence[int]]) -> "Quiver":
        """Build an unframed quiver from a full skew-symmetric matrix."""
        b = _freeze(rows)
        n = len(b)
        if any(len(row) != n for row in b):
            raise QuiverError("matrix must be square")
        q = cls(n, 0, b)
        q._check_skew()
        return q

    def _check_skew(self) -> None:
        t = self.n + self.f
        if len(self.b) != t or any(len(row) != t for row in self.b):
            raise QuiverError("matrix size does not match vertex counts")
        for i in range(t):
            if self.b[i][i] != 0:
                raise QuiverError(f"diagonal entry at vertex {i + 1} is nonzero")
            for j in range(i + 1, t):
                if self.b[i][j] != -self.b[j][i]:
                    raise QuiverError(f"matrix is not skew-symmetric at ({i + 1},{j + 1})")

    # -- basic views -------------------------------------------------

    @property
    def total(self) -> int:
        return self.n + self.f

    def arrows(self) -> list[tuple[int, int, int]]:
        """All arrows as sorted (source, target, multiplicity), 1-based."""
        out = []
        for i in range(self.total):
            for j in range(self.total):
                if self.b[i][j] > 0:
                    out.append((i + 1, j + 1, self.b[i][j]))
        return out

    def is_framed(self) -> bool:
        return self.f > 0

    def mutable_block(self) -> Matrix:
        return tuple(row[: self.n] for row in self.b[: self.n])

    # -- mutation ----------------------------------------------------

    def mutate(self, k: int) -> "Quiver":
        """Mutate at the mutable vertex k (1-based) and return the result.

        Row/column k change sign; for the rest, ``b[i][j]`` gains
        ``sign(b[i][k]) * max(0, b[i][k] * b[k][j])``.  Arrows that the
        rule would create between two frozen vertices are discarded.
        """
        if not (1 <= k <= self.n):
            raise QuiverError(
                f"cannot mutate at vertex {k}: it is "
                + ("frozen" if k <= self.total else "out of range")
                + f" (mutable vertices are 1..{self.n})"
            )
        n, f, b = self.n, self.f, self.b
        t = n + f
        ki = k - 1
        bk = b[ki]
        out = []
        for i in range(t):
            bi = b[i]
            if i == ki:
                out.append(tuple(-x for x in bi))
                continue
            bik = bi[ki]
            row = list(bi)
            row[ki] = -row[ki]
            if bik > 0:
                for j in range(t):
                    if j != ki and bk[j] > 0:
                        row[j] += bik * bk[j]
            elif bik < 0:
                for j in range(t):
                    if j != ki and bk[j] < 0:
                        row[j] -= bik * bk[j]
            if i >= n:
                # drop frozen-frozen arrows created by the first step
                for j in range(n, t):
                    row[j] = 0
            out.append(tuple(row))
        return Quiver(n, f, tuple(out))

    def relabel(self, images: Sequence[int]) -> "Quiver":
        """Relabel mutable vertices: vertex i becomes images[i-1].

        Frozen vertices follow their mutable partners.  Used by the
        isomorphism property tests.
        """
        if sorted(images) != list(range(1, self.n + 1)):
            raise QuiverError("relabeling must be a permutation of 1..n")
        t = self.total
        full = list(range(t))
        for i in range(self.n):
            full[images[i] - 1] = i
            if self.f:
                full[self.n + images[i] - 1] = self.n + i
        b = tuple(tuple(self.b[full[i]][full[j]] for j in range(t)) for i in range(t))
        return Quiver(self.n, self.f, b)

    # -- serialization -----------------------------------------------

    def to_dict(self) -> dict:
        if self.is_framed():
            raise QuiverError("only unframed quivers are serialized to files")
        return {"n": self.n, "arrows": [list(a) for a in self.arrows()]}

    @classmethod
    def from_dict(cls, data: dict) -> "Quiver":
        if not isinstance(data, dict):
            raise QuiverError("quiver JSON must be an object")
        if "matrix" in data:
            return cls.from_matrix(data["matrix"])
        if "arrows" in data:
            if "n" not in data:
                raise QuiverError('quiver JSON with "arrows" needs an "n" field')
            return cls.from_arrows(int(data["n"]), data["arrows"])
        raise QuiverError('quiver JSON needs either an "arrows" or a "matrix" field')

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "Quiver":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise QuiverError(f"invalid quiver JSON: {exc}") from exc
        return cls.from_dict(data)


def quiver_from_arrows(n: int, arrows: Iterable[Sequence[int]]) -> Quiver:
    return Quiver.from_arrows(n, arrows)


# -- framed states ----------------------------------------------------


@dataclass(frozen=True)
class CMatrix:
    """The mutable-to-frozen block of a framed quiver's matrix.

    Row i is the c-vector of vertex i; every row must lie entirely in
    the nonnegative or entirely in the nonpositive orthant.
    """

    entries: Matrix

    def __post_init__(self) -> None:
        for idx, row in enumerate(self.entries):
            has_pos = any(x > 0 for x in row)
            has_neg = any(x < 0 for x in row)
            if has_pos and has_neg:
                raise InternalInvariantError(
                    f"sign coherence violated in c-vector {idx + 1}: {row}"
                )
            if not (has_pos or has_neg):
                raise InternalInvariantError(f"zero c-vector at row {idx + 1}")

    @property
    def n(self) -> int:
        return len(self.entries)

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i - 1]

    def row_sign(self, i: int) -> int:
        """+1 for a nonnegative c-vector, -1 for a nonpositive one."""
        return 1 if any(x > 0 for x in self.entries[i - 1]) else -1

    def is_identity(self) -> bool:
        return all(
            x == (1 if i == j else 0)
            for i, row in enumerate(self.entries)
            for j, x in enumerate(row)
        )

    def is_negative_identity(self) -> bool:
        return all(
            x == (-1 if i == j else 0)
            for i, row in enumerate(self.entries)
            for j, x in enumerate(row)
        )


@dataclass(frozen=True)
class MutationState:
    """A framed quiver reached from ``origin`` by mutating along ``history``."""

    origin: Quiver
    quiver: Quiver
    history: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.origin.n

    def mutate(self, k: int) -> "MutationState":
        return MutationState(self.origin, self.quiver.mutate(k), self.history + (k,))

    def apply(self, seq: Iterable[int]) -> "MutationState":
        state = self
        for k in seq:
            state = state.mutate(k)
        return state

    def undo(self) -> "MutationState":
        """Drop the last mutation (mutation is an involution per vertex)."""
        if not self.history:
            raise QuiverError("history is empty, nothing to undo")
        k = self.history[-1]
        return MutationState(self.origin, self.quiver.mutate(k), self.history[:-1])

    def c_matrix(self) -> CMatrix:
        n = self.n
        return CMatrix(tuple(tuple(self.quiver.b[i][n + j] for j in range(n)) for i in range(n)))

    def c_vector(self, i: int) -> tuple[int, ...]:
        if not (1 <= i <= self.n):
            raise QuiverError(f"vertex {i} out of range 1..{self.n}")
        n = self.n
        return tuple(self.quiver.b[i - 1][n + j] for j in range(n))

    def status(self, i: int) -> str:
        """'green' when no frozen vertex points at i, else 'red'."""
        if not (1 <= i <= self.n):
            raise QuiverError(f"vertex {i} out of range 1..{self.n}")
        row = self.c_vector(i)
        if any(x < 0 for x in row) and any(x > 0 for x in row):
            raise InternalInvariantError(f"sign coherence violated at vertex {i}: {row}")
        return "red" if any(x < 0 for x in row) else "green"

    def greens(self) -> list[int]:
        return [i for i in range(1, self.n + 1) if self.status(i) == "green"]

    def reds(self) -> list[int]:
        return [i for i in range(1, self.n + 1) if self.status(i) == "red"]

    def all_red(self) -> bool:
        return not self.greens()


def frame(q: Quiver) -> MutationState:
    """Attach one frozen vertex per mutable vertex, with an arrow i -> i'."""
    if q.is_framed():
        raise QuiverError("quiver is already framed")
    n = q.n
    b = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            b[i][j] = q.b[i][j]
        b[i][n + i] = 1
        b[n + i][i] = -1
    framed = Quiver(n, n, _freeze(b))
    return MutationState(q, framed, ())


def apply_sequence(state: MutationState, seq: Iterable[int]) -> MutationState:
    return state.apply(seq)


# -- permutations ------------------------------------------------------


@dataclass(frozen=True)
class Permutation:
    """A bijection of 1..n given by its tuple of images."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise QuiverError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, img in enumerate(self.images):
            inv[img - 1] = i + 1
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """(self . other)(i) = self(other(i))."""
        return Permutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def power(self, k: int) -> "Permutation":
        result = Permutation.identity(self.n)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            result = base.compose(result)
        return result

    def is_identity(self) -> bool:
        return all(self.images[i] == i + 1 for i in range(self.n))

    def order(self) -> int:
        p = self
        m = 1
        while not p.is_identity():
            p = p.compose(self)
            m += 1
        return m


def frozen_isomorphism(a: MutationState, b: MutationState) -> Optional[Permutation]:
    """Find sigma with b_a[sigma(i)][sigma(j)] = b_b[i][j], frozen labels fixed.

    Candidates for sigma(i) are pruned by the frozen row (the c-vector
    of i must match exactly, since frozen vertices are fixed pointwise)
    and by the multiset of mutable-row values; the rest is backtracking.
    Returns None when no such permutation exists.
    """
    if a.n != b.n:
        raise QuiverError(f"vertex counts differ: {a.n} vs {b.n}")
    n = a.n
    ba, bb = a.quiver.b, b.quiver.b

    def frozen_row(mat: Matrix, i: int) -> tuple[int, ...]:
        return tuple(mat[i][n + j] for j in range(n))

    def row_multiset(mat: Matrix, i: int) -> tuple[int, ...]:
        return tuple(sorted(mat[i][j] for j in range(n)))

    a_frozen = [frozen_row(ba, i) for i in range(n)]
    a_mult = [row_multiset(ba, i) for i in range(n)]
    candidates: list[list[int]] = []
    for i in range(n):
        fr, ms = frozen_row(bb, i), row_multiset(bb, i)
        cand = [t for t in range(n) if a_frozen[t] == fr and a_mult[t] == ms]
        if not cand:
            return None
        candidates.append(cand)

    images = [0] * n
    used = [False] * n

    def backtrack(i: int) -> bool:
        if i == n:
            return True
        for t in candidates[i]:
            if used[t]:
                continue
            ok = True
            for j in range(i):
                tj = images[j]
                if ba[t][tj] != bb[i][j] or ba[tj][t] != bb[j][i]:
                    ok = False
                    break
            if ok:
                images[i] = t
                used[t] = True
                if backtrack(i + 1):
                    return True
                used[t] = False
        return False

    if not backtrack(0):
        return None
    return Permutation(tuple(img + 1 for img in images))


# -- canonical forms ---------------------------------------------------


def _refine(b: Matrix, colors: tuple[int, ...]) -> tuple[int, ...]:
    """Iteratively split color classes by signed-neighborhood signatures."""
    n = len(b)
    while True:
        sig = []
        for i in range(n):
            bi = b[i]
            nb = tuple(sorted((bi[j], colors[j]) for j in range(n) if bi[j]))
            sig.append((colors[i], nb))
        remap = {s: c for c, s in enumerate(sorted(set(sig)))}
        new = tuple(remap[s] for s in sig)
        if new == colors:
            return colors
        colors = new


def _encode(b: Matrix, perm: Sequence[int]) -> bytes:
    if all(-120 <= x <= 120 for row in b for x in row):
        return b"B" + bytes((b[i][j] + 128) for i in perm for j in perm)
    return b"S" + ",".join(str(b[i][j]) for i in perm for j in perm).encode()


def _canonical_key(b: Matrix, init: tuple[int, ...]) -> bytes:
    """Minimal matrix encoding over orderings refined from ``init`` colors.

    Individualization-refinement search: repeatedly split the first
    non-singleton cell by trying each of its members as a distinguished
    vertex; leaves are discrete partitions, whose induced orderings are
    candidate labelings.
    """
    n = len(b)
    best: list[Optional[bytes]] = [None]

    def rec(colors: tuple[int, ...]) -> None:
        cells: dict[int, list[int]] = {}
        for i, c in enumerate(colors):
            cells.setdefault(c, []).append(i)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            perm = sorted(range(n), key=colors.__getitem__)
            enc = _encode(b, perm)
            if best[0] is None or enc < best[0]:
                best[0] = enc
            return
        nxt = max(colors) + 1
        for vtx in target:
            split = list(colors)
            split[vtx] = nxt
            rec(_refine(b, tuple(split)))

    rec(_refine(b, init))
    assert best[0] is not None
    return best[0]


def canonical_form(q: Quiver) -> bytes:
    """Canonical key of an unframed quiver under arbitrary relabeling.

    Keys are equal exactly when the quivers are isomorphic.
    """
    if q.is_framed():
        raise QuiverError("canonical_form expects an unframed quiver")
    return _canonical_key(q.b, (0,) * q.n)


def canonical_framed_key(state: MutationState) -> bytes:
    """Canonical key of a framed quiver under frozen isomorphism.

    Mutable vertices may be permuted, frozen vertices stay pointwise
    fixed (each gets its own starting color).
    """
    q = state.quiver
    init = tuple([0] * q.n + list(range(1, q.f + 1)))
    return _canonical_key(q.b, init)
