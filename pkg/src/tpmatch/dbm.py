"""Difference bound matrices over integer constants.

A bound ``x_i - x_j < c`` or ``x_i - x_j <= c`` is packed into one integer
``2*c + bit`` where ``bit`` is 1 for non-strict and 0 for strict, so that the
natural integer order on the packed form is the tightness order on bounds.
``INF`` stands for the absent bound.  Index 0 is the constant-zero reference
clock; clock ``k`` of the automaton lives at index ``k + 1``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

INF = 1 << 60
LE_ZERO = 1
LT_ZERO = 0

# guard operators, shared with the timed model
LT, LE, GT, GE = "<", "<=", ">", ">="
OPERATORS = (LT, LE, GT, GE)


def bound(c: int, strict: bool) -> int:
    return 2 * c + (0 if strict else 1)


def bound_value(b: int) -> int:
    return b >> 1


def bound_strict(b: int) -> bool:
    return (b & 1) == 0


def add(a: int, b: int) -> int:
    if a >= INF or b >= INF:
        return INF
    # strict + anything is strict; non-strict + non-strict stays non-strict
    return a + b - ((a | b) & 1)


def format_bound(b: int) -> str:
    if b >= INF:
        return "<inf"
    return ("<" if bound_strict(b) else "<=") + str(bound_value(b))


class Dbm:
    """An immutable, always-canonical zone.

    Operations return new instances.  An empty zone is represented by a
    matrix whose ``(0, 0)`` entry is negative; :meth:`is_empty` checks it.
    """

    __slots__ = ("dim", "m", "_hash")

    def __init__(self, dim: int, entries: Sequence[int], *, closed: bool = False):
        self.dim = dim
        if closed:
            self.m = tuple(entries)
        else:
            self.m = _close(dim, list(entries))
        self._hash = hash((dim, self.m))

    # constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nclocks: int) -> Dbm:
        dim = nclocks + 1
        return cls(dim, [LE_ZERO] * (dim * dim), closed=True)

    @classmethod
    def universe(cls, nclocks: int) -> Dbm:
        dim = nclocks + 1
        m = [INF] * (dim * dim)
        for i in range(dim):
            m[i * dim + i] = LE_ZERO
            m[i] = LE_ZERO  # 0 - x_i <= 0
        return cls(dim, m, closed=True)

    @classmethod
    def from_constraints(
        cls, nclocks: int, atoms: Iterable[tuple[int, int, int]]
    ) -> Dbm:
        """Build from ``(i, j, packed bound)`` triples meaning ``x_i - x_j``."""
        base = list(cls.universe(nclocks).m)
        dim = nclocks + 1
        for i, j, b in atoms:
            k = i * dim + j
            if b < base[k]:
                base[k] = b
        return cls(dim, base)

    # queries ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dbm):
            return NotImplemented
        return self.dim == other.dim and self.m == other.m

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Dbm({self.to_text()})"

    def get(self, i: int, j: int) -> int:
        return self.m[i * self.dim + j]

    def is_empty(self) -> bool:
        return self.m[0] < LE_ZERO

    def includes(self, other: Dbm) -> bool:
        """True when ``other`` is a subset of ``self``."""
        if other.is_empty():
            return True
        if self.is_empty():
            return False
        return all(b <= a for a, b in zip(self.m, other.m))

    def contains_point(self, values: Sequence[float]) -> bool:
        """Membership of a clock valuation (one value per clock)."""
        if self.is_empty():
            return False
        dim = self.dim
        v = (0.0, *values)
        for i in range(dim):
            for j in range(dim):
                b = self.m[i * dim + j]
                if i == j or b >= INF:
                    continue
                diff = v[i] - v[j]
                c = bound_value(b)
                if diff > c or (diff == c and bound_strict(b)):
                    return False
        return True

    # zone algebra -------------------------------------------------------

    def elapse(self) -> Dbm:
        if self.is_empty():
            return self
        dim = self.dim
        m = list(self.m)
        for i in range(1, dim):
            m[i * dim] = INF
        return Dbm(dim, m, closed=True)

    def constrain(self, i: int, j: int, b: int) -> Dbm:
        if self.is_empty() or b >= self.m[i * self.dim + j]:
            return self
        m = list(self.m)
        m[i * self.dim + j] = b
        return Dbm(self.dim, _close_incremental(self.dim, m, i, j))

    def and_guard(self, atoms: Iterable[tuple[int, str, int]]) -> Dbm:
        """Intersect with clock atoms ``(clock index, op, constant)``.

        Clock indices are zero-based automaton clocks.
        """
        z = self
        for clock, op, c in atoms:
            x = clock + 1
            if op == LT:
                z = z.constrain(x, 0, bound(c, True))
            elif op == LE:
                z = z.constrain(x, 0, bound(c, False))
            elif op == GT:
                z = z.constrain(0, x, bound(-c, True))
            elif op == GE:
                z = z.constrain(0, x, bound(-c, False))
            else:
                raise ValueError(f"unknown operator {op!r}")
            if z.is_empty():
                break
        return z

    def reset(self, clocks: Iterable[int]) -> Dbm:
        if self.is_empty():
            return self
        dim = self.dim
        m = list(self.m)
        for clock in clocks:
            x = clock + 1
            for j in range(dim):
                m[x * dim + j] = m[j]  # row of the reference clock
                m[j * dim + x] = m[j * dim]
            m[x * dim + x] = LE_ZERO
        return Dbm(dim, m, closed=True)

    def free(self, clocks: Iterable[int]) -> Dbm:
        """Drop every constraint on the given clocks except non-negativity."""
        if self.is_empty():
            return self
        dim = self.dim
        m = list(self.m)
        for clock in clocks:
            x = clock + 1
            for j in range(dim):
                if j != x:
                    m[x * dim + j] = INF
                    m[j * dim + x] = m[j * dim]
            m[x] = LE_ZERO
        return Dbm(dim, m, closed=True)

    def extrapolate(self, bound_max: int) -> Dbm:
        """Classic M-extrapolation followed by re-closure."""
        if self.is_empty():
            return self
        dim = self.dim
        hi = bound(bound_max, False)
        lo = bound(-bound_max, True)
        m = list(self.m)
        changed = False
        for i in range(dim):
            for j in range(dim):
                if i == j:
                    continue
                k = i * dim + j
                b = m[k]
                if b >= INF:
                    continue
                if b > hi:
                    m[k] = INF
                    changed = True
                elif b < lo:
                    m[k] = lo
                    changed = True
        if not changed:
            return self
        return Dbm(dim, m)

    # text ---------------------------------------------------------------

    def to_text(self, names: Sequence[str] | None = None) -> str:
        """Inequality text such as ``x-0<1 & 0-x<=0``; empty zones read ``false``."""
        if self.is_empty():
            return "false"
        dim = self.dim
        labels = ["0", *(names or [f"x{k}" for k in range(dim - 1)])]
        parts = []
        # upper bounds first, then lower bounds (rows of the reference clock)
        for i in (*range(1, dim), 0):
            for j in range(dim):
                b = self.m[i * dim + j]
                if i == j or b >= INF:
                    continue
                parts.append(f"{labels[i]}-{labels[j]}{format_bound(b)}")
        return " & ".join(parts) if parts else "true"


def _close(dim: int, m: list[int]) -> tuple[int, ...]:
    for k in range(dim):
        for i in range(dim):
            dik = m[i * dim + k]
            if dik >= INF:
                continue
            row = i * dim
            krow = k * dim
            for j in range(dim):
                s = add(dik, m[krow + j])
                if s < m[row + j]:
                    m[row + j] = s
    return _finish(dim, m)


def _close_incremental(dim: int, m: list[int], a: int, b: int) -> tuple[int, ...]:
    # only paths through the tightened edge a->b can improve
    ab = m[a * dim + b]
    if add(ab, m[b * dim + a]) < LE_ZERO:
        return _empty(dim)
    for i in range(dim):
        ia = m[i * dim + a]
        if ia >= INF:
            continue
        iab = add(ia, ab)
        row = i * dim
        brow = b * dim
        for j in range(dim):
            s = add(iab, m[brow + j])
            if s < m[row + j]:
                m[row + j] = s
    return _finish(dim, m)


def _finish(dim: int, m: list[int]) -> tuple[int, ...]:
    for i in range(dim):
        if m[i * dim + i] < LE_ZERO:
            return _empty(dim)
    return tuple(m)


def _empty(dim: int) -> tuple[int, ...]:
    # one representation for every empty zone, so equality and hashing agree
    return (LT_ZERO,) * (dim * dim)
