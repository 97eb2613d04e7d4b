"""Exact q and q,t polynomial arithmetic for bracket expansions.

``QPoly`` is a dense univariate polynomial in q; ``QTPoly`` a sparse bivariate
polynomial in q and t.  Coefficients are Python ints throughout.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence


class QPoly:
    """Dense polynomial in q; ``coeffs[i]`` is the coefficient of q^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = c

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> QPoly:
        return cls([0] * exp + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, q):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def __add__(self, other: QPoly) -> QPoly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly(out)

    def __sub__(self, other: QPoly) -> QPoly:
        return self + QPoly([-c for c in other.coeffs])

    def __mul__(self, other: QPoly) -> QPoly:
        if not self.coeffs or not other.coeffs:
            return QPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPoly(out)

    def divmod(self, other: QPoly) -> tuple[QPoly, QPoly]:
        """Exact division by a divisor with leading coefficient +-1."""
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        lead = other.coeffs[-1]
        if lead not in (1, -1):
            raise ValueError("divisor must be monic up to sign")
        rem = list(self.coeffs)
        dq = other.degree
        quot = [0] * max(len(rem) - dq, 0)
        for k in range(len(rem) - dq - 1, -1, -1):
            c = rem[k + dq] * lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return QPoly(quot), QPoly(rem)

    def shift(self, k: int) -> QPoly:
        return QPoly([0] * k + self.coeffs)

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = QPoly([other])
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(self.coeffs))

    def __repr__(self) -> str:
        return f"QPoly({self})"

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}{mono}")
        return " + ".join(terms) if terms else "0"


class QTPoly:
    """Sparse polynomial in q, t keyed by exponent pairs (q-exponent, t-exponent)."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int], int] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def monomial(cls, i: int, j: int, coeff: int = 1) -> QTPoly:
        return cls({(i, j): coeff})

    def __add__(self, other: QTPoly) -> QTPoly:
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return QTPoly(out)

    def __sub__(self, other: QTPoly) -> QTPoly:
        return self + QTPoly({k: -v for k, v in other.terms.items()})

    def __mul__(self, other: QTPoly) -> QTPoly:
        out: dict[tuple[int, int], int] = {}
        for (a, b), u in self.terms.items():
            for (c, d), v in other.terms.items():
                key = (a + c, b + d)
                out[key] = out.get(key, 0) + u * v
        return QTPoly(out)

    def __call__(self, q, t):
        return sum(c * q**i * t**j for (i, j), c in self.terms.items())

    def swap(self) -> QTPoly:
        return QTPoly({(j, i): c for (i, j), c in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = QTPoly({(0, 0): other})
        if not isinstance(other, QTPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def triples(self) -> list[tuple[int, int, int]]:
        """(q-exponent, t-exponent, coefficient) in sorted order."""
        return sorted((i, j, c) for (i, j), c in self.terms.items())

    def __repr__(self) -> str:
        return f"QTPoly({self.triples()})"


ONE = QTPoly({(0, 0): 1})


@lru_cache(maxsize=None)
def qt_bracket(n: int) -> QTPoly:
    """[n]_{q,t} = q^{n-1} + q^{n-2} t + ... + t^{n-1}."""
    if n < 1:
        raise ValueError("bracket length must be >= 1")
    return QTPoly({(n - 1 - j, j): 1 for j in range(n)})


def q_bracket(n: int, step: int = 1) -> QPoly:
    """[n]_q, or [n]_{q^step} = 1 + q^step + ... + q^{step (n-1)}."""
    if n < 1:
        raise ValueError("bracket length must be >= 1")
    out = [0] * (step * (n - 1) + 1)
    for k in range(n):
        out[step * k] = 1
    return QPoly(out)


def eval_t1(p: QTPoly) -> QPoly:
    out: dict[int, int] = {}
    for (i, _), c in p.terms.items():
        out[i] = out.get(i, 0) + c
    deg = max(out, default=-1)
    return QPoly([out.get(k, 0) for k in range(deg + 1)])


def eval_t_qinv_shift(p: QTPoly, shift: int) -> QPoly:
    """q^shift * p(q, 1/q)."""
    out: dict[int, int] = {}
    for (i, j), c in p.terms.items():
        e = shift + i - j
        out[e] = out.get(e, 0) + c
    out = {e: c for e, c in out.items() if c}
    if out and min(out) < 0:
        raise ValueError(f"shift {shift} leaves a negative exponent {min(out)}")
    deg = max(out, default=-1)
    return QPoly([out.get(k, 0) for k in range(deg + 1)])


# -- H4 data ----------------------------------------------------------------------

H4_DEGREES = (2, 12, 20, 30)
H4_COXETER = 30


def h4_product_formula() -> QPoly:
    """[32]_q [42]_q [50]_q [60]_q / ([2]_q [12]_q [20]_q [30]_q), divided exactly."""
    num = QPoly([1])
    den = QPoly([1])
    for d in H4_DEGREES:
        num = num * q_bracket(d + H4_COXETER)
        den = den * q_bracket(d)
    quot, rem = num.divmod(den)
    if rem.coeffs:
        raise ArithmeticError("product formula division left a remainder")
    return quot


def decompose_q2_brackets(u: QPoly) -> list[tuple[int, int]]:
    """Write u as a sum of q^a [b]_{q^2} with a increasing and b decreasing.

    Greedy: take the smallest exponent still present and the longest bracket
    [b]_{q^2} that fits under the remaining coefficients.  Identical summands
    may repeat at the end.  Raises ValueError when the greedy summands violate
    the ordering or coefficients go negative.
    """
    rem = list(u.coeffs)
    if any(c < 0 for c in rem):
        raise ValueError("negative coefficient")
    out: list[tuple[int, int]] = []
    while any(rem):
        a = next(i for i, c in enumerate(rem) if c)
        b = 0
        while a + 2 * b < len(rem) and rem[a + 2 * b] > 0:
            b += 1
        for k in range(b):
            rem[a + 2 * k] -= 1
        if out:
            pa, pb = out[-1]
            if (a, b) != (pa, pb) and not (a > pa and b < pb):
                raise ValueError(f"summand q^{a}[{b}] breaks the ordering after q^{pa}[{pb}]")
        out.append((a, b))
    return out


def expand_q2_brackets(parts: Sequence[tuple[int, int]]) -> QPoly:
    acc = QPoly()
    for a, b in parts:
        acc = acc + q_bracket(b, 2).shift(a)
    return acc


@dataclass(frozen=True)
class HilbertCandidate:
    """Sum of q^i t^i [n]_{q,t} over summands ``(i, n)``; repeats mean multiplicity."""

    summands: tuple[tuple[int, int], ...]

    def expand(self) -> QTPoly:
        acc = QTPoly()
        for i, n in self.summands:
            acc = acc + QTPoly.monomial(i, i) * qt_bracket(n)
        return acc

    def eval_t1(self) -> QPoly:
        acc = [0] * (max(i + n for i, n in self.summands))
        for i, n in self.summands:
            for k in range(i, i + n):
                acc[k] += 1
        return QPoly(acc)

    def multiplicities(self) -> dict[tuple[int, int], int]:
        """a_{i,n} as a mapping (shift, length) -> count."""
        return dict(Counter(self.summands))

    def __str__(self) -> str:
        return format_brackets(self.summands)


def format_brackets(summands: Sequence[tuple[int, int]]) -> str:
    parts = []
    for i, n in summands:
        pre = "" if i == 0 else ("qt" if i == 1 else f"q^{i}t^{i}")
        if n == 1:
            parts.append(pre or "1")
        else:
            parts.append(f"{pre}[{n}]")
    return " + ".join(parts)


def conjecture_h4_polynomial() -> HilbertCandidate:
    """The conjectured H4 Hilbert series in bracket form."""
    return HilbertCandidate(((0, 61), (1, 49), (1, 41), (2, 37), (1, 31), (3, 25), (2, 21), (4, 13), (6, 1), (10, 1)))


H4_LOW_WINDOW = (1, 4, 6, 7, 8, 8, 9, 8, 8, 8, 9)  # t=1 coefficients of q^0..q^10
H4_HIGH_WINDOW = {49: 2, **{e: 1 for e in range(50, 61)}}  # t=1 coefficients of q^49..q^60


def enumerate_hilbert_candidates(
    low: Sequence[int] = H4_LOW_WINDOW,
    high: dict[int, int] | None = None,
) -> list[HilbertCandidate]:
    """All bracket-form candidates compatible with the H4 constraints.

    Bracket lengths are read off the q^2-bracket decomposition of the product
    formula; the shifts q^i t^i cancel at t = 1/q, so only the shifts are free.
    A candidate must match the given t=1 coefficients in the low window
    (q^0.. upward) and the high window (explicit exponents).  Summands are
    listed with lengths decreasing and, for equal lengths, shifts increasing.
    """
    if high is None:
        high = H4_HIGH_WINDOW
    lengths = [b for _, b in decompose_q2_brackets(h4_product_formula())]
    top = max(high) if high else 0
    target = {e: low[e] for e in range(len(low))}
    target.update(high)

    results: list[tuple[tuple[int, int], ...]] = []
    remaining = Counter(lengths)

    def starts(options: list[int], need: int | None):
        # sub-multisets of the remaining lengths (size ``need`` if given)
        if not options:
            if need in (None, 0):
                yield []
            return
        b, rest = options[0], options[1:]
        for c in range(remaining[b] + 1):
            if need is not None and c > need:
                break
            for tail in starts(rest, None if need is None else need - c):
                yield [b] * c + tail

    def sweep(e: int, ends: list[int], chosen: list[tuple[int, int]]) -> None:
        left = sum(remaining.values())
        if e > top:
            if not left:
                results.append(tuple(sorted(chosen, key=lambda sb: (-sb[1], sb[0]))))
            return
        alive = sum(1 for end in ends if end >= e)
        need = None
        if e in target:
            need = target[e] - alive
            if need < 0 or need > left:
                return
        options = sorted((b for b in remaining if remaining[b] and b <= top - e + 1), reverse=True)
        for group in starts(options, need):
            for b in group:
                remaining[b] -= 1
            sweep(e + 1, [end for end in ends if end > e] + [e + b - 1 for b in group],
                  chosen + [(e, b) for b in group])
            for b in group:
                remaining[b] += 1

    sweep(0, [], [])
    return [HilbertCandidate(r) for r in sorted(results)]
