"""The H3 root poset as restricted roots of D6.

Positive D6 roots are written in the basis v1..v6 and converted to simple-root
coordinates by ``epsilon``.  ``gamma`` folds six integer coordinates into three
golden integers a + b*tau.  Positive roots come in pairs whose images differ
by a factor tau; keeping the lexicographically greater root of each pair and
ordering the images by golden-nonnegative differences gives the H3 poset.

The pairing of coordinates inside ``gamma`` is ``WORKING_PAIRING``: with the
naive consecutive pairing the fifteen listed pairs are not related by tau.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .poset import GradedPoset, build_poset


@dataclass(frozen=True)
class GoldenInt:
    """a + b*tau with tau^2 = tau + 1."""

    a: int = 0
    b: int = 0

    def __add__(self, other: GoldenInt) -> GoldenInt:
        return GoldenInt(self.a + other.a, self.b + other.b)

    def __sub__(self, other: GoldenInt) -> GoldenInt:
        return GoldenInt(self.a - other.a, self.b - other.b)

    def __neg__(self) -> GoldenInt:
        return GoldenInt(-self.a, -self.b)

    def __mul__(self, other: GoldenInt) -> GoldenInt:
        a, b, c, d = self.a, self.b, other.a, other.b
        return GoldenInt(a * c + b * d, a * d + b * c + b * d)

    def __float__(self) -> float:
        return self.a + self.b * TAU_FLOAT

    def is_natural(self) -> bool:
        """Membership in N + N*tau."""
        return self.a >= 0 and self.b >= 0

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        tau = "t" if self.b == 1 else f"{self.b}t"
        return tau if self.a == 0 else f"{self.a}+{tau}"


TAU = GoldenInt(0, 1)
TAU_FLOAT = (1 + 5**0.5) / 2

GoldenVector = tuple[GoldenInt, GoldenInt, GoldenInt]

# index pairs (real part, tau part) into simple-root coordinates
LITERAL_PAIRING = ((0, 1), (2, 3), (4, 5))
WORKING_PAIRING = ((0, 5), (1, 3), (4, 2))


def simple_roots() -> list[tuple[int, ...]]:
    """alpha_i = v_i - v_{i+1} for i <= 5, alpha_6 = v_5 + v_6, in v-coordinates."""
    out = []
    for i in range(5):
        v = [0] * 6
        v[i], v[i + 1] = 1, -1
        out.append(tuple(v))
    out.append((0, 0, 0, 0, 1, 1))
    return out


def _invert(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _epsilon_matrix() -> list[list[Fraction]]:
    # columns of S are the simple roots; alpha-coordinates of x are S^{-1} x
    s = simple_roots()
    cols = [[Fraction(s[j][i]) for j in range(6)] for i in range(6)]
    return _invert(cols)


_EPS = _epsilon_matrix()


def epsilon(v: tuple[int, ...]) -> tuple[int, ...]:
    """v-coordinates to simple-root coordinates; only lattice vectors have integer images."""
    out = [sum(_EPS[i][j] * v[j] for j in range(6)) for i in range(6)]
    if any(x.denominator != 1 for x in out):
        raise ValueError(f"{v} is not in the root lattice")
    return tuple(int(x) for x in out)


def gamma(alpha: tuple[int, ...], pairing=WORKING_PAIRING) -> GoldenVector:
    return tuple(GoldenInt(alpha[i], alpha[j]) for i, j in pairing)


def tau_times(x: GoldenVector) -> GoldenVector:
    return tuple(TAU * c for c in x)


@dataclass(frozen=True)
class D6Root:
    v_coords: tuple[int, ...]
    alpha_coords: tuple[int, ...]

    @property
    def positive(self) -> bool:
        return all(c >= 0 for c in self.alpha_coords)


def d6_positive_roots() -> list[D6Root]:
    out = []
    for i, j in combinations(range(6), 2):
        for sign in (-1, 1):
            v = [0] * 6
            v[i], v[j] = 1, sign
            out.append(D6Root(tuple(v), epsilon(tuple(v))))
    out.sort(key=lambda r: (sum(r.alpha_coords), tuple(-c for c in r.v_coords)))
    return out


# Rows of the D6 pair table, left column first.
FIG3_ROWS: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] = (
    ((0, 0, 0, 0, 1, 1), (1, -1, 0, 0, 0, 0)),
    ((0, 0, 0, 1, -1, 0), (0, 1, -1, 0, 0, 0)),
    ((0, 0, 0, 1, 0, 1), (1, 0, -1, 0, 0, 0)),
    ((0, 0, 1, -1, 0, 0), (0, 0, 0, 0, 1, -1)),
    ((0, 0, 1, 0, 0, -1), (0, 1, 0, -1, 0, 0)),
    ((0, 0, 1, 0, 1, 0), (1, 0, 0, -1, 0, 0)),
    ((0, 1, 0, 0, -1, 0), (0, 0, 0, 1, 0, -1)),
    ((0, 1, 0, 0, 0, -1), (0, 0, 1, 0, -1, 0)),
    ((0, 1, 0, 1, 0, 0), (1, 0, 0, 0, -1, 0)),
    ((0, 1, 1, 0, 0, 0), (1, 0, 0, 0, 0, -1)),
    ((1, 0, 0, 0, 0, 1), (0, 0, 0, 1, 1, 0)),
    ((1, 0, 0, 0, 1, 0), (0, 0, 1, 0, 0, 1)),
    ((1, 0, 0, 1, 0, 0), (0, 1, 0, 0, 0, 1)),
    ((1, 0, 1, 0, 0, 0), (0, 1, 0, 0, 1, 0)),
    ((1, 1, 0, 0, 0, 0), (0, 0, 1, 1, 0, 0)),
)


def image(root: D6Root | tuple[int, ...], pairing=WORKING_PAIRING) -> GoldenVector:
    v = root.v_coords if isinstance(root, D6Root) else root
    return gamma(epsilon(v), pairing)


def tau_pairs(pairing=WORKING_PAIRING) -> list[tuple[D6Root, D6Root]]:
    """Match the 30 positive roots into pairs (alpha, beta) with image(alpha) = tau * image(beta).

    Pairs are listed by the v-coordinates of alpha in increasing order, which
    is the row order of the reference table.
    """
    roots = d6_positive_roots()
    by_image = {image(r, pairing): r for r in roots}
    if len(by_image) != len(roots):
        raise ValueError("images of positive roots are not distinct")
    pairs = []
    used: set[tuple[int, ...]] = set()
    for r in roots:
        partner = by_image.get(tau_times(image(r, pairing)))
        if partner is not None:
            pairs.append((partner, r))
            used.update((r.v_coords, partner.v_coords))
    if len(pairs) != 15 or len(used) != 30:
        raise ValueError("positive roots are not perfectly matched by tau")
    pairs.sort(key=lambda p: p[0].v_coords)
    return pairs


def sigma_choice(pair: tuple[D6Root, D6Root]) -> D6Root:
    """The lexicographically greater root of a pair, in v-coordinates."""
    return max(pair, key=lambda r: r.v_coords)


def golden_leq(x: GoldenVector, y: GoldenVector) -> bool:
    return all((b - a).is_natural() for a, b in zip(x, y))


def build_h3_poset(pairing=WORKING_PAIRING) -> GradedPoset:
    """Order the chosen images by golden-nonnegative differences."""
    chosen = [image(sigma_choice(p), pairing) for p in tau_pairs(pairing)]
    relation = [
        (i + 1, j + 1)
        for i, x in enumerate(chosen)
        for j, y in enumerate(chosen)
        if i != j and golden_leq(x, y)
    ]
    return build_poset(len(chosen), relation)


def trace_table(pairing=WORKING_PAIRING) -> list[dict]:
    rows = []
    for alpha, beta in tau_pairs(pairing):
        pick = sigma_choice((alpha, beta))
        rows.append(
            {
                "alpha": alpha.v_coords,
                "beta": beta.v_coords,
                "alpha_simple": alpha.alpha_coords,
                "beta_simple": beta.alpha_coords,
                "beta_image": tuple(str(c) for c in image(beta, pairing)),
                "sigma": "tau" if pick is alpha else "1",
                "chosen_image": tuple(str(c) for c in image(pick, pairing)),
            }
        )
    return rows


def format_trace(rows: list[dict]) -> str:
    def vec(t):
        return "(" + ",".join(str(c) for c in t) + ")"

    lines = []
    for r in rows:
        lines.append(
            f"{vec(r['alpha']):<20} {vec(r['beta']):<20} sigma={r['sigma']:<3} image={vec(r['chosen_image'])}"
        )
    return "\n".join(lines)
