"""Reference posets: crystallographic root posets, dihedral posets, fixtures."""

from __future__ import annotations

import hashlib
import json
from functools import lru_cache
from importlib import resources

from .poset import GradedPoset, build_poset, disjoint_union, loads

# Cartan matrices a[i][j] = <alpha_i^vee, alpha_j>, Bourbaki numbering.


def cartan_matrix(family: str, n: int) -> list[list[int]]:
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    if family in ("A", "B", "C", "D", "F", "G"):
        for i in range(n - 1):
            a[i][i + 1] = a[i + 1][i] = -1
    else:
        raise ValueError(f"unsupported Cartan family {family}")
    if family == "B" and n >= 2:
        a[n - 1][n - 2] = -2
    elif family == "C" and n >= 2:
        a[n - 2][n - 1] = -2
    elif family == "D":
        if n < 4:
            raise ValueError("D_n needs n >= 4")
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
    elif family == "F":
        if n != 4:
            raise ValueError("F_n needs n = 4")
        a[2][1] = -2
    elif family == "G":
        if n != 2:
            raise ValueError("G_n needs n = 2")
        a[1][0] = -3
    return a


def positive_roots(cartan: list[list[int]]) -> list[tuple[int, ...]]:
    """Positive roots in simple-root coordinates, by height then descending coordinates."""
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = set()
        for beta in layer:
            for i in range(n):
                pairing = sum(beta[j] * cartan[i][j] for j in range(n))
                p = 0
                probe = list(beta)
                while True:
                    probe[i] -= 1
                    if tuple(probe) not in roots:
                        break
                    p += 1
                if p - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    nxt.add(tuple(up))
        roots |= nxt
        layer = sorted(nxt)
    return sorted(roots, key=lambda r: (sum(r), [-c for c in r]))


def root_poset_from_cartan(cartan: list[list[int]]) -> GradedPoset:
    """Root poset: beta <= beta' iff beta' - beta is a nonnegative combination of simples.

    The minimal elements 1..n are the simple roots in Cartan-matrix order.
    """
    roots = positive_roots(cartan)
    index = {r: k + 1 for k, r in enumerate(roots)}
    pairs = []
    for r in roots:
        for i in range(len(cartan)):
            up = list(r)
            up[i] += 1
            if tuple(up) in index:
                pairs.append((index[r], index[tuple(up)]))
    return build_poset(len(roots), pairs)


def crystallographic_root_poset(name: str) -> GradedPoset:
    """Root poset for an irreducible crystallographic type such as ``"B4"``."""
    family, n = name[0], int(name[1:])
    return root_poset_from_cartan(cartan_matrix(family, n))


def dihedral_poset(m: int) -> GradedPoset:
    """Two minimal elements both covered by 3, then a chain up to m."""
    if m < 2:
        raise ValueError("I2(m) needs m >= 2")
    if m == 2:
        return build_poset(2, [])
    return build_poset(m, [(1, 3), (2, 3)] + [(i, i + 1) for i in range(3, m)])


# -- bundled data -----------------------------------------------------------------

DATA_FILES = (
    "profiles.json",
    "h3_fig2.poset",
    "h4_fig6_1.poset",
    "h4_fig6_2.poset",
    "h4_fig6_3.poset",
    "h4_fig6_4.poset",
    "h4_skeleton.json",
)


def _data(name: str) -> bytes:
    return resources.files("rootposet").joinpath("data", name).read_bytes()


def data_checksums() -> dict[str, str]:
    return {name: hashlib.sha256(_data(name)).hexdigest() for name in DATA_FILES}


def verify_data() -> list[str]:
    """Names of bundled data files whose SHA-256 differs from ``SHA256SUMS``."""
    expected = {}
    for line in _data("SHA256SUMS").decode().splitlines():
        digest, name = line.split()
        expected[name] = digest
    actual = data_checksums()
    return [name for name in DATA_FILES if expected.get(name) != actual[name]]


def load_json(name: str):
    return json.loads(_data(name))


@lru_cache(maxsize=None)
def h3_fixture() -> GradedPoset:
    return loads(_data("h3_fig2.poset").decode())


@lru_cache(maxsize=None)
def h4_fixtures() -> tuple[GradedPoset, ...]:
    return tuple(loads(_data(f"h4_fig6_{k}.poset").decode()) for k in range(1, 5))


# -- Coxeter diagrams ---------------------------------------------------------------


def component_poset(nodes: list[int], edges: dict[frozenset, int]) -> GradedPoset:
    """Root poset of a connected Coxeter diagram on ``nodes`` (path diagrams only).

    ``edges`` maps node pairs to their label (3 for a plain edge).
    """
    k = len(nodes)
    if k == 1:
        return build_poset(1, [])
    if k == 2:
        return dihedral_poset(edges[frozenset(nodes)])
    labels = sorted(edges[e] for e in edges if e <= set(nodes))
    if labels == [3] * (k - 1):
        return crystallographic_root_poset(f"A{k}")
    if k == 3 and labels == [3, 5]:
        return h3_fixture()
    if k == 4 and labels == [3, 3, 5]:
        raise ValueError("H4 has no reference root poset")
    if labels == [3] * (k - 2) + [4]:
        return crystallographic_root_poset(f"B{k}")
    raise ValueError(f"no reference poset for diagram with labels {labels}")


def diagram_poset(nodes: list[int], edge_list: list[tuple[int, int, int]]) -> GradedPoset:
    """Disjoint union of the component root posets of the subdiagram on ``nodes``."""
    keep = set(nodes)
    edges = {frozenset((a, b)): m for a, b, m in edge_list if a in keep and b in keep}
    seen: set[int] = set()
    parts = []
    for start in sorted(keep):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        for v in comp:
            for e in edges:
                if v in e:
                    (w,) = e - {v}
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
        parts.append(component_poset(sorted(comp), edges))
    return disjoint_union(*parts)
