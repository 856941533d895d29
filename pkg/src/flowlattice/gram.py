"""Taxonomy of symmetric integer matrices with positive diagonal.

Support statistics of subset families, triple classification, the
derived set functions on the subset lattice, the nonnegativity/positivity
flags, the canonical {0,1} skeleton, signing search, and the decision of
realizability as U^T.U for a totally unimodular U.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from .errors import BoundExceededError, DimensionError, FormatError
from .intmat import (
    IntegerMatrix,
    _env_bound,
    is_totally_unimodular,
    parse_matrix,
    sharp,
)

DEFAULT_SUBSET_BOUND = 20


def subset_bound(override: int | None = None) -> int:
    if override is not None:
        return override
    return _env_bound("FLOWLAT_SUBSET_BOUND", DEFAULT_SUBSET_BOUND)


@dataclass(frozen=True)
class GramMatrix:
    """Symmetric integer matrix with positive diagonal entries."""

    mat: IntegerMatrix

    def __post_init__(self):
        if not self.mat.is_square:
            raise DimensionError("Gram matrix must be square")
        e = self.mat.entries
        for i in range(self.order):
            if e[i][i] <= 0:
                raise FormatError(f"diagonal entry a[{i}][{i}] = {e[i][i]} is not positive")
            for j in range(i):
                if e[i][j] != e[j][i]:
                    raise FormatError(f"asymmetry at ({i},{j})")

    @staticmethod
    def from_rows(rows) -> "GramMatrix":
        return GramMatrix(IntegerMatrix.from_rows(rows))

    @property
    def order(self) -> int:
        return self.mat.rows

    def entry(self, i: int, j: int) -> int:
        return self.mat.entries[i][j]

    def text(self) -> str:
        body = self.mat.text().split("\n", 1)[1]
        return f"gram {self.order}\n" + body


def parse_gram(text: str) -> GramMatrix:
    """Gram file: line "gram s" then s rows of s integers."""
    lines = []
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].strip()
        if ln:
            lines.append(ln)
    if not lines or lines[0].split()[0] != "gram":
        raise FormatError("gram file must start with 'gram s'")
    head = lines[0].split()
    if len(head) != 2:
        raise FormatError("gram header must be 'gram s'")
    s = int(head[1])
    mat = parse_matrix(f"{s} {s}\n" + "\n".join(lines[1:]))
    return GramMatrix(mat)


@dataclass(frozen=True)
class SupportFamily:
    """Subsets C_1..C_s of a ground set {0..ground_size-1}, as bitmasks."""

    ground_size: int
    members: tuple[int, ...]

    @staticmethod
    def from_sets(ground_size, sets) -> "SupportFamily":
        masks = []
        for s in sets:
            mask = 0
            for e in s:
                if not 0 <= e < ground_size:
                    raise DimensionError(f"element {e} outside ground set")
                mask |= 1 << e
            masks.append(mask)
        return SupportFamily(ground_size, tuple(masks))

    @property
    def count(self) -> int:
        return len(self.members)


def phi_gamma(family: SupportFamily, subset) -> tuple[int, int]:
    """Intersection size and exact-membership count for a subset of indices.

    The exact count is computed twice -- by the alternating sum over
    supersets and by direct counting -- and the two must agree.
    """
    idx = sorted(set(subset))
    s = family.count
    full = (1 << family.ground_size) - 1

    def phi_of(index_set):
        inter = full
        for i in index_set:
            inter &= family.members[i]
        return bin(inter).count("1")

    phi = phi_of(idx)
    rest = [i for i in range(s) if i not in set(idx)]
    gamma_alt = 0
    for k in range(len(rest) + 1):
        for extra in itertools.combinations(rest, k):
            gamma_alt += (-1) ** k * phi_of(idx + list(extra))
    # direct count: elements lying in exactly the C_i with i in the subset
    target = 0
    for i in idx:
        target |= 1 << i
    gamma_direct = 0
    for e in range(family.ground_size):
        membership = 0
        for i in range(s):
            if family.members[i] >> e & 1:
                membership |= 1 << i
        if membership == target:
            gamma_direct += 1
    if gamma_alt != gamma_direct:
        raise AssertionError(
            f"inclusion/exclusion disagrees with direct count: {gamma_alt} != {gamma_direct}"
        )
    return phi, gamma_alt


class TripleSign(Enum):
    POSITIVE = 1
    NULL = 0
    NEGATIVE = -1


def triple_sign(a: GramMatrix, triple) -> TripleSign:
    h, i, j = triple
    if len({h, i, j}) != 3:
        raise DimensionError(f"triple {triple} has repeated indices")
    p = a.entry(h, i) * a.entry(i, j) * a.entry(j, h)
    if p > 0:
        return TripleSign.POSITIVE
    if p < 0:
        return TripleSign.NEGATIVE
    return TripleSign.NULL


def delta(a: GramMatrix) -> tuple[tuple[int, int, int], ...]:
    """All negative triples, ascending."""
    return tuple(
        t for t in itertools.combinations(range(a.order), 3)
        if triple_sign(a, t) is TripleSign.NEGATIVE
    )


def _mask_elements(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def f_value(a: GramMatrix, subset) -> int:
    """The case-split set function on index subsets."""
    idx = sorted(set(subset))
    if not idx:
        return 0
    if len(idx) == 1:
        return a.entry(idx[0], idx[0])
    for t in itertools.combinations(idx, 3):
        if triple_sign(a, t) is TripleSign.NEGATIVE:
            return 0
    return min(abs(a.entry(i, j)) for i, j in itertools.combinations(idx, 2))


def f_table(a: GramMatrix, bound: int | None = None) -> list[int]:
    s = a.order
    b = subset_bound(bound)
    if s > b:
        raise BoundExceededError("matrix order", s, b)
    table = [0] * (1 << s)
    for mask in range(1, 1 << s):
        idx = list(_mask_elements(mask))
        if len(idx) == 1:
            table[mask] = a.entry(idx[0], idx[0])
            continue
        neg = any(
            triple_sign(a, t) is TripleSign.NEGATIVE
            for t in itertools.combinations(idx, 3)
        )
        if neg:
            table[mask] = 0
        else:
            table[mask] = min(
                abs(a.entry(i, j)) for i, j in itertools.combinations(idx, 2)
            )
    return table


def g_table(a: GramMatrix, bound: int | None = None) -> list[int]:
    """Alternating superset sums of the f table, via the subset-lattice transform."""
    s = a.order
    g = f_table(a, bound)
    for i in range(s):
        bit = 1 << i
        for mask in range(1 << s):
            if not mask & bit:
                g[mask] -= g[mask | bit]
    return g


def g_value(a: GramMatrix, subset, bound: int | None = None) -> int:
    idx = set(subset)
    rest = [i for i in range(a.order) if i not in idx]
    total = 0
    for k in range(len(rest) + 1):
        for extra in itertools.combinations(rest, k):
            total += (-1) ** k * f_value(a, list(idx) + list(extra))
    return total


@dataclass(frozen=True)
class Classification:
    g_nonnegative: bool
    g_positive: bool
    witness: tuple[int, ...] | None = None  # subset violating the failed flag

    def __bool__(self) -> bool:
        return self.g_nonnegative


def classify(a: GramMatrix, bound: int | None = None) -> Classification:
    s = a.order
    g = g_table(a, bound)
    for mask in range(1, 1 << s):
        if g[mask] < 0:
            return Classification(False, False, tuple(_mask_elements(mask)))
    for i in range(s):
        if g[1 << i] == 0:
            return Classification(True, False, (i,))
    # derived identity: the empty-set value balances the rest
    assert g[0] == -sum(g[mask] for mask in range(1, 1 << s))
    assert g[0] <= -s
    return Classification(True, True)


def build_x(a: GramMatrix, bound: int | None = None) -> IntegerMatrix:
    """The {0,1} row-multiset encoding the positive subset values.

    Rows sorted by descending support size then descending lexicographic
    order; for a positive classification the singleton rows are placed
    last, forming an identity block.
    """
    cls = classify(a, bound)
    if not cls.g_nonnegative:
        raise FormatError(f"matrix is not g-nonnegative; witness {cls.witness}")
    s = a.order
    g = g_table(a, bound)
    rows = []
    for mask in range(1, 1 << s):
        if g[mask] > 0:
            indicator = tuple(1 if mask >> i & 1 else 0 for i in range(s))
            rows.extend([indicator] * g[mask])
    singles = []
    if cls.g_positive:
        singles = sorted(
            [r for r in rows if sum(r) == 1],
            key=lambda r: r.index(1),
        )
        rows = [r for r in rows if sum(r) != 1]
    rows.sort(key=lambda r: (-sum(r), tuple(-x for x in r)))
    rows += singles
    x = IntegerMatrix.from_rows(rows) if rows else IntegerMatrix((), empty_cols=s)
    assert x.rows == -g[0]
    return x


def _signing_skeleton(x: IntegerMatrix):
    """Spanning-forest position fixing for the sign search.

    Positions on a spanning forest of the bipartite row-column graph may
    be fixed to +1: any signing can be moved there by negating rows and
    columns.  Returns (forest_positions, free_positions).
    """
    for row in x.entries:
        for v in row:
            if v not in (0, 1):
                raise FormatError("signing search expects a {0,1} matrix")
    parent: dict = {}

    def find(u):
        while parent.setdefault(u, u) != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    forest, free = [], []
    for i in range(x.rows):
        for j in range(x.cols):
            if x.entries[i][j]:
                ru, rv = find(("r", i)), find(("c", j))
                if ru == rv:
                    free.append((i, j))
                else:
                    parent[ru] = rv
                    forest.append((i, j))
    return forest, free


def _signings(x: IntegerMatrix):
    """All sign patterns modulo row/column negation, lexicographic order."""
    _, free = _signing_skeleton(x)
    base = [list(r) for r in x.entries]
    for signs in itertools.product((1, -1), repeat=len(free)):
        cand = [row[:] for row in base]
        for (i, j), s in zip(free, signs):
            cand[i][j] = s
        yield IntegerMatrix.from_rows(cand)


def _quick_2x2_ok(u: IntegerMatrix) -> bool:
    e = u.entries
    for i, k in itertools.combinations(range(u.rows), 2):
        for j, l in itertools.combinations(range(u.cols), 2):
            if abs(e[i][j] * e[k][l] - e[i][l] * e[k][j]) > 1:
                return False
    return True


def tu_signing(x: IntegerMatrix, bound: int | None = None) -> IntegerMatrix | None:
    """A totally unimodular matrix with entrywise absolute value x, if any."""
    if min(x.rows, x.cols) == 0:
        return x
    for cand in _signings(x):
        if _quick_2x2_ok(cand) and is_totally_unimodular(cand, bound):
            return cand
    return None


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    certificate: IntegerMatrix | None = None
    classification: Classification | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.feasible


def _match_column_signs(g: IntegerMatrix, a: GramMatrix) -> list[int] | None:
    """Diagonal signs f with f_i f_j g_ij = a_ij, or None.

    Components of the nonzero off-diagonal graph get their least vertex
    fixed to +1, making the result canonical.
    """
    s = a.order
    for i in range(s):
        for j in range(s):
            if abs(g.entries[i][j]) != abs(a.entry(i, j)):
                return None
    signs = [0] * s
    for root in range(s):
        if signs[root]:
            continue
        signs[root] = 1
        stack = [root]
        while stack:
            i = stack.pop()
            for j in range(s):
                if j == i or a.entry(i, j) == 0:
                    continue
                want = 1 if a.entry(i, j) * g.entries[i][j] > 0 else -1
                need = signs[i] * want
                if signs[j] == 0:
                    signs[j] = need
                    stack.append(j)
                elif signs[j] != need:
                    return None
    return signs


def is_g_feasible(a: GramMatrix, bound: int | None = None) -> Feasibility:
    """Search for a TU certificate whose column Gram matrix equals a.

    Pipeline: classification gate, skeleton construction, then signing
    enumeration modulo row/column negation with a Gram-compatibility
    filter before the exact TU check.
    """
    cls = classify(a, bound)
    if not cls.g_nonnegative:
        return Feasibility(False, None, cls, f"NOT-G-NONNEGATIVE S={cls.witness}")
    x = build_x(a, bound)
    for cand in _signings(x):
        g0 = cand.transpose() * cand
        signs = _match_column_signs(g0, a)
        if signs is None:
            continue
        if not (_quick_2x2_ok(cand) and is_totally_unimodular(cand)):
            continue
        cert = IntegerMatrix.from_rows(
            [[v * signs[j] for j, v in enumerate(row)] for row in cand.entries]
        )
        assert (cert.transpose() * cert) == a.mat
        return Feasibility(True, cert, cls)
    return Feasibility(False, None, cls, "NO-MATCHING-SIGNING")
