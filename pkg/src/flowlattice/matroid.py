"""Regular matroids as TU representations.

Construction from directed multigraphs, base coordinatization, duality,
circuit enumeration, loops/co-loops and the minors obtained by removing
them, and isomorphism testing on circuit families.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .errors import BoundExceededError, FormatError, NotABaseError
from .intmat import (
    IntegerMatrix,
    _env_bound,
    determinant,
    is_totally_unimodular,
    rank,
)

DEFAULT_CIRCUIT_BOUND = 20
DEFAULT_ISO_BOUND = 12


def circuit_bound(override: int | None = None) -> int:
    if override is not None:
        return override
    return _env_bound("FLOWLAT_CIRCUIT_BOUND", DEFAULT_CIRCUIT_BOUND)


def iso_bound(override: int | None = None) -> int:
    if override is not None:
        return override
    return _env_bound("FLOWLAT_ISO_BOUND", DEFAULT_ISO_BOUND)


@dataclass(frozen=True)
class RegularMatroid:
    """Ground-set labels plus a full-row-rank TU representation matrix."""

    ground: tuple[str, ...]
    rep: IntegerMatrix

    def __post_init__(self):
        if self.rep.cols != len(self.ground):
            raise FormatError("representation column count must equal ground size")
        if len(set(self.ground)) != len(self.ground):
            raise FormatError("ground labels must be unique")

    @staticmethod
    def from_rep(ground, rep: IntegerMatrix, validate: bool = True) -> "RegularMatroid":
        m = RegularMatroid(tuple(ground), rep)
        if validate:
            if rank(rep) != rep.rows:
                raise FormatError("representation must have full row rank")
            check = is_totally_unimodular(rep)
            if not check:
                raise FormatError(
                    "representation is not totally unimodular; witness rows "
                    f"{check.witness_rows} cols {check.witness_cols} det {check.witness_det}"
                )
        return m

    @property
    def rank(self) -> int:
        return self.rep.rows

    @property
    def size(self) -> int:
        return len(self.ground)

    @property
    def corank(self) -> int:
        return self.size - self.rank

    def text(self) -> str:
        header = f"matroid {self.rank} {self.size}\n"
        labels = " ".join(self.ground) + "\n" if self.ground else "\n"
        return header + labels + self.rep.text()


def _independent_row_subset(m: IntegerMatrix) -> list[int]:
    """Greedy maximal set of linearly independent rows, in order."""
    kept: list[int] = []
    r = 0
    for i in range(m.rows):
        cand = m.select_rows(kept + [i])
        if rank(cand) > r:
            kept.append(i)
            r += 1
    return kept


def from_graph(edges, labels=None) -> RegularMatroid:
    """Graphic matroid of a directed multigraph via its signed incidence matrix.

    Edge e = (tail, head) gets +1 at the head vertex and -1 at the tail;
    self-loops give zero columns (matroid loops).  Redundant incidence
    rows are deleted to reach full row rank.
    """
    edges = list(edges)
    if not edges:
        raise FormatError("empty edge list")
    vertices = sorted({v for e in edges for v in e}, key=lambda v: (str(type(v)), v))
    vindex = {v: i for i, v in enumerate(vertices)}
    d = [[0] * len(edges) for _ in vertices]
    for j, (tail, head) in enumerate(edges):
        if tail == head:
            continue
        d[vindex[head]][j] = 1
        d[vindex[tail]][j] = -1
    full = IntegerMatrix.from_rows(d)
    kept = _independent_row_subset(full)
    rep = full.select_rows(kept)
    if labels is None:
        labels = tuple(f"e{j + 1}" for j in range(len(edges)))
    return RegularMatroid.from_rep(labels, rep, validate=False)


def parse_graph(text: str) -> list[tuple]:
    """Edge list: lines "tail head" with integer vertex ids; '#' comments."""
    edges = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"graph line needs two vertex ids: {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise FormatError(f"non-integer vertex id in {line!r}") from exc
    return edges


def parse_matroid(text: str) -> RegularMatroid:
    """Matroid file: "matroid r m", ground labels, then the matrix text."""
    lines = [ln for ln in text.splitlines()
             if ln.split("#", 1)[0].strip()]
    if not lines or not lines[0].split("#", 1)[0].split()[0] == "matroid":
        raise FormatError("matroid file must start with 'matroid r m'")
    head = lines[0].split("#", 1)[0].split()
    if len(head) != 3:
        raise FormatError("matroid header must be 'matroid r m'")
    r, m = int(head[1]), int(head[2])
    if len(lines) < 2:
        raise FormatError("matroid file missing ground label line")
    labels = tuple(lines[1].split("#", 1)[0].split())
    if len(labels) != m:
        raise FormatError(f"expected {m} ground labels, got {len(labels)}")
    from .intmat import parse_matrix

    rep = parse_matrix("\n".join(lines[2:]))
    if rep.rows != r or rep.cols != m:
        raise FormatError("matrix shape disagrees with matroid header")
    return RegularMatroid.from_rep(labels, rep)


def subset_rank(m: RegularMatroid, subset) -> int:
    return rank(m.rep.select_columns(sorted(subset)))


def is_base(m: RegularMatroid, subset) -> bool:
    subset = sorted(subset)
    if len(subset) != m.rank:
        return False
    return determinant(m.rep.select_columns(subset)) != 0


def bases(m: RegularMatroid):
    """All bases in lexicographic order."""
    for combo in itertools.combinations(range(m.size), m.rank):
        if determinant(m.rep.select_columns(combo)) != 0:
            yield combo


def first_base(m: RegularMatroid) -> tuple[int, ...]:
    for b in bases(m):
        return b
    raise NotABaseError((), "matroid has no base of the stated rank")


def _integer_inverse(z: IntegerMatrix) -> IntegerMatrix:
    """Inverse of a square integer matrix with determinant +-1 (adjugate)."""
    n = z.rows
    d = determinant(z)
    if abs(d) != 1:
        raise NotABaseError(tuple(range(n)), f"determinant {d} is not a unit")
    if n == 0:
        return z
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = z.submatrix(
                [r for r in range(n) if r != j],
                [c for c in range(n) if c != i],
            )
            adj[i][j] = (-1) ** (i + j) * determinant(minor)
    return IntegerMatrix.from_rows(adj).scale(d)


@dataclass(frozen=True)
class StandardForm:
    """[I_r L] together with the column permutation bringing the base first."""

    matrix: IntegerMatrix
    perm: tuple[int, ...]
    base: tuple[int, ...]

    @property
    def l_block(self) -> IntegerMatrix:
        r = self.matrix.rows
        return self.matrix.select_columns(range(r, self.matrix.cols))


def coordinatize(m: RegularMatroid, base) -> StandardForm:
    """Bring the representation to [I_r L] with the base columns first."""
    base = tuple(sorted(base))
    if len(base) != m.rank or len(set(base)) != len(base):
        raise NotABaseError(base, f"expected {m.rank} distinct elements")
    sub = m.rep.select_columns(base)
    d = determinant(sub)
    if d == 0:
        raise NotABaseError(base, "vanishing r-by-r determinant")
    perm = base + tuple(j for j in range(m.size) if j not in set(base))
    f = _integer_inverse(sub)
    mat = f * m.rep.select_columns(perm)
    return StandardForm(mat, perm, base)


def dual(m: RegularMatroid, base=None) -> RegularMatroid:
    """Dual matroid represented by [-L^T I_s], ground labels permuted to match."""
    if base is None:
        base = first_base(m)
    sf = coordinatize(m, base)
    s = m.corank
    rep = (-sf.l_block.transpose()).hstack(IntegerMatrix.identity(s))
    ground = tuple(m.ground[j] for j in sf.perm)
    return RegularMatroid.from_rep(ground, rep, validate=False)


@lru_cache(maxsize=None)
def _circuits_cached(m: RegularMatroid) -> tuple[tuple[int, ...], ...]:
    found: list[tuple[int, ...]] = []
    found_sets: list[frozenset] = []
    n = m.size
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(n), size):
            cs = set(combo)
            if any(f <= cs for f in found_sets):
                continue
            if subset_rank(m, combo) < size:
                found.append(combo)
                found_sets.append(frozenset(combo))
    return tuple(found)


def circuits(m: RegularMatroid, bound: int | None = None) -> tuple[tuple[int, ...], ...]:
    """All minimal dependent sets, as sorted index tuples, canonically ordered."""
    b = circuit_bound(bound)
    if m.size > b:
        raise BoundExceededError("ground size", m.size, b)
    return _circuits_cached(m)


def loops_and_coloops(m: RegularMatroid) -> tuple[tuple[int, ...], tuple[int, ...]]:
    loops = tuple(
        j for j in range(m.size) if all(x == 0 for x in m.rep.column(j))
    )
    coloops = tuple(
        j for j in range(m.size)
        if subset_rank(m, [e for e in range(m.size) if e != j]) < m.rank
    )
    return loops, coloops


@lru_cache(maxsize=None)
def contract_coloops(m: RegularMatroid) -> RegularMatroid:
    """The minor with every co-loop contracted (no co-loops remain)."""
    _, coloops = loops_and_coloops(m)
    if not coloops:
        return m
    keep = [j for j in range(m.size) if j not in set(coloops)]
    trimmed = m.rep.select_columns(keep)
    rows = _independent_row_subset(trimmed)
    rep = trimmed.select_rows(rows)
    return RegularMatroid.from_rep(
        tuple(m.ground[j] for j in keep), rep, validate=False
    )


def delete_loops(m: RegularMatroid) -> RegularMatroid:
    """The minor with every loop (zero column) deleted."""
    loops, _ = loops_and_coloops(m)
    if not loops:
        return m
    keep = [j for j in range(m.size) if j not in set(loops)]
    return RegularMatroid.from_rep(
        tuple(m.ground[j] for j in keep),
        m.rep.select_columns(keep),
        validate=False,
    )


@dataclass(frozen=True)
class IsomorphismResult:
    isomorphic: bool
    mapping: tuple[int, ...] | None = None
    label_map: tuple[tuple[str, str], ...] | None = None

    def __bool__(self) -> bool:
        return self.isomorphic


def _element_profiles(m: RegularMatroid, circ) -> list[tuple]:
    per = [Counter() for _ in range(m.size)]
    for c in circ:
        for e in c:
            per[e][len(c)] += 1
    return [tuple(sorted(p.items())) for p in per]


def is_isomorphic(m: RegularMatroid, n: RegularMatroid,
                  bound: int | None = None) -> IsomorphismResult:
    """Search for a ground bijection carrying circuits onto circuits.

    Pruned by rank, circuit-size multiset, and per-element circuit
    profiles; returns the lexicographically least bijection found.
    """
    b = iso_bound(bound)
    if max(m.size, n.size) > b:
        raise BoundExceededError("ground size", max(m.size, n.size), b)
    if m.size != n.size or m.rank != n.rank:
        return IsomorphismResult(False)
    cm = circuits(m)
    cn = circuits(n)
    if sorted(len(c) for c in cm) != sorted(len(c) for c in cn):
        return IsomorphismResult(False)
    pm = _element_profiles(m, cm)
    pn = _element_profiles(n, cn)
    if sorted(pm) != sorted(pn):
        return IsomorphismResult(False)

    n_circuit_set = {frozenset(c) for c in cn}
    by_max: dict[int, list[frozenset]] = {}
    for c in cm:
        by_max.setdefault(max(c), []).append(frozenset(c))

    size = m.size
    image = [-1] * size
    used = [False] * size

    def extend(k: int) -> bool:
        if k == size:
            return True
        for x in range(size):
            if used[x] or pn[x] != pm[k]:
                continue
            image[k] = x
            used[x] = True
            ok = all(
                frozenset(image[e] for e in c) in n_circuit_set
                for c in by_max.get(k, ())
            )
            if ok and extend(k + 1):
                return True
            used[x] = False
            image[k] = -1
        return False

    if not extend(0):
        return IsomorphismResult(False)
    mapping = tuple(image)
    label_map = tuple((m.ground[i], n.ground[x]) for i, x in enumerate(mapping))
    return IsomorphismResult(True, mapping, label_map)
