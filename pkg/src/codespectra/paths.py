"""Closed-walk combinatorics: canonical classes, double trees, solution counts.

A closed walk gamma: [0..l] -> [1..p] is stored canonically (labels appear
in first-use order), one representative per relabeling orbit.  Every walk
carries a system of per-vertex column-sum equations over the generator
matrix; the number of its solutions W equals the exact all-maps average of
the walk's inner-product product, which is what the brute-force auditors
here verify on small codes.

Double-tree detection: self-loop steps cancel singly, the remaining steps
must cancel as adjacent reversals (stack reduction), and the vertex count
must equal 1 + (non-loop steps)/2.  The count condition is what forces
each reduced edge to be traversed exactly twice with a tree underneath;
reduction alone also accepts walks that retraverse an edge (for example
1,2,1,2,1), whose solution counts fall strictly below the double-tree
value.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .codes import LinearCode, pack_columns
from .errors import ParameterError, ResourceError
from .signal import char_map, index_to_message

MAX_LENGTH = 10
W_BUDGET = 10**8
PAIR_BUDGET = 10**8
OMEGA_BUDGET = 10**9
_CHUNK = 1 << 18

MODE_ALL_MAPS = "all_maps"
MODE_INJECTIVE = "injective"


def canonical_labels(labels) -> tuple[int, ...]:
    """Relabel so values appear in first-use order 1, 2, 3, ..."""
    mapping: dict[int, int] = {}
    out = []
    for x in labels:
        if x not in mapping:
            mapping[x] = len(mapping) + 1
        out.append(mapping[x])
    return tuple(out)


@dataclass(frozen=True)
class ClosedPath:
    """Canonical representative of a closed walk up to vertex relabeling."""

    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.labels) < 2:
            raise ParameterError("a closed walk needs at least one step")
        if self.labels[0] != self.labels[-1]:
            raise ParameterError("walk is not closed")
        if self.labels != canonical_labels(self.labels):
            raise ParameterError(
                f"labels {self.labels} are not in canonical first-use order"
            )

    @property
    def length(self) -> int:
        return len(self.labels) - 1

    @property
    def v(self) -> int:
        """Number of distinct vertices."""
        return max(self.labels)

    @property
    def is_simple(self) -> bool:
        return all(a != b for a, b in zip(self.labels, self.labels[1:]))


def closed_path(labels) -> ClosedPath:
    """Canonicalize an arbitrary closed label sequence."""
    seq = tuple(int(x) for x in labels)
    if len(seq) < 2 or seq[0] != seq[-1]:
        raise ParameterError(f"not a closed walk: {seq}")
    return ClosedPath(canonical_labels(seq))


def enumerate_closed_classes(length: int, simple: bool) -> list[ClosedPath]:
    """All canonical classes of closed walks of the given length."""
    if not 1 <= length <= MAX_LENGTH:
        raise ParameterError(f"length must lie in [1, {MAX_LENGTH}], got {length}")
    out: list[ClosedPath] = []

    def extend(seq: list[int], max_used: int) -> None:
        if len(seq) == length:
            if not (simple and seq[-1] == 1):
                out.append(ClosedPath(tuple(seq) + (1,)))
            return
        for lab in range(1, max_used + 2):
            if simple and lab == seq[-1]:
                continue
            extend(seq + [lab], max(max_used, lab))

    extend([1], 1)
    return out


def is_double_tree(path: ClosedPath) -> bool:
    """Walk reduces to nothing: loops cancel singly, other steps in
    adjacent reversal pairs, with the tree vertex count 1 + edges/2."""
    steps = [(path.labels[j], path.labels[j + 1]) for j in range(path.length)]
    core = [s for s in steps if s[0] != s[1]]
    if len(core) % 2:
        return False
    if path.v != 1 + len(core) // 2:
        return False
    stack: list[tuple[int, int]] = []
    for a, b in core:
        if stack and stack[-1] == (b, a):
            stack.pop()
        else:
            stack.append((a, b))
    return not stack


def count_double_tree_classes(length: int) -> int:
    """Simple double-tree classes at even length; equals Catalan(length/2)."""
    if length % 2:
        raise ParameterError(f"length must be even, got {length}")
    return sum(
        1 for p in enumerate_closed_classes(length, simple=True) if is_double_tree(p)
    )


@dataclass(frozen=True)
class VertexSystem:
    """Per-vertex equations: tuples of (variable index, sign) edge slots.

    Variable u stands for the column index of edge u; edge u of a walk
    contributes +g[t_u] - g[t_{u-1}] to the equation of its head vertex,
    with the closing index identified (t_l = t_0).  The signed slots sum
    to zero over all equations, so one equation is always redundant.
    """

    equations: tuple[tuple[tuple[int, int], ...], ...]
    nvars: int


def vertex_system(path: ClosedPath) -> VertexSystem:
    ell = path.length
    eqs: list[list[tuple[int, int]]] = [[] for _ in range(path.v)]
    for u in range(1, ell + 1):
        head = path.labels[u]
        eqs[head - 1].append((u % ell, +1))
        eqs[head - 1].append((u - 1, -1))
    return VertexSystem(tuple(tuple(e) for e in eqs), nvars=ell)


@dataclass(frozen=True)
class PathPair:
    """Two same-length closed walks on a shared, jointly canonical label space."""

    labels1: tuple[int, ...]
    labels2: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.labels1) != len(self.labels2):
            raise ParameterError("paired walks must have equal length")
        for seq in (self.labels1, self.labels2):
            if len(seq) < 2 or seq[0] != seq[-1]:
                raise ParameterError(f"not a closed walk: {seq}")
        if canonical_labels(self.labels1 + self.labels2) != \
                self.labels1 + self.labels2:
            raise ParameterError("pair labels are not jointly canonical")

    @property
    def length(self) -> int:
        return len(self.labels1) - 1

    @property
    def v1(self) -> int:
        return len(set(self.labels1))

    @property
    def v2(self) -> int:
        return len(set(self.labels2))

    @property
    def v_union(self) -> int:
        return len(set(self.labels1) | set(self.labels2))

    @property
    def v_meet(self) -> int:
        return len(set(self.labels1) & set(self.labels2))

    def first(self) -> ClosedPath:
        return closed_path(self.labels1)

    def second(self) -> ClosedPath:
        return closed_path(self.labels2)


def path_pair(labels1, labels2) -> PathPair:
    """Jointly canonicalize an ordered pair of closed walks."""
    a = tuple(int(x) for x in labels1)
    b = tuple(int(x) for x in labels2)
    joint = canonical_labels(a + b)
    return PathPair(joint[: len(a)], joint[len(a):])


def enumerate_pair_classes(length: int, simple: bool = True) -> list[PathPair]:
    """All canonical ordered pairs of (simple) closed classes, up to a
    single simultaneous relabeling."""
    pairs: list[PathPair] = []
    for p1 in enumerate_closed_classes(length, simple):
        v1 = p1.v

        def extend(seq: list[int], max_used: int) -> None:
            if len(seq) == length:
                if not (simple and seq[-1] == seq[0]):
                    pairs.append(PathPair(p1.labels, tuple(seq) + (seq[0],)))
                return
            for lab in range(1, max_used + 2):
                if simple and lab == seq[-1]:
                    continue
                extend(seq + [lab], max(max_used, lab))

        for start in range(1, v1 + 2):
            extend([start], max(v1, start))
    return pairs


def pair_vertex_system(pair: PathPair) -> VertexSystem:
    """Joint equations: walk-1 slots as usual, walk-2 slots sign-flipped
    (its product enters conjugated), sharing equations on common vertices."""
    ell = pair.length
    nvert = pair.v_union
    eqs: list[list[tuple[int, int]]] = [[] for _ in range(nvert)]
    for u in range(1, ell + 1):
        head = pair.labels1[u]
        eqs[head - 1].append((u % ell, +1))
        eqs[head - 1].append((u - 1, -1))
    for u in range(1, ell + 1):
        head = pair.labels2[u]
        eqs[head - 1].append((ell + (u - 1), +1))
        eqs[head - 1].append((ell + (u % ell), -1))
    return VertexSystem(tuple(tuple(e) for e in eqs), nvars=2 * ell)


def _count_solutions(
    code: LinearCode, system: VertexSystem, drop_vertex: int | None = None
) -> int:
    n = code.n
    total = n**system.nvars
    equations = [
        eq for a, eq in enumerate(system.equations, start=1)
        if a != drop_vertex
    ]
    binary = code.q == 2
    cols_packed = pack_columns(code) if binary else None
    gen_t = None if binary else np.ascontiguousarray(code.generator.T)

    divisors = [n**v for v in range(system.nvars)]
    count = 0
    for lo in range(0, total, _CHUNK):
        idx = np.arange(lo, min(lo + _CHUNK, total), dtype=np.int64)
        assign = [(idx // d) % n for d in divisors]
        ok = np.ones(idx.size, dtype=bool)
        for eq in equations:
            if binary:
                acc = np.zeros(idx.size, dtype=np.int64)
                for var, _sign in eq:
                    acc ^= cols_packed[assign[var]]
                ok &= acc == 0
            else:
                acc = np.zeros((idx.size, code.k), dtype=np.int64)
                for var, sign in eq:
                    acc += sign * gen_t[assign[var]]
                ok &= (acc % code.q == 0).all(axis=1)
            if not ok.any():
                break
        count += int(ok.sum())
    return count


def count_W(code: LinearCode, path: ClosedPath) -> int:
    """Number of column-index tuples solving every vertex equation."""
    total = code.n**path.length
    if total > W_BUDGET:
        raise ResourceError(
            f"n^l = {total} exceeds the brute-force budget {W_BUDGET}"
        )
    return _count_solutions(code, vertex_system(path))


def count_W_pair(
    code: LinearCode, pair: PathPair, drop_vertex: int | None = None
) -> int:
    """Solutions of the joint pair system; `drop_vertex` (1-based label)
    removes one equation, which must not change the count."""
    total = code.n ** (2 * pair.length)
    if total > PAIR_BUDGET:
        raise ResourceError(
            f"n^(2l) = {total} exceeds the brute-force budget {PAIR_BUDGET}"
        )
    return _count_solutions(code, pair_vertex_system(pair), drop_vertex)


def _all_codeword_rows(code: LinearCode) -> np.ndarray:
    msgs = np.stack(
        [index_to_message(i, code.q, code.k) for i in range(code.N)]
    )
    return char_map(msgs @ code.generator % code.q, code.q)


def expect_omega(code: LinearCode, path: ClosedPath, mode: str) -> complex:
    """Exact average of prod_j <s(gamma(j)), s(gamma(j+1))> over maps from
    the walk's vertices to the character-mapped code (all maps or only
    injective ones)."""
    if mode not in (MODE_ALL_MAPS, MODE_INJECTIVE):
        raise ParameterError(f"unknown expectation mode: {mode!r}")
    v, ell, n, big_n = path.v, path.length, code.n, code.N
    cost = big_n**v * ell * n
    if cost > OMEGA_BUDGET:
        raise ResourceError(
            f"N^v * l * n = {cost} exceeds the brute-force budget {OMEGA_BUDGET}"
        )
    if mode == MODE_INJECTIVE and big_n < v:
        raise ParameterError(f"no injective maps: N={big_n} < v={v}")

    rows = _all_codeword_rows(code)
    ip = rows @ rows.conj().T
    edges = [(path.labels[j] - 1, path.labels[j + 1] - 1) for j in range(ell)]

    total = big_n**v
    divisors = [big_n**i for i in range(v)]
    acc = 0.0 + 0.0j if np.iscomplexobj(ip) else 0.0
    kept = 0
    for lo in range(0, total, _CHUNK):
        idx = np.arange(lo, min(lo + _CHUNK, total), dtype=np.int64)
        assign = [(idx // d) % big_n for d in divisors]
        prod = np.ones(idx.size, dtype=ip.dtype)
        for x, y in edges:
            prod = prod * ip[assign[x], assign[y]]
        if mode == MODE_INJECTIVE:
            mask = np.ones(idx.size, dtype=bool)
            for i in range(v):
                for j in range(i + 1, v):
                    mask &= assign[i] != assign[j]
            acc += prod[mask].sum()
            kept += int(mask.sum())
        else:
            acc += prod.sum()
            kept += idx.size
    return complex(acc / kept)


def paths_audit(code: LinearCode, length: int) -> dict:
    """Per-class brute-force audit plus the module's invariant booleans."""
    n = code.n
    records = []
    for path in enumerate_closed_classes(length, simple=False):
        try:
            w = count_W(code, path)
        except ResourceError as exc:
            raise ResourceError(f"class {path.labels}: {exc}") from None
        dt = is_double_tree(path)
        rec = {
            "labels": list(path.labels),
            "l": path.length,
            "v": path.v,
            "simple": path.is_simple,
            "double_tree": dt,
            "W": w,
            "double_tree_value": n ** (path.length - path.v + 1),
            "expectation_all": None,
            "expectation_injective": None,
        }
        if code.N**path.v * path.length * n <= OMEGA_BUDGET:
            e_all = expect_omega(code, path, MODE_ALL_MAPS)
            e_inj = expect_omega(code, path, MODE_INJECTIVE)
            rec["expectation_all"] = [e_all.real, e_all.imag]
            rec["expectation_injective"] = [e_inj.real, e_inj.imag]
        records.append(rec)

    dt_records = [r for r in records if r["double_tree"]]
    other = [r for r in records if not r["double_tree"]]
    lemma1_exact_ok = all(r["W"] == r["double_tree_value"] for r in dt_records)
    ratios = [
        r["W"] / n ** (r["l"] - r["v"]) for r in other
    ]
    char_ok = True
    for r in records:
        if r["expectation_all"] is None:
            continue
        re, im = r["expectation_all"]
        if abs(im) > 1e-9 * max(1.0, abs(re)) or abs(re - r["W"]) > 1e-6:
            char_ok = False

    checks = {
        "lemma1_exact_ok": lemma1_exact_ok,
        "character_sum_ok": char_ok,
        "max_non_double_tree_ratio": max(ratios) if ratios else 0.0,
        "canonical_idempotent_ok": all(
            canonical_labels(tuple(r["labels"])) == tuple(r["labels"])
            for r in records
        ),
    }
    if length % 2 == 0:
        enumerated = count_double_tree_classes(length)
        formula = 2 * comb(length, length // 2) // (length + 2)
        checks["catalan_count"] = enumerated
        checks["catalan_identity_ok"] = enumerated == formula

    pair_section = None
    if n ** (2 * length) <= PAIR_BUDGET and length <= 4:
        pair_list = enumerate_pair_classes(length, simple=True)
        pair_records = []
        for pair in pair_list:
            wp = count_W_pair(code, pair)
            w1 = count_W(code, pair.first())
            w2 = count_W(code, pair.second())
            pair_records.append({
                "labels1": list(pair.labels1),
                "labels2": list(pair.labels2),
                "v_union": pair.v_union,
                "v_meet": pair.v_meet,
                "W_pair": wp,
                "W1_times_W2": w1 * w2,
            })
        checks["lemma3_zero_ok"] = all(
            r["W_pair"] == r["W1_times_W2"]
            for r in pair_records
            if r["v_meet"] <= 1
        )
        redundancy_ok = True
        for pair, rec in zip(pair_list[:6], pair_records[:6]):
            for a in range(1, pair.v_union + 1):
                if count_W_pair(code, pair, drop_vertex=a) != rec["W_pair"]:
                    redundancy_ok = False
        checks["redundant_equation_ok"] = redundancy_ok
        pair_section = pair_records

    return {
        "code": code.label,
        "n": n,
        "q": code.q,
        "N": code.N,
        "l": length,
        "classes": records,
        "pairs": pair_section,
        "checks": checks,
    }
