"""Smolyak sparse-grid quadrature over the Gaussian measure.

The level-L rule in dimension d combines small Gauss-Hermite tensor
products,

    A(L, d) = sum over L <= |i| <= L+d-1 of
              (-1)^(L+d-1-|i|) * binom(d-1, |i|-L) * Q_{i_1} x ... x Q_{i_d},

and is exact for polynomials of total degree up to 2L - 1.  Coincident
nodes of different constituent tensors are merged by summing their signed
weights; merged nodes are stored sorted lexicographically by coordinates
and all quadrature reductions use a fixed pairwise tree, so results are
bit-reproducible regardless of how evaluation work is partitioned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from ._util import pairwise_sum
from .errors import EvaluationError, InvalidOrderError, ResourceLimitError, UnsupportedLevelError
from .hermite import MAX_ORDER, gauss_hermite_rule

DEFAULT_NODE_CAP = 2_000_000

# Coordinates are merged when they agree to this absolute tolerance.  It is
# far below the minimal spacing of Gauss-Hermite nodes at order <= 64, so
# only genuinely coincident symmetric values (in practice, zero) collapse.
MERGE_TOL = 1e-12


@dataclass(frozen=True)
class MultiIndexTerm:
    """One constituent tensor rule of the combination formula."""

    index: tuple[int, ...]
    coefficient: int


@dataclass(frozen=True)
class SparseGridRule:
    """Flattened, deduplicated Smolyak rule A(level, dimension)."""

    dimension: int
    level: int
    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    @property
    def node_count(self) -> int:
        return self.nodes.shape[0]


@dataclass(frozen=True)
class TensorProductRule:
    """Full product rule Q_n^(x d); usable wherever a SparseGridRule is."""

    dimension: int
    order: int
    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    @property
    def node_count(self) -> int:
        return self.nodes.shape[0]


def _compositions(total: int, parts: int):
    """Yield all tuples of `parts` positive integers summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def smolyak_terms(L: int, d: int) -> list[MultiIndexTerm]:
    """Enumerate the combination formula's multi-indices and coefficients.

    Covers all i with max(L, d) <= |i| <= L + d - 1 (indices with |i| < d
    do not exist since every component is >= 1).
    """
    if L < 1 or d < 1:
        raise ValueError(f"level and dimension must be >= 1, got L={L}, d={d}")
    terms = []
    for s in range(max(L, d), L + d):
        coeff = (-1) ** (L + d - 1 - s) * comb(d - 1, s - L)
        if coeff == 0:
            continue
        for index in _compositions(s, d):
            terms.append(MultiIndexTerm(index, coeff))
    return terms


def projected_node_count(L: int, d: int) -> int:
    """Upper bound sum over terms of prod(i_k), before node merging."""
    lo = max(0, L - d)
    return sum(comb(2 * d + k - 1, k) for k in range(lo, L))


def sparse_node_count(L: int, d: int) -> int:
    """Closed-form merged node count of A(L, d), tabulated for L <= 5 <= d.

    Uses exact integer arithmetic; every polynomial below is divisible as
    written.
    """
    if L > 5:
        raise UnsupportedLevelError(f"closed-form node counts are tabulated only for L <= 5, got L={L}")
    if L < 1:
        raise ValueError(f"level must be >= 1, got {L}")
    if d < L:
        raise ValueError(f"closed forms require L <= d, got L={L}, d={d}")
    if L == 1:
        return 1
    if L == 2:
        return 2 * d + 1
    if L == 3:
        return 2 * d * d + 2 * d + 1
    if L == 4:
        return (4 * d**3 + 6 * d**2 + 14 * d) // 3 + 1
    return (2 * d**4 + 4 * d**3 + 22 * d**2 + 8 * d) // 3 + 1


def _partitions_at_most(total: int, max_parts: int, max_part: int | None = None):
    """Yield partitions of `total` (descending parts >= 1) with <= max_parts parts."""
    if total == 0:
        yield ()
        return
    if max_parts == 0:
        return
    if max_part is None or max_part > total:
        max_part = total
    for first in range(max_part, 0, -1):
        for rest in _partitions_at_most(total - first, max_parts - 1, first):
            yield (first,) + rest


def _coordinate_table(max_level: int):
    """Deduplicated 1-D node values across orders 1..max_level.

    Returns the ascending value table plus, per level, integer ids into the
    table and the level's weights.  Values agreeing within MERGE_TOL share
    an id, so coincident tensor nodes become identical id rows and merging
    reduces to exact row deduplication.
    """
    reps: dict[int, float] = {}
    for lvl in range(1, max_level + 1):
        for v in gauss_hermite_rule(lvl).nodes:
            reps.setdefault(round(v / MERGE_TOL), float(v))
    table = np.array(sorted(reps.values()))
    rank = {round(v / MERGE_TOL): i for i, v in enumerate(table)}
    ids = {}
    weights = {}
    for lvl in range(1, max_level + 1):
        rule = gauss_hermite_rule(lvl)
        ids[lvl] = np.array([rank[round(v / MERGE_TOL)] for v in rule.nodes], dtype=np.int64)
        weights[lvl] = rule.weights
    return table, ids, weights


def _pack_rows(ids: np.ndarray, table_size: int) -> np.ndarray:
    """Pack id rows into uint64 key columns preserving lexicographic order.

    Ids are value-ranked, so comparing key columns left to right is the same
    as comparing node coordinates lexicographically.
    """
    bits = max(int(table_size - 1).bit_length(), 1)
    per_word = 64 // bits
    d = ids.shape[1]
    n_words = -(-d // per_word)
    keys = np.zeros((ids.shape[0], n_words), dtype=np.uint64)
    for j in range(d):
        word, pos = divmod(j, per_word)
        shift = np.uint64(bits * (per_word - 1 - pos))
        keys[:, word] |= ids[:, j].astype(np.uint64) << shift
    return keys


def _merge_rows(ids: np.ndarray, weights: np.ndarray, table_size: int):
    """Deduplicate id rows, summing signed weights of coincident nodes.

    Weights accumulate in extended precision: the combination coefficients
    grow like binom(d-1, L-1) and their signed cancellation would otherwise
    leave O(1e-10) residue in the total weight at the largest grids.
    Returns (unique id rows in lexicographic order, float64 merged weights).
    """
    keys = _pack_rows(ids, table_size)
    order = np.lexsort(keys.T[::-1])
    sorted_keys = keys[order]
    is_start = np.empty(ids.shape[0], dtype=bool)
    is_start[0] = True
    is_start[1:] = (sorted_keys[1:] != sorted_keys[:-1]).any(axis=1)
    starts = np.flatnonzero(is_start)
    merged = np.add.reduceat(np.asarray(weights, dtype=np.longdouble)[order], starts)
    return ids[order[starts]], merged.astype(np.float64)


def build_sparse_grid(L: int, d: int, node_cap: int = DEFAULT_NODE_CAP) -> SparseGridRule:
    """Construct A(L, d) with merged nodes and signed weights.

    Raises
    ------
    ResourceLimitError
        If the projected (pre-merge) node count exceeds `node_cap`.
    """
    if L < 1 or d < 1:
        raise ValueError(f"level and dimension must be >= 1, got L={L}, d={d}")
    if L > MAX_ORDER:
        raise InvalidOrderError(
            f"A({L},{d}) needs a one-dimensional rule of order {L}, above the supported {MAX_ORDER}"
        )
    projected = projected_node_count(L, d)
    if projected > node_cap:
        raise ResourceLimitError(
            f"A({L},{d}) projects {projected} nodes, above the cap of {node_cap}",
            projected=projected,
            cap=node_cap,
        )

    table, level_ids, level_weights = _coordinate_table(L)
    id_dtype = np.uint8 if len(table) <= 256 else np.uint16
    zero_id = int(np.searchsorted(table, 0.0))

    ids = np.full((projected, d), zero_id, dtype=id_dtype)
    weights = np.empty(projected, dtype=np.longdouble)
    row = 0
    # Terms grouped by the multiset of non-unit orders: within a group, the
    # local tensor and the combination coefficient are shared and only the
    # axis placement varies, which keeps the Python-level loop tiny.
    for k in range(max(0, L - d), L):
        coeff = float((-1) ** (L - 1 - k) * comb(d - 1, d + k - L))
        for parts in _partitions_at_most(k, d):
            orders = tuple(p + 1 for p in parts)
            m = len(orders)
            if m == 0:
                weights[row] = coeff
                row += 1
                continue
            combos = np.array(list(itertools.combinations(range(d), m)), dtype=np.intp)
            for placement in sorted(set(itertools.permutations(orders))):
                local_ids = np.array(
                    list(itertools.product(*(level_ids[o] for o in placement))), dtype=id_dtype
                )
                local_w = np.ones(1, dtype=np.longdouble)
                for o in placement:
                    local_w = np.multiply.outer(local_w, level_weights[o]).reshape(-1)
                n_local = local_ids.shape[0]
                n_block = combos.shape[0] * n_local
                block = slice(row, row + n_block)
                cols = np.repeat(combos, n_local, axis=0)
                ids[np.arange(row, row + n_block)[:, None], cols] = np.tile(
                    local_ids, (combos.shape[0], 1)
                )
                weights[block] = coeff * np.tile(local_w, combos.shape[0])
                row += n_block
    assert row == projected

    unique_rows, merged_w = _merge_rows(ids, weights, len(table))
    nodes = table[unique_rows.astype(np.int64)]
    return SparseGridRule(dimension=d, level=L, nodes=nodes, weights=merged_w)


def tensor_rule(n: int, d: int, node_cap: int = DEFAULT_NODE_CAP) -> TensorProductRule:
    """Full tensor-product rule Q_n^(x d), exact for coordinate degree <= 2n-1."""
    if n < 1 or d < 1:
        raise ValueError(f"order and dimension must be >= 1, got n={n}, d={d}")
    projected = n**d
    if projected > node_cap:
        raise ResourceLimitError(
            f"tensor rule with {n}^{d} = {projected} nodes is above the cap of {node_cap}",
            projected=projected,
            cap=node_cap,
        )
    rule = gauss_hermite_rule(n)
    grids = np.meshgrid(*([rule.nodes] * d), indexing="ij")
    nodes = np.stack([g.reshape(-1) for g in grids], axis=-1)
    w = np.ones(1)
    for _ in range(d):
        w = np.multiply.outer(w, rule.weights).reshape(-1)
    return TensorProductRule(dimension=d, order=n, nodes=nodes, weights=w)


def sg_integrate(rule, phi, vectorized: bool = False) -> float:
    """Integrate phi over the rule: a fixed pairwise reduction of W_p phi(y_p).

    With vectorized=True, phi is called once with the full (P, d) node array
    and must return a length-P vector; otherwise it is called per node.
    """
    nodes = rule.nodes
    if vectorized:
        values = np.asarray(phi(nodes), dtype=float).reshape(-1)
        if values.shape[0] != nodes.shape[0]:
            raise ValueError("vectorized integrand returned wrong number of values")
    else:
        values = np.array([float(phi(y)) for y in nodes])
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        idx = int(bad[0])
        raise EvaluationError(
            f"integrand returned {values[idx]!r} at node index {idx}", node_index=idx
        )
    return pairwise_sum(rule.weights * values)


def level2_probabilistic_form(phi, d: int) -> float:
    """Level-2 Smolyak value from 2d + 1 point evaluations.

    Equals sum_i E phi(0,...,zeta_i,...,0) - (d-1) phi(0,...,0) with zeta the
    symmetric two-point +-1 law, which is algebraically identical to
    integrating with A(2, d).
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got d={d}")
    origin = np.zeros(d)
    contributions = np.empty(2 * d + 1)
    contributions[0] = -(d - 1) * float(phi(origin))
    for i in range(d):
        for sign_pos, sign in enumerate((-1.0, 1.0)):
            y = np.zeros(d)
            y[i] = sign
            contributions[1 + 2 * i + sign_pos] = 0.5 * float(phi(y))
    values = contributions
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        idx = int(bad[0])
        raise EvaluationError(
            f"integrand returned a non-finite value at evaluation {idx}", node_index=idx
        )
    return pairwise_sum(values)
