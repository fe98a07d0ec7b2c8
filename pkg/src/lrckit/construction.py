"""Code construction: evaluation layouts, coefficient subspaces, generators.

A code instance evaluates bivariate polynomials

    F(x, y) = sum_{h < r} sum_{s < t} a_{hs} * x^s * y^h

on an l x (r+mu-1) grid of points: group i carries the group value y_i in
the x slot, and slot j within every group carries the node b_j in the y
slot.  Restricted to one group, every codeword is a degree < r polynomial
evaluated at the r+mu-1 distinct nodes of B, which is what makes one lost
symbol recoverable from any r surviving group members.

The coefficient grids a are drawn from a subspace picked by strategy:

    FULL    - the whole r*t dimensional grid space.
    COLWISE - every grid column is forced to vanish at the w constraint
              nodes E (w*t constraints, dimension (r-w)*t).  Any nonzero
              column then has w of its < r roots pinned outside B, so at
              most r-w-1 nodes of B can be common roots of all columns:
              the provable route to minimum distance w+mu.
    GLOBAL  - only column 0 is forced to vanish at E (w constraints,
              dimension r*t-w).  Largest dimension; its distance is
              measured, not guaranteed.
    RANDOM  - a seeded uniform subspace of dimension r*t-w, for searching.

Bases are canonicalized to reduced row echelon form so equal subspaces
serialize identically.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .errors import (
    CapExceeded,
    InvalidParams,
    LengthMismatch,
    NotPrimePower,
    RankDeficient,
    TooLarge,
)
from .gf import FieldElement, FieldSpec, elements, make_field
from .linalg import Matrix, mat_mul, null_space, rref, vec_mat


class Strategy(str, Enum):
    FULL = "FULL"
    COLWISE = "COLWISE"
    GLOBAL = "GLOBAL"
    RANDOM = "RANDOM"

    @classmethod
    def parse(cls, name: str) -> "Strategy":
        try:
            return cls[name.upper()]
        except KeyError:
            raise InvalidParams(
                f"unknown strategy {name!r}; choose from "
                + ", ".join(s.value for s in cls)
            ) from None


@dataclass(frozen=True)
class LrcParams:
    """Validated code parameters with the derived length and dimension."""

    q: int
    r: int
    mu: int
    w: int
    l: int
    t: int
    strategy: Strategy
    n: int
    k: int

    @property
    def group_size(self) -> int:
        return self.r + self.mu - 1


def strategy_dimension(strategy: Strategy, r: int, w: int, t: int) -> int:
    if strategy is Strategy.FULL:
        return r * t
    if strategy is Strategy.COLWISE:
        return (r - w) * t
    return r * t - w  # GLOBAL and RANDOM


def plan_params(q, r, mu, w, l, t=None, strategy=Strategy.FULL) -> LrcParams:
    """Validate raw integers into LrcParams; name the violated constraint."""
    strategy = Strategy.parse(strategy) if isinstance(strategy, str) else strategy
    try:
        make_field(q)
    except (NotPrimePower, TooLarge) as exc:
        raise InvalidParams(f"q must be a prime power <= 2^16: {exc}") from exc
    if not 1 <= r <= q - 1:
        raise InvalidParams(f"locality requires 1 <= r <= q-1, got r={r} with q={q}")
    if mu < 2:
        raise InvalidParams(f"local distance requires mu >= 2, got mu={mu}")
    if not 0 <= w <= r - 1:
        raise InvalidParams(f"constraint count requires 0 <= w <= r-1, got w={w} with r={r}")
    if r + mu - 1 + w > q:
        raise InvalidParams(
            f"r+mu-1+w <= q is violated ({r}+{mu}-1+{w} = {r + mu - 1 + w} > {q}); "
            "the node set B and constraint set E cannot both fit in the field"
        )
    if not 1 <= l <= q:
        raise InvalidParams(f"group count requires 1 <= l <= q, got l={l} with q={q}")
    if t is None:
        t = l
    if not 1 <= t <= l:
        raise InvalidParams(f"degree bound requires 1 <= t <= l, got t={t} with l={l}")
    return _finish_params(q, r, mu, w, l, t, strategy)


def relaxed_params(q, r, mu, w, l, t=None, strategy=Strategy.GLOBAL) -> LrcParams:
    """Like plan_params but without the r+mu-1+w <= q disjointness bound.

    Used by the preset table and the file parser: those instances may pull
    constraint nodes back out of B (see build_layout), which keeps the
    dimension formula intact but voids any provable distance guarantee.
    """
    strategy = Strategy.parse(strategy) if isinstance(strategy, str) else strategy
    try:
        make_field(q)
    except (NotPrimePower, TooLarge) as exc:
        raise InvalidParams(f"q must be a prime power <= 2^16: {exc}") from exc
    if not 1 <= r <= q - 1:
        raise InvalidParams(f"locality requires 1 <= r <= q-1, got r={r} with q={q}")
    if mu < 2:
        raise InvalidParams(f"local distance requires mu >= 2, got mu={mu}")
    if r + mu - 1 > q:
        raise InvalidParams(f"group size r+mu-1 = {r + mu - 1} exceeds q={q}")
    if not 0 <= w <= r - 1:
        raise InvalidParams(f"constraint count requires 0 <= w <= r-1, got w={w} with r={r}")
    if t is None:
        t = l
    if not 1 <= l <= q:
        raise InvalidParams(f"group count requires 1 <= l <= q, got l={l} with q={q}")
    if not 1 <= t <= l:
        raise InvalidParams(f"degree bound requires 1 <= t <= l, got t={t} with l={l}")
    return _finish_params(q, r, mu, w, l, t, strategy)


def _finish_params(q, r, mu, w, l, t, strategy) -> LrcParams:
    n = (r + mu - 1) * l
    k = strategy_dimension(strategy, r, w, t)
    return LrcParams(q=q, r=r, mu=mu, w=w, l=l, t=t, strategy=strategy, n=n, k=k)


@dataclass(frozen=True)
class GroupLayout:
    """Evaluation-point geometry: group values Y, node set B, constraint set E.

    points lists (group, slot) pairs in group-major order, so position
    p = group * (r+mu-1) + slot evaluates the grid at (y_group, b_slot).
    """

    field: FieldSpec
    Y: tuple[FieldElement, ...]
    B: tuple[FieldElement, ...]
    E: tuple[FieldElement, ...]
    points: tuple[tuple[int, int], ...]

    @property
    def group_size(self) -> int:
        return len(self.B)

    @property
    def n(self) -> int:
        return len(self.points)

    def group_of(self, position: int) -> int:
        return position // self.group_size

    def slot_of(self, position: int) -> int:
        return position % self.group_size

    def position_of(self, group: int, slot: int) -> int:
        return group * self.group_size + slot

    def group_positions(self, group: int) -> range:
        start = group * self.group_size
        return range(start, start + self.group_size)

    @property
    def e_overlaps_b(self) -> bool:
        b_encs = {b.enc for b in self.B}
        return any(e.enc in b_encs for e in self.E)


def build_layout(params: LrcParams) -> GroupLayout:
    """Canonical layout: Y, B, E taken in ascending element-encoding order.

    E normally holds the w elements immediately after B.  When the field is
    too small for disjoint sets (relaxed preset parameters) E wraps around
    and reuses the smallest elements; E itself stays duplicate-free.
    """
    field = make_field(params.q)
    elems = elements(field)
    gs = params.group_size
    B = tuple(elems[:gs])
    Y = tuple(elems[: params.l])
    tail = elems[gs:] + elems[:gs]
    E = tuple(tail[: params.w])
    points = tuple((i, j) for i in range(params.l) for j in range(gs))
    return GroupLayout(field=field, Y=Y, B=B, E=E, points=points)


@dataclass(frozen=True)
class CoefficientGrid:
    """The r x t coefficient array a_{hs}; flattened h-major (index h*t + s)."""

    field: FieldSpec
    r: int
    t: int
    a: tuple[tuple[FieldElement, ...], ...]

    @classmethod
    def from_flat(cls, field: FieldSpec, r: int, t: int, flat) -> "CoefficientGrid":
        if len(flat) != r * t:
            raise LengthMismatch(f"flat grid length {len(flat)} != r*t = {r * t}")
        rows = tuple(tuple(flat[h * t + s] for s in range(t)) for h in range(r))
        return cls(field=field, r=r, t=t, a=rows)

    def to_flat(self) -> list[FieldElement]:
        return [self.a[h][s] for h in range(self.r) for s in range(self.t)]


@dataclass(frozen=True)
class SubspaceBasis:
    """Full-row-rank basis of the coefficient subspace, rows in RREF."""

    basis: Matrix
    strategy: Strategy
    seed: int | None = None

    @property
    def dim(self) -> int:
        return self.basis.nrows


@dataclass(frozen=True)
class CodeInstance:
    """A constructed code: parameters, layout, subspace, generator matrix."""

    params: LrcParams
    layout: GroupLayout
    subspace: SubspaceBasis
    G: Matrix

    @property
    def field(self) -> FieldSpec:
        return self.layout.field

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def k(self) -> int:
        return self.G.nrows


def _canonical_basis(mat: Matrix) -> Matrix:
    reduced, rk, _ = rref(mat)
    return Matrix(mat.field, reduced.rdata[:rk])


def _constraint_matrix(params: LrcParams, layout: GroupLayout, bound_cols) -> Matrix:
    """One row per (constraint node e, bound column s): sum_h a_{hs} e^h = 0."""
    field = layout.field
    r, t = params.r, params.t
    zero = field.zero()
    rows = []
    for e in layout.E:
        pows = [field.one()]
        for _ in range(r - 1):
            pows.append(pows[-1] * e)
        for s in bound_cols:
            row = [zero] * (r * t)
            for h in range(r):
                row[h * t + s] = pows[h]
            rows.append(tuple(row))
    return Matrix(field, tuple(rows))


def build_subspace(params: LrcParams, layout: GroupLayout, seed: int | None = None) -> SubspaceBasis:
    """Construct the strategy's coefficient subspace with a canonical basis."""
    field = layout.field
    rt = params.r * params.t
    strategy = params.strategy

    if strategy is Strategy.RANDOM:
        if seed is None:
            raise InvalidParams("RANDOM strategy requires a seed")
        return SubspaceBasis(
            basis=_random_basis(field, rt - params.w, rt, seed),
            strategy=strategy,
            seed=seed,
        )

    if strategy is Strategy.FULL or params.w == 0:
        return SubspaceBasis(basis=Matrix.identity(field, rt), strategy=strategy)

    bound_cols = range(params.t) if strategy is Strategy.COLWISE else (0,)
    constraints = _constraint_matrix(params, layout, bound_cols)
    basis = _canonical_basis(null_space(constraints))
    expected = strategy_dimension(strategy, params.r, params.w, params.t)
    if basis.nrows != expected:
        raise RankDeficient(
            f"{strategy.value} subspace has dimension {basis.nrows}, expected {expected}"
        )
    return SubspaceBasis(basis=basis, strategy=strategy)


def _random_basis(field: FieldSpec, nrows: int, ncols: int, seed: int) -> Matrix:
    rng = random.Random(seed)
    for _ in range(10_000):
        cand = Matrix.from_encs(
            field, [[rng.randrange(field.q) for _ in range(ncols)] for _ in range(nrows)]
        )
        reduced, rk, _ = rref(cand)
        if rk == nrows:
            return Matrix(field, reduced.rdata[:rk])
    raise RankDeficient(f"could not sample a rank-{nrows} basis")  # practically unreachable


@lru_cache(maxsize=64)
def evaluation_matrix(params: LrcParams, layout: GroupLayout) -> Matrix:
    """(r*t) x n matrix: row h*t+s holds y_i^s * b_j^h at position (i, j).

    Full row rank whenever t <= l: a flat grid maps to the codeword
    grid . M, and grid vanishing on every point forces grid = 0.
    """
    field = layout.field
    r, t = params.r, params.t
    y_pows = [_powers(y, t) for y in layout.Y]
    b_pows = [_powers(b, r) for b in layout.B]
    rows = []
    for h in range(r):
        for s in range(t):
            rows.append(tuple(
                y_pows[i][s] * b_pows[j][h] for (i, j) in layout.points
            ))
    return Matrix(field, tuple(rows))


def _powers(x: FieldElement, count: int) -> list[FieldElement]:
    out = [x.field.one()]
    for _ in range(count - 1):
        out.append(out[-1] * x)
    return out


def evaluate_grid(grid: CoefficientGrid, layout: GroupLayout, position: int) -> FieldElement:
    """Value of the grid's bivariate polynomial at one evaluation point."""
    i, j = layout.points[position]
    y, b = layout.Y[i], layout.B[j]
    y_pows = _powers(y, grid.t)
    b_pows = _powers(b, grid.r)
    acc = layout.field.zero()
    for h in range(grid.r):
        bh = b_pows[h]
        if not bh:
            continue
        for s in range(grid.t):
            c = grid.a[h][s]
            if c:
                acc = acc + c * y_pows[s] * bh
    return acc


def generator_matrix(params: LrcParams, layout: GroupLayout, subspace: SubspaceBasis) -> CodeInstance:
    """Evaluate each basis row at all n positions and rank-check the result."""
    if params.t > params.l:
        raise InvalidParams(f"t <= l required for injective evaluation, got t={params.t} l={params.l}")
    evm = evaluation_matrix(params, layout)
    G = mat_mul(subspace.basis, evm)
    _, rk, _ = rref(G)
    if rk != subspace.dim:
        raise RankDeficient(f"generator rank {rk} < subspace dimension {subspace.dim}")
    return CodeInstance(params=params, layout=layout, subspace=subspace, G=G)


def build_instance(params: LrcParams, seed: int | None = None) -> CodeInstance:
    """Layout + subspace + generator in one step."""
    layout = build_layout(params)
    subspace = build_subspace(params, layout, seed=seed)
    return generator_matrix(params, layout, subspace)


def encode(instance: CodeInstance, msg) -> list[FieldElement]:
    """Codeword sum(msg_i * G_i); msg must have k entries."""
    if len(msg) != instance.k:
        raise LengthMismatch(f"message length {len(msg)} != dimension {instance.k}")
    return vec_mat(msg, instance.G)


def common_root_count(grid: CoefficientGrid, layout: GroupLayout) -> int:
    """Number of nodes in B that zero every column polynomial of the grid.

    Column s of the grid is the degree < r polynomial sum_h a_{hs} y^h; a
    node counts when all t columns vanish there.  This is the combinatorial
    quantity that drives the analytic distance lower bound.
    """
    count = 0
    for b in layout.B:
        b_pows = _powers(b, grid.r)
        ok = True
        for s in range(grid.t):
            acc = layout.field.zero()
            for h in range(grid.r):
                c = grid.a[h][s]
                if c:
                    acc = acc + c * b_pows[h]
            if acc:
                ok = False
                break
        if ok:
            count += 1
    return count


def random_subspace_search(
    params: LrcParams,
    layout: GroupLayout,
    trials: int,
    seed: int,
    cap: int = 1 << 24,
    workers: int = 1,
) -> tuple[SubspaceBasis, int]:
    """Sample RANDOM subspaces, measure each exact distance, keep the best.

    Deterministic for a fixed seed: trial i uses its own derived seed, and
    ties keep the earliest trial.
    """
    from .verify import min_distance_exact  # local import to avoid a cycle

    if trials < 1:
        raise InvalidParams(f"trials must be >= 1, got {trials}")
    k = params.r * params.t - params.w
    if params.q**k - 1 > cap:
        raise CapExceeded(f"q^k - 1 = {params.q ** k - 1} exceeds the exact-distance cap {cap}")
    rparams = _finish_params(
        params.q, params.r, params.mu, params.w, params.l, params.t, Strategy.RANDOM
    )
    best: tuple[SubspaceBasis, int] | None = None
    for i in range(trials):
        child_seed = seed * 1_000_003 + i
        subspace = build_subspace(rparams, layout, seed=child_seed)
        instance = generator_matrix(rparams, layout, subspace)
        d = min_distance_exact(instance, cap=cap, workers=workers)
        if best is None or d > best[1]:
            best = (subspace, d)
    assert best is not None
    return best


# --- preset parameter table ----------------------------------------------

# Long-code presets: row i targets distance i+5 with locality q-(i+2),
# group count l=q, and w=i+3 column-0 constraints (GLOBAL).  These presets
# deliberately exceed the disjoint-E bound, so build_layout wraps E back
# into B and the verifier reports distance claims as UNVERIFIED at scale.
PRESET_ROWS = tuple(range(1, 9))


def preset_params(row: int, q: int) -> LrcParams:
    """Parameters for one preset row at field size q."""
    if row not in PRESET_ROWS:
        raise InvalidParams(f"preset row must be in {PRESET_ROWS[0]}..{PRESET_ROWS[-1]}, got {row}")
    r = q - (row + 2)
    w = row + 3
    if r < 1:
        raise InvalidParams(f"preset row {row} needs q >= {row + 3}, got q={q}")
    if w > r - 1:
        raise InvalidParams(f"preset row {row} needs q >= {2 * row + 6} so that w <= r-1, got q={q}")
    return relaxed_params(q, r, 2, w, q, q, Strategy.GLOBAL)
