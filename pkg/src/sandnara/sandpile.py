"""Sandpile dynamics on the complete bipartite graph with a sink.

The graph has top vertices v_0, ..., v_{m-1} and bottom vertices
v_m, ..., v_{m+n-1}, every top joined to every bottom in both directions.
v_0 is the sink: it absorbs grains and never topples.  A configuration
assigns grain heights to v_1..v_{m+n-1}; positions 1..m-1 are top vertices
with out-degree n, positions m..m+n-1 bottom vertices with out-degree m.

Recurrence is decided by the burning criterion: topple the sink once (add a
grain to every bottom vertex) and stabilize; the state is recurrent exactly
when this returns to the start with every vertex toppling once.  The
stabilization is scheduled canonically as alternating parallel waves -- all
unstable bottoms, then all unstable tops, and so on -- because the wave
sizes of a recurrent state equal the bounce run lengths of its polyomino
image.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .config import guard_count
from .errors import NotRecurrent
from .polyomino import (
    CellSet,
    HeightSeqs,
    ParaPolyomino,
    cells_from_heights,
    count_para,
    ebounce,
    obounce,
    _iter_profiles,
)

Heights = tuple[int, ...]


class BipartiteConfig:
    """Grain heights on v_1..v_{m+n-1}; immutable."""

    __slots__ = ("m", "n", "heights")

    def __init__(self, m: int, n: int, heights: Sequence[int]):
        heights = tuple(heights)
        if m < 1 or n < 1:
            raise ValueError("need m, n >= 1")
        if len(heights) != m + n - 1:
            raise ValueError(f"expected {m + n - 1} heights, got {len(heights)}")
        if any(h < 0 for h in heights):
            raise ValueError("heights must be non-negative")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "heights", heights)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("BipartiteConfig is immutable")

    @property
    def top(self) -> Heights:
        """Heights of v_1..v_{m-1}."""
        return self.heights[: self.m - 1]

    @property
    def bottom(self) -> Heights:
        """Heights of v_m..v_{m+n-1}."""
        return self.heights[self.m - 1 :]

    def is_stable(self) -> bool:
        return all(h < self.n for h in self.top) and all(
            h < self.m for h in self.bottom
        )

    def is_increasing(self) -> bool:
        t, b = self.top, self.bottom
        return all(x <= y for x, y in zip(t, t[1:])) and all(
            x <= y for x, y in zip(b, b[1:])
        )

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "heights": list(self.heights)}

    @classmethod
    def from_json(cls, data: dict) -> "BipartiteConfig":
        return cls(data["m"], data["n"], data["heights"])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BipartiteConfig)
            and (self.m, self.n, self.heights) == (other.m, other.n, other.heights)
        )

    def __hash__(self) -> int:
        return hash((self.m, self.n, self.heights))

    def __repr__(self) -> str:
        return f"BipartiteConfig(m={self.m}, n={self.n}, heights={self.heights})"


Wave = tuple[str, frozenset[int]]


@dataclass(frozen=True)
class TopplingTrace:
    """Alternating toppling waves ('bottom'/'top', vertex index sets).

    Waves are recorded only when non-empty, so a trace may end on either
    side; for a recurrent configuration the waves partition {1..m+n-1}.
    """

    waves: tuple[Wave, ...]

    def bottom_waves(self) -> tuple[frozenset[int], ...]:
        return tuple(s for side, s in self.waves if side == "bottom")

    def top_waves(self) -> tuple[frozenset[int], ...]:
        return tuple(s for side, s in self.waves if side == "top")

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for _, s in self.waves)

    def wave_of(self, vertex: int) -> int | None:
        """1-based wave index i with vertex in Q_i or P_i, or None."""
        for pos, (_, s) in enumerate(self.waves):
            if vertex in s:
                return pos // 2 + 1
        return None

    def to_json(self) -> dict:
        return {
            "waves": [
                {"side": side, "vertices": sorted(s)} for side, s in self.waves
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> "TopplingTrace":
        return cls(
            tuple(
                (w["side"], frozenset(w["vertices"])) for w in data["waves"]
            )
        )


# -- core dynamics ------------------------------------------------------------


def stabilize(config: BipartiteConfig) -> tuple[BipartiteConfig, tuple[int, ...]]:
    """Topple until stable; returns the stable state and per-vertex topple counts.

    The result does not depend on the toppling order (grains sent to the sink
    are discarded), so a simple sweep schedule is used.
    """
    m, n = config.m, config.n
    h = list(config.heights)
    counts = [0] * (m + n - 1)
    unstable = True
    while unstable:
        unstable = False
        for i in range(m - 1):
            if h[i] >= n:
                k = h[i] // n
                h[i] -= k * n
                counts[i] += k
                for j in range(m - 1, m + n - 1):
                    h[j] += k
                unstable = True
        for j in range(m - 1, m + n - 1):
            if h[j] >= m:
                k = h[j] // m
                h[j] -= k * m
                counts[j] += k
                for i in range(m - 1):
                    h[i] += k
                unstable = True
    return BipartiteConfig(m, n, h), tuple(counts)


def _canonical_run(m: int, n: int, heights: Heights) -> tuple[Heights, list[Wave]]:
    """Burning run on raw heights: +1 to every bottom vertex, then alternate
    parallel bottom/top waves until stable."""
    h = list(heights)
    for j in range(m - 1, m + n - 1):
        h[j] += 1
    waves: list[Wave] = []
    while True:
        q = [j for j in range(m - 1, m + n - 1) if h[j] >= m]
        if not q:
            break
        waves.append(("bottom", frozenset(j + 1 for j in q)))
        gain = len(q)
        for j in q:
            h[j] -= m
        for i in range(m - 1):
            h[i] += gain
        p = [i for i in range(m - 1) if h[i] >= n]
        if not p:
            break
        waves.append(("top", frozenset(i + 1 for i in p)))
        gain = len(p)
        for i in p:
            h[i] -= n
        for j in range(m - 1, m + n - 1):
            h[j] += gain
    return tuple(h), waves


def canon_top(config: BipartiteConfig) -> TopplingTrace:
    """Wave trace of the burning run started from a stable configuration."""
    if not config.is_stable():
        raise ValueError("canonical toppling requires a stable configuration")
    _, waves = _canonical_run(config.m, config.n, config.heights)
    return TopplingTrace(tuple(waves))


def is_recurrent(config: BipartiteConfig) -> bool:
    """Burning criterion: the run returns to the start, each vertex toppling once."""
    if not config.is_stable():
        return False
    final, waves = _canonical_run(config.m, config.n, config.heights)
    if final != config.heights:
        return False
    total = sum(len(s) for _, s in waves)
    return total == config.m + config.n - 1


def level(config: BipartiteConfig) -> int:
    """Total grains above the recurrent minimum: sum(u) - n(m-1).

    For recurrent u this equals area(image polyomino) - (m+n-1).
    """
    return sum(config.heights) - config.n * (config.m - 1)


# -- sorting decomposition -----------------------------------------------------


def inc_decomp(config: BipartiteConfig) -> tuple[BipartiteConfig, tuple[int, ...]]:
    """Sort each block weakly increasing; return (sorted config, permutation).

    The permutation pi is 1-based with u_i = sorted[pi(i)] and is the
    lexicographically smallest among block-preserving choices: scanning
    positions in order, each value takes the smallest unused sorted slot
    that holds it.
    """
    m, n = config.m, config.n
    perm = [0] * (m + n - 1)
    inc: list[int] = []
    for lo, block in ((0, config.top), (m - 1, config.bottom)):
        order = sorted(block)
        inc.extend(order)
        slots: dict[int, list[int]] = {}
        for pos in range(len(order) - 1, -1, -1):
            slots.setdefault(order[pos], []).append(lo + pos + 1)
        for i, v in enumerate(block):
            perm[lo + i] = slots[v].pop()
    return BipartiteConfig(m, n, inc), tuple(perm)


# -- polyomino correspondence ----------------------------------------------------


def cell_image(config: BipartiteConfig) -> CellSet:
    """Cell diagram of the sorted heights: column i truncated to height
    1 + a_i, row j to width 1 + b_j, where (a | b) are the sorted blocks."""
    m, n = config.m, config.n
    a = tuple(sorted(config.top))
    b = tuple(sorted(config.bottom))
    return cells_from_heights(HeightSeqs(m, n, a, b))


def config_of_para(poly: ParaPolyomino) -> BipartiteConfig:
    """Increasing recurrent configuration whose cell image is the polyomino:
    a_i = (top of column i) - 1, b_j = (right end of row j) - 1."""
    m, n = poly.m, poly.n
    a = [poly.top[i] - 1 for i in range(m - 1)]
    b = [poly.row_span(j)[1] - 1 for j in range(1, n + 1)]
    return BipartiteConfig(m, n, tuple(a) + tuple(b))


# -- decorated polyominoes -------------------------------------------------------


@dataclass(frozen=True)
class DecoratedPolyomino:
    """Polyomino with ordered set partitions attached to its bounce runs.

    A partitions {1..m-1} with part sizes equal to the west run lengths,
    B partitions {m..m+n-1} with part sizes equal to the south run lengths.
    """

    poly: ParaPolyomino
    A: tuple[frozenset[int], ...]
    B: tuple[frozenset[int], ...]

    def __post_init__(self):
        m, n = self.poly.m, self.poly.n
        runs = self.poly.bounce_seq()
        if tuple(len(s) for s in self.A) != ebounce(runs):
            raise ValueError("A part sizes must match the west bounce runs")
        if tuple(len(s) for s in self.B) != obounce(runs):
            raise ValueError("B part sizes must match the south bounce runs")
        got_a = sorted(x for s in self.A for x in s)
        got_b = sorted(x for s in self.B for x in s)
        if got_a != list(range(1, m)):
            raise ValueError("A must partition {1..m-1}")
        if got_b != list(range(m, m + n)):
            raise ValueError("B must partition {m..m+n-1}")

    def to_json(self) -> dict:
        out = self.poly.to_json()
        out["A"] = [sorted(s) for s in self.A]
        out["B"] = [sorted(s) for s in self.B]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "DecoratedPolyomino":
        return cls(
            ParaPolyomino.from_json(data),
            tuple(frozenset(s) for s in data["A"]),
            tuple(frozenset(s) for s in data["B"]),
        )


def decorate(config: BipartiteConfig) -> DecoratedPolyomino:
    """Map a recurrent configuration to its decorated polyomino: the cell
    image plus the top/bottom wave sets of the canonical toppling."""
    if not is_recurrent(config):
        raise NotRecurrent(f"{config!r} is not recurrent")
    poly = cell_image(config).as_para()
    assert poly is not None  # guaranteed for recurrent configurations
    trace = canon_top(config)
    return DecoratedPolyomino(poly, trace.top_waves(), trace.bottom_waves())


def undecorate(dec: DecoratedPolyomino) -> BipartiteConfig:
    """Canonical preimage of a decorated polyomino.

    Heights are read from the increasing representative of the polyomino and
    redistributed wave by wave, giving ascending heights to ascending vertex
    labels inside each wave.  decorate(undecorate(d)) == d always holds; the
    two maps are mutual inverses on the image of undecorate (inside a wave,
    decorations cannot distinguish label orderings, so decorate is not
    injective on all recurrent states).
    """
    inc = config_of_para(dec.poly)
    m, n = inc.m, inc.n
    trace = canon_top(inc)
    heights = [0] * (m + n - 1)
    for dec_side, inc_waves in (
        (dec.A, trace.top_waves()),
        (dec.B, trace.bottom_waves()),
    ):
        if len(dec_side) != len(inc_waves):
            raise ValueError("decoration waves do not match the polyomino")
        for labels, positions in zip(dec_side, inc_waves):
            vals = sorted(inc.heights[p - 1] for p in positions)
            for label, v in zip(sorted(labels), vals):
                heights[label - 1] = v
    return BipartiteConfig(m, n, heights)


# -- enumeration ------------------------------------------------------------------


def count_rec(m: int, n: int) -> int:
    """|Rec| = m^{n-1} n^{m-1} (the spanning-tree count of the graph)."""
    return m ** (n - 1) * n ** (m - 1)


def count_stable(m: int, n: int) -> int:
    return n ** (m - 1) * m**n


def _distinct_perms(vals: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Distinct permutations of a multiset, in ascending lexicographic order."""
    vals = sorted(vals)
    k = len(vals)
    if k == 0:
        yield ()
        return
    counts: dict[int, int] = {}
    for v in vals:
        counts[v] = counts.get(v, 0) + 1
    keys = sorted(counts)
    out: list[int] = []

    def rec() -> Iterator[tuple[int, ...]]:
        if len(out) == k:
            yield tuple(out)
            return
        for v in keys:
            if counts[v]:
                counts[v] -= 1
                out.append(v)
                yield from rec()
                out.pop()
                counts[v] += 1

    yield from rec()


def enumerate_rec_star(
    m: int, n: int, max_objects: int | None = None
) -> Iterator[BipartiteConfig]:
    """Increasing recurrent configurations, one per polyomino, in the
    canonical polyomino order."""
    guard_count(count_para(m, n), max_objects, f"Rec*(D_{{{m},{n}}})")
    for top, bot in _iter_profiles(m, n):
        yield config_of_para(ParaPolyomino(m, n, top, bot))


def enumerate_rec(
    m: int, n: int, max_objects: int | None = None
) -> Iterator[BipartiteConfig]:
    """All recurrent configurations: every block-wise rearrangement of every
    increasing recurrent state.  Count is m^{n-1} n^{m-1}."""
    guard_count(count_rec(m, n), max_objects, f"Rec(D_{{{m},{n}}})")
    for inc in enumerate_rec_star(m, n, max_objects=None):
        for t in _distinct_perms(inc.top):
            for b in _distinct_perms(inc.bottom):
                yield BipartiteConfig(m, n, t + b)
