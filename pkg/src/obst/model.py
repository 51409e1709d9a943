"""Problem instances and hierarchical memory models.

All frequencies and access costs are exact nonnegative integers; every
cost computed from them stays exact (Python integers never overflow).
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass

from .errors import ParseError


@dataclass(frozen=True)
class ProblemInstance:
    """Keys 1..n with unnormalized access frequencies.

    p[i-1] is the frequency that a search argument equals key i, and
    q[j] the frequency that it falls strictly between keys j and j+1
    (q[0] = below key 1, q[n] = above key n).
    """

    p: tuple[int, ...]
    q: tuple[int, ...]

    def __post_init__(self):
        p = tuple(int(v) for v in self.p)
        q = tuple(int(v) for v in self.q)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        if len(p) < 1:
            raise ValueError("need at least one key")
        if len(q) != len(p) + 1:
            raise ValueError(f"q must have n+1 = {len(p) + 1} entries, got {len(q)}")
        if any(v < 0 for v in p) or any(v < 0 for v in q):
            raise ValueError("frequencies must be nonnegative")
        if sum(p) + sum(q) == 0:
            raise ValueError("total weight must be positive")
        # prefix sums: _sp[k] = p_1+..+p_k, _sq[k] = q_0+..+q_{k-1}
        sp = [0]
        for v in p:
            sp.append(sp[-1] + v)
        sq = [0]
        for v in q:
            sq.append(sq[-1] + v)
        object.__setattr__(self, "_sp", tuple(sp))
        object.__setattr__(self, "_sq", tuple(sq))

    @property
    def n(self) -> int:
        return len(self.p)

    @property
    def total_weight(self) -> int:
        return self._sp[-1] + self._sq[-1]

    @property
    def q_total(self) -> int:
        return self._sq[-1]

    def weight(self, i: int, j: int) -> int:
        """Combined weight of keys i..j plus the surrounding gaps.

        The empty range (j = i-1) yields q_{i-1}; weight(1, n) is the
        total weight. O(1) after the prefix sums built at construction.
        """
        if not (1 <= i <= j + 1 <= self.n + 1):
            raise IndexError(f"weight range ({i}, {j}) out of bounds for n={self.n}")
        return (self._sp[j] - self._sp[i - 1]) + (self._sq[j + 1] - self._sq[i - 1])

    def scaled(self, t: int) -> "ProblemInstance":
        return ProblemInstance(tuple(t * v for v in self.p), tuple(t * v for v in self.q))


@dataclass(frozen=True)
class MemoryModel:
    """A memory hierarchy: level l offers ``levels[l][0]`` locations at
    access cost ``levels[l][1]``, costs strictly increasing.

    Addresses are 1-based and sorted so the per-address cost is a
    nondecreasing step function.
    """

    levels: tuple[tuple[int, int], ...]

    def __post_init__(self):
        levels = tuple((int(m), int(c)) for m, c in self.levels)
        object.__setattr__(self, "levels", levels)
        if not levels:
            raise ValueError("need at least one memory level")
        if any(m < 1 for m, _ in levels):
            raise ValueError("every level must have at least one location")
        if any(c < 1 for _, c in levels):
            raise ValueError("level costs must be positive")
        costs = [c for _, c in levels]
        if any(a >= b for a, b in zip(costs, costs[1:])):
            raise ValueError("level costs must be strictly increasing")
        cum = [0]
        for m, _ in levels:
            cum.append(cum[-1] + m)
        object.__setattr__(self, "_cum", tuple(cum))

    @classmethod
    def from_costs(cls, costs) -> "MemoryModel":
        """Build a model from an explicit multiset of per-location costs,
        grouped into levels by equal cost, sorted ascending."""
        costs = sorted(int(c) for c in costs)
        if not costs:
            raise ValueError("need at least one location cost")
        levels = []
        for c in costs:
            if levels and levels[-1][1] == c:
                levels[-1][0] += 1
            else:
                levels.append([1, c])
        return cls(tuple((m, c) for m, c in levels))

    @property
    def h(self) -> int:
        return len(self.levels)

    @property
    def total(self) -> int:
        return self._cum[-1]

    def mu(self, a: int) -> int:
        """Access cost of address a (the step function)."""
        if not (1 <= a <= self.total):
            raise IndexError(f"address {a} out of range 1..{self.total}")
        return self.levels[bisect.bisect_left(self._cum, a) - 1][1]

    def level_of(self, a: int) -> int:
        """1-based level number containing address a."""
        if not (1 <= a <= self.total):
            raise IndexError(f"address {a} out of range 1..{self.total}")
        return bisect.bisect_left(self._cum, a)

    def level_start(self, l: int) -> int:
        """First address of 1-based level l."""
        return self._cum[l - 1] + 1

    def restrict(self, s: int) -> "MemoryModel":
        """Model consisting of the cheapest s locations only."""
        if not (1 <= s <= self.total):
            raise ValueError(f"cannot restrict to {s} of {self.total} locations")
        levels = []
        left = s
        for m, c in self.levels:
            take = min(m, left)
            if take:
                levels.append((take, c))
            left -= take
            if left == 0:
                break
        return MemoryModel(tuple(levels))

    def location_costs(self, s: int | None = None) -> list[int]:
        """Costs of the cheapest s locations (all of them by default)."""
        if s is None:
            s = self.total
        out = []
        left = s
        for m, c in self.levels:
            take = min(m, left)
            out.extend([c] * take)
            left -= take
        if left:
            raise ValueError(f"model has only {self.total} locations, wanted {s}")
        return out


def tower_model(n: int) -> MemoryModel:
    """Memory model with level boundaries at tower-function values.

    Level l costs tower(l-1) and ends at address tower(l-1); the last
    level absorbs whatever remains of the n locations. For this family
    the cheap part of the hierarchy is tiny (fewer than lg n locations
    outside the last level) while the level count grows like log* n.
    """
    if n < 1:
        raise ValueError("need at least one location")
    levels = []
    prev_boundary = 0
    t = 1  # tower(0)
    while prev_boundary < n:
        boundary = min(t, n)
        levels.append((boundary - prev_boundary, t))
        prev_boundary = boundary
        t = 2**t
    return MemoryModel(tuple(levels))


def parse_instance(text: str) -> tuple[ProblemInstance, MemoryModel | None]:
    """Parse the flat instance-file format.

    Returns the instance and the memory model, or None when the file
    declares no memory section (RAM-only instances are valid).
    """
    n = None
    p = None
    q = None
    model = None
    pending_levels = 0
    level_rows: list[tuple[int, int]] = []

    def ints(tokens, ln):
        try:
            return [int(t) for t in tokens]
        except ValueError:
            raise ParseError(f"line {ln}: expected integers, got {' '.join(tokens)}") from None

    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if pending_levels:
            if tok[0] != "level" or len(tok) != 3:
                raise ParseError(f"line {ln}: expected 'level <size> <cost>'")
            m, c = ints(tok[1:], ln)
            level_rows.append((m, c))
            pending_levels -= 1
            if pending_levels == 0:
                try:
                    model = MemoryModel(tuple(level_rows))
                except ValueError as e:
                    raise ParseError(f"line {ln}: {e}") from None
            continue
        if tok[0] == "keys":
            if len(tok) != 2:
                raise ParseError(f"line {ln}: expected 'keys <n>'")
            (n,) = ints(tok[1:], ln)
            if n < 1:
                raise ParseError(f"line {ln}: key count must be positive")
        elif tok[0] == "p":
            p = ints(tok[1:], ln)
            if n is not None and len(p) != n:
                raise ParseError(f"line {ln}: p must have {n} entries, got {len(p)}")
        elif tok[0] == "q":
            q = ints(tok[1:], ln)
            if n is not None and len(q) != n + 1:
                raise ParseError(f"line {ln}: q must have {n + 1} entries, got {len(q)}")
        elif tok[0] == "memory" and len(tok) >= 2 and tok[1] == "levels":
            if len(tok) != 3:
                raise ParseError(f"line {ln}: expected 'memory levels <h>'")
            (pending_levels,) = ints(tok[2:], ln)
            if pending_levels < 1:
                raise ParseError(f"line {ln}: level count must be positive")
        elif tok[0] == "memory" and len(tok) >= 2 and tok[1] == "locations":
            try:
                model = MemoryModel.from_costs(ints(tok[2:], ln))
            except ValueError as e:
                raise ParseError(f"line {ln}: {e}") from None
        else:
            raise ParseError(f"line {ln}: unrecognized directive '{tok[0]}'")

    if pending_levels:
        raise ParseError(f"missing {pending_levels} 'level' line(s)")
    if n is None or p is None or q is None:
        raise ParseError("instance must declare keys, p, and q")
    if len(p) != n:
        raise ParseError(f"p must have {n} entries, got {len(p)}")
    if len(q) != n + 1:
        raise ParseError(f"q must have {n + 1} entries, got {len(q)}")
    try:
        inst = ProblemInstance(tuple(p), tuple(q))
    except ValueError as e:
        raise ParseError(str(e)) from None
    return inst, model


def instance_text(inst: ProblemInstance, model: MemoryModel | None = None) -> str:
    """Render an instance (and optional model) in the flat file format."""
    lines = [
        f"keys {inst.n}",
        "p " + " ".join(str(v) for v in inst.p),
        "q " + " ".join(str(v) for v in inst.q),
    ]
    if model is not None:
        lines.append(f"memory levels {model.h}")
        lines.extend(f"level {m} {c}" for m, c in model.levels)
    return "\n".join(lines) + "\n"
