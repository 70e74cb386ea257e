"""Orbit-closure degeneration rules as a rewriting system on block multisets.

Six local rules describe exactly when the closure of one strict-equivalence
orbit contains another: two trade sizes between same-side singular blocks,
two let a singular block absorb one unit of an eigenvalue block, one
rebalances two eigenvalue blocks at the same point, and one converts a
right/left singular pair into eigenvalue blocks of matching total size (with
pairwise distinct eigenvalues). Applying rules can only move toward more
generic structures; a sequence from A to B certifies that B's orbit closure
contains A's orbit.

For skew-symmetric pencils the rules are applied in mirrored or doubled
pairs so the block list stays realizable as a skew canonical form.

`closure_reachable` runs a breadth-first search over rule applications.
Fresh eigenvalues are drawn from an opaque symbolic pool and states compare
modulo renaming of the symbols, which keeps the search space finite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .blocks import BlockList, GeneralBlock, general_to_skew
from .errors import (
    MissingBlocks,
    PairingBroken,
    ShapeMismatch,
    SideConditionViolated,
)
from .points import INFINITY, SymbolicPoint, format_eigenvalue, parse_eigenvalue


@dataclass(frozen=True)
class RuleApplication:
    """One parametrized application of a degeneration rule.

    Rules 1/2 use (j, k); rules 3/4 use (j, k, eigenvalue); rule 5 uses
    (j, k, eigenvalue); rule 6 uses (p, q, sizes, eigenvalues).
    """

    rule: int
    j: int | None = None
    k: int | None = None
    p: int | None = None
    q: int | None = None
    eigenvalue: object = None
    sizes: tuple = None
    eigenvalues: tuple = None

    def __post_init__(self):
        if self.rule not in (1, 2, 3, 4, 5, 6):
            raise SideConditionViolated(f"unknown rule {self.rule}")

    def to_json_dict(self) -> dict:
        out = {"rule": self.rule}
        if self.rule in (1, 2, 3, 4, 5):
            out["j"] = self.j
            out["k"] = self.k
        if self.rule in (3, 4, 5):
            out["eigenvalue"] = format_eigenvalue(self.eigenvalue)
        if self.rule == 6:
            out["p"] = self.p
            out["q"] = self.q
            out["sizes"] = list(self.sizes)
            out["eigenvalues"] = [format_eigenvalue(e) for e in self.eigenvalues]
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "RuleApplication":
        rule = int(data["rule"])
        if rule in (1, 2):
            return cls(rule, j=int(data["j"]), k=int(data["k"]))
        if rule in (3, 4, 5):
            return cls(
                rule,
                j=int(data["j"]),
                k=int(data["k"]),
                eigenvalue=parse_eigenvalue(data["eigenvalue"]),
            )
        return cls(
            6,
            p=int(data["p"]),
            q=int(data["q"]),
            sizes=tuple(int(s) for s in data["sizes"]),
            eigenvalues=tuple(parse_eigenvalue(e) for e in data["eigenvalues"]),
        )


def _take(counts: dict, block: GeneralBlock):
    have = counts.get(block, 0)
    if have <= 0:
        raise MissingBlocks(f"block {block} not present")
    if have == 1:
        del counts[block]
    else:
        counts[block] = have - 1


def _put(counts: dict, block: GeneralBlock | None):
    if block is None:
        return
    counts[block] = counts.get(block, 0) + 1


def _eigen_or_none(index: int, point):
    """E block of the given index at a finite point or INFINITY; None if empty."""
    if index == 0:
        return None
    return GeneralBlock.eigen(index, point)


def apply_rule(blocklist: BlockList, app: RuleApplication) -> BlockList:
    """Apply one degeneration rule; consumed blocks must be present.

    Produced or consumed eigenvalue blocks of size zero are understood as
    empty and silently dropped. Total row and column counts are preserved
    (validated).
    """
    if blocklist.flavor != "general":
        raise ShapeMismatch("rules rewrite general block lists")
    counts = dict(blocklist.counts())
    r = app.rule
    if r in (1, 2):
        j, k = app.j, app.k
        if not 1 <= j <= k:
            raise SideConditionViolated(f"rule {r} needs 1 <= j <= k, got {j}, {k}")
        mk = GeneralBlock.right if r == 1 else GeneralBlock.left
        _take(counts, mk(j - 1))
        _take(counts, mk(k + 1))
        _put(counts, mk(j))
        _put(counts, mk(k))
    elif r in (3, 4):
        j, k = app.j, app.k
        if j < 0 or k < 0:
            raise SideConditionViolated(f"rule {r} needs j, k >= 0")
        mk = GeneralBlock.right if r == 3 else GeneralBlock.left
        _take(counts, mk(j))
        _take(counts, GeneralBlock.eigen(k + 1, app.eigenvalue))
        _put(counts, mk(j + 1))
        _put(counts, _eigen_or_none(k, app.eigenvalue))
    elif r == 5:
        j, k = app.j, app.k
        if not 1 <= j <= k:
            raise SideConditionViolated(f"rule 5 needs 1 <= j <= k, got {j}, {k}")
        _take(counts, GeneralBlock.eigen(j, app.eigenvalue))
        _take(counts, GeneralBlock.eigen(k, app.eigenvalue))
        _put(counts, _eigen_or_none(j - 1, app.eigenvalue))
        _put(counts, GeneralBlock.eigen(k + 1, app.eigenvalue))
    else:
        p, q, sizes, evs = app.p, app.q, app.sizes, app.eigenvalues
        if p < 0 or q < 0:
            raise SideConditionViolated("rule 6 needs p, q >= 0")
        if not sizes or len(sizes) != len(evs):
            raise SideConditionViolated("rule 6 needs matching sizes and eigenvalues")
        if any(s < 1 for s in sizes):
            raise SideConditionViolated("rule 6 block sizes must be positive")
        if sum(sizes) != p + q + 1:
            raise SideConditionViolated(
                f"rule 6 needs sizes summing to p+q+1={p + q + 1}, got {sum(sizes)}"
            )
        if len(set(evs)) != len(evs):
            raise SideConditionViolated("rule 6 eigenvalues must be pairwise distinct")
        _take(counts, GeneralBlock.right(p))
        _take(counts, GeneralBlock.left(q))
        for size, ev in zip(sizes, evs):
            _put(counts, GeneralBlock.eigen(size, ev))
    out_blocks = []
    for block, count in counts.items():
        out_blocks.extend([block] * count)
    out = BlockList.general(out_blocks)
    if (out.total_rows, out.total_cols) != (blocklist.total_rows, blocklist.total_cols):
        raise SideConditionViolated("rule application changed the total size")
    return out


def twin_application(app: RuleApplication) -> RuleApplication:
    """The mirrored application that keeps a skew-realizable list realizable."""
    r = app.rule
    if r in (1, 2):
        return RuleApplication(3 - r, j=app.j, k=app.k)
    if r in (3, 4):
        return RuleApplication(7 - r, j=app.j, k=app.k, eigenvalue=app.eigenvalue)
    if r == 5:
        return app
    return RuleApplication(6, p=app.q, q=app.p, sizes=app.sizes, eigenvalues=app.eigenvalues)


def apply_rule_paired(blocklist: BlockList, app: RuleApplication) -> BlockList:
    """Apply a rule together with its twin, preserving skew realizability.

    The input must be the unfolding of a skew block list. Singular-block
    rules mirror onto the transposed blocks, eigenvalue rules run twice,
    and the pair-conversion rule swaps its two singular indices.
    """
    try:
        general_to_skew(blocklist)
    except PairingBroken:
        raise PairingBroken("paired application needs a skew-realizable input")
    out = apply_rule(apply_rule(blocklist, app), twin_application(app))
    general_to_skew(out)  # raises PairingBroken if the twin did not restore pairing
    return out


# ---------------------------------------------------------------------------
# canonicalization modulo symbolic relabeling
# ---------------------------------------------------------------------------


def _block_key(block: GeneralBlock):
    ev = block.eigenvalue
    if ev is None:
        tag = (0,)
    elif isinstance(ev, Fraction):
        tag = (1, ev.numerator, ev.denominator)
    else:
        tag = (2, ev.name)
    return (block.kind, -block.index, tag)


def _relabel(blocks, mapping):
    out = []
    for b in blocks:
        if isinstance(b.eigenvalue, SymbolicPoint):
            out.append(GeneralBlock.finite(b.index, mapping[b.eigenvalue.name]))
        else:
            out.append(b)
    return out


def canonical_key(blocklist: BlockList):
    """Hashable state key, invariant under renaming of symbolic eigenvalues."""
    blocks = blocklist.blocks
    names = sorted({b.eigenvalue.name for b in blocks if isinstance(b.eigenvalue, SymbolicPoint)})
    if not names:
        return tuple(sorted(_block_key(b) for b in blocks))
    if len(names) <= 6:
        best = None
        for perm in itertools.permutations(range(len(names))):
            mapping = {name: SymbolicPoint(f"s{perm[i]}") for i, name in enumerate(names)}
            key = tuple(sorted(_block_key(b) for b in _relabel(blocks, mapping)))
            if best is None or key < best:
                best = key
        return best
    mapping = {name: SymbolicPoint(f"s{i}") for i, name in enumerate(names)}
    return tuple(sorted(_block_key(b) for b in _relabel(blocks, mapping)))


def equal_modulo_symbols(a: BlockList, b: BlockList) -> bool:
    return canonical_key(a) == canonical_key(b)


# ---------------------------------------------------------------------------
# reachability search
# ---------------------------------------------------------------------------


def _present_eigenvalues(blocklist: BlockList):
    """Finite eigenvalues present in the list, plus the point at infinity.

    Infinity is always a legal choice for newly created eigenvalue blocks,
    present or not; finite values only matter when they can merge with
    existing blocks, and genuinely new finite points come from the symbolic
    pool instead.
    """
    out = []
    seen = set()
    for b in blocklist.blocks:
        if b.kind == "E_finite" and b.eigenvalue not in seen:
            seen.add(b.eigenvalue)
            out.append(b.eigenvalue)
    out.append(INFINITY)
    return out


def _fresh_symbols(blocklist: BlockList, how_many: int):
    used = {b.eigenvalue.name for b in blocklist.blocks if isinstance(b.eigenvalue, SymbolicPoint)}
    out = []
    i = 0
    while len(out) < how_many:
        name = f"s{i}"
        if name not in used:
            out.append(SymbolicPoint(name))
        i += 1
    return out


def _partitions(total: int):
    """All partitions of total into positive parts, largest first."""
    if total == 0:
        yield ()
        return

    def rec(remaining, cap):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    yield from rec(total, total)


def enumerate_applications(blocklist: BlockList):
    """All legal single-rule applications from the given state.

    Rule 6 draws its fresh eigenvalues from the symbolic pool; assignments
    that differ only by which fresh symbol is used are generated once.
    """
    counts = blocklist.counts()
    rights = sorted({b.index for b in blocklist.blocks if b.kind == "L"})
    lefts = sorted({b.index for b in blocklist.blocks if b.kind == "L_T"})
    eigen_indices: dict = {}
    for b in blocklist.blocks:
        if b.kind == "E_finite":
            eigen_indices.setdefault(b.eigenvalue, []).append(b.index)
        elif b.kind == "E_infinite":
            eigen_indices.setdefault(INFINITY, []).append(b.index)

    apps = []
    # rules 1/2: trade sizes between same-side singular blocks
    for rule, idxs in ((1, rights), (2, lefts)):
        for u in idxs:
            for v in idxs:
                if u + 2 <= v:
                    apps.append(RuleApplication(rule, j=u + 1, k=v - 1))
    # rules 3/4: a singular block absorbs one unit of an eigenvalue block
    for rule, idxs in ((3, rights), (4, lefts)):
        for u in idxs:
            for ev, sizes in eigen_indices.items():
                for size in sorted(set(sizes)):
                    apps.append(RuleApplication(rule, j=u, k=size - 1, eigenvalue=ev))
    # rule 5: rebalance two blocks at one eigenvalue
    for ev, sizes in eigen_indices.items():
        distinct = sorted(set(sizes))
        for j in distinct:
            if j < 1:
                continue
            for k in distinct:
                if j < k or (j == k and sizes.count(j) >= 2):
                    apps.append(RuleApplication(5, j=j, k=k, eigenvalue=ev))
    # rule 6: convert a right/left singular pair into eigenvalue blocks.
    # Each part takes either an existing eigenvalue (injectively) or a fresh
    # symbol; fresh symbols are interchangeable, so they are filled in a fixed
    # positional order and equal-size duplicates are deduplicated.
    existing = _present_eigenvalues(blocklist)
    for p in rights:
        for q in lefts:
            total = p + q + 1
            for sizes in _partitions(total):
                t = len(sizes)
                fresh = _fresh_symbols(blocklist, t)
                seen = set()
                for used in range(min(t, len(existing)) + 1):
                    for positions in itertools.combinations(range(t), used):
                        for tags in itertools.permutations(existing, used):
                            chosen: list = [None] * t
                            for pos, tag in zip(positions, tags):
                                chosen[pos] = tag
                            fresh_iter = iter(fresh)
                            for i in range(t):
                                if chosen[i] is None:
                                    chosen[i] = next(fresh_iter)
                            sig = tuple(
                                sorted(
                                    (s, "*" if ev in fresh else str(ev))
                                    for s, ev in zip(sizes, chosen)
                                )
                            )
                            if sig in seen:
                                continue
                            seen.add(sig)
                            apps.append(
                                RuleApplication(
                                    6, p=p, q=q, sizes=sizes, eigenvalues=tuple(chosen)
                                )
                            )
    return apps


@dataclass
class ClosureResult:
    """Outcome of the reachability search.

    status "yes" certifies closure containment via the certificate; the
    inconclusive status only means nothing was found within the step bound.
    """

    status: str
    certificate: tuple | None = None
    states_explored: int = 0

    @property
    def reachable(self) -> bool:
        return self.status == "yes"


def closure_reachable(
    target: BlockList,
    source: BlockList,
    max_steps: int | None = None,
    max_states: int = 100_000,
) -> ClosureResult:
    """Breadth-first search for a rule sequence turning source into target.

    Symbolic eigenvalues match modulo renaming. "yes" comes with the found
    rule sequence; "no_within_bound" is inconclusive by design (the step
    bound defaults to the pencil size and may simply be too small).
    """
    if (target.total_rows, target.total_cols) != (source.total_rows, source.total_cols):
        raise ShapeMismatch("target and source must have equal total sizes")
    if max_steps is None:
        max_steps = max(source.total_rows, source.total_cols)
    target_key = canonical_key(target)
    source_key = canonical_key(source)
    if source_key == target_key:
        return ClosureResult(status="yes", certificate=(), states_explored=1)
    visited = {source_key: (None, None)}
    frontier = [(source, source_key)]
    explored = 1
    for _ in range(max_steps):
        next_frontier = []
        for state, state_key in frontier:
            for app in enumerate_applications(state):
                try:
                    nxt = apply_rule(state, app)
                except (MissingBlocks, SideConditionViolated):
                    continue
                key = canonical_key(nxt)
                if key in visited:
                    continue
                visited[key] = (state_key, app)
                explored += 1
                if key == target_key:
                    cert = []
                    k = key
                    while visited[k][1] is not None:
                        parent, used = visited[k]
                        cert.append(used)
                        k = parent
                    return ClosureResult(
                        status="yes",
                        certificate=tuple(reversed(cert)),
                        states_explored=explored,
                    )
                next_frontier.append((nxt, key))
                if explored >= max_states:
                    return ClosureResult(status="no_within_bound", states_explored=explored)
        frontier = next_frontier
        if not frontier:
            break
    return ClosureResult(status="no_within_bound", states_explored=explored)


def replay_certificate(source: BlockList, certificate) -> BlockList:
    """Apply a stored rule sequence; returns the final block list."""
    state = source
    for app in certificate:
        state = apply_rule(state, app)
    return state
