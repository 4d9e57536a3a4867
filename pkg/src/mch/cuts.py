"""K-feasible priority-cut enumeration with signatures and truth tables."""

from __future__ import annotations

from typing import NamedTuple, Optional

from .tt import TruthTable, cut_truth

_SIG_MULT = 0x9E3779B97F4A7C15


def leaf_sig(n: int) -> int:
    return 1 << (((n * _SIG_MULT) >> 58) & 63)


def sig_of(leaves) -> int:
    s = 0
    for n in leaves:
        s |= leaf_sig(n)
    return s


class Cut(NamedTuple):
    leaves: tuple            # strictly ascending node indices
    sig: int
    tt: Optional[TruthTable] = None

    def dominates(self, other: "Cut") -> bool:
        """True when self's leaves are a subset of other's."""
        if self.sig & ~other.sig:
            return False
        return set(self.leaves) <= set(other.leaves)


def _structural_key(c: Cut):
    return (len(c.leaves), c.sig, c.leaves)


def _filter_dominated(cands: list[tuple]) -> list[tuple]:
    """cands: list of (leaves, sig); drop duplicates and dominated sets."""
    seen = set()
    uniq = []
    bit_of: dict[int, int] = {}
    for leaves, sig in cands:
        if leaves in seen:
            continue
        seen.add(leaves)
        mask = 0
        for x in leaves:
            b = bit_of.get(x)
            if b is None:
                b = 1 << len(bit_of)
                bit_of[x] = b
            mask |= b
        uniq.append((leaves, sig, mask))
    # visit in size order: a set can only be dominated by a smaller kept
    # set (dominance is transitive, so checking kept entries suffices)
    order = sorted(range(len(uniq)), key=lambda i: len(uniq[i][0]))
    kept = []
    kept_idx = []
    for i in order:
        mask = uniq[i][2]
        dominated = False
        for m2 in kept:
            if m2 & ~mask == 0 and m2 != mask:
                dominated = True
                break
        if not dominated:
            kept.append(mask)
            kept_idx.append(i)
    kept_idx.sort()
    return [uniq[i][:2] for i in kept_idx]


def is_cut(net, root: int, leaves) -> bool:
    """True iff every PI-to-root path crosses a leaf."""
    leafset = set(leaves)
    if root in leafset:
        return True
    stack = [root]
    seen = set()
    while stack:
        n = stack.pop()
        if n in seen or n in leafset:
            continue
        seen.add(n)
        if net.is_pi(n):
            return False
        stack.extend(f.node for f in net.fanins(n))
    return True


def merge_leaf_sets(sets: list[tuple], k: int):
    """Union of per-fanin leaf tuples, or None when more than k leaves."""
    merged = set()
    for s in sets:
        merged |= set(s)
        if len(merged) > k:
            return None
    return tuple(sorted(merged))


def merge_fanin_cuts(fanin_cuts: list, k: int) -> list[tuple]:
    """Cross-product of fanin cut sets, k-bounded and dominance-filtered.

    Returns (leaves, sig) pairs; the trivial cut is not included.
    """
    cands = []
    if len(fanin_cuts) == 2:
        for a in fanin_cuts[0]:
            for b in fanin_cuts[1]:
                if (a.sig | b.sig).bit_count() > k:
                    continue
                m = merge_leaf_sets([a.leaves, b.leaves], k)
                if m is not None:
                    cands.append((m, sig_of(m)))
    else:
        for a in fanin_cuts[0]:
            for b in fanin_cuts[1]:
                for c in fanin_cuts[2]:
                    if (a.sig | b.sig | c.sig).bit_count() > k:
                        continue
                    m = merge_leaf_sets([a.leaves, b.leaves, c.leaves], k)
                    if m is not None:
                        cands.append((m, sig_of(m)))
    return _filter_dominated(cands)


def enumerate_cuts(net, k: int, l: Optional[int] = None,
                   with_tts: bool = True) -> dict[int, list[Cut]]:
    """Per-node priority cut sets.

    PI cut set is the trivial cut only.  Gate cut sets are dominance-filtered
    merges of the fanin cut sets, truncated to the best `l` by the structural
    comparator (fewer leaves, then lower signature), with the trivial cut
    always appended outside the budget.  `l=None` keeps everything.
    """
    if not 2 <= k <= 6:
        raise ValueError("cut size must be in [2, 6]")
    if l is not None and l < 1:
        raise ValueError("cut limit must be >= 1")
    cutsets: dict[int, list[Cut]] = {0: [Cut((), 0, TruthTable.const(False))]}
    for n in net.pis:
        cutsets[n] = [Cut((n,), leaf_sig(n), TruthTable.var(0, 1))]
    for n in net.gates():
        fanin_cuts = [cutsets[f.node] for f in net.fanins(n)]
        kept = merge_fanin_cuts(fanin_cuts, k)
        cuts = [Cut(leaves, sig) for leaves, sig in kept]
        cuts.sort(key=_structural_key)
        if l is not None:
            cuts = cuts[:l]
        trivial = Cut((n,), leaf_sig(n))
        if all(c.leaves != trivial.leaves for c in cuts):
            cuts.append(trivial)
        if with_tts:
            cuts = [Cut(c.leaves, c.sig, cut_truth(net, n, list(c.leaves)))
                    for c in cuts]
        cutsets[n] = cuts
    return cutsets


def all_cuts_bruteforce(net, root: int, k: int) -> list[tuple]:
    """Oracle: every subset of TFI(root) with <= k members that satisfies the
    cut property, dominance-filtered.  Exponential; test-sized nets only."""
    import itertools

    tfi = sorted(m for m in net.tfi([root]) if not net.is_const(m))
    found = []
    for size in range(1, k + 1):
        for combo in itertools.combinations(tfi, size):
            if is_cut(net, root, combo):
                found.append((combo, sig_of(combo)))
    kept = _filter_dominated(found)
    return sorted((leaves for leaves, _ in kept),
                  key=lambda ls: (len(ls), sig_of(ls), ls))
