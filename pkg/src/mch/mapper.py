"""Choice-aware cut-based technology mapping for LUT and cell targets.

The mapper covers a choice network with K-input LUTs or library cells.
Cut sets are propagated so that a representative node sees its own cuts
plus every class member's cuts with the phase folded into the truth
table; the dynamic program then picks whichever structure maps cheapest.
A delay round establishes optimal arrivals, and area-flow plus exact-area
rounds recover area under required times.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .choices import ChoiceNetwork
from .cuts import (Cut, _filter_dominated, leaf_sig, merge_leaf_sets,
                   sig_of)
from .network import AND2, MAJ3, XOR2
from .npn import apply_npn, compose, npn_canonize
from .tt import FULL, TruthTable, maj_tt

DELAY = "delay"
AREA = "area"
BALANCED = "balanced"
LUT = "lut"
CELL = "cell"

INF = math.inf
_EPS = 1e-9


class MapParams(NamedTuple):
    k: int = 6
    l: int = 8
    mode: str = BALANCED
    rounds: int = 4
    target: str = LUT


class MapError(Exception):
    pass


class LibraryError(MapError):
    pass


# -- choice-cut propagation -------------------------------------------


def _combos(fanin_cuts: list):
    if len(fanin_cuts) == 2:
        for a in fanin_cuts[0]:
            for b in fanin_cuts[1]:
                yield (a, b)
    else:
        for a in fanin_cuts[0]:
            for b in fanin_cuts[1]:
                for c in fanin_cuts[2]:
                    yield (a, b, c)


_SPREAD: dict[tuple, list] = {}


def _spread_masks(pos: tuple, v: int) -> list:
    """masks[m] = set of v-var minterms projecting to sub-minterm m."""
    key = (pos, v)
    masks = _SPREAD.get(key)
    if masks is None:
        masks = [0] * (1 << len(pos))
        for m in range(1 << v):
            inner = 0
            for i, pi in enumerate(pos):
                inner |= ((m >> pi) & 1) << i
            masks[inner] |= 1 << m
        _SPREAD[key] = masks
    return masks


_EXPAND: dict[tuple, TruthTable] = {}


def _expand(tt: TruthTable, sub: tuple, leaves: tuple) -> TruthTable:
    """Re-express a cut tt over `sub` as a tt over the superset `leaves`."""
    key = (tt.bits, sub, leaves)
    hit = _EXPAND.get(key)
    if hit is not None:
        return hit
    pos = tuple(leaves.index(x) for x in sub)
    v = len(leaves)
    masks = _spread_masks(pos, v)
    bits = 0
    tb = tt.bits
    for m in range(len(masks)):
        if (tb >> m) & 1:
            bits |= masks[m]
    out = TruthTable.create(bits, v)
    if len(_EXPAND) < 1_000_000:
        _EXPAND[key] = out
    return out


def _combine(kind: str, fanins: tuple, combo: tuple,
             leaves: tuple) -> TruthTable:
    """Truth table of a merged cut from its fanin cut tables."""
    ins = []
    for f, c in zip(fanins, combo):
        t = _expand(c.tt, c.leaves, leaves)
        ins.append(~t if f.neg else t)
    if kind == AND2:
        return ins[0] & ins[1]
    if kind == XOR2:
        return ins[0] ^ ins[1]
    if kind == MAJ3:
        return maj_tt(ins[0], ins[1], ins[2])
    raise MapError(f"cannot combine cut tables for kind {kind}")


def _propagate(cn: ChoiceNetwork, k: int, l: Optional[int]):
    """Per-node cut sets over the choice network plus a dependency order.

    A representative's set is the union of its own cuts and all member
    cuts (member tt complemented when the member is the inverse phase),
    dominance-filtered, structurally sorted and truncated to l.  The
    returned order lists every gate so that all cut leaves of a node,
    including leaves inside member cones, appear before the node itself.
    """
    net = cn.base
    cutsets: dict[int, list[Cut]] = {
        0: [Cut((), 0, TruthTable.const(False))]}
    for n in net.pis:
        cutsets[n] = [Cut((n,), leaf_sig(n), TruthTable.var(0, 1))]
    state: dict[int, int] = {}
    order: list[int] = []

    def finish(n: int) -> None:
        fanins = net.fanins(n)
        fanin_cuts = [cutsets[f.node] for f in fanins]
        pool: list[tuple] = []
        combo_of: dict[tuple, tuple] = {}
        for combo in _combos(fanin_cuts):
            sig = 0
            for c in combo:
                sig |= c.sig
            if sig.bit_count() > k:
                continue
            leaves = merge_leaf_sets([c.leaves for c in combo], k)
            if leaves is None:
                continue
            pool.append((leaves, sig_of(leaves)))
            combo_of.setdefault(leaves, combo)
        choice_tts: dict[tuple, TruthTable] = {}
        for m in cn.members(n) if n in cn.first_choice else ():
            fold = FULL if cn.phase[m] else 0
            for c in cutsets[m]:
                if c.leaves == (m,) or c.leaves in combo_of \
                        or c.leaves in choice_tts:
                    continue
                pool.append((c.leaves, c.sig))
                choice_tts[c.leaves] = TruthTable(c.tt.bits ^ fold,
                                                  c.tt.var_count)
        kept = _filter_dominated(pool)
        kept.sort(key=lambda p: (len(p[0]), p[1], p[0]))
        if l is not None and len(kept) > l:
            # split the budget so member cuts never crowd out the node's
            # own structural cuts entirely
            own = [p for p in kept if p[0] in combo_of]
            mem = [p for p in kept if p[0] not in combo_of]
            own_take = min(len(own), l - min(len(mem), l // 2))
            kept = own[:own_take] + mem[:l - own_take]
            kept.sort(key=lambda p: (len(p[0]), p[1], p[0]))
        cuts = []
        for leaves, sig in kept:
            tt = choice_tts.get(leaves)
            if tt is None:
                tt = _combine(net.kind(n), fanins, combo_of[leaves],
                              leaves)
            cuts.append(Cut(leaves, sig, tt))
        cuts.append(Cut((n,), leaf_sig(n), TruthTable.var(0, 1)))
        cutsets[n] = cuts
        order.append(n)
        state[n] = 2

    for start in net.gates():
        if state.get(start) == 2:
            continue
        stack = [start]
        while stack:
            n = stack[-1]
            if state.get(n) == 2 or not net.is_gate(n):
                stack.pop()
                continue
            deps = [f.node for f in net.fanins(n)]
            if n in cn.first_choice:
                deps.extend(cn.members(n))
            pend = [d for d in deps
                    if net.is_gate(d) and state.get(d) != 2]
            if pend:
                if state.get(n) == 1 and any(state.get(d) == 1
                                             for d in pend):
                    raise MapError("cyclic choice dependencies")
                state.setdefault(n, 1)
                stack.extend(pend)
                continue
            stack.pop()
            finish(n)
    return cutsets, order


def propagate_choice_cuts(cn: ChoiceNetwork, k: int = 4,
                          l: Optional[int] = 8) -> dict[int, list[Cut]]:
    return _propagate(cn, k, l)[0]


# -- mapped netlist ----------------------------------------------------


class Instance(NamedTuple):
    out: int                 # id; ids 0..n_pis-1 are the primary inputs
    cell: str                # cell name, or "lut"
    area: float
    tt: TruthTable           # function over ins, in order
    ins: tuple               # ids of input drivers


@dataclass
class MappedNetlist:
    target: str
    n_pis: int
    instances: list = field(default_factory=list)
    outputs: list = field(default_factory=list)   # (id, negated) pairs
    stats: dict = field(default_factory=dict)

    def simulate(self, pi_words: list, width: int) -> list:
        mask = (1 << width) - 1
        vals: dict[int, int] = {i: pi_words[i] & mask
                                for i in range(self.n_pis)}
        for inst in self.instances:
            ins = [vals[i] for i in inst.ins]
            out = 0
            for m in range(1 << inst.tt.var_count):
                if not inst.tt.value_at(m):
                    continue
                term = mask
                for j, w in enumerate(ins):
                    term &= w if (m >> j) & 1 else ~w
                out |= term
            vals[inst.out] = out & mask
        return [(vals[i] ^ (mask if neg else 0)) & mask
                for i, neg in self.outputs]


def _check_structure(m: MappedNetlist) -> bool:
    defined = set(range(m.n_pis))
    for inst in m.instances:
        if inst.out in defined:
            return False
        if len(inst.ins) != inst.tt.var_count:
            return False
        if any(i not in defined for i in inst.ins):
            return False
        defined.add(inst.out)
    return all(i in defined for i, _ in m.outputs)


def cover_check(m: MappedNetlist, src, budget: int = 4096) -> bool:
    """Legal-cover plus functional-equivalence check against the source.

    Exhaustive for up to 16 inputs; random patterns plus all-0/all-1
    corners above that, so a pass on wide networks is evidence, not
    proof.
    """
    import random

    from .network import exhaustive_patterns

    if not _check_structure(m):
        return False
    if m.n_pis != len(src.pis) or len(m.outputs) != len(src.outputs):
        return False
    npi = len(src.pis)
    if npi <= 16:
        width = 1 << max(npi, 1)
        pats = exhaustive_patterns(src.pis)
        words = [pats[p] for p in src.pis]
    else:
        width = min(budget, 256)
        rng = random.Random(0xC07E)
        # pattern 0 is the all-zeros corner, the top pattern all-ones
        words = [(rng.getrandbits(width) & ~1) | (1 << (width - 1))
                 for _ in range(npi)]
    got = m.simulate(words, width)
    want = src.output_values({p: words[i] for i, p in enumerate(src.pis)},
                             width)
    return got == want


# -- LUT mapping -------------------------------------------------------


def _dep_order(cn: ChoiceNetwork):
    """Gate order where all cut leaves of a node, including leaves inside
    member cones, come before the node itself."""
    net = cn.base
    state: dict[int, int] = {}
    order: list[int] = []
    for start in net.gates():
        if state.get(start) == 2:
            continue
        stack = [start]
        while stack:
            n = stack[-1]
            if state.get(n) == 2 or not net.is_gate(n):
                stack.pop()
                continue
            deps = [f.node for f in net.fanins(n)]
            if n in cn.first_choice:
                deps.extend(cn.members(n))
            pend = [d for d in deps
                    if net.is_gate(d) and state.get(d) != 2]
            if pend:
                if state.get(n) == 1 and any(state.get(d) == 1
                                             for d in pend):
                    raise MapError("cyclic choice dependencies")
                state[n] = 1
                stack.extend(pend)
                continue
            stack.pop()
            state[n] = 2
            order.append(n)
    return order


def map_lut(cn: ChoiceNetwork, p: MapParams = MapParams()) -> MappedNetlist:
    if p.target != LUT:
        raise MapError("map_lut needs target=lut")
    if not 2 <= p.k <= 6:
        raise MapError("LUT size must be in [2, 6]")
    net = cn.base
    order = _dep_order(cn)
    size = len(net)
    arrival = [0.0] * size
    flow = [0.0] * size
    best: list = [None] * size
    req = [INF] * size
    po_gates = [s.node for s in net.outputs if net.is_gate(s.node)]
    # fanout estimates from the structural cone only, so member gates do
    # not inflate the sharing estimate of original nodes
    fouts = [0] * size
    for n in net.tfi(po_gates, gates_only=True):
        for f in net.fanins(n):
            fouts[f.node] += 1
    for s in net.outputs:
        fouts[s.node] += 1
    est = [max(1.0, f) for f in fouts]
    cutsets: dict[int, list[Cut]] = {
        0: [Cut((), 0, TruthTable.const(False))]}
    for pi in net.pis:
        cutsets[pi] = [Cut((pi,), leaf_sig(pi), TruthTable.var(0, 1))]
    # cut functions depend only on (node, leaf set); reuse across rounds
    tt_cache: dict[tuple, TruthTable] = {}

    def cut_arrival(c: Cut) -> float:
        return 1.0 + max((arrival[x] for x in c.leaves), default=-1.0)

    def cut_flow(c: Cut) -> float:
        return 1.0 + sum(flow[x] / est[x] for x in c.leaves)

    def enum_round(delay_pri: bool, constrained: bool) -> None:
        """Re-enumerate priority cuts with this round's cost key and pick
        each node's best feasible cut as we go."""
        for n in order:
            fanins = net.fanins(n)
            fanin_cuts = [cutsets[f.node] for f in fanins]
            pool: list[tuple] = []
            combo_of: dict[tuple, tuple] = {}
            for combo in _combos(fanin_cuts):
                sig = 0
                for c in combo:
                    sig |= c.sig
                if sig.bit_count() > p.k:
                    continue
                leaves = merge_leaf_sets([c.leaves for c in combo], p.k)
                if leaves is None:
                    continue
                if leaves not in combo_of:
                    pool.append((leaves, sig_of(leaves), None))
                    combo_of[leaves] = combo
            if n in cn.first_choice:
                seen = set(combo_of)
                for m in cn.members(n):
                    fold = FULL if cn.phase[m] else 0
                    for c in cutsets[m]:
                        if c.leaves == (m,) or c.leaves in seen:
                            continue
                        seen.add(c.leaves)
                        pool.append((c.leaves, c.sig,
                                     TruthTable(c.tt.bits ^ fold,
                                                c.tt.var_count)))
            tt_of = {leaves: tt for leaves, _, tt in pool}
            kept = _filter_dominated([(lv, sg) for lv, sg, _ in pool])
            scored = []
            for leaves, sig in kept:
                a = 1.0 + max((arrival[x] for x in leaves), default=-1.0)
                fl = 1.0 + sum(flow[x] / est[x] for x in leaves)
                key = ((a, fl, len(leaves)) if delay_pri
                       else (fl, a, len(leaves)))
                scored.append((key, a, leaves, sig))
            scored.sort(key=lambda s: s[0])
            if p.l is not None:
                scored = scored[:p.l]
            cuts = []
            chosen = None
            for key, a, leaves, sig in scored:
                tt = tt_cache.get((n, leaves))
                if tt is None:
                    tt = tt_of[leaves]
                    if tt is None:
                        tt = _combine(net.kind(n), fanins, combo_of[leaves],
                                      leaves)
                    tt_cache[(n, leaves)] = tt
                c = Cut(leaves, sig, tt)
                cuts.append(c)
                if chosen is None and (not constrained
                                       or a <= req[n] + _EPS):
                    chosen = c
            if chosen is None:
                chosen = cuts[0]
            cuts.append(Cut((n,), leaf_sig(n), TruthTable.var(0, 1)))
            cutsets[n] = cuts
            best[n] = chosen
            arrival[n] = cut_arrival(chosen)
            flow[n] = cut_flow(chosen)

    enum_round(True, False)
    depth = max((arrival[n] for n in po_gates), default=0.0)

    def cover():
        refs = [0] * size
        seen: set[int] = set()
        stack = list(po_gates)
        for s in net.outputs:
            refs[s.node] += 1
        area = edges = 0
        while stack:
            n = stack.pop()
            if n in seen:
                continue
            seen.add(n)
            area += 1
            edges += len(best[n].leaves)
            for x in best[n].leaves:
                refs[x] += 1
                if net.is_gate(x):
                    stack.append(x)
        delay = max((arrival[n] for n in po_gates), default=0.0)
        return seen, refs, area, delay, edges

    def recompute_required(seen, limit: float) -> None:
        for n in range(size):
            req[n] = INF
        for n in po_gates:
            req[n] = min(req[n], limit)
        for n in reversed(order):
            if n not in seen or math.isinf(req[n]):
                continue
            for x in best[n].leaves:
                req[x] = min(req[x], req[n] - 1.0)

    def exact_round(seen, refs, delay_pri: bool) -> None:
        def ref_cut(c: Cut) -> int:
            a = 1
            for x in c.leaves:
                if net.is_gate(x):
                    refs[x] += 1
                    if refs[x] == 1:
                        a += ref_cut(best[x])
            return a

        def deref_cut(c: Cut) -> int:
            a = 1
            for x in c.leaves:
                if net.is_gate(x):
                    refs[x] -= 1
                    if refs[x] == 0:
                        a += deref_cut(best[x])
            return a

        for n in order:
            if refs[n] == 0 or n not in seen:
                continue
            old = best[n]
            deref_cut(old)
            bk = bc = None
            for c in cutsets[n]:
                if c.leaves == (n,):
                    continue
                a = cut_arrival(c)
                if a > req[n] + _EPS and c is not old:
                    continue
                ea = ref_cut(c)
                deref_cut(c)
                key = ((a, ea, len(c.leaves)) if delay_pri
                       else (ea, a, len(c.leaves)))
                if bk is None or key < bk:
                    bk, bc = key, c
            if bc is None:
                bc = old
            ref_cut(bc)
            best[n] = bc
            arrival[n] = cut_arrival(bc)

    seen, refs, area0, delay0, _ = cover()
    snapshot = (best[:], arrival[:], flow[:])
    delay_pri = p.mode == DELAY
    limit = INF if p.mode == AREA else depth
    for rnd in range(1, p.rounds):
        recompute_required(seen, limit)
        for n in range(size):
            est[n] = max(1.0, float(refs[n] if n in seen else fouts[n]))
        if rnd == p.rounds - 1 and p.rounds >= 3:
            exact_round(seen, refs, delay_pri)
        else:
            enum_round(delay_pri, True)
        seen, refs, area1, delay1, _ = cover()
        ok = area1 <= area0 and (delay1 <= limit + _EPS or p.mode == AREA)
        if p.mode == DELAY:
            ok = delay1 <= delay0 + _EPS and area1 <= area0
        if ok:
            snapshot = (best[:], arrival[:], flow[:])
            area0, delay0 = area1, delay1
        else:
            best[:], arrival[:], flow[:] = (list(x) for x in snapshot)
            seen, refs, area0, delay0, _ = cover()
    return _extract_lut(net, best, arrival, po_gates)


def _extract_lut(net, best, arrival, po_gates) -> MappedNetlist:
    n_pis = len(net.pis)
    id_of: dict[int, int] = {pi: i for i, pi in enumerate(net.pis)}
    m = MappedNetlist(LUT, n_pis)
    counter = [n_pis]

    def emit(node: int) -> None:
        stack = [node]
        while stack:
            n = stack[-1]
            if n in id_of:
                stack.pop()
                continue
            pend = [x for x in best[n].leaves if x not in id_of]
            if pend:
                stack.extend(pend)
                continue
            stack.pop()
            ins = tuple(id_of[x] for x in best[n].leaves)
            m.instances.append(Instance(counter[0], "lut", 1.0,
                                        best[n].tt, ins))
            id_of[n] = counter[0]
            counter[0] += 1

    def const_id() -> int:
        if 0 not in id_of:
            m.instances.append(Instance(counter[0], "lut", 1.0,
                                        TruthTable.const(False), ()))
            id_of[0] = counter[0]
            counter[0] += 1
        return id_of[0]

    for s in net.outputs:
        if net.is_const(s.node):
            m.outputs.append((const_id(), s.neg))
        else:
            if net.is_gate(s.node):
                emit(s.node)
            m.outputs.append((id_of[s.node], s.neg))
    m.stats = {
        "area": float(len(m.instances)),
        "delay": max((arrival[n] for n in po_gates), default=0.0),
        "edges": sum(len(i.ins) for i in m.instances),
    }
    return m


# -- cell library ------------------------------------------------------


class Cell(NamedTuple):
    name: str
    area: float
    tt: TruthTable
    pin_delays: tuple


class CellLibrary:
    """Cell set with NPN match tables.

    Text format, one cell per line:
        cell <name> <area> <hex-tt> <num-inputs> <pin-delay>...
    Comment lines start with '#'.  An inverter and both constants are
    mandatory; cells above six inputs are rejected.
    """

    def __init__(self, cells: list):
        self.cells = list(cells)
        self.inv: Optional[Cell] = None
        self.const0: Optional[Cell] = None
        self.const1: Optional[Cell] = None
        self._table: dict = {}
        self._queries: dict = {}
        var0 = TruthTable.var(0, 1)
        for cell in self.cells:
            v = cell.tt.var_count
            if v != len(cell.pin_delays):
                raise LibraryError(f"{cell.name}: pin delay count != inputs")
            if v == 0:
                if cell.tt.is_const0():
                    self.const0 = self.const0 or cell
                else:
                    self.const1 = self.const1 or cell
                continue
            if cell.tt.is_const0() or cell.tt.is_const1():
                raise LibraryError(f"{cell.name}: constant function with inputs")
            if v == 1:
                if cell.tt == ~var0 and (self.inv is None
                                         or cell.area < self.inv.area):
                    self.inv = cell
                continue
            canon = npn_canonize(cell.tt)
            key = (canon.tt.bits, v)
            self._table.setdefault(key, []).append((cell, canon.transform))
        if self.inv is None:
            raise LibraryError("library has no inverter")
        if self.const0 is None or self.const1 is None:
            raise LibraryError("library has no constant cells")

    @staticmethod
    def loads(text: str) -> "CellLibrary":
        cells = []
        for ln, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#")[0].strip()
            if not line:
                continue
            parts = line.split()
            if parts[0] != "cell" or len(parts) < 5:
                raise LibraryError(f"line {ln}: expected "
                                   f"'cell name area tt inputs delays...'")
            name = parts[1]
            try:
                area = float(parts[2])
                v = int(parts[4])
                tt = TruthTable.from_hex(parts[3], v)
                delays = tuple(float(x) for x in parts[5:])
            except ValueError as e:
                raise LibraryError(f"line {ln}: {e}") from None
            if v > 6:
                raise LibraryError(f"line {ln}: {name} has {v} inputs (max 6)")
            if len(delays) != v:
                raise LibraryError(f"line {ln}: {name} needs {v} pin delays")
            cells.append(Cell(name, area, tt, delays))
        return CellLibrary(cells)

    @staticmethod
    def load(path) -> "CellLibrary":
        with open(path) as fh:
            return CellLibrary.loads(fh.read())

    def matches(self, tt: TruthTable):
        """(cell, pin binding, phase) triples realizing tt or its inverse.

        Binding t means cell pin i is driven by cut variable t.perm[i],
        complemented when bit i of t.neg is set.  phase False realizes tt
        itself, True its complement.
        """
        v = tt.var_count
        span = 1 << v
        qkey = (tt.bits & ((1 << span) - 1), v)
        hit = self._queries.get(qkey)
        if hit is not None:
            return hit
        canon = npn_canonize(tt)
        out = []
        for cell, tg in self._table.get((canon.tt.bits, v), []):
            t = compose(canon.transform.inverse(), tg)
            # the physical cell computes its function without t's output
            # negation, so fold t.out_neg into the provided phase
            realized = apply_npn(cell.tt, t)
            if realized == tt:
                out.append((cell, t, bool(t.out_neg)))
            elif realized == ~tt:
                out.append((cell, t, not t.out_neg))
        self._queries[qkey] = out
        return out


def default_cell_library() -> CellLibrary:
    import os

    path = os.path.join(os.path.dirname(__file__), "data", "tiny.lib")
    return CellLibrary.load(path)


# -- standard-cell mapping ---------------------------------------------


class _CMatch(NamedTuple):
    kind: str                # "cell" | "inv" | "wire" | "pi" | "const"
    cell: Optional[Cell]
    pins: tuple              # (node, phase) pairs in cell pin order


def map_cells(cn: ChoiceNetwork, cl: CellLibrary,
              p: MapParams = MapParams(k=4, target=CELL)) -> MappedNetlist:
    if p.target != CELL:
        raise MapError("map_cells needs target=cell")
    if not 2 <= p.k <= 6:
        raise MapError("cut size must be in [2, 6]")
    net = cn.base
    order = _dep_order(cn)
    size = len(net)
    invd = max(cl.inv.pin_delays)
    inv_area = cl.inv.area
    arr = [[INF, INF] for _ in range(size)]
    fl = [[INF, INF] for _ in range(size)]
    chosen: list = [[None, None] for _ in range(size)]
    cands: list = [[(), ()] for _ in range(size)]
    req = [[INF, INF] for _ in range(size)]
    est = [[1.0, 1.0] for _ in range(size)]
    po_keys = [(s.node, s.neg) for s in net.outputs]
    fouts = [0] * size
    for n in net.tfi([s.node for s in net.outputs], gates_only=True):
        for f in net.fanins(n):
            fouts[f.node] += 1
    for s in net.outputs:
        fouts[s.node] += 1

    chosen[0][0] = _CMatch("const", cl.const0, ())
    chosen[0][1] = _CMatch("const", cl.const1, ())
    arr[0] = [0.0, 0.0]
    fl[0] = [cl.const0.area, cl.const1.area]
    for pi in net.pis:
        chosen[pi][0] = _CMatch("pi", None, ())
        chosen[pi][1] = _CMatch("inv", cl.inv, ((pi, 0),))
        arr[pi] = [0.0, invd]
        fl[pi] = [0.0, inv_area]
        est[pi][0] = max(1.0, float(fouts[pi]))

    def arr_of(m: _CMatch) -> float:
        if m.kind == "cell":
            return max(arr[x][ph] + m.cell.pin_delays[i]
                       for i, (x, ph) in enumerate(m.pins))
        if m.kind == "inv":
            x, ph = m.pins[0]
            return arr[x][ph] + invd
        if m.kind == "wire":
            x, ph = m.pins[0]
            return arr[x][ph]
        return 0.0

    def flow_of(m: _CMatch) -> float:
        if m.kind == "cell":
            return m.cell.area + sum(fl[x][ph] / est[x][ph]
                                     for x, ph in m.pins)
        if m.kind == "inv":
            x, ph = m.pins[0]
            return inv_area + fl[x][ph] / est[x][ph]
        if m.kind == "wire":
            x, ph = m.pins[0]
            return fl[x][ph] / est[x][ph]
        if m.kind == "const":
            return m.cell.area
        return 0.0

    def children(m: _CMatch):
        if m.kind in ("pi", "const"):
            return ()
        return m.pins

    def own_area(m: _CMatch) -> float:
        if m.kind == "cell" or m.kind == "const":
            return m.cell.area
        if m.kind == "inv":
            return inv_area
        return 0.0

    cutsets: dict[int, list[Cut]] = {
        0: [Cut((), 0, TruthTable.const(False))]}
    for pi in net.pis:
        cutsets[pi] = [Cut((pi,), leaf_sig(pi), TruthTable.var(0, 1))]
    var0 = TruthTable.var(0, 1)
    # a cut's function and match list depend only on (node, leaf set);
    # reuse them across rounds instead of recomputing per enumeration
    cut_cache: dict[tuple, tuple] = {}

    shrink_cache: dict[tuple, tuple] = {}

    def matches_for_cut(c: Cut):
        """Candidate matches per phase for one cut of a node."""
        out: list = [[], []]
        skey = (c.tt.bits, c.tt.var_count)
        hit = shrink_cache.get(skey)
        if hit is None:
            hit = c.tt.shrink_to_support()
            shrink_cache[skey] = hit
        tt_s, sup = hit
        v = len(sup)
        if v == 0:
            one = 1 if tt_s.is_const1() else 0
            out[0].append(_CMatch("wire", None, ((0, one),)))
            out[1].append(_CMatch("wire", None, ((0, 1 - one),)))
            return out
        sub = [c.leaves[i] for i in sup]
        if v == 1:
            flip = 1 if tt_s == ~var0 else 0
            for phase in (0, 1):
                out[phase].append(
                    _CMatch("wire", None, ((sub[0], phase ^ flip),)))
            return out
        for cell, t, neg in cl.matches(tt_s):
            pins = tuple((sub[t.perm[i]], (t.neg >> i) & 1)
                         for i in range(v))
            out[1 if neg else 0].append(_CMatch("cell", cell, pins))
        return out

    # merged cut pools are re-derivable from the fanin cut lists alone,
    # so later rounds can skip the merge when those lists are unchanged
    pool_cache: dict[int, tuple] = {}

    def enum_round(delay_pri: bool, constrained: bool) -> None:
        for n in order:
            fanins = net.fanins(n)
            fanin_cuts = [cutsets[f.node] for f in fanins]
            ckey = tuple(tuple(c.leaves for c in fc) for fc in fanin_cuts)
            if n in cn.first_choice:
                ckey += tuple(tuple(c.leaves for c in cutsets[m])
                              for m in cn.members(n))
            hit = pool_cache.get(n)
            if hit is not None and hit[0] == ckey:
                _, kept, tt_of, combo_of = hit
            else:
                pool: list[tuple] = []
                combo_of = {}
                for combo in _combos(fanin_cuts):
                    sig = 0
                    for c in combo:
                        sig |= c.sig
                    if sig.bit_count() > p.k:
                        continue
                    leaves = merge_leaf_sets([c.leaves for c in combo], p.k)
                    if leaves is None:
                        continue
                    if leaves not in combo_of:
                        pool.append((leaves, sig_of(leaves), None))
                        combo_of[leaves] = combo
                if n in cn.first_choice:
                    seen = set(combo_of)
                    for m in cn.members(n):
                        fold = FULL if cn.phase[m] else 0
                        for c in cutsets[m]:
                            if c.leaves == (m,) or c.leaves in seen:
                                continue
                            seen.add(c.leaves)
                            pool.append((c.leaves, c.sig,
                                         TruthTable(c.tt.bits ^ fold,
                                                    c.tt.var_count)))
                tt_of = {leaves: tt for leaves, _, tt in pool}
                kept = _filter_dominated([(lv, sg) for lv, sg, _ in pool])
                pool_cache[n] = (ckey, kept, tt_of, combo_of)
            scored = []
            for leaves, sig in kept:
                a = max((min(arr[x]) for x in leaves), default=0.0)
                f = sum(min(fl[x]) for x in leaves)
                key = (a, f, len(leaves)) if delay_pri else (f, a,
                                                             len(leaves))
                scored.append((key, leaves, sig))
            scored.sort(key=lambda s: s[0])
            if p.l is not None:
                scored = scored[:p.l]
            # keep the elementary fanin cut so a host primitive is always
            # matchable; without it a budgeted list can end up with only
            # functions the library cannot realize
            elem = tuple(sorted({f.node for f in fanins}))
            if elem in combo_of and all(lv != elem for _, lv, _ in scored):
                scored.append(((), elem, sig_of(elem)))
            cuts = []
            per_phase: list = [[], []]
            for _, leaves, sig in scored:
                cached = cut_cache.get((n, leaves))
                if cached is None:
                    tt = tt_of[leaves]
                    if tt is None:
                        tt = _combine(net.kind(n), fanins, combo_of[leaves],
                                      leaves)
                    c = Cut(leaves, sig, tt)
                    cached = (c, matches_for_cut(c))
                    cut_cache[(n, leaves)] = cached
                c, pm = cached
                cuts.append(c)
                per_phase[0].extend(pm[0])
                per_phase[1].extend(pm[1])
            cuts.append(Cut((n,), leaf_sig(n), TruthTable.var(0, 1)))
            cutsets[n] = cuts

            picked = [None, None]
            stats = [None, None]
            for phase in (0, 1):
                bk = None
                for m in per_phase[phase]:
                    a, f = arr_of(m), flow_of(m)
                    if constrained and a > req[n][phase] + _EPS:
                        continue
                    key = (a, f) if delay_pri else (f, a)
                    if bk is None or key < bk:
                        bk, picked[phase], stats[phase] = key, m, (a, f)
                if picked[phase] is None:
                    for m in per_phase[phase]:
                        a, f = arr_of(m), flow_of(m)
                        key = (a, f) if delay_pri else (f, a)
                        if bk is None or key < bk:
                            bk, picked[phase], stats[phase] = key, m, (a, f)
            if picked[0] is None and picked[1] is None:
                raise LibraryError(
                    f"no cell matches any cut function of node {n}")
            # realize a missing or expensive phase through an inverter
            invs = [None, None]
            for phase in (0, 1):
                if picked[1 - phase] is None:
                    continue
                m = _CMatch("inv", cl.inv, ((n, 1 - phase),))
                a = stats[1 - phase][0] + invd
                f = inv_area + stats[1 - phase][1]
                if picked[phase] is None:
                    invs[phase] = (m, (a, f))
                    continue
                key = (a, f) if delay_pri else (f, a)
                cur = (stats[phase] if delay_pri
                       else (stats[phase][1], stats[phase][0]))
                if key < cur:
                    invs[phase] = (m, (a, f))
            for phase in (0, 1):
                if invs[phase] is not None:
                    picked[phase], stats[phase] = invs[phase]
                chosen[n][phase] = picked[phase]
                arr[n][phase], fl[n][phase] = stats[phase]
                cands[n][phase] = tuple(per_phase[phase]) + (
                    _CMatch("inv", cl.inv, ((n, 1 - phase),)),)

    enum_round(True, False)
    depth = max((arr[x][1 if ph else 0] for x, ph in po_keys), default=0.0)

    def cover():
        refs: dict = {}
        area = 0.0
        edges = 0
        stack = []
        for x, ph in po_keys:
            key = (x, 1 if ph else 0)
            refs[key] = refs.get(key, 0) + 1
            if refs[key] == 1:
                stack.append(key)
        seen = set()
        while stack:
            key = stack.pop()
            if key in seen:
                continue
            seen.add(key)
            m = chosen[key[0]][key[1]]
            area += own_area(m)
            edges += len(children(m))
            for ck in children(m):
                refs[ck] = refs.get(ck, 0) + 1
                stack.append(ck)
        delay = max((arr[x][1 if ph else 0] for x, ph in po_keys),
                    default=0.0)
        return seen, refs, area, delay, edges

    def recompute_required(seen, limit: float) -> None:
        for n in range(size):
            req[n] = [INF, INF]
        for x, ph in po_keys:
            i = 1 if ph else 0
            req[x][i] = min(req[x][i], limit)
        post = []
        marks = set()

        def visit(key):
            stack = [(key, False)]
            while stack:
                k, expanded = stack.pop()
                if expanded:
                    post.append(k)
                    continue
                if k in marks:
                    continue
                marks.add(k)
                stack.append((k, True))
                for ck in children(chosen[k[0]][k[1]]):
                    stack.append((ck, False))

        for x, ph in po_keys:
            visit((x, 1 if ph else 0))
        for k in reversed(post):
            n, phase = k
            m = chosen[n][phase]
            r = req[n][phase]
            if math.isinf(r):
                continue
            if m.kind == "cell":
                for i, (x, ph) in enumerate(m.pins):
                    req[x][ph] = min(req[x][ph], r - m.cell.pin_delays[i])
            elif m.kind == "inv":
                x, ph = m.pins[0]
                req[x][ph] = min(req[x][ph], r - invd)
            elif m.kind == "wire":
                x, ph = m.pins[0]
                req[x][ph] = min(req[x][ph], r)

    def exact_round(refs, delay_pri: bool) -> None:
        def ref_key(key) -> float:
            m = chosen[key[0]][key[1]]
            a = own_area(m)
            for ck in children(m):
                refs[ck] = refs.get(ck, 0) + 1
                if refs[ck] == 1:
                    a += ref_key(ck)
            return a

        def deref_key(key) -> float:
            m = chosen[key[0]][key[1]]
            a = own_area(m)
            for ck in children(m):
                refs[ck] = refs.get(ck, 0) - 1
                if refs[ck] == 0:
                    a += deref_key(ck)
            return a

        for n in order:
            for phase in (0, 1):
                key = (n, phase)
                if refs.get(key, 0) <= 0:
                    continue
                old = chosen[n][phase]
                deref_key(key)
                bk = bm = None
                for m in cands[n][phase]:
                    if m.kind == "inv" and chosen[n][1 - phase] is not None \
                            and chosen[n][1 - phase].kind == "inv":
                        continue
                    a = arr_of(m)
                    if a > req[n][phase] + _EPS and m is not old:
                        continue
                    chosen[n][phase] = m
                    ea = ref_key(key)
                    deref_key(key)
                    k2 = (a, ea) if delay_pri else (ea, a)
                    if bk is None or k2 < bk:
                        bk, bm = k2, m
                if bm is None:
                    bm = old
                chosen[n][phase] = bm
                ref_key(key)
                arr[n][phase] = arr_of(bm)

    seen, refs, area0, delay0, _ = cover()
    snapshot = ([list(r) for r in arr], [list(r) for r in fl],
                [list(r) for r in chosen])
    delay_pri = p.mode == DELAY
    limit = INF if p.mode == AREA else depth
    for rnd in range(1, p.rounds):
        recompute_required(seen, limit)
        for n in range(size):
            for phase in (0, 1):
                r = refs.get((n, phase), 0)
                base_est = fouts[n] if phase == 0 else 1
                est[n][phase] = max(1.0, float(r if r else base_est))
        if rnd == p.rounds - 1 and p.rounds >= 3:
            exact_round(dict(refs), delay_pri)
        else:
            enum_round(delay_pri, True)
        seen, refs, area1, delay1, _ = cover()
        ok = area1 <= area0 + _EPS and (p.mode == AREA
                                        or delay1 <= limit + _EPS)
        if p.mode == DELAY:
            ok = delay1 <= delay0 + _EPS and area1 <= area0 + _EPS
        if ok:
            snapshot = ([list(r) for r in arr], [list(r) for r in fl],
                        [list(r) for r in chosen])
            area0, delay0 = area1, delay1
        else:
            arr[:] = [list(r) for r in snapshot[0]]
            fl[:] = [list(r) for r in snapshot[1]]
            chosen[:] = [list(r) for r in snapshot[2]]
            seen, refs, area0, delay0, _ = cover()
    return _extract_cells(net, cl, chosen, po_keys, area0, delay0)


def _extract_cells(net, cl, chosen, po_keys, area, delay) -> MappedNetlist:
    n_pis = len(net.pis)
    out = MappedNetlist(CELL, n_pis)
    id_of: dict = {(pi, 0): i for i, pi in enumerate(net.pis)}
    counter = [n_pis]

    def realize(key) -> int:
        if key in id_of:
            return id_of[key]
        stack = [key]
        while stack:
            k = stack[-1]
            if k in id_of:
                stack.pop()
                continue
            m = chosen[k[0]][k[1]]
            pend = [ck for ck in children(m) if ck not in id_of]
            if pend:
                stack.extend(pend)
                continue
            stack.pop()
            if m.kind == "wire":
                id_of[k] = id_of[m.pins[0]]
                continue
            if m.kind == "pi":
                id_of[k] = k[0]  # unreachable: seeded above
                continue
            ins = tuple(id_of[ck] for ck in m.pins)
            inst = Instance(counter[0], m.cell.name, m.cell.area,
                            m.cell.tt, ins)
            out.instances.append(inst)
            id_of[k] = counter[0]
            counter[0] += 1
        return id_of[key]

    def children(m: _CMatch):
        if m.kind in ("pi", "const"):
            return ()
        return m.pins

    for x, ph in po_keys:
        out.outputs.append((realize((x, 1 if ph else 0)), False))
    out.stats = {
        "area": sum(i.area for i in out.instances),
        "delay": delay,
        "edges": sum(len(i.ins) for i in out.instances),
    }
    return out
