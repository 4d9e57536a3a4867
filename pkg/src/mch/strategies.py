"""Synthesis-strategy library: NPN4 structure database plus area-oriented
procedural resynthesis (ISOP factoring and DSD lowering).

The database is built by bounded exhaustive enumeration of primitive trees
(up to 7 gates) over each enabled representation's gate set; classes the
enumeration cannot reach within the bound are filled by ISOP factoring.
"""

from __future__ import annotations

import itertools
from typing import NamedTuple, Optional

import numpy as np

from . import network as nw
from .network import LogicNetwork, Signal
from .npn import NpnTransform, npn_canonize, npn_classify_all4
from .tt import (Cube, DsdNode, TruthTable, cut_truth, dsd_decompose, isop,
                 maj_tt)

MAX_TEMPLATE_GATES = 7

VAR16 = (0xAAAA, 0xCCCC, 0xF0F0, 0xFF00)

_OPS_BY_TAG = {
    nw.AIG: ("and",),
    nw.XAG: ("and", "xor"),
    nw.MIG: ("and", "maj"),
    nw.XMG: ("and", "xor", "maj"),
}

_MAJ_PAIR_CAP = 200_000
_CHUNK = 4_000_000


def _maj16(a, b, c):
    return (a & b) | (a & c) | (b & c)


# -- bounded tree enumeration over 4-var functions -------------------------


def tree_reachability(ops, max_size: int = MAX_TEMPLATE_GATES):
    """Minimal primitive-tree size per 16-bit function, via frontier DP.

    Frontier sets are closed under complement (inverters are free edges),
    so reachability is closed under the whole NPN group.
    """
    minsize = np.full(65536, 255, dtype=np.uint8)
    base = [0, 0xFFFF]
    for v in VAR16:
        base.append(v)
        base.append(v ^ 0xFFFF)
    frontier0 = np.unique(np.array(base, dtype=np.int64))
    minsize[frontier0] = 0
    frontiers = [frontier0]
    seen = np.zeros(65536, dtype=bool)
    seen[frontier0] = True

    for s in range(1, max_size + 1):
        hit = np.zeros(65536, dtype=bool)

        def mark(arr):
            hit[arr] = True
            hit[arr ^ 0xFFFF] = True

        for s1 in range((s - 1) // 2 + 1):
            s2 = s - 1 - s1
            A, B = frontiers[s1], frontiers[s2]
            if len(A) == 0 or len(B) == 0:
                continue
            for op in ops:
                if op == "maj":
                    continue
                for a_chunk in _chunks(A, max(1, _CHUNK // max(1, len(B)))):
                    prod = a_chunk[:, None]
                    if op == "and":
                        mark((prod & B[None, :]).ravel())
                    else:
                        mark((prod ^ B[None, :]).ravel())
        if "maj" in ops:
            for s1, s2, s3 in _maj_splits(s - 1):
                A, B, C = frontiers[s1], frontiers[s2], frontiers[s3]
                if min(len(A), len(B), len(C)) == 0:
                    continue
                if len(A) * len(B) > _MAJ_PAIR_CAP:
                    continue
                for a in A:
                    a = int(a)
                    for b in B:
                        mark(_maj16(a, int(b), C))
        new = np.nonzero(hit & ~seen)[0].astype(np.int64)
        seen[new] = True
        minsize[new] = s
        frontiers.append(new)
    return minsize, frontiers


def _chunks(arr, n):
    for i in range(0, len(arr), n):
        yield arr[i:i + n]


def _maj_splits(total):
    out = []
    for s1 in range(total + 1):
        for s2 in range(s1, total + 1):
            s3 = total - s1 - s2
            if s3 >= s2:
                out.append((s1, s2, s3))
    return out


# structure trees: ('const', neg) | ('in', idx, neg) | (kind, children, neg)


def reconstruct(f: int, ops, minsize, frontiers):
    """Minimal-size tree for function f, preferring balanced splits."""
    memo: dict[int, tuple] = {}

    def solve(f):
        got = memo.get(f)
        if got is not None:
            return got
        s = int(minsize[f])
        if s == 255:
            raise ValueError(f"function 0x{f:04x} not reachable")
        if s == 0:
            if f == 0:
                node = ("const", False)
            elif f == 0xFFFF:
                node = ("const", True)
            else:
                for i, v in enumerate(VAR16):
                    if f == v:
                        node = ("in", i, False)
                        break
                    if f == (v ^ 0xFFFF):
                        node = ("in", i, True)
                        break
            memo[f] = node
            return node
        splits = sorted(((s1, s - 1 - s1) for s1 in range((s - 1) // 2 + 1)),
                        key=lambda p: max(p))
        for s1, s2 in splits:
            A, B = frontiers[s1], frontiers[s2]
            if len(A) == 0 or len(B) == 0:
                continue
            for out_neg in (False, True):
                t = f ^ (0xFFFF if out_neg else 0)
                for op in ops:
                    if op == "maj":
                        continue
                    if op == "and":
                        viable = A[(t & ~A & 0xFFFF) == 0]
                        for g in viable:
                            g = int(g)
                            hs = B[(g & B) == t]
                            if len(hs):
                                node = ("and2",
                                        [solve(g), solve(int(hs[0]))], out_neg)
                                memo[f] = node
                                return node
                    else:
                        hs = (t ^ A) & 0xFFFF
                        ok = A[minsize[hs] == s2]
                        if len(ok):
                            g = int(ok[0])
                            node = ("xor2",
                                    [solve(g), solve((t ^ g) & 0xFFFF)],
                                    out_neg)
                            memo[f] = node
                            return node
        if "maj" in ops:
            trip = sorted(_maj_splits(s - 1), key=lambda p: max(p))
            for s1, s2, s3 in trip:
                A, B, C = frontiers[s1], frontiers[s2], frontiers[s3]
                if min(len(A), len(B), len(C)) == 0:
                    continue
                for out_neg in (False, True):
                    t = f ^ (0xFFFF if out_neg else 0)
                    for g in A:
                        g = int(g)
                        for h in B:
                            h = int(h)
                            cs = C[_maj16(g, h, C) == t]
                            if len(cs):
                                node = ("maj3",
                                        [solve(g), solve(h),
                                         solve(int(cs[0]))], out_neg)
                                memo[f] = node
                                return node
        raise ValueError(f"no decomposition found for 0x{f:04x}")

    return solve(f)


def tree_eval(node) -> int:
    if node[0] == "const":
        return 0xFFFF if node[1] else 0
    if node[0] == "in":
        v = VAR16[node[1]]
        return (v ^ 0xFFFF) if node[2] else v
    kind, children, neg = node
    vals = [tree_eval(c) for c in children]
    if kind == "and2":
        r = vals[0] & vals[1]
    elif kind == "xor2":
        r = vals[0] ^ vals[1]
    else:
        r = _maj16(*vals)
    return (r ^ 0xFFFF) if neg else r


def tree_size(node) -> int:
    if node[0] in ("const", "in"):
        return 0
    return 1 + sum(tree_size(c) for c in node[1])


def tree_depth(node) -> int:
    if node[0] in ("const", "in"):
        return 0
    return 1 + max(tree_depth(c) for c in node[1])


# -- structure templates ---------------------------------------------------


class StructureTemplate:
    """Gate list over inputs t0..t3 and earlier gates g0.., with complement
    markers; realizes the NPN-class representative it is filed under."""

    def __init__(self, tag: str, gates: list, out_ref: int, out_neg: bool):
        self.tag = tag
        self.gates = gates            # (kind, tuple of (ref, neg))
        self.out_ref = out_ref        # 0..3 inputs, 4+ gate index, -1 const
        self.out_neg = out_neg
        self.size = len(gates)
        self.depth = self._depth()

    def _depth(self) -> int:
        d = [0, 0, 0, 0]
        for kind, fins in self.gates:
            d.append(1 + max((d[r] for r, _ in fins), default=0))
        if self.out_ref < 0:
            return 0
        return d[self.out_ref]

    def evaluate16(self) -> int:
        vals = list(VAR16)
        for kind, fins in self.gates:
            ins = [vals[r] ^ (0xFFFF if neg else 0) for r, neg in fins]
            if kind == "and2":
                vals.append(ins[0] & ins[1])
            elif kind == "xor2":
                vals.append(ins[0] ^ ins[1])
            else:
                vals.append(_maj16(*ins))
        if self.out_ref < 0:
            out = 0
        else:
            out = vals[self.out_ref]
        return (out ^ 0xFFFF) if self.out_neg else out

    def instantiate(self, net: LogicNetwork, inputs: list[Signal]) -> Signal:
        """Build the template in `net`; inputs has 4 entries (t0..t3)."""
        vals = list(inputs)
        for kind, fins in self.gates:
            ins = tuple(vals[r].with_neg(neg) for r, neg in fins)
            vals.append(net.add(kind, ins))
        if self.out_ref < 0:
            out = net.const0
        else:
            out = vals[self.out_ref]
        return ~out if self.out_neg else out

    @staticmethod
    def from_tree(tag: str, node) -> "StructureTemplate":
        gates: list = []

        def emit(nd) -> tuple:
            if nd[0] == "const":
                return (-1, nd[1])
            if nd[0] == "in":
                return (nd[1], nd[2])
            kind, children, neg = nd
            fins = []
            for c in children:
                r, cneg = emit(c)
                if r == -1:
                    raise ValueError("constant fanin inside template")
                fins.append((r, cneg))
            gates.append((kind, tuple(fins)))
            return (4 + len(gates) - 1, neg)

        ref, neg = emit(node)
        return StructureTemplate(tag, gates, ref, neg)

    # text form: kind(a,b) tokens over t0..t3 / g0.., '!' = complement;
    # a '!' prefix on the last gate token complements the template output.

    def to_text(self) -> str:
        def ref_name(r):
            return f"t{r}" if r < 4 else f"g{r - 4}"

        toks = []
        for i, (kind, fins) in enumerate(self.gates):
            args = ",".join(("!" if neg else "") + ref_name(r)
                            for r, neg in fins)
            tok = f"{kind}({args})"
            if i == len(self.gates) - 1 and self.out_neg:
                tok = "!" + tok
            toks.append(tok)
        if not self.gates:
            neg = "!" if self.out_neg else ""
            if self.out_ref < 0:
                return f"{neg}const0"
            return f"{neg}buf(t{self.out_ref})"
        return ",".join(toks)

    @staticmethod
    def from_text(tag: str, text: str) -> "StructureTemplate":
        def parse_ref(tok: str):
            neg = tok.startswith("!")
            tok = tok.lstrip("!")
            if tok.startswith("t"):
                return int(tok[1:]), neg
            return 4 + int(tok[1:]), neg

        if text.lstrip("!").startswith("const0"):
            return StructureTemplate(tag, [], -1, text.startswith("!"))
        if text.lstrip("!").startswith("buf("):
            neg = text.startswith("!")
            ref, rneg = parse_ref(text.lstrip("!")[4:-1])
            return StructureTemplate(tag, [], ref, neg ^ rneg)
        gates = []
        out_neg = False
        toks = text.split("),")
        for i, tok in enumerate(toks):
            if not tok.endswith(")"):
                tok += ")"
            if tok.startswith("!"):
                out_neg = True
                tok = tok[1:]
            kind, rest = tok.split("(", 1)
            args = rest[:-1].split(",")
            gates.append((kind, tuple(parse_ref(a) for a in args)))
        return StructureTemplate(tag, gates, 4 + len(gates) - 1, out_neg)


# -- strategy library ------------------------------------------------------


class StrategyLibrary:
    def __init__(self, enabled):
        self.enabled = tuple(enabled)
        self.npn4: dict[str, dict[int, list[StructureTemplate]]] = {
            tag: {} for tag in self.enabled}
        self.stats: dict[str, int] = {}

    def templates_for(self, tag: str, canon_bits16: int):
        return self.npn4.get(tag, {}).get(canon_bits16 & 0xFFFF, [])


def build_npn4_db(enabled=(nw.AIG, nw.XAG, nw.MIG, nw.XMG),
                  verify: bool = True) -> StrategyLibrary:
    """Enumerate templates for all 222 NPN classes per representation."""
    lib = StrategyLibrary(enabled)
    canon = npn_classify_all4()
    reps = np.unique(canon)
    for tag in enabled:
        ops = _OPS_BY_TAG[tag]
        minsize, frontiers = tree_reachability(ops)
        db: dict[int, list[StructureTemplate]] = {}
        enum_filled = 0
        for rep in reps:
            rep = int(rep)
            if minsize[rep] != 255:
                tree = reconstruct(rep, ops, minsize, frontiers)
                tpl = StructureTemplate.from_tree(tag, tree)
                enum_filled += 1
            else:
                tpl = _isop_template(tag, rep)
            if verify and tpl.evaluate16() != rep:
                raise AssertionError(
                    f"template for class 0x{rep:04x} ({tag}) is wrong")
            db[rep] = [tpl]
        lib.npn4[tag] = db
        lib.stats[tag] = enum_filled
    return lib


def _isop_template(tag: str, rep: int) -> StructureTemplate:
    """Fallback template for classes outside the enumeration bound."""
    scratch = LogicNetwork(tag)
    pis = [scratch.add_pi() for _ in range(4)]
    tt = TruthTable.create(rep, 4)
    root = _build_factored(scratch, tt, pis)
    return _template_from_scratch(tag, scratch, pis, root)


def _template_from_scratch(tag, scratch, pis, root) -> StructureTemplate:
    idx = {p.node: (i, False) for i, p in enumerate(pis)}
    gates = []
    order = [n for n in scratch.gates() if n in scratch.tfi([root.node])]
    for n in sorted(order):
        fins = []
        for f in scratch.fanins(n):
            r, base_neg = idx[f.node]
            fins.append((r, f.neg ^ base_neg))
        gates.append((scratch.kind(n), tuple(fins)))
        idx[n] = (4 + len(gates) - 1, False)
    if root.node == 0:
        return StructureTemplate(tag, [], -1, root.neg)
    r, base_neg = idx[root.node]
    return StructureTemplate(tag, gates, r, root.neg ^ base_neg)


# -- db persistence --------------------------------------------------------

DB_HEADER = "npn4-db v1"


def save_db(lib: StrategyLibrary, path) -> None:
    with open(path, "w") as fh:
        fh.write(DB_HEADER + "\n")
        for tag in lib.enabled:
            for rep in sorted(lib.npn4[tag]):
                for tpl in lib.npn4[tag][rep]:
                    fh.write(f"0x{rep:04x} {tag} {tpl.depth} {tpl.size} "
                             f"{tpl.to_text()}\n")


def load_db(path, verify: bool = True) -> StrategyLibrary:
    with open(path) as fh:
        header = fh.readline().strip()
        if header != DB_HEADER:
            raise ValueError(f"bad database header {header!r}")
        entries = []
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            hexrep, tag, depth, size, text = line.split(" ", 4)
            entries.append((int(hexrep, 16), tag, int(depth), int(size), text))
    tags = []
    for _, tag, _, _, _ in entries:
        if tag not in tags:
            tags.append(tag)
    lib = StrategyLibrary(tags)
    for rep, tag, depth, size, text in entries:
        tpl = StructureTemplate.from_text(tag, text)
        if tpl.depth != depth or tpl.size != size:
            raise ValueError(f"template metadata mismatch for 0x{rep:04x}")
        if verify and tpl.evaluate16() != rep:
            raise ValueError(f"stored template for 0x{rep:04x} is wrong")
        lib.npn4[tag].setdefault(rep, []).append(tpl)
    return lib


_default_lib: Optional[StrategyLibrary] = None


def default_library() -> StrategyLibrary:
    """The bundled all-representation database (built on first use)."""
    global _default_lib
    if _default_lib is None:
        from pathlib import Path

        path = Path(__file__).parent / "data" / "npn4.db"
        if path.exists():
            _default_lib = load_db(path, verify=False)
        else:
            _default_lib = build_npn4_db()
            try:
                save_db(_default_lib, path)
            except OSError:
                pass
    return _default_lib


# -- candidate generation --------------------------------------------------


class Candidate(NamedTuple):
    net: LogicNetwork      # scratch network; PIs are the support leaves
    root: Signal
    strategy: str
    size: int
    depth: int
    support: tuple         # original variable indices, in scratch PI order

    def function(self, var_count: int) -> TruthTable:
        """Candidate output as a table over the original variable space."""
        v = len(self.net.pis)
        if self.root.node == 0:
            base = TruthTable.const(False, v)
        else:
            base = cut_truth(self.net, self.root.node, sorted(self.net.pis))
        if self.root.neg:
            base = ~base
        # expand over original variables
        bits = 0
        for m in range(1 << var_count):
            sub = 0
            for j, ov in enumerate(self.support):
                if (m >> ov) & 1:
                    sub |= 1 << j
            if base.value_at(sub):
                bits |= 1 << m
        return TruthTable.create(bits, var_count)


def level_oriented_candidates(lib: StrategyLibrary, tt: TruthTable,
                              host_tag: str = nw.XMG) -> list[Candidate]:
    """NPN4-database candidates, ordered by (depth, size).

    Functions whose support exceeds 4 variables yield no candidates.
    """
    cache = lib.__dict__.setdefault("_query_cache", {})
    ckey = ("lvl", tt.bits, tt.var_count, host_tag)
    hit = cache.get(ckey)
    if hit is not None:
        return list(hit)
    small, sup = tt.shrink_to_support()
    if len(sup) > 4:
        cache[ckey] = []
        return []
    padded = TruthTable.create(small.bits, 4)
    canon, tr, _ = npn_canonize(padded)
    inv = tr.inverse()
    out = []
    for tag in lib.enabled:
        if not nw.ALLOWED_KINDS[tag] <= nw.ALLOWED_KINDS[host_tag]:
            continue
        for tpl in lib.templates_for(tag, canon.bits):
            scratch = LogicNetwork(host_tag)
            pis = [scratch.add_pi() for _ in range(len(sup))]
            ins = []
            for j in range(4):
                src = inv.perm[j]
                neg = bool((inv.neg >> j) & 1)
                if src < len(sup):
                    ins.append(pis[src].with_neg(neg))
                else:
                    ins.append(scratch.const1 if neg else scratch.const0)
            root = tpl.instantiate(scratch, ins)
            if inv.out_neg:
                root = ~root
            lm = scratch.compute_levels()
            out.append(Candidate(scratch, root, f"npn4-{tag}",
                                 scratch.num_gates(), lm.level[root.node],
                                 tuple(sup)))
    out.sort(key=lambda c: (c.depth, c.size, c.strategy))
    cache[ckey] = out
    return list(out)


def area_oriented_candidates(lib: StrategyLibrary, tt: TruthTable,
                             host_tag: str = nw.XMG) -> list[Candidate]:
    """ISOP-factoring and DSD-lowering candidates, ordered by (size, depth)."""
    cache = lib.__dict__.setdefault("_query_cache", {})
    ckey = ("area", tt.bits, tt.var_count, host_tag)
    hit = cache.get(ckey)
    if hit is not None:
        return list(hit)
    small, sup = tt.shrink_to_support()
    out = []

    scratch = LogicNetwork(host_tag)
    pis = [scratch.add_pi() for _ in range(len(sup))]
    root = _build_factored(scratch, small, pis)
    lm = scratch.compute_levels()
    out.append(Candidate(scratch, root, "isop-factor", scratch.num_gates(),
                         lm.level[root.node], tuple(sup)))

    dsd = dsd_decompose(small)
    if isinstance(dsd, DsdNode):
        scratch = LogicNetwork(host_tag)
        pis = [scratch.add_pi() for _ in range(len(sup))]
        root = _build_dsd(scratch, dsd, pis, lib, host_tag)
        lm = scratch.compute_levels()
        out.append(Candidate(scratch, root, "dsd", scratch.num_gates(),
                             lm.level[root.node], tuple(sup)))

    out.sort(key=lambda c: (c.size, c.depth, c.strategy))
    cache[ckey] = out
    return list(out)


# -- lowering helpers ------------------------------------------------------


def _factor(cubes: list[Cube], nvars: int):
    """Literal-based quick factoring of an SOP into an AND/OR tree."""
    if not cubes:
        return ("const", False)
    if any(c.num_literals() == 0 for c in cubes):
        return ("const", True)
    if len(cubes) == 1:
        c = cubes[0]
        lits = [("lit", i, False) for i in range(nvars) if (c.pos >> i) & 1]
        lits += [("lit", i, True) for i in range(nvars) if (c.neg >> i) & 1]
        return lits[0] if len(lits) == 1 else ("op-and", lits)
    best, best_count = None, 1
    for i in range(nvars):
        for neg in (False, True):
            cnt = sum(1 for c in cubes
                      if ((c.neg if neg else c.pos) >> i) & 1)
            if cnt > best_count:
                best, best_count = (i, neg), cnt
    if best is None:
        terms = [_factor([c], nvars) for c in cubes]
        return ("op-or", terms)
    i, neg = best
    bit = 1 << i
    inside, rest = [], []
    for c in cubes:
        if ((c.neg if neg else c.pos) >> i) & 1:
            inside.append(Cube(c.pos & ~bit, c.neg & ~bit))
        else:
            rest.append(c)
    sub = _factor(inside, nvars)
    lit = ("lit", i, neg)
    branch = ("op-and", [lit, sub]) if sub != ("const", True) else lit
    if not rest:
        return branch
    return ("op-or", [branch, _factor(rest, nvars)])


def _lower_expr(net: LogicNetwork, expr, pis: list[Signal]) -> Signal:
    op = expr[0]
    if op == "const":
        return net.const1 if expr[1] else net.const0
    if op == "lit":
        s = pis[expr[1]]
        return ~s if expr[2] else s
    kids = [_lower_expr(net, e, pis) for e in expr[1]]
    return _reduce_balanced(net, kids, "or" if op == "op-or" else "and")


def _reduce_balanced(net: LogicNetwork, sigs: list[Signal],
                     op: str) -> Signal:
    sigs = list(sigs)
    while len(sigs) > 1:
        nxt = []
        for i in range(0, len(sigs) - 1, 2):
            a, b = sigs[i], sigs[i + 1]
            if op == "and":
                nxt.append(net.add_and(a, b))
            elif op == "or":
                nxt.append(net.add_or(a, b))
            else:
                nxt.append(_emit_xor(net, a, b))
        if len(sigs) % 2:
            nxt.append(sigs[-1])
        sigs = nxt
    return sigs[0]


def _emit_xor(net: LogicNetwork, a: Signal, b: Signal) -> Signal:
    if nw.XOR2 in nw.ALLOWED_KINDS[net.tag]:
        return net.add_xor(a, b)
    return net.add_or(net.add_and(a, ~b), net.add_and(~a, b))


def _emit_maj(net: LogicNetwork, a: Signal, b: Signal, c: Signal) -> Signal:
    if nw.MAJ3 in nw.ALLOWED_KINDS[net.tag]:
        return net.add_maj(a, b, c)
    return net.add_or(net.add_and(a, b),
                      net.add_and(c, net.add_or(a, b)))


def _build_factored(net: LogicNetwork, tt: TruthTable,
                    pis: list[Signal]) -> Signal:
    cubes = isop(tt)
    expr = _factor(cubes, tt.var_count)
    return _lower_expr(net, expr, pis)


def _build_dsd(net: LogicNetwork, node: DsdNode, pis: list[Signal],
               lib: Optional[StrategyLibrary], host_tag: str) -> Signal:
    if node.op == "LIT":
        s = pis[node.var]
        return ~s if node.neg else s
    if node.op in ("AND", "OR", "XOR"):
        kids = [_build_dsd(net, c, pis, lib, host_tag) for c in node.children]
        opname = {"AND": "and", "OR": "or", "XOR": "xor"}[node.op]
        out = _reduce_balanced(net, kids, opname)
        return ~out if node.neg else out
    if node.op == "MAJ":
        kids = [_build_dsd(net, c, pis, lib, host_tag) for c in node.children]
        out = _emit_maj(net, *kids)
        return ~out if node.neg else out
    # PRIME: children are literals in this decomposition
    table = node.table
    kid_sigs = [_build_dsd(net, c, pis, lib, host_tag) for c in node.children]
    if table is None or table.var_count == 0:
        out = net.const1 if (table and table.value_at(0)) else net.const0
        return ~out if node.neg else out
    out = _resynthesize_prime(net, table, kid_sigs, lib, host_tag)
    return ~out if node.neg else out


def _resynthesize_prime(net: LogicNetwork, table: TruthTable,
                        inputs: list[Signal], lib: Optional[StrategyLibrary],
                        host_tag: str) -> Signal:
    if lib is not None and table.var_count <= 4:
        padded = TruthTable.create(table.bits, 4)
        canon, tr, _ = npn_canonize(padded)
        inv = tr.inverse()
        for tag in lib.enabled:
            if not nw.ALLOWED_KINDS[tag] <= nw.ALLOWED_KINDS[net.tag]:
                continue
            tpls = lib.templates_for(tag, canon.bits)
            if tpls:
                ins = []
                for j in range(4):
                    src = inv.perm[j]
                    neg = bool((inv.neg >> j) & 1)
                    if src < len(inputs):
                        ins.append(inputs[src].with_neg(neg))
                    else:
                        ins.append(net.const1 if neg else net.const0)
                root = tpls[0].instantiate(net, ins)
                return ~root if inv.out_neg else root
    cubes = isop(table)
    expr = _factor(cubes, table.var_count)
    return _lower_expr(net, expr, inputs)
