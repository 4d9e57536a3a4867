#!/usr/bin/env python3
"""Generate the bundled benchmark suite as ASCII AIGER files.

Six deterministic control/arithmetic style circuits, sized for desk-scale
runs with exact equivalence checking (every circuit has at most 16 PIs).
"""

from pathlib import Path

from mch import network as nw
from mch.aiger import write_aiger
from mch.gen import and_tree
from mch.network import LogicNetwork, Signal


def aig_xor(net, a, b):
    t1 = net.add_and(a, ~b)
    t2 = net.add_and(~a, b)
    return ~net.add_and(~t1, ~t2)


def aig_mux(net, sel, d0, d1):
    """d1 when sel else d0."""
    return ~net.add_and(~net.add_and(sel, d1), ~net.add_and(~sel, d0))


def aig_or(net, a, b):
    return ~net.add_and(~a, ~b)


def adder(net, xs, ys, cin):
    """Ripple-carry adder; returns (sum bits, carry-out)."""
    out = []
    c = cin
    for a, b in zip(xs, ys):
        s = aig_xor(net, aig_xor(net, a, b), c)
        c = aig_or(net, net.add_and(a, b), net.add_and(c, aig_xor(net, a, b)))
        out.append(s)
    return out, c


def make_dec():
    """8-to-256 one-hot decoder."""
    net = LogicNetwork(nw.AIG)
    xs = [net.add_pi() for _ in range(8)]
    for m in range(256):
        lits = [xs[i] if (m >> i) & 1 else ~xs[i] for i in range(8)]
        net.add_po(and_tree(net, lits))
    return net


def make_priority():
    """16-bit priority encoder: index of the highest set bit plus valid."""
    net = LogicNetwork(nw.AIG)
    xs = [net.add_pi() for _ in range(16)]
    none_above = Signal(0, True)  # const1: no higher bit seen yet
    grant = []
    for i in range(15, -1, -1):
        grant.append((i, net.add_and(xs[i], none_above)))
        none_above = net.add_and(none_above, ~xs[i])
    idx = [Signal(0, False)] * 4
    for i, g in grant:
        for b in range(4):
            if (i >> b) & 1:
                idx[b] = aig_or(net, idx[b], g)
    for b in range(4):
        net.add_po(idx[b])
    net.add_po(~none_above)  # valid: some bit set
    return net


def make_int2float():
    """8-bit unsigned to a tiny float: 3-bit exponent, 4-bit mantissa."""
    net = LogicNetwork(nw.AIG)
    xs = [net.add_pi() for _ in range(8)]
    # leading-one position (one-hot from the top)
    none_above = Signal(0, True)
    hot = []
    for i in range(7, -1, -1):
        hot.append((i, net.add_and(xs[i], none_above)))
        none_above = net.add_and(none_above, ~xs[i])
    # exponent = position of leading one (0 when zero input)
    exp = [Signal(0, False)] * 3
    for i, g in hot:
        for b in range(3):
            if (i >> b) & 1:
                exp[b] = aig_or(net, exp[b], g)
    # mantissa: the 4 bits below the leading one, left aligned
    man = [Signal(0, False)] * 4
    for i, g in hot:
        for b in range(4):
            src = i - 1 - b
            if src >= 0:
                man[3 - b] = aig_or(net, man[3 - b],
                                    net.add_and(g, xs[src]))
    for s in exp + man:
        net.add_po(s)
    return net


def make_router():
    """2x2 crossbar route/arbitration control.

    Per input port: valid bit and destination bit.  Fixed priority to port
    0; outputs are per-crossbar-point grants plus a stall flag per port.
    """
    net = LogicNetwork(nw.AIG)
    v = [net.add_pi() for _ in range(2)]
    d = [net.add_pi() for _ in range(2)]
    req = [[net.add_and(v[i], ~d[i] if j == 0 else d[i])
            for j in range(2)] for i in range(2)]
    grants = []
    for j in range(2):
        g0 = req[0][j]
        g1 = net.add_and(req[1][j], ~req[0][j])
        grants.append((g0, g1))
    for j in range(2):
        net.add_po(grants[j][0])
        net.add_po(grants[j][1])
    for i in range(2):
        granted = aig_or(net, grants[0][i], grants[1][i])
        net.add_po(net.add_and(v[i], ~granted))  # stall
    return net


def make_cavlc():
    """Coefficient-token style encoder: counts and compare outputs."""
    net = LogicNetwork(nw.AIG)
    xs = [net.add_pi() for _ in range(10)]

    def add_words(a, b):
        w = max(len(a), len(b))
        a = a + [Signal(0, False)] * (w - len(a))
        b = b + [Signal(0, False)] * (w - len(b))
        s, c = adder(net, a, b, Signal(0, False))
        return s + [c]

    # population count of the 10 flags via a balanced adder tree
    sums = [[aig_xor(net, xs[i], xs[i + 1]), net.add_and(xs[i], xs[i + 1])]
            for i in range(0, 10, 2)]
    while len(sums) > 1:
        nxt = [add_words(sums[i], sums[i + 1])
               for i in range(0, len(sums) - 1, 2)]
        if len(sums) % 2:
            nxt.append(sums[-1])
        sums = nxt
    cnt = sums[0][:4]
    for s in cnt:
        net.add_po(s)
    # trailing-ones count over the low 3 flags (saturating at 3)
    t1 = xs[0]
    t2 = net.add_and(xs[0], xs[1])
    t3 = net.add_and(t2, xs[2])
    net.add_po(aig_xor(net, t1, t2))
    net.add_po(aig_xor(net, t2, t3))
    net.add_po(t3)
    # range comparisons of the count
    ge4 = cnt[2]
    ge8 = cnt[3]
    net.add_po(aig_or(net, ge4, ge8))
    net.add_po(net.add_and(~ge4, ~ge8))
    return net


def make_ctrl():
    """Opcode decoder: 7-bit opcode to 26 one-hot-ish control lines."""
    net = LogicNetwork(nw.AIG)
    op = [net.add_pi() for _ in range(7)]
    cls = [and_tree(net, [op[5] if (c >> 1) & 1 else ~op[5],
                          op[6] if c & 1 else ~op[6]])
           for c in range(4)]
    for c in range(4):
        net.add_po(cls[c])
    # 16 minor decodes gated by class bits
    for m in range(16):
        lits = [op[i] if (m >> i) & 1 else ~op[i] for i in range(4)]
        net.add_po(net.add_and(and_tree(net, lits), cls[m % 4]))
    # a few combined strobes
    imm = aig_or(net, cls[1], cls[3])
    wr = net.add_and(imm, op[4])
    rd = net.add_and(~imm, aig_or(net, op[0], op[2]))
    net.add_po(imm)
    net.add_po(wr)
    net.add_po(rd)
    net.add_po(aig_xor(net, wr, rd))
    net.add_po(and_tree(net, op[:4]))
    net.add_po(aig_or(net, aig_or(net, cls[0], cls[2]), op[3]))
    return net


MAKERS = {
    "ctrl": make_ctrl,
    "router": make_router,
    "int2float": make_int2float,
    "dec": make_dec,
    "cavlc": make_cavlc,
    "priority": make_priority,
}


def main():
    here = Path(__file__).parent
    for name, make in MAKERS.items():
        net = make()
        path = here / f"{name}.aag"
        write_aiger(net, path, binary=False)
        print(f"{name}: pis {len(net.pis)} pos {len(net.outputs)} "
              f"gates {net.num_gates()}")


if __name__ == "__main__":
    main()
