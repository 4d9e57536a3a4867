"""Deterministic generators for test and benchmark networks."""

from __future__ import annotations

import random

from . import network as nw
from .network import LogicNetwork, Signal


def random_network(n_pis: int, n_gates: int, seed: int,
                   tag: str = nw.AIG, n_pos: int | None = None) -> LogicNetwork:
    """Random strashed network; deterministic for a given seed."""
    rng = random.Random(seed)
    net = LogicNetwork(tag)
    sigs = [net.add_pi() for _ in range(n_pis)]
    kinds = sorted(nw.ALLOWED_KINDS[tag])
    tries = 0
    while net.num_gates() < n_gates and tries < n_gates * 50:
        tries += 1
        kind = rng.choice(kinds)
        arity = 3 if kind == nw.MAJ3 else 2
        ins = [Signal(rng.choice(sigs).node, rng.random() < 0.5)
               for _ in range(arity)]
        before = len(net)
        s = net.add(kind, ins)
        if len(net) > before:
            sigs.append(s)
    refs = net.fanout_counts()
    dangling = [n for n in net.gates() if refs[n] == 0]
    if not dangling:
        dangling = [max(net.gates(), default=0)]
    if n_pos is not None:
        while len(dangling) < n_pos:
            dangling.append(rng.choice(sigs).node)
        dangling = dangling[:n_pos]
    for n in dangling:
        net.add_po(Signal(n, rng.random() < 0.5))
    return net


def and_tree(net: LogicNetwork, sigs, balanced: bool = True) -> Signal:
    sigs = list(sigs)
    if balanced:
        while len(sigs) > 1:
            nxt = [net.add_and(sigs[i], sigs[i + 1])
                   for i in range(0, len(sigs) - 1, 2)]
            if len(sigs) % 2:
                nxt.append(sigs[-1])
            sigs = nxt
        return sigs[0]
    acc = sigs[0]
    for s in sigs[1:]:
        acc = net.add_and(acc, s)
    return acc


def xor_tree_aig(net: LogicNetwork, sigs, balanced: bool = True) -> Signal:
    """Parity over sigs using AND gates only."""
    def x2(a, b):
        return net.add_or(net.add_and(a, ~b), net.add_and(~a, b))

    sigs = list(sigs)
    if balanced:
        while len(sigs) > 1:
            nxt = [x2(sigs[i], sigs[i + 1])
                   for i in range(0, len(sigs) - 1, 2)]
            if len(sigs) % 2:
                nxt.append(sigs[-1])
            sigs = nxt
        return sigs[0]
    acc = sigs[0]
    for s in sigs[1:]:
        acc = x2(acc, s)
    return acc


def chain_network(depth: int, tag: str = nw.AIG) -> LogicNetwork:
    """Single AND chain of the given depth with one PO."""
    net = LogicNetwork(tag)
    a = net.add_pi()
    acc = a
    for _ in range(depth):
        b = net.add_pi()
        acc = net.add_and(acc, b)
    net.add_po(acc)
    return net


def two_cone_network(deep: int, shallow: int) -> LogicNetwork:
    """Two independent AND-chain cones with separate POs."""
    net = LogicNetwork(nw.AIG)

    def cone(depth):
        acc = net.add_pi()
        for _ in range(depth):
            acc = net.add_and(acc, net.add_pi())
        return acc

    net.add_po(cone(deep))
    net.add_po(cone(shallow))
    return net
