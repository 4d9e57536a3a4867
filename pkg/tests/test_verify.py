import pytest

from mch import network as nw
from mch.network import LogicNetwork
from mch.verify import EQUIVALENT, NOT_EQUIVALENT, UNKNOWN, \
    InterfaceMismatch, cec, check_counterexample

from fixtures import parity10, aig_xor


def test_equivalent_pair():
    v = cec(parity10(True), parity10(False))
    assert v.status == EQUIVALENT
    assert bool(v)


def test_not_equivalent_with_counterexample():
    a = LogicNetwork(nw.AIG)
    x, y = a.add_pi(), a.add_pi()
    a.add_po(a.add_and(x, y))
    b = LogicNetwork(nw.AIG)
    x, y = b.add_pi(), b.add_pi()
    b.add_po(~b.add_and(~x, ~y))     # OR, not AND
    v = cec(a, b)
    assert v.status == NOT_EQUIVALENT
    assert not bool(v)
    assert check_counterexample(a, b, v.counterexample)


def test_interface_mismatch():
    a = LogicNetwork(nw.AIG)
    a.add_pi()
    a.add_po(a.const0)
    b = LogicNetwork(nw.AIG)
    b.add_pi()
    b.add_pi()
    b.add_po(b.const0)
    with pytest.raises(InterfaceMismatch):
        cec(a, b)


def test_wide_equivalent_is_unknown_not_failed():
    # 20 PIs exceeds the exhaustive limit; equal nets stay unproven
    def wide():
        net = LogicNetwork(nw.AIG)
        xs = [net.add_pi() for _ in range(20)]
        acc = xs[0]
        for x in xs[1:]:
            acc = net.add_and(acc, x)
        net.add_po(acc)
        return net
    v = cec(wide(), wide(), budget=256)
    assert v.status == UNKNOWN


def test_wide_not_equivalent_found_by_sampling():
    def wide(broken):
        net = LogicNetwork(nw.AIG)
        xs = [net.add_pi() for _ in range(20)]
        acc = xs[0]
        for x in xs[1:]:
            acc = aig_xor(net, acc, x)
        net.add_po(~acc if broken else acc)
        return net
    v = cec(wide(False), wide(True), budget=256)
    assert v.status == NOT_EQUIVALENT


def test_cross_representation():
    net = parity10(True)
    x = net.one_to_one_map(nw.XAG)
    assert cec(net, x).status == EQUIVALENT
