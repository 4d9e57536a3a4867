import pytest

from mch import network as nw
from mch.network import LogicNetwork, Signal, UnsupportedConversion, \
    exhaustive_patterns

from fixtures import aig_xor, parity8, adder3


def test_signal_invert_and_with_neg():
    s = Signal(5, False)
    assert (~s).neg is True
    assert ~~s == s
    assert s.with_neg(True) == Signal(5, True)
    assert Signal(5, True).with_neg(True) == Signal(5, False)


def test_constants_and_pis():
    net = LogicNetwork(nw.AIG)
    a = net.add_pi()
    assert net.const0 == Signal(0, False)
    assert net.is_pi(a.node)
    assert not net.is_gate(a.node)


def test_strash_merges_duplicates():
    net = LogicNetwork(nw.AIG)
    a, b = net.add_pi(), net.add_pi()
    g1 = net.add_and(a, b)
    g2 = net.add_and(a, b)
    g3 = net.add_and(b, a)
    assert g1 == g2 == g3


def test_and_constant_folding():
    net = LogicNetwork(nw.AIG)
    a = net.add_pi()
    assert net.add_and(a, net.const0) == net.const0
    assert net.add_and(a, ~net.const0) == a
    assert net.add_and(a, ~a) == net.const0
    assert net.add_and(a, a) == a


def test_xor_maj_folding():
    net = LogicNetwork(nw.XMG)
    a, b = net.add_pi(), net.add_pi()
    assert net.add_xor(a, a) == net.const0
    assert net.add_xor(a, ~a) == ~net.const0
    assert net.add_xor(a, net.const0) == a
    # MAJ with a constant input degenerates to AND / OR
    g = net.add_maj(a, b, net.const0)
    assert net.kind(g.node) == nw.AND2
    g = net.add_maj(a, b, ~net.const0)
    assert net.kind(g.node) == nw.AND2 and g.neg


def test_allowed_kinds_enforced():
    net = LogicNetwork(nw.AIG)
    a, b = net.add_pi(), net.add_pi()
    with pytest.raises(Exception):
        net.add_xor(a, b)


def test_levels():
    net = LogicNetwork(nw.AIG)
    a, b, c = net.add_pi(), net.add_pi(), net.add_pi()
    g1 = net.add_and(a, b)
    g2 = net.add_and(g1, c)
    net.add_po(g2)
    lm = net.compute_levels()
    assert lm.level[g1.node] == 1 and lm.level[g2.node] == 2
    assert lm.network_level == 2


def test_compact_drops_dangling_but_keeps_pis():
    net = LogicNetwork(nw.AIG)
    a, b, c = net.add_pi(), net.add_pi(), net.add_pi()
    net.add_and(a, c)          # dangling
    net.add_po(net.add_and(a, b))
    small = net.compact()
    assert len(small.pis) == 3
    assert sum(1 for _ in small.gates()) == 1


def test_one_to_one_map_round_trip():
    net = parity8()
    x = net.one_to_one_map(nw.XAG)
    assert x.tag == nw.XAG
    assert x.exhaustive_outputs() == net.exhaustive_outputs()


def test_one_to_one_map_rejects_incompatible():
    net = LogicNetwork(nw.XAG)
    a, b = net.add_pi(), net.add_pi()
    net.add_po(net.add_xor(a, b))
    with pytest.raises(UnsupportedConversion):
        net.one_to_one_map(nw.AIG)


def test_and2_legal_in_mig():
    net = LogicNetwork(nw.AIG)
    a, b = net.add_pi(), net.add_pi()
    net.add_po(net.add_and(a, b))
    m = net.one_to_one_map(nw.MIG)
    assert m.exhaustive_outputs() == net.exhaustive_outputs()


def test_simulate_matches_exhaustive():
    net = adder3()
    pats = exhaustive_patterns(net.pis)
    words = net.output_values(pats, 1 << len(net.pis))
    assert words == net.exhaustive_outputs()


def test_exhaustive_patterns_shape():
    pats = exhaustive_patterns([1, 2, 3])
    assert pats[1] == 0b10101010
    assert pats[2] == 0b11001100
    assert pats[3] == 0b11110000


def test_xor_helper_builds_parity():
    net = LogicNetwork(nw.AIG)
    a, b = net.add_pi(), net.add_pi()
    net.add_po(aig_xor(net, a, b))
    assert net.exhaustive_outputs() == [0b0110]
