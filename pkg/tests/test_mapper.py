import random

import pytest

from mch import network as nw
from mch.network import LogicNetwork
from mch.choices import ChoiceNetwork, MchParams, build_mch
from mch.mapper import MapParams, map_lut, map_cells, cover_check, \
    CellLibrary, LibraryError, default_cell_library, DELAY, AREA, BALANCED, \
    CELL
from mch.strategies import default_library
from mch.gen import random_network

from fixtures import parity8, adder3, parity10, DOMINANCE_FIXTURES


@pytest.fixture(scope="module")
def cl():
    return default_cell_library()


def wrap(net):
    return ChoiceNetwork(net.one_to_one_map(nw.AIG))


def test_single_and_maps_to_one_lut():
    net = LogicNetwork(nw.AIG)
    a, b = net.add_pi(), net.add_pi()
    net.add_po(net.add_and(a, b))
    m = map_lut(wrap(net), MapParams(k=4))
    assert m.stats["area"] == 1 and m.stats["delay"] == 1
    assert cover_check(m, net)


def test_lut_mapping_preserves_function():
    rng = random.Random(41)
    for _ in range(15):
        net = random_network(rng.randint(4, 8), rng.randint(10, 40),
                             rng.randint(0, 10**9),
                             n_pos=rng.randint(1, 3))
        for mode in (DELAY, AREA, BALANCED):
            m = map_lut(wrap(net), MapParams(k=4, mode=mode))
            assert cover_check(m, net)


def test_lut_k6_never_more_luts_than_k4():
    rng = random.Random(42)
    for _ in range(10):
        net = random_network(rng.randint(5, 8), rng.randint(15, 40),
                             rng.randint(0, 10**9))
        a4 = map_lut(wrap(net), MapParams(k=4, mode=AREA)).stats["area"]
        a6 = map_lut(wrap(net), MapParams(k=6, mode=AREA)).stats["area"]
        assert a6 <= a4


def test_delay_mode_no_slower_than_area_mode():
    rng = random.Random(43)
    for _ in range(10):
        net = random_network(rng.randint(5, 8), rng.randint(15, 40),
                             rng.randint(0, 10**9))
        d = map_lut(wrap(net), MapParams(k=4, mode=DELAY)).stats["delay"]
        a = map_lut(wrap(net), MapParams(k=4, mode=AREA)).stats["delay"]
        assert d <= a


def test_choices_never_hurt_lut_area(lib_choices=None):
    lib = default_library()
    for name, mk in DOMINANCE_FIXTURES:
        net = mk()
        base = map_lut(wrap(net), MapParams(k=4, l=64)).stats["area"]
        cn = build_mch(net, lib, MchParams(k=4, l=64))
        got = map_lut(cn, MapParams(k=4, l=64)).stats["area"]
        assert got <= base, name


def test_structural_pair_choice_mapping():
    from mch.choices import add_external_choices
    a, b = parity10(True), parity10(False)
    la = map_lut(wrap(a), MapParams(k=6)).stats["area"]
    lb = map_lut(wrap(b), MapParams(k=6)).stats["area"]
    assert la != lb
    cn = add_external_choices(wrap(a), b)
    lc = map_lut(cn, MapParams(k=6)).stats["area"]
    assert lc <= min(la, lb)


def test_cell_mapping_preserves_function(cl):
    rng = random.Random(44)
    for _ in range(10):
        net = random_network(rng.randint(4, 7), rng.randint(10, 30),
                             rng.randint(0, 10**9),
                             n_pos=rng.randint(1, 3))
        for mode in (DELAY, AREA, BALANCED):
            m = map_cells(wrap(net), cl,
                          MapParams(k=6, mode=mode, target=CELL))
            assert cover_check(m, net)


def test_cell_delay_mode_no_slower(cl):
    rng = random.Random(45)
    for _ in range(8):
        net = random_network(rng.randint(5, 7), rng.randint(15, 30),
                             rng.randint(0, 10**9))
        d = map_cells(wrap(net), cl,
                      MapParams(k=6, mode=DELAY, target=CELL)).stats["delay"]
        a = map_cells(wrap(net), cl,
                      MapParams(k=6, mode=AREA, target=CELL)).stats["delay"]
        assert d <= a + 1e-9


def test_cell_inverter_insertion(cl):
    # a bare inverted output forces either an inverter or a negated match
    net = LogicNetwork(nw.AIG)
    a, b = net.add_pi(), net.add_pi()
    net.add_po(~net.add_and(a, b))
    m = map_cells(wrap(net), cl, MapParams(target=CELL))
    assert cover_check(m, net)


def test_library_requires_inverter():
    text = "cell and2 1.0 8 2 1.0 1.0\n" \
           "cell zero 0.0 0 0\ncell one 0.0 1 0\n"
    with pytest.raises(LibraryError):
        CellLibrary.loads(text)


def test_library_matches_both_phases(cl):
    from mch.tt import TruthTable
    a, b = TruthTable.var(0, 2), TruthTable.var(1, 2)
    hits = cl.matches(a & b)
    assert hits
    from mch.npn import apply_npn
    want = a & b
    for cell, t, phase in hits:
        # the physical cell omits t's output negation; phase records it
        physical = apply_npn(cell.tt, t._replace(out_neg=False))
        assert physical == (~want if phase else want)


def test_mapped_netlist_simulate(cl):
    net = adder3()
    m = map_cells(wrap(net), cl, MapParams(target=CELL))
    pats = nw.exhaustive_patterns(net.pis)
    width = 1 << len(net.pis)
    pi_words = [pats[p] for p in net.pis]
    got = m.simulate(pi_words, width)
    assert got == net.exhaustive_outputs()
