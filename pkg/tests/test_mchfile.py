import random

import pytest

from mch import network as nw
from mch.choices import ChoiceNetwork, MchParams, build_mch
from mch.mapper import MapParams, map_lut
from mch.mchfile import MchFileError, read_mch, write_mch, write_net
from mch.strategies import default_library
from mch.gen import random_network
from mch.verify import cec

from fixtures import parity8


def test_plain_network_round_trip(tmp_path):
    net = parity8()
    path = tmp_path / "p.mch"
    write_net(net, path)
    back = read_mch(path)
    assert not back.repr_of
    assert cec(net, back.base).status == "equivalent"


def test_choice_network_round_trip(tmp_path):
    lib = default_library()
    rng = random.Random(81)
    for i in range(5):
        net = random_network(rng.randint(5, 8), rng.randint(15, 35),
                             rng.randint(0, 10**9))
        cn = build_mch(net, lib, MchParams())
        path = tmp_path / f"c{i}.mch"
        write_mch(cn, path)
        back = read_mch(path)
        back.check_invariants()
        assert len(back.repr_of) == len(cn.repr_of)
        a = map_lut(cn, MapParams(k=4)).stats
        b = map_lut(back, MapParams(k=4)).stats
        assert a == b


def test_preserves_phases(tmp_path):
    lib = default_library()
    net = random_network(6, 30, 7)
    cn = build_mch(net, lib, MchParams())
    path = tmp_path / "ph.mch"
    write_mch(cn, path)
    back = read_mch(path)
    assert sorted(cn.phase.values()) == sorted(back.phase.values())


def test_rejects_bad_header(tmp_path):
    path = tmp_path / "b.mch"
    path.write_text("mch v2 aig\npis 1\noutput 2\n")
    with pytest.raises(MchFileError):
        read_mch(path)


def test_rejects_unknown_gate_kind(tmp_path):
    path = tmp_path / "g.mch"
    path.write_text("mch v1 aig\npis 2\ngate nand3 2 4\noutput 6\n")
    with pytest.raises(MchFileError):
        read_mch(path)


def test_rejects_dangling_literal(tmp_path):
    path = tmp_path / "d.mch"
    path.write_text("mch v1 aig\npis 2\ngate and2 2 12\noutput 6\n")
    with pytest.raises(MchFileError):
        read_mch(path)
