import numpy as np
import pytest

from eppo import catalog
from eppo.eppo_core import all_verdicts, is_eppo_exhaustive, spectrum
from eppo.errors import ParseError
from eppo.perm_engine import is_simple, parse_group, format_group, stabilizer

ORDERS = [60, 168, 504, 360, 2448, 20160, 29120, 32537600]


def test_list_orders_match_formulas():
    entries = catalog.simple_eppo_list()
    assert [e.expected_order for e in entries] == ORDERS
    assert catalog.psl2_order(17) == 2448
    assert catalog.suzuki_order(32) == 1024 * 1025 * 31
    assert 4**3 * (4**3 - 1) * (4**2 - 1) // 3 == 20160


@pytest.mark.parametrize("entry", catalog.simple_eppo_list()[:7], ids=lambda e: e.name)
def test_small_entries_match_fixture(entry):
    G = entry.build()
    assert G.order == entry.expected_order
    assert G.degree == entry.degree
    assert spectrum(G).orders == entry.expected_spectrum
    assert all(v.is_eppo for v in all_verdicts(G))
    assert is_simple(G, nonabelian=True)


def test_sz32_builds_with_bound_fixture():
    e = catalog.simple_eppo_list()[-1]
    assert e.spectrum_mode == "bound"
    assert e.expected_spectrum == catalog.suzuki_spectrum_bound(32) == (1, 2, 4, 5, 25, 31, 41)
    G = e.build()
    assert G.order == 32537600 and G.degree == 1025


def test_psl2_examples():
    G = catalog.psl2(5)
    assert G.order == 60 and G.degree == 6
    assert is_eppo_exhaustive(catalog.psl2(7)).is_eppo
    v = is_eppo_exhaustive(catalog.psl2(31))
    assert catalog.psl2(31).order == 14880
    assert v.is_eppo is False and v.witness["order"] == 15


@pytest.mark.parametrize("q", [5, 7, 8, 9, 13, 17])
def test_psl2_is_two_transitive(q):
    G = catalog.psl2(q)
    perms = G.random_perms(6000, np.random.default_rng(q))
    pairs = {(int(a), int(b)) for a, b in perms[:, :2]}
    assert len(pairs) == (q + 1) * q


def test_m9_is_sharply_two_transitive():
    G = catalog.m9()
    assert G.order == 72 and G.is_transitive()
    assert stabilizer(G, 0).order == 8
    perms = G.table().perms
    assert int(((perms[:, 0] == 0) & (perms[:, 1] == 1)).sum()) == 1
    assert spectrum(G).orders == (1, 2, 3, 4)
    assert not is_simple(G)


def test_suzuki_bound():
    assert catalog.suzuki_spectrum_bound(8) == (1, 2, 4, 5, 7, 13)
    assert spectrum(catalog.suzuki(8)).orders == catalog.suzuki_spectrum_bound(8)


def test_projective_points_are_normalized():
    f = catalog.field_make(2, 2)
    assert catalog.normalize(f, (0, 3, 2)) == (0, 1, catalog.field_make(2, 2).div(2, 3))


def test_build_aliases_and_errors():
    assert catalog.build("Sz8").order == 29120
    assert catalog.build("PSL3(4)").order == 20160
    assert catalog.build("psl2(13)").order == 1092
    for bad in ("PSL2(6)", "Monster", "PSL2(64)"):
        with pytest.raises(ParseError):
            catalog.build(bad)


def test_export_to_group_format():
    G = catalog.build("PSL2(8)")
    assert parse_group(format_group(G)).order == 504


def test_fixture_records(tmp_path):
    fx = catalog.load_fixture()
    assert set(fx) == {e.name for e in catalog.simple_eppo_list()} | {"M9"}
    path = tmp_path / "fx.txt"
    path.write_text("name: A5\norder: 60\nspectrum: {1,2,3}\n")
    entries = catalog.simple_eppo_list(path)
    assert entries[0].expected_spectrum == (1, 2, 3)
    assert entries[1].expected_spectrum is None
