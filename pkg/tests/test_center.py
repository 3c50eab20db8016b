import pytest
from hypothesis import given, settings, strategies as st

from conftest import NAMES, bits, labels, model
from fctheory.center import (abelian_profile, central_character, central_extensions, central_quotient,
                             center_of, characters, classify, conjecture_algint, is_abelian,
                             is_nilpotent, maximal_central_extension, nilpotent_chain, parse_group,
                             quotient_structure, solvable_chain, verify_center, verify_quotients)
from fctheory.cyclo import ONE, cyc
from fctheory.errors import PreconditionError
from fctheory.partition import classes
from frozen import MODELS


def _oracle_center(name, md, g):
    rec = MODELS[name]["sets"][labels(md, g)]
    ext = rec["extents"]
    top = next(v for k, v in ext.items() if md.labels[0] in k)
    return sorted(k for k, v in ext.items() if abs(v - top) < 1e-8)


@pytest.mark.parametrize("name", NAMES)
def test_center_is_the_set_of_classes_of_maximal_extent(name):
    md, lat = model(name)
    for g in lat:
        Z = center_of(md, g)
        cp = classes(md, g)
        assert sorted(labels(md, cp.bits[z]) for z in Z) == _oracle_center(name, md, g)


@pytest.mark.parametrize("name", NAMES)
def test_center_suite_on_every_fc_set(name):
    md, lat = model(name)
    for g in lat:
        rep = verify_center(md, g, lat)
        assert rep.ok, rep.failures()


@pytest.mark.parametrize("name", NAMES)
def test_quotients_and_extension_roundtrip(name):
    md, lat = model(name)
    for g in lat:
        rep = verify_quotients(md, g)
        assert rep.ok, rep.failures()
        Z = center_of(md, g)
        q = central_quotient(md, g, frozenset(Z.indices))
        assert q in lat


def test_center_suite_names(ising):
    md, lat = ising
    names = set(verify_center(md, lat.top, lat).names())
    for n in ("closure", "associative", "commutative", "inverses", "genprodrule", "cechprod",
              "centprodext", "centralchar"):
        assert n in names


def test_ising_full_center_is_z2(ising):
    md, lat = ising
    Z = center_of(md, lat.top)
    assert [Z.label(z) for z in Z] == ["{0}", "{eps}"]
    assert Z.order_profile() == abelian_profile([2])
    qs = quotient_structure(md, lat.top, frozenset(Z.indices))
    assert qs.quotient == bits(md, "0", "eps")
    assert sorted(labels(md, b) for b in qs.xi_blocks) == [("0", "eps"), ("sigma",)]
    assert qs.verify().ok


def test_ising_local_set_center_character(ising):
    md, lat = ising
    g = bits(md, "0", "eps")
    Z = center_of(md, g)
    cp = Z.cp
    s = cp.find(bits(md, "sigma"))
    assert s in Z
    assert central_character(md, cp, s, md.index("eps")) == cyc(-1)


def test_extensions(ising):
    md, lat = ising
    fib, _ = model("fibonacci")
    assert central_extensions(fib, bits(fib, "0", "tau"), [2]) == []
    assert central_extensions(fib, bits(fib, "0", "tau"), []) == [bits(fib, "0", "tau")]
    assert central_extensions(md, bits(md, "0", "eps"), [2]) == [lat.top]
    assert maximal_central_extension(md, bits(md, "0")) == bits(md, "0", "eps")


def test_nilpotency(ising):
    md, lat = ising
    assert nilpotent_chain(md, lat.top) == [bits(md, "0"), bits(md, "0", "eps"), lat.top]
    fib, flat = model("fibonacci")
    assert not is_nilpotent(fib, flat.top)
    assert classify(fib, flat.top, flat).get("solvable") == "n/a"


def test_ds3_full_set_is_solvable_not_nilpotent(ds3):
    md, lat = ds3
    rep = classify(md, lat.top, lat)
    assert rep.get("nilpotent") == "no"
    assert rep.get("solvable") == "yes"
    assert rep.get("supersolvable") == "yes"
    assert len(center_of(md, lat.top)) == 2
    chain = solvable_chain(md, lat.top, lat)
    assert chain[0] == 1 and chain[-1] == lat.top


@pytest.mark.parametrize("name", ["toric_code", "so16_lvl1", "z4_anyons", "z5_anyons"])
def test_abelian_models_are_abelian_and_nilpotent(name):
    md, lat = model(name)
    for g in lat:
        assert is_abelian(md, g)
        assert is_nilpotent(md, g)


@pytest.mark.parametrize("name", NAMES)
def test_central_characters_are_algebraic_integers(name):
    md, lat = model(name)
    for g in lat:
        assert conjecture_algint(md, g).ok


def test_parse_group():
    assert parse_group("2,2") == [2, 2]
    assert parse_group("2x3") == [2, 3]
    assert parse_group("") == [] == parse_group("1")
    with pytest.raises(PreconditionError):
        parse_group("0")


def test_quotient_rejects_non_subgroups(ising):
    md, lat = ising
    cp = classes(md, lat.top)
    with pytest.raises(PreconditionError):
        central_quotient(md, lat.top, frozenset([cp.find(bits(md, "sigma"))]))


def _some_center(data):
    name = data.draw(st.sampled_from(NAMES))
    md, lat = model(name)
    g = data.draw(st.sampled_from(lat.sets))
    return md, g, center_of(md, g)


@settings(max_examples=150)
@given(st.data())
def test_center_group_laws(data):
    md, g, Z = _some_center(data)
    elems = list(Z)
    a, b, c = (data.draw(st.sampled_from(elems)) for _ in range(3))
    assert Z.mul(a, b) == Z.mul(b, a)
    assert Z.mul(Z.mul(a, b), c) == Z.mul(a, Z.mul(b, c))
    assert Z.mul(a, Z.inv(a)) == Z.identity
    assert Z.power(a, Z.order(a)) == Z.identity
    # characters multiply along the group law
    for x in Z.cp.gm:
        assert Z.char[Z.mul(a, b)][x] == Z.char[a][x] * Z.char[b][x]


@settings(max_examples=100)
@given(st.data())
def test_central_characters_are_roots_of_unity_multiplicative_on_fusion(data):
    md, g, Z = _some_center(data)
    z = data.draw(st.sampled_from(list(Z)))
    gm = Z.cp.gm
    a, b = data.draw(st.sampled_from(gm)), data.draw(st.sampled_from(gm))
    w = Z.char[z]
    assert w[a].is_root_of_unity()
    for r, _m in md.products(a, b):
        assert w[r] == w[a] * w[b]


@settings(max_examples=100)
@given(st.data())
def test_subgroup_characters(data):
    md, g, Z = _some_center(data)
    H = data.draw(st.sampled_from(Z.subgroups()))
    chars = characters(Z, H)
    assert len(chars) == len(H)
    for xi in chars:
        assert xi[Z.identity] == ONE
        for x in H:
            for y in H:
                assert xi[Z.mul(x, y)] == xi[x] * xi[y]
