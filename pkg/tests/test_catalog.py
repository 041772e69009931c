from itertools import product

import pytest

from sgi import catalog as cat
from sgi import epsilon as ep
from sgi.invariants import crossing_lower_bound, reduced_invariant, t_invariant

PARAMS = {
    "k7_standard": [()],
    "mobius_one_crossing": [(2,), (3,), (4,)],
    "mobius_odd": [(n, k) for n in (2, 3) for k in (0, 1, 2)],
    "mobius_even": [(n, m) for n in (2, 3) for m in (0, 1, 2)],
    "k6_twisted": [(n,) for n in range(6)],
    "heawood_twisted": list(product(range(3), repeat=3)),
    "heawood_standard": [()],
    "hopf_2k3": [(c,) for c in (-2, -1, 0, 1, 2)],
}


def cases():
    for name, plist in PARAMS.items():
        for p in plist:
            yield name, p


@pytest.mark.parametrize("name,params", list(cases()))
def test_entry_values(name, params):
    e = cat.CATALOG[name]
    d = e.build(*params)
    assert len(d) == e.crossings(*params)
    if e.invariant == "T":
        assert t_invariant(d) == e.expected(*params)
    else:
        t = ep.builtin_for_graph(e.table, d.graph)
        assert reduced_invariant(d, t) == e.expected(*params)


def test_registry_complete():
    assert set(PARAMS) == set(cat.CATALOG)


def test_mobius_odd_sign():
    t = ep.builtin_epsilon("Mobius", 7)
    assert reduced_invariant(cat.mobius_odd(3, 2, positive=False), t) == -5


def test_minimal_crossings_when_bound_is_sharp():
    for n in range(4):
        d = cat.k6_twisted(n)
        assert crossing_lower_bound(d, ep.builtin_epsilon("K6-sec5")) == len(d) == 2 * n + 3
    for k, m, n in product(range(3), repeat=3):
        d = cat.heawood_twisted(k, m, n)
        assert crossing_lower_bound(d, ep.builtin_epsilon("Heawood")) == len(d)


def test_even_mobius_sign_flag():
    assert t_invariant(cat.mobius_even(2, 1, sign=-1)) == -t_invariant(cat.mobius_even(2, 1))


@pytest.mark.parametrize("call", [
    lambda: cat.mobius_odd(1),
    lambda: cat.mobius_odd(2, -1),
    lambda: cat.mobius_even(1),
    lambda: cat.mobius_even(2, 0, 3),
    lambda: cat.k6_twisted(-1),
    lambda: cat.heawood_twisted(0, -1, 0),
    lambda: cat.k7_standard([1] * 3),
    lambda: cat.k7_standard([2] * 35),
    lambda: cat.heawood_standard([1]),
    lambda: cat.build("nope"),
    lambda: cat.build("hopf_2k3", 1, 2),
])
def test_bad_parameters(call):
    with pytest.raises(cat.CatalogError):
        call()


def test_custom_signs():
    t = ep.builtin_epsilon("K7")
    signs = [1] * 34 + [-1]
    assert reduced_invariant(cat.k7_standard(signs), t) == 33
