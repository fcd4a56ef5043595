import random

import pytest

from envalg.algebra import abelian, check_identity
from envalg.errors import NotCertified, StateMismatch
from envalg.extension import (ExtensionElement, dorofeev_witness, extension_algebra, make_element, random_element,
                              solvability_check, _module_words)
from envalg.freealg import FreePoly, MonomialOrder
from envalg.groebner import complete
from envalg.relations import generate_relations
from envalg.scalars import FieldSpec, Q
from envalg.varieties import variety

F2 = FieldSpec(2)


def alt_state(n, field=Q, order=None, **kw):
    return complete(generate_relations(variety("alt", field), abelian(n, field), order=order), **kw)


@pytest.fixture(scope="module")
def E3():
    st = alt_state(3, order=MonomialOrder.reversed_indices(3))
    return abelian(3), st


def test_module_times_base(E3):
    A, st = E3
    x = make_element(A, st, module="r1") * make_element(A, st, base=A.e(1))
    assert x.base.is_zero()
    assert x.module.format(st.order) == "r1.r2"
    assert str(x) == "(0, r1.r2)"


def test_module_times_base_default_order():
    A = abelian(2)
    st = alt_state(2)
    x = make_element(A, st, module="r1") * make_element(A, st, base=A.e(1))
    assert x.module == st.reduce(FreePoly.word(st.order.r(1) + st.order.r(2)))
    assert x.module.format(st.order) == "-r2.r1"


def test_base_times_base_has_no_module_part(E3):
    # both module parts are zero, so the product formula gives (e1 e1, 0) = (0, 0)
    A, st = E3
    e1 = make_element(A, st, base=A.e(0))
    assert (e1 * e1).is_zero()


def test_module_times_module_vanishes(E3):
    A, st = E3
    for m, m2 in [("r1", "l2"), ("1", "r1.r2"), ("l1 + 2*r3", "r2.r3 - 1")]:
        assert (make_element(A, st, module=m) * make_element(A, st, module=m2)).is_zero()


def test_base_acts_by_left_letters(E3):
    A, st = E3
    x = make_element(A, st, base=A.e(2)) * make_element(A, st, module="r1")
    assert x.module == st.reduce(FreePoly.word(st.order.r(1) + st.order.l(3)))


def test_module_part_is_kept_reduced(E3):
    A, st = E3
    x = make_element(A, st, module="l1.l1 + r2")
    assert x.module == st.reduce(x.module)
    assert x.module.format(st.order) == "r2"


def test_bilinearity(E3):
    A, st = E3
    rng = random.Random(3)
    words = _module_words(st, None)
    for _ in range(50):
        u, v, w = (random_element(A, st, rng, words) for _ in range(3))
        c = Q(rng.randint(-3, 3))
        assert (u + v) * w == u * w + v * w
        assert w * (u + v) == w * u + w * v
        assert u.scale(c) * w == (u * w).scale(c) == u * w.scale(c)
        assert (u - u).is_zero()


def test_state_mismatch(E3):
    A, st = E3
    other = alt_state(3)
    with pytest.raises(StateMismatch):
        make_element(A, st, module="r1") * make_element(A, other, base=A.e(0))
    with pytest.raises(StateMismatch):
        make_element(A, st) + make_element(abelian(3, Q), st, base=[1, 0, 0]).__class__(
            abelian(2).e(0), FreePoly.zero(), st)


def test_not_certified_product():
    A = abelian(3)
    st = alt_state(3, max_weight=2)
    assert st.complete_below == 3
    x = make_element(A, st, module="r1.r2")
    with pytest.raises(NotCertified):
        x * make_element(A, st, base=A.e(0))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_witness_and_extra_factor(n):
    st = alt_state(n, order=MonomialOrder.reversed_indices(n))
    A = abelian(n)
    x = dorofeev_witness(n, st, A)
    assert x.module.weight == n
    # r-letters with a repeated subscript kill the product
    assert (x * make_element(A, st, base=A.e(n - 1))).is_zero()


def test_witness_arguments():
    st = alt_state(2)
    with pytest.raises(ValueError):
        dorofeev_witness(1, st)
    with pytest.raises(StateMismatch):
        dorofeev_witness(3, st)


def test_pure_module_quadruple():
    A = abelian(2)
    st = alt_state(2)
    u = make_element(A, st, base=A.e(0), module="1")
    assert ((u * u) * (u * u)).is_zero()


@pytest.mark.parametrize("field", [Q, F2], ids=str)
def test_solvability_report(field):
    st = alt_state(3, field)
    rep = solvability_check(st, trials=200, seed=1)
    assert rep.passed and rep.failures == 0
    assert rep.to_json() == {"trials": 200, "seed": 1, "failures": 0, "passed": True, "first_failure": None}
    assert str(rep).startswith("PASS")


@pytest.mark.parametrize("n", [1, 2])
def test_extension_algebra_is_alternative(n):
    st = alt_state(n)
    E = extension_algebra(st)
    assert E.rank == n + st.dimension()
    assert E.basis[n] == "[1]"
    alt = variety("alt")
    assert all(check_identity(E, e).holds for e in alt)
    # for n = 1 the associator terms all vanish since l1 l1 = r1 r1 = 0 and l1 r1 = r1 l1
    assert check_identity(E, variety("ass")[0]).holds == (n == 1)


def test_extension_algebra_matches_pairwise_products():
    st = alt_state(2)
    A = abelian(2)
    E = extension_algebra(st)
    words = _module_words(st, None)
    for i in range(2):
        for k, w in enumerate(words):
            x = make_element(A, st, base=A.e(i)) * ExtensionElement(A.zero(), FreePoly.word(w), st)
            got = E.e(i) * E.e(2 + k)
            want = [Q(0)] * E.rank
            for u, c in x.module.terms.items():
                want[2 + words.index(u)] = c
            assert got == E.element(want)
