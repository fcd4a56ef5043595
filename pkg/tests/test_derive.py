import random

from envalg.algebra import AlgebraElement, abelian, quaternion
from envalg.derive import MultPolynomial, MultSymbol, partial, specialize
from envalg.freealg import L, R, FreePoly, MonomialOrder
from envalg.magma import MagmaPolynomial, Var, evaluate_term, left_power, parse_equation, parse_term

from oracles import random_poly

x, y, z = Var("x"), Var("y"), Var("z")


def sym(side, text):
    return MultSymbol(side, parse_term(text))


def test_variable_derivatives():
    assert partial(x, "x") == MultPolynomial.one()
    assert partial(y, "x").is_zero()


def test_associator_derivatives():
    assert partial(parse_term("(x*y)*z"), "x").words == {(sym(R, "y"), sym(R, "z")): 1}
    assert partial(parse_term("x*(y*z)"), "y").words == {(sym(R, "z"), sym(L, "x")): 1}


def test_fourth_left_power():
    d = partial(left_power(x, 4), "x")
    want = {
        (sym(L, "(x*x)*x"),): 1,
        (sym(L, "x*x"), sym(R, "x")): 1,
        (sym(L, "x"), sym(R, "x"), sym(R, "x")): 1,
        (sym(R, "x"), sym(R, "x"), sym(R, "x")): 1,
    }
    assert d.words == want


def test_printing():
    d = partial(parse_term("(x*y)*z"), "x")
    assert str(d) == "R[y].R[z]"
    assert str(partial(parse_equation("x*y - y*x")[1], "x")) == "-L[y] + R[y]"


def test_subscript_weights():
    rng = random.Random(4)
    for _ in range(200):
        p = random_poly(rng, ["x", "y"], max_weight=5, max_terms=1)
        (t,) = p.terms
        d = partial(p, "x")
        if not d.is_zero():
            assert d.subscript_weights() == {t.weight - 1}


def test_specialize_examples():
    A = abelian(2)
    o = MonomialOrder(2)
    mp = MultPolynomial({(sym(R, "y"), sym(R, "z")): 1})
    got = specialize(mp, {"y": A.e(0), "z": A.e(1)}, A, o)
    assert got == FreePoly.word(o.r(1) + o.r(2))

    H = quaternion()
    oh = MonomialOrder(4)
    lxy = MultPolynomial({(sym(L, "x*y"),): 1})
    assert specialize(lxy, {"x": H.e(1), "y": H.e(2)}, H, oh) == FreePoly.word(oh.l(4))

    lxx = MultPolynomial({(sym(L, "x*x"),): 1})
    assert specialize(lxx, {"x": A.e(0) + A.e(1)}, A, o).is_zero()


# -- split-extension oracle ------------------------------------------------------------
#
# On A (+) T with T the free algebra acting on itself, (a, m)(b, n) = (ab, m r_b + n l_a),
# a polynomial evaluated at (a_v, m_v) has module part sum_v m_v * (d omega / d v)(a).

def ext_mul(u, v, alg, order):
    (a, m), (b, n) = u, v
    rb = FreePoly({order.r(k + 1): c for k, c in enumerate(b.coords) if c}, alg.field)
    la = FreePoly({order.l(k + 1): c for k, c in enumerate(a.coords) if c}, alg.field)
    return a * b, m * rb + n * la


def ext_eval(t, asg, alg, order):
    if isinstance(t, Var):
        return asg[t.name]
    return ext_mul(ext_eval(t.left, asg, alg, order), ext_eval(t.right, asg, alg, order), alg, order)


def test_split_extension_oracle():
    rng = random.Random(13)
    for alg in (abelian(3), quaternion()):
        order = MonomialOrder(alg.rank)
        names = ["x", "y", "z"]
        for _ in range(40):
            omega = random_poly(rng, names, max_weight=4)
            vals = {v: alg.element([rng.randint(-2, 2) for _ in range(alg.rank)]) for v in names}
            scal = {v: rng.randint(1, 9) for v in names}
            asg = {v: (vals[v], FreePoly.one().scale(scal[v])) for v in names}
            base = alg.zero()
            module = FreePoly.zero()
            for t, c in omega.terms.items():
                a, m = ext_eval(t, asg, alg, order)
                base = base + a.scale(c)
                module = module + m.scale(c)
            assert base == evaluate_term(omega, vals, alg)
            want = FreePoly.zero()
            for v in names:
                want = want + specialize(partial(omega, v), vals, alg, order).scale(scal[v])
            assert module == want


def test_partial_is_linear():
    rng = random.Random(3)
    for _ in range(50):
        a = random_poly(rng, ["x", "y"])
        b = random_poly(rng, ["x", "y"])
        assert partial(a + b.scale(2), "x") == partial(a, "x") + partial(b, "x").scale(2)
