"""Randomized property suites shared by test_properties and the acceptance
gate: Jacobi, prolongation homomorphism, push-forward functoriality, and
commutation of the total derivatives."""
import random
from fractions import Fraction

from wavesym.charts import BASE_COORDS
from wavesym.detsys import ClassSpec
from wavesym.equivalence import (EquivalenceAlgebra, Gen, lift_D, lift_Dt,
                                 lift_Du, lift_F1, lift_F2, lift_G, lift_Pt)
from wavesym.expr import add, exp_, mul, pow_, rat, sym, total_derivative
from wavesym.parse import parse
from wavesym.vecfield import (VectorField, bracket, prolong2, pushforward, vf)


def _poly(ch, rng, names, deg=2):
    terms = [rat(Fraction(rng.randint(-3, 3), rng.randint(1, 2)))]
    for _ in range(rng.randint(1, 3)):
        t = rat(Fraction(rng.randint(-3, 3) or 1))
        for _ in range(rng.randint(1, deg)):
            t = mul(t, sym(ch.get(rng.choice(names))))
        terms.append(t)
    return add(*terms)


def random_base_field(ch, rng) -> VectorField:
    return vf(ch, BASE_COORDS,
              t=_poly(ch, rng, ("t", "x", "u")),
              x=_poly(ch, rng, ("t", "x", "u")),
              u=_poly(ch, rng, ("t", "x", "u")))


def jacobi_suite(trials: int, seed: int = 0) -> int:
    """Returns the number of failing triples (0 expected)."""
    spec = ClassSpec.default()
    ch = spec.chart
    rng = random.Random(seed ^ 0x7ACB)
    bad = 0
    for _ in range(trials):
        A, B, C = (random_base_field(ch, rng) for _ in range(3))
        s = bracket(A, bracket(B, C)) + bracket(B, bracket(C, A)) + \
            bracket(C, bracket(A, B))
        if not s.is_zero_field():
            bad += 1
        if not (bracket(A, B) + bracket(B, A)).is_zero_field():
            bad += 1
    return bad


def _jet2_field(pr, ch) -> VectorField:
    coords = ("t", "x", "u", "u_t", "u_x", "u_tt", "u_tx", "u_xx")
    coeffs = dict(pr.base.coeffs)
    coeffs.update({"u_t": pr.eta_t, "u_x": pr.eta_x, "u_tt": pr.eta_tt,
                   "u_tx": pr.eta_tx, "u_xx": pr.eta_xx})
    return VectorField(ch, coords, coeffs, check=False)


def prolongation_homomorphism_suite(trials: int, seed: int = 0) -> int:
    """prolong2([Q1,Q2]) == [prolong2 Q1, prolong2 Q2] on the 2-jet chart,
    for random fields with tau_u = xi_u = 0."""
    spec = ClassSpec.default()
    ch = spec.chart
    rng = random.Random(seed ^ 0x9123)
    bad = 0
    for _ in range(trials):
        def Q():
            return vf(ch, BASE_COORDS,
                      t=_poly(ch, rng, ("t", "x")),
                      x=_poly(ch, rng, ("t", "x")),
                      u=_poly(ch, rng, ("t", "x", "u")))
        Q1, Q2 = Q(), Q()
        lhs = _jet2_field(prolong2(bracket(Q1, Q2)), ch)
        rhs = bracket(_jet2_field(prolong2(Q1), ch), _jet2_field(prolong2(Q2), ch))
        if not (lhs == rhs):
            bad += 1
    return bad


def _random_lifted(ea, rng):
    ch = ea.chart
    x = sym(ch.get("x"))
    kind = rng.randrange(7)
    c = rat(Fraction(rng.randint(1, 5), rng.randint(1, 3)))
    if kind == 0:
        return lift_Pt(ch, c)
    if kind == 1:
        return lift_Dt(ch, c)
    if kind == 2:
        return lift_Du(ch, c)
    if kind == 3:
        return lift_F1(ch, c)
    if kind == 4:
        return lift_F2(ch, c)
    if kind == 5:
        psi = _poly(ch, rng, ("x",))
        return lift_G(ch, psi)
    a = Fraction(rng.randint(1, 4))
    b = Fraction(rng.randint(1, 3))
    phi = add(mul(rat(a), x), rat(b))
    phi_inv = mul(add(x, rat(-b)), pow_(rat(a), -1))
    return lift_D(ch, phi, phi_inv)


def functoriality_suite(trials: int, seed: int = 0) -> int:
    """pushforward(L2 o L1, V) == pushforward(L2, pushforward(L1, V))."""
    ea = EquivalenceAlgebra()
    ch = ea.chart
    rng = random.Random(seed ^ 0x51AF)
    x = sym(ch.get("x"))
    gens = [Gen("Du"), Gen("Dt"), Gen("Pt"), Gen("F1"), Gen("F2")]
    bad = 0
    for _ in range(trials):
        L1 = _random_lifted(ea, rng)
        L2 = _random_lifted(ea, rng)
        g = rng.choice(gens + [Gen("D", _poly(ch, rng, ("x",))),
                               Gen("G", _poly(ch, rng, ("x",)))])
        V = ea.field(g)
        two_step = pushforward(L2, pushforward(L1, V))
        one_step = pushforward(L2.compose(L1), V)
        if not (two_step == one_step):
            bad += 1
    return bad


def total_derivative_commutation_suite(trials: int, seed: int = 0) -> int:
    """D_t D_x e == D_x D_t e on the free jet space, to jet order 4."""
    spec = ClassSpec.default()
    ch = spec.chart
    rng = random.Random(seed ^ 0xD7D)
    names = ("t", "x", "u", "u_t", "u_x", "u_tt", "u_tx", "u_xx")
    bad = 0
    for _ in range(trials):
        e = _poly(ch, rng, names, deg=3)
        if rng.random() < 0.3:
            e = add(e, mul(parse("f(x,u_x)", ch), _poly(ch, rng, names, deg=1)))
        if rng.random() < 0.2:
            e = mul(e, exp_(sym(ch.get(rng.choice(("x", "u_x"))))))
        ab = total_derivative(total_derivative(e, "t", ch), "x", ch)
        ba = total_derivative(total_derivative(e, "x", ch), "t", ch)
        if not (ab == ba):
            bad += 1
    return bad
