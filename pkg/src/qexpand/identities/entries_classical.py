"""Catalog entries: Rogers-Fine type identities, reciprocity and bilateral summations."""

from __future__ import annotations

from ..qcore import csqrt, qpoch, qpoch_multi, qpow, tau
from ..series import combine, phi, psi, sum_terms
from ._helpers import bilateral_poles, ev, products, ser
from .catalog import Identity, register
from .domain import COMPLEX, ParamDomain, below, poles


def _kinds(*names) -> dict:
    return {n: COMPLEX for n in names}


def _unpack(p, names: str):
    return tuple(p[k] for k in names.split())


def rogers_fine_sides(a, c, x, q, ctrl):
    lhs = sum_terms(lambda n: qpoch(c / x, q, n) / qpoch(a * q, q, n) * x**n, ctrl, zero=(x * 0).real).scaled(1 - x)

    def term(n):
        w = qpoch_multi([c / a, c / x], q, n) / qpoch_multi([a * q, x * q], q, n)
        return w * (1 - c * qpow(q, 2 * n)) * (a * x) ** n * qpow(q, n * n)

    return lhs, sum_terms(term, ctrl, zero=(x * 0).real)


register(
    Identity(
        "rogers_fine",
        "Rogers-Fine identity",
        ParamDomain(_kinds("a", "c", "x"), poles=(poles(lambda p: [p["a"] * p["q"], p["x"] * p["q"]]),)),
        lambda p, ctx: rogers_fine_sides(p["a"], p["c"], p["x"], p["q"], ctx.ctrl),
        dict(a=0.3, c=0.2, x=0.4, q=0.5),
    )
)


def gen_rogers_fine_sides(a, c, d, x, q, ctrl):
    def lterm(n):
        w = qpoch_multi([c / a, a * q / d, c / x], q, n) / qpoch_multi([a * q, c * d / a, x * q], q, n)
        return w * tau(n, q) * (1 - c * qpow(q, 2 * n)) * (d * x) ** n

    def rterm(n):
        return qpoch_multi([d, c / x], q, n) / qpoch_multi([c * d / a, a * q], q, n) * x**n

    zero = (x * 0).real
    return sum_terms(lterm, ctrl, zero=zero), sum_terms(rterm, ctrl, zero=zero).scaled(1 - x)


register(
    Identity(
        "gen_rogers_fine",
        "generalised Rogers-Fine identity",
        ParamDomain(
            _kinds("a", "c", "d", "x"),
            poles=(poles(lambda p: [p["a"] * p["q"], p["c"] * p["d"] / p["a"], p["x"] * p["q"]]),),
        ),
        lambda p, ctx: gen_rogers_fine_sides(*_unpack(p, "a c d x q"), ctx.ctrl),
        dict(a=0.3, c=0.2, d=0.5, x=0.4, q=0.5),
    )
)


def H(a, d, x, c, q, ctrl):
    """The symmetric function ``H(a, d, x; c)`` (invariant under permutations of a, d, x)."""

    def term(n):
        w = qpoch_multi([c / a, c / d, c / x], q, n) / qpoch_multi([a * q, d * q, x * q], q, n)
        return w * (a * x * d * q / c) ** n * (1 - c * qpow(q, 2 * n)) * tau(n, q)

    return sum_terms(term, ctrl, zero=(x * 0).real)


def _grfm_sub(p, ctx):
    a, c, d, x, q = _unpack(p, "a c d x q")
    lhs = ser(lambda n: qpoch_multi([a * d * q / c, c / x], q, n) / qpoch_multi([d * q, a * q], q, n) * x**n, ctx, x)
    return lhs.scaled(1 - x), H(a, d, x, c, q, ctx.ctrl)


_adx_q = poles(lambda p: [p["a"] * p["q"], p["d"] * p["q"], p["x"] * p["q"]])

register(
    Identity(
        "grfm_sub",
        "Rogers-Fine type identity with a right side symmetric in a, d, x",
        ParamDomain(_kinds("a", "c", "d", "x"), poles=(_adx_q,)),
        _grfm_sub,
        dict(a=0.3, c=0.2, d=0.5, x=0.4, q=0.5),
    )
)


def _rf_analogue(p, ctx):
    a, c, x, q = _unpack(p, "a c x q")
    z = a * x / c
    lhs = ser(lambda n: qpoch(c / x, q, n) / qpoch(a * q, q, n) * z**n, ctx, x).scaled(1 - x)

    def term(n):
        w = qpoch_multi([c / a, c / x], q, n) / qpoch_multi([a * q, x * q], q, n)
        return w * (1 - c * qpow(q, 2 * n)) * z**n

    return lhs, ser(term, ctx, x)


register(
    Identity(
        "rf_analogue",
        "analogue of the Rogers-Fine identity without the quadratic power",
        ParamDomain(
            _kinds("a", "c", "x"),
            constraints=(below(0.9, lambda p: p["a"] * p["x"] / p["c"], "|ax/c| < 0.9"),),
            poles=(poles(lambda p: [p["a"] * p["q"], p["x"] * p["q"]]),),
        ),
        _rf_analogue,
        dict(a=0.3, c=0.55, x=0.4, q=0.5),
    )
)


def _contiguous(p, ctx):
    a, c, q = _unpack(p, "a c q")
    lhs = ev(phi([c, c / a], [a * q], q, a / c), ctx)
    rhs = ev(phi([c, c / a], [a * q], q, a * q * q / c), ctx).scaled(c)
    return lhs, rhs


register(
    Identity(
        "contiguous_2phi1",
        "contiguous relation for a 2phi1 series",
        ParamDomain(
            _kinds("a", "c"),
            constraints=(
                below(0.9, lambda p: p["a"] / p["c"], "|a/c| < 0.9"),
                below(0.9, lambda p: p["a"] * p["q"] ** 2 / p["c"], "|aq^2/c| < 0.9"),
            ),
            poles=(poles(lambda p: [p["a"] * p["q"]]),),
        ),
        _contiguous,
        dict(a=0.3, c=0.6, q=0.5),
    )
)


def _q_gauss(p, ctx):
    c, d, x, q = _unpack(p, "c d x q")
    lhs = ev(phi([d * q / c, c / x], [d * q], q, x), ctx)
    return lhs, products([c, d * x * q / c], [d * q, x], q)


register(
    Identity(
        "q_gauss",
        "q-Gauss summation",
        ParamDomain(_kinds("c", "d", "x"), poles=(poles(lambda p: [p["d"] * p["q"], p["x"]]),)),
        _q_gauss,
        dict(c=0.5, d=0.3, x=0.4, q=0.5),
    )
)


def _reciprocity(p, ctx):
    a, c, d, x, q = _unpack(p, "a c d x q")
    s1 = ser(lambda n: qpoch_multi([a * d * q / c, c / x], q, n) / (qpoch(d, q, n + 1) * qpoch(a, q, n + 1)) * x**n, ctx, x)
    z = x * q / c

    def t2(n):
        return qpoch_multi([a * d * q / c, q / x], q, n) / (qpoch(d * q / c, q, n + 1) * qpoch(a * q / c, q, n + 1)) * z**n

    s2 = ser(t2, ctx, x)
    lhs = combine(s1.value - q / c * s2.value, s1, s2, weights=[1, q / c])
    rhs = products(
        [q, c, q / c, a * d * q / c, d * x * q / c, a * x * q / c],
        [d, a, x, d * q / c, a * q / c, x * q / c],
        q,
    )
    return lhs, rhs


_recip_poles = poles(
    lambda p: [p["d"], p["a"], p["x"], p["d"] * p["q"] / p["c"], p["a"] * p["q"] / p["c"], p["x"] * p["q"] / p["c"]]
)

register(
    Identity(
        "reciprocity",
        "Ramanujan-type reciprocity theorem",
        ParamDomain(
            _kinds("a", "c", "d", "x"),
            constraints=(
                below(0.9, lambda p: p["x"], "|x| < 0.9"),
                below(0.9, lambda p: p["x"] * p["q"] / p["c"], "|xq/c| < 0.9"),
            ),
            poles=(_recip_poles,),
        ),
        _reciprocity,
        dict(a=0.3, c=0.55, d=0.2, x=0.4, q=0.5),
    )
)


def kappa(a, d, x, c, q):
    return (a - 1) * (d - 1) * (x - 1) / ((c - a * q) * (c - d * q) * (c - q * x))


def _h_reciprocal(p, ctx):
    a, c, d, x, q = _unpack(p, "a c d x q")
    h1 = H(a, d, x, c, q, ctx.ctrl)
    h2 = H(a * q / c, d * q / c, x * q / c, q * q / c, q, ctx.ctrl)
    w1 = 1 / (1 - c)
    w2 = -kappa(a, d, x, c, q) * q * c * c / (c - 1)
    lhs = combine(w1 * h1.value + w2 * h2.value, h1, h2, weights=[w1, w2])
    rhs = products(
        [q, c * q, q / c, a * d * q / c, d * x * q / c, a * x * q / c],
        [d * q, a * q, x * q, d * q / c, a * q / c, x * q / c],
        q,
    )
    return lhs, rhs


register(
    Identity(
        "h_reciprocal",
        "reciprocal relation for the symmetric function H",
        ParamDomain(
            _kinds("a", "c", "d", "x"),
            poles=(
                poles(lambda p: [p["a"] * p["q"], p["d"] * p["q"], p["x"] * p["q"], p["d"] * p["q"] / p["c"],
                                 p["a"] * p["q"] / p["c"], p["x"] * p["q"] / p["c"]]),
                poles(lambda p: [p["c"]], m_lo=0),
            ),
        ),
        _h_reciprocal,
        dict(a=0.3, c=0.55, d=0.2, x=0.4, q=0.5),
    )
)


def _6psi6_spec(p):
    a, c, d, x, y, q = _unpack(p, "a c d x y q")
    s = csqrt(c)
    z = a * d * x * q / (c * y)
    return psi([q * s, -q * s, c / a, c / d, c / x, y], [s, -s, a * q, d * q, x * q, c * q / y], q, z)


def _bailey_6psi6(p, ctx):
    a, c, d, x, y, q = _unpack(p, "a c d x y q")
    lhs = ev(_6psi6_spec(p), ctx)
    rhs = products(
        [q, c * q, q / c, a * d * q / c, d * x * q / c, a * x * q / c, d * q / y, a * q / y, x * q / y],
        [d * q, a * q, x * q, c * q / y, d * q / c, a * q / c, x * q / c, q / y, a * d * x * q / (c * y)],
        q,
    )
    return lhs, rhs


register(
    Identity(
        "bailey_6psi6",
        "Bailey's very-well-poised 6psi6 summation",
        ParamDomain(
            _kinds("a", "c", "d", "x", "y"),
            poles=(
                poles(lambda p: bilateral_poles(_6psi6_spec(p))),
                poles(lambda p: [p["d"] * p["q"] / p["c"], p["a"] * p["q"] / p["c"], p["x"] * p["q"] / p["c"],
                                 p["q"] / p["y"]]),
            ),
            bilateral=lambda p: [_6psi6_spec(p)],
        ),
        _bailey_6psi6,
        dict(a=0.3, c=0.6, d=0.4, x=0.5, y=0.7, q=0.5),
    )
)


def _1psi1_spec(p):
    a, c, x, q = _unpack(p, "a c x q")
    return psi([c / x], [a * q], q, x)


def _ramanujan_1psi1(p, ctx):
    a, c, x, q = _unpack(p, "a c x q")
    return ev(_1psi1_spec(p), ctx), products([q, c, q / c, a * x * q / c], [x, a * q, a * q / c, x * q / c], q)


register(
    Identity(
        "ramanujan_1psi1",
        "Ramanujan's 1psi1 summation",
        ParamDomain(
            _kinds("a", "c", "x"),
            poles=(
                poles(lambda p: bilateral_poles(_1psi1_spec(p))),
                poles(lambda p: [p["a"] * p["q"] / p["c"], p["x"] * p["q"] / p["c"]]),
            ),
            bilateral=lambda p: [_1psi1_spec(p)],
        ),
        _ramanujan_1psi1,
        dict(a=0.1, c=0.3, x=0.5, q=0.4),
    )
)


def _ramanujan_triple(p, ctx):
    a, c, x, q = _unpack(p, "a c x q")
    s1 = ser(lambda n: qpoch(c / x, q, n) / qpoch(a, q, n + 1) * x**n, ctx, x)
    z = x * q / c
    s2 = ser(lambda n: qpoch(q / x, q, n) / qpoch(a * q / c, q, n + 1) * z**n, ctx, x)
    lhs = combine(s1.value - q / c * s2.value, s1, s2, weights=[1, q / c])
    return lhs, products([q, c, q / c, a * x * q / c], [a, x, a * q / c, x * q / c], q)


register(
    Identity(
        "ramanujan_triple",
        "two unilateral sums combining into the 1psi1 product",
        ParamDomain(
            _kinds("a", "c", "x"),
            constraints=(below(0.9, lambda p: p["x"] * p["q"] / p["c"], "|xq/c| < 0.9"),),
            poles=(poles(lambda p: [p["a"], p["x"], p["a"] * p["q"] / p["c"], p["x"] * p["q"] / p["c"]]),),
        ),
        _ramanujan_triple,
        dict(a=0.3, c=0.6, x=0.4, q=0.5),
    )
)
