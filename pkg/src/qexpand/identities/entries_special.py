"""Catalog entries: mixed-base identities, quadratic transformations, multiple sums,
the limiting transformation and the Pfaff-Saalschutz evaluation."""

from __future__ import annotations

from ..qcore import Param, csqrt, qbinom, qpoch, qpoch_inf, qpoch_inf_multi, qpoch_multi, qpow, tau
from ..series import exact, phi, vwp_spec
from ._helpers import ev, products, ser
from .catalog import Identity, register
from .domain import COMPLEX, IntRange, ParamDomain, below, poles
from .theorems import Axis, Shared, _terminating, factorized_multisum


def _kinds(*names) -> dict:
    return {n: COMPLEX for n in names}


def _unpack(p, names: str):
    return tuple(p[k] for k in names.split())


# ------------------------------------------------- base q and q^2 together


def _cor39_lhs(b, x, q):
    Q = q * q
    return exact(qpoch_inf_multi([b * x, x * q / b], Q) / qpoch_inf(x / q, q))


def _cor39_inner0(n, b, q, scale=1):
    return _terminating(phi([Param.qpower(q, -n), b, q / b], [q, -q], q, -qpow(q, n + 1)), scale)


def _cor39_a(p, ctx):
    a, b, x, q = _unpack(p, "a b x q")

    def term(n):
        inner = phi([Param.qpower(q, -n), b, q / b], [Param.qpower(q, -n - 1, 1 / a), q, -q], q, -1 / a)
        return _terminating(inner, (x / q) ** n * qpoch(a * q * q, q, n) / qpoch(a * x * q, q, n + 1)).value

    return _cor39_lhs(b, x, q), ser(term, ctx, x)


_x_over_q = below(0.9, lambda p: p["x"] / p["q"], "|x/q| < 0.9")

register(
    Identity(
        "cor39_a",
        "base-q^2 product expanded over terminating 3phi3 series",
        ParamDomain(
            _kinds("a", "b", "x"),
            constraints=(_x_over_q,),
            poles=(
                poles(lambda p: [p["a"] * p["x"] * p["q"], p["x"] / p["q"]]),
                poles(lambda p: [1 / p["a"]], m_lo=1),
            ),
        ),
        _cor39_a,
        dict(a=0.3, b=0.6, x=0.2, q=0.5),
    )
)


def _cor39_b(p, ctx):
    b, x, q = _unpack(p, "b x q")
    return _cor39_lhs(b, x, q), ser(lambda n: _cor39_inner0(n, b, q, (x / q) ** n).value, ctx, x)


register(
    Identity(
        "cor39_b",
        "base-q^2 product expanded over terminating 3phi2 series",
        ParamDomain(_kinds("b", "x"), constraints=(_x_over_q,), poles=(poles(lambda p: [p["x"] / p["q"]]),)),
        _cor39_b,
        dict(b=0.6, x=0.2, q=0.5),
    )
)


def _cor39_c(p, ctx):
    b, n, q = p["b"], p["n"], p["q"]
    Q = q * q
    spec = phi([Param.qpower(Q, -n), b * q], [Param.qpower(Q, -n, b * q)], Q, b)
    lhs = qpoch(q / b, Q, n) / qpoch(Q, Q, n) * _terminating(spec).value
    return exact(lhs), exact(qpow(q, -n) * _cor39_inner0(n, b, q).value)


register(
    Identity(
        "cor39_c",
        "finite identity between a base-q^2 2phi1 and a base-q 3phi2",
        ParamDomain({"b": COMPLEX, "n": IntRange(0, 12)}, poles=(poles(lambda p: [1 / p["b"]], m_lo=1),)),
        _cor39_c,
        dict(b=0.6, n=3, q=0.5),
    )
)


def _cor310(p, ctx):
    a, c, x, q = _unpack(p, "a c x q")
    Q = q * q
    lhs = ser(
        lambda n: qpoch_multi([a, -a, c * c * q / x], q, n) / qpoch_multi([c * q, -c * q, a * a], q, n) * x**n, ctx, x
    ).scaled(1 - x)

    def term(n):
        w = qpoch_multi([q, c * c * q * q / (a * a), c * c * q / x, c * c * q * q / x], Q, n)
        w = w / qpoch_multi([c * c * q * q, a * a * q, x * q, x * q * q], Q, n)
        return w * (1 - c * c * qpow(q, 4 * n + 1)) * tau(2 * n, q) * (a * x) ** (2 * n)

    return lhs, ser(term, ctx, x)


register(
    Identity(
        "cor310",
        "quadratic expansion related to Andrews' terminating summation",
        ParamDomain(
            _kinds("a", "c", "x"),
            poles=(
                poles(lambda p: [p["c"] * p["q"], -p["c"] * p["q"], p["a"] ** 2, p["x"] * p["q"]]),
                poles(lambda p: [p["c"] ** 2 * p["q"] ** 2, p["a"] ** 2 * p["q"]], base="q2"),
            ),
        ),
        _cor310,
        dict(a=0.3, c=0.4, x=0.5, q=0.5),
    )
)


def _cor311(p, ctx):
    a, e, x, q = _unpack(p, "a e x q")
    Q = q * q
    lhs = ser(lambda n: qpoch_multi([a, -a, q / x], q, n) / qpoch_multi([-q, e, a * a * q / e], q, n) * x**n, ctx, x)
    norm = qpoch_inf_multi([e, a * a * q / e], q)

    def term(n):
        prods = qpoch_inf_multi(
            [e * qpow(q, -n), e * qpow(q, n + 1), a * a * qpow(q, 1 - n) / e, a * a * qpow(q, n + 2) / e], Q
        )
        w = prods / norm * qpoch(q / x, q, n) / qpoch(x, q, n + 1)
        return w * (qpow(q, n * n) - qpow(q, (n + 1) ** 2)) * (-x) ** n

    return lhs, ser(term, ctx, x)


register(
    Identity(
        "cor311",
        "q-analogue of Whipple's 3F2 sum in expansion form",
        ParamDomain(
            _kinds("a", "e", "x"),
            poles=(poles(lambda p: [p["e"], p["a"] ** 2 * p["q"] / p["e"], p["x"]]),),
        ),
        _cor311,
        dict(a=0.3, e=0.5, x=0.4, q=0.5),
    )
)


def _cor312(p, ctx):
    c, x, q = _unpack(p, "c x q")
    lhs = ser(lambda n: qpoch(c * q / x, q, n) / qpoch(c * x * q * q, q, n + 1) * (x * q) ** n, ctx, x)
    cc = c * c * q**3

    def term(n):
        w = qpoch_multi([qpow(q, n + 1), c * q * q, c * q / x], q, n) / (qpoch(cc, q, 2 * n + 1) * qpoch(x * q, q, n + 1))
        return (1 - c * qpow(q, 2 * n + 2)) * (c * x * q * q) ** n * w

    return lhs, ser(term, ctx, x)


register(
    Identity(
        "cor312",
        "transformation with a (c^2 q^3; q)_{2n+1} denominator",
        ParamDomain(
            _kinds("c", "x"),
            poles=(poles(lambda p: [p["c"] * p["x"] * p["q"] ** 2, p["c"] ** 2 * p["q"] ** 3, p["x"] * p["q"]]),),
        ),
        _cor312,
        dict(c=0.4, x=0.5, q=0.5),
    )
)


def _partial_theta(p, ctx):
    c, q = p["c"], p["q"]
    lhs = ser(lambda n: tau(n, q) * (c * q * q) ** n, ctx, c)
    cc = c * c * q**3

    def term(n):
        w = qpoch_multi([qpow(q, n + 1), c * q * q], q, n) / qpoch(cc, q, 2 * n + 1)
        return tau(n, q) * (1 - c * qpow(q, 2 * n + 2)) * cc**n * w

    return lhs, ser(term, ctx, c)


register(
    Identity(
        "partial_theta",
        "expansion of a partial theta function",
        ParamDomain(_kinds("c"), poles=(poles(lambda p: [p["c"] ** 2 * p["q"] ** 3]),)),
        _partial_theta,
        dict(c=0.4, q=0.5),
    )
)


# ------------------------------------------------------- 8W7 transformations


def _a3(p):
    return {"a3": p["c"] * p["d"] ** 2 * p["q"] / (p["a1"] * p["a2"])}


def _vwp_8w7(p, ctx):
    c, d, a1, a2, x, q = _unpack(p, "c d a1 a2 x q")
    a3 = c * d * d * q / (a1 * a2)
    lhs = ev(vwp_spec(c * d * q, [a1, a2, a3, q, c * q / x], q, x * q), ctx)
    pref = (1 - x * d) * (1 - c * q * q) / ((1 - c * d * q) * (1 - x * q))
    rhs = ev(vwp_spec(c * q * q, [a1 * q / d, a2 * q / d, a3 * q / d, q, c * q / x], q, x * d), ctx).scaled(pref)
    return lhs, rhs


register(
    Identity(
        "vwp_8w7_transform",
        "8W7 transformation under a balancing condition",
        ParamDomain(
            _kinds("c", "d", "a1", "a2", "x"),
            derived=_a3,
            constraints=(below(1, lambda p: p["x"] * p["q"], "|xq| < 1"), below(1, lambda p: p["x"] * p["d"], "|xd| < 1")),
            poles=(
                poles(lambda p: [p["c"] * p["d"] * p["q"] ** 2 / p[k] for k in ("a1", "a2", "a3")]
                      + [p["c"] * p["d"] * p["q"], p["d"] * p["x"] * p["q"], p["c"] * p["q"] ** 2,
                         p["x"] * p["q"] ** 2]),
            ),
        ),
        _vwp_8w7,
        dict(c=0.3, d=0.5, a1=0.4, a2=-0.6, x=0.45, q=0.5),
        "a3 = c d^2 q / (a1 a2)",
    )
)


def _base_change(p, ctx):
    c, d, x, q = _unpack(p, "c d x q")
    Q = q * q
    lhs = ev(vwp_spec(c * Q, [q, Q / (d * d), c * Q / x, c * q / x, Q], Q, x * x * d * d), ctx)
    s = csqrt(c * q)
    pref = (1 - c * d * q) * (1 - x * q) / ((1 - x * d) * (1 - c * Q))
    rhs = ev(vwp_spec(c * d * q, [q, d * s, -d * s, q / d, c * q / x], q, -x * d), ctx).scaled(pref)
    return lhs, rhs


register(
    Identity(
        "base_change_8w7",
        "8W7 in base q^2 against an 8W7 in base q",
        ParamDomain(
            _kinds("c", "d", "x"),
            poles=(
                poles(lambda p: [p["c"] * p["q"], p["c"] * p["d"] * p["q"], p["c"] * p["d"] ** 2 * p["q"],
                                 p["d"] * p["x"] * p["q"], p["x"] * p["d"], p["x"] * p["q"]]),
                poles(lambda p: [p["c"] * p["d"] ** 2 * p["q"] ** 2], base="q2"),
            ),
        ),
        _base_change,
        dict(c=0.3, d=0.5, x=0.45, q=0.5),
    )
)


# ------------------------------------------------------------ multiple sums


def _gauss_weights(v, q):
    n = 0
    while True:
        # tau(n) without its power of q, which the axis applies separately
        yield (1 - qpow(q, 2 * n)) * (-v) ** n * qpoch(1 / v, q, n) / qpoch(v, q, n + 1)
        n += 1


def _multi_gauss(p, ctx):
    a, x, y, q = _unpack(p, "a x y q")
    lhs = products([a * x, a * y], [a, a * x * y], q)

    def axis(v):
        return Axis(
            _gauss_weights(v, q), lambda n: [qpow(q, -n), qpow(q, n)], lambda n: [], lambda n: n * (n - 1) // 2
        )

    rhs = factorized_multisum([axis(x), axis(y)], Shared([], [a], a * q * q, qq_copies=3), q, ctx.ctrl)
    return lhs, rhs


register(
    Identity(
        "multi_gauss",
        "double-series expansion of a Gauss-type product",
        ParamDomain(
            _kinds("a", "x", "y"),
            poles=(poles(lambda p: [p["a"], p["a"] * p["x"] * p["y"], p["x"], p["y"]]),),
        ),
        _multi_gauss,
        dict(a=0.3, x=0.4, y=-0.5, q=0.5),
    )
)


def _6w5_weights(a, v, q):
    n = 0
    while True:
        w = (a * v) ** n * (1 - qpow(q, 2 * n + 1)) * qpoch_multi([q / a, 1 / v], q, n)
        yield w / (qpoch(a, q, n + 1) * qpoch(v * q, q, n + 1))
        n += 1


def _multi_6w5(p, ctx):
    a, x, y, z, q = _unpack(p, "a x y z q")
    lhs = products(
        [a * q, a * q * x * y, a * q * x * z, a * q * y * z], [a * x, a * y, a * z, a * q * x * y * z], q
    )
    s = csqrt(a)

    def axis(v):
        return Axis(
            _6w5_weights(a, v, q),
            lambda n: [qpow(q, -n), qpow(q, n + 1)],
            lambda n: [a * qpow(q, n + 1), a * qpow(q, -n)],
        )

    shared = Shared([a, q * s, -q * s, a, a, a], [s, -s], a * q, qq_copies=4)
    return lhs, factorized_multisum([axis(x), axis(y), axis(z)], shared, q, ctx.ctrl)


register(
    Identity(
        "multi_6w5",
        "triple-series expansion with terminating 12W11 inner sums",
        ParamDomain(
            _kinds("a", "x", "y", "z"),
            poles=(
                poles(lambda p: [p["a"] * p["x"], p["a"] * p["y"], p["a"] * p["z"],
                                 p["a"] * p["q"] * p["x"] * p["y"] * p["z"], p["a"],
                                 p["x"] * p["q"], p["y"] * p["q"], p["z"] * p["q"]]),
                poles(lambda p: [1 / p["a"]], m_lo=1),
            ),
        ),
        _multi_6w5,
        dict(a=0.3, x=0.4, y=-0.5, z=0.6, q=0.5),
    )
)


# ------------------------------------------------- limiting transformation


def concluding_lhs(a, b, c, d, x, q, ctx):
    pref = qpoch_inf_multi([x, a * c], q) / qpoch_inf_multi([a * x, c], q)
    return ev(phi([a, b, c / x], [d, a * b * c / d], q, x), ctx).scaled(pref)


def concluding_w(a, b, c, d, x, y, q, ctx):
    """The 8W7 side at a small but finite ``y``."""
    A = a * c / q
    return ev(vwp_spec(A, [a, d / b, a * c / d, c / x, b / y], q, x * y), ctx)


def concluding_limit(a, b, c, d, x, q, ctx):
    """The ``y -> 0`` limit of :func:`concluding_w`, taken termwise.

    ``(b/y; q)_n y^n -> tau(n) b^n`` and ``(Aqy/b; q)_n -> 1``; the extra
    ``tau(n)`` is carried by a zero lower parameter.
    """
    A = a * c / q
    s = csqrt(A)
    P = [a, d / b, a * c / d, c / x]
    return ev(phi([A, q * s, -q * s] + P, [s, -s] + [A * q / v for v in P] + [0], q, b * x), ctx)


def _concluding(p, ctx):
    a, b, c, d, x, q = _unpack(p, "a b c d x q")
    return concluding_lhs(a, b, c, d, x, q, ctx), concluding_limit(a, b, c, d, x, q, ctx)


register(
    Identity(
        "concluding_transform",
        "limit of a terminating-type 8W7 transformation as one parameter vanishes",
        ParamDomain(
            _kinds("a", "b", "c", "d", "x"),
            poles=(
                poles(lambda p: [p["d"], p["a"] * p["b"] * p["c"] / p["d"], p["a"] * p["x"], p["c"]]),
                poles(lambda p: [p["a"] * p["c"] / p["q"]], m_lo=0),
            ),
        ),
        _concluding,
        dict(a=0.3, b=0.4, c=0.5, d=0.6, x=0.35, q=0.5),
    )
)


# ----------------------------------------------------- Pfaff-Saalschutz S


def pfaff_ksum(a, c, d, n: int, i: int, q):
    """S(n, i) written as the alternating q-binomial sum."""
    N = n - i
    total = 0
    for K in range(N + 1):
        w = (-1) ** K * qpow(q, (N - K) * (N - K - 1) // 2) * qbinom(N, K, q)
        w = w * qpoch_multi([a * c * qpow(q, n + i), c * d * qpow(q, i)], q, K)
        total = total + w / qpoch_multi([a * c * qpow(q, i + 1), c * d * qpow(q, 2 * i)], q, K)
    return total


def pfaff_phi(a, c, d, n: int, i: int, q):
    N = n - i
    spec = phi(
        [Param.qpower(q, -N), a * c * qpow(q, n + i), c * d * qpow(q, i)],
        [a * c * qpow(q, i + 1), c * d * qpow(q, 2 * i)],
        q,
        q,
    )
    return qpow(q, N * (N - 1) // 2) * _terminating(spec).value


def pfaff_product(a, c, d, n: int, i: int, q):
    N = n - i
    num = qpoch_multi([qpow(q, 1 - n), a * q / d], q, N)
    den = qpoch_multi([a * c * qpow(q, i + 1), qpow(q, 1 - n - i) / (c * d)], q, N)
    return qpow(q, N * (N - 1) // 2) * num / den


def _pfaff(p, ctx):
    a, c, d, q, n, i = _unpack(p, "a c d q n i")
    return exact(pfaff_phi(a, c, d, n, i, q)), exact(pfaff_product(a, c, d, n, i, q))


register(
    Identity(
        "pfaff_saalschutz_S",
        "q-Pfaff-Saalschutz evaluation of the inner sum S(n, i)",
        ParamDomain(
            {**_kinds("a", "c", "d"), "i": IntRange(0, 5), "N": IntRange(0, 10)},
            derived=lambda p: {"n": p["N"] + p["i"]},
            poles=(poles(lambda p: [p["a"] * p["c"] * p["q"], p["c"] * p["d"]]),),
        ),
        _pfaff,
        dict(a=0.3, c=0.4, d=0.5, i=1, N=3, n=4, q=0.5),
        "n - i = N in 0..10",
    )
)
