"""Catalog entries: the general expansions and their direct specialisations."""

from __future__ import annotations

from ..askey_wilson import AWPoint, aw_gf_sides
from ..qcore import Param, qpoch, qpoch_multi, qpow
from ..series import exact, phi, phi_tilde, vwp_spec
from ._helpers import ev, products, ser
from .catalog import Identity, register
from .domain import COMPLEX, PHASE, REAL, IntRange, ParamDomain, below, poles
from .theorems import (
    BetaTable,
    DeltaOp,
    _terminating,
    apply_delta,
    eval_multi,
    omega_seq,
    thm_dlidi_sides,
    thm_main_sides,
)


def _kinds(*names, kind=COMPLEX) -> dict:
    return {n: kind for n in names}


def _omega_sum(p, ctx, x, c, d, inner):
    """``sum_n Omega(n; x, c, d) * inner(n)`` with terminating inner sums."""
    q = p["q"]
    weights = omega_seq(x, c, d, q)
    return ser(lambda n: _terminating(inner(n), next(weights)).value, ctx, x)


# ------------------------------------------------------------------ theorems


def _thm_main(p, ctx):
    return thm_main_sides([p["a1"]], [p["b1"], p["b2"]], p["a"], p["c"], p["d"], p["x"], p["t"], p["q"], ctx.ctrl)


register(
    Identity(
        "thm_main",
        "main expansion of a tilde series over well-poised weights",
        ParamDomain(
            _kinds("a", "c", "d", "x", "t", "a1", "b1", "b2"),
            constraints=(
                below(1, lambda p: p["x"] * p["d"], "|xd| < 1"),
                below(0.9, lambda p: p["x"] * p["t"], "|xt| < 0.9"),
                below(0.9, lambda p: p["t"] / p["a"], "|t/a| < 0.9"),
            ),
            poles=(
                poles(lambda p: [p["b1"], p["b2"], p["x"] * p["d"] * p["q"], p["c"] * p["d"] * p["q"],
                                 p["a"] * p["x"] * p["q"]]),
                poles(lambda p: [p["a"] / p["d"]], m_lo=1),
            ),
        ),
        _thm_main,
        dict(a=0.3, c=0.2, d=0.5, x=0.4, t=0.1, a1=0.25, b1=0.35, b2=-0.45, q=0.5),
        "(r, s) = (1, 2)",
    )
)


def _thm_dlidi(p, ctx):
    return thm_dlidi_sides([p["a1"]], [p["b1"]], p["c"], p["x"], p["t"], p["q"], ctx.ctrl)


register(
    Identity(
        "thm_dlidi",
        "expansion of an r-phi-s series with an argument-coupled parameter c/x",
        ParamDomain(
            _kinds("a1", "b1", "c", "x", "t"),
            constraints=(below(0.9, lambda p: p["x"] * p["t"], "|xt| < 0.9"),),
            poles=(poles(lambda p: [p["b1"], p["x"]]),),
        ),
        _thm_dlidi,
        dict(a1=0.3, b1=0.6, c=0.2, x=0.4, t=0.5, q=0.5),
        "(r, s) = (2, 1)",
    )
)


def _multi_domain(m: int, r: int) -> ParamDomain:
    names = [f"a{i + 1}" for i in range(r)] + [f"b{i + 1}" for i in range(r)]
    for i in range(1, m + 1):
        names += [f"x{i}", f"c{i}", f"d{i}"]
    names.append("t")

    def prod_xt(p):
        v = p["t"]
        for i in range(1, m + 1):
            v = v * p[f"x{i}"]
        return v

    def dens(p):
        q = p["q"]
        out = [p[f"b{i + 1}"] for i in range(r)]
        for i in range(1, m + 1):
            x, c, d = p[f"x{i}"], p[f"c{i}"], p[f"d{i}"]
            out += [x * d * q, c * d * q, x * q]
        return out

    return ParamDomain(
        _kinds(*names),
        constraints=(below(0.9, prod_xt, "|t prod x_i| < 0.9"),),
        poles=(poles(dens), poles(lambda p: [1 / p[f"d{i}"] for i in range(1, m + 1)], m_lo=1)),
    )


def _multi_smoke(m: int, r: int) -> dict:
    p = {"q": 0.5, "t": 0.3}
    vals = [0.3, 0.2, 0.45, -0.35, 0.25, 0.4, -0.2, 0.5, 0.3]
    for i in range(r):
        p[f"a{i + 1}"], p[f"b{i + 1}"] = 0.35 + 0.1 * i, -0.4 + 0.1 * i
    for i in range(1, m + 1):
        p[f"x{i}"], p[f"c{i}"], p[f"d{i}"] = vals[3 * i - 3: 3 * i]
    return p


register(
    Identity(
        "thm_multi_m2",
        "double expansion through composed delta operators",
        _multi_domain(2, 1),
        lambda p, ctx: eval_multi(2, p, ctx.ctrl),
        _multi_smoke(2, 1),
        "m = 2, r = 1",
    )
)

register(
    Identity(
        "thm_multi_m3",
        "triple expansion through composed delta operators",
        _multi_domain(3, 0),
        lambda p, ctx: eval_multi(3, p, ctx.ctrl),
        _multi_smoke(3, 0),
        "m = 3, r = 0",
    )
)


# -------------------------------------------------------------- corollaries


def _carlitz(p, ctx):
    q, a1, b1, x, t = p["q"], p["a1"], p["b1"], p["x"], p["t"]
    lhs = ev(phi([a1, 0], [b1], q, x * t), ctx)

    def term(n):
        inner = phi([Param.qpower(q, -n), a1, 0], [b1, q], q, t * q)
        return _terminating(inner, (-x) ** n / qpoch(x, q, n + 1), n * (n - 1) // 2).value

    return lhs, ser(term, ctx, x)


register(
    Identity(
        "carlitz_gen",
        "generalised Carlitz q-expansion (vanishing c)",
        ParamDomain(
            _kinds("a1", "b1", "x", "t"),
            constraints=(below(0.9, lambda p: p["x"] * p["t"], "|xt| < 0.9"),),
            poles=(poles(lambda p: [p["b1"], p["x"]]),),
        ),
        _carlitz,
        dict(a1=0.3, b1=0.6, x=0.4, t=0.5, q=0.5),
        "(r, s) = (2, 1)",
    )
)


def _r_eq_s(p, ctx):
    q, a1, b1, c, d, x, t = (p[k] for k in ("q", "a1", "b1", "c", "d", "x", "t"))
    lhs = ev(phi_tilde([a1, c * q / x], [b1, x * d * q], q, x * t), ctx)
    base = phi_tilde([a1], [b1], q, t)
    return lhs, _omega_sum(p, ctx, x, c, d, lambda n: apply_delta(DeltaOp(n, c, d), base))


_wp_poles = (
    lambda p: [p["x"] * p["d"] * p["q"], p["c"] * p["d"] * p["q"], p["x"] * p["q"]],
    lambda p: [1 / p["d"]],
)

register(
    Identity(
        "r_eq_s",
        "transformation of a balanced tilde series (r = s)",
        ParamDomain(
            _kinds("a1", "b1", "c", "d", "x", "t"),
            constraints=(below(0.9, lambda p: p["x"] * p["t"], "|xt| < 0.9"),),
            poles=(poles(lambda p: [p["b1"]] + _wp_poles[0](p)), poles(_wp_poles[1], m_lo=1)),
        ),
        _r_eq_s,
        dict(a1=0.3, b1=-0.45, c=0.2, d=0.55, x=0.4, t=0.6, q=0.5),
        "r = 1",
    )
)


def _rp1_phir(p, ctx):
    q, c, d, x, t = (p[k] for k in ("q", "c", "d", "x", "t"))
    A, B = [p["a1"], p["a2"]], [p["b1"]]
    lhs = ev(phi(A + [c * q / x], B + [x * d * q], q, x * t), ctx)
    base = phi(A, B, q, t)
    return lhs, _omega_sum(p, ctx, x, c, d, lambda n: apply_delta(DeltaOp(n, c, d), base))


register(
    Identity(
        "rp1_phir",
        "expansion of an (r+1)-phi-r series",
        ParamDomain(
            _kinds("a1", "a2", "b1", "c", "d", "x", "t"),
            constraints=(below(0.9, lambda p: p["x"] * p["t"], "|xt| < 0.9"),),
            poles=(poles(lambda p: [p["b1"]] + _wp_poles[0](p)), poles(_wp_poles[1], m_lo=1)),
        ),
        _rp1_phir,
        dict(a1=0.3, a2=-0.25, b1=-0.45, c=0.2, d=0.55, x=0.4, t=0.6, q=0.5),
        "r = 2",
    )
)


def _vwp_6w5(p, ctx):
    q, a, b, c, d, x = (p[k] for k in ("q", "a", "b", "c", "d", "x"))
    lhs = ev(vwp_spec(a * b * b * c, [b, a * q / d, b * c / x], q, x * d), ctx)
    rhs = products([a * x * q, b * c * d, b * d * x, a * b * b * c * q], [a * b * x * q, b * b * c * d, d * x, a * b * c * q], q)
    return lhs, rhs


register(
    Identity(
        "vwp_6w5",
        "very-well-poised 6W5 summation recovered from the expansion",
        ParamDomain(
            _kinds("a", "b", "c", "d", "x"),
            poles=(
                poles(lambda p: [p["a"] * p["b"] * p["c"] * p["q"], p["b"] ** 2 * p["c"] * p["d"],
                                 p["a"] * p["b"] * p["x"] * p["q"], p["d"] * p["x"]]),
            ),
        ),
        _vwp_6w5,
        dict(a=0.3, b=0.4, c=-0.5, d=0.6, x=0.35, q=0.5),
    )
)


def _vwp_6w5_coeff(p, ctx):
    q, a, c, d, x, m = (p[k] for k in ("q", "a", "c", "d", "x", "m"))
    a1 = a * c * qpow(q, 2 * m + 2)
    lhs = ev(vwp_spec(a1, [qpow(q, m + 1), a * q / d, c * qpow(q, m + 1) / x], q, x * d), ctx)
    num = qpoch_multi([a * x * q, c * d * qpow(q, m + 1)], q, m + 1)
    den = qpoch_multi([a * c * qpow(q, m + 2), x * d], q, m + 1)
    return lhs, exact(num / den)


register(
    Identity(
        "vwp_6w5_coeff",
        "coefficient-of-t^m form of the 6W5 evaluation",
        ParamDomain(
            {**_kinds("a", "c", "d", "x"), "m": IntRange(0, 4)},
            poles=(poles(lambda p: [p["a"] * p["c"] * p["q"], p["c"] * p["d"] * p["q"], p["a"] * p["x"] * p["q"],
                                    p["x"] * p["d"]]),),
        ),
        _vwp_6w5_coeff,
        dict(a=0.3, c=0.2, d=0.5, x=0.4, m=1, q=0.5),
    )
)


def _wp_bailey(p, ctx):
    q, a1, b1, c, d, x, t = (p[k] for k in ("q", "a1", "b1", "c", "d", "x", "t"))
    T, b = c * d * q, q / d
    alpha = []

    def alpha_upto(n):
        while len(alpha) <= n:
            k = len(alpha)
            if k == 0:
                alpha.append(x * 0 + 1)
            else:
                j = qpow(q, k - 1)
                alpha.append(alpha[-1] * (1 - a1 * j) * (1 - T * j) / ((1 - b1 * j) * (1 - q * j)) * (t / d))
        return alpha

    pref = (1 - T) / ((1 - c * q) * (1 - x * d))

    def lterm(n):
        w = qpoch_multi([c * q / x, q], q, n) / qpoch_multi([x * d * q, T], q, n) * (x * d) ** n
        return pref * w * alpha_upto(n)[n]

    table = BetaTable(T, b, q)

    def rterm(n):
        w = qpoch_multi([c * q / x, q], q, n) / (qpoch(x * q, q, n + 1) * qpoch(c * q, q, n + 1))
        w = w * (1 - c * qpow(q, 2 * n + 2)) * (x * d) ** n
        return w * table.beta(alpha_upto(n), n)

    return ser(lterm, ctx, x), ser(rterm, ctx, x)


register(
    Identity(
        "wp_bailey_lemma",
        "special form of the well-poised Bailey lemma",
        ParamDomain(
            _kinds("a1", "b1", "c", "d", "x", "t"),
            constraints=(below(0.9, lambda p: p["x"] * p["t"], "|xt| < 0.9"),),
            poles=(poles(lambda p: [p["b1"], p["x"] * p["d"] * p["q"], p["c"] * p["d"] * p["q"], p["x"] * p["q"],
                                    p["c"] * p["q"]]),),
        ),
        _wp_bailey,
        dict(a1=0.3, b1=-0.45, c=0.2, d=0.55, x=0.4, t=0.6, q=0.5),
        "r = 1",
    )
)


def _vwp_expand(p, ctx):
    q, c, d, x, t = (p[k] for k in ("q", "c", "d", "x", "t"))
    A = [p["a4"], p["a5"]]
    lhs = ev(vwp_spec(c * d * q, A + [c * q / x], q, x * t), ctx)

    def inner(n):
        return vwp_spec(c * d * q, [Param.qpower(q, -n), c * qpow(q, n + 2)] + A + [c * d * q], q, t)

    return lhs, _omega_sum(p, ctx, x, c, d, inner)


register(
    Identity(
        "vwp_expand",
        "expansion of a very-well-poised (r+1)-phi-r series",
        ParamDomain(
            _kinds("a4", "a5", "c", "d", "x", "t"),
            constraints=(below(0.9, lambda p: p["x"] * p["t"], "|xt| < 0.9"),),
            poles=(
                poles(lambda p: [p["c"] * p["d"] * p["q"] ** 2 / p["a4"], p["c"] * p["d"] * p["q"] ** 2 / p["a5"],
                                 p["d"] * p["x"] * p["q"], p["c"] * p["d"] * p["q"], p["x"] * p["q"]]),
                poles(lambda p: [1 / p["d"]], m_lo=1),
            ),
        ),
        _vwp_expand,
        dict(a4=0.3, a5=-0.45, c=0.2, d=0.55, x=0.4, t=0.6, q=0.5),
        "r = 5",
    )
)


# ------------------------------------------------------------ Askey-Wilson


def _aw(p, ctx):
    pt = AWPoint.from_e(p["e"], p["a"], p["b"], p["c"], p["d"], p["q"])
    return aw_gf_sides(p["x"], pt, ctx.ctrl)


def _aw_poles(p):
    a = p["a"]
    return [a * p["b"], a * p["c"], a * p["d"], p["x"] * p["q"]]


register(
    Identity(
        "aw_gf",
        "generating function for Askey-Wilson polynomials",
        ParamDomain(_kinds("a", "b", "c", "d", "e", "x"), moduli={"e": (0.6, 1.6)}, poles=(poles(_aw_poles),)),
        _aw,
        dict(a=0.3, b=0.4, c=0.2, d=0.5, e=complex(0.5403023058681398, 0.8414709848078965), x=0.3, q=0.5),
        "complex parameters, e = e^{i theta} off the unit circle allowed",
    )
)

register(
    Identity(
        "aw_gf_real",
        "generating function for Askey-Wilson polynomials (real parameters, real theta)",
        ParamDomain(
            {**_kinds("a", "b", "c", "d", "x", kind=REAL), "e": PHASE}, q_kind=REAL, poles=(poles(_aw_poles),)
        ),
        _aw,
        dict(a=0.3, b=0.4, c=0.2, d=0.5, e=complex(0.5403023058681398, 0.8414709848078965), x=0.3, q=0.5),
        "real a, b, c, d, x, q and |e| = 1",
    )
)
