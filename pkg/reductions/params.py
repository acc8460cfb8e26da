"""Exact parameter arithmetic for both reductions.

Everything is int or Fraction; inequalities with fractional exponents are
raised to integer powers before comparing, and integer roots come from
gmpy2.iroot. Big integers are serialised as decimal strings.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import gmpy2

from utils.errors import InputError

logger = logging.getLogger(__name__)


def exact(x) -> Fraction:
    """Fraction from int, Fraction, or the decimal text of a float (0.9 -> 9/10)."""
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    return Fraction(str(x))


def big_str(x) -> str:
    """Decimal digits of an arbitrarily large integer."""
    return gmpy2.mpz(x).digits(10)


def fraction_str(f: Fraction) -> str:
    if f.denominator == 1:
        return big_str(f.numerator)
    return f"{big_str(f.numerator)}/{big_str(f.denominator)}"


def ceil_root_of_power(base, num, den):
    """ceil(base^(num/den)) for non-negative integer base."""
    root, is_exact = gmpy2.iroot(gmpy2.mpz(base) ** num, den)
    return int(root) if is_exact else int(root) + 1


@dataclass(frozen=True)
class Params32:
    k: int
    s: int
    epsilon: Fraction
    delta: Fraction
    q: int
    d: int
    t: int
    rho_limit: Fraction
    rho_bound: Optional[Fraction] = None
    flags: dict = field(default_factory=dict)

    @property
    def asymptotic_regime(self):
        return all(v for v in self.flags.values() if v is not None)

    @property
    def yes_bound(self):
        return self.d + self.s * self.t

    @property
    def no_bound(self):
        return (Fraction(3, 2) - self.delta) * self.d

    def to_dict(self):
        return {
            "k": self.k,
            "s": self.s,
            "epsilon": str(self.epsilon),
            "delta": str(self.delta),
            "q": big_str(self.q),
            "d": big_str(self.d),
            "t": big_str(self.t),
            "rho_limit": str(self.rho_limit),
            "rho_bound": None if self.rho_bound is None else str(self.rho_bound),
            "yes_bound": big_str(self.yes_bound),
            "no_bound": fraction_str(self.no_bound),
            "flags": dict(self.flags),
            "asymptotic_regime": self.asymptotic_regime,
        }


def derive_params32(k, n=None, epsilon=Fraction(1, 2), delta=Fraction(1, 4), rho_bound=None) -> Params32:
    """s = C(k,2), d = ceil(s/ε)^(2s), t = ceil((1/2 - δ) d^(1 - 1/(2s)))."""
    eps, dlt = exact(epsilon), exact(delta)
    if k < 3:
        raise InputError(f"k must be at least 3, got {k}")
    if not 0 < eps < 1:
        raise InputError(f"epsilon must lie in (0, 1), got {eps}")
    if not 0 < dlt < Fraction(1, 2):
        raise InputError(f"delta must lie in (0, 1/2), got {dlt}")
    s = math.comb(k, 2)
    q = math.ceil(s / eps)
    d = q ** (2 * s)
    # d^(1 - 1/(2s)) = q^(2s - 1)
    t = math.ceil((Fraction(1, 2) - dlt) * q ** (2 * s - 1))
    rho_limit = (Fraction(3, 2) - dlt) / (1 + eps)

    flags = {
        "st_below_eps_d": s * t < eps * d,
        # (1/2 - δ) d / t <= d^(1/(2s)) = q
        "ratio_below_root": (Fraction(1, 2) - dlt) * d <= q * t,
        # (k+1)! < 2δ sqrt(d) - 1 with sqrt(d) = q^s
        "factorial_below_root": math.factorial(k + 1) < 2 * dlt * q ** s - 1,
        "rho_admissible": None,
        "source_d_ok": None,
    }
    rho = None
    if rho_bound is not None:
        rho = exact(rho_bound)
        flags["rho_admissible"] = rho_limit > rho
    if n is not None:
        flags["source_d_ok"] = d <= ceil_root_of_power(n, 6, k + 1)
    params = Params32(k, s, eps, dlt, q, d, t, rho_limit, rho, flags)
    logger.debug(f"Params32 k={k}: d has {len(big_str(d))} digits, t has {len(big_str(t))} digits, flags {flags}")
    return params


@dataclass(frozen=True)
class ParamsMain:
    k: int
    c: int
    delta: int
    s: int
    d_base: int
    d: int
    root: int
    t: int
    adjusted: bool
    conditions: dict = field(default_factory=dict)
    t_bounds: dict = field(default_factory=dict)
    soundness_slack: bool = False

    @property
    def regime_flags(self):
        flags = {f"condition_{k}": v for k, v in self.conditions.items()}
        flags.update({f"t_bound_{k}": v for k, v in self.t_bounds.items()})
        flags["soundness_slack"] = self.soundness_slack
        return flags

    @property
    def completeness_bound(self):
        """1.1 * d^c"""
        return Fraction(11, 10) * self.d ** self.c

    @property
    def soundness_bound(self):
        """c * d^c / 3"""
        return Fraction(self.c * self.d ** self.c, 3)

    @property
    def witness_size(self):
        """d^c + Δ s c t"""
        return self.d ** self.c + self.delta * self.s * self.c * self.t

    def to_dict(self):
        return {
            "k": self.k,
            "c": self.c,
            "delta": self.delta,
            "s": self.s,
            "d_base": big_str(self.d_base),
            "d": big_str(self.d),
            "d_digits": len(big_str(self.d)),
            "root": big_str(self.root),
            "t": big_str(self.t),
            "adjusted": self.adjusted,
            "regime_flags": self.regime_flags,
            "witness_size": big_str(self.witness_size),
            "completeness_bound": fraction_str(self.completeness_bound),
            "soundness_bound": fraction_str(self.soundness_bound),
        }


def derive_params_main(k, c, delta=2) -> ParamsMain:
    """d = (30 c^2 (k+1)^2)^(4k^3 + 3c), t = c d^(c - 1/(2Δs)).

    When d is not a perfect (2Δs)-th power, d is replaced by d^(2Δs) so that t
    is an integer.
    """
    if k < 3:
        raise InputError(f"k must be at least 3, got {k}")
    if c < 1:
        raise InputError(f"c must be positive, got {c}")
    if delta < 1:
        raise InputError(f"Δ must be positive, got {delta}")
    s = math.comb(k, 2)
    e = 2 * delta * s
    d_base = (30 * c * c * (k + 1) ** 2) ** (4 * k ** 3 + 3 * c)
    root, is_exact = gmpy2.iroot(gmpy2.mpz(d_base), e)
    if is_exact:
        d, root, adjusted = d_base, int(root), False
    else:
        d, root, adjusted = d_base ** e, d_base, True
        logger.info(f"d^(1/{e}) is not integral; using d <- d^{e}")
    # d^(c - 1/e) = root^(e c - 1)
    t = c * root ** (e * c - 1)

    D = gmpy2.mpz(d)
    fact = math.factorial(k + 1)
    dc = D ** c
    conditions = {
        # d^(1/2 - 1/(2s)) > c s^c
        "i": D ** (s - 1) > gmpy2.mpz(c * s ** c) ** (2 * s),
        "ii": D > gmpy2.mpz(3 * fact) ** (2 * s),
        "iii": D > gmpy2.mpz(10 * delta * s * c * c) ** e,
    }
    t_bounds = {
        # Δ s c t < d^c / 10
        "a": 10 * delta * s * c * gmpy2.mpz(t) < dc,
        # c d^c / (3t) <= d^(1/(2Δs))
        "b": c * dc <= 3 * gmpy2.mpz(t) * root,
        # (k+1)! < d^(1/(2s)) / 3
        "c": gmpy2.mpz(3 * fact) ** (2 * s) < D,
    }
    # c d^c + c Δ^c s^c d^(c - 1/2 + 1/(2s)) < 2 Δ^c d^c
    slack = 2 * delta ** c - c
    lhs = gmpy2.mpz(c * delta ** c * s ** c) ** (2 * s)
    soundness_slack = slack > 0 and lhs < gmpy2.mpz(slack) ** (2 * s) * D ** (s - 1)
    return ParamsMain(k, c, delta, s, d_base, d, root, t, adjusted, conditions, t_bounds, bool(soundness_slack))


def superconstant_c(k, epsilon):
    """ceil(k^(1 - ε/5))"""
    eps = exact(epsilon)
    if not 0 < eps < 1:
        raise InputError(f"epsilon must lie in (0, 1), got {eps}")
    expo = 1 - eps / 5
    return ceil_root_of_power(k, expo.numerator, expo.denominator)


def derive_params_superconstant(k, epsilon, delta=2) -> ParamsMain:
    return derive_params_main(k, superconstant_c(k, epsilon), delta)
