"""Search for coefficient functions solving the envelope equations of a map.

Order two and three reduce to exact linear algebra: candidate poles of
the coefficient come from the postcritical/critical/pole data of the
map, so the coefficient is an unknown numerator over a fixed denominator
and the functional equation clears to a polynomial identity linear in
the unknown coefficients.  Order one is a divisor-level integer system
for the exponents of the factors of eta, followed by an exact search for
the multiplicative constant.  classify runs all three orders and labels
the map, honestly bounded by the caps.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iter_product
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra.divisor import Divisor, _compose_numerator
from .algebra.linalg import in_span, same_span, solve_affine
from .algebra.poly import Poly, coprime_refine, ord_at_factor, poly_lcm
from .algebra.ratfun import RatFun, ratfun_to_str
from .algebra.scalar import ONE, Scalar
from .dynamics import exceptional_set
from .dynamics import candidate_pole_divisor as _candidate_uncached
from .dynamics import postcritical_closure as _closure_uncached
from .equations import affine_coeff, eq_residual, g1, g2, g3, schwarzian

# classify re-runs the n-range and both linear orders over one map; the
# orbit closure is by far the slowest shared step, so cache it per map.
_candidate_cached = lru_cache(maxsize=256)(_candidate_uncached)
_closure_cached = lru_cache(maxsize=256)(_closure_uncached)

REASON_NOT_PCF = "not PCF within cap"
REASON_DEN_CAP = "denominator cap exceeded"
REASON_NO_SOLUTION = "no solution within caps"


@dataclass(frozen=True)
class SolveCaps:
    """Termination policy: every bound that can affect a verdict.

    extra_num_deg None means "equal to the ansatz denominator degree",
    which is what permits a polynomial part (poles at infinity).
    """
    max_den_deg: int = 24
    extra_num_deg: Optional[int] = None
    pole_mult_g2: int = 1
    pole_mult_g3: int = 2
    n_range: int = 6
    support_cap: int = 64
    iteration_cap: int = 8

    def __post_init__(self):
        if self.max_den_deg < 1 or self.pole_mult_g2 < 1 or self.pole_mult_g3 < 1:
            raise ValueError("caps must be >= 1")
        if self.n_range < 1 or self.support_cap < 1 or self.iteration_cap < 1:
            raise ValueError("caps must be >= 1")
        if self.extra_num_deg is not None and self.extra_num_deg < 0:
            raise ValueError("extra numerator degree must be >= 0")


class SolutionSpace:
    """Affine space of solutions: particular + span(kernel_basis).

    Construction re-verifies every generator against the equation it
    claims to solve, independently of the linear algebra that found it.
    """

    __slots__ = ("particular", "kernel_basis")

    def __init__(self, particular: RatFun, kernel_basis: Sequence[RatFun],
                 check: Optional[Tuple[str, RatFun]] = None):
        self.particular = particular
        self.kernel_basis = tuple(kernel_basis)
        if check is not None:
            kind, r = check
            maker = g2 if kind == "g2" else g3
            _require_zero(eq_residual(maker(particular), r),
                          "particular solution failed re-verification")
            for h in self.kernel_basis:
                _require_zero(eq_residual(maker(particular + h), r),
                              "kernel direction failed re-verification")

    def dimension(self) -> int:
        return len(self.kernel_basis)

    def contains(self, mu: RatFun) -> bool:
        """Exact affine membership: mu - particular in span(kernel_basis)."""
        diff = mu - self.particular
        if diff.is_zero():
            return True
        vecs = _coeff_vectors(list(self.kernel_basis) + [diff])
        return in_span(vecs[:-1], vecs[-1])

    def same_space(self, other: "SolutionSpace") -> bool:
        if self.dimension() != other.dimension():
            return False
        k = len(self.kernel_basis)
        vecs = _coeff_vectors(list(self.kernel_basis) + list(other.kernel_basis))
        if not same_span(vecs[:k], vecs[k:]):
            return False
        return self.contains(other.particular)

    def __repr__(self):
        return (f"SolutionSpace({ratfun_to_str(self.particular)}, "
                f"dim={len(self.kernel_basis)})")


def _coeff_vectors(funs: Sequence[RatFun]) -> List[List[Scalar]]:
    """Numerator coefficient rows over the common denominator."""
    den = Poly.of(1)
    for f in funs:
        den = poly_lcm(den, f.den)
    nums = [f.num * den.exact_div(f.den) for f in funs]
    width = max((len(n.coeffs) for n in nums), default=0)
    return [[n.coeff(i) for i in range(width)] for n in nums]


def _require_zero(res: RatFun, msg: str):
    if res.num.degree() != -1:
        raise ArithmeticError(msg)


# -- orders two and three ---------------------------------------------------------------


def candidate_pole_divisor(r: RatFun, caps: SolveCaps = SolveCaps()
                           ) -> Tuple[Optional[Divisor], bool]:
    """Allowed pole locus for coefficient ansatz; (divisor, overflow)."""
    return _candidate_cached(r, caps.support_cap, caps.iteration_cap)


def solve_g2(r: RatFun, caps: SolveCaps = SolveCaps()
             ) -> Tuple[Optional[SolutionSpace], Optional[str]]:
    """All mu with mu(R) R' + R''/R' - mu = 0 within the ansatz caps."""
    return _solve_linear(r, caps, weight=1)


def solve_g3(r: RatFun, caps: SolveCaps = SolveCaps()
             ) -> Tuple[Optional[SolutionSpace], Optional[str]]:
    """All nu with nu(R) (R')^2 + S(R) - nu = 0 within the ansatz caps."""
    return _solve_linear(r, caps, weight=2)


def _solve_linear(r: RatFun, caps: SolveCaps, weight: int
                  ) -> Tuple[Optional[SolutionSpace], Optional[str]]:
    if r.degree() < 1:
        raise ValueError("needs a nonconstant map")
    cand, overflow = candidate_pole_divisor(r, caps)
    if overflow:
        return None, REASON_NOT_PCF
    mult = caps.pole_mult_g2 if weight == 1 else caps.pole_mult_g3
    dfix = Poly.of(1)
    for f, _ in cand.factors:
        dfix = dfix * f**mult
    ddeg = dfix.degree()
    if ddeg > caps.max_den_deg:
        return None, REASON_DEN_CAP
    extra = caps.extra_num_deg if caps.extra_num_deg is not None else ddeg
    ncoeffs = ddeg + extra + 1

    p, q = r.num, r.den
    rhs_fun = affine_coeff(r) if weight == 1 else schwarzian(r)
    an, ad = rhs_fun.num, rhs_fun.den
    w = p.derivative() * q - p * q.derivative()
    ww = w**weight
    dc = _compose_numerator(dfix, p, q)
    qpow = q ** (ncoeffs - 1 + 2 * weight - ddeg)

    base1 = ww * dfix * ad
    base2 = dc * qpow * ad
    rhs_poly = -(an * dfix * dc * qpow)

    ppow = [Poly.of(1)]
    for _ in range(ncoeffs - 1):
        ppow.append(ppow[-1] * p)
    qpow_desc = [Poly.of(1)]
    for _ in range(ncoeffs - 1):
        qpow_desc.append(qpow_desc[-1] * q)

    cols: List[Poly] = []
    for k in range(ncoeffs):
        t = ppow[k] * qpow_desc[ncoeffs - 1 - k] * base1 - Poly.monomial(k) * base2
        cols.append(t)

    nrows = 1 + max([c.degree() for c in cols] + [rhs_poly.degree(), 0])
    rows = [[cols[k].coeff(i) for k in range(ncoeffs)] for i in range(nrows)]
    rhs = [rhs_poly.coeff(i) for i in range(nrows)]
    particular, kernel = solve_affine(rows, rhs)
    if particular is None:
        return None, REASON_NO_SOLUTION

    mu = RatFun(Poly(particular), dfix)
    basis = [RatFun(Poly(v), dfix) for v in kernel]
    kind = "g2" if weight == 1 else "g3"
    return SolutionSpace(mu, basis, check=(kind, r)), None


# -- order one --------------------------------------------------------------------------


def solve_g1(r: RatFun, n: int, caps: SolveCaps = SolveCaps()
             ) -> Optional[Tuple[RatFun, Scalar]]:
    """eta and constant c with eta(R) (R')^n = c * eta; strict means c = 1.

    The exponents of eta over the candidate factor set solve an integer
    linear system (one row per factor appearing anywhere in the pulled
    back data, plus the degree balance at infinity); the constant search
    then walks the kernel lattice looking for c = 1.  Returns the best
    candidate with its c so near-misses stay visible, or None.
    """
    if n == 0:
        raise ValueError("n must be nonzero")
    if r.degree() < 1:
        raise ValueError("needs a nonconstant map")
    scaffold = _g1_scaffold(r, caps.support_cap, caps.iteration_cap)
    if scaffold is None:
        return None
    rp, unknowns, rows_t, rhs_unit = scaffold

    if not unknowns:
        quotient = rp**n
        if not quotient.is_constant():
            return None
        return RatFun.constant(1), quotient.constant_value()

    rows = [list(row) for row in rows_t]
    rhs = [s * n for s in rhs_unit]
    particular, kernel = solve_affine(rows, rhs)
    if particular is None:
        return None
    kernel_int = [_primitive_int(v) for v in kernel]
    exps = _integral(particular)
    if exps is None:
        exps = _integerize(particular, kernel_int)
        if exps is None:
            return None

    eta = _exp_product(unknowns, exps)
    c = _constant_quotient(eta, r, rp, n)
    if c is None:
        return None
    if c == ONE:
        return eta, c

    # walk the kernel lattice for the strict constant
    kappas = []
    usable = []
    for v in kernel_int:
        eta_k = _exp_product(unknowns, v)
        kq = eta_k.compose(r) / eta_k
        if kq.is_constant():
            usable.append(v)
            kappas.append(kq.constant_value())
    best = (eta, c)
    if usable and len(usable) <= 3:
        for ts in _t_grid(len(usable), 16):
            acc = c
            for t, kappa in zip(ts, kappas):
                acc = acc * kappa**t
            if acc == ONE:
                shifted = list(exps)
                for t, v in zip(ts, usable):
                    shifted = [e + t * ve for e, ve in zip(shifted, v)]
                eta2 = _exp_product(unknowns, shifted)
                c2 = _constant_quotient(eta2, r, rp, n)
                if c2 == ONE:
                    return eta2, c2
    return best


@lru_cache(maxsize=256)
def _g1_scaffold(r: RatFun, support_cap: int, iteration_cap: int):
    """System data shared by every n: matrix rows and the n=1 right side.

    The exponent system is div(eta o R) + n div(R') = div(eta) read off
    factor by factor; rows cover every factor of the coprime refinement
    of the candidate set, its pullback numerators and div(R'), plus one
    degree-balance row for infinity, so any solution automatically has a
    constant quotient eta(R)(R')^n / eta.
    """
    cand, overflow = _candidate_cached(r, support_cap, iteration_cap)
    if overflow:
        return None
    rp = r.derivative()
    q = r.den

    universe = [f for f, _ in cand.factors]
    prod_universe = Poly.of(1)
    for f in universe:
        prod_universe = prod_universe * f
    pieces = list(universe) + [rp.num, rp.den]
    pieces += [_compose_numerator(f, r.num, r.den) for f in universe]
    basis = coprime_refine(pieces)
    unknowns = tuple(
        g for g in basis
        if prod_universe.degree() > 0 and ord_at_factor(prod_universe, g) > 0)
    if not unknowns:
        return rp, (), (), ()

    pull_nums = [_compose_numerator(g, r.num, r.den) for g in unknowns]
    rows: List[Tuple[Scalar, ...]] = []
    rhs_unit: List[Scalar] = []
    for h in basis:
        row = []
        ord_h_q = ord_at_factor(q, h) if q.degree() > 0 else 0
        for g, num_g in zip(unknowns, pull_nums):
            o = ord_at_factor(num_g, h) - g.degree() * ord_h_q
            if h == g:
                o -= 1
            row.append(Scalar(o))
        rows.append(tuple(row))
        ord_rp = ord_at_factor(rp.num, h) - ord_at_factor(rp.den, h)
        rhs_unit.append(Scalar(-ord_rp))
    # degree balance at infinity
    inf_row = tuple(
        Scalar(g.degree() * q.degree() - num_g.degree() + g.degree())
        for g, num_g in zip(unknowns, pull_nums))
    rows.append(inf_row)
    rhs_unit.append(Scalar(-(rp.den.degree() - rp.num.degree())))
    return rp, unknowns, tuple(rows), tuple(rhs_unit)


def _exp_product(factors: Sequence[Poly], exps: Sequence[int]) -> RatFun:
    out = RatFun.constant(1)
    for g, e in zip(factors, exps):
        if e:
            out = out * RatFun(g)**e
    return out


def _constant_quotient(eta: RatFun, r: RatFun, rp: RatFun, n: int) -> Optional[Scalar]:
    quotient = eta.compose(r) * rp**n / eta
    if not quotient.is_constant():
        return None
    return quotient.constant_value()


def _integral(vec) -> Optional[List[int]]:
    out = []
    for s in vec:
        if s.b != 0 or s.a.denominator != 1:
            return None
        out.append(int(s.a))
    return out


def _primitive_int(vec) -> List[int]:
    from math import gcd
    den = 1
    for s in vec:
        den = den * s.a.denominator // gcd(den, s.a.denominator)
    ints = [int(s.a * den) for s in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def _integerize(particular, kernel_int) -> Optional[List[int]]:
    if not kernel_int or len(kernel_int) > 3:
        return None
    base = [s.a for s in particular]
    for ts in _t_grid(len(kernel_int), 16):
        cand = list(base)
        for t, v in zip(ts, kernel_int):
            cand = [c + t * ve for c, ve in zip(cand, v)]
        if all(c.denominator == 1 for c in cand):
            return [int(c) for c in cand]
    return None


def _t_grid(dim: int, bound: int):
    grid = sorted(iter_product(range(-bound, bound + 1), repeat=dim),
                  key=lambda ts: (max(abs(t) for t in ts), ts))
    return grid


# -- classification ---------------------------------------------------------------------


@dataclass(frozen=True)
class ClassificationReport:
    map: RatFun
    degree: int
    g1: Optional[Tuple[int, RatFun]]
    g2: Optional[SolutionSpace]
    g2_reason: Optional[str]
    g3: Optional[SolutionSpace]
    g3_reason: Optional[str]
    verdict: str
    minimal_order: Optional[int]
    family_guess: str
    evidence: Dict[str, str]
    caps: SolveCaps


def classify(r: RatFun, caps: SolveCaps = SolveCaps()) -> ClassificationReport:
    """Scan orders one to three and report the lowest strict equation.

    The verdict is "nontrivial" with the minimal order, or
    "trivial-within-caps" when nothing was found; the latter is a bounded
    search result, never a proof of triviality.
    """
    if r.degree() < 1:
        raise ValueError("needs a nonconstant map")
    evidence: Dict[str, str] = {}

    g1_hit: Optional[Tuple[int, RatFun]] = None
    for n in _n_values(caps.n_range):
        out = solve_g1(r, n, caps)
        if out is None:
            continue
        eta, c = out
        if c == ONE:
            _require_zero(eq_residual(g1(n, eta), r),
                          "order-1 result failed re-verification")
            g1_hit = (n, eta)
            break
        if "g1_near_miss" not in evidence:
            evidence["g1_near_miss"] = (
                f"n={n}: eta={ratfun_to_str(eta)}, c={c}")

    g2_space, g2_reason = solve_g2(r, caps)
    g3_space, g3_reason = solve_g3(r, caps)

    if g1_hit:
        minimal: Optional[int] = 1
    elif g2_space is not None:
        minimal = 2
    elif g3_space is not None:
        minimal = 3
    else:
        minimal = None
    verdict = "nontrivial" if minimal is not None else "trivial-within-caps"

    guess = "none"
    if r.degree() >= 2:
        exc = exceptional_set(r)
        e_size = exc.support_degree()
        evidence["exceptional_set"] = str(exc)
        pc, pc_overflow, _ = _closure_cached(
            r, caps.support_cap, caps.iteration_cap)
        if pc_overflow:
            evidence["postcritical"] = "overflow"
        else:
            pc_size = pc.support_degree()
            evidence["postcritical"] = str(pc)
            if e_size == 2:
                guess = "monomial-like"
            elif e_size == 1 and pc_size <= 3:
                guess = "chebyshev-like"
            elif e_size == 0 and pc_size == 4:
                guess = "lattes-like"

    return ClassificationReport(
        map=r, degree=r.degree(), g1=g1_hit,
        g2=g2_space, g2_reason=g2_reason,
        g3=g3_space, g3_reason=g3_reason,
        verdict=verdict, minimal_order=minimal,
        family_guess=guess, evidence=evidence, caps=caps)


def _n_values(n_range: int):
    for a in range(1, n_range + 1):
        yield a
        yield -a
