"""The distribution algebra of a builtin group model.

A distribution is held as a finite coefficient table over the monomials
b^alpha = (h_1-1)^a1 ... (h_d-1)^ad up to a weighted-degree cutoff T,
together with certified bounds on everything that is not stored: a list of
tail certificates (C, t) asserting |d_alpha| <= C * p^(t * tau(alpha)) for
every unstored alpha, and a per-entry error bound on the stored head.

Multiplication decomposes heads into finite Dirac combinations, multiplies
the supports with the group law, and re-expands; no precision is lost on
exact inputs.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, inf
from typing import NamedTuple

from .padic import (
    NormValue,
    PadicError,
    PadicScalar,
    binom,
    ppow,
    vp_int,
)
from .groupmodel import GroupElement, GroupModel, ModelError, ModelMismatch


class DistError(PadicError):
    pass


class RadiusParam:
    """A radius r = p^(-s) with exact rational 0 < s <= 1."""

    __slots__ = ("s",)

    def __init__(self, s):
        s = Fraction(s)
        if not (0 < s <= 1):
            raise ValueError(f"radius exponent s must satisfy 0 < s <= 1, got {s}")
        object.__setattr__(self, "s", s)

    def __setattr__(self, *a):
        raise AttributeError("RadiusParam is immutable")

    @classmethod
    def parse(cls, text: str) -> "RadiusParam":
        return cls(Fraction(text))

    def __eq__(self, other):
        return isinstance(other, RadiusParam) and self.s == other.s

    def __hash__(self):
        return hash(("RadiusParam", self.s))

    def __repr__(self):
        return f"RadiusParam(s={self.s})"

    def __str__(self):
        return f"p^-{self.s}"


class TailCert(NamedTuple):
    """|d_alpha| <= bound * p^(growth * tau(alpha)) for every unstored alpha;
    with all_alpha set, for every alpha including the stored head."""

    bound: NormValue
    growth: Fraction
    all_alpha: bool = False


class NormInterval(NamedTuple):
    lower: NormValue
    upper: NormValue

    @property
    def collapsed(self) -> bool:
        return self.lower == self.upper

    def __str__(self):
        return f"{self.lower} .. {self.upper}"


def _zero_scalar(model: GroupModel) -> PadicScalar:
    return PadicScalar.zero(model.p, model.elem_prec)


def _one_scalar(model: GroupModel) -> PadicScalar:
    return PadicScalar.one(model.p, model.elem_prec)


def _as_scalar(model: GroupModel, c) -> PadicScalar:
    if isinstance(c, PadicScalar):
        return c
    return PadicScalar.from_fraction(model.p, Fraction(c), model.elem_prec)


class Distribution:
    """lambda = sum d_alpha b^alpha, stored up to weighted degree T."""

    __slots__ = ("model", "coeffs", "T", "tail_certs", "exact", "head_error",
                 "dirac_terms")

    def __init__(self, model, coeffs, T, tail_certs=(), exact=False,
                 head_error=None, dirac_terms=None):
        self.model = model
        self.T = Fraction(T)
        if self.T < 0:
            raise DistError("truncation weight T must be >= 0")
        self.coeffs = dict(coeffs)
        for alpha in self.coeffs:
            if model.tau(alpha) > self.T:
                raise DistError(f"stored index {alpha} exceeds truncation weight {self.T}")
        self.tail_certs = tuple(tail_certs)
        self.exact = bool(exact)
        if self.exact and self.tail_certs:
            raise DistError("exact distributions carry no tail certificates")
        self.head_error = NormValue.zero() if head_error is None else head_error
        self.dirac_terms = None if dirac_terms is None else tuple(dirac_terms)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero_dist(cls, model, T=None) -> "Distribution":
        T = model.max_weight if T is None else T
        return cls(model, {}, T, exact=True)

    @classmethod
    def one(cls, model, T=None) -> "Distribution":
        return cls.monomial(model, (0,) * model.d, T)

    @classmethod
    def monomial(cls, model, alpha, T=None) -> "Distribution":
        T = model.max_weight if T is None else Fraction(T)
        alpha = tuple(int(a) for a in alpha)
        if model.tau(alpha) > T:
            raise DistError(f"monomial weight {model.tau(alpha)} exceeds T={T}")
        return cls(model, {alpha: _one_scalar(model)}, T, exact=True)

    @classmethod
    def dirac(cls, g: GroupElement, T=None) -> "Distribution":
        return cls.dirac_combination(g.model, [(1, g)], T)

    @classmethod
    def dirac_combination(cls, model, terms, T=None) -> "Distribution":
        """sum a_j delta_{g_j}; the term list is retained as an exact witness."""
        T = model.max_weight if T is None else Fraction(T)
        terms = [(_as_scalar(model, a), g) for a, g in terms]
        for _, g in terms:
            model._require_same(g.model)
        merged = _merge_terms(model, terms)
        coeffs = _expand_terms(model, merged, T)
        finite = all(
            g.ints is not None
            and all(x >= 0 for x in g.ints)
            and model.tau(g.ints) <= T
            for _, g in merged
        )
        if finite:
            coeffs = {a: c for a, c in coeffs.items() if c.residue != 0}
            return cls(model, coeffs, T, exact=True, dirac_terms=merged)
        bound = NormValue.zero()
        for a, _ in merged:
            up = a.abs_val()
            if not up.exact:
                up = NormValue(up.exponent, exact=False)
            bound = max(bound, up)
        certs = (TailCert(bound, Fraction(0), all_alpha=True),)
        return cls(model, coeffs, T, tail_certs=certs, dirac_terms=merged)

    @classmethod
    def from_coeffs(cls, model, table, T, exact=True, tail_certs=(),
                    head_error=None) -> "Distribution":
        """Build from an explicit coefficient table (exact by default)."""
        coeffs = {}
        for alpha, c in table.items():
            c = _as_scalar(model, c)
            if exact and c.residue == 0:
                continue
            coeffs[tuple(int(a) for a in alpha)] = c
        return cls(model, coeffs, T, tail_certs=tail_certs, exact=exact,
                   head_error=head_error)

    # -- bookkeeping -------------------------------------------------------

    def coeff(self, alpha) -> PadicScalar:
        alpha = tuple(int(a) for a in alpha)
        c = self.coeffs.get(alpha)
        if c is None:
            return _zero_scalar(self.model)
        return c

    def tail_bound_at_growth(self, t, all_alpha=False) -> NormValue | None:
        """Best certified uniform bound C with |d_alpha| <= C p^(t tau) off the head."""
        if self.exact:
            return NormValue.zero()
        t = Fraction(t)
        best = None
        for c in self.tail_certs:
            if all_alpha and not c.all_alpha:
                continue
            if c.growth <= t and (best is None or c.bound < best):
                best = c.bound
        return best

    def _cert_bound_at(self, tau, s) -> NormValue | None:
        """Best all-alpha certificate bound on |d_alpha| r^(s tau) at one index."""
        best = None
        for c in self.tail_certs:
            if not c.all_alpha:
                continue
            cand = c.bound * NormValue((s - c.growth) * tau)
            if best is None or cand < best:
                best = cand
        return best

    def coeff_sup(self) -> NormValue | None:
        """Certified upper bound on sup_alpha |d_alpha| (head and tail)."""
        tail = self.tail_bound_at_growth(0)
        if tail is None:
            return None
        best = tail
        for c in self.coeffs.values():
            v = c.valuation
            up = NormValue(v) if v is not None else NormValue(c.window, exact=False)
            up = max(up, self.head_error)
            if up > best:
                best = up
        return best

    def is_integral(self) -> bool:
        tail = self.tail_bound_at_growth(0)
        if tail is None or tail.exponent < 0:
            return False
        return all(c.is_integral for c in self.coeffs.values()) and \
            self.head_error.exponent >= 0

    def _exact_terms(self):
        """An exact Dirac-combination representation, or None."""
        if self.dirac_terms is not None:
            return self.dirac_terms
        if self.exact:
            terms = _head_to_dirac(self.model, self.coeffs)
            self.dirac_terms = terms
            return terms
        return None

    def _terms_for_head(self):
        return _head_to_dirac(self.model, self.coeffs)

    # -- linear structure --------------------------------------------------

    def scale(self, c) -> "Distribution":
        c = _as_scalar(self.model, c)
        cup = c.abs_val()
        coeffs = {a: c * v for a, v in self.coeffs.items()}
        if self.exact:
            coeffs = {a: v for a, v in coeffs.items() if v.residue != 0}
        certs = tuple(TailCert(tc.bound * cup, tc.growth, tc.all_alpha)
                      for tc in self.tail_certs)
        terms = None
        if self.dirac_terms is not None:
            terms = tuple((c * a, g) for a, g in self.dirac_terms)
        return Distribution(self.model, coeffs, self.T, certs, self.exact,
                            self.head_error * cup, terms)

    def __neg__(self) -> "Distribution":
        return self.scale(-1)

    def __add__(self, other: "Distribution") -> "Distribution":
        self.model._require_same(other.model)
        T = min(self.T, other.T)
        keys = {a for a in self.coeffs if self.model.tau(a) <= T}
        keys |= {a for a in other.coeffs if self.model.tau(a) <= T}
        coeffs = {}
        for a in keys:
            coeffs[a] = self.coeff(a) + other.coeff(a)
        exact = self.exact and other.exact
        if exact:
            coeffs = {a: c for a, c in coeffs.items() if c.residue != 0}
        herr = max(self.head_error, other.head_error)
        for left, right in ((self, other), (other, self)):
            if not right.exact and any(a not in right.coeffs for a in left.coeffs):
                b = right.tail_bound_at_growth(0)
                herr = max(herr, NormValue.unbounded() if b is None else b)
        certs = []
        if not exact:
            growths = sorted({tc.growth for tc in self.tail_certs + other.tail_certs})
            if not growths:
                growths = [Fraction(0)]
            for t in growths:
                a = self.tail_bound_at_growth(t)
                b = other.tail_bound_at_growth(t)
                if a is None or b is None:
                    continue
                aa = self.tail_bound_at_growth(t, all_alpha=True)
                bb = other.tail_bound_at_growth(t, all_alpha=True)
                if aa is not None and bb is not None:
                    certs.append(TailCert(max(aa, bb), t, all_alpha=True))
                certs.append(TailCert(max(a, b), t))
        terms = None
        if self.dirac_terms is not None and other.dirac_terms is not None:
            terms = _merge_terms(self.model, list(self.dirac_terms) + list(other.dirac_terms))
        elif exact:
            terms = None  # recomputed lazily from the head
        return Distribution(self.model, coeffs, T, tuple(certs), exact, herr, terms)

    def __sub__(self, other: "Distribution") -> "Distribution":
        return self + (-other)

    # -- multiplication ----------------------------------------------------

    def mul(self, other: "Distribution", T=None, s_work=None) -> "Distribution":
        """Noncommutative convolution via Dirac decomposition of the heads.

        ``s_work`` attaches an extra tail certificate at growth s_work from
        the product of the factors' norm upper bounds at r = p^(-s_work).
        """
        self.model._require_same(other.model)
        model = self.model
        T = min(self.T, other.T) if T is None else Fraction(T)
        if T < 0:
            raise DistError("output truncation weight is negative")
        t1 = self._exact_terms()
        t2 = other._exact_terms()
        exact_path = t1 is not None and t2 is not None
        if t1 is None:
            t1 = self._terms_for_head()
        if t2 is None:
            t2 = other._terms_for_head()
        prods = []
        for a, g in t1:
            for b, h in t2:
                prods.append((a * b, model.gmul(g, h)))
        merged = _merge_terms(model, prods)
        coeffs = _expand_terms(model, merged, T)

        sup1 = self.coeff_sup()
        sup2 = other.coeff_sup()
        finite = exact_path and all(
            g.ints is not None
            and all(x >= 0 for x in g.ints)
            and model.tau(g.ints) <= T
            for _, g in merged
        )
        if finite:
            coeffs = {a: c for a, c in coeffs.items() if c.residue != 0}
            return Distribution(model, coeffs, T, exact=True,
                                dirac_terms=merged if exact_path else None)
        certs = []
        if sup1 is not None and sup2 is not None:
            certs.append(TailCert(sup1 * sup2, Fraction(0), all_alpha=True))
        if s_work is not None:
            works = [s_work] if isinstance(s_work, (int, Fraction, str)) else list(s_work)
            for s in works:
                s = Fraction(s)
                r = RadiusParam(s)
                u1 = self.norm(r).upper
                u2 = other.norm(r).upper
                if not (u1.is_unbounded or u2.is_unbounded):
                    certs.append(TailCert(u1 * u2, s, all_alpha=True))
        if exact_path:
            herr = NormValue.zero()
        else:
            c1 = self.tail_bound_at_growth(0)
            c2 = other.tail_bound_at_growth(0)
            if None in (c1, c2, sup1, sup2):
                herr = NormValue.unbounded()
            else:
                herr = max(c1 * sup2, c2 * sup1)
        return Distribution(model, coeffs, T, tuple(certs),
                            head_error=herr,
                            dirac_terms=merged if exact_path else None)

    def __mul__(self, other: "Distribution") -> "Distribution":
        return self.mul(other)

    # -- norms -------------------------------------------------------------

    def norm(self, r: RadiusParam) -> NormInterval:
        """The interval certified to contain sup_alpha |d_alpha| r^tau(alpha)."""
        s = r.s
        model = self.model
        lower = NormValue.zero()
        uppers = []
        for alpha, c in self.coeffs.items():
            tau = model.tau(alpha)
            v = c.valuation
            if v is not None and self.head_error < NormValue(v):
                lower = max(lower, NormValue(v + s * tau))
                uppers.append(NormValue(v + s * tau))
                continue
            mag = NormValue(v) if v is not None else NormValue(c.window, exact=False)
            up = max(mag, self.head_error) * NormValue(s * tau)
            cb = self._cert_bound_at(tau, s)
            if cb is not None and cb < up:
                up = cb
            uppers.append(up)
        tail = self._tail_norm_bound(s)
        if tail is not None:
            uppers.append(tail)
        elif not self.exact:
            uppers.append(NormValue.unbounded())
        upper = lower
        for u in uppers:
            if u > upper:
                upper = u
        if upper > lower and not upper.exact:
            upper = NormValue(upper.exponent, exact=False)
        return NormInterval(lower, upper)

    def _tail_norm_bound(self, s: Fraction) -> NormValue | None:
        if self.exact:
            return NormValue.zero()
        tplus = self.model.weight_above(self.T)
        best = None
        for cert in self.tail_certs:
            C, t = cert.bound, cert.growth
            if s > t:
                cand = NormValue(C.exponent + (s - t) * tplus, C.exact)
            elif s == t:
                cand = C
            else:
                continue
            if best is None or cand < best:
                best = cand
        return best

    # -- symbols -----------------------------------------------------------

    def principal_symbol(self, r: RadiusParam):
        """Leading coset in the associated graded ring; (GradedPoly, degree).

        Requires 1/p < r < 1, i.e. s < 1, and enough stored precision that
        the head minimum beats every uncertainty floor.
        """
        from .graded import GradedAmbient, GradedPoly

        s = r.s
        if s >= 1:
            raise ValueError("principal symbols require 1/p < r < 1 (s < 1)")
        model = self.model
        best = None
        arg = []
        for alpha, c in self.coeffs.items():
            v = c.valuation
            if v is None:
                continue
            deg = v + s * model.tau(alpha)
            if best is None or deg < best:
                best = deg
                arg = [(alpha, c, v)]
            elif deg == best:
                arg.append((alpha, c, v))
        if best is None:
            raise DistError("zero (or valuation-indeterminate) distribution has no symbol")
        # every unknown must be certified strictly above the head minimum
        floors = []
        for alpha, c in self.coeffs.items():
            if c.valuation is None:
                floors.append(c.window + s * model.tau(alpha))
        tail = self._tail_norm_bound(s)
        if tail is None:
            floors.append(-inf)
        elif not tail.is_zero:
            floors.append(tail.exponent)
        if not self.head_error.is_zero:
            floors.append(self.head_error.exponent)
        if any(f <= best for f in floors):
            raise DistError(
                "insufficient truncation/precision for the principal symbol; "
                "increase T or the scalar window"
            )
        ambient = GradedAmbient(model.p, model.d, model.omegas, s)
        terms = {}
        for alpha, c, v in arg:
            terms[alpha + (v,)] = c.unit_part_mod_p()
        return GradedPoly(ambient, terms), best

    # -- basis change and conjugation -------------------------------------

    def change_basis(self, basis, T=None) -> "Distribution":
        """Re-expand in the monomials of another ordered basis of equal omega."""
        from .groupmodel import coords_in_basis, validate_basis

        model = self.model
        validate_basis(model, basis)
        T = self.T if T is None else Fraction(T)
        terms = self._exact_terms()
        if terms is None:
            terms = self._terms_for_head()
            herr = self.tail_bound_at_growth(0)
            herr = NormValue.unbounded() if herr is None else herr
        else:
            herr = NormValue.zero()
        coord_cache = {}

        def coords_of(g):
            k = g.key()
            if k not in coord_cache:
                coord_cache[k] = coords_in_basis(model, basis, g)
            return coord_cache[k]

        coeffs = _expand_terms(model, terms, T, coords_of)
        bound = _terms_coeff_bound(terms)
        sup = self.coeff_sup()
        if sup is not None and sup > bound:
            bound = sup
        return Distribution(model, coeffs, T,
                            tail_certs=(TailCert(bound, Fraction(0), all_alpha=True),),
                            head_error=herr)

    def conjugate(self, g, T=None) -> "Distribution":
        """Image under delta_h -> delta_{g h g^-1} (g a GroupElement or "sigma")."""
        model = self.model
        T = self.T if T is None else Fraction(T)
        if g == "sigma":
            act = model.sigma_conj
        elif isinstance(g, GroupElement):
            model._require_same(g.model)
            ginv = model.ginv(g)
            act = lambda h: model.gmul(model.gmul(g, h), ginv)
        else:
            raise DistError(f"undefined conjugation action {g!r}")
        terms = self._exact_terms()
        if terms is not None:
            mapped = [(a, act(h)) for a, h in terms]
            out = Distribution.dirac_combination(model, mapped, T)
            return out
        mapped = [(a, act(h)) for a, h in self._terms_for_head()]
        merged = _merge_terms(model, mapped)
        coeffs = _expand_terms(model, merged, T)
        bound = _terms_coeff_bound(merged)
        sup = self.coeff_sup()
        herr = self.tail_bound_at_growth(0)
        if sup is None or herr is None:
            herr = NormValue.unbounded()
            certs = ()
        else:
            bound = max(bound, sup)
            certs = (TailCert(bound, Fraction(0), all_alpha=True),)
        return Distribution(model, coeffs, T, tail_certs=certs, head_error=herr)

    # -- radius threshold --------------------------------------------------

    def r_threshold(self) -> RadiusParam:
        """Smallest p^Q radius past which unit-head filtration membership lifts.

        Requires an exact, integral distribution with at least one unit
        coefficient.
        """
        if not self.exact:
            raise DistError("radius threshold requires an exact distribution")
        if not self.is_integral():
            raise DistError("radius threshold requires an integral distribution")
        model = self.model
        unit_taus = [model.tau(a) for a, c in self.coeffs.items() if c.valuation == 0]
        if not unit_taus:
            raise DistError("no unit coefficient: the reduction mod p vanishes")
        tau_beta = min(unit_taus)
        s = Fraction(1)
        for alpha, c in self.coeffs.items():
            tau = model.tau(alpha)
            if tau < tau_beta:
                v = c.valuation
                s = min(s, Fraction(v) / (tau_beta - tau))
        return RadiusParam(s)


# -- free functions ---------------------------------------------------------


def structure_constants(model: GroupModel, beta, gamma, T):
    """Table {alpha: c} of b^beta b^gamma = sum c b^alpha up to weight T,
    with the per-entry verdict of v_p(c) >= max(0, tau(beta)+tau(gamma)-tau(alpha))."""
    T = Fraction(T)
    beta = tuple(int(b) for b in beta)
    gamma = tuple(int(g) for g in gamma)
    big = max(T, model.tau(beta), model.tau(gamma))
    prod = Distribution.monomial(model, beta, big).mul(
        Distribution.monomial(model, gamma, big), T=T
    )
    bound_base = model.tau(beta) + model.tau(gamma)
    verdicts = {}
    for alpha, c in prod.coeffs.items():
        v = c.valuation
        if v is None:
            continue
        need = max(Fraction(0), bound_base - model.tau(alpha))
        verdicts[alpha] = Fraction(v) >= need
    return prod.coeffs, verdicts


def lie_generator(model: GroupModel, i: int, T=None) -> Distribution:
    """log(1 + b_i) truncated at weight T, with a certified growing tail."""
    T = model.max_weight if T is None else Fraction(T)
    w = model.omegas[i]
    if T < w:
        raise DistError("truncation weight below the generator's weight")
    K = int(T / w)
    coeffs = {}
    p = model.p
    for k in range(1, K + 1):
        alpha = tuple(k if j == i else 0 for j in range(model.d))
        coeffs[alpha] = PadicScalar.from_fraction(
            p, Fraction((-1) ** (k + 1), k), model.elem_prec
        )
    # |1/k| = p^(v_p(k)) <= p^(t * k * w) for all k > K with t from the first
    # prime power past the truncation
    j = 1
    while ppow(p, j) <= K:
        j += 1
    t = Fraction(j, ppow(p, j)) / w
    return Distribution(model, coeffs, T,
                        tail_certs=(TailCert(NormValue.one(), t),))


def q_norm(pair, r: RadiusParam) -> NormInterval:
    """max of the component norms of mu = lambda_1 + lambda_2 delta_sigma."""
    lam1, lam2 = pair
    if lam1.model.kind != "semidirect":
        raise ModelMismatch("q-norm is defined on the semidirect model")
    lam1.model._require_same(lam2.model)
    n1 = lam1.norm(r)
    n2 = lam2.norm(r)
    return NormInterval(max(n1.lower, n2.lower), max(n1.upper, n2.upper))


def semidirect_mul(pair1, pair2, T=None, s_work=None):
    """(a + b ds)(c + e ds) = (ac + b s(e)) + (a e + b s(c)) ds, with s(x) the
    sigma conjugate and ds^2 = 1."""
    a, b = pair1
    c, e = pair2
    if a.model.kind != "semidirect":
        raise ModelMismatch("semidirect product requires the semidirect model")
    sc = c.conjugate("sigma")
    se = e.conjugate("sigma")
    first = a.mul(c, T=T, s_work=s_work) + b.mul(se, T=T, s_work=s_work)
    second = a.mul(e, T=T, s_work=s_work) + b.mul(sc, T=T, s_work=s_work)
    return first, second


# -- internals --------------------------------------------------------------


def _merge_terms(model, terms):
    """Combine Dirac terms with identical support coordinates."""
    out = {}
    elems = {}
    for a, g in terms:
        k = g.key()
        if k in out:
            out[k] = out[k] + a
            if elems[k].ints is None and g.ints is not None:
                elems[k] = g
        else:
            out[k] = a
            elems[k] = g
    return tuple(
        (a, elems[k]) for k, a in out.items() if a.residue != 0 or a.shift > 0
    )


def _head_to_dirac(model, coeffs):
    """Exact Dirac decomposition of a finite b-polynomial:
    b^beta = sum_{k <= beta} (-1)^{|beta - k|} C(beta, k) delta_{psi(k)}."""
    acc = {}
    elems = {}

    def visit(kappa, weight):
        key = tuple(kappa)
        if key not in elems:
            elems[key] = model.element(list(key))
        return elems[key]

    for beta, c in coeffs.items():
        size_beta = sum(beta)
        # iterate kappa <= beta componentwise
        ranges = [range(b + 1) for b in beta]

        def rec(i, kappa, csign):
            if i == model.d:
                g = visit(kappa, None)
                key = tuple(kappa)
                term = c.mul_int(csign)
                if key in acc:
                    acc[key] = acc[key] + term
                else:
                    acc[key] = term
                return
            for k in ranges[i]:
                rec(i + 1, kappa + [k], csign * comb(beta[i], k) * (-1) ** (beta[i] - k))

        rec(0, [], 1)
    return tuple(
        (a, elems[k]) for k, a in acc.items() if a.residue != 0 or a.shift > 0
    )


def _expand_terms(model, terms, T, coords_of=None):
    """Coefficient table of sum a_j delta_{g_j} up to weight T.

    ``coords_of`` maps a support element to the chart coordinates used for
    the binomial expansion (defaults to the element's own coordinates)."""
    T = Fraction(T)
    out = {}
    d = model.d
    for a, g in terms:
        coords = g.coords if coords_of is None else coords_of(g)
        rows = []
        for i in range(d):
            kmax = int(T / model.omegas[i])
            if coords_of is None and g.ints is not None and g.ints[i] >= 0:
                # binom(x, k) vanishes exactly for integer x < k
                kmax = min(kmax, g.ints[i])
            rows.append([binom(coords[i], k) for k in range(kmax + 1)])

        def rec(i, alpha, used, prod):
            if i == d:
                key = tuple(alpha)
                if key in out:
                    out[key] = out[key] + prod
                else:
                    out[key] = prod
                return
            w = model.omegas[i]
            k = 0
            while used + k * w <= T and k < len(rows[i]):
                rec(i + 1, alpha + [k], used + k * w, prod * rows[i][k])
                k += 1

        rec(0, [], Fraction(0), a)
    return out


def _terms_coeff_bound(terms) -> NormValue:
    """Uniform bound on expansion coefficients of a Dirac combination."""
    bound = NormValue.zero()
    for a, _ in terms:
        up = a.abs_val()
        if up > bound:
            bound = up
    if not bound.exact:
        bound = NormValue(bound.exponent, exact=False)
    return bound
