"""Mahler transforms on Z_p^d, decay reports, the pairing with distributions,
and finite-level projection to group algebras of the quotients G/G_n.

Functions enter only as builtin FunctionSpecs with exact integer/rational
evaluators, so every Mahler table is reproducible and every pairing carries
a certified error bound.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct
from math import comb

from .padic import NormValue, PadicError, PadicScalar, ppow
from .groupmodel import GroupModel, ModelError
from .distalg import DistError, Distribution


class MahlerError(PadicError):
    pass


def int_binom(m: int, k: int) -> int:
    """C(m, k) for any integer m, natural k (exact)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if m >= 0:
        return comb(m, k)
    return (-1) ** k * comb(k - m - 1, k)


class FunctionSpec:
    """A builtin continuous function on Z_p^d with an exact evaluator."""

    __slots__ = ("kind", "d", "p", "params")

    KINDS = ("constant", "coordinate", "monomial", "power_series_1p", "indicator")

    def __init__(self, kind, d, p, **params):
        if kind not in self.KINDS:
            raise MahlerError(f"unknown builtin function {kind!r}")
        self.kind = kind
        self.d = d
        self.p = p
        self.params = params

    @classmethod
    def constant(cls, d, p, value=1):
        return cls("constant", d, p, value=int(value))

    @classmethod
    def coordinate(cls, d, p, i):
        if not 0 <= i < d:
            raise MahlerError(f"coordinate index {i} out of range")
        return cls("coordinate", d, p, i=i)

    @classmethod
    def monomial(cls, d, p, alpha):
        alpha = tuple(int(a) for a in alpha)
        if len(alpha) != d or any(a < 0 for a in alpha):
            raise MahlerError(f"bad monomial exponent {alpha}")
        return cls("monomial", d, p, alpha=alpha)

    @classmethod
    def power_series_1p(cls, d, p, i):
        if not 0 <= i < d:
            raise MahlerError(f"coordinate index {i} out of range")
        return cls("power_series_1p", d, p, i=i)

    @classmethod
    def indicator(cls, d, p, a, n):
        a = tuple(int(x) for x in a)
        if len(a) != d or n < 1:
            raise MahlerError("indicator needs d residues and level n >= 1")
        m = ppow(p, n)
        return cls("indicator", d, p, a=tuple(x % m for x in a), n=n)

    @classmethod
    def parse(cls, d, p, text: str) -> "FunctionSpec":
        parts = text.split(":")
        try:
            if parts[0] == "constant":
                return cls.constant(d, p, int(parts[1]) if len(parts) > 1 else 1)
            if parts[0] == "coordinate":
                return cls.coordinate(d, p, int(parts[1]))
            if parts[0] == "monomial":
                return cls.monomial(d, p, [int(x) for x in parts[1].split(",")])
            if parts[0] == "power1p":
                return cls.power_series_1p(d, p, int(parts[1]))
            if parts[0] == "indicator":
                return cls.indicator(d, p, [int(x) for x in parts[1].split(",")],
                                     int(parts[2]))
        except (IndexError, ValueError) as exc:
            raise MahlerError(f"bad function id {text!r}: {exc}") from exc
        raise MahlerError(f"bad function id {text!r}")

    @property
    def id(self) -> str:
        k, pr = self.kind, self.params
        if k == "constant":
            return f"constant:{pr['value']}"
        if k == "coordinate":
            return f"coordinate:{pr['i']}"
        if k == "monomial":
            return "monomial:" + ",".join(str(a) for a in pr["alpha"])
        if k == "power_series_1p":
            return f"power1p:{pr['i']}"
        return "indicator:" + ",".join(str(x) for x in pr["a"]) + f":{pr['n']}"

    def evaluate(self, point) -> Fraction:
        """Exact value at an integer lattice point."""
        point = tuple(int(x) for x in point)
        if len(point) != self.d:
            raise MahlerError(f"expected {self.d} coordinates")
        k, pr = self.kind, self.params
        if k == "constant":
            return Fraction(pr["value"])
        if k == "coordinate":
            return Fraction(point[pr["i"]])
        if k == "monomial":
            v = 1
            for x, a in zip(point, pr["alpha"]):
                v *= x ** a
            return Fraction(v)
        if k == "power_series_1p":
            x = point[pr["i"]]
            base = 1 + self.p
            return Fraction(base ** x) if x >= 0 else Fraction(1, base ** (-x))
        m = ppow(self.p, pr["n"])
        hit = all((x - a) % m == 0 for x, a in zip(point, pr["a"]))
        return Fraction(1 if hit else 0)

    def poly_degree(self):
        """Total degree when the function is polynomial, else None."""
        if self.kind == "constant":
            return 0
        if self.kind == "coordinate":
            return 1
        if self.kind == "monomial":
            return sum(self.params["alpha"])
        return None

    def decay_certificate(self):
        """(C, t) with |c_alpha| <= C * p^(-t |alpha|), when known analytically."""
        if self.kind == "power_series_1p":
            return NormValue.one(), Fraction(1)
        return None

    def __repr__(self):
        return f"FunctionSpec({self.id}, d={self.d}, p={self.p})"


class MahlerTable:
    """Finite differences c_alpha of a builtin function, |alpha| <= cap."""

    __slots__ = ("d", "p", "prec", "cap", "coeffs", "decay", "complete", "source")

    def __init__(self, d, p, prec, cap, coeffs, decay=None, complete=False,
                 source=None):
        self.d = d
        self.p = p
        self.prec = prec
        self.cap = cap
        self.coeffs = dict(coeffs)
        self.decay = decay
        self.complete = bool(complete)
        self.source = source

    def coeff(self, alpha) -> PadicScalar:
        c = self.coeffs.get(tuple(int(a) for a in alpha))
        if c is None:
            return PadicScalar.zero(self.p, self.prec)
        return c

    def sup_bound(self) -> NormValue:
        """Certified bound on sup |c_alpha| over ALL alpha."""
        best = NormValue.zero()
        for c in self.coeffs.values():
            best = max(best, c.abs_val())
        if not self.complete:
            if self.decay is not None:
                best = max(best, self.decay[0])
            else:
                # builtin functions are Z_p-valued, so |c_alpha| <= 1
                best = max(best, NormValue(0, exact=False))
        if not best.exact:
            best = NormValue(best.exponent, exact=False)
        return best

    def missing_bound(self, alpha) -> NormValue:
        """Bound on |c_alpha| for an unstored index."""
        if self.complete:
            return NormValue.zero()
        k = sum(alpha)
        if self.decay is not None:
            C, t = self.decay
            return C * NormValue(t * k)
        return NormValue(0, exact=False)

    def evaluate(self, point) -> Fraction:
        """sum c_alpha C(point, alpha) over the stored head, as an exact check
        value mod p^prec (returned as a PadicScalar)."""
        point = tuple(int(x) for x in point)
        total = PadicScalar.zero(self.p, self.prec)
        for alpha, c in self.coeffs.items():
            w = 1
            for m, k in zip(point, alpha):
                w *= int_binom(m, k)
            total = total + c.mul_int(w)
        return total

    def __repr__(self):
        return f"MahlerTable(d={self.d}, p={self.p}, cap={self.cap}, terms={len(self.coeffs)})"


def mahler_coeffs(f: FunctionSpec, A: int, prec: int = 12) -> MahlerTable:
    """c_alpha = sum_{beta <= alpha} (-1)^{|alpha - beta|} C(alpha, beta) f(beta)
    for all |alpha| <= A."""
    if A < 0:
        raise MahlerError("cap must be >= 0")
    values = {}

    def fval(beta):
        if beta not in values:
            values[beta] = f.evaluate(beta)
        return values[beta]

    coeffs = {}
    for alpha in _simplex(f.d, A):
        total = Fraction(0)
        sa = sum(alpha)
        for beta in iproduct(*(range(a + 1) for a in alpha)):
            w = 1
            for a, b in zip(alpha, beta):
                w *= comb(a, b)
            total += (-1) ** (sa - sum(beta)) * w * fval(beta)
        if total:
            coeffs[alpha] = PadicScalar.from_fraction(f.p, total, prec)
    deg = f.poly_degree()
    complete = deg is not None and A >= deg
    return MahlerTable(f.d, f.p, prec, A, coeffs,
                       decay=f.decay_certificate(), complete=complete, source=f)


def _simplex(d, A):
    def rec(i, prefix, left):
        if i == d:
            yield tuple(prefix)
            return
        for k in range(left + 1):
            yield from rec(i + 1, prefix + [k], left - k)

    yield from rec(0, [], A)


def amice_report(table: MahlerTable, rho_exponents):
    """For each u (rho = p^u), the row max_{|alpha|=k} |c_alpha| rho^k and a
    non-increasing verdict on the tail half of the rows."""
    rows_v = {}
    for alpha, c in table.coeffs.items():
        k = sum(alpha)
        a = c.abs_val()
        if k not in rows_v or a > rows_v[k]:
            rows_v[k] = a
    out = []
    for u in rho_exponents:
        u = Fraction(u)
        if u <= 0:
            raise MahlerError("Amice radii must satisfy rho > 1 (u > 0)")
        rows = []
        for k in range(table.cap + 1):
            base = rows_v.get(k, NormValue.zero())
            rows.append(base * NormValue(-u * k))
        half = rows[table.cap // 2:]
        verdict = all(half[i + 1] <= half[i] for i in range(len(half) - 1))
        out.append({"u": u, "rows": rows, "tail_nonincreasing": verdict})
    return out


def pair(lam: Distribution, table: MahlerTable):
    """(value, error): sum of d_alpha c_alpha over the shared head, with a
    certified bound on everything not summed."""
    model = lam.model
    if model.d != table.d or model.p != table.p:
        raise MahlerError("dimension/prime mismatch between distribution and table")
    if any(w != 1 for w in model.omegas):
        raise MahlerError("pairing requires omega == 1 on all generators")
    if not lam.exact and table.decay is None and not table.complete:
        raise MahlerError("unbounded tail: no decay certificate and the "
                        "distribution is inexact")
    total = PadicScalar.zero(model.p, min(model.elem_prec, table.prec))
    errors = [NormValue.zero()]
    for alpha, dcoef in lam.coeffs.items():
        c = table.coeffs.get(alpha)
        if c is not None:
            total = total + dcoef * c
        else:
            errors.append(dcoef.abs_val() * table.missing_bound(alpha))
    if not lam.head_error.is_zero:
        errors.append(lam.head_error * table.sup_bound())
    if not lam.exact:
        # table entries reachable only through the distribution's tail
        for alpha, c in table.coeffs.items():
            k = sum(alpha)
            if k > lam.T or alpha in lam.coeffs:
                continue
            b = _lam_tail_bound_at(lam, k)
            errors.append(b * c.abs_val())
        if not table.complete:
            C_t, t_t = table.decay
            k0 = max(model.weight_above(lam.T), Fraction(table.cap + 1))
            best = None
            for cert in lam.tail_certs:
                if t_t >= cert.growth:
                    cand = cert.bound * C_t * NormValue((t_t - cert.growth) * k0)
                    if best is None or cand < best:
                        best = cand
            errors.append(NormValue.unbounded() if best is None else best)
    err = max(errors)
    if not err.is_zero and not err.exact:
        err = NormValue(err.exponent, exact=False)
    return total, err


def _lam_tail_bound_at(lam, k):
    best = None
    for cert in lam.tail_certs:
        cand = cert.bound * NormValue(-cert.growth * k)
        if best is None or cand < best:
            best = cand
    return NormValue.unbounded() if best is None else best


class GroupAlgebraElement:
    """Element of K[G/G_n]: coefficients on coordinate residues mod p^n."""

    __slots__ = ("model", "n", "coeffs")

    def __init__(self, model: GroupModel, n: int, coeffs):
        if n < 1:
            raise MahlerError("level must be >= 1")
        self.model = model
        self.n = n
        m = ppow(model.p, n)
        clean = {}
        for key, c in coeffs.items():
            key = tuple(int(x) % m for x in key)
            if key in clean:
                clean[key] = clean[key] + c
            else:
                clean[key] = c
        self.coeffs = {k: c for k, c in clean.items() if c.residue != 0}

    def coeff(self, key) -> PadicScalar:
        m = ppow(self.model.p, self.n)
        c = self.coeffs.get(tuple(int(x) % m for x in key))
        if c is None:
            return PadicScalar.zero(self.model.p, self.model.elem_prec)
        return c

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return GroupAlgebraElement(self.model, self.n, out)

    def __mul__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        self._check(other)
        out = {}
        for k1, c1 in self.coeffs.items():
            g1 = self.model.element(list(k1))
            for k2, c2 in other.coeffs.items():
                g2 = self.model.element(list(k2))
                k = self.model.gmul(g1, g2).ints
                k = tuple(k)
                c = c1 * c2
                out[k] = out[k] + c if k in out else c
        return GroupAlgebraElement(self.model, self.n, out)

    def _check(self, other):
        self.model._require_same(other.model)
        if self.n != other.n:
            raise MahlerError("mixed quotient levels")

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        self._check(other)
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coeff(k).same_value(other.coeff(k)) for k in keys)

    __hash__ = None

    def __repr__(self):
        return f"GroupAlgebraElement(level {self.n}, {len(self.coeffs)} cosets)"


def finite_level_project(lam: Distribution, n: int) -> GroupAlgebraElement:
    """sum a_j [g_j mod G_n] from the Dirac witness of lam."""
    terms = lam._exact_terms()
    if terms is None:
        raise MahlerError("finite-level projection needs an exact Dirac witness")
    m = ppow(lam.model.p, n)
    coeffs = {}
    for a, g in terms:
        if g.ints is not None:
            key = tuple(x % m for x in g.ints)
        else:
            key = tuple(c.residue % m for c in g.coords)
        coeffs[key] = coeffs[key] + a if key in coeffs else a
    return GroupAlgebraElement(lam.model, n, coeffs)


def pair_with_indicator_crosscheck(lam: Distribution, a, n: int, A=None):
    """Compare the Mahler pairing against indicator(a, n) with the coset
    coefficient in the level-n projection; returns "true", "false" or
    "inconclusive"."""
    model = lam.model
    if A is None:
        A = 3 * model.p
    f = FunctionSpec.indicator(model.d, model.p, a, n)
    value, err = pair(lam, mahler_coeffs(f, A, prec=model.elem_prec))
    proj = finite_level_project(lam, n)
    expected = proj.coeff(a)
    diff = value - expected
    if diff.residue == 0:
        return "true"
    dv = diff.abs_val()
    if dv > err:
        return "false"
    return "true" if err < NormValue(0) else "inconclusive"
