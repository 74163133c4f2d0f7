"""Builtin uniform pro-p group models with chart coordinates and p-valuation.

Three models are provided: abelian(d) = Z_p^d, the Heisenberg group of
unitriangular 3x3 matrices with off-diagonal entries in pZ_p, and the
non-uniform compact model Z_p |x {+-1} whose uniform part is Z_p.  Elements
are identified with their chart coordinates; the group law is evaluated by
closed forms on the coordinates.
"""

from __future__ import annotations

from fractions import Fraction
from math import inf

from .padic import (
    PadicError,
    PadicScalar,
    _check_prime,
    ppow,
    vp_factorial,
)


class ModelError(PadicError):
    pass


class ModelMismatch(ModelError):
    pass


def hyp_slack(p: int, omegas) -> tuple[bool, Fraction | None]:
    """Check omega(h_i) + omega(h_j) > p/(p-1) for all i != j.

    Returns (verdict, minimal slack); slack is None when d < 2 (the
    condition is vacuous).
    """
    omegas = [Fraction(w) for w in omegas]
    threshold = Fraction(p, p - 1)
    slack = None
    for i in range(len(omegas)):
        for j in range(len(omegas)):
            if i == j:
                continue
            s = omegas[i] + omegas[j] - threshold
            if slack is None or s < slack:
                slack = s
    if slack is None:
        return True, None
    return slack > 0, slack


class GroupModel:
    """A concrete group with ordered basis, chart and p-valuation data."""

    def __init__(self, kind: str, p: int, d: int, omegas, prec: int = 12,
                 max_weight=Fraction(12)):
        _check_prime(p)
        if kind not in ("abelian", "heisenberg", "semidirect"):
            raise ModelError(f"unknown model kind {kind!r}")
        self.kind = kind
        self.p = p
        self.d = d
        self.omegas = tuple(Fraction(w) for w in omegas)
        self.prec = prec
        self.max_weight = Fraction(max_weight)
        if any(w <= Fraction(1, p - 1) for w in self.omegas):
            raise ModelError("p-valuation values must exceed 1/(p-1)")
        ok, slack = hyp_slack(p, self.omegas)
        if not ok:
            raise ModelError(f"(HYP) fails: minimal slack {slack}")
        self._hyp = (ok, slack)
        # guard digits so binomial coefficients up to the working weight cap
        # stay correct mod p**prec
        kmax = int(self.max_weight / min(self.omegas))
        self.elem_prec = prec + vp_factorial(kmax, p) + 2
        self._weights_cache: dict[Fraction, Fraction] = {}

    # -- constructors ------------------------------------------------------

    @classmethod
    def abelian(cls, d: int, p: int, **kw) -> "GroupModel":
        return cls("abelian", p, d, [1] * d, **kw)

    @classmethod
    def heisenberg(cls, p: int, **kw) -> "GroupModel":
        return cls("heisenberg", p, 3, [1, 1, 1], **kw)

    @classmethod
    def semidirect(cls, p: int, **kw) -> "GroupModel":
        # the uniform part is Z_p; the sigma coset acts by inversion
        return cls("semidirect", p, 1, [1], **kw)

    @classmethod
    def from_string(cls, spec: str, **kw) -> "GroupModel":
        parts = spec.split(":")
        try:
            if parts[0] == "abelian" and len(parts) == 3:
                return cls.abelian(int(parts[1]), int(parts[2]), **kw)
            if parts[0] == "heisenberg" and len(parts) == 2:
                return cls.heisenberg(int(parts[1]), **kw)
            if parts[0] == "semidirect" and len(parts) == 2:
                return cls.semidirect(int(parts[1]), **kw)
        except (ValueError, ModelError) as exc:
            raise ModelError(f"bad group id {spec!r}: {exc}") from exc
        raise ModelError(f"bad group id {spec!r}")

    @property
    def id(self) -> str:
        if self.kind == "abelian":
            return f"abelian:{self.d}:{self.p}"
        return f"{self.kind}:{self.p}"

    def __repr__(self):
        return f"GroupModel({self.id})"

    def same_as(self, other: "GroupModel") -> bool:
        return (
            self.kind == other.kind
            and self.p == other.p
            and self.d == other.d
            and self.omegas == other.omegas
        )

    def _require_same(self, other: "GroupModel") -> None:
        if not self.same_as(other):
            raise ModelMismatch(f"model mismatch: {self.id} vs {other.id}")

    # -- elements ----------------------------------------------------------

    def element(self, coords) -> "GroupElement":
        """Build an element from chart coordinates (ints, Fractions or scalars)."""
        if len(coords) != self.d:
            raise ModelError(f"expected {self.d} coordinates, got {len(coords)}")
        out = []
        ints = []
        for c in coords:
            if isinstance(c, PadicScalar):
                if c.shift != 0 or c.window < self.prec:
                    raise ModelError("chart coordinates must be integral at full window")
                out.append(c)
                ints = None
            elif isinstance(c, int):
                out.append(PadicScalar.from_int(self.p, c, self.elem_prec))
                if ints is not None:
                    ints.append(c)
            else:
                s = PadicScalar.from_fraction(self.p, c, self.elem_prec)
                if s.shift != 0:
                    raise ModelError("chart coordinates must lie in Z_p")
                out.append(s)
                ints = None
        return GroupElement(self, tuple(out), None if ints is None else tuple(ints))

    def identity(self) -> "GroupElement":
        return self.element([0] * self.d)

    def random_element(self, rng) -> "GroupElement":
        coords = [
            PadicScalar.from_int(self.p, rng.randrange(ppow(self.p, self.elem_prec)), self.elem_prec)
            for _ in range(self.d)
        ]
        return GroupElement(self, tuple(coords), None)

    # -- group law ---------------------------------------------------------

    def gmul(self, g: "GroupElement", h: "GroupElement") -> "GroupElement":
        self._require_same(g.model)
        self._require_same(h.model)
        if self.kind == "heisenberg":
            x1, y1, z1 = g.coords
            x2, y2, z2 = h.coords
            z = z1 + z2 - (x2 * y1).mul_int(self.p)
            coords = (x1 + x2, y1 + y2, z)
            ints = None
            if g.ints is not None and h.ints is not None:
                a1, b1, c1 = g.ints
                a2, b2, c2 = h.ints
                ints = (a1 + a2, b1 + b2, c1 + c2 - self.p * a2 * b1)
            return GroupElement(self, coords, ints)
        coords = tuple(a + b for a, b in zip(g.coords, h.coords))
        ints = None
        if g.ints is not None and h.ints is not None:
            ints = tuple(a + b for a, b in zip(g.ints, h.ints))
        return GroupElement(self, coords, ints)

    def ginv(self, g: "GroupElement") -> "GroupElement":
        self._require_same(g.model)
        if self.kind == "heisenberg":
            x, y, z = g.coords
            coords = (-x, -y, -z - (x * y).mul_int(self.p))
            ints = None
            if g.ints is not None:
                a, b, c = g.ints
                ints = (-a, -b, -c - self.p * a * b)
            return GroupElement(self, coords, ints)
        ints = None if g.ints is None else tuple(-a for a in g.ints)
        return GroupElement(self, tuple(-c for c in g.coords), ints)

    def gpow(self, g: "GroupElement", t) -> "GroupElement":
        """g**t for t in Z_p (closed form on chart coordinates)."""
        from .padic import binom

        self._require_same(g.model)
        if isinstance(t, int):
            ts = PadicScalar.from_int(self.p, t, self.elem_prec)
        else:
            ts = t
            if ts.shift != 0:
                raise ModelError("exponent must lie in Z_p")
        if self.kind == "heisenberg":
            x, y, z = g.coords
            # psi(a,b,c)^t = psi(ta, tb, tc - p*a*b*C(t,2))
            corr = (binom(ts, 2) * x * y).mul_int(self.p)
            coords = (ts * x, ts * y, ts * z - corr)
            ints = None
            if g.ints is not None and isinstance(t, int):
                a, b, c = g.ints
                ints = (t * a, t * b, t * c - self.p * a * b * (t * (t - 1) // 2))
            return GroupElement(self, coords, ints)
        coords = tuple(ts * c for c in g.coords)
        ints = None
        if g.ints is not None and isinstance(t, int):
            ints = tuple(t * a for a in g.ints)
        return GroupElement(self, coords, ints)

    def commutator(self, g: "GroupElement", h: "GroupElement") -> "GroupElement":
        return self.gmul(self.gmul(self.ginv(g), self.ginv(h)), self.gmul(g, h))

    def sigma_conj(self, g: "GroupElement") -> "GroupElement":
        """Conjugation by the order-2 coset representative (semidirect model)."""
        if self.kind != "semidirect":
            raise ModelError("sigma conjugation is defined only on the semidirect model")
        return self.ginv(g)

    # -- valuation data ----------------------------------------------------

    def omega(self, g: "GroupElement"):
        """(value, exact): p-valuation of g; inf for the identity."""
        self._require_same(g.model)
        if g.ints is not None and all(a == 0 for a in g.ints):
            return inf, True
        exact_vals = []
        bound_vals = []
        for w, c in zip(self.omegas, g.coords):
            v = c.valuation
            if v is None:
                bound_vals.append(w + c.window)
            else:
                exact_vals.append(w + v)
        if not exact_vals:
            return min(bound_vals), False
        best = min(exact_vals)
        if bound_vals and min(bound_vals) < best:
            # some coordinate might undercut the best exact term
            return min(bound_vals), False
        return best, True

    def hyp_check(self) -> tuple[bool, Fraction | None]:
        return self._hyp

    # -- weighted degrees --------------------------------------------------

    def tau(self, alpha) -> Fraction:
        return sum((Fraction(a) * w for a, w in zip(alpha, self.omegas)), Fraction(0))

    def weight_above(self, T) -> Fraction:
        """Smallest realizable weighted degree strictly above T."""
        T = Fraction(T)
        if T in self._weights_cache:
            return self._weights_cache[T]
        limit = T + max(self.omegas)
        reachable = {Fraction(0)}
        frontier = [Fraction(0)]
        best = None
        while frontier:
            w0 = frontier.pop()
            for w in self.omegas:
                nxt = w0 + w
                if nxt > limit or nxt in reachable:
                    continue
                reachable.add(nxt)
                if nxt > T:
                    if best is None or nxt < best:
                        best = nxt
                else:
                    frontier.append(nxt)
        if best is None:
            best = limit  # unreachable at desk scale; conservative
        self._weights_cache[T] = best
        return best

    def alpha_iter(self, T):
        """All multi-indices with weighted degree <= T, with their degrees."""
        T = Fraction(T)
        d = self.d

        def rec2(i, prefix, used):
            if i == d:
                yield tuple(prefix), used
                return
            w = self.omegas[i]
            k = 0
            while used + k * w <= T:
                yield from rec2(i + 1, prefix + [k], used + k * w)
                k += 1

        yield from rec2(0, [], Fraction(0))


class GroupElement:
    """Chart coordinates in Z_p^d; the element is its coordinate tuple."""

    __slots__ = ("model", "coords", "ints")

    def __init__(self, model: GroupModel, coords, ints=None):
        self.model = model
        self.coords = coords
        self.ints = ints

    def key(self) -> tuple:
        """Hashable key identifying the coordinate residues."""
        return tuple((c.residue, c.prec) for c in self.coords)

    @property
    def is_identity_in_window(self) -> bool:
        return all(c.residue == 0 for c in self.coords)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        self.model._require_same(other.model)
        return all(a.same_value(b) for a, b in zip(self.coords, other.coords))

    __hash__ = None

    def __repr__(self):
        cs = ", ".join(str(c.residue) for c in self.coords)
        return f"GroupElement({self.model.id}; {cs})"


class MultiIndex:
    """A multi-index with cached weighted degree and total size."""

    __slots__ = ("alpha", "weight", "size")

    def __init__(self, model: GroupModel, alpha):
        self.alpha = tuple(int(a) for a in alpha)
        if len(self.alpha) != model.d or any(a < 0 for a in self.alpha):
            raise ModelError(f"bad multi-index {alpha!r} for d={model.d}")
        self.weight = model.tau(self.alpha)
        self.size = sum(self.alpha)

    def __eq__(self, other):
        if isinstance(other, MultiIndex):
            return self.alpha == other.alpha
        return NotImplemented

    def __hash__(self):
        return hash(self.alpha)

    def __repr__(self):
        return f"MultiIndex{self.alpha}"


# -- alternate ordered bases ------------------------------------------------


def validate_basis(model: GroupModel, basis) -> None:
    """Check that basis is an ordered basis matching the model's omega values.

    Requires omega(b_i) == omega_i exactly and the coordinate matrix of the
    basis to be invertible mod p.
    """
    if len(basis) != model.d:
        raise ModelError(f"expected {model.d} basis elements, got {len(basis)}")
    for i, b in enumerate(basis):
        model._require_same(b.model)
        val, exact = model.omega(b)
        if not exact or val != model.omegas[i]:
            raise ModelError(
                f"basis element {i} has omega {val} (exact={exact}), "
                f"expected {model.omegas[i]}"
            )
    a = _basis_matrix(model, basis, 1)
    if _det_mod(a, model.p) == 0:
        raise ModelError("basis coordinate matrix is singular mod p")


def coords_in_basis(model: GroupModel, basis, g: GroupElement):
    """Chart coordinates of g in the chart of another ordered basis.

    Solves g = b_1^{y_1} ... b_d^{y_d} by a Hensel/Newton iteration on the
    coordinate linearization at the identity.
    """
    W = model.elem_prec
    p, d = model.p, model.d
    m = ppow(p, W)
    a = _basis_matrix(model, basis, W)
    ainv = _matinv_mod(a, p, W)
    y = [0] * d
    for _ in range(W + 4):
        cur = model.identity()
        for j in range(d):
            cur = model.gmul(cur, model.gpow(basis[j], y[j]))
        err = model.gmul(model.ginv(cur), g)
        c = [e.residue % m for e in err.coords]
        if all(x == 0 for x in c):
            break
        for j in range(d):
            y[j] = (y[j] + sum(ainv[j][k] * c[k] for k in range(d))) % m
    else:
        raise ModelError("basis coordinate iteration did not converge")
    return tuple(PadicScalar.from_int(p, yj, model.elem_prec) for yj in y)


def _basis_matrix(model, basis, W):
    m = ppow(model.p, W)
    return [
        [basis[j].coords[i].residue % m for j in range(model.d)]
        for i in range(model.d)
    ]


def _det_mod(a, p):
    n = len(a)
    a = [[x % p for x in row] for row in a]
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] % p != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det = (det * a[col][col]) % p
        inv = pow(a[col][col], -1, p)
        for r in range(col + 1, n):
            f = (a[r][col] * inv) % p
            for cc in range(col, n):
                a[r][cc] = (a[r][cc] - f * a[col][cc]) % p
    return det % p


def _matinv_mod(a, p, W):
    """Inverse of an integer matrix modulo p**W (unit pivots via mod-p choice)."""
    n = len(a)
    m = ppow(p, W)
    a = [[x % m for x in row] for row in a]
    inv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] % p != 0), None)
        if piv is None:
            raise ModelError("matrix not invertible mod p")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            inv[col], inv[piv] = inv[piv], inv[col]
        f = pow(a[col][col], -1, m)
        a[col] = [(x * f) % m for x in a[col]]
        inv[col] = [(x * f) % m for x in inv[col]]
        for r in range(n):
            if r == col:
                continue
            f = a[r][col]
            if f:
                a[r] = [(x - f * y) % m for x, y in zip(a[r], a[col])]
                inv[r] = [(x - f * y) % m for x, y in zip(inv[r], inv[col])]
    return inv
