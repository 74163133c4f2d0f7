"""Text serialization: scalars as `v:m:N`, norm values as `p^q`, distribution
and Mahler-table files with one term per line.  Round trips are bit-exact on
the canonical forms."""

from __future__ import annotations

from fractions import Fraction
from math import inf

from .padic import NormValue, PadicError, PadicScalar, ppow, vp_int
from .groupmodel import GroupModel
from .distalg import Distribution, TailCert
from .mahler import MahlerTable


class ParseError(PadicError):
    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column


# -- scalars ----------------------------------------------------------------


def format_scalar(c: PadicScalar) -> str:
    """Canonical `v:m:N` with value p^v * m known mod p^N."""
    c = c.canonical()
    if c.residue == 0:
        return f"{c.window}:0:{c.window}"
    k = vp_int(c.residue, c.p)
    v = k - c.shift
    m = (c.residue // ppow(c.p, k)) % ppow(c.p, c.prec - k)
    return f"{v}:{m}:{c.window}"


def parse_scalar(p: int, text: str, line=None) -> PadicScalar:
    parts = text.strip().split(":")
    if len(parts) != 3:
        raise ParseError(f"scalar literal must be v:m:N, got {text!r}", line)
    try:
        v, m, n = (int(x) for x in parts)
    except ValueError:
        raise ParseError(f"non-integer field in scalar literal {text!r}", line) from None
    if n < 1:
        raise ParseError(f"scalar window must be >= 1 in {text!r}", line)
    if m == 0:
        if v != n:
            raise ParseError(f"zero scalar must read N:0:N, got {text!r}", line)
        return PadicScalar.zero(p, n)
    if m % p == 0:
        raise ParseError(f"cofactor must be a unit in {text!r}", line)
    if v >= n:
        raise ParseError(f"valuation {v} outside window {n} in {text!r}", line)
    if v >= 0:
        return PadicScalar(p, n, m * ppow(p, v), 0)
    return PadicScalar(p, n - v, m, -v)


# -- norm values ------------------------------------------------------------


def format_normvalue(b: NormValue) -> str:
    if b.is_zero:
        return "0"
    if b.is_unbounded:
        return "unbounded"
    return f"p^{-b.exponent}"


def parse_normvalue(text: str, line=None) -> NormValue:
    text = text.strip()
    if text == "0":
        return NormValue.zero()
    if text == "unbounded":
        return NormValue.unbounded()
    if not text.startswith("p^"):
        raise ParseError(f"bad norm value {text!r}", line)
    try:
        q = Fraction(text[2:])
    except ValueError:
        raise ParseError(f"bad norm value exponent in {text!r}", line) from None
    return NormValue(-q, exact=False)


# -- distributions ----------------------------------------------------------


def serialize_distribution(d: Distribution) -> str:
    model = d.model
    T = Fraction(d.T)
    if d.exact:
        tail = "0"
    else:
        b = d.tail_bound_at_growth(0)
        tail = "unbounded" if b is None else format_normvalue(b)
    head = (
        f"group={model.id} p={model.p} N={model.prec} "
        f"T={T.numerator}/{T.denominator} tail={tail} exact={1 if d.exact else 0}"
    )
    if not d.head_error.is_zero:
        head += f" err={format_normvalue(d.head_error)}"
    lines = [head]
    for alpha in sorted(d.coeffs):
        lines.append(
            ",".join(str(a) for a in alpha) + " : " + format_scalar(d.coeffs[alpha])
        )
    return "\n".join(lines) + "\n"


def _parse_header(line):
    fields = {}
    for i, tok in enumerate(line.split()):
        if "=" not in tok:
            raise ParseError(f"bad header token {tok!r}", 1, i)
        k, v = tok.split("=", 1)
        fields[k] = v
    return fields


def parse_distribution(text: str) -> Distribution:
    lines = [ln for ln in text.splitlines()]
    if not lines or not lines[0].strip():
        raise ParseError("empty distribution file", 1)
    h = _parse_header(lines[0])
    for need in ("group", "p", "N", "T", "tail", "exact"):
        if need not in h:
            raise ParseError(f"missing header field {need!r}", 1)
    try:
        p = int(h["p"])
        prec = int(h["N"])
        num, den = h["T"].split("/")
        T = Fraction(int(num), int(den))
        exact = {"0": False, "1": True}[h["exact"]]
    except (ValueError, KeyError):
        raise ParseError("malformed header numbers", 1) from None
    from .groupmodel import ModelError

    try:
        model = GroupModel.from_string(h["group"], prec=prec, max_weight=max(T, 12))
    except ModelError as exc:
        raise ParseError(str(exc), 1) from None
    if model.p != p:
        raise ParseError(f"header p={p} contradicts group id {h['group']}", 1)
    coeffs = {}
    for ln_no, ln in enumerate(lines[1:], start=2):
        if not ln.strip():
            continue
        if ":" not in ln:
            raise ParseError("term line must read a1,...,ad : v:m:N", ln_no)
        left, _, right = ln.partition(":")
        try:
            alpha = tuple(int(x) for x in left.strip().split(","))
        except ValueError:
            raise ParseError(f"bad multi-index {left.strip()!r}", ln_no) from None
        if len(alpha) != model.d or any(a < 0 for a in alpha):
            raise ParseError(f"multi-index {alpha} invalid for d={model.d}", ln_no)
        if alpha in coeffs:
            raise ParseError(f"duplicate index {alpha}", ln_no)
        coeffs[alpha] = parse_scalar(p, right, ln_no)
    certs = ()
    if not exact:
        tail = parse_normvalue(h["tail"], 1)
        if not tail.is_unbounded:
            certs = (TailCert(tail, Fraction(0)),)
    herr = parse_normvalue(h["err"], 1) if "err" in h else None
    try:
        return Distribution(model, coeffs, T, tail_certs=certs, exact=exact,
                            head_error=herr)
    except PadicError as exc:
        raise ParseError(str(exc), 1) from None


# -- Mahler tables ----------------------------------------------------------


def serialize_mahler(t: MahlerTable) -> str:
    if t.decay is None:
        decay = "none"
    else:
        C, g = t.decay
        decay = f"{format_normvalue(C)}@{g}"
    head = (
        f"mahler p={t.p} d={t.d} N={t.prec} A={t.cap} "
        f"decay={decay} complete={1 if t.complete else 0}"
    )
    lines = [head]
    for alpha in sorted(t.coeffs):
        lines.append(
            ",".join(str(a) for a in alpha) + " : " + format_scalar(t.coeffs[alpha])
        )
    return "\n".join(lines) + "\n"


def parse_mahler(text: str) -> MahlerTable:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("mahler "):
        raise ParseError("not a Mahler table file", 1)
    h = _parse_header(lines[0][len("mahler "):])
    try:
        p = int(h["p"])
        d = int(h["d"])
        prec = int(h["N"])
        cap = int(h["A"])
        complete = {"0": False, "1": True}[h["complete"]]
    except (ValueError, KeyError):
        raise ParseError("malformed Mahler header", 1) from None
    decay = None
    if h.get("decay", "none") != "none":
        c_text, _, g_text = h["decay"].partition("@")
        decay = (parse_normvalue(c_text, 1), Fraction(g_text))
    coeffs = {}
    for ln_no, ln in enumerate(lines[1:], start=2):
        if not ln.strip():
            continue
        left, _, right = ln.partition(":")
        try:
            alpha = tuple(int(x) for x in left.strip().split(","))
        except ValueError:
            raise ParseError(f"bad multi-index {left.strip()!r}", ln_no) from None
        if len(alpha) != d:
            raise ParseError(f"multi-index {alpha} invalid for d={d}", ln_no)
        coeffs[alpha] = parse_scalar(p, right, ln_no)
    return MahlerTable(d, p, prec, cap, coeffs, decay=decay, complete=complete)
