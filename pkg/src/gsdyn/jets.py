"""Jets (truncated derivative sequences), partitions, Faa di Bruno composition.

A jet carries f^(n)(center) for n = 0..N as (sign, log-magnitude) pairs,
plus an exact Fraction track when the underlying data is rational.  The
production composition path substitutes Taylor series (quadratic cost); the
multiplicity-partition sum is kept as an independent oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import logspace as ls
from .errors import DomainError, ResourceLimitError
from .logspace import SLog, ZERO
from .polynomials import Polynomial

JET_ORDER_CAP = 512
PARTITION_CAP = 60

_RENORM = 1e250
_LOG_RENORM = math.log(_RENORM)


# --------------------------------------------------------------------------
# multiplicity partitions
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class MultiplicityPartition:
    """(k_1, ..., k_j) with sum of ell * k_ell = j."""

    j: int
    k: Tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.k)


def multiplicity_partitions(j: int) -> List[MultiplicityPartition]:
    """All of I_j in lexicographic order on the multiplicity vector."""
    if j < 1:
        raise DomainError("multiplicity partitions need j >= 1, got %r" % (j,))
    if j > PARTITION_CAP:
        raise ResourceLimitError(
            "partition enumeration capped at j = %d (got %d)" % (PARTITION_CAP, j)
        )
    out: List[MultiplicityPartition] = []
    k = [0] * j

    def rec(pos: int, remaining: int) -> None:
        if remaining == 0:
            out.append(MultiplicityPartition(j, tuple(k)))
            return
        if pos > j:
            return
        for v in range(remaining // pos + 1):
            k[pos - 1] = v
            rec(pos + 1, remaining - pos * v)
        k[pos - 1] = 0

    rec(1, j)
    out.sort(key=lambda mp: mp.k)
    return out


def faa_di_bruno_identity_sum(j: int) -> int:
    """Exact big-integer sum over I_j of (k_1+...+k_j)! / (k_1! ... k_j!)."""
    total = 0
    for mp in multiplicity_partitions(j):
        term = math.factorial(mp.total)
        for kl in mp.k:
            term //= math.factorial(kl)
        total += term
    return total


# --------------------------------------------------------------------------
# jets
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Jet:
    center: float
    signs: Tuple[int, ...]
    logs: Tuple[float, ...]
    exact: Optional[Tuple[Fraction, ...]] = None

    @property
    def order(self) -> int:
        return len(self.signs) - 1

    def entry(self, n: int) -> SLog:
        return (self.signs[n], self.logs[n])

    def value(self, n: int) -> float:
        return ls.slog_to_float(self.entry(n))

    @staticmethod
    def from_exact(center, values: Sequence[Fraction]) -> "Jet":
        vals = tuple(Fraction(v) for v in values)
        entries = [ls.slog_of_fraction(v) for v in vals]
        return Jet(
            center=float(center),
            signs=tuple(e[0] for e in entries),
            logs=tuple(e[1] for e in entries),
            exact=vals,
        )

    @staticmethod
    def from_floats(center: float, values: Sequence[float]) -> "Jet":
        entries = [ls.slog_of_float(v) for v in values]
        return Jet(
            center=center,
            signs=tuple(e[0] for e in entries),
            logs=tuple(e[1] for e in entries),
        )

    @staticmethod
    def from_slogs(center: float, entries: Sequence[SLog]) -> "Jet":
        return Jet(
            center=center,
            signs=tuple(e[0] for e in entries),
            logs=tuple(e[1] for e in entries),
        )


def jet_of_polynomial(psi: Polynomial, x0, order: int) -> Jet:
    """Exact jet of a polynomial at a rational point."""
    vals = psi.derivatives_at(x0, order)
    return Jet.from_exact(Fraction(x0) if not isinstance(x0, Fraction) else x0, vals)


# --------------------------------------------------------------------------
# composition
# --------------------------------------------------------------------------


def _taylor_slogs(jet: Jet, order: int) -> List[SLog]:
    out = []
    for n in range(order + 1):
        s, l = jet.entry(n)
        out.append((s, l - math.lgamma(n + 1)) if s != 0 else ZERO)
    return out


def _slog_series_mul(a: List[SLog], b: List[SLog], order: int) -> List[SLog]:
    buckets: List[List[SLog]] = [[] for _ in range(order + 1)]
    for i, ai in enumerate(a):
        if ai[0] == 0:
            continue
        for j, bj in enumerate(b):
            if i + j > order:
                break
            if bj[0] == 0:
                continue
            buckets[i + j].append(ls.slog_mul(ai, bj))
    return [ls.slog_sum(ts) for ts in buckets]


def _compose_slog(f_taylor: List[SLog], p_taylor: List[SLog], order: int) -> List[SLog]:
    """Taylor series of f o p where p has zero constant term; Horner in f."""
    acc = [f_taylor[order]] + [ZERO] * order
    for k in range(order - 1, -1, -1):
        acc = _slog_series_mul(acc, p_taylor, order)
        acc[0] = ls.slog_sum([acc[0], f_taylor[k]])
    return acc


def _compose_exact(f_t: List[Fraction], p_t: List[Fraction], order: int) -> List[Fraction]:
    acc = [f_t[order]] + [Fraction(0)] * order
    for k in range(order - 1, -1, -1):
        nxt = [Fraction(0)] * (order + 1)
        for i, ai in enumerate(acc):
            if ai == 0:
                continue
            for j, bj in enumerate(p_t):
                if i + j > order:
                    break
                nxt[i + j] += ai * bj
        nxt[0] += f_t[k]
        acc = nxt
    return acc


def compose_jet(f: Jet, psi: Jet, order: int) -> Jet:
    """Jet of f o psi at psi's center; f must be centered at psi(center)."""
    if f.order < order or psi.order < order:
        raise DomainError(
            "compose_jet needs both jets to carry order >= %d" % (order,)
        )
    if f.exact is not None and psi.exact is not None:
        if Fraction(f.center) != psi.exact[0]:
            raise DomainError("outer jet is not centered at psi(center)")
        f_t = [f.exact[n] / math.factorial(n) for n in range(order + 1)]
        p_t = [psi.exact[n] / math.factorial(n) for n in range(order + 1)]
        p_t[0] = Fraction(0)
        c = _compose_exact(f_t, p_t, order)
        return Jet.from_exact(psi.center, [c[n] * math.factorial(n) for n in range(order + 1)])
    f_t = _taylor_slogs(f, order)
    p_t = _taylor_slogs(psi, order)
    p_t[0] = ZERO
    c = _compose_slog(f_t, p_t, order)
    entries = [
        (c[n][0], c[n][1] + math.lgamma(n + 1)) if c[n][0] != 0 else ZERO
        for n in range(order + 1)
    ]
    return Jet.from_slogs(psi.center, entries)


def compose_jet_partitions(f: Jet, psi: Jet, order: int) -> Jet:
    """Oracle path: the explicit Faa di Bruno partition sum, term by term."""
    if f.order < order or psi.order < order:
        raise DomainError("compose_jet needs both jets to carry order >= %d" % (order,))
    exact = f.exact is not None and psi.exact is not None
    if exact:
        out_exact: List[Fraction] = [f.exact[0]]
        for j in range(1, order + 1):
            total = Fraction(0)
            for mp in multiplicity_partitions(j):
                coeff = Fraction(math.factorial(j))
                for ell, kl in enumerate(mp.k, start=1):
                    coeff /= math.factorial(kl) * math.factorial(ell) ** kl
                term = coeff * f.exact[mp.total]
                for ell, kl in enumerate(mp.k, start=1):
                    if kl:
                        term *= psi.exact[ell] ** kl
                total += term
            out_exact.append(total)
        return Jet.from_exact(psi.center, out_exact)
    entries: List[SLog] = [f.entry(0)]
    for j in range(1, order + 1):
        terms: List[SLog] = []
        for mp in multiplicity_partitions(j):
            coeff = Fraction(math.factorial(j))
            for ell, kl in enumerate(mp.k, start=1):
                coeff /= math.factorial(kl) * math.factorial(ell) ** kl
            t = ls.slog_mul(ls.slog_of_fraction(coeff), f.entry(mp.total))
            for ell, kl in enumerate(mp.k, start=1):
                if kl:
                    t = ls.slog_mul(t, ls.slog_pow(psi.entry(ell), kl))
            terms.append(t)
        entries.append(ls.slog_sum(terms))
    return Jet.from_slogs(psi.center, entries)


# --------------------------------------------------------------------------
# function models
# --------------------------------------------------------------------------


class FunctionModel:
    """A function with computable jets at (in general) arbitrary real points."""

    def jet(self, x: float, order: int) -> Jet:
        raise NotImplementedError

    def grid_jets(self, xs: np.ndarray, order: int) -> Tuple[np.ndarray, np.ndarray]:
        """(signs, logs) arrays of shape (order+1, len(xs))."""
        raise NotImplementedError

    def spec(self) -> str:
        raise NotImplementedError


def _check_order(order: int) -> None:
    if order < 0:
        raise DomainError("jet order must be >= 0")
    if order > JET_ORDER_CAP:
        raise ResourceLimitError("jet order capped at %d (got %d)" % (JET_ORDER_CAP, order))


def _gaussian_grid(scale: float, xs: np.ndarray, order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Derivatives of exp(-(scale x)^2) via the Hermite three-term recurrence."""
    u = scale * xs
    n_pts = xs.shape[0]
    signs = np.zeros((order + 1, n_pts), dtype=np.int8)
    logs = np.full((order + 1, n_pts), ls.NEG_INF)
    base = -u * u
    log_scale = math.log(scale)
    signs[0] = 1
    logs[0] = base
    if order == 0:
        return signs, logs
    h_prev = np.ones(n_pts)
    h = 2.0 * u
    off = np.zeros(n_pts)
    for n in range(1, order + 1):
        nz = h != 0.0
        signs[n, nz] = (np.sign(h[nz]) * (-1) ** n).astype(np.int8)
        with np.errstate(divide="ignore"):
            logs[n, nz] = n * log_scale + np.log(np.abs(h[nz])) + off[nz] + base[nz]
        h_prev, h = h, 2.0 * u * h - 2.0 * n * h_prev
        big = np.abs(h) > _RENORM
        if big.any():
            h[big] /= _RENORM
            h_prev[big] /= _RENORM
            off[big] += _LOG_RENORM
    return signs, logs


@dataclass(frozen=True)
class Gaussian(FunctionModel):
    """f(x) = exp(-(scale x)^2)."""

    scale: float = 1.0

    def __post_init__(self):
        if not self.scale > 0:
            raise DomainError("Gaussian scale must be > 0")

    def jet(self, x: float, order: int) -> Jet:
        _check_order(order)
        signs, logs = _gaussian_grid(self.scale, np.array([float(x)]), order)
        return Jet.from_slogs(float(x), list(zip(signs[:, 0].tolist(), logs[:, 0].tolist())))

    def grid_jets(self, xs: np.ndarray, order: int) -> Tuple[np.ndarray, np.ndarray]:
        _check_order(order)
        return _gaussian_grid(self.scale, xs, order)

    def spec(self) -> str:
        return "gauss:%g" % (self.scale,)


@dataclass(frozen=True)
class Scaled(FunctionModel):
    """g(x) = base(rho x), so g^(n)(x) = rho^n base^(n)(rho x)."""

    base: FunctionModel
    rho: float

    def __post_init__(self):
        if self.rho == 0:
            raise DomainError("Scaled model needs rho != 0")

    def _adjust(self, signs: np.ndarray, logs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        order = signs.shape[0] - 1
        ns = np.arange(order + 1)
        logs = logs + (ns * math.log(abs(self.rho)))[:, None]
        if self.rho < 0:
            flip = (ns % 2 == 1)
            signs = signs.copy()
            signs[flip] = -signs[flip]
        return signs, logs

    def jet(self, x: float, order: int) -> Jet:
        inner = self.base.jet(self.rho * x, order)
        la = math.log(abs(self.rho))
        entries = []
        for n in range(order + 1):
            s, l = inner.entry(n)
            if s != 0 and self.rho < 0 and n % 2 == 1:
                s = -s
            entries.append((s, l + n * la) if s != 0 else ZERO)
        return Jet.from_slogs(float(x), entries)

    def grid_jets(self, xs: np.ndarray, order: int) -> Tuple[np.ndarray, np.ndarray]:
        signs, logs = self.base.grid_jets(self.rho * xs, order)
        return self._adjust(signs, logs)

    def spec(self) -> str:
        return "scaled:%.17g:%s" % (self.rho, self.base.spec())


@dataclass(frozen=True)
class Translated(FunctionModel):
    """g(x) = base(x + shift)."""

    base: FunctionModel
    shift: float

    def jet(self, x: float, order: int) -> Jet:
        inner = self.base.jet(x + self.shift, order)
        return Jet.from_slogs(float(x), [inner.entry(n) for n in range(order + 1)])

    def grid_jets(self, xs: np.ndarray, order: int) -> Tuple[np.ndarray, np.ndarray]:
        return self.base.grid_jets(xs + self.shift, order)

    def spec(self) -> str:
        return "shift:%.17g:%s" % (self.shift, self.base.spec())


@dataclass(frozen=True)
class PrescribedJet(FunctionModel):
    """A formal jet at a single center; no global function is attached."""

    center: float
    entries: Tuple[Tuple[int, Fraction], ...]  # (n, value) pairs, n distinct

    @staticmethod
    def of(center, entries: Dict[int, Fraction]) -> "PrescribedJet":
        items = tuple(sorted((int(n), Fraction(v)) for n, v in entries.items()))
        for n, _ in items:
            if n < 0:
                raise DomainError("prescribed jet orders must be >= 0")
        return PrescribedJet(float(center), items)

    def jet(self, x: float, order: int) -> Jet:
        _check_order(order)
        if x != self.center:
            raise DomainError(
                "prescribed jet only supports its own center %g" % (self.center,)
            )
        vals = [Fraction(0)] * (order + 1)
        for n, v in self.entries:
            if n <= order:
                vals[n] = v
        return Jet.from_exact(self.center, vals)

    def grid_jets(self, xs: np.ndarray, order: int) -> Tuple[np.ndarray, np.ndarray]:
        raise DomainError("prescribed jets do not support spatial grids")

    def spec(self) -> str:
        return "jet:%g:%s" % (
            self.center,
            ",".join("%d=%s" % (n, v) for n, v in self.entries),
        )


@dataclass(frozen=True)
class Composed(FunctionModel):
    """g(x) = base(poly(x)); jets by Faa di Bruno through the polynomial."""

    base: FunctionModel
    poly: Polynomial

    def _poly_taylor_rows(self, xs: np.ndarray, order: int) -> np.ndarray:
        """rows[i][p] = poly^(i)(xs[p]) / i! as floats, i = 0..order."""
        rows = np.zeros((order + 1, xs.shape[0]))
        cur = self.poly
        fact = 1.0
        for i in range(order + 1):
            if i > 0:
                cur = cur.derivative()
                fact *= i
                if cur.is_zero():
                    break
            cs = [float(c) for c in cur.coeffs]
            acc = np.full(xs.shape[0], cs[-1])
            for c in reversed(cs[:-1]):
                acc = acc * xs + c
            rows[i] = acc / fact
        return rows

    def jet(self, x: float, order: int) -> Jet:
        signs, logs = self.grid_jets(np.array([float(x)]), order)
        return Jet.from_slogs(float(x), list(zip(signs[:, 0].tolist(), logs[:, 0].tolist())))

    def grid_jets(self, xs: np.ndarray, order: int) -> Tuple[np.ndarray, np.ndarray]:
        """Vectorized Faa di Bruno: per-point rescaling keeps the Horner
        substitution inside double range, with a shared log offset."""
        _check_order(order)
        ys = np.array([float(self.poly(float(x))) for x in xs])
        f_signs, f_logs = self.base.grid_jets(ys, order)
        p_rows = self._poly_taylor_rows(xs, order)
        n_pts = xs.shape[0]
        lg = np.array([math.lgamma(n + 1) for n in range(order + 1)])
        # outer Taylor coefficients, peak-normalized per point
        f_t_log = f_logs - lg[:, None]
        peak = np.max(f_t_log, axis=0)
        with np.errstate(invalid="ignore"):
            f_t = f_signs * np.exp(f_t_log - peak[None, :])
        f_t = np.nan_to_num(f_t, nan=0.0)
        # inner series without its constant term, t-rescaled so |b_i| <= 1
        b = p_rows.copy()
        b[0] = 0.0
        with np.errstate(divide="ignore"):
            per_root = np.where(
                b[1:] != 0.0,
                np.log(np.abs(b[1:])) / np.arange(1, order + 1)[:, None],
                ls.NEG_INF,
            )
        tau_log = -np.max(per_root, axis=0) if order >= 1 else np.zeros(n_pts)
        tau_log = np.where(np.isfinite(tau_log), tau_log, 0.0)
        btil = b * np.exp(np.arange(order + 1)[:, None] * tau_log[None, :])
        acc = np.zeros((order + 1, n_pts))
        acc[0] = f_t[order]
        for k in range(order - 1, -1, -1):
            nxt = np.zeros_like(acc)
            for i in range(order + 1):
                row = acc[i]
                if not row.any():
                    continue
                for j in range(1, order + 1 - i):
                    nxt[i + j] += row * btil[j]
            nxt[0] += f_t[k]
            acc = nxt
        out_signs = np.sign(acc).astype(np.int8)
        out_logs = np.full((order + 1, n_pts), ls.NEG_INF)
        nz = acc != 0.0
        logn = np.where(nz, np.log(np.abs(np.where(nz, acc, 1.0))), ls.NEG_INF)
        shift = peak[None, :] - np.arange(order + 1)[:, None] * tau_log[None, :] + lg[:, None]
        out_logs[nz] = (logn + shift)[nz]
        return out_signs, out_logs

    def spec(self) -> str:
        return "comp:%s:%s" % (self.poly.spec(), self.base.spec())


def parse_model(text: str) -> FunctionModel:
    """Literals: gauss:<scale>, scaled:<rho>:<inner>, shift:<c>:<inner>,
    jet:<center>:<n=value,...>."""
    kind, _, rest = text.partition(":")
    if kind == "gauss":
        return Gaussian(float(rest))
    if kind == "scaled":
        rho, _, inner = rest.partition(":")
        return Scaled(parse_model(inner), float(rho))
    if kind == "shift":
        c, _, inner = rest.partition(":")
        return Translated(parse_model(inner), float(c))
    if kind == "jet":
        center, _, pairs = rest.partition(":")
        entries: Dict[int, Fraction] = {}
        for part in pairs.split(","):
            n, _, v = part.partition("=")
            entries[int(n)] = Fraction(v)
        return PrescribedJet.of(float(Fraction(center)), entries)
    raise DomainError("unknown function-model literal %r" % (text,))
