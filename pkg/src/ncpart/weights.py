"""Weight sequences, block-size sets, and the equivalent tilted law.

A weight sequence w (with w(0) = 1 forced) induces, whenever its radius of
convergence rho is positive, a probability distribution
pi(k) = w(k) xi^k / Phi(xi) with the same partition law. xi solves
Psi(xi) = 1 on (0, rho] when that is possible (nu >= 1) and equals rho
otherwise; the mean of pi is min(nu, 1).
"""

from __future__ import annotations

import json
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from .errors import DegenerateSet, NonconvergentSeries, RhoZero

_SERIES_CAP = 10**6
_GCD_CUTOFF = 10**4


def _is_prime(k: int) -> bool:
    if k < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if k % p == 0:
            return k == p
    d, s = k - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, k)
        if x in (1, k - 1):
            continue
        for _ in range(s - 1):
            x = x * x % k
            if x == k - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class SizeSet:
    """Set of allowed block sizes: a finite set or a named infinite family."""

    kind: str                       # finite | all | odd | even | multiples | prime
    members_: frozenset | None = None
    step: int | None = None         # for kind == multiples

    # --- constructors ---

    @classmethod
    def finite(cls, members) -> "SizeSet":
        ms = frozenset(int(m) for m in members)
        if any(m < 1 for m in ms):
            raise DegenerateSet("block sizes must be >= 1")
        return cls(kind="finite", members_=ms)

    @classmethod
    def all_sizes(cls) -> "SizeSet":
        return cls(kind="all")

    @classmethod
    def odd(cls) -> "SizeSet":
        return cls(kind="odd")

    @classmethod
    def even(cls) -> "SizeSet":
        return cls(kind="multiples", step=2)

    @classmethod
    def multiples(cls, k: int) -> "SizeSet":
        if k < 1:
            raise DegenerateSet("multiples step must be >= 1")
        if k == 1:
            return cls.all_sizes()
        return cls(kind="multiples", step=int(k))

    @classmethod
    def primes(cls) -> "SizeSet":
        return cls(kind="prime")

    @classmethod
    def parse(cls, text: str) -> "SizeSet":
        t = text.strip().lower()
        if t in ("all", "n", "naturals"):
            return cls.all_sizes()
        if t == "odd":
            return cls.odd()
        if t == "even":
            return cls.even()
        if t == "prime":
            return cls.primes()
        for prefix in ("multiples:", "divisible:"):
            if t.startswith(prefix):
                return cls.multiples(int(t[len(prefix):]))
        if t.startswith("set:"):
            body = t[4:].strip("{}")
            return cls.finite(int(x) for x in body.split(",") if x.strip())
        if t.replace(",", "").replace(" ", "").isdigit():
            return cls.finite(int(x) for x in t.split(","))
        raise DegenerateSet(f"cannot parse size set {text!r}")

    # --- queries ---

    def contains(self, i: int) -> bool:
        if i < 1:
            return False
        if self.kind == "finite":
            return i in self.members_
        if self.kind == "all":
            return True
        if self.kind == "odd":
            return i % 2 == 1
        if self.kind == "multiples":
            return i % self.step == 0
        return _is_prime(i)

    def iter_members(self) -> Iterator[int]:
        if self.kind == "finite":
            yield from sorted(self.members_)
            return
        if self.kind == "multiples":
            k = self.step
            while True:
                yield k
                k += self.step
        elif self.kind == "all":
            k = 1
            while True:
                yield k
                k += 1
        elif self.kind == "odd":
            k = 1
            while True:
                yield k
                k += 2
        else:
            k = 2
            while True:
                if _is_prime(k):
                    yield k
                k += 1

    def members_upto(self, m: int) -> np.ndarray:
        out = []
        for k in self.iter_members():
            if k > m:
                break
            out.append(k)
        return np.asarray(out, dtype=np.int64)

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def min_element(self) -> int:
        return next(iter(self.iter_members()))

    def gcd(self, cutoff: int = _GCD_CUTOFF) -> int:
        """gcd of the set; empirical (members up to ``cutoff``) for predicate kinds."""
        if self.kind == "finite":
            return math.gcd(*self.members_) if self.members_ else 0
        if self.kind == "multiples":
            return self.step
        if self.kind == "all":
            return 1
        g = 0
        for k in self.iter_members():
            if k > cutoff:
                break
            g = math.gcd(g, k)
            if g == 1:
                break
        return g

    def label(self) -> str:
        if self.kind == "finite":
            return "set:" + ",".join(str(m) for m in sorted(self.members_))
        if self.kind == "multiples":
            return f"multiples:{self.step}"
        return self.kind

    def to_json(self) -> str:
        if self.kind == "finite":
            return json.dumps({"kind": "set", "members": sorted(self.members_)})
        return json.dumps({"kind": "predicate", "name": self.label()})

    @classmethod
    def from_json(cls, text: str) -> "SizeSet":
        d = json.loads(text)
        if d["kind"] == "set":
            return cls.finite(d["members"])
        return cls.parse(d["name"])


# --- closed-form generating functions for the named families ---

def _forms_all():
    return (
        lambda t: 1.0 / (1.0 - t),
        lambda t: 1.0 / (1.0 - t) ** 2,
        lambda t: 2.0 / (1.0 - t) ** 3,
    )


def _forms_multiples(k: int):
    def phi(t):
        return 1.0 / (1.0 - t**k)

    def dphi(t):
        return k * t ** (k - 1) / (1.0 - t**k) ** 2

    def ddphi(t):
        a = 1.0 - t**k
        out = 2.0 * k * k * t ** (2 * k - 2) / a**3
        if k >= 2:
            out += k * (k - 1) * t ** (k - 2) / a**2
        return out

    return (phi, dphi, ddphi)


def _forms_odd():
    return (
        lambda t: 1.0 + t / (1.0 - t * t),
        lambda t: (1.0 + t * t) / (1.0 - t * t) ** 2,
        lambda t: 2.0 * t * (3.0 + t * t) / (1.0 - t * t) ** 3,
    )


_FALLING = (lambda k: 1.0, lambda k: float(k), lambda k: float(k) * (k - 1))


@dataclass(frozen=True)
class WeightSeq:
    """Nonnegative weights on block sizes, with w(0) = 1 forced.

    Kinds: ``explicit`` (finite list of values), ``set`` (0/1 weights from a
    SizeSet), ``parametric`` (callable k -> w(k), with an optional closed
    form for the series and a radius hint).
    """

    kind: str
    values: tuple | None = None          # (w(0)=1, w(1), ..., w(m))
    sizes: SizeSet | None = None
    fn: Callable[[int], float] | None = None
    rho_hint: float | None = None
    phi_forms: tuple | None = None       # (phi, phi', phi'') closed forms
    name: str = ""

    @classmethod
    def explicit(cls, values) -> "WeightSeq":
        vals = tuple(values)
        if not vals or float(vals[0]) != 1.0:
            raise ValueError("explicit weights must start with w(0) = 1")
        if any(float(v) < 0 for v in vals):
            raise ValueError("weights must be nonnegative")
        return cls(kind="explicit", values=vals)

    @classmethod
    def from_set(cls, sizes: SizeSet) -> "WeightSeq":
        forms = None
        if sizes.kind == "all":
            forms = _forms_all()
        elif sizes.kind == "multiples":
            forms = _forms_multiples(sizes.step)
        elif sizes.kind == "odd":
            forms = _forms_odd()
        return cls(kind="set", sizes=sizes, phi_forms=forms, name=sizes.label())

    @classmethod
    def parametric(cls, fn, *, rho=None, phi_forms=None, name="") -> "WeightSeq":
        return cls(kind="parametric", fn=fn, rho_hint=rho, phi_forms=phi_forms,
                   name=name)

    # --- values and support ---

    def value(self, k: int):
        if k == 0:
            return 1
        if self.kind == "explicit":
            return self.values[k] if k < len(self.values) else 0
        if self.kind == "set":
            return 1 if self.sizes.contains(k) else 0
        return self.fn(k)

    def support_upto(self, m: int) -> np.ndarray:
        """Indices k in [0, m] with w(k) > 0 (0 is always included)."""
        if self.kind == "set":
            ks = self.sizes.members_upto(m)
            return np.concatenate(([0], ks))
        ks = [0] + [k for k in range(1, m + 1) if float(self.value(k)) > 0]
        return np.asarray(ks, dtype=np.int64)

    @property
    def has_finite_support(self) -> bool:
        if self.kind == "explicit":
            return True
        if self.kind == "set":
            return self.sizes.is_finite
        return False

    def _max_support(self) -> int:
        if self.kind == "explicit":
            idx = [k for k in range(1, len(self.values)) if float(self.values[k]) > 0]
            return max(idx) if idx else 0
        return max(self.sizes.members_)

    def validate_standing(self) -> None:
        ok = False
        if self.kind == "explicit":
            ok = any(float(v) > 0 for v in self.values[2:])
        elif self.kind == "set":
            ok = any(k >= 2 for k in self.sizes.members_upto(10**4))
        else:
            ok = any(float(self.fn(k)) > 0 for k in range(2, 512))
        if not ok:
            raise DegenerateSet("need w(k) > 0 for some k >= 2")

    # --- analytic machinery ---

    def rho(self) -> float:
        """Radius of convergence of Phi, 1 / limsup w(k)^{1/k}.

        Exact for explicit and membership weights. For parametric weights
        without a hint the limsup is estimated as max of w(k)^{1/k} over
        k in (K/2, K], K = 512; this is a heuristic and is documented as such.
        """
        if self.kind == "explicit":
            return math.inf
        if self.kind == "set":
            return math.inf if self.sizes.is_finite else 1.0
        if self.rho_hint is not None:
            return float(self.rho_hint)
        best = 0.0
        for k in range(257, 513):
            v = float(self.fn(k))
            if v > 0:
                best = max(best, v ** (1.0 / k))
        if best == 0.0:
            return math.inf
        return 1.0 / best

    def phi(self, t: float, deriv: int = 0) -> float:
        """Phi(t), Phi'(t) or Phi''(t) at 0 < t (< rho for convergence)."""
        if t < 0:
            raise ValueError("t must be nonnegative")
        if self.phi_forms is not None:
            return float(self.phi_forms[deriv](t))
        const = 1.0 if deriv == 0 else 0.0
        if self.kind == "explicit":
            total = const
            for k in range(max(1, deriv), len(self.values)):
                v = float(self.values[k])
                if v:
                    total += v * _FALLING[deriv](k) * t ** (k - deriv)
            return total
        total = const
        small_run = 0
        count = 0
        it = self.sizes.iter_members() if self.kind == "set" else _count_from(1)
        for k in it:
            count += 1
            if count > _SERIES_CAP:
                raise NonconvergentSeries(
                    f"series for Phi^({deriv}) at t={t} exceeded {_SERIES_CAP} terms"
                )
            w = 1.0 if self.kind == "set" else float(self.fn(k))
            if w == 0.0:
                continue
            if k < deriv:
                continue
            term = w * _FALLING[deriv](k) * t ** (k - deriv)
            total += term
            if term <= 1e-17 * (abs(total) + 1.0):
                small_run += 1
                if small_run >= 3:
                    break
            else:
                small_run = 0
        if not math.isfinite(total):
            raise NonconvergentSeries(f"series for Phi^({deriv}) diverged at t={t}")
        return total

    def psi(self, t: float) -> float:
        """Psi(t) = t Phi'(t) / Phi(t)."""
        return t * self.phi(t, 1) / self.phi(t, 0)

    def label(self) -> str:
        if self.name:
            return self.name
        if self.kind == "explicit":
            return "explicit:" + ",".join(str(v) for v in self.values)
        return self.kind

    def to_json(self) -> str:
        if self.kind == "explicit":
            return json.dumps({"kind": "explicit",
                               "values": [_num(v) for v in self.values]})
        if self.kind == "set":
            return self.sizes.to_json()
        raise ValueError("parametric weights have no JSON form")

    @classmethod
    def from_json(cls, text: str) -> "WeightSeq":
        d = json.loads(text)
        if d["kind"] == "explicit":
            return cls.explicit(d["values"])
        return cls.from_set(SizeSet.from_json(text))


def _num(v):
    if isinstance(v, Fraction):
        return float(v) if v.denominator != 1 else int(v)
    return v


def _count_from(k0: int) -> Iterator[int]:
    k = k0
    while True:
        yield k
        k += 1


class TiltedLaw:
    """Probability law pi(k) = w(k) xi^k / Phi(xi) with its regime data.

    Caches pmf values behind a lock so concurrent readers are safe.
    """

    def __init__(self, weights: WeightSeq, rho: float, nu: float, xi: float,
                 phi_at_xi: float):
        self.weights = weights
        self.rho = rho
        self.nu = nu
        self.xi = xi
        self.phi_at_xi = phi_at_xi
        self._lock = threading.Lock()
        self._vec: np.ndarray | None = None

    def pmf(self, k: int) -> float:
        if k < 0:
            return 0.0
        v = float(self.weights.value(k))
        if v == 0.0:
            return 0.0
        return v * self.xi**k / self.phi_at_xi

    def pmf_vector(self, kmax: int) -> np.ndarray:
        """pi(0..kmax) as an array; cached and grown as needed."""
        with self._lock:
            if self._vec is None or self._vec.shape[0] < kmax + 1:
                ks = np.arange(kmax + 1)
                w = np.array([float(self.weights.value(int(k))) for k in ks])
                with np.errstate(over="ignore", under="ignore"):
                    vec = w * np.power(self.xi, ks.astype(float)) / self.phi_at_xi
                vec[~np.isfinite(vec)] = 0.0
                self._vec = vec
            return self._vec[: kmax + 1]

    def support_upto(self, kmax: int) -> np.ndarray:
        return self.weights.support_upto(kmax)

    def mean(self) -> float:
        return min(self.nu, 1.0)

    def variance(self) -> float:
        """xi Psi'(xi); may be infinite."""
        try:
            phi = self.phi_at_xi
            d1 = self.weights.phi(self.xi, 1)
            d2 = self.weights.phi(self.xi, 2)
        except NonconvergentSeries:
            return math.inf
        if not (math.isfinite(d1) and math.isfinite(d2)):
            return math.inf
        psi_prime = (d1 + self.xi * d2) / phi - self.xi * (d1 / phi) ** 2
        return self.xi * psi_prime

    def phi(self, t: float, deriv: int = 0) -> float:
        return self.weights.phi(t, deriv)

    def tail(self, k: int) -> float:
        """Upper bound on P(X >= k).

        Exact geometric bound xi^k / ((1 - xi) Phi(xi)) for membership
        weights with xi < 1; for other kinds the tail is summed until the
        terms stay negligible.
        """
        if self.weights.kind == "set" and not self.weights.has_finite_support:
            if self.xi < 1.0:
                return self.xi**k / ((1.0 - self.xi) * self.phi_at_xi)
        return self._sum_over(_count_from(k), lambda j: 1.0)

    def _sum_over(self, members: Iterator[int], factor) -> float:
        """sum of factor(k) pi(k) over an ascending index iterator.

        Stops once the remaining mass is provably (membership weights) or
        heuristically (otherwise) below 1e-15.
        """
        total = 0.0
        small_run = 0
        count = 0
        for k in members:
            count += 1
            if count > _SERIES_CAP:
                raise NonconvergentSeries("size-set sum did not converge")
            term = factor(k) * self.pmf(k)
            total += term
            if self.weights.kind == "set" and not self.weights.has_finite_support \
                    and self.xi < 1.0:
                rest = (k + 1) * self.xi ** (k + 1) / ((1.0 - self.xi) ** 2
                                                       * self.phi_at_xi)
                if rest < 1e-15:
                    break
            elif self.weights.has_finite_support and k >= self.weights._max_support():
                break
            elif term <= 1e-17 * (total + 1.0):
                small_run += 1
                if small_run >= 8:
                    break
            else:
                small_run = 0
        return total

    def mass(self, sizes: SizeSet) -> float:
        """pi(A) for a block-size set A."""
        return self._sum_over(sizes.iter_members(), lambda j: 1.0)

    def first_moment_shifted(self, sizes: SizeSet) -> float:
        """sum over r in A of (r - 1) pi(r); the tilt-direction projection."""
        return self._sum_over(sizes.iter_members(), lambda j: float(j - 1))

    def __repr__(self):
        return (f"TiltedLaw({self.weights.label()}: rho={self.rho}, nu={self.nu}, "
                f"xi={self.xi:.12g}, phi={self.phi_at_xi:.12g})")


def _solve_psi_one(w: WeightSeq, rho: float) -> float:
    """Unique xi in (0, rho] with Psi(xi) = 1, by bisection (Psi is monotone)."""

    def f(t: float) -> float:
        return w.psi(t) - 1.0

    lo = 0.5 if math.isinf(rho) else rho / 2
    for _ in range(200):
        try:
            if f(lo) < 0:
                break
        except NonconvergentSeries:
            pass
        lo /= 2
    else:
        raise NonconvergentSeries("could not bracket Psi = 1 from below")

    hi = None
    if math.isinf(rho):
        h = max(1.0, 2 * lo)
        for _ in range(300):
            if f(h) >= 0:
                hi = h
                break
            h *= 2
        if hi is None:
            raise NonconvergentSeries("Psi never reaches 1 (is nu >= 1?)")
    else:
        for j in range(1, 60):
            h = rho * (1.0 - 0.5**j)
            if h <= lo:
                continue
            try:
                if f(h) >= 0:
                    hi = h
                    break
            except NonconvergentSeries:
                break
        if hi is None:
            # nu == 1 exactly: the root sits at rho itself
            return rho

    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if f(mid) >= 0:
            hi = mid
        else:
            lo = mid
    return hi


def equivalent_distribution(w: WeightSeq) -> TiltedLaw:
    """Tilted probability law equivalent to a weight sequence.

    Computes rho, nu = lim Psi(t) as t -> rho, then xi (the root of
    Psi = 1 when nu >= 1, else rho itself) and returns the law
    pi(k) = w(k) xi^k / Phi(xi).
    """
    w.validate_standing()
    rho = w.rho()
    if rho == 0:
        raise RhoZero("weights grow superexponentially; no equivalent law")

    if math.isinf(rho):
        if w.has_finite_support:
            nu = float(w._max_support())
        else:
            nu = math.inf
    else:
        try:
            phi_r = w.phi(rho, 0)
            dphi_r = w.phi(rho, 1)
            nu = rho * dphi_r / phi_r
            if not math.isfinite(nu):
                nu = math.inf
        except (NonconvergentSeries, ZeroDivisionError, OverflowError):
            nu = math.inf

    if nu >= 1.0:
        xi = _solve_psi_one(w, rho)
    else:
        xi = rho
    phi_xi = w.phi(xi, 0)
    return TiltedLaw(weights=w, rho=rho, nu=nu, xi=xi, phi_at_xi=phi_xi)


def xi_for_set(sizes: SizeSet):
    """Tilt parameter for 0/1 weights on a block-size set.

    Solves 1 + sum_{i in A} xi^i = sum_{i in A} i xi^i; returns
    ``(xi, law)``.
    """
    if sizes.is_finite and not sizes.members_:
        raise DegenerateSet("empty size set")
    if sizes.is_finite and sizes.members_ == frozenset({1}):
        raise DegenerateSet("size set {1} admits only the all-singleton partition")
    law = equivalent_distribution(WeightSeq.from_set(sizes))
    return law.xi, law
