"""Seeded generators of strictly stationary sequences with known limits.

Every family here is strictly stationary by construction and carries enough
analytic structure to resolve the almost-sure limit of its extreme or
intermediate order statistics once the stream's hidden variables are drawn:

* ``IID``, ``AR1``, ``MA`` are ergodic; the limit is the (constant)
  marginal support endpoint.
* ``Identical`` repeats one draw forever; the limit is that realized draw.
* ``Mixture`` draws one ergodic component at time zero and runs it forever;
  the shift-invariant information is exactly the regime index, so the limit
  is the selected component's endpoint.
* ``Shift`` / ``Scale`` add a random level U or multiply by a non-negative
  random factor V drawn once; order statistics commute with both, so the
  limit is endpoint + U, resp. V * endpoint.

RNG contract: numpy PCG64 driven by SeedSequence. ``make_stream(spec, seed)``
spawns two children of ``SeedSequence(seed)``: child 0 draws hidden
variables (regime, U, V, the constant draw), child 1 drives the sample
path. Identical (spec, seed) therefore reproduce bit-identical sequences,
and the sequence does not depend on how it is chunked into ``take`` calls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

import numpy as np
from scipy import signal

from .extended import NEG_INF, POS_INF, xadd, xmul

_AR1_DEFAULT_BURN_IN = 1024


class SpecError(ValueError):
    """Invalid distribution or process specification."""


# --- marginal distributions -------------------------------------------------


@dataclass(frozen=True)
class Distribution:
    family: str
    params: tuple[float, ...]

    @classmethod
    def uniform(cls, a: float, b: float) -> "Distribution":
        if not a < b:
            raise SpecError(f"uniform needs a < b, got ({a}, {b})")
        return cls("uniform", (float(a), float(b)))

    @classmethod
    def exponential(cls, rate: float) -> "Distribution":
        if not rate > 0:
            raise SpecError("exponential rate must be positive")
        return cls("exponential", (float(rate),))

    @classmethod
    def normal(cls, mu: float, sigma: float) -> "Distribution":
        if not sigma > 0:
            raise SpecError("normal sigma must be positive")
        return cls("normal", (float(mu), float(sigma)))

    @classmethod
    def pareto(cls, x_m: float, alpha: float) -> "Distribution":
        if not (x_m > 0 and alpha > 0):
            raise SpecError("pareto needs x_m > 0 and alpha > 0")
        return cls("pareto", (float(x_m), float(alpha)))

    @classmethod
    def two_point(cls, p: float, v0: float, v1: float) -> "Distribution":
        if not 0.0 <= p <= 1.0:
            raise SpecError("two_point p must be in [0, 1]")
        return cls("two_point", (float(p), float(v0), float(v1)))

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        f, p = self.family, self.params
        if f == "uniform":
            return rng.uniform(p[0], p[1], size)
        if f == "exponential":
            return rng.exponential(1.0 / p[0], size)
        if f == "normal":
            return rng.normal(p[0], p[1], size)
        if f == "pareto":
            # inverse cdf of P(X > x) = (x_m / x)^alpha
            u = rng.random(size)
            return p[0] * (1.0 - u) ** (-1.0 / p[1])
        if f == "two_point":
            # value v1 with probability p, else v0
            return np.where(rng.random(size) < p[0], p[2], p[1])
        raise SpecError(f"unknown family {f!r}")

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        f, p = self.family, self.params
        if f == "uniform":
            return np.clip((x - p[0]) / (p[1] - p[0]), 0.0, 1.0)
        if f == "exponential":
            return np.where(x < 0, 0.0, 1.0 - np.exp(-p[0] * np.maximum(x, 0.0)))
        if f == "normal":
            from scipy.stats import norm

            return norm.cdf(x, loc=p[0], scale=p[1])
        if f == "pareto":
            return np.where(x < p[0], 0.0, 1.0 - (p[0] / np.maximum(x, p[0])) ** p[1])
        if f == "two_point":
            lo, hi = sorted((p[1], p[2]))
            p_lo = (1.0 - p[0]) if p[1] <= p[2] else p[0]
            return np.where(x < lo, 0.0, np.where(x < hi, p_lo, 1.0))
        raise SpecError(f"unknown family {f!r}")

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        f, p = self.family, self.params
        if f == "uniform":
            return np.where((x >= p[0]) & (x <= p[1]), 1.0 / (p[1] - p[0]), 0.0)
        if f == "exponential":
            return np.where(x < 0, 0.0, p[0] * np.exp(-p[0] * np.maximum(x, 0.0)))
        if f == "normal":
            from scipy.stats import norm

            return norm.pdf(x, loc=p[0], scale=p[1])
        if f == "pareto":
            return np.where(
                x < p[0], 0.0, p[1] * p[0] ** p[1] / np.maximum(x, p[0]) ** (p[1] + 1)
            )
        raise SpecError(f"no density for family {f!r}")

    @property
    def left_endpoint(self) -> float:
        f, p = self.family, self.params
        if f == "uniform":
            return p[0]
        if f == "exponential":
            return 0.0
        if f == "normal":
            return NEG_INF
        if f == "pareto":
            return p[0]
        if f == "two_point":
            if p[0] == 0.0:
                return p[1]
            if p[0] == 1.0:
                return p[2]
            return min(p[1], p[2])
        raise SpecError(f"unknown family {f!r}")

    @property
    def right_endpoint(self) -> float:
        f, p = self.family, self.params
        if f == "uniform":
            return p[1]
        if f in ("exponential", "pareto"):
            return POS_INF
        if f == "normal":
            return POS_INF
        if f == "two_point":
            if p[0] == 0.0:
                return p[1]
            if p[0] == 1.0:
                return p[2]
            return max(p[1], p[2])
        raise SpecError(f"unknown family {f!r}")

    def endpoint(self, lam: int) -> float:
        return self.left_endpoint if lam == 0 else self.right_endpoint

    def to_json(self) -> dict:
        f, p = self.family, self.params
        keys = {
            "uniform": ("a", "b"),
            "exponential": ("rate",),
            "normal": ("mu", "sigma"),
            "pareto": ("x_m", "alpha"),
            "two_point": ("p", "v0", "v1"),
        }[f]
        return {"family": f, **dict(zip(keys, p))}

    @classmethod
    def from_json(cls, obj: dict) -> "Distribution":
        f = obj.get("family")
        try:
            if f == "uniform":
                return cls.uniform(obj["a"], obj["b"])
            if f == "exponential":
                return cls.exponential(obj["rate"])
            if f == "normal":
                return cls.normal(obj["mu"], obj["sigma"])
            if f == "pareto":
                return cls.pareto(obj["x_m"], obj["alpha"])
            if f == "two_point":
                return cls.two_point(obj["p"], obj["v0"], obj["v1"])
        except KeyError as exc:
            raise SpecError(f"missing parameter for family {f!r}: {exc}") from exc
        raise SpecError(f"unknown family {f!r}")


# --- process specifications -------------------------------------------------


@dataclass(frozen=True)
class IID:
    dist: Distribution


@dataclass(frozen=True)
class AR1:
    phi: float
    innovation: Distribution
    burn_in: int = _AR1_DEFAULT_BURN_IN

    def __post_init__(self) -> None:
        if not abs(self.phi) < 1.0:
            raise SpecError(f"AR1 needs |phi| < 1, got {self.phi}")
        if self.burn_in < 0:
            raise SpecError("burn_in must be >= 0")


@dataclass(frozen=True)
class MA:
    coeffs: tuple[float, ...]
    innovation: Distribution

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if not self.coeffs:
            raise SpecError("MA needs at least one coefficient")


@dataclass(frozen=True)
class Identical:
    dist: Distribution


@dataclass(frozen=True)
class Mixture:
    weights: tuple[float, ...]
    components: tuple["ProcessSpec", ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.weights) != len(self.components) or not self.components:
            raise SpecError("mixture needs matching, non-empty weights/components")
        if any(w <= 0 for w in self.weights):
            raise SpecError("mixture weights must be positive")
        if abs(sum(self.weights) - 1.0) > 1e-12:
            raise SpecError(f"mixture weights sum to {sum(self.weights)!r}, not 1")
        for c in self.components:
            if not is_ergodic(c):
                raise SpecError("mixture components must be ergodic specs")


@dataclass(frozen=True)
class Shift:
    base: "ProcessSpec"
    shift: Distribution

    def __post_init__(self) -> None:
        if not is_ergodic(self.base):
            raise SpecError("shift base must be an ergodic spec")


@dataclass(frozen=True)
class Scale:
    base: "ProcessSpec"
    scale: Distribution

    def __post_init__(self) -> None:
        if not is_ergodic(self.base):
            raise SpecError("scale base must be an ergodic spec")
        if self.scale.left_endpoint < 0.0:
            raise SpecError("scale factor distribution must be supported on [0, inf)")


ProcessSpec = Union[IID, AR1, MA, Identical, Mixture, Shift, Scale]


def is_ergodic(spec: ProcessSpec) -> bool:
    return isinstance(spec, (IID, AR1, MA))


def _linear_endpoints(coeffs: Sequence[float], innovation: Distribution) -> tuple[float, float]:
    """Support endpoints of sum(c_j eps_j) for iid innovations.

    Positive coefficients pull in the innovation's matching endpoint,
    negative ones the opposite endpoint; zero coefficients contribute 0
    even against infinite endpoints.
    """
    e0, e1 = innovation.left_endpoint, innovation.right_endpoint
    left = 0.0
    right = 0.0
    for c in coeffs:
        left = xadd(left, xmul(c, e0 if c > 0 else e1))
        right = xadd(right, xmul(c, e1 if c > 0 else e0))
    return left, right


def marginal_endpoints(spec: ProcessSpec) -> tuple[float, float]:
    """(left, right) support endpoints of the one-dimensional marginal.

    Defined for ergodic specs; for AR1 the geometric coefficient sums are
    folded in closed form (split by sign when phi < 0).
    """
    if isinstance(spec, IID):
        return spec.dist.left_endpoint, spec.dist.right_endpoint
    if isinstance(spec, MA):
        return _linear_endpoints(spec.coeffs, spec.innovation)
    if isinstance(spec, AR1):
        phi = spec.phi
        e0, e1 = spec.innovation.left_endpoint, spec.innovation.right_endpoint
        if phi >= 0:
            pos_sum, neg_sum = 1.0 / (1.0 - phi), 0.0
        else:
            pos_sum = 1.0 / (1.0 - phi * phi)
            neg_sum = phi / (1.0 - phi * phi)
        left = xadd(xmul(pos_sum, e0), xmul(neg_sum, e1))
        right = xadd(xmul(pos_sum, e1), xmul(neg_sum, e0))
        return left, right
    raise SpecError(f"marginal endpoints only defined for ergodic specs, got {spec!r}")


# --- streams ----------------------------------------------------------------


class ProcessStream:
    """Single-consumer sample stream for one realization of a spec.

    ``take(m)`` returns the next m values; the emitted sequence depends only
    on (spec, seed), never on chunk boundaries.
    """

    def __init__(self, spec: ProcessSpec, seed: int) -> None:
        self.spec = spec
        self.seed = int(seed)
        if self.seed < 0:
            raise SpecError("seed must be a non-negative integer")
        root = np.random.SeedSequence(self.seed)
        hidden_seq, path_seq = root.spawn(2)
        hidden_rng = np.random.Generator(np.random.PCG64(hidden_seq))
        self._rng = np.random.Generator(np.random.PCG64(path_seq))
        self.hidden: dict[str, float | int] = {}
        self._inner: ProcessStream | None = None

        if isinstance(spec, Identical):
            self.hidden["value"] = float(spec.dist.sample(hidden_rng, 1)[0])
        elif isinstance(spec, Mixture):
            regime = int(hidden_rng.choice(len(spec.weights), p=spec.weights))
            self.hidden["regime"] = regime
            self._inner = ProcessStream._from_seq(spec.components[regime], path_seq)
        elif isinstance(spec, Shift):
            self.hidden["shift"] = float(spec.shift.sample(hidden_rng, 1)[0])
            self._inner = ProcessStream._from_seq(spec.base, path_seq)
        elif isinstance(spec, Scale):
            v = float(spec.scale.sample(hidden_rng, 1)[0])
            if v < 0:
                raise SpecError(f"drew a negative scale factor {v}")
            self.hidden["scale"] = v
            self._inner = ProcessStream._from_seq(spec.base, path_seq)
        elif isinstance(spec, AR1):
            self._init_ar1(spec)
        elif isinstance(spec, MA):
            # innovation window covering one output; prefill all but the newest
            self._ma_buffer = spec.innovation.sample(self._rng, len(spec.coeffs) - 1)
        elif not isinstance(spec, IID):
            raise SpecError(f"unknown process spec {spec!r}")

    @classmethod
    def _from_seq(cls, spec: ProcessSpec, seq: np.random.SeedSequence) -> "ProcessStream":
        child = int(seq.generate_state(1, dtype=np.uint64)[0])
        return cls(spec, child)

    def _init_ar1(self, spec: AR1) -> None:
        inn = spec.innovation
        if inn.family == "normal":
            # exact stationary start: N(mu/(1-phi), sigma^2/(1-phi^2))
            mu, sigma = inn.params
            m = mu / (1.0 - spec.phi)
            s = sigma / math.sqrt(1.0 - spec.phi * spec.phi)
            self._ar_state = float(self._rng.normal(m, s))
        else:
            self._ar_state = 0.0
            eps = inn.sample(self._rng, spec.burn_in)
            if spec.burn_in:
                warm = signal.lfilter(
                    [1.0], [1.0, -spec.phi], eps, zi=np.array([spec.phi * self._ar_state])
                )[0]
                self._ar_state = float(warm[-1])

    def take(self, m: int) -> np.ndarray:
        if m < 0:
            raise ValueError("take needs m >= 0")
        if m == 0:
            return np.empty(0)
        spec = self.spec
        if isinstance(spec, IID):
            return spec.dist.sample(self._rng, m)
        if isinstance(spec, Identical):
            return np.full(m, self.hidden["value"])
        if isinstance(spec, Mixture):
            return self._inner.take(m)
        if isinstance(spec, Shift):
            return self._inner.take(m) + self.hidden["shift"]
        if isinstance(spec, Scale):
            return self.hidden["scale"] * self._inner.take(m)
        if isinstance(spec, AR1):
            eps = spec.innovation.sample(self._rng, m)
            out, zf = signal.lfilter(
                [1.0], [1.0, -spec.phi], eps, zi=np.array([spec.phi * self._ar_state])
            )
            self._ar_state = float(out[-1])
            return out
        if isinstance(spec, MA):
            new = spec.innovation.sample(self._rng, m)
            seq = np.concatenate([self._ma_buffer, new])
            out = np.correlate(seq, np.asarray(spec.coeffs), mode="valid")
            keep = len(spec.coeffs) - 1
            self._ma_buffer = seq[len(seq) - keep :] if keep else seq[:0]
            return out
        raise SpecError(f"unknown process spec {spec!r}")

    def next(self) -> float:
        return float(self.take(1)[0])

    def theoretical_limit(self, lam: int) -> float:
        """Realized value of the a.s. limit of the lam-side order statistics."""
        if lam not in (0, 1):
            raise ValueError("lam must be 0 or 1")
        spec = self.spec
        if is_ergodic(spec):
            return marginal_endpoints(spec)[lam]
        if isinstance(spec, Identical):
            return self.hidden["value"]
        if isinstance(spec, Mixture):
            return marginal_endpoints(spec.components[self.hidden["regime"]])[lam]
        if isinstance(spec, Shift):
            return xadd(marginal_endpoints(spec.base)[lam], self.hidden["shift"])
        if isinstance(spec, Scale):
            return xmul(self.hidden["scale"], marginal_endpoints(spec.base)[lam])
        raise SpecError(f"unknown process spec {spec!r}")


def make_stream(spec: ProcessSpec, seed: int) -> ProcessStream:
    return ProcessStream(spec, seed)


# --- limit laws --------------------------------------------------------------


@dataclass(frozen=True)
class LimitLaw:
    """Distribution of the limiting variate across realizations.

    ``kind`` is "point" (degenerate), "atoms" (finite discrete), or
    "continuous" (cdf/pdf callables, possibly shifted/scaled from a base
    marginal). Used for ensemble-level comparisons and plot overlays.
    """

    kind: str
    atoms: tuple[tuple[float, float], ...] = ()
    cdf_fn: Callable[[np.ndarray], np.ndarray] | None = None
    pdf_fn: Callable[[np.ndarray], np.ndarray] | None = None
    support_hint: tuple[float, float] = (0.0, 1.0)

    def cdf(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.kind in ("point", "atoms"):
            out = np.zeros_like(x)
            for v, w in self.atoms:
                out = out + np.where(x >= v, w, 0.0) if v != NEG_INF else out + w
            return np.clip(out, 0.0, 1.0)
        assert self.cdf_fn is not None
        return self.cdf_fn(x)

    def is_degenerate(self) -> bool:
        return self.kind == "point"

    def descriptor(self, grid_points: int = 201) -> dict:
        from .extended import to_json_value

        if self.kind in ("point", "atoms"):
            return {
                "kind": self.kind,
                "atoms": [[to_json_value(v), w] for v, w in self.atoms],
            }
        lo, hi = self.support_hint
        xs = np.linspace(lo, hi, grid_points)
        return {
            "kind": "continuous",
            "x": [float(v) for v in xs],
            "cdf": [float(v) for v in self.cdf(xs)],
            "density": [float(v) for v in self.pdf_fn(xs)] if self.pdf_fn else None,
        }


def _point_law(v: float) -> LimitLaw:
    return LimitLaw("point", atoms=((v, 1.0),))


def _dist_law(dist: Distribution, shift: float = 0.0, scale: float = 1.0) -> LimitLaw:
    """Law of scale * D + shift for D ~ dist (scale > 0)."""
    if dist.family == "two_point":
        p, v0, v1 = dist.params
        pts = {}
        for v, w in ((v0, 1.0 - p), (v1, p)):
            pts[scale * v + shift] = pts.get(scale * v + shift, 0.0) + w
        return LimitLaw("atoms", atoms=tuple(sorted(pts.items())))
    lo = dist.left_endpoint
    hi = dist.right_endpoint
    # plotting window for unbounded tails: a few standard-ish widths
    if dist.family == "normal":
        mu, s = dist.params
        lo, hi = mu - 4 * s, mu + 4 * s
    elif dist.family == "exponential":
        lo, hi = 0.0, 6.0 / dist.params[0]
    elif dist.family == "pareto":
        x_m, a = dist.params
        lo, hi = x_m, x_m * 10.0 ** (2.0 / a)

    def cdf_fn(x, _d=dist, _s=scale, _b=shift):
        return _d.cdf((np.asarray(x, dtype=float) - _b) / _s)

    def pdf_fn(x, _d=dist, _s=scale, _b=shift):
        return _d.pdf((np.asarray(x, dtype=float) - _b) / _s) / _s

    return LimitLaw(
        "continuous",
        cdf_fn=cdf_fn,
        pdf_fn=pdf_fn,
        support_hint=(scale * lo + shift, scale * hi + shift),
    )


def limit_law(spec: ProcessSpec, lam: int) -> LimitLaw | None:
    """Theoretical law of the limiting variate, when a closed form exists.

    Returns None for combinations without one (for example a random scale
    applied to an infinite endpoint with continuous scale law).
    """
    if lam not in (0, 1):
        raise ValueError("lam must be 0 or 1")
    if is_ergodic(spec):
        return _point_law(marginal_endpoints(spec)[lam])
    if isinstance(spec, Identical):
        return _dist_law(spec.dist)
    if isinstance(spec, Mixture):
        pts: dict[float, float] = {}
        for w, comp in zip(spec.weights, spec.components):
            v = marginal_endpoints(comp)[lam]
            pts[v] = pts.get(v, 0.0) + w
        return LimitLaw("atoms", atoms=tuple(sorted(pts.items())))
    if isinstance(spec, Shift):
        base = marginal_endpoints(spec.base)[lam]
        if base in (NEG_INF, POS_INF):
            return _point_law(base)
        return _dist_law(spec.shift, shift=base)
    if isinstance(spec, Scale):
        base = marginal_endpoints(spec.base)[lam]
        if base == 0.0:
            return _point_law(0.0)
        if base in (NEG_INF, POS_INF):
            if spec.scale.family == "two_point":
                p, v0, v1 = spec.scale.params
                pts = {}
                for v, w in ((v0, 1.0 - p), (v1, p)):
                    pts[xmul(v, base)] = pts.get(xmul(v, base), 0.0) + w
                return LimitLaw("atoms", atoms=tuple(sorted(pts.items())))
            if spec.scale.left_endpoint > 0.0:
                return _point_law(base)
            return None
        if base > 0:
            return _dist_law(spec.scale, scale=base)
        # base < 0: V * base is a |base|-scaled reflection of V

        def cdf_fn(x, _d=spec.scale, _b=base):
            # P(V * b <= x) = P(V >= x / b) for b < 0, V continuous
            return 1.0 - _d.cdf(np.asarray(x, dtype=float) / _b)

        def pdf_fn(x, _d=spec.scale, _b=base):
            return _d.pdf(np.asarray(x, dtype=float) / _b) / abs(_b)

        if spec.scale.family == "two_point":
            p, v0, v1 = spec.scale.params
            pts = {}
            for v, w in ((v0, 1.0 - p), (v1, p)):
                pts[v * base] = pts.get(v * base, 0.0) + w
            return LimitLaw("atoms", atoms=tuple(sorted(pts.items())))
        lo = spec.scale.right_endpoint
        hi = spec.scale.left_endpoint
        span_lo = base * (lo if lo != POS_INF else 10.0)
        return LimitLaw(
            "continuous", cdf_fn=cdf_fn, pdf_fn=pdf_fn, support_hint=(span_lo, hi * base)
        )
    return None


# --- JSON schema --------------------------------------------------------------


def spec_from_json(obj: dict) -> ProcessSpec:
    if not isinstance(obj, dict):
        raise SpecError("process spec must be a JSON object")
    kind = obj.get("kind")
    try:
        if kind == "iid":
            return IID(Distribution.from_json(obj["dist"]))
        if kind == "ar1":
            return AR1(
                float(obj["phi"]),
                Distribution.from_json(obj["innovation"]),
                int(obj.get("burn_in", _AR1_DEFAULT_BURN_IN)),
            )
        if kind == "ma":
            return MA(tuple(obj["coeffs"]), Distribution.from_json(obj["innovation"]))
        if kind == "identical":
            return Identical(Distribution.from_json(obj["dist"]))
        if kind == "mixture":
            return Mixture(
                tuple(obj["weights"]),
                tuple(spec_from_json(c) for c in obj["components"]),
            )
        if kind == "shift":
            return Shift(spec_from_json(obj["base"]), Distribution.from_json(obj["shift"]))
        if kind == "scale":
            return Scale(spec_from_json(obj["base"]), Distribution.from_json(obj["scale"]))
    except KeyError as exc:
        raise SpecError(f"missing field for process kind {kind!r}: {exc}") from exc
    raise SpecError(f"unknown process kind {kind!r}")


def spec_to_json(spec: ProcessSpec) -> dict:
    if isinstance(spec, IID):
        return {"kind": "iid", "dist": spec.dist.to_json()}
    if isinstance(spec, AR1):
        return {
            "kind": "ar1",
            "phi": spec.phi,
            "innovation": spec.innovation.to_json(),
            "burn_in": spec.burn_in,
        }
    if isinstance(spec, MA):
        return {"kind": "ma", "coeffs": list(spec.coeffs), "innovation": spec.innovation.to_json()}
    if isinstance(spec, Identical):
        return {"kind": "identical", "dist": spec.dist.to_json()}
    if isinstance(spec, Mixture):
        return {
            "kind": "mixture",
            "weights": list(spec.weights),
            "components": [spec_to_json(c) for c in spec.components],
        }
    if isinstance(spec, Shift):
        return {"kind": "shift", "base": spec_to_json(spec.base), "shift": spec.shift.to_json()}
    if isinstance(spec, Scale):
        return {"kind": "scale", "base": spec_to_json(spec.base), "scale": spec.scale.to_json()}
    raise SpecError(f"unknown process spec {spec!r}")
