"""Model domains, weighted homogeneous polynomials and multitype weights.

A domain is one of a fixed list of variants, each with a canonical signed
defining function (negative inside, zero on the boundary):

* ``Ball(n)``          -- ``|z|^2 - 1``
* ``Polydisc(n)``      -- ``max_k |z_k|^2 - 1``
* ``UpperHalfPlane``   -- ``-Im z``
* ``HalfPlaneC(a)``    -- ``2 Re(a z) - 1``
* ``PuncturedDisc``    -- ``max(|z|^2 - 1, -|z|)``
* ``SlitDisc``         -- disc minus the slit (-1, 0]
* ``Siegel(n)``        -- ``2 Re z_n + |z_1|^2 + ... + |z_{n-1}|^2``
* ``WeightedModel``    -- ``2 Re z_n + P('z, conj 'z)``

Points are plain tuples of complex numbers; planar domains also accept a
bare complex scalar.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

__all__ = [
    "Point",
    "as_point",
    "parse_complex_literal",
    "format_complex",
    "UnsupportedDomainError",
    "Ball",
    "Polydisc",
    "UpperHalfPlane",
    "HalfPlaneC",
    "PuncturedDisc",
    "SlitDisc",
    "Siegel",
    "WeightedModel",
    "ModelDomain",
    "domain_dim",
    "domain_label",
    "defining_value",
    "contains",
    "sample_point",
    "Multitype",
    "Term",
    "WeightedPolynomial",
    "modulus_power",
    "poly_eval",
    "levi_form",
    "symbolic_weight_check",
    "numeric_scaling_check",
    "check_homogeneity",
    "PshReport",
    "check_psh",
    "parse_polynomial",
    "format_polynomial",
]

Point = tuple[complex, ...]


class UnsupportedDomainError(ValueError):
    """An operation has no implementation for the given domain variant."""


def as_point(p: Union[complex, float, Sequence[complex]], dim: int | None = None) -> Point:
    """Coerce scalars or sequences to a point tuple, checking the dimension."""
    if isinstance(p, (int, float, complex)):
        pt: Point = (complex(p),)
    else:
        pt = tuple(complex(c) for c in p)
    if len(pt) < 1:
        raise ValueError("a point needs at least one coordinate")
    if not all(math.isfinite(c.real) and math.isfinite(c.imag) for c in pt):
        raise ValueError(f"point {pt!r} has non-finite coordinates")
    if dim is not None and len(pt) != dim:
        raise ValueError(f"expected a point of dimension {dim}, got {len(pt)}")
    return pt


_BARE_I = re.compile(r"(?<![0-9.])i")


def parse_complex_literal(s: str) -> complex:
    """Parse complex literals in ``a+bi`` notation (also accepts ``j``)."""
    t = s.strip().replace(" ", "").replace("I", "i").replace("j", "i")
    if not t:
        raise ValueError("empty complex literal")
    t = _BARE_I.sub("1i", t).replace("i", "j")
    try:
        return complex(t)
    except ValueError as exc:
        raise ValueError(f"cannot parse complex literal {s!r}") from exc


def format_complex(z: complex) -> str:
    z = complex(z)
    if z.imag == 0.0:
        return repr(z.real)
    if z.real == 0.0:
        return f"{z.imag!r}i"
    sign = "+" if z.imag > 0 else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


# ---------------------------------------------------------------------------
# multitype weights
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Multitype:
    """Weight list ``(1, m_2, ..., m_n)``; coordinate ``z_k`` (k < n) carries
    weight ``1/m_{n+1-k}`` and the distinguished coordinate ``z_n`` weight 1."""

    entries: tuple[Fraction, ...]

    def __init__(self, entries: Sequence) -> None:
        ent = tuple(Fraction(e) for e in entries)
        if len(ent) < 2:
            raise ValueError("a multitype needs at least two entries")
        if ent[0] != 1:
            raise ValueError("the first multitype entry must be 1")
        if any(m < 2 for m in ent[1:]):
            raise ValueError("multitype entries after the first must be >= 2")
        object.__setattr__(self, "entries", ent)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def tangential_weights(self) -> tuple[Fraction, ...]:
        """Weights of z_1, ..., z_{n-1} in order."""
        n = self.dim
        return tuple(Fraction(1) / self.entries[n - 1 - k] for k in range(n - 1))

    def tangential_exponents(self) -> tuple[float, ...]:
        return tuple(float(w) for w in self.tangential_weights())


# ---------------------------------------------------------------------------
# weighted polynomials P('z, conj 'z)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Term:
    """Monomial ``coeff * z^alpha * conj(z)^beta`` in the tangential variables."""

    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    coeff: complex

    def __post_init__(self) -> None:
        if len(self.alpha) != len(self.beta):
            raise ValueError("alpha and beta must have the same length")
        if any(a < 0 for a in self.alpha) or any(b < 0 for b in self.beta):
            raise ValueError("multi-indices must be nonnegative")


@dataclass(frozen=True)
class WeightedPolynomial:
    """Sparse real-valued polynomial in ``'z`` and ``conj 'z``.

    Terms are stored per monomial so weighted homogeneity is decidable
    exactly; real-valuedness is the conjugate-pair condition (for every
    term (alpha, beta, c) the term (beta, alpha, conj c) is present), which
    is checked by :meth:`is_conjugate_symmetric` rather than enforced, so
    malformed input can be detected at evaluation time.
    """

    terms: tuple[Term, ...]
    nvars: int

    @classmethod
    def from_terms(cls, terms: Sequence[Term], nvars: int | None = None) -> "WeightedPolynomial":
        terms = list(terms)
        if not terms:
            raise ValueError("a polynomial needs at least one term")
        nv = nvars if nvars is not None else len(terms[0].alpha)
        merged: dict[tuple[tuple[int, ...], tuple[int, ...]], complex] = {}
        for t in terms:
            if len(t.alpha) != nv:
                raise ValueError("inconsistent number of variables across terms")
            key = (t.alpha, t.beta)
            merged[key] = merged.get(key, 0j) + complex(t.coeff)
        kept = tuple(
            Term(a, b, c) for (a, b), c in sorted(merged.items()) if c != 0
        )
        if not kept:
            raise ValueError("polynomial is identically zero")
        return cls(kept, nv)

    def is_conjugate_symmetric(self, tol: float = 1e-12) -> bool:
        table = {(t.alpha, t.beta): t.coeff for t in self.terms}
        for t in self.terms:
            mate = table.get((t.beta, t.alpha))
            if mate is None or abs(mate - t.coeff.conjugate()) > tol * (1 + abs(t.coeff)):
                return False
        return True

    def has_pluriharmonic_terms(self) -> bool:
        """True if some term has alpha = 0 or beta = 0 (a pure z or conj-z monomial)."""
        zero = (0,) * self.nvars
        return any(t.alpha == zero or t.beta == zero for t in self.terms)

    def __add__(self, other: "WeightedPolynomial") -> "WeightedPolynomial":
        if self.nvars != other.nvars:
            raise ValueError("cannot add polynomials in different numbers of variables")
        return WeightedPolynomial.from_terms(self.terms + other.terms, self.nvars)


def modulus_power(nvars: int, var: int, half_degree: int, coeff: float = 1.0) -> WeightedPolynomial:
    """The polynomial ``coeff * |z_var|^(2 m)`` (``var`` is zero-based)."""
    if not 0 <= var < nvars:
        raise ValueError("variable index out of range")
    idx = tuple(half_degree if k == var else 0 for k in range(nvars))
    return WeightedPolynomial.from_terms([Term(idx, idx, coeff)], nvars)


def poly_eval(poly: WeightedPolynomial, w: Sequence[complex], tol: float = 1e-12) -> float:
    """Evaluate a polynomial, returning the (checked) real value."""
    w = tuple(complex(c) for c in w)
    if len(w) != poly.nvars:
        raise ValueError(f"expected {poly.nvars} variables, got {len(w)}")
    total = 0j
    for t in poly.terms:
        m = t.coeff
        for c, a, b in zip(w, t.alpha, t.beta):
            if a:
                m *= c**a
            if b:
                m *= c.conjugate() ** b
        total += m
    if abs(total.imag) > tol * max(1.0, abs(total.real)):
        raise ValueError(
            f"polynomial evaluated to a non-real value {total!r}; "
            "the term list is not conjugate-pair symmetric"
        )
    return total.real


def levi_form(poly: WeightedPolynomial, w: Sequence[complex]) -> np.ndarray:
    """Complex Hessian ``d^2 P / (dz_j d conj z_k)`` at ``w``, term by term."""
    w = tuple(complex(c) for c in w)
    if len(w) != poly.nvars:
        raise ValueError(f"expected {poly.nvars} variables, got {len(w)}")
    n = poly.nvars
    H = np.zeros((n, n), dtype=complex)
    for t in poly.terms:
        for j in range(n):
            if t.alpha[j] == 0:
                continue
            for k in range(n):
                if t.beta[k] == 0:
                    continue
                m = t.coeff * t.alpha[j] * t.beta[k]
                for i, c in enumerate(w):
                    a = t.alpha[i] - (1 if i == j else 0)
                    b = t.beta[i] - (1 if i == k else 0)
                    if a:
                        m *= c**a
                    if b:
                        m *= c.conjugate() ** b
                H[j, k] += m
    return H


def symbolic_weight_check(poly: WeightedPolynomial, multitype: Multitype) -> bool:
    """Exact per-term check that every monomial has weighted degree one."""
    if poly.nvars != multitype.dim - 1:
        raise ValueError("polynomial and multitype dimensions do not match")
    weights = multitype.tangential_weights()
    one = Fraction(1)
    return all(
        sum((a + b) * wgt for a, b, wgt in zip(t.alpha, t.beta, weights)) == one
        for t in poly.terms
    )


def numeric_scaling_check(
    poly: WeightedPolynomial,
    multitype: Multitype,
    trials: int = 200,
    rng: np.random.Generator | None = None,
    tol: float = 1e-10,
) -> bool:
    """Randomized check of ``P(delta^w . 'z) = delta P('z)`` for delta in (0, 2]."""
    if poly.nvars != multitype.dim - 1:
        raise ValueError("polynomial and multitype dimensions do not match")
    rng = rng if rng is not None else np.random.default_rng(0)
    exps = multitype.tangential_exponents()
    for _ in range(trials):
        delta = float(rng.uniform(0.0, 2.0)) or 1.0
        z = tuple(complex(a, b) for a, b in rng.normal(size=(poly.nvars, 2)))
        scaled = tuple(c * delta**e for c, e in zip(z, exps))
        base = poly_eval(poly, z)
        if abs(poly_eval(poly, scaled) - delta * base) > tol * (1.0 + abs(base)):
            return False
    return True


def check_homogeneity(
    poly: WeightedPolynomial,
    multitype: Multitype,
    trials: int = 200,
    rng: np.random.Generator | None = None,
) -> bool:
    """True iff the polynomial has weight one both symbolically and numerically."""
    return symbolic_weight_check(poly, multitype) and numeric_scaling_check(
        poly, multitype, trials=trials, rng=rng
    )


@dataclass(frozen=True)
class PshReport:
    """Minimum Levi-form eigenvalue over a sample grid."""

    min_eigenvalue: float
    witness: Point
    samples: int
    passed: bool


def check_psh(
    poly: WeightedPolynomial,
    samples: int = 400,
    radius: float = 1.5,
    seed: int = 0,
    tol: float = 1e-10,
) -> PshReport:
    """Sample the Levi form and report its minimal eigenvalue.

    The origin is always included, where degenerate directions of weighted
    models typically sit.  Passes iff the minimum is >= -tol.
    """
    rng = np.random.default_rng(seed)
    pts: list[Point] = [(0j,) * poly.nvars]
    for _ in range(samples):
        raw = rng.normal(size=(poly.nvars, 2)) * radius / 2.0
        pts.append(tuple(complex(a, b) for a, b in raw))
    best = math.inf
    where: Point = pts[0]
    for p in pts:
        H = levi_form(poly, p)
        H = (H + H.conjugate().T) / 2.0
        lam = float(np.linalg.eigvalsh(H)[0])
        if lam < best:
            best, where = lam, p
    return PshReport(best, where, len(pts), best >= -tol)


def parse_polynomial(text: str) -> WeightedPolynomial:
    """Parse the line-based term format ``coeff a1 a2 ... | b1 b2 ...``."""
    terms: list[Term] = []
    nvars: int | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "|" not in line:
            raise ValueError(f"line {lineno}: missing '|' separator")
        left, right = line.split("|", 1)
        left_tokens = left.split()
        if not left_tokens:
            raise ValueError(f"line {lineno}: missing coefficient")
        coeff = parse_complex_literal(left_tokens[0])
        alpha = tuple(int(tok) for tok in left_tokens[1:])
        beta = tuple(int(tok) for tok in right.split())
        if nvars is None:
            nvars = len(alpha)
        if len(alpha) != nvars or len(beta) != nvars:
            raise ValueError(f"line {lineno}: inconsistent multi-index length")
        terms.append(Term(alpha, beta, coeff))
    if not terms:
        raise ValueError("no polynomial terms found")
    return WeightedPolynomial.from_terms(terms, nvars)


def format_polynomial(poly: WeightedPolynomial) -> str:
    lines = []
    for t in poly.terms:
        a = " ".join(str(x) for x in t.alpha)
        b = " ".join(str(x) for x in t.beta)
        lines.append(f"{format_complex(t.coeff)} {a} | {b}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# domain variants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Ball:
    dim: int = 1

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")


@dataclass(frozen=True)
class Polydisc:
    dim: int

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")


@dataclass(frozen=True)
class UpperHalfPlane:
    pass


@dataclass(frozen=True)
class HalfPlaneC:
    """Planar half-plane ``{z : 2 Re(a z) - 1 < 0}`` with linear part ``a``."""

    linear_coeff: complex

    def __post_init__(self) -> None:
        if self.linear_coeff == 0:
            raise ValueError("the linear coefficient must be nonzero")


@dataclass(frozen=True)
class PuncturedDisc:
    pass


@dataclass(frozen=True)
class SlitDisc:
    pass


@dataclass(frozen=True)
class Siegel:
    dim: int

    def __post_init__(self) -> None:
        if self.dim < 2:
            raise ValueError("the Siegel domain needs dimension >= 2")


@dataclass(frozen=True)
class WeightedModel:
    """Model domain ``{z : 2 Re z_n + P('z, conj 'z) < 0}``."""

    multitype: Multitype
    poly: WeightedPolynomial

    def __post_init__(self) -> None:
        if self.poly.nvars != self.multitype.dim - 1:
            raise ValueError("polynomial and multitype dimensions do not match")

    @property
    def dim(self) -> int:
        return self.multitype.dim


ModelDomain = Union[
    Ball, Polydisc, UpperHalfPlane, HalfPlaneC, PuncturedDisc, SlitDisc, Siegel, WeightedModel
]


def domain_dim(d: ModelDomain) -> int:
    if isinstance(d, (Ball, Polydisc, Siegel)):
        return d.dim
    if isinstance(d, WeightedModel):
        return d.dim
    return 1


def domain_label(d: ModelDomain) -> str:
    if isinstance(d, Ball):
        return f"ball{d.dim}"
    if isinstance(d, Polydisc):
        return f"polydisc{d.dim}"
    if isinstance(d, Siegel):
        return f"siegel{d.dim}"
    if isinstance(d, UpperHalfPlane):
        return "halfplane"
    if isinstance(d, HalfPlaneC):
        return f"halfplane-linear({format_complex(d.linear_coeff)})"
    if isinstance(d, PuncturedDisc):
        return "punctured"
    if isinstance(d, SlitDisc):
        return "slit"
    if isinstance(d, WeightedModel):
        return f"weighted-model(dim={d.dim})"
    raise UnsupportedDomainError(f"unknown domain {d!r}")


def _segment_distance(z: complex) -> float:
    """Euclidean distance from z to the closed segment [-1, 0] of the real axis."""
    x, y = z.real, z.imag
    if x > 0:
        return math.hypot(x, y)
    if x < -1:
        return math.hypot(x + 1, y)
    return abs(y)


def defining_value(d: ModelDomain, p) -> float:
    """Canonical signed defining function; negative exactly on the domain."""
    pt = as_point(p, domain_dim(d))
    if isinstance(d, Ball):
        return sum(abs(c) ** 2 for c in pt) - 1.0
    if isinstance(d, Polydisc):
        return max(abs(c) ** 2 for c in pt) - 1.0
    if isinstance(d, UpperHalfPlane):
        return -pt[0].imag
    if isinstance(d, HalfPlaneC):
        return 2.0 * (d.linear_coeff * pt[0]).real - 1.0
    if isinstance(d, PuncturedDisc):
        m = abs(pt[0])
        return max(m * m - 1.0, -m)
    if isinstance(d, SlitDisc):
        m = abs(pt[0])
        return max(m * m - 1.0, -_segment_distance(pt[0]))
    if isinstance(d, Siegel):
        return 2.0 * pt[-1].real + sum(abs(c) ** 2 for c in pt[:-1])
    if isinstance(d, WeightedModel):
        return 2.0 * pt[-1].real + poly_eval(d.poly, pt[:-1])
    raise UnsupportedDomainError(f"unknown domain {d!r}")


def contains(d: ModelDomain, p) -> bool:
    """True iff the defining inequality holds strictly."""
    return defining_value(d, p) < 0.0


def _uniform_disc(rng: np.random.Generator) -> complex:
    r = math.sqrt(rng.uniform())
    phi = rng.uniform(0.0, 2.0 * math.pi)
    return complex(r * math.cos(phi), r * math.sin(phi))


def sample_point(d: ModelDomain, rng: np.random.Generator) -> Point:
    """Draw an interior point of the domain (distribution is variant-specific)."""
    if isinstance(d, Ball):
        v = rng.normal(size=(d.dim, 2)).view(np.complex128).ravel()
        norm = float(np.linalg.norm(v))
        if norm == 0.0:
            return (0j,) * d.dim
        radius = rng.uniform() ** (1.0 / (2 * d.dim))
        return tuple(complex(c) * radius / norm for c in v)
    if isinstance(d, Polydisc):
        return tuple(_uniform_disc(rng) for _ in range(d.dim))
    if isinstance(d, UpperHalfPlane):
        return (complex(rng.normal(scale=2.0), math.exp(rng.normal())),)
    if isinstance(d, HalfPlaneC):
        # pull back a standard half-plane sample through a z = 1/2 + i zeta
        zeta = complex(rng.normal(scale=2.0), math.exp(rng.normal()))
        return ((0.5 + 1j * zeta) / d.linear_coeff,)
    if isinstance(d, PuncturedDisc):
        while True:
            z = _uniform_disc(rng)
            if 0 < abs(z) < 1:
                return (z,)
    if isinstance(d, SlitDisc):
        while True:
            z = _uniform_disc(rng)
            if abs(z) < 1 and _segment_distance(z) > 0:
                return (z,)
    if isinstance(d, Siegel):
        tang = tuple(complex(a, b) for a, b in rng.normal(size=(d.dim - 1, 2)))
        margin = float(rng.exponential(scale=0.5))
        sq = sum(abs(c) ** 2 for c in tang)
        zn = complex(-(sq / 2.0 + margin), rng.normal(scale=2.0))
        return tang + (zn,)
    if isinstance(d, WeightedModel):
        tang = tuple(complex(a, b) * 0.7 for a, b in rng.normal(size=(d.dim - 1, 2)))
        margin = float(rng.exponential(scale=0.3))
        val = poly_eval(d.poly, tang)
        zn = complex(-(val / 2.0 + margin), rng.normal(scale=1.0))
        return tang + (zn,)
    raise UnsupportedDomainError(f"unknown domain {d!r}")
