"""Shrinkability verdicts for toroidal decompositions, with certificates.

The decomposition defined by a sequence of chain links shrinks exactly
when every forward orbit of the composed disc replicating functions
reaches 0.  For (n,m) stages the functions are k -> max(ceil(2mk/n)-1, 0),
so everything reduces to exact rational arithmetic in the ratios
tau_i = n_i / (2 m_i):

  * periodic sequences: shrinks iff the product of tau over one period
    is >= 1 (and the one-period composite g then satisfies g(k) < k for
    every k, giving an orbit-level proof of the same fact);
  * if sum_j prod_{i<=j} tau_i converges, the decomposition does not
    shrink; if sum_j (1/n_j) prod_{i<=j} tau_i diverges, it does;
  * strictly expanding stages (n_i < 2 m_i for all i) never shrink;
  * mixed (2,1)/(1,1) sequences with gaps c_i shrink iff sum c_i / 2^i
    diverges.

No infinite series is ever decided numerically: a verdict requires a
symbolic certificate (periodic product, geometric ratio, term bound,
ratio test, harmonic comparison, or a telescoping composite), validated
against the sequence variant, and every certificate can be re-checked
from the raw sequence by :func:`verify_certificate`.  Inputs outside the
reach of every criterion yield an honest Unknown with orbit evidence.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .drf import nm_drf
from .sequences import (
    EventuallyPeriodicSequence,
    ExplicitSequence,
    GapSequence,
    GeneratorSequence,
    HorizonError,
    IntPoly,
    LinkSequence,
    PeriodicSequence,
    tau,
)

__all__ = [
    "SHRINKS",
    "DOES_NOT_SHRINK",
    "UNKNOWN",
    "ShrinkVerdict",
    "CertificateError",
    "VerdictConsistencyError",
    "GeometricRatio",
    "UserBound",
    "HarmonicComparison",
    "PeriodicProduct",
    "periodic_product",
    "sher_armentrout",
    "convergent_tau_series",
    "divergent_weighted_tau_series",
    "bounded_widths",
    "ancel_starbird",
    "orbit_decide",
    "decide",
    "verify_certificate",
    "DEFAULT_K_MAX",
    "DEFAULT_M_MAX",
    "DEFAULT_P_MAX",
]

SHRINKS = "shrinks"
DOES_NOT_SHRINK = "does_not_shrink"
UNKNOWN = "unknown"

DEFAULT_K_MAX = 64
DEFAULT_M_MAX = 16
DEFAULT_P_MAX = 10_000

_PROBE = 64  # indices probed when proposing symbolic certificates


class CertificateError(ValueError):
    """A supplied certificate failed validation against the sequence."""


class VerdictConsistencyError(RuntimeError):
    """Two criteria produced contradictory verdicts: an internal bug."""


# -- user-suppliable certificate requests -------------------------------------


@dataclass(frozen=True)
class GeometricRatio:
    """Claim: tau_i <= r for all i >= i0 (blockwise when block > 1)."""

    r: Fraction
    i0: int = 1
    block: int = 1


@dataclass(frozen=True)
class UserBound:
    """Claim: sum_j prod_{i<=j} tau_i <= bound, justified off-tool."""

    bound: Fraction
    note: str = ""


@dataclass(frozen=True)
class HarmonicComparison:
    """Claim: (1/n_j) prod_{i<=j} tau_i >= c/j for all j >= i0."""

    c: Fraction
    i0: int = 1


@dataclass(frozen=True)
class PeriodicProduct:
    """Claim: the sequence is periodic with period product >= 1."""


# -- verdicts -------------------------------------------------------------------


@dataclass(frozen=True)
class ShrinkVerdict:
    outcome: str
    criterion: str
    certificate: dict
    sequence: LinkSequence
    corroborating: tuple[tuple[str, str], ...] = ()
    evidence: dict | None = None

    @property
    def exit_code(self) -> int:
        return {SHRINKS: 0, DOES_NOT_SHRINK: 1, UNKNOWN: 2}[self.outcome]

    def summary(self) -> str:
        return f"{self.outcome} (criterion: {self.criterion})"


# -- exact helpers ---------------------------------------------------------------


def _taus(seq: LinkSequence, upto: int) -> list[Fraction]:
    return [seq.tau(i) for i in range(1, upto + 1)]


def _partial_products(taus: list[Fraction]) -> list[Fraction]:
    out = []
    p = Fraction(1)
    for t in taus:
        p *= t
        out.append(p)
    return out


def _period_of(seq: LinkSequence):
    """(prefix_length, period_links) for the periodic variants, else None."""
    if isinstance(seq, PeriodicSequence):
        return 0, seq.links
    if isinstance(seq, EventuallyPeriodicSequence):
        return len(seq.prefix), seq.tail
    return None


def _slope(links) -> Fraction:
    a = Fraction(1)
    for spec in links:
        a *= Fraction(2 * spec.m, spec.n)
    return a


def _compose_period(links, k: int) -> int:
    v = k
    for spec in links:
        if v:
            v = max(-((-2 * spec.m * v) // spec.n) - 1, 0)
    return v


# -- the periodic product criterion ----------------------------------------------


def periodic_product(seq: LinkSequence) -> Optional[ShrinkVerdict]:
    """Exact decision for (eventually) periodic sequences: shrinks iff the
    product of tau over one period is at least 1."""
    info = _period_of(seq)
    if info is None:
        return None
    prefix_len, links = info
    taus = [tau(spec) for spec in links]
    product = Fraction(1)
    for t in taus:
        product *= t
    outcome = SHRINKS if product >= 1 else DOES_NOT_SHRINK
    cert = {
        "kind": "periodic_product",
        "period": len(links),
        "prefix_skipped": prefix_len,
        "taus": [str(t) for t in taus],
        "product": str(product),
        "shrinks_iff": "product >= 1",
    }
    return ShrinkVerdict(outcome, "periodic_product", cert, seq)


# -- strictly expanding stages -----------------------------------------------------


def sher_armentrout(seq: LinkSequence, probe_horizon: int = _PROBE) -> Optional[ShrinkVerdict]:
    """No-shrink when n_i < 2 m_i for every i.

    The hypothesis is checked finitely for the periodic variants and
    symbolically (polynomial positivity of 2m - n - 1) for generators;
    it is never concluded from probing alone.
    """
    info = _period_of(seq)
    if info is not None:
        prefix_len, links = info
        specs = (list(seq.prefix) if prefix_len else []) + list(links)
        if all(spec.n < 2 * spec.m for spec in specs):
            cert = {
                "kind": "sher_armentrout",
                "scope": "finite",
                "checked": [[spec.n, spec.m] for spec in specs],
                "consequence": "every stage satisfies D(k) >= k for k >= 1",
            }
            return ShrinkVerdict(DOES_NOT_SHRINK, "sher_armentrout", cert, seq)
        return None
    if isinstance(seq, GeneratorSequence):
        branches = _generator_branches(seq)
        witness_data = []
        for name, n_poly, m_poly, start in branches:
            margin = m_poly.scaled(2) - n_poly - IntPoly.const(1)
            ok, witness = margin.ge_from(0, start)
            if not ok:
                return None
            witness_data.append(
                {"branch": name, "margin": margin.text("s"), "from": start}
            )
        cert = {
            "kind": "sher_armentrout",
            "scope": "symbolic",
            "branches": witness_data,
            "consequence": "every stage satisfies D(k) >= k for k >= 1",
        }
        return ShrinkVerdict(DOES_NOT_SHRINK, "sher_armentrout", cert, seq)
    return None


def _generator_branches(seq: GeneratorSequence):
    if seq.two_case:
        return [
            ("even", seq.even_n, seq.even_m, 1),
            ("odd", seq.odd_n, seq.odd_m, 0),
        ]
    return [("all", seq.n_poly, seq.m_poly, 1)]


# -- convergence of sum prod tau ---------------------------------------------------


def _periodic_exact_sum(seq: LinkSequence):
    """Exact value of sum_j prod_{i<=j} tau_i for periodic variants with
    period product < 1; None when the series diverges or variant mismatch."""
    info = _period_of(seq)
    if info is None:
        return None
    prefix_len, links = info
    r = Fraction(1)
    for spec in links:
        r *= tau(spec)
    if r >= 1:
        return None
    upto = prefix_len + len(links)
    taus = _taus(seq, upto)
    partials = _partial_products(taus)
    prefix_sum = sum(partials[:prefix_len], Fraction(0))
    prefix_product = partials[prefix_len - 1] if prefix_len else Fraction(1)
    block = [p / prefix_product for p in partials[prefix_len:]]
    total = prefix_sum + prefix_product * sum(block, Fraction(0)) / (1 - r)
    return total, r, partials


def convergent_tau_series(
    seq: LinkSequence, certificate=None
) -> Optional[ShrinkVerdict]:
    """No-shrink from convergence of sum_j prod_{i<=j} tau_i.

    With no certificate supplied, a geometric one is derived automatically
    for periodic sequences (exact sum) and for generators whose tau is
    provably bounded by some r < 1 from an index onward.  A supplied but
    invalid certificate is rejected with the first violating index.
    """
    if certificate is None:
        return _auto_convergent(seq)
    if isinstance(certificate, GeometricRatio):
        _validate_geometric(seq, certificate)
        bound, k0, prefix = _geometric_bound(seq, certificate)
        cert = {
            "kind": "convergent_tau_series",
            "method": "geometric_ratio",
            "r": str(certificate.r),
            "i0": certificate.i0,
            "block": certificate.block,
            "prefix_partial_sums": [str(p) for p in prefix],
            "bound": str(bound),
            "k0": k0,
        }
        return ShrinkVerdict(DOES_NOT_SHRINK, "convergent_tau_series", cert, seq)
    if isinstance(certificate, UserBound):
        probe_to = _PROBE
        if seq.known_bound() is not None:
            probe_to = min(probe_to, seq.known_bound())
        partials = _partial_products(_taus(seq, probe_to))
        sums = []
        acc = Fraction(0)
        for p in partials:
            acc += p
            sums.append(acc)
            if acc > certificate.bound:
                raise CertificateError(
                    f"partial sum at index {len(sums)} already exceeds the "
                    f"declared bound {certificate.bound}"
                )
        k0 = int(certificate.bound) + 1
        cert = {
            "kind": "convergent_tau_series",
            "method": "user_bound",
            "bound": str(certificate.bound),
            "note": certificate.note,
            "assumed": True,
            "probed_to": probe_to,
            "k0": k0,
        }
        return ShrinkVerdict(DOES_NOT_SHRINK, "convergent_tau_series", cert, seq)
    raise CertificateError(f"unsupported certificate {certificate!r}")


def _auto_convergent(seq: LinkSequence) -> Optional[ShrinkVerdict]:
    exact = _periodic_exact_sum(seq)
    if exact is not None:
        total, r, partials = exact
        k0 = int(total) + 1
        cert = {
            "kind": "convergent_tau_series",
            "method": "periodic_geometric",
            "block_product": str(r),
            "exact_sum": str(total),
            "k0": k0,
        }
        return ShrinkVerdict(DOES_NOT_SHRINK, "convergent_tau_series", cert, seq)
    if isinstance(seq, GeneratorSequence):
        for i0 in (1, 2, 4, 8):
            probed = [seq.tau(i) for i in range(i0, _PROBE + i0)]
            r = max(probed)
            if r >= 1:
                continue
            try:
                _validate_geometric(seq, GeometricRatio(r=r, i0=i0))
            except CertificateError:
                continue
            bound, k0, prefix = _geometric_bound(seq, GeometricRatio(r=r, i0=i0))
            cert = {
                "kind": "convergent_tau_series",
                "method": "geometric_ratio",
                "r": str(r),
                "i0": i0,
                "block": 1,
                "prefix_partial_sums": [str(p) for p in prefix],
                "bound": str(bound),
                "k0": k0,
            }
            return ShrinkVerdict(DOES_NOT_SHRINK, "convergent_tau_series", cert, seq)
    return None


def _validate_geometric(seq: LinkSequence, cert: GeometricRatio) -> None:
    if cert.r >= 1 or cert.r <= 0:
        raise CertificateError("geometric ratio must satisfy 0 < r < 1")
    info = _period_of(seq)
    if cert.block != 1:
        if info is None or cert.block != len(info[1]):
            raise CertificateError("blockwise ratios only apply to the period length")
        if cert.i0 != info[0] + 1:
            raise CertificateError("blockwise ratios must start at the periodic tail")
    if info is not None:
        prefix_len, links = info
        if cert.block == 1:
            # every periodic position recurs beyond any i0, so all must obey r
            for offset, spec in enumerate(list(links)):
                if tau(spec) > cert.r:
                    raise CertificateError(
                        f"tau at index {prefix_len + offset + 1} exceeds r"
                    )
            for i in range(cert.i0, prefix_len + 1):
                if seq.tau(i) > cert.r:
                    raise CertificateError(f"tau at index {i} exceeds r")
        else:
            product = Fraction(1)
            for spec in links:
                product *= tau(spec)
            if product > cert.r:
                raise CertificateError("period product exceeds the declared block ratio")
        return
    if isinstance(seq, GeneratorSequence):
        if cert.block != 1:
            raise CertificateError("blockwise ratios only apply to periodic sequences")
        # tau_i <= r  <=>  den(r) * n_i <= 2 num(r) * m_i, branchwise
        for name, n_poly, m_poly, start in _generator_branches(seq):
            margin = m_poly.scaled(2 * cert.r.numerator) - n_poly.scaled(
                cert.r.denominator
            )
            branch_start = _branch_start_for_index(name, cert.i0, start)
            ok, witness = margin.ge_from(0, branch_start)
            if not ok:
                index = _index_for_branch(name, witness)
                if index >= cert.i0:
                    raise CertificateError(f"tau at index {index} exceeds r")
        return
    raise CertificateError("cannot validate a geometric ratio on this variant")


def _branch_start_for_index(name: str, i0: int, domain_start: int) -> int:
    if name == "all":
        return max(i0, 1)
    if name == "even":
        return max(domain_start, (i0 + 1) // 2)
    return max(domain_start, (i0 - 1 + 1) // 2)  # odd: i = 2s+1 >= i0


def _index_for_branch(name: str, s: int) -> int:
    if name == "all":
        return s
    return 2 * s if name == "even" else 2 * s + 1


def _geometric_bound(seq: LinkSequence, cert: GeometricRatio):
    """Exact upper bound for the tau series from a validated ratio claim."""
    i0 = cert.i0
    taus = _taus(seq, i0 - 1)
    partials = _partial_products(taus)
    prefix_sum = sum(partials, Fraction(0))
    p0 = partials[-1] if partials else Fraction(1)
    if cert.block == 1:
        tail = p0 * cert.r / (1 - cert.r)
    else:
        info = _period_of(seq)
        prefix_len, links = info
        upto = prefix_len + len(links)
        all_partials = _partial_products(_taus(seq, upto))
        base = all_partials[prefix_len - 1] if prefix_len else Fraction(1)
        block_partials = [p / base for p in all_partials[prefix_len:]]
        tail = p0 * sum(block_partials, Fraction(0)) / (1 - cert.r)
    bound = prefix_sum + tail
    return bound, int(bound) + 1, partials


# -- divergence of the weighted series ----------------------------------------------


def divergent_weighted_tau_series(
    seq: LinkSequence, certificate=None
) -> Optional[ShrinkVerdict]:
    """Shrink verdict from divergence of sum_j (1/n_j) prod_{i<=j} tau_i."""
    if certificate is None:
        certificate = _auto_divergent_cert(seq)
        if certificate is None:
            return None
    if isinstance(certificate, PeriodicProduct):
        info = _period_of(seq)
        if info is None:
            raise CertificateError("periodic-product certificates need a periodic sequence")
        prefix_len, links = info
        product = Fraction(1)
        for spec in links:
            product *= tau(spec)
        if product < 1:
            raise CertificateError("period product is below 1")
        delta, n_max = _periodic_term_floor(seq)
        cert = {
            "kind": "divergent_weighted_tau_series",
            "method": "periodic_product",
            "product": str(product),
            "term_floor": str(delta / n_max),
            "n_max": n_max,
        }
        return ShrinkVerdict(SHRINKS, "divergent_weighted_tau_series", cert, seq)
    if isinstance(certificate, HarmonicComparison):
        _validate_harmonic(seq, certificate)
        cert = {
            "kind": "divergent_weighted_tau_series",
            "method": "harmonic_comparison",
            "c": str(certificate.c),
            "i0": certificate.i0,
        }
        return ShrinkVerdict(SHRINKS, "divergent_weighted_tau_series", cert, seq)
    raise CertificateError(f"unsupported certificate {certificate!r}")


def _periodic_term_floor(seq: LinkSequence):
    """A positive lower bound for the partial products prod_{i<=j} tau_i,
    valid for all j when the period product is >= 1."""
    prefix_len, links = _period_of(seq)
    upto = prefix_len + len(links)
    partials = _partial_products(_taus(seq, upto))
    base = partials[prefix_len - 1] if prefix_len else Fraction(1)
    block_min = min(p / base for p in partials[prefix_len:])
    delta = min(partials[:prefix_len] + [base * block_min])
    n_max = max(spec.n for spec in links)
    if prefix_len:
        n_max = max(n_max, max(spec.n for spec in seq.prefix))
    return delta, n_max


def _auto_divergent_cert(seq: LinkSequence):
    info = _period_of(seq)
    if info is not None:
        _, links = info
        product = Fraction(1)
        for spec in links:
            product *= tau(spec)
        return PeriodicProduct() if product >= 1 else None
    if isinstance(seq, GeneratorSequence):
        branches = _generator_branches(seq)
        # need bounded widths and tau >= 1 throughout
        if any(not n_poly.is_constant() for _, n_poly, _, _ in branches):
            return None
        for _, n_poly, m_poly, start in branches:
            margin = n_poly - m_poly.scaled(2)
            ok, _ = margin.ge_from(0, start)
            if not ok:
                return None
        n_max = max(n_poly(1) for _, n_poly, _, _ in branches)
        return HarmonicComparison(c=Fraction(1, n_max), i0=1)
    return None


def _validate_harmonic(seq: LinkSequence, cert: HarmonicComparison) -> None:
    if cert.c <= 0:
        raise CertificateError("harmonic comparison needs c > 0")
    probe_to = max(_PROBE, cert.i0 + _PROBE)
    try:
        taus = _taus(seq, probe_to)
    except HorizonError:
        raise CertificateError("cannot validate on an explicit tail-unknown sequence")
    partials = _partial_products(taus)
    for j in range(cert.i0, probe_to + 1):
        term = partials[j - 1] / seq.link(j).n
        if term < Fraction(cert.c, j):
            raise CertificateError(f"weighted term at index {j} falls below c/j")
    # beyond the probe window the claim must hold structurally
    info = _period_of(seq)
    if info is not None:
        _, links = info
        product = Fraction(1)
        for spec in links:
            product *= tau(spec)
        if product < 1:
            raise CertificateError(
                "periodic weighted terms decay geometrically (period product < 1); "
                "no harmonic floor can hold"
            )
        return
    if isinstance(seq, GeneratorSequence):
        for name, n_poly, m_poly, start in _generator_branches(seq):
            if not n_poly.is_constant():
                raise CertificateError("harmonic floors need bounded widths n_i")
            margin = n_poly - m_poly.scaled(2)
            ok, witness = margin.ge_from(0, start)
            if not ok:
                raise CertificateError(
                    f"tau falls below 1 at index {_index_for_branch(name, witness)}; "
                    f"cannot maintain the harmonic floor"
                )
        return
    raise CertificateError("cannot validate a harmonic floor on this variant")


# -- bounded widths: the two-sided criterion ------------------------------------------


def bounded_widths(seq: LinkSequence) -> Optional[ShrinkVerdict]:
    """When sup n_i < infinity the tau series decides both ways: shrinks
    iff sum prod tau diverges."""
    sup_n = _sup_widths(seq)
    if sup_n is None:
        return None
    inner = _auto_convergent(seq)
    if inner is not None:
        cert = {
            "kind": "bounded_widths",
            "sup_n": sup_n,
            "decision": "tau series converges",
            "inner": inner.certificate,
        }
        return ShrinkVerdict(DOES_NOT_SHRINK, "bounded_widths", cert, seq)
    divergence = divergent_weighted_tau_series(seq)
    if divergence is not None:
        cert = {
            "kind": "bounded_widths",
            "sup_n": sup_n,
            "decision": "tau series diverges",
            "inner": divergence.certificate,
        }
        return ShrinkVerdict(SHRINKS, "bounded_widths", cert, seq)
    return None


def _sup_widths(seq: LinkSequence) -> Optional[int]:
    info = _period_of(seq)
    if info is not None:
        prefix_len, links = info
        widths = [spec.n for spec in links]
        if prefix_len:
            widths += [spec.n for spec in seq.prefix]
        return max(widths)
    if isinstance(seq, GeneratorSequence):
        branches = _generator_branches(seq)
        if all(n_poly.is_constant() for _, n_poly, _, _ in branches):
            return max(n_poly(1) for _, n_poly, _, _ in branches)
    return None


# -- mixed Bing-Whitehead sequences -----------------------------------------------------


def ancel_starbird(gaps: GapSequence) -> ShrinkVerdict:
    """Verdict for a mixed (2,1)/(1,1) sequence given the gap counts c_i:
    shrinks iff sum c_i / 2^i diverges.

    Periodic gap patterns always converge (geometric bound) and are
    cross-checked against the periodic product criterion on the sequence
    they generate; polynomial gaps converge by an exact ratio test; gaps
    with a 2^i leading term diverge by a term bound.
    """
    seq = _gap_sequence_links(gaps)
    if gaps.kind == "explicit":
        partial = sum((gaps.term(i) for i in range(1, len(gaps.values) + 1)), Fraction(0))
        cert = {
            "kind": "ancel_starbird",
            "method": "undetermined",
            "partial_sum": str(partial),
            "known_gaps": list(gaps.values),
        }
        return ShrinkVerdict(
            UNKNOWN,
            "ancel_starbird",
            cert,
            seq if seq is not None else ExplicitSequence(((2, 1),)),
            evidence={"reason": "gap tail is undeclared"},
        )
    if gaps.kind == "periodic":
        p = len(gaps.values)
        one_period = sum((gaps.term(i) for i in range(1, p + 1)), Fraction(0))
        total = one_period / (1 - Fraction(1, 2**p))
        cross = periodic_product(seq)
        if cross.outcome != DOES_NOT_SHRINK:
            raise VerdictConsistencyError(
                "periodic gaps must agree with the periodic product criterion"
            )
        cert = {
            "kind": "ancel_starbird",
            "method": "periodic_geometric",
            "gap_period": list(gaps.values),
            "exact_sum": str(total),
            "cross_check": cross.certificate,
        }
        return ShrinkVerdict(
            DOES_NOT_SHRINK,
            "ancel_starbird",
            cert,
            seq,
            corroborating=(("periodic_product", cross.outcome),),
        )
    if gaps.kind == "poly":
        if gaps.poly.is_zero():
            cert = {
                "kind": "ancel_starbird",
                "method": "zero_gaps",
                "exact_sum": "0",
            }
            return ShrinkVerdict(DOES_NOT_SHRINK, "ancel_starbird", cert, seq)
        r = Fraction(3, 4)
        i0 = _ratio_test_start(gaps.poly, r)
        prefix = sum((gaps.term(i) for i in range(1, i0)), Fraction(0))
        bound = prefix + gaps.term(i0) / (1 - r)
        cert = {
            "kind": "ancel_starbird",
            "method": "ratio_test",
            "gap_term": gaps.poly.text("i"),
            "r": str(r),
            "i0": i0,
            "bound": str(bound),
        }
        return ShrinkVerdict(DOES_NOT_SHRINK, "ancel_starbird", cert, seq)
    # two_pow: terms are bounded below by the leading coefficient
    extra = gaps.poly if gaps.poly is not None else IntPoly(())
    cert = {
        "kind": "ancel_starbird",
        "method": "term_bound",
        "delta": str(gaps.two_pow_coeff),
        "i0": 1,
        "two_pow_coeff": gaps.two_pow_coeff,
        "extra_term": extra.text("i"),
        "gap_term": f"{gaps.two_pow_coeff}*2^i"
        + (f" + {extra.text('i')}" if not extra.is_zero() else ""),
    }
    return ShrinkVerdict(SHRINKS, "ancel_starbird", cert, seq)


def _ratio_test_start(poly: IntPoly, r: Fraction) -> int:
    """Smallest i0 (by complete search) with c(i+1)/2 <= r * c(i) for all i >= i0."""
    margin = poly.scaled(2 * r.numerator) - poly.shifted_arg(1).scaled(r.denominator)
    i0 = 1
    for _ in range(10_000):
        ok, witness = margin.ge_from(0, i0)
        if ok:
            return i0
        i0 = witness + 1
    raise CertificateError("ratio test start not found")  # pragma: no cover


def _gap_sequence_links(gaps: GapSequence) -> LinkSequence | None:
    """The link sequence a gap description generates, where expressible."""
    if gaps.kind == "periodic":
        links = []
        for c in gaps.values:
            links.extend([(2, 1)] * c)
            links.append((1, 1))
        return PeriodicSequence(tuple(links))
    if gaps.kind == "explicit":
        links = []
        for c in gaps.values:
            links.extend([(2, 1)] * c)
            links.append((1, 1))
        return ExplicitSequence(tuple(links)) if links else None
    horizon = 12
    links = []
    for i in range(1, horizon + 1):
        links.extend([(2, 1)] * gaps.gap(i))
        links.append((1, 1))
        if len(links) > 4096:
            break
    return ExplicitSequence(tuple(links))


# -- orbit simulation and the periodic orbit decision -----------------------------------


_ORBIT_VALUE_CAP = 10**9


def _orbit(seq: LinkSequence, k: int, m: int, p_max: int):
    """(values, resolved, horizon_hit): iterate v <- D_{L^{m+t}}(v).

    Orbit values above a large cap are treated as unresolved growth; the
    exact arithmetic is inlined to keep long simulations cheap.
    """
    values = [k]
    v = k
    for t in range(p_max):
        try:
            spec = seq.link(m + t)
        except HorizonError:
            return values, False, True
        if v:
            v = max(-((-2 * spec.m * v) // spec.n) - 1, 0)
        values.append(v)
        if v == 0:
            return values, True, False
        if v > _ORBIT_VALUE_CAP:
            return values, False, False
    return values, False, False


def orbit_decide(
    seq: LinkSequence,
    k_max: int = DEFAULT_K_MAX,
    m_max: int = DEFAULT_M_MAX,
    p_max: int = DEFAULT_P_MAX,
    collect_evidence: bool = True,
) -> ShrinkVerdict:
    """Decide through composed disc replicating functions.

    Periodic variants get a full decision: with g the one-period composite
    and a = prod(2m/n), a <= 1 forces g(k) < k for every k (each step
    satisfies f(v) < (2m/n) v), so all orbits vanish; a > 1 gives an
    explicit k0 with g(k0) >= k0, which by monotonicity pins the orbit at
    or above k0 forever.  A two-case generator whose aligned two-step
    composite telescopes to k -> k - 1 also shrinks.  Anything else is
    reported Unknown with orbit evidence; horizon exhaustion is flagged
    separately from a decision.
    """
    if k_max < 1 or m_max < 1 or p_max < 1:
        raise ValueError("horizons must be >= 1")
    info = _period_of(seq)
    if info is not None:
        verdict = _decide_periodic_orbits(seq, info, k_max)
        cross = periodic_product(seq)
        if cross.outcome != verdict.outcome:
            raise VerdictConsistencyError(
                f"orbit decision {verdict.outcome} contradicts the periodic "
                f"product criterion {cross.outcome}"
            )
        return dataclasses.replace(
            verdict, corroborating=(("periodic_product", cross.outcome),)
        )
    if isinstance(seq, GeneratorSequence) and seq.two_case:
        telescoped = _telescoping_certificate(seq)
        if telescoped is not None:
            return telescoped
    cert = {"kind": "orbit_evidence", "horizons": [k_max, m_max, p_max]}
    evidence = (
        _orbit_evidence(seq, k_max, m_max, p_max)
        if collect_evidence
        else {"skipped": "a criterion already decided this sequence"}
    )
    return ShrinkVerdict(UNKNOWN, "orbit_evidence", cert, seq, evidence=evidence)


def _orbit_evidence(seq, k_max, m_max, p_max) -> dict:
    """Aggregate orbit statistics; vectorized over k since the simulation
    is evidence only, never part of a verdict."""
    import numpy as np

    bound = seq.known_bound()
    horizon_end = m_max + p_max if bound is None else min(bound + 1, m_max + p_max)
    specs = []
    for i in range(1, horizon_end + 1):
        try:
            specs.append(seq.link(i))
        except HorizonError:
            break
    resolved = 0
    unresolved = []
    horizon = False
    longest = 0
    cap = _ORBIT_VALUE_CAP
    for m in range(1, m_max + 1):
        v = np.arange(1, k_max + 1, dtype=np.int64)
        steps = np.zeros(k_max, dtype=np.int64)
        alive = v > 0
        for t in range(p_max):
            idx = m + t - 1
            if idx >= len(specs):
                horizon = True
                break
            n, mm = specs[idx].n, specs[idx].m
            cur = v[alive]
            if not cur.size:
                break
            nxt = np.maximum(-((-2 * mm * cur) // n) - 1, 0)
            nxt = np.minimum(nxt, cap + 1)
            v[alive] = nxt
            steps[alive] += 1
            alive = alive & (v != 0) & (v <= cap)
        vanished = v == 0
        resolved += int(vanished.sum())
        if vanished.any():
            longest = max(longest, int(steps[vanished].max()))
        for k in np.nonzero(~vanished)[0][:8]:
            if len(unresolved) < 8:
                unresolved.append([int(k) + 1, m, int(v[k])])
    total = k_max * m_max
    return {
        "orbits_vanishing": resolved,
        "orbits_unresolved": total - resolved,
        "unresolved_sample": unresolved,
        "longest_vanishing_orbit": longest,
        "horizon_exhausted": horizon,
    }


def _spec_check_bound(links) -> int:
    """Finite verification range for the one-period composite."""
    a = _slope(links)
    bound = (a.numerator + a.denominator) * len(links)
    return max(1, min(bound, 100_000))


def _decide_periodic_orbits(seq, info, k_max) -> ShrinkVerdict:
    prefix_len, links = info
    links = list(links)
    a = _slope(links)
    if a <= 1:
        k_star = min(max(_spec_check_bound(links), k_max), 4096)
        for k in range(1, k_star + 1):
            if _compose_period(links, k) >= k:
                raise VerdictConsistencyError(
                    f"slope {a} <= 1 but the period composite does not descend at {k}"
                )
        trace = _trace_orbit(links, min(k_max, 8))
        cert = {
            "kind": "orbit_periodic",
            "slope": str(a),
            "descent": f"g(k) < k verified for 1 <= k <= {k_star}; "
            f"each step satisfies f(v) < (2m/n) v, so g(k) < {a} k <= k for all k",
            "checked_upto": k_star,
            "sample_orbit": trace,
        }
        return ShrinkVerdict(SHRINKS, "orbit_periodic", cert, seq)
    offsets = Fraction(0)
    running = Fraction(1)
    for spec in reversed(links):
        offsets += running
        running *= Fraction(2 * spec.m, spec.n)
    k0 = int(offsets / (a - 1)) + 1
    v = _compose_period(links, k0)
    if v < k0:
        raise VerdictConsistencyError(
            f"slope {a} > 1 but g({k0}) = {v} < {k0}"
        )
    one_period = [k0]
    value = k0
    for spec in links:
        value = nm_drf(spec)(value)
        one_period.append(value)
    cert = {
        "kind": "orbit_periodic",
        "slope": str(a),
        "offset_sum": str(offsets),
        "k0": k0,
        "period_trace_from_k0": one_period,
        "monotone_argument": "g is monotone with g(k0) >= k0, so the orbit of "
        "k0 from the start of any period never drops below k0",
        "start_index": prefix_len + 1,
    }
    return ShrinkVerdict(DOES_NOT_SHRINK, "orbit_periodic", cert, seq)


def _trace_orbit(links, k: int) -> list[int]:
    values = [k]
    v = k
    for _ in range(200):
        for spec in links:
            v = nm_drf(spec)(v)
            values.append(v)
        if v == 0:
            break
    return values[:64]


def _telescoping_certificate(seq: GeneratorSequence) -> Optional[ShrinkVerdict]:
    """Check both pair alignments for a two-step composite of k -> k - 1."""
    for first, second, shift, label in (
        ("odd", "even", 1, "odd_then_even"),
        ("even", "odd", 0, "even_then_odd"),
    ):
        data = _telescoping_data(seq, first, second, shift)
        if data is None:
            continue
        c_poly, identity_text = data
        checked = _verify_telescoping_numerically(seq, first, 50, 1000)
        if not checked:
            raise VerdictConsistencyError(
                "telescoping identity verified symbolically but fails numerically"
            )
        cert = {
            "kind": "telescoping_pairs",
            "alignment": label,
            "pair_slope": c_poly.text("s"),
            "identity": identity_text,
            "numeric_check": "two-step composite is k-1 (k-2 when the pair "
            "slope is 1) for s <= 50, k <= 1000",
            "conclusion": "orbits decrease by at least one per aligned pair, "
            "so every orbit reaches 0",
        }
        return ShrinkVerdict(SHRINKS, "telescoping_pairs", cert, seq)
    return None


def _telescoping_data(seq: GeneratorSequence, first: str, second: str, shift: int):
    if first == "odd":
        n1, m1 = seq.odd_n, seq.odd_m
        n2, m2 = seq.even_n.shifted_arg(shift), seq.even_m.shifted_arg(shift)
        start = 0
    else:
        n1, m1 = seq.even_n, seq.even_m
        n2, m2 = seq.odd_n.shifted_arg(shift), seq.odd_m.shifted_arg(shift)
        start = 1
    c = m1.scaled(2).divide_exact(n1)
    if c is None:
        return None
    ok, _ = c.ge_from(1, start)
    if not ok:
        return None
    if n2 != m2.scaled(2) * c:
        return None
    identity = (
        f"2*m_first = ({c.text('s')}) * n_first and "
        f"n_second = 2*m_second * ({c.text('s')})"
    )
    return c, identity


def _verify_telescoping_numerically(seq, first, s_max, k_max) -> bool:
    """The composite over an aligned pair must be exactly k-1, except that
    a pair slope of 1 gives max(k-2, 0); both decrement."""
    for s in range(0 if first == "odd" else 1, s_max + 1):
        i = 2 * s + 1 if first == "odd" else 2 * s
        if i < 1:
            continue
        spec1, spec2 = seq.link(i), seq.link(i + 1)
        f1, f2 = nm_drf(spec1), nm_drf(spec2)
        c = 2 * spec1.m // spec1.n
        for k in (1, 2, 3, 5, 17, k_max):
            expected = k - 1 if c > 1 else max(k - 2, 0)
            if f2(f1(k)) != expected:
                return False
    return True


# -- aggregation ---------------------------------------------------------------------


_PRIORITY = (
    "periodic_product",
    "sher_armentrout",
    "bounded_widths",
    "convergent_tau_series",
    "divergent_weighted_tau_series",
    "orbit_periodic",
    "telescoping_pairs",
)


def decide(
    seq: LinkSequence,
    k_max: int = DEFAULT_K_MAX,
    m_max: int = DEFAULT_M_MAX,
    p_max: int = DEFAULT_P_MAX,
) -> ShrinkVerdict:
    """Run every applicable criterion, enforce agreement, and return the
    strongest verdict (Unknown with orbit evidence when nothing fires)."""
    verdicts: list[ShrinkVerdict] = []
    for op in (
        periodic_product,
        sher_armentrout,
        bounded_widths,
        convergent_tau_series,
        divergent_weighted_tau_series,
    ):
        v = op(seq)
        if v is not None:
            verdicts.append(v)
    orbit_verdict = orbit_decide(
        seq, k_max, m_max, p_max, collect_evidence=not verdicts
    )
    if orbit_verdict.outcome != UNKNOWN:
        verdicts.append(orbit_verdict)
    decisive = [v for v in verdicts if v.outcome != UNKNOWN]
    outcomes = {v.outcome for v in decisive}
    if len(outcomes) > 1:
        raise VerdictConsistencyError(
            f"contradictory verdicts: "
            f"{[(v.criterion, v.outcome) for v in decisive]}"
        )
    if not decisive:
        return orbit_verdict
    decisive.sort(key=lambda v: _PRIORITY.index(v.criterion))
    primary = decisive[0]
    corroborating = tuple(
        (v.criterion, v.outcome) for v in decisive[1:]
    ) + primary.corroborating
    return dataclasses.replace(primary, corroborating=corroborating)


# -- certificate re-checking ------------------------------------------------------------


def verify_certificate(verdict: ShrinkVerdict) -> bool:
    """Independently re-evaluate a verdict's certificate from its sequence.

    Every arithmetic claim stored in the certificate is recomputed from
    the raw sequence; any mismatch, or an outcome that does not follow
    from the certified facts, yields False.
    """
    try:
        return _verify(verdict)
    except (CertificateError, VerdictConsistencyError, HorizonError, KeyError):
        return False
    except (ValueError, TypeError):
        return False


def _verify(verdict: ShrinkVerdict) -> bool:
    cert = verdict.certificate
    kind = cert.get("kind")
    seq = verdict.sequence
    if kind == "periodic_product":
        info = _period_of(seq)
        if info is None or len(info[1]) != cert["period"]:
            return False
        taus = [tau(spec) for spec in info[1]]
        if [str(t) for t in taus] != cert["taus"]:
            return False
        product = Fraction(1)
        for t in taus:
            product *= t
        if str(product) != cert["product"]:
            return False
        expected = SHRINKS if product >= 1 else DOES_NOT_SHRINK
        return verdict.outcome == expected
    if kind == "sher_armentrout":
        if verdict.outcome != DOES_NOT_SHRINK:
            return False
        if cert["scope"] == "finite":
            info = _period_of(seq)
            if info is None:
                return False
            prefix_len, links = info
            specs = (list(seq.prefix) if prefix_len else []) + list(links)
            if [[s.n, s.m] for s in specs] != cert["checked"]:
                return False
            return all(s.n < 2 * s.m for s in specs)
        if cert["scope"] == "symbolic":
            if not isinstance(seq, GeneratorSequence):
                return False
            for name, n_poly, m_poly, start in _generator_branches(seq):
                margin = m_poly.scaled(2) - n_poly - IntPoly.const(1)
                ok, _ = margin.ge_from(0, start)
                if not ok:
                    return False
            return True
        return False
    if kind == "convergent_tau_series":
        if verdict.outcome != DOES_NOT_SHRINK:
            return False
        method = cert["method"]
        if method == "periodic_geometric":
            exact = _periodic_exact_sum(seq)
            if exact is None:
                return False
            total, r, _ = exact
            return (
                str(total) == cert["exact_sum"]
                and str(r) == cert["block_product"]
                and cert["k0"] == int(total) + 1
                and cert["k0"] > total
            )
        if method == "geometric_ratio":
            gc = GeometricRatio(
                r=Fraction(cert["r"]), i0=cert["i0"], block=cert.get("block", 1)
            )
            _validate_geometric(seq, gc)
            bound, k0, prefix = _geometric_bound(seq, gc)
            return (
                str(bound) == cert["bound"]
                and k0 == cert["k0"]
                and [str(p) for p in prefix] == cert["prefix_partial_sums"]
                and Fraction(cert["k0"]) > bound
            )
        if method == "user_bound":
            bound = Fraction(cert["bound"])
            partials = _partial_products(_taus(seq, cert.get("probed_to", _PROBE)))
            acc = Fraction(0)
            for p in partials:
                acc += p
                if acc > bound:
                    return False
            return cert["k0"] == int(bound) + 1 and cert.get("assumed") is True
        return False
    if kind == "divergent_weighted_tau_series":
        if verdict.outcome != SHRINKS:
            return False
        method = cert["method"]
        if method == "periodic_product":
            info = _period_of(seq)
            if info is None:
                return False
            product = Fraction(1)
            for spec in info[1]:
                product *= tau(spec)
            if str(product) != cert["product"] or product < 1:
                return False
            delta, n_max = _periodic_term_floor(seq)
            return str(delta / n_max) == cert["term_floor"]
        if method == "harmonic_comparison":
            _validate_harmonic(
                seq, HarmonicComparison(c=Fraction(cert["c"]), i0=cert["i0"])
            )
            return True
        return False
    if kind == "bounded_widths":
        if _sup_widths(seq) != cert["sup_n"]:
            return False
        inner = dict(cert["inner"])
        inner_verdict = ShrinkVerdict(
            outcome=(
                DOES_NOT_SHRINK
                if cert["decision"] == "tau series converges"
                else SHRINKS
            ),
            criterion=inner["kind"],
            certificate=inner,
            sequence=seq,
        )
        if inner_verdict.outcome != verdict.outcome:
            return False
        return _verify(inner_verdict)
    if kind == "ancel_starbird":
        return _verify_ancel_starbird(verdict)
    if kind == "orbit_periodic":
        return _verify_orbit_periodic(verdict)
    if kind == "telescoping_pairs":
        return _verify_telescoping(verdict)
    if kind == "orbit_evidence":
        return verdict.outcome == UNKNOWN
    return False


def _verify_ancel_starbird(verdict: ShrinkVerdict) -> bool:
    cert = verdict.certificate
    method = cert["method"]
    if method == "undetermined":
        return verdict.outcome == UNKNOWN
    if method == "periodic_geometric":
        values = tuple(cert["gap_period"])
        gaps = GapSequence.periodic(values)
        p = len(values)
        one_period = sum((gaps.term(i) for i in range(1, p + 1)), Fraction(0))
        total = one_period / (1 - Fraction(1, 2**p))
        if str(total) != cert["exact_sum"]:
            return False
        return verdict.outcome == DOES_NOT_SHRINK
    if method == "zero_gaps":
        return verdict.outcome == DOES_NOT_SHRINK
    if method == "ratio_test":
        from .sequences import parse_poly

        poly = parse_poly(cert["gap_term"].replace(" ", ""))
        r = Fraction(cert["r"])
        i0 = cert["i0"]
        margin = poly.scaled(2 * r.numerator) - poly.shifted_arg(1).scaled(
            r.denominator
        )
        ok, _ = margin.ge_from(0, i0)
        if not ok:
            return False
        gaps = GapSequence.from_poly(poly)
        prefix = sum((gaps.term(i) for i in range(1, i0)), Fraction(0))
        bound = prefix + gaps.term(i0) / (1 - r)
        return str(bound) == cert["bound"] and verdict.outcome == DOES_NOT_SHRINK
    if method == "term_bound":
        from .sequences import parse_poly

        coeff = cert["two_pow_coeff"]
        if Fraction(cert["delta"]) != coeff or coeff < 1:
            return False
        extra_text = cert["extra_term"].replace(" ", "")
        extra = IntPoly(()) if extra_text == "0" else parse_poly(extra_text)
        ok, _ = extra.ge_from(0, cert["i0"])
        # terms are coeff + extra(i)/2^i >= coeff >= 1, so the series diverges
        return ok and verdict.outcome == SHRINKS
    return False


def _verify_orbit_periodic(verdict: ShrinkVerdict) -> bool:
    cert = verdict.certificate
    info = _period_of(verdict.sequence)
    if info is None:
        return False
    links = list(info[1])
    a = _slope(links)
    if str(a) != cert["slope"]:
        return False
    if verdict.outcome == SHRINKS:
        if a > 1:
            return False
        upto = min(cert["checked_upto"], 4096)
        for k in range(1, upto + 1):
            if _compose_period(links, k) >= k:
                return False
        trace = cert.get("sample_orbit", [])
        return _replay_trace(links, trace)
    if verdict.outcome == DOES_NOT_SHRINK:
        if a <= 1:
            return False
        k0 = cert["k0"]
        if _compose_period(links, k0) < k0:
            return False
        trace = cert.get("period_trace_from_k0", [])
        if trace and trace[0] != k0:
            return False
        return _replay_trace(links, trace, single_period=True)
    return False


def _replay_trace(links, trace, single_period=False) -> bool:
    if not trace:
        return True
    v = trace[0]
    pos = 1
    steps = links if single_period else links * ((len(trace) // len(links)) + 1)
    for spec in steps:
        if pos >= len(trace):
            break
        v = nm_drf(spec)(v)
        if trace[pos] != v:
            return False
        pos += 1
    return pos == len(trace)


def _verify_telescoping(verdict: ShrinkVerdict) -> bool:
    seq = verdict.sequence
    if not isinstance(seq, GeneratorSequence) or not seq.two_case:
        return False
    cert = verdict.certificate
    first = "odd" if cert["alignment"] == "odd_then_even" else "even"
    second = "even" if first == "odd" else "odd"
    shift = 1 if first == "odd" else 0
    data = _telescoping_data(seq, first, second, shift)
    if data is None:
        return False
    c_poly, _ = data
    if c_poly.text("s") != cert["pair_slope"]:
        return False
    return (
        _verify_telescoping_numerically(seq, first, 20, 200)
        and verdict.outcome == SHRINKS
    )
