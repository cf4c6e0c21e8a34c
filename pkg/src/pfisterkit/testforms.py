"""Test forms for a prime divisor of k1(u)(x), and the sampled keyprop check.

Only rational-function towers K = k1(t2, ..., t_{d-1})(x) are handled, with
the divisor given by an irreducible polynomial in x (or the degree place).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import (AttemptsExhausted, EvenValue, HypothesisFailed, InseparableResidue, NotFound,
                     NotGeometric, PfisterError, PrecisionExhausted, UnsupportedField)
from .factor import irreducible_factors, roots
from .fields import QQ, Rationals, RationalFunctionField, SimpleExtension
from .finite_field import FiniteField
from .hilbert import e_invariant_2fold
from .local_fields import PadicNumber, Qp, residue_mod, vp
from .nice import ExtensionDescriptor, nice_construct
from .poly import Poly
from .quadforms import (ANISOTROPIC, UNKNOWN, DiagForm, PfisterPresentation,
                        _default_base_decider, expand, isotropy_local)
from .valuations import (CompositeValuation, DegreeValuation, GaussValuation, LaurentTower, PadicPlace,
                         PadicValuation, PolyValuation, finite_support, hensel_witness)

DEFAULT_ATTEMPTS = 50
DEFAULT_PRECISION = 16
EPS_RANGE = 9


@dataclass
class Parameters:
    k1: object
    u: tuple
    t: tuple
    names: tuple
    residue_field: object


@dataclass
class TestFormSpec:
    field: object
    valuation: object
    k1: object
    u: tuple
    t: tuple
    eps: tuple
    a1: object
    a0: object
    a_d: object
    entries: tuple
    nice: object
    extension: object
    tower: object
    verdict: object
    attempts: int
    transcript: list = dc_field(default_factory=list)
    split_place: object = None

    @property
    def presentation(self) -> PfisterPresentation:
        return PfisterPresentation(self.entries, self.field)

    @property
    def tail_product(self):
        acc = self.field.one
        for a in self.entries[1:-1]:
            acc = acc * a
        return acc

    def as_dict(self):
        return {"field": str(self.field), "valuation": str(self.valuation), "k1": str(self.k1),
                "u": list(self.u), "t": list(self.t), "eps": list(self.eps),
                "a1": self.a1, "a0": self.a0, "a_d": self.a_d, "entries": list(self.entries),
                "nice": self.nice, "extension": str(self.extension), "tower": str(self.tower),
                "verdict": self.verdict, "attempts": self.attempts, "split_place": self.split_place,
                "transcript": self.transcript}


# ----------------------------------------------------------------------
# parameters


def choose_parameters(w) -> Parameters:
    """k1 and w-unit lifts u of a separating transcendence basis of the residue field; t = u^2 - u."""
    if isinstance(w, (PadicValuation, GaussValuation)) or isinstance(w, PadicPlace):
        raise NotGeometric("a p-adic valuation changes the characteristic")
    if not isinstance(w, (PolyValuation, DegreeValuation)):
        raise UnsupportedField(f"choose_parameters needs a divisor of k1(u)(x), got {w}")
    K = w.domain
    if isinstance(w, PolyValuation) and w.pi.derivative().is_zero():
        raise InseparableResidue(f"residue field of {w} is inseparable over the coefficient field")
    others = tuple(v for v in K.variables if v != w.var)
    if K.characteristic == 0:
        k1 = QQ
        names = others
    else:
        if not others:
            raise UnsupportedField("characteristic p needs Kronecker dimension at least 2")
        k1 = K.subfield(others[:1])
        if len(others) == 1:
            k1 = w.coefficient_field
        names = others[1:]
    u = tuple(K.gen(n) for n in names)
    t = tuple(x * x - x for x in u)
    for ti in t:
        if w.valuation(ti) != 0:
            raise HypothesisFailed(f"t = {ti} is not a w-unit")
    return Parameters(k1, u, t, names, w.residue_field)


# ----------------------------------------------------------------------
# embedding a residue extension into a completion at a split place


def _padic_root(g: Poly, p: int, digits: int):
    """Integer root of g modulo p^digits lifted from the first simple root mod p."""
    F = FiniteField(p)
    red = Poly(F, [F(residue_mod(c, p)) for c in g.coeffs], g.var)
    dg = g.derivative()
    for r in roots(red):
        x = int(r.symmetric()) % p
        if residue_mod(dg(Fraction(x)), p) == 0:
            continue
        m = p
        while m < p ** digits:
            m = min(m * m, p ** digits)
            fx, dfx = g(Fraction(x)), dg(Fraction(x))
            x = (x - residue_mod(fx, p, digits) * pow(residue_mod(dfx, p, digits), -1, p ** digits)) % m
        return x
    raise NotFound(f"{g} has no simple root modulo {p}")


def split_place_decider(split_place, digits: int = 24):
    """Base decider for residue forms over Q[r]/(g), through Q_w at a split place w.

    Anisotropy over Q_w implies anisotropy over the subfield; isotropy there
    proves nothing, so it is reported as unknown.
    """
    def decide(form: DiagForm, base):
        if not isinstance(base, SimpleExtension) or not isinstance(base.base, Rationals):
            return _default_base_decider(form, base)
        p = split_place.p
        rho = _padic_root(base.modulus, p, digits)
        coeffs = []
        for c in form.coeffs:
            cs = list(c.poly.coeffs)
            exact = sum((Fraction(a) * rho ** i for i, a in enumerate(cs)), Fraction(0))
            floor = min(vp(a, p) for a in cs if a != 0)
            v = vp(exact, p)
            rel = digits + floor - v
            if exact == 0 or rel <= 2:
                raise PrecisionExhausted("embedded coefficient is zero to the working precision")
            coeffs.append(PadicNumber.from_rational(p, exact, rel))
        verdict = isotropy_local(DiagForm(tuple(coeffs), QQ), Qp(p), want_witness=False)
        status = ANISOTROPIC if verdict.anisotropic else UNKNOWN
        return status, {"kind": "SplitPlaceEmbedding", "place": split_place.label(), "root_mod": f"{rho} mod {p}^{digits}",
                        "local_status": verdict.status}
    return decide


# ----------------------------------------------------------------------
# tower construction


def _tower_stages(w, params, eps):
    """Stage list: w, then one stage per u_i (outer to inner), and the final residue field."""
    stages = [w]
    R = w.residue_field
    for name, e in reversed(list(zip(params.names, eps))):
        if not isinstance(R, RationalFunctionField) or name not in R.variables:
            raise UnsupportedField(f"cannot place a stage for {name} on {R}")
        cf = R.coefficient_field(name)
        g = Poly(cf, [-cf(e), -cf.one, cf.one], name)
        facs = irreducible_factors(g)
        st = PolyValuation(R, name, facs[0])
        stages.append(st)
        R = st.residue_field
    return stages, R


def _eps_candidates(k1, rng, count):
    if isinstance(k1, Rationals):
        while True:
            out = []
            while len(out) < count:
                e = rng.randint(-EPS_RANGE, EPS_RANGE)
                if e:
                    out.append(Fraction(e))
            yield tuple(out)
    else:
        F = k1.coefficient_field(k1.variables[0])
        var = k1.gen(k1.variables[0])
        while True:
            out = []
            for _ in range(count):
                c0, c1 = rng.randrange(F.p), rng.randrange(F.p)
                if c0 == 0 and c1 == 0:
                    c0 = 1
                out.append(k1(c0) + k1(c1) * var)
            yield tuple(out)


def _eps_places(eps, k1):
    return set(finite_support([e for e in eps if e], k1)) if eps else set()


def _extension_for(R, k1):
    if R == k1:
        return ExtensionDescriptor.trivial(k1)
    if isinstance(R, SimpleExtension) and R.base == k1:
        return ExtensionDescriptor(k1, Poly(k1, R.modulus.coeffs, "y"))
    raise UnsupportedField(f"residue field {R} is not a simple extension of {k1}")


def tower_verdict(spec_like, precision, decider):
    tower = LaurentTower(CompositeValuation(spec_like["stages"]) if len(spec_like["stages"]) > 1
                         else spec_like["stages"][0], precision)
    form = expand(PfisterPresentation(spec_like["entries"], spec_like["field"]))
    return tower, isotropy_local(form, tower, base_decider=decider)


def build_test_form(w, a_d, L=None, attempts: int = DEFAULT_ATTEMPTS, seed: int = 0,
                    precision: int = DEFAULT_PRECISION) -> TestFormSpec:
    """Rejection-sample eps until the test form is certified anisotropic over the tower."""
    if L is not None and not (isinstance(L, ExtensionDescriptor) and L.degree == 1):
        raise UnsupportedField("only the trivial extension L = K is supported")
    K = w.domain
    a_d = K(a_d)
    vd = w.valuation(a_d)
    if vd % 2 == 0:
        raise EvenValue(f"w(a_d) = {vd} is even")
    params = choose_parameters(w)
    k1 = params.k1
    rng = random.Random(seed)
    gen = _eps_candidates(k1, rng, len(params.u))
    transcript = []
    for attempt in range(1, attempts + 1):
        eps = next(gen)
        row = {"attempt": attempt, "eps": list(eps)}
        transcript.append(row)
        try:
            stages, R = _tower_stages(w, params, eps)
            ext = _extension_for(R, k1)
            P = _eps_places(eps, k1)
            res = nice_construct(ext, P)
        except (PfisterError, StopIteration) as exc:
            row["rejected"] = f"{type(exc).__name__}: {exc}"
            continue
        a1, a0 = K(res.a1), K(res.a0)
        if not all(_unit_where_a1_positive(e, res.a1, k1) for e in eps):
            row["rejected"] = "eps is not a unit where a1 has positive value"
            continue
        entries = (a_d,) + tuple(ti - K(e) for ti, e in reversed(list(zip(params.t, eps)))) + (a1, a0)
        decider = split_place_decider(res.split_place) if isinstance(k1, Rationals) else None
        data = {"stages": stages, "entries": entries, "field": K}
        try:
            tower, verdict = tower_verdict(data, precision, decider)
        except PfisterError as exc:
            row["rejected"] = f"{type(exc).__name__}: {exc}"
            continue
        row["tower"] = str(tower)
        row["status"] = verdict.status
        if not verdict.anisotropic:
            row["rejected"] = f"tower verdict {verdict.status}"
            continue
        verdict.certificate["tail_symbols"] = e_invariant_2fold(res.a1, res.a0, k1)
        return TestFormSpec(K, w, k1, tuple(params.u), tuple(params.t), tuple(eps), a1, a0, a_d, entries,
                            res.certificate, ext, tower, verdict, attempt, transcript, res.split_place)
    raise AttemptsExhausted(f"no eps accepted in {attempts} attempts")


def _unit_where_a1_positive(e, a1, k1):
    if isinstance(k1, Rationals):
        return all(vp(e, pl.p) == 0 for pl in finite_support([a1], k1) if vp(a1, pl.p) > 0)
    from .valuations import place_valuation
    for pl in finite_support([a1], k1):
        v = place_valuation(pl, k1)
        if v.valuation(a1) > 0 and v.valuation(e) != 0:
            return False
    return True


def recheck(spec: TestFormSpec, factor: int = 2):
    """Recompute the tower verdict from scratch at a multiplied precision."""
    decider = split_place_decider(spec.split_place, digits=48) if isinstance(spec.k1, Rationals) else None
    data = {"stages": spec.tower.stages, "entries": spec.entries, "field": spec.field}
    _, verdict = tower_verdict(data, spec.tower.precision * factor, decider)
    return verdict


# ----------------------------------------------------------------------
# keyprop


@dataclass
class KeypropReport:
    passed: bool
    checks: list
    note: str = ("theta is sampled from k1[t]; algebraic elements of the relative closure "
                 "of k1(t) are not sampled")

    def as_dict(self):
        return {"passed": self.passed, "checks": self.checks, "note": self.note}


def default_thetas(spec: TestFormSpec, seed: int = 0, n_random: int = 5):
    """tail^N for N = 1, 2, 3, then small random k1-polynomial values."""
    K = spec.field
    tail = spec.tail_product
    out = [tail ** n for n in (1, 2, 3)]
    rng = random.Random(seed)
    k1 = spec.k1
    while len(out) < 3 + n_random:
        if isinstance(k1, Rationals):
            c = rng.randint(-20, 20)
            if c:
                out.append(K(c))
        else:
            var = k1.gen(k1.variables[0])
            F = k1.coefficient_field(k1.variables[0])
            cs = [rng.randrange(F.p) for _ in range(3)]
            val = k1(cs[0]) + k1(cs[1]) * var + k1(cs[2]) * var * var
            if val:
                out.append(K(val))
    return out


def keyprop_check(spec: TestFormSpec, tau, thetas=None, seed: int = 0) -> KeypropReport:
    """Direction (ii) to (i), sampled: the form stays anisotropic over K(beta, alpha)."""
    K = spec.field
    w = spec.valuation
    tau = K(tau)
    if not tau:
        raise HypothesisFailed("tau must be nonzero")
    vd = w.valuation(spec.a_d)
    vt = w.valuation(tau * tau)
    if not vd > 0:
        raise HypothesisFailed(f"w(a_d) > 0 fails: w(a_d) = {vd}")
    if vd % 2 == 0:
        raise HypothesisFailed(f"w(a_d) odd fails: w(a_d) = {vd}")
    if not vt > vd:
        raise HypothesisFailed(f"w(tau^2) > w(a_d) fails: {vt} <= {vd}")
    thetas = thetas if thetas is not None else default_thetas(spec, seed)
    decider = split_place_decider(spec.split_place) if isinstance(spec.k1, Rationals) else None
    data = {"stages": spec.tower.stages, "entries": spec.entries, "field": K}
    checks = []
    passed = True
    beta_c = tau * tau / spec.a_d
    for theta in thetas:
        theta = K(theta)
        if not theta:
            raise HypothesisFailed("theta must be nonzero")
        alpha_c = spec.a_d / (theta * theta)
        row = {"theta": theta, "w(tau^2/a_d)": w.valuation(beta_c), "w(a_d/theta^2)": w.valuation(alpha_c)}
        ok = row["w(tau^2/a_d)"] > 0 and row["w(a_d/theta^2)"] > 0
        for name, c in (("beta", beta_c), ("alpha", alpha_c)):
            # X^2 - X - c has a simple residue root when w(c) > 0
            try:
                _, rep = hensel_witness(Poly(K, [-c, -K.one, K.one], "X"), w)
                row[f"hensel_{name}"] = rep.as_dict()
            except PfisterError as exc:
                row[f"hensel_{name}"] = f"{type(exc).__name__}: {exc}"
                ok = False
        _, verdict = tower_verdict(data, spec.tower.precision, decider)
        row["tower_status"] = verdict.status
        ok = ok and verdict.anisotropic
        row["passed"] = ok
        passed = passed and ok
        checks.append(row)
    return KeypropReport(passed, checks)
