"""Seeded verification batteries over the algebra, group, and geometry layers.

Every suite draws its randomness from its own ``Random`` instance keyed by
the run seed and the suite name, so a report is reproducible regardless of
which other suites run alongside it.  Suites count failing cases rather
than raising; only ``flats`` is numerical, and it alone reports a residual.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .base_lie import finite_element
from .cartan import named_matrix
from .geometry import (
    OsakaType,
    curvature,
    curvature_report,
    dualize,
    osaka_classify,
)
from .group_action import (
    ad_exp_check,
    adjoint,
    flat_solver,
    weyl_orbit,
    weyl_reflect,
    weyl_singular,
    word_mul,
)
from .kac_moody import (
    affine_generators,
    apply_involution,
    c_element,
    d_element,
    eigenspace_split,
    from_loop,
    involution_spec,
    km_bracket,
    km_element,
    lorentz_form,
    serre_check,
)
from .loop_algebra import (
    averaged_killing,
    cocycle,
    laurent_loop,
    loop_bracket,
    loop_derivative,
    monomial,
)
from .sampling import (
    rand_compact_km,
    rand_compact_loop,
    rand_fraction,
    rand_km,
    rand_loop,
    rand_nilpotent_loop,
    rand_word,
)
from .scalars import EC


@dataclass(frozen=True)
class SuiteResult:
    name: str
    cases_run: int
    failures: int
    max_residual: Optional[float] = None


@dataclass(frozen=True)
class VerifyReport:
    suites: tuple
    seed: int
    config: dict

    @property
    def ok(self) -> bool:
        return all(s.failures == 0 for s in self.suites)


# ---------------------------------------------------------------------------
# fixed example data
# ---------------------------------------------------------------------------


def su2_compact_basis() -> list:
    """Independent spanning set of the degree <= 1 compact form of sl2."""
    e = finite_element([[0, 1], [0, 0]])
    f = finite_element([[0, 0], [1, 0]])
    h = finite_element([[1, 0], [0, -1]])
    i1 = EC(0, 1)
    deg0 = [e - f, h.scale(i1), (e + f).scale(i1)]
    pairs = [
        laurent_loop({1: e, -1: -f}),
        laurent_loop({1: e.scale(i1), -1: f.scale(i1)}),
        laurent_loop({1: h, -1: -h}),
        laurent_loop({1: h.scale(i1), -1: h.scale(i1)}),
    ]
    out = [km_element(monomial(x, 0)) for x in deg0]
    out.extend(km_element(p) for p in pairs)
    out.append(c_element().scale(i1))
    out.append(d_element().scale(i1))
    return out


def su2_compact_split() -> tuple:
    """K/P eigenspace split of the compact basis under the second-kind
    conjugate-linear involution; input for dualize and osaka_classify."""
    spec = involution_spec("second", 2, conjugate=True)
    return eigenspace_split(spec, su2_compact_basis())


def _rational_combo(rng: random.Random, basis: list):
    out = None
    for v in basis:
        term = v.scale(EC(rand_fraction(rng)))
        out = term if out is None else out + term
    return out


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def suite_jacobi(rng: random.Random, trials: int) -> SuiteResult:
    failures = 0
    for t in range(trials):
        n = 3 if t % 5 == 4 else 2
        x, y, z = (rand_km(rng, n, 2) for _ in range(3))
        cyc = (
            km_bracket(x, km_bracket(y, z))
            + km_bracket(y, km_bracket(z, x))
            + km_bracket(z, km_bracket(x, y))
        )
        if not cyc.is_zero():
            failures += 1
    return SuiteResult("jacobi", trials, failures)


def suite_cocycle(rng: random.Random, trials: int) -> SuiteResult:
    failures = 0
    for _ in range(trials):
        f, g, h = (rand_loop(rng, 2, 2) for _ in range(3))
        ok = (cocycle(f, g) + cocycle(g, f)).is_zero()
        two = (
            cocycle(loop_bracket(f, g), h)
            + cocycle(loop_bracket(g, h), f)
            + cocycle(loop_bracket(h, f), g)
        )
        ok = ok and two.is_zero()
        ok = ok and cocycle(f, g) == averaged_killing(loop_derivative(f), g)
        if not ok:
            failures += 1
    return SuiteResult("cocycle", trials, failures)


def suite_derivation(rng: random.Random, trials: int) -> SuiteResult:
    d = d_element()
    failures = 0
    for _ in range(trials):
        f, g = rand_loop(rng, 2, 2), rand_loop(rng, 2, 2)
        lhs = loop_derivative(loop_bracket(f, g))
        rhs = loop_bracket(loop_derivative(f), g) + loop_bracket(f, loop_derivative(g))
        ok = (lhs - rhs).is_zero()
        dx = km_bracket(d, from_loop(f))
        ok = ok and (dx.loop - loop_derivative(f)).is_zero()
        ok = ok and dx.r_c.is_zero() and dx.r_d.is_zero()
        if not ok:
            failures += 1
    return SuiteResult("derivation", trials, failures)


def suite_serre(rng: random.Random, trials: int, types=("A~1", "A~2")) -> SuiteResult:
    cases = failures = 0
    for name in types:
        gens = affine_generators(name)
        A = named_matrix(name)
        m = len(gens)
        for i in range(m):
            for j in range(m):
                ti, tj = gens[i], gens[j]
                checks = [km_bracket(ti.h, tj.h).is_zero()]
                ef = km_bracket(ti.e, tj.f)
                checks.append(
                    (ef - ti.h).is_zero() if i == j else ef.is_zero()
                )
                aji = EC(A[j, i])
                checks.append(
                    (km_bracket(ti.h, tj.e) - tj.e.scale(aji)).is_zero()
                )
                checks.append(
                    (km_bracket(ti.h, tj.f) + tj.f.scale(aji)).is_zero()
                )
                cases += len(checks)
                failures += sum(1 for ok in checks if not ok)
        for entry in serre_check(gens, A):
            cases += 1
            if not entry["is_zero"]:
                failures += 1
    return SuiteResult("serre", cases, failures)


def suite_metric(rng: random.Random, trials: int) -> SuiteResult:
    c, d = c_element(), d_element()
    fixed = [
        lorentz_form(c, d) == EC(-1),
        lorentz_form(c, c).is_zero(),
        lorentz_form(d, d).is_zero(),
        lorentz_form(c + d, c + d) == EC(-2),
    ]
    failures = sum(1 for ok in fixed if not ok)
    for _ in range(trials):
        x, y, z = (rand_km(rng, 2, 2) for _ in range(3))
        ok = lorentz_form(x, y) == lorentz_form(y, x)
        inv = lorentz_form(km_bracket(z, x), y) + lorentz_form(x, km_bracket(z, y))
        if not (ok and inv.is_zero()):
            failures += 1
    return SuiteResult("metric", len(fixed) + trials, failures)


def suite_ad_invariance(rng: random.Random, trials: int) -> SuiteResult:
    c = c_element()
    failures = 0
    for _ in range(trials):
        g = rand_word(rng, n=2, max_len=3, rotations=True)
        h = rand_word(rng, n=2, max_len=2, rotations=True)
        x, y = rand_km(rng, 2, 1), rand_km(rng, 2, 1)
        ax, ay = adjoint(g, x), adjoint(g, y)
        ok = lorentz_form(ax, ay) == lorentz_form(x, y)
        ok = ok and (adjoint(g, c) - c).is_zero()
        ok = ok and ax.r_d == x.r_d
        ok = ok and (adjoint(g, km_bracket(x, y)) - km_bracket(ax, ay)).is_zero()
        both = adjoint(word_mul(g, h), x) - adjoint(g, adjoint(h, x))
        ok = ok and both.is_zero()
        if not ok:
            failures += 1
    return SuiteResult("ad-invariance", trials, failures)


def suite_ad_exp(rng: random.Random, trials: int) -> SuiteResult:
    failures = 0
    for t in range(trials):
        n = 3 if t % 4 == 3 else 2
        payload = rand_nilpotent_loop(rng, n=n, degmax=1)
        x = rand_km(rng, n, 1)
        if not ad_exp_check(payload, x):
            failures += 1
    return SuiteResult("ad-exp", trials, failures)


def suite_curvature(rng: random.Random, trials: int) -> SuiteResult:
    failures = 0
    for _ in range(trials):
        sample = tuple(rand_km(rng, 2, 1) for _ in range(3))
        rep = curvature_report([sample])
        if not (rep.bianchi_ok and all(rep.symmetry_ok) and rep.estimate_ok):
            failures += 1
    for _ in range(trials):
        g, h = rand_compact_km(rng, 2, 1), rand_compact_km(rng, 2, 1)
        plane = lorentz_form(curvature(g, h, g), h)
        if not plane.is_real() or plane.re < 0:
            failures += 1
    return SuiteResult("curvature", 2 * trials, failures)


def suite_duality(rng: random.Random, trials: int) -> SuiteResult:
    split = su2_compact_split()
    k_basis, p_basis = split
    i1 = EC(0, 1)
    failures = 0
    for _ in range(trials):
        p = _rational_combo(rng, p_basis)
        k = _rational_combo(rng, k_basis)
        ok = (dualize(p, split) - p.scale(i1)).is_zero()
        ok = ok and (dualize(k, split) - k).is_zero()
        g = rand_compact_km(rng, 2, 1)
        plane = lorentz_form(curvature(g, p, g), p)
        flipped = lorentz_form(curvature(g, p.scale(i1), g), p.scale(i1))
        ok = ok and (plane + flipped).is_zero()
        if not ok:
            failures += 1
    # applying the dual split (K, iP) undoes the rotation up to sign on P
    p = p_basis[0]
    dual_split = (k_basis, [v.scale(i1) for v in p_basis])
    twice = dualize(dualize(p, split), dual_split)
    extra_ok = (twice + p).is_zero()
    return SuiteResult("duality", trials + 1, failures + (0 if extra_ok else 1))


def suite_weyl(rng: random.Random, trials: int) -> SuiteResult:
    failures = 0
    for _ in range(trials):
        x = rand_fraction(rng)
        ok = weyl_reflect(0, x) == -x
        ok = ok and weyl_reflect(1, x) == 2 - x
        ok = ok and weyl_reflect(1, weyl_reflect(0, x)) == x + 2
        ok = ok and weyl_reflect(0, weyl_reflect(0, x)) == x
        if not ok:
            failures += 1
    orbit = weyl_orbit(Fraction(1, 2), 2)
    expect = {Fraction(1, 2), Fraction(-1, 2), Fraction(3, 2),
              Fraction(5, 2), Fraction(-3, 2)}
    if set(orbit) != expect:
        failures += 1
    sing = [weyl_singular(Fraction(k), 8) for k in range(-3, 4)]
    if not all(sing):
        failures += 1
    if weyl_singular(Fraction(1, 2), 8) or weyl_singular(Fraction(7, 3), 8):
        failures += 1
    return SuiteResult("weyl", trials + 3, failures)


def _generic_compact_loop(rng: random.Random):
    # avoid constant diagonal loops, whose centralizer is larger than generic
    while True:
        u = rand_compact_loop(rng, n=2, degmax=2)
        if u.support != (0,):
            return u
        x = u.coeff(0)
        if not (x.entries[0][1].is_zero() and x.entries[1][0].is_zero()):
            return u


def suite_flats(rng: random.Random, trials: int, steps: int = 1024,
                tol: float = 1e-6) -> SuiteResult:
    failures = 0
    worst = 0.0
    for _ in range(trials):
        u = _generic_compact_loop(rng)
        result = flat_solver(u, steps=steps, tol=tol)
        worst = max(worst, result.residual)
        if result.kernel_dim != 1:
            failures += 1
    return SuiteResult("flats", trials, failures, worst)


def suite_osaka(rng: random.Random, trials: int) -> SuiteResult:
    split = su2_compact_split()
    k_basis, p_basis = split
    i1 = EC(0, 1)
    failures = 0
    if osaka_classify(split) is not OsakaType.COMPACT:
        failures += 1
    dual = (k_basis, [v.scale(i1) for v in p_basis])
    if osaka_classify(dual) is not OsakaType.NONCOMPACT:
        failures += 1
    flat_k = [km_element(monomial(finite_element([[EC(0, 1)]], "ab"), d))
              for d in (-1, 0, 1)]
    if osaka_classify((flat_k, [c_element(1, "ab").scale(i1)])) is not \
            OsakaType.EUCLIDEAN:
        failures += 1
    spec = involution_spec("second", 2, conjugate=True)
    for _ in range(trials):
        p1 = _rational_combo(rng, p_basis)
        p2 = _rational_combo(rng, p_basis)
        k = _rational_combo(rng, k_basis)
        pp = km_bracket(p1, p2)
        kp = km_bracket(k, p1)
        ok = (apply_involution(spec, pp) - pp).is_zero()
        ok = ok and (apply_involution(spec, kp) + kp).is_zero()
        if not ok:
            failures += 1
    return SuiteResult("osaka", trials + 3, failures)


SUITES = {
    "jacobi": suite_jacobi,
    "cocycle": suite_cocycle,
    "derivation": suite_derivation,
    "serre": suite_serre,
    "metric": suite_metric,
    "ad-invariance": suite_ad_invariance,
    "ad-exp": suite_ad_exp,
    "curvature": suite_curvature,
    "duality": suite_duality,
    "weyl": suite_weyl,
    "flats": suite_flats,
    "osaka": suite_osaka,
}


def run_suites(names=None, seed: int = 0, trials: int = 25,
               steps: int = 1024, tol: float = 1e-6,
               serre_types=("A~1", "A~2")) -> VerifyReport:
    """Run the named suites (all of them by default) and collect a report."""
    selected = list(SUITES) if names is None else list(names)
    results = []
    for name in selected:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}")
        rng = random.Random(f"{seed}:{name}")
        if name == "flats":
            results.append(suite_flats(rng, trials, steps=steps, tol=tol))
        elif name == "serre":
            results.append(suite_serre(rng, trials, types=serre_types))
        else:
            results.append(SUITES[name](rng, trials))
    config = {
        "trials": trials,
        "steps": steps,
        "tol": tol,
        "serre_types": list(serre_types),
        "suites": selected,
    }
    return VerifyReport(tuple(results), seed, config)
