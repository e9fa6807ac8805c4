"""Seeded randomized and exhaustive verification suites.

The CLI subcommands and the acceptance tests both call `run_suite`, so a
passing command line run and a passing test run mean literally the same
checks.  Every randomized check draws from its own deterministic stream,
seeded from (master seed, canonical field spec, check name); reports are
therefore byte-stable for a fixed config and independent of check order.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .branching import (
    NilpotentSl2,
    TauTwistModel,
    complementary_support,
    epsilon_sign_chain,
    is_waldspurger_conjugate,
    multiplicity,
    orbit_invariant,
    packet_product,
    whittaker_datum_eval,
)
from .characters import (
    chi_a_eval,
    conjugate_char,
    count_agreeing_extensions,
    f_image_classes,
    index_FEsq,
    omega_of,
)
from .errors import (
    BaseFieldInput,
    MinusOneIsSquare,
    MinusOneNotSquare,
    NotACoset,
    NotDiscrete,
    NotRamifiedClass,
)
from .hilbert import hilbert, hilbert_via_norm, pairing_table
from .kubota import (
    Mat2,
    MetaElement,
    beta,
    check_cocycle,
    commutator_pairing,
    is_split_on_GL2F,
    meta_inv,
    meta_mul,
    p_part,
)
from .local_field import (
    LocalField,
    embed_base,
    square_class,
    square_class_reps,
    unit_part,
    valuation,
)
from .parsing import parse_field_spec
from .rng import SplitMix64, derive_seed
from .weil import (
    EighthRoot,
    central_sign,
    chi_psi_eval,
    psi_eval,
    standard_char,
    weil_index,
)

SUITE_NAMES = ("cocycle", "split", "hilbert", "omega", "weil", "packets")

MAX_WITNESSES = 3


@dataclass(frozen=True)
class RunConfig:
    """Knobs shared by every suite run; `output`/`timings` only shape reports."""

    field_spec: str
    trials: int = 1000
    seed: int = 0
    height: int = 50
    output: str = "json"
    timings: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.height < 1:
            raise ValueError("height must be at least 1")
        if self.output not in ("json", "csv", "text"):
            raise ValueError(f"unknown output format {self.output!r}")


@dataclass
class CheckResult:
    name: str
    trials: int
    failures: int
    witnesses: list
    elapsed_ms: float

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self, timings: bool = False) -> dict:
        d = {
            "name": self.name,
            "trials": self.trials,
            "failures": self.failures,
            "witnesses": list(self.witnesses),
        }
        if timings:
            d["elapsed_ms"] = round(self.elapsed_ms, 3)
        return d


@dataclass
class Report:
    command: str
    config: RunConfig
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.failures == 0 for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "command": self.command,
            "config": {
                "field": self.config.field_spec,
                "trials": self.config.trials,
                "seed": self.config.seed,
                "height": self.config.height,
            },
            "checks": [c.to_dict(self.config.timings) for c in self.checks],
            "pass": self.passed,
        }


def _collect(name, cases, fn) -> CheckResult:
    """Run fn over cases; fn returns None on pass, a witness string on failure."""
    t0 = time.perf_counter()
    trials = 0
    failures = 0
    witnesses = []
    for case in cases:
        trials += 1
        w = fn(case)
        if w is not None:
            failures += 1
            if len(witnesses) < MAX_WITNESSES:
                witnesses.append(w)
    return CheckResult(name, trials, failures, witnesses,
                       (time.perf_counter() - t0) * 1000.0)


def _rng(field: LocalField, config: RunConfig, check_name: str) -> SplitMix64:
    return SplitMix64(derive_seed(config.seed, field.spec_string(), check_name))


# ---------------------------------------------------------------------------
# samplers


def rand_fraction(rng: SplitMix64, height: int) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def rand_element(rng, field, height, nonzero=False):
    while True:
        a = rand_fraction(rng, height)
        b = rand_fraction(rng, height) if field.is_extension else Fraction(0)
        if not nonzero or a or b:
            return field.elt(a, b)


def rand_unit(rng, field, height):
    x = rand_element(rng, field, height, nonzero=True)
    return x * field.uniformizer ** (-valuation(x))


def rand_mat2(rng, field, height, f_rational=False):
    # c = 0 in a fifth of draws so the degenerate Kubota branch stays
    # exercised; the coin is flipped before the entries to keep the stream
    # aligned across retries.
    force_c_zero = rng.chance(1, 5)
    base_only = f_rational or not field.is_extension

    def entry():
        if base_only:
            return field.elt(rand_fraction(rng, height))
        return field.elt(rand_fraction(rng, height), rand_fraction(rng, height))

    while True:
        a, b, c, d = entry(), entry(), entry(), entry()
        if force_c_zero:
            c = field.zero()
        det = a * d - b * c
        if not det.is_zero():
            return Mat2(field, a, b, c, d, det=det)


def rand_sl2(rng, field, height, f_rational=False):
    return p_part(rand_mat2(rng, field, height, f_rational=f_rational))


def rand_upper(rng, field, height):
    a = rand_element(rng, field, height, nonzero=True)
    d = rand_element(rng, field, height, nonzero=True)
    b = rand_element(rng, field, height)
    return Mat2(field, a, b, field.zero(), d)


def rand_sign(rng) -> int:
    return 1 if rng.chance(1, 2) else -1


# ---------------------------------------------------------------------------
# cocycle suite


def _suite_cocycle(field, config):
    checks = []
    H = config.height

    rng = _rng(field, config, "cocycle_identity")

    def gl2_triple(_):
        g1 = rand_mat2(rng, field, H)
        g2 = rand_mat2(rng, field, H)
        g3 = rand_mat2(rng, field, H)
        if check_cocycle(g1, g2, g3):
            return None
        return f"g1={g1!r} g2={g2!r} g3={g3!r}"

    checks.append(_collect("cocycle_identity", range(config.trials), gl2_triple))

    rng = _rng(field, config, "cocycle_sl2_triples")

    def sl2_triple(_):
        g1 = rand_sl2(rng, field, H)
        g2 = rand_sl2(rng, field, H)
        g3 = rand_sl2(rng, field, H)
        if check_cocycle(g1, g2, g3):
            return None
        return f"g1={g1!r} g2={g2!r} g3={g3!r}"

    checks.append(_collect("cocycle_sl2_triples", range(config.trials), sl2_triple))

    rng = _rng(field, config, "cocycle_borel_formula")

    def borel_pair(_):
        g1 = rand_upper(rng, field, H)
        g2 = rand_upper(rng, field, H)
        expected = hilbert(g1.a, g2.d)
        if beta(g1, g2) == expected:
            return None
        return f"g1={g1!r} g2={g2!r} expected={expected}"

    checks.append(_collect("cocycle_borel_formula", range(config.trials), borel_pair))

    rng = _rng(field, config, "cocycle_meta_group_laws")
    ident = MetaElement(Mat2.identity(field), 1)

    def group_laws(_):
        g = rand_mat2(rng, field, H)
        m = MetaElement(g, rand_sign(rng))
        if meta_mul(ident, m) != m or meta_mul(m, ident) != m:
            return f"identity law fails at {m!r}"
        if meta_mul(m, meta_inv(m)) != ident or meta_mul(meta_inv(m), m) != ident:
            return f"inverse law fails at {m!r}"
        return None

    checks.append(_collect("cocycle_meta_group_laws", range(config.trials), group_laws))

    rng = _rng(field, config, "cocycle_commutator_center")

    def commutator(_):
        z = rand_element(rng, field, H, nonzero=True)
        g = rand_mat2(rng, field, H)
        got = commutator_pairing(z, g)
        expected = hilbert(z, g.det)
        if got == expected:
            return None
        return f"z={z!r} g={g!r} got={got} expected={expected}"

    checks.append(_collect("cocycle_commutator_center", range(config.trials), commutator))
    return checks


# ---------------------------------------------------------------------------
# split suite (extensions only: the rational subgroup of GL2 over the base)


def _suite_split(field, config):
    if not field.is_extension:
        raise BaseFieldInput(
            f"split suite needs a quadratic extension, got {field.spec_string()}"
        )
    checks = []
    H = config.height

    rng = _rng(field, config, "split_gl2f")

    def f_rational_pair(_):
        g1 = rand_mat2(rng, field, H, f_rational=True)
        g2 = rand_mat2(rng, field, H, f_rational=True)
        if is_split_on_GL2F(g1, g2):
            return None
        return f"g1={g1!r} g2={g2!r}"

    checks.append(_collect("split_gl2f", range(config.trials), f_rational_pair))

    rng = _rng(field, config, "split_unipotent")
    one = field.one()

    def unipotent_pair(_):
        n1 = Mat2(field, one, rand_element(rng, field, H), field.zero(), one)
        n2 = Mat2(field, one, rand_element(rng, field, H), field.zero(), one)
        if beta(n1, n2) == 1:
            return None
        return f"n1={n1!r} n2={n2!r}"

    checks.append(_collect("split_unipotent", range(config.trials), unipotent_pair))
    return checks


# ---------------------------------------------------------------------------
# hilbert suite


def _suite_hilbert(field, config):
    checks = []
    H = config.height

    rng = _rng(field, config, "hilbert_bilinear")

    def bilinear(_):
        x1 = rand_element(rng, field, H, nonzero=True)
        x2 = rand_element(rng, field, H, nonzero=True)
        y = rand_element(rng, field, H, nonzero=True)
        if hilbert(x1 * x2, y) == hilbert(x1, y) * hilbert(x2, y):
            return None
        return f"x1={x1!r} x2={x2!r} y={y!r}"

    checks.append(_collect("hilbert_bilinear", range(config.trials), bilinear))

    rng = _rng(field, config, "hilbert_symmetric")

    def symmetric(_):
        x = rand_element(rng, field, H, nonzero=True)
        y = rand_element(rng, field, H, nonzero=True)
        if hilbert(x, y) == hilbert(y, x):
            return None
        return f"x={x!r} y={y!r}"

    checks.append(_collect("hilbert_symmetric", range(config.trials), symmetric))

    rng = _rng(field, config, "hilbert_square_class_invariance")

    def class_invariance(_):
        x = rand_element(rng, field, H, nonzero=True)
        y = rand_element(rng, field, H, nonzero=True)
        s = rand_element(rng, field, H, nonzero=True)
        t = rand_element(rng, field, H, nonzero=True)
        if hilbert(x * s * s, y * t * t) == hilbert(x, y):
            return None
        return f"x={x!r} y={y!r} s={s!r} t={t!r}"

    checks.append(
        _collect("hilbert_square_class_invariance", range(config.trials), class_invariance)
    )

    rng = _rng(field, config, "hilbert_steinberg")

    def steinberg(_):
        x = rand_element(rng, field, H, nonzero=True)
        if hilbert(x, -x) != 1:
            return f"x={x!r} pairs nontrivially with -x"
        if x != field.one() and hilbert(x, field.one() - x) != 1:
            return f"x={x!r} pairs nontrivially with 1-x"
        return None

    checks.append(_collect("hilbert_steinberg", range(config.trials), steinberg))

    def nondegenerate(row):
        table = pairing_table(field)
        reps = square_class_reps(field)
        values = [table[row][j] for j in range(4)]
        if row == 0:
            return None if all(v == 1 for v in values) else f"row {reps[row]!r}: {values}"
        if any(v == -1 for v in values):
            return None
        return f"row {reps[row]!r} pairs trivially with every class: {values}"

    checks.append(_collect("hilbert_nondegenerate", range(4), nondegenerate))

    if field.is_extension:
        base = field.base()
        rng = _rng(field, config, "hilbert_f_pairs_trivial")

        def f_pair(_):
            a = rand_element(rng, base, H, nonzero=True)
            b = rand_element(rng, base, H, nonzero=True)
            got = hilbert(embed_base(a, field), embed_base(b, field))
            if got == 1:
                return None
            return f"a={a!r} b={b!r} got={got}"

        checks.append(_collect("hilbert_f_pairs_trivial", range(config.trials), f_pair))

        rng = _rng(field, config, "hilbert_norm_compat")

        def norm_compat(_):
            a = rand_element(rng, base, H, nonzero=True)
            b = rand_element(rng, field, H, nonzero=True)
            via_norm = hilbert_via_norm(a, b)
            direct = hilbert(embed_base(a, field), b)
            if via_norm == direct:
                return None
            return f"a={a!r} b={b!r} via_norm={via_norm} direct={direct}"

        checks.append(_collect("hilbert_norm_compat", range(config.trials), norm_compat))

    return checks


# ---------------------------------------------------------------------------
# omega suite


def _suite_omega(field, config):
    checks = []
    H = config.height
    omega = omega_of(field)
    reps = square_class_reps(field)

    def torsor_shape(_):
        if len(omega) != 4:
            return f"expected 4 genuine characters, got {len(omega)}"
        if len({ch.twist for ch in omega}) != 4:
            return "twists are not pairwise distinct"
        for ch in omega:
            if conjugate_char(ch, field.one()) != ch:
                return f"conjugating {ch!r} by 1 moved it"
        return None

    checks.append(_collect("omega_torsor_shape", range(1), torsor_shape))

    def twist_action(ch):
        seen = set()
        for a in reps:
            moved = conjugate_char(ch, a.rep)
            if moved not in omega:
                return f"conjugate of {ch!r} by {a!r} left the set"
            seen.add(moved)
            for b in reps:
                if conjugate_char(moved, b.rep) != conjugate_char(ch, a.rep * b.rep):
                    return f"action not compatible at ch={ch!r} a={a!r} b={b!r}"
        if len(seen) != 4:
            return f"orbit of {ch!r} has size {len(seen)}, not 4"
        return None

    checks.append(_collect("omega_twist_action", list(omega), twist_action))

    rng = _rng(field, config, "omega_chi_quadratic")

    def chi_quadratic(_):
        a = rand_element(rng, field, H, nonzero=True)
        x = rand_element(rng, field, H, nonzero=True)
        y = rand_element(rng, field, H, nonzero=True)
        if chi_a_eval(a, x * y) != chi_a_eval(a, x) * chi_a_eval(a, y):
            return f"chi_a not multiplicative at a={a!r} x={x!r} y={y!r}"
        if chi_a_eval(a, x * x) != 1:
            return f"chi_a nontrivial on a square at a={a!r} x={x!r}"
        if chi_a_eval(a * x * x, y) != chi_a_eval(a, y):
            return f"chi_a sees more than the class of a at a={a!r} x={x!r} y={y!r}"
        return None

    checks.append(_collect("omega_chi_quadratic", range(config.trials), chi_quadratic))

    if field.is_extension:
        def image_subgroup(_):
            image = f_image_classes(field)
            if len(image) != 2:
                return f"norm-trivial image has order {len(image)}, expected 2"
            keys = {cls.key for cls in image}
            if (0, 0) not in keys:
                return "image misses the identity class"
            for u in image:
                for v in image:
                    if (u * v).key not in keys:
                        return f"image not closed under product at {u!r}*{v!r}"
            return None

        checks.append(_collect("omega_image_subgroup", range(1), image_subgroup))

        def index_agreement(_):
            idx = index_FEsq(field)
            agreeing = count_agreeing_extensions(field)
            if idx != 2:
                return f"index of F-classes inside E-classes is {idx}, expected 2"
            if agreeing != 2:
                return f"{agreeing} characters agree on the F-image, expected 2"
            return None

        checks.append(_collect("omega_index_agreement", range(1), index_agreement))

    return checks


# ---------------------------------------------------------------------------
# weil suite


def _suite_weil(field, config):
    checks = []
    H = config.height
    psi = standard_char(field)
    reps = square_class_reps(field)
    pi = field.uniformizer

    rng = _rng(field, config, "weil_conductor")

    def conductor(_):
        x = rand_element(rng, field, H, nonzero=True)
        unit = x * pi ** (-valuation(x))
        if psi_eval(psi, unit) != psi_eval(psi, field.zero()):
            return f"psi nontrivial on a unit from x={x!r}"
        if psi_eval(psi, unit * pi) != psi_eval(psi, field.zero()):
            return f"psi nontrivial at valuation 1 from x={x!r}"
        y = rand_element(rng, field, H)
        if psi_eval(psi, x + y) != psi_eval(psi, x) * psi_eval(psi, y):
            return f"psi not additive at x={x!r} y={y!r}"
        if psi_eval(psi, field.one() / pi).is_one():
            return "psi trivial one level below the integers"
        return None

    checks.append(_collect("weil_conductor", range(config.trials), conductor))

    rng = _rng(field, config, "weil_square_class_invariance")

    def class_invariance(_):
        a = rand_element(rng, field, H, nonzero=True)
        t = rand_element(rng, field, H, nonzero=True)
        if weil_index(a * t * t, psi) == weil_index(a, psi):
            return None
        return f"a={a!r} t={t!r}"

    checks.append(
        _collect("weil_square_class_invariance", range(config.trials), class_invariance)
    )

    rng = _rng(field, config, "weil_unit_euler_sign")

    def unit_euler(_):
        u = rand_unit(rng, field, H)
        got = weil_index(u, psi).as_sign()
        expected = unit_part(u).euler_sign()
        if got == expected:
            return None
        return f"u={u!r} got={got} expected={expected}"

    checks.append(_collect("weil_unit_euler_sign", range(config.trials), unit_euler))

    pairs = [(a, b) for a in reps for b in reps]

    def product_relation(pair):
        a, b = pair
        lhs = weil_index(a.rep, psi) * weil_index(b.rep, psi)
        rhs = weil_index(a.rep * b.rep, psi)
        if hilbert(a.rep, b.rep) == -1:
            rhs = rhs * EighthRoot(Fraction(1, 2))
        if lhs == rhs:
            return None
        return f"a={a!r} b={b!r} lhs={lhs!r} rhs={rhs!r}"

    checks.append(_collect("weil_product_relation", pairs, product_relation))

    def chi_genuine(_):
        plus = chi_psi_eval(field.one(), 1, psi)
        minus = chi_psi_eval(field.one(), -1, psi)
        if minus != plus * EighthRoot(Fraction(1, 2)):
            return f"chi_psi not genuine: chi(1,+1)={plus!r} chi(1,-1)={minus!r}"
        return None

    checks.append(_collect("weil_chi_genuine", range(1), chi_genuine))

    rng = _rng(field, config, "weil_chi_multiplicative")

    def chi_multiplicative(_):
        z1 = rand_element(rng, field, H, nonzero=True)
        z2 = rand_element(rng, field, H, nonzero=True)
        m1 = MetaElement(Mat2.diag(z1, z1), rand_sign(rng))
        m2 = MetaElement(Mat2.diag(z2, z2), rand_sign(rng))
        prod = meta_mul(m1, m2)
        lhs = chi_psi_eval(z1, m1.eps, psi) * chi_psi_eval(z2, m2.eps, psi)
        rhs = chi_psi_eval(prod.g.a, prod.eps, psi)
        if lhs == rhs:
            return None
        return f"z1={z1!r} z2={z2!r} eps=({m1.eps},{m2.eps}) lhs={lhs!r} rhs={rhs!r}"

    checks.append(_collect("weil_chi_multiplicative", range(config.trials), chi_multiplicative))

    rng = _rng(field, config, "weil_central_sign_twist")
    ref = chi_psi_eval(field.elt(-1), 1, psi).complex_value

    def central_twist(_):
        s = rand_sign(rng)
        x = rand_element(rng, field, H, nonzero=True)
        twist = hilbert(x, field.elt(-1))
        got = central_sign(s * twist * ref, psi)
        if got == s * twist:
            return None
        return f"s={s} x={x!r} got={got}"

    checks.append(_collect("weil_central_sign_twist", range(config.trials), central_twist))
    return checks


# ---------------------------------------------------------------------------
# packets suite (includes the nilpotent-orbit and Whittaker-datum checks)


def class_subgroups(field):
    """All 5 subgroups of the Klein four-group of square classes."""
    classes = list(square_class_reps(field))
    ident = classes[0]
    subs = [frozenset([ident])]
    subs.extend(frozenset([ident, c]) for c in classes[1:])
    subs.append(frozenset(classes))
    return classes, subs


def _suite_packets(field, config):
    checks = []
    H = config.height
    psi = standard_char(field)
    minus_one = field.elt(-1)
    classes, subgroups = class_subgroups(field)

    def pairs_plus(cls):
        return hilbert(cls.rep, minus_one) == 1

    model_cases = [(S, discrete) for S in subgroups for discrete in (True, False)]

    def model_arithmetic(case):
        S, discrete = case
        valid = discrete or all(pairs_plus(a) for a in S)
        if not valid:
            try:
                TauTwistModel(field, S, discrete)
            except ValueError:
                return None
            return f"principal-series model with self-twists off the kernel accepted (|S|={len(S)})"
        model = TauTwistModel(field, S, discrete)
        m = multiplicity(model)
        if m not in (1, 2, 4):
            return f"multiplicity {m} outside {{1,2,4}} for |S|={len(S)} discrete={discrete}"
        if m != sum(1 for a in S if pairs_plus(a)):
            return f"multiplicity {m} disagrees with the kernel count for |S|={len(S)}"
        out = packet_product(model)
        if out["m2"] != len(S):
            return f"m2={out['m2']} but |S|={len(S)}"
        expected = 8 if discrete else 4
        if out["m1"] * out["m2"] != expected or out["product"] != expected:
            return f"size product {out} for |S|={len(S)} discrete={discrete}"
        return None

    checks.append(_collect("packets_model_arithmetic", model_cases, model_arithmetic))

    discrete_models = [TauTwistModel(field, S, True) for S in subgroups]

    def waldspurger_flags(model):
        for cls in classes:
            expected = cls in model.S and not pairs_plus(cls)
            if is_waldspurger_conjugate(model, cls) != expected:
                return f"flag mismatch at |S|={len(model.S)} a={cls!r}"
        return None

    checks.append(_collect("packets_waldspurger_flags", discrete_models, waldspurger_flags))

    def not_discrete_guard(_):
        model = TauTwistModel(field, subgroups[0], False)
        try:
            is_waldspurger_conjugate(model, classes[0])
        except NotDiscrete:
            return None
        return "principal-series model accepted by the discrete-only predicate"

    checks.append(_collect("packets_not_discrete_guard", range(1), not_discrete_guard))

    def complementary(case):
        support = frozenset(case)
        if not field.minus_one_is_square:
            try:
                complementary_support(support, field)
            except MinusOneNotSquare:
                return None
            return "complementary support defined although -1 is not a square"
        if len(support) != 2:
            try:
                complementary_support(support, field)
            except NotACoset:
                return None
            return f"support of size {len(support)} accepted"
        b = complementary_support(support, field)
        shifted = frozenset(b * c for c in support)
        if shifted & support:
            return f"support {sorted(c.label for c in support)} not moved off itself"
        if shifted | support != frozenset(classes):
            return f"translate of {sorted(c.label for c in support)} misses classes"
        return None

    pair_cases = [[classes[i], classes[j]] for i in range(4) for j in range(i + 1, 4)]
    pair_cases.append(list(classes))
    pair_cases.append([classes[0]])
    checks.append(_collect("packets_complementary_partition", pair_cases, complementary))

    def sign_chain(case):
        b, seed = case
        if field.minus_one_is_square:
            try:
                epsilon_sign_chain(field, b, seed)
            except MinusOneIsSquare:
                return None
            return "sign chain defined although -1 is a square"
        if b.key[0] != 1:
            try:
                epsilon_sign_chain(field, b, seed)
            except NotRamifiedClass:
                return None
            return f"even-valuation twist {b!r} accepted"
        out = epsilon_sign_chain(field, b, seed)
        if not out["holds"]:
            return f"alternation fails for b={b!r} seed={seed}"
        assignment = out["assignment"]
        if assignment[out["order"][0]] != seed:
            return f"seed not honored for b={b!r} seed={seed}"
        if sorted(assignment.values()) != [-1, -1, 1, 1]:
            return f"signs unbalanced for b={b!r} seed={seed}"
        return None

    chain_cases = [(c, seed) for c in classes for seed in (1, -1)]
    checks.append(_collect("packets_epsilon_sign_chain", chain_cases, sign_chain))

    rng = _rng(field, config, "packets_whittaker_trace")

    def whittaker_trace(_):
        a = rand_element(rng, field, H, nonzero=True)
        x = rand_element(rng, field, H)
        got = whittaker_datum_eval(a, x, psi)
        if got == psi_eval(psi, a * x) and got == psi_eval(psi.scaled(a), x):
            return None
        return f"a={a!r} x={x!r}"

    checks.append(_collect("packets_whittaker_trace", range(config.trials), whittaker_trace))

    rng = _rng(field, config, "packets_orbit_conjugation")

    def orbit_conjugation(_):
        a = rand_element(rng, field, H, nonzero=True)
        y = NilpotentSl2.lower(a)
        g = rand_sl2(rng, field, H)
        got = orbit_invariant(y.conjugate_by(g))
        if got == square_class(a):
            return None
        return f"a={a!r} g={g!r} got={got!r}"

    checks.append(_collect("packets_orbit_conjugation", range(config.trials), orbit_conjugation))

    def orbit_bijection(_):
        seen = {orbit_invariant(NilpotentSl2.lower(c.rep)) for c in classes}
        if len(seen) == 4:
            return None
        return f"lower-triangular orbits only reach {len(seen)} classes"

    checks.append(_collect("packets_orbit_bijection", range(1), orbit_bijection))
    return checks


# ---------------------------------------------------------------------------
# dispatch

_SUITE_FNS = {
    "cocycle": _suite_cocycle,
    "split": _suite_split,
    "hilbert": _suite_hilbert,
    "omega": _suite_omega,
    "weil": _suite_weil,
    "packets": _suite_packets,
}


def run_suite(config: RunConfig, suite: str) -> Report:
    if suite != "all" and suite not in _SUITE_FNS:
        raise ValueError(f"unknown suite {suite!r}; expected one of {SUITE_NAMES + ('all',)}")
    field = parse_field_spec(config.field_spec)
    if suite == "all":
        names = [s for s in SUITE_NAMES if s != "split" or field.is_extension]
    else:
        names = [suite]
    checks = []
    for name in names:
        checks.extend(_SUITE_FNS[name](field, config))
    checks.sort(key=lambda c: c.name)
    return Report(command=f"suite:{suite}", config=config, checks=checks)


# battery used by `selftest-all`: every suite on each base and extension
# config, plus the index checks at p = 13 where the residue field is larger.
SELFTEST_BASE_SPECS = ("Qp(3)", "Qp(5)", "Qp(7)")
SELFTEST_EXT_SPECS = (
    "Qp(3)[unram:2]",
    "Qp(3)[ram:3]",
    "Qp(5)[unram:2]",
    "Qp(5)[ram:5]",
    "Qp(7)[unram:3]",
    "Qp(7)[ram:7]",
)
SELFTEST_INDEX_SPECS = ("Qp(13)[unram:2]", "Qp(13)[ram:13]")


def selftest_reports(config: RunConfig) -> list:
    """Run the full battery; config.field_spec is ignored in favor of the list."""
    reports = []
    for spec in SELFTEST_BASE_SPECS + SELFTEST_EXT_SPECS:
        cfg = RunConfig(field_spec=spec, trials=config.trials, seed=config.seed,
                        height=config.height, output=config.output,
                        timings=config.timings)
        reports.append(run_suite(cfg, "all"))
    for spec in SELFTEST_INDEX_SPECS:
        cfg = RunConfig(field_spec=spec, trials=config.trials, seed=config.seed,
                        height=config.height, output=config.output,
                        timings=config.timings)
        reports.append(run_suite(cfg, "omega"))
    return reports
