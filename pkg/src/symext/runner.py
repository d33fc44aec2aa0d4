"""Execute workbench scripts and render reports.

Directives run in order.  Randomised checks draw from a generator seeded by
the script seed and the directive's position, so a report depends only on
the script text (and an explicit ``--seed`` override).
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from . import suites
from .dsl import (Directive, Fix, HFValue, LabelMap, Lit, Ref, Word, WorkbenchScript,
                  format_support, format_wreath)
from .forcing import (_restriction_hypotheses, act_statement, forcing_theorem_report,
                      symmetry_lemma_check)
from .group import Automorphism, FiniteSymmetricSystem, SupportSpec, automorphisms, normality_check
from .homogeneity import (InconsistentSigma, LemmaInstance, NoSuitableLevel, brute_force_lemma_perm,
                          build_lemma_perm, enumeration_refutation, lemma_validate, verify_lemma_perm)
from .names import Bounds, Name, support_check
from .poset import FinitePoset
from .qforcing import QCondition

DEFAULT_SEED = 0

# preset -> suite parameters
PRESETS = {
    "tiny": dict(max_size=3, samples=50, lemma=dict(max_support=2, max_length=3, max_n=2, width=3),
                 bounds=Bounds(3, 3, 3, 3)),
    "small": dict(max_size=4, samples=200, lemma=dict(max_support=2, max_length=4, max_n=3, width=4),
                  bounds=Bounds(5, 5, 5, 5)),
    "full": dict(max_size=4, samples=1000,
                 lemma=dict(max_support=3, max_length=4, max_n=3, width=4,
                            exhaustive_cap=1_000_000, samples=100_000),
                 bounds=Bounds(8, 8, 8, 8)),
}


class DirectiveError(Exception):
    pass


@dataclass(frozen=True)
class CheckEntry:
    id: str
    verdict: str  # PASS, FAIL or HYPOTHESIS-FAIL
    detail: str = ""
    elapsed: float = 0.0


@dataclass
class CheckReport:
    seed: int
    entries: list = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return any(e.verdict == "FAIL" for e in self.entries)

    def exit_code(self) -> int:
        return 1 if self.failed else 0


def print_report(rep: CheckReport, timing: bool = False) -> str:
    """Canonical text: a seed header, then one ``CHECK`` line per directive."""
    if not rep.entries:
        return ""
    lines = [f"# seed={rep.seed}"]
    for e in rep.entries:
        line = f"CHECK {e.id} {e.verdict}"
        if e.detail:
            line += " " + e.detail
        if timing:
            line += f" [{e.elapsed:.3f}s]"
        lines.append(line)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# resolving script values


class _Env:
    def __init__(self, ws: WorkbenchScript, preset: str | None, bounds: Bounds | None):
        self.decls = ws.table()
        self.cache: dict = {}
        self.preset = preset
        self.bounds = bounds

    def get(self, v):
        if isinstance(v, Ref):
            if v.name not in self.cache:
                self.cache[v.name] = self.get(self.decls[v.name])
            return self.cache[v.name]
        if isinstance(v, Lit):
            return self.build(v)
        return v

    def want(self, v, kind, what: str):
        got = self.get(v)
        if not isinstance(got, kind):
            raise DirectiveError(f"{what} must be a {kind.__name__ if isinstance(kind, type) else 'value'}")
        return got

    def subgroup(self, spec, S_group: tuple, poset: FinitePoset) -> frozenset:
        spec = self.get(spec)
        if isinstance(spec, Word) and spec.text == "all":
            return frozenset(S_group)
        if isinstance(spec, Fix):
            return frozenset(g for g in S_group if all(g(x) == x for x in spec.labels))
        if isinstance(spec, tuple):
            return frozenset(self.want(g, Automorphism, "subgroup member") for g in spec)
        raise DirectiveError(f"bad subgroup {spec!r}")

    def build(self, lit: Lit):
        if lit.kind == "system":
            P = self.want(lit.get("poset"), FinitePoset, "system poset")
            g = self.get(lit.get("group", Word("all")))
            if isinstance(g, Word) and g.text == "all":
                group = tuple(automorphisms(P))
            elif isinstance(g, tuple):
                group = tuple(self.want(x, Automorphism, "group member") for x in g)
            else:
                raise DirectiveError("group must be 'all' or a list of automorphisms")
            base = lit.get("base")
            if base is None:
                bases = ()
            elif isinstance(base, tuple) and base and not isinstance(self.get(base[0]), Automorphism):
                bases = tuple(self.subgroup(b, group, P) for b in base)
            else:
                bases = (self.subgroup(base, group, P),)
            return FiniteSymmetricSystem(P, group, bases)
        if lit.kind == "lemma":
            return LemmaInstance(self.want(lit.get("base"), QCondition, "lemma base"),
                                 self.want(lit.get("n"), int, "capture bound"),
                                 self.want(lit.get("q"), QCondition, "q"),
                                 self.want(lit.get("qp"), QCondition, "qp"))
        if lit.kind == "restriction":
            S = self.want(lit.get("system"), FiniteSymmetricSystem, "restriction system")
            x = self.want(lit.get("x"), Name, "restriction name")
            H = self.subgroup(lit.get("group", Word("all")), S.group, S.poset)
            mp = self.get(lit.get("map", LabelMap(())))
            restrict = {e: e for e in S.poset.elements}
            restrict.update(mp.as_dict())
            a = self.want(lit.get("set", HFValue(frozenset())), HFValue, "restriction set")
            return (S, x, H, restrict, a.hf)
        raise DirectiveError(f"unknown literal {lit.kind}")

    def preset_params(self, kw: dict) -> dict:
        v = kw.get("bounds")
        name = v.text if isinstance(v, Word) else (self.preset or "small")
        if name not in PRESETS:
            raise DirectiveError(f"unknown bounds preset {name!r} (expected {', '.join(PRESETS)})")
        params = dict(PRESETS[name])
        if isinstance(v, Bounds):
            params["bounds"] = v
        elif self.bounds is not None and not isinstance(v, Word):
            params["bounds"] = self.bounds
        return params


def _suite_verdict(res: suites.SuiteResult) -> tuple[str, str]:
    if res.ok:
        return "PASS", res.summary()
    return "FAIL", f"{res.summary()} failures={len(res.failures)} first: {res.failures[0]}"


# ---------------------------------------------------------------------------
# directives


def _run_symmetry(env: _Env, d: Directive, rng: random.Random):
    kw = d.kw()
    if "system" in kw or "stmt" in kw:
        S = env.want(kw.get("system"), FiniteSymmetricSystem, "system")
        phi = env.get(kw.get("stmt"))
        checked = 0
        for g in S.group:
            image = act_statement(g, phi)
            for p in S.poset.elements:
                checked += 1
                if not symmetry_lemma_check(S, p, g, phi, image=image):
                    return "FAIL", f"p={p} pi={g!r}"
        return "PASS", f"checked={checked}"
    return _suite_verdict(suites.symmetry_lemma_suite(env.preset_params(kw)["max_size"]))


def _run_forcing(env: _Env, d: Directive, rng: random.Random):
    kw = d.kw()
    if "poset" in kw or "stmt" in kw:
        P = env.want(kw.get("poset"), FinitePoset, "poset")
        rep = forcing_theorem_report(P, [env.get(kw.get("stmt"))])
        if rep.disagreements:
            p, _phi, forced, oracle = rep.disagreements[0]
            return "FAIL", f"p={p} forces={forced} oracle={oracle}"
        return "PASS", "table " + " ".join(f"{p}:{int(forced)}" for p, _f, forced, _o in rep.rows)
    return _suite_verdict(suites.forcing_theorem_suite(env.preset_params(kw)["max_size"]))


def _run_action(env: _Env, d: Directive, rng: random.Random):
    kw = d.kw()
    params = env.preset_params(kw)
    samples = env.get(kw.get("samples", params["samples"]))
    return _suite_verdict(suites.action_identities_suite(samples, rng.randrange(2**32), params["bounds"]))


def _run_lemma(env: _Env, d: Directive, rng: random.Random):
    kw = d.kw()
    if "lemma" in kw:
        L = env.want(kw["lemma"], LemmaInstance, "lemma")
        return lemma_check(L, env.get(kw.get("width")))
    params = env.preset_params(kw)["lemma"]
    return _suite_verdict(suites.homogeneity_suite(**params, seed=rng.randrange(2**32)))


def lemma_check(L: LemmaInstance, width: int | None = None) -> tuple[str, str]:
    problems = lemma_validate(L)
    if problems:
        return "HYPOTHESIS-FAIL", problems[0]
    try:
        pi = build_lemma_perm(L)
    except InconsistentSigma as e:
        found = brute_force_lemma_perm(L, width)
        if found is not None:
            return "FAIL", f"build failed ({e}) but search found {format_wreath(found)}"
        return "PASS", f"no permutation exists ({e}); search agrees"
    rep = verify_lemma_perm(pi, L)
    flags = " ".join(f"{k}={int(getattr(rep, k))}" for k in
                     ("inFix", "fixesBaseName", "mapsQPrimeToQ", "compatibleAfter"))
    if not rep.ok:
        return "FAIL", f"{flags} pi={format_wreath(pi)}"
    if brute_force_lemma_perm(L, width) is None:
        return "FAIL", f"search found nothing but build gave {format_wreath(pi)}"
    return "PASS", f"{flags} pi={format_wreath(pi)}"


def _run_block_swap(env: _Env, d: Directive, rng: random.Random):
    kw = d.kw()
    if "cond" in kw:
        p = env.get(kw["cond"])
        E = env.get(kw.get("support", SupportSpec()))
        n, k = env.get(kw.get("level", 0)), env.get(kw.get("k", 0))
        kp = env.get(kw.get("kp")) if "kp" in kw else None
        try:
            pi = enumeration_refutation(p, E, {(n, 0): k}, kp)
        except NoSuitableLevel as e:
            return "HYPOTHESIS-FAIL", str(e)
        return "PASS", f"pi={format_wreath(pi)}"
    samples = env.get(kw.get("samples", env.preset_params(kw)["samples"]))
    return _suite_verdict(suites.block_swap_suite(samples, rng.randrange(2**32)))


def _run_q_laws(env: _Env, d: Directive, rng: random.Random):
    kw = d.kw()
    if "qcond" in kw:
        q = env.want(kw["qcond"], QCondition, "qcond")
        res = suites.SuiteResult("q-laws")
        for _ in range(env.get(kw.get("samples", 20))):
            suites.check_q_laws(q, rng, res)
            if not res.ok:
                break
        if res.ok:
            return "PASS", res.summary()
        return "FAIL", res.failures[0]
    samples = env.get(kw.get("samples", env.preset_params(kw)["samples"]))
    return _suite_verdict(suites.q_laws_suite(samples, rng.randrange(2**32)))


def _run_restriction(env: _Env, d: Directive, rng: random.Random):
    kw = d.kw()
    if "restriction" in kw:
        S, x, H, restrict, a = env.get(kw["restriction"])
        res = suites.SuiteResult("restriction-decides")
        verdict = suites.check_restriction_case(S, x, H, restrict, a, res, "script", None)
        if verdict == "HYPOTHESIS-FAIL":
            return verdict, _restriction_hypotheses(S, x, H, restrict, a)[0]
        return verdict, (res.failures[0] if res.failures else res.summary())
    # corpus=N pins the corpus seed; otherwise it comes from the script seed
    seed = env.want(kw["corpus"], int, "corpus seed") if "corpus" in kw else rng.randrange(2**32)
    return _suite_verdict(suites.restriction_suite(seed))


def _run_normality(env: _Env, d: Directive, rng: random.Random):
    kw = d.kw()
    if "system" in kw:
        S = env.want(kw["system"], FiniteSymmetricSystem, "system")
        bad = normality_check(S)
        if bad:
            g, i = bad[0]
            return "FAIL", f"pi={g!r} base={i}"
        return "PASS", f"bases={len(S.base)}"
    samples = env.get(kw.get("samples", env.preset_params(kw)["samples"]))
    return _suite_verdict(suites.normality_suite(samples, rng.randrange(2**32)))


def _run_support(env: _Env, d: Directive, rng: random.Random):
    x = env.want(d.args[0], Name, "support name")
    E = env.get(d.args[1])
    kw = d.kw()
    S = env.get(kw["system"]) if "system" in kw else None
    if S is not None:
        if not isinstance(S, FiniteSymmetricSystem):
            raise DirectiveError("system must be a finite symmetric system")
        labels = [t for t in E.triples] if isinstance(E, SupportSpec) else list(E)
        v = support_check(x, labels, S)
    else:
        if not isinstance(E, SupportSpec):
            raise DirectiveError("support must be a set of triples")
        v = support_check(x, E, samples=env.get(kw.get("samples", 64)), seed=rng.randrange(2**32))
    if v.holds:
        return "PASS", f"method={v.method}"
    return "FAIL", f"method={v.method} witness={v.witness!r}"


RUNNERS = {
    "symmetry-lemma": _run_symmetry,
    "forcing-theorem": _run_forcing,
    "action-identities": _run_action,
    "homogeneity-lemma": _run_lemma,
    "block-swap": _run_block_swap,
    "q-laws": _run_q_laws,
    "restriction-decides": _run_restriction,
    "normality": _run_normality,
    "support": _run_support,
}


def run_script(ws: WorkbenchScript, seed: int | None = None, preset: str | None = None,
               bounds: Bounds | None = None, clock=time.perf_counter) -> CheckReport:
    """Run every directive; runtime errors become FAIL entries."""
    seed = ws.seed if seed is None else seed
    seed = DEFAULT_SEED if seed is None else seed
    env = _Env(ws, preset, bounds)
    rep = CheckReport(seed)
    for i, d in enumerate(ws.directives, start=1):
        rng = random.Random(f"{seed}:{i}")
        t0 = clock()
        try:
            verdict, detail = RUNNERS[d.kind](env, d, rng)
        except Exception as e:  # noqa: BLE001 - a directive error is a failed check
            verdict, detail = "FAIL", f"error: {type(e).__name__}: {e}"
        rep.entries.append(CheckEntry(f"{i}-{d.kind}", verdict, detail, clock() - t0))
    return rep
