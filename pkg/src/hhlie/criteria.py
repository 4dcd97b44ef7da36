"""Sufficient conditions for solvability of HH^1, checked on a presentation.

Each ``crit_*`` function returns a :class:`CriterionVerdict`.  ``applicable``
says whether the standing hypotheses (grading, quiver shape, characteristic)
hold; ``fires`` says whether the remaining hypotheses were verified, in which
case ``conclusion`` is what the criterion guarantees.

Conclusions are one of

* ``strongly_solvable`` and ``solvable`` for HH^1(A),
* ``rad_solvable`` for the radical-preserving part HH^1_rad(A),
* ``rad_equals_full`` for HH^1_rad(A) = HH^1(A).

:func:`analyze` runs everything, combines a rad-level conclusion with a
rad=full verdict into a full one, and checks every fired verdict against the
direct computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from .algebra import ExtStats, Path, Presentation, ext_quiver_stats, path_str, validate
from .cohomology import HH1Space, sigma
from .errors import CriterionContradiction
from .lie import LieAlgebra, LieReport, hh1_lie, report
from .rewriting import QuiverAlgebra, truncate

__all__ = [
    "CriterionVerdict", "Analysis", "GRADED_CRITERIA", "crit_no_loops_no_parallels",
    "crit_sigma1_antisym_sigma0_empty", "crit_loop_square", "crit_loop_square_char2",
    "crit_local", "crit_local_two_loops", "crit_sigma0_empty_ungraded",
    "crit_ungraded_loop_square", "crit_ungraded_char2", "crit_char0",
    "crit_er_loop_exponents", "crit_loop_deletion", "crit_sigma0_empty_rad",
    "crit_truncation_chain", "all_criteria", "compose", "check_soundness",
]

STRONG, SOLV, RAD_SOLV, RAD_FULL = ("strongly_solvable", "solvable",
                                     "rad_solvable", "rad_equals_full")


@dataclass(frozen=True)
class CriterionVerdict:
    id: str
    applicable: bool
    fires: bool
    conclusion: str
    witness: Optional[str] = None

    def __post_init__(self):
        if self.fires and not self.applicable:
            raise ValueError("a verdict cannot fire without being applicable")

    def to_dict(self) -> dict:
        d = {"id": self.id, "applicable": self.applicable, "fires": self.fires,
             "conclusion": self.conclusion}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


class Analysis:
    """Lazily computed data shared by the criteria for one presentation."""

    def __init__(self, pres: Presentation, alg: Optional[QuiverAlgebra] = None):
        self.pres = validate(pres)
        self._alg = alg
        self._trunc: dict = {}

    @cached_property
    def alg(self) -> QuiverAlgebra:
        return self._alg if self._alg is not None else QuiverAlgebra(self.pres)

    @cached_property
    def space(self) -> HH1Space:
        return HH1Space(self.alg)

    @cached_property
    def lie(self) -> LieAlgebra:
        return hh1_lie(self.space)

    @cached_property
    def report(self) -> LieReport:
        return report(self.lie)

    @cached_property
    def rad_report(self) -> LieReport:
        L = self.lie
        return report(L, L.subspace(self.space.radical.basis))

    @cached_property
    def ext(self) -> ExtStats:
        return ext_quiver_stats(self.alg.pres)

    @property
    def characteristic(self) -> int:
        return self.alg.field.characteristic

    @property
    def graded(self) -> bool:
        return self.alg.graded

    @property
    def local(self) -> bool:
        return len(self.alg.quiver.vertices) == 1

    def sigma(self, i: int):
        return sigma(self.space, i)

    def loops(self) -> list:
        return [a for a in self.alg.quiver.arrows if a.source == a.target]

    def truncation(self, n: int) -> "Analysis":
        a = self._trunc.get(n)
        if a is None:
            a = Analysis(truncate(self.alg.pres, n))
            self._trunc[n] = a
        return a


def _ctx(obj) -> Analysis:
    return obj if isinstance(obj, Analysis) else Analysis(obj)


def _pair(a: str, p: Path) -> str:
    return f"{a}||{path_str(p)}"


def _cross_pairs(ctx: Analysis) -> list:
    """Members a||b of Sigma_1 whose target is a single arrow b != a."""
    return [(a, p.arrows[0]) for a, p in ctx.sigma(1) if p.arrows[0] != a]


def _symmetric_cross(ctx: Analysis):
    cross = set(_cross_pairs(ctx))
    for a, b in sorted(cross):
        if (b, a) in cross:
            return a, b
    return None


def _loop_square_member(ctx: Analysis):
    s2 = ctx.sigma(2)
    for a in ctx.loops():
        p = Path(a.source, a.target, (a.id, a.id))
        if (a.id, p) in s2:
            return _pair(a.id, p)
    return None


def _not_applicable(cid, conclusion, why) -> CriterionVerdict:
    return CriterionVerdict(cid, False, False, conclusion, why)


# --- quiver-shape criteria --------------------------------------------------

def crit_no_loops_no_parallels(obj) -> CriterionVerdict:
    ctx = _ctx(obj)
    q = ctx.alg.quiver
    cid = "no_loops_no_parallels"
    loops = ctx.loops()
    if loops:
        return CriterionVerdict(cid, True, False, STRONG, f"loop {loops[0].id}")
    seen: dict = {}
    for a in q.arrows:
        key = (a.source, a.target)
        if key in seen:
            return CriterionVerdict(cid, True, False, STRONG,
                                    f"parallel arrows {seen[key]}, {a.id}")
        seen[key] = a.id
    return CriterionVerdict(cid, True, True, STRONG)


# --- graded criteria --------------------------------------------------------

def _graded_one_loop(ctx: Analysis, cid: str, conclusion: str):
    if not ctx.graded:
        return _not_applicable(cid, conclusion, "relations are not length-homogeneous")
    if ctx.ext.max_loops > 1:
        v = next(v for v in ctx.alg.quiver.vertices if ctx.ext.loops(v) > 1)
        return _not_applicable(cid, conclusion, f"more than one loop at {v}")
    return None


def crit_sigma1_antisym_sigma0_empty(obj) -> CriterionVerdict:
    ctx = _ctx(obj)
    cid = "sigma1_antisymmetric_sigma0_empty"
    na = _graded_one_loop(ctx, cid, SOLV)
    if na:
        return na
    s0 = ctx.sigma(0)
    if len(s0):
        return CriterionVerdict(cid, True, False, SOLV, f"{s0.labels()[0]} in Sigma_0")
    sym = _symmetric_cross(ctx)
    if sym:
        a, b = sym
        return CriterionVerdict(cid, True, False, SOLV, f"{a}||{b} and {b}||{a} in Sigma_1")
    return CriterionVerdict(cid, True, True, SOLV)


def crit_loop_square(obj) -> CriterionVerdict:
    ctx = _ctx(obj)
    cid = "loop_square_excluded"
    na = _graded_one_loop(ctx, cid, SOLV)
    if na:
        return na
    sym = _symmetric_cross(ctx)
    if sym:
        a, b = sym
        return CriterionVerdict(cid, True, False, SOLV, f"{a}||{b} and {b}||{a} in Sigma_1")
    bad = _loop_square_member(ctx)
    if bad:
        return CriterionVerdict(cid, True, False, SOLV, f"{bad} in Sigma_2")
    return CriterionVerdict(cid, True, True, SOLV)


def crit_loop_square_char2(obj) -> CriterionVerdict:
    ctx = _ctx(obj)
    cid = "loop_square_char2"
    na = _graded_one_loop(ctx, cid, SOLV)
    if na:
        return na
    if ctx.characteristic != 2:
        return _not_applicable(cid, SOLV, "characteristic is not 2")
    sym = _symmetric_cross(ctx)
    if sym:
        a, b = sym
        return CriterionVerdict(cid, True, False, SOLV, f"{a}||{b} and {b}||{a} in Sigma_1")
    return CriterionVerdict(cid, True, True, SOLV)


def _graded_local(ctx: Analysis, cid: str):
    if not ctx.local:
        return _not_applicable(cid, SOLV, "more than one vertex")
    if not ctx.graded:
        return _not_applicable(cid, SOLV, "relations are not length-homogeneous")
    return None


def crit_local(obj) -> CriterionVerdict:
    """Graded local algebras with Sigma_0 empty and no cross pairs in Sigma_1."""
    ctx = _ctx(obj)
    cid = "local_sigma0_empty"
    na = _graded_local(ctx, cid)
    if na:
        return na
    s0 = ctx.sigma(0)
    if len(s0):
        return CriterionVerdict(cid, True, False, SOLV, f"{s0.labels()[0]} in Sigma_0")
    cross = _cross_pairs(ctx)
    if cross:
        a, b = cross[0]
        return CriterionVerdict(cid, True, False, SOLV, f"{a}||{b} in Sigma_1")
    return CriterionVerdict(cid, True, True, SOLV)


def crit_local_two_loops(obj) -> list:
    """The two-loop local results: one verdict for char 2, one for the loop-square route."""
    ctx = _ctx(obj)
    out = []
    for cid, want2 in (("local_two_loops_char2", True), ("local_two_loops_loop_square", False)):
        na = _graded_local(ctx, cid)
        if na is None and len(ctx.alg.quiver.arrows) != 2:
            na = _not_applicable(cid, SOLV, "the quiver does not have exactly two loops")
        if na is None and (ctx.characteristic == 2) != want2:
            na = _not_applicable(cid, SOLV, "characteristic is not 2" if want2
                                 else "characteristic is 2")
        if na:
            out.append(na)
            continue
        cross = _cross_pairs(ctx)
        if cross:
            a, b = cross[0]
            out.append(CriterionVerdict(cid, True, False, SOLV, f"{a}||{b} in Sigma_1"))
            continue
        if not want2:
            bad = _loop_square_member(ctx)
            if bad:
                out.append(CriterionVerdict(cid, True, False, SOLV, f"{bad} in Sigma_2"))
                continue
        out.append(CriterionVerdict(cid, True, True, SOLV))
    return out


GRADED_CRITERIA = (crit_no_loops_no_parallels, crit_sigma1_antisym_sigma0_empty,
                   crit_loop_square, crit_loop_square_char2, crit_local, crit_local_two_loops)


# --- ungraded criteria ------------------------------------------------------

def _ext_at_most_one(ctx: Analysis, cid: str, conclusion: str):
    if ctx.ext.max_entry > 1:
        return _not_applicable(cid, conclusion,
                               "some pair of simples has more than one arrow between them")
    return None


def crit_sigma0_empty_ungraded(obj) -> CriterionVerdict:
    ctx = _ctx(obj)
    cid = "sigma0_empty_ungraded"
    na = _ext_at_most_one(ctx, cid, SOLV)
    if na:
        return na
    s0 = ctx.sigma(0)
    if len(s0):
        return CriterionVerdict(cid, True, False, SOLV, f"{s0.labels()[0]} in Sigma_0")
    return CriterionVerdict(cid, True, True, SOLV)


def crit_ungraded_loop_square(obj) -> CriterionVerdict:
    ctx = _ctx(obj)
    cid = "ungraded_loop_square"
    na = _ext_at_most_one(ctx, cid, RAD_SOLV)
    if na:
        return na
    bad = _loop_square_member(ctx)
    if bad:
        return CriterionVerdict(cid, True, False, RAD_SOLV, f"{bad} in Sigma_2")
    return CriterionVerdict(cid, True, True, RAD_SOLV)


def crit_ungraded_char2(obj) -> CriterionVerdict:
    ctx = _ctx(obj)
    cid = "ungraded_char2"
    na = _ext_at_most_one(ctx, cid, RAD_SOLV)
    if na:
        return na
    if ctx.characteristic != 2:
        return _not_applicable(cid, RAD_SOLV, "characteristic is not 2")
    return CriterionVerdict(cid, True, True, RAD_SOLV)


# --- HH^1_rad = HH^1 --------------------------------------------------------

def crit_char0(obj) -> CriterionVerdict:
    ctx = _ctx(obj)
    cid = "char0_rad_equals_full"
    if ctx.characteristic:
        return CriterionVerdict(cid, True, False, RAD_FULL,
                                f"characteristic {ctx.characteristic}")
    return CriterionVerdict(cid, True, True, RAD_FULL)


def crit_er_loop_exponents(obj) -> CriterionVerdict:
    ctx = _ctx(obj)
    cid = "loop_exponents"
    p = ctx.characteristic
    exps = {a.id: ctx.alg.loop_exponent(a.id) for a in ctx.loops()}
    prod = 1
    for n in exps.values():
        prod *= n
    shown = ", ".join(f"n_{a}={n}" for a, n in exps.items()) or "no loops"
    if p and prod % p == 0:
        return CriterionVerdict(cid, True, False, RAD_FULL, shown)
    return CriterionVerdict(cid, True, True, RAD_FULL, shown)


def _substitution_images(ctx: Analysis, r) -> dict:
    """For one relation r, the element of A obtained by replacing a single
    occurrence of an arrow b by a basis path h, summed over occurrences.

    Keys are (b, h); values are dicts over basis paths.  The value for h = e_v
    at a loop is the deletion image.
    """
    alg = ctx.alg
    out: dict = {}
    for q, lam in r:
        for i, b in enumerate(q.arrows):
            arr = alg.quiver.arrow(b)
            left = Path(q.source, arr.source, q.arrows[:i])
            right = Path(arr.target, q.target, q.arrows[i + 1:])
            for h in alg.basis.parallel_to(arr.source, arr.target):
                img = out.setdefault((b, h), {})
                for p, c in alg.mul_paths(left, h).items():
                    for u, e in alg.mul_paths(p, right).items():
                        img[u] = img.get(u, alg.field.zero) + lam * c * e
    return {k: {u: c for u, c in v.items() if c} for k, v in out.items()}


def crit_loop_deletion(obj) -> CriterionVerdict:
    """Loop deletion test on the input relations.

    Write D(a) = lam e + (radical part) for a derivation D and a loop a at e.
    Applying D to a relation r gives, in A, lam times the deletion image of a
    in r plus the contributions of every other unknown coefficient of D.  If
    some basis path of A occurs in the deletion image and in no other
    contribution, lam must vanish.  The check succeeds when this happens for
    every loop; a^(ps) in characteristic p has zero deletion image and never
    helps.
    """
    ctx = _ctx(obj)
    cid = "loop_deletion"
    rels = list(ctx.alg.pres.relations)
    for a in ctx.loops():
        if not any(a.id in q.arrows for r in rels for q, _ in r):
            return _not_applicable(cid, RAD_FULL, f"loop {a.id} occurs in no relation")
    for a in ctx.loops():
        key = (a.id, Path.vertex(a.source))
        hit = None
        for r in rels:
            if not any(a.id in q.arrows for q, _ in r):
                continue
            imgs = _substitution_images(ctx, r)
            others = set()
            for k, v in imgs.items():
                if k != key:
                    others.update(v)
            free = [u for u in imgs.get(key, {}) if u not in others]
            if free:
                hit = (r, free[0])
                break
        if hit is None:
            return CriterionVerdict(cid, True, False, RAD_FULL, f"loop {a.id}")
    return CriterionVerdict(cid, True, True, RAD_FULL)


def crit_sigma0_empty_rad(obj) -> CriterionVerdict:
    """No cocycle has a length-0 target, so every class is radical-preserving."""
    ctx = _ctx(obj)
    cid = "sigma0_empty_rad_equals_full"
    s0 = ctx.sigma(0)
    if len(s0):
        return CriterionVerdict(cid, True, False, RAD_FULL, f"{s0.labels()[0]} in Sigma_0")
    return CriterionVerdict(cid, True, True, RAD_FULL)


RAD_FULL_CRITERIA = (crit_char0, crit_er_loop_exponents, crit_loop_deletion,
                     crit_sigma0_empty_rad)


# --- truncation chain -------------------------------------------------------

def _flatten(vs) -> list:
    out = []
    for v in vs:
        out.extend(v if isinstance(v, list) else [v])
    return out


def graded_verdicts(obj) -> list:
    ctx = _ctx(obj)
    return _flatten(c(ctx) for c in GRADED_CRITERIA)


def crit_truncation_chain(obj, n: int) -> CriterionVerdict:
    """Solvability of HH^1_rad(A/J^n) lifts to HH^1_rad(A)."""
    ctx = _ctx(obj)
    cid = f"truncation_chain_{n}"
    if n not in (2, 3):
        raise ValueError("truncation level must be 2 or 3")
    B = ctx.truncation(n)
    for v in graded_verdicts(B):
        if v.fires and v.conclusion in (SOLV, STRONG):
            check_soundness(B, [v])
            return CriterionVerdict(cid, True, True, RAD_SOLV, f"A/J^{n}: {v.id}")
    if B.rad_report.solvable:
        return CriterionVerdict(cid, True, True, RAD_SOLV,
                                f"A/J^{n}: HH1_rad computed solvable")
    return CriterionVerdict(cid, True, False, RAD_SOLV, f"A/J^{n}: HH1_rad not solvable")


# --- running everything -----------------------------------------------------

def all_criteria(obj, truncations=(2, 3)) -> list:
    ctx = _ctx(obj)
    out = graded_verdicts(ctx)
    out += [crit_sigma0_empty_ungraded(ctx), crit_ungraded_loop_square(ctx),
            crit_ungraded_char2(ctx)]
    out += [c(ctx) for c in RAD_FULL_CRITERIA]
    out += [crit_truncation_chain(ctx, n) for n in truncations]
    return out + compose(out)


def compose(verdicts: list) -> list:
    """Upgrade each fired rad-level verdict with the first fired rad=full verdict."""
    full = [v for v in verdicts if v.fires and v.conclusion == RAD_FULL]
    out = []
    for v in verdicts:
        if v.conclusion != RAD_SOLV:
            continue
        if v.fires and full:
            out.append(CriterionVerdict(f"{v.id}+{full[0].id}", True, True, SOLV))
        else:
            why = "rad-level verdict did not fire" if not v.fires else "no rad=full verdict fired"
            out.append(CriterionVerdict(f"{v.id}+rad_equals_full", v.fires, False, SOLV, why))
    return out


def check_soundness(obj, verdicts: list) -> None:
    """Raise CriterionContradiction if a fired verdict disagrees with the direct computation."""
    ctx = _ctx(obj)
    for v in verdicts:
        if not v.fires:
            continue
        if v.conclusion == STRONG:
            good = ctx.report.strongly_solvable
        elif v.conclusion == SOLV:
            good = ctx.report.solvable
        elif v.conclusion == RAD_SOLV:
            good = ctx.rad_report.solvable
        elif v.conclusion == RAD_FULL:
            good = ctx.space.radical.equals_full
        else:  # pragma: no cover
            raise ValueError(v.conclusion)
        if not good:
            name = ctx.pres.name or "input"
            raise CriterionContradiction(
                f"{v.id} concludes {v.conclusion} for {name}, direct computation disagrees")
