"""Relation classes, the excess-intersection chain, and triviality proofs.

Each relation class is rebuilt from its own geometric recipe (a Chern
class of an explicit line bundle, a pushforward chain, or a quoted input)
and compared against the frozen expected class.  Everything is symbolic
in g by default; passing g = <rational> reruns a computation with the
genus specialized.

The triviality certificates turn the relation sets into exact linear
algebra over Q[g]: Cramer solutions with cleared denominators for the
inhomogeneous cases, and a certified full-rank computation (pivots that
provably never vanish at integers g >= 0) for the homogeneous one.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .bundles import BundleClass, excess_class, principal_parts_chern
from .linalg import bareiss_det, param_rank, rank_at_samples, solve_cramer
from .ring import ChowElement, G, ParamPoly
from .spaces import build_space, diagonal, lift, pushforward


class LemmaId(enum.Enum):
    REL_111_DELTA = "REL-111-DELTA"
    REL_111_RAM_P = "REL-111-RAM-P"
    REL_111_RAM_Q = "REL-111-RAM-Q"
    REL_21_TRIPLE = "REL-21-TRIPLE"
    REL_21_NODE = "REL-21-NODE"
    REL_3_CONTACT4 = "REL-3-CONTACT4"
    REL_3_NODE = "REL-3-NODE"
    REL_3_DELTA_INPUT = "REL-3-DELTA-INPUT"
    REL_3_TT = "REL-3-TT"

    @classmethod
    def from_string(cls, text):
        for member in cls:
            if member.value == text:
                return member
        raise ValueError(f"unknown lemma id {text!r}; known: "
                         + ", ".join(m.value for m in cls))


#: space each relation lives on
_LEMMA_SPACE = {
    LemmaId.REL_111_DELTA: "X111",
    LemmaId.REL_111_RAM_P: "X111",
    LemmaId.REL_111_RAM_Q: "X111",
    LemmaId.REL_21_TRIPLE: "PE",
    LemmaId.REL_21_NODE: "PE",
    LemmaId.REL_3_CONTACT4: "X3",
    LemmaId.REL_3_NODE: "X3",
    LemmaId.REL_3_DELTA_INPUT: "X3",
    LemmaId.REL_3_TT: "X3",
}

#: frozen expected classes, in canonical serialization
EXPECTED = {
    LemmaId.REL_111_DELTA: "zeta_p + zeta_q - (g+2)*z - a1",
    LemmaId.REL_111_RAM_P: "zeta_p",
    LemmaId.REL_111_RAM_Q: "zeta_q",
    LemmaId.REL_21_TRIPLE: "-zeta_p + (g+2)*z + a1",
    LemmaId.REL_21_NODE: "3*zeta_p - (g+4)*z - a1",
    LemmaId.REL_3_CONTACT4: "-3*zeta_p + (2*g+4)*z + 2*a1",
    LemmaId.REL_3_NODE: "3*zeta_p - (g+4)*z - a1",
    LemmaId.REL_3_DELTA_INPUT: "(8*g+12)*a1 - 9*a2p",
    LemmaId.REL_3_TT: "-zeta_p - g*z - a1 + 3*a2p",
}


@dataclass(frozen=True)
class Verdict:
    lemma: str
    computed: ChowElement
    expected: ChowElement
    passed: bool
    narrative: tuple = ()

    def __bool__(self):
        return self.passed


class StageFailure(RuntimeError):
    """An intermediate identity of a verification chain failed."""

    def __init__(self, stage, detail):
        self.stage = stage
        super().__init__(f"stage {stage!r} failed: {detail}")


@dataclass(frozen=True)
class ChainReport:
    c3_free: ChowElement
    c3_reduced: ChowElement
    push_gamma: ChowElement
    push_pi: ChowElement
    alpha_Y: ChowElement
    tt_class: ChowElement

    def stages(self):
        return (("c3-free", self.c3_free), ("c3-reduced", self.c3_reduced),
                ("push-gamma", self.push_gamma), ("push-pi", self.push_pi),
                ("alpha-Y", self.alpha_Y), ("tt-class", self.tt_class))


@dataclass(frozen=True)
class TrivialityReport:
    mu: tuple
    passed: bool
    narrative: tuple
    #: generator name -> (numerator element, denominator polynomial),
    #: meaning den * generator = numerator modulo the relations
    solved: dict = field(default_factory=dict)
    determinant: ParamPoly | None = None
    det_roots: tuple | None = None
    rank: int | None = None
    basis: tuple = ()

    def __bool__(self):
        return self.passed


def _ctx_for(lemma, g):
    return build_space(_LEMMA_SPACE[lemma], g=g)


def _expected_elem(lemma, g):
    symbolic = build_space(_LEMMA_SPACE[lemma]).parse(EXPECTED[lemma])
    if g is None:
        return symbolic
    return symbolic.evaluate(g)


def _line_class(*summands):
    total = summands[0]
    for s in summands[1:]:
        total = total + s
    return total


def verify_relation(lemma, g=None):
    """Rebuild one relation class from its recipe and compare.

    Accepts a LemmaId or its string value.  g=None verifies symbolically.
    """
    if isinstance(lemma, str):
        lemma = LemmaId.from_string(lemma)
    ctx = _ctx_for(lemma, g)
    narrative = []

    if lemma is LemmaId.REL_111_DELTA:
        # the divisor is cut by a section of eta_p^* O(1) tensor eta_q^* Q
        taut = ctx.gen("zeta_p")
        cq = ctx.cls("c1Q_q")
        narrative.append(("c1 of eta_p^* O(1)", taut))
        narrative.append(("c1 of eta_q^* Q", cq))
        computed = taut + cq
    elif lemma in (LemmaId.REL_111_RAM_P, LemmaId.REL_111_RAM_Q):
        s = "p" if lemma is LemmaId.REL_111_RAM_P else "q"
        omega = ctx.cls(f"c1Omega_vert_{s}")
        w = ctx.cls(f"c1W_{s}")
        narrative.append((f"c1 of Omega_vert at {s}", omega))
        narrative.append((f"c1 of W at {s}", w))
        computed = _line_class(omega, w)
    elif lemma is LemmaId.REL_21_TRIPLE:
        omega = ctx.cls("c1Omega_vert")
        w = ctx.cls("c1W")
        narrative.append(("c1 of Omega_vert^2", 2 * omega))
        narrative.append(("c1 of W", w))
        computed = _line_class(2 * omega, w)
    elif lemma in (LemmaId.REL_21_NODE, LemmaId.REL_3_NODE):
        base = ctx.cls("c1Omega_base")
        w = ctx.cls("c1W")
        narrative.append(("c1 of gamma^* Omega_base", base))
        narrative.append(("c1 of W", w))
        computed = _line_class(base, w)
    elif lemma is LemmaId.REL_3_CONTACT4:
        omega = ctx.cls("c1Omega_vert")
        w = ctx.cls("c1W")
        narrative.append(("c1 of Omega_vert^3", 3 * omega))
        narrative.append(("c1 of W", w))
        computed = _line_class(3 * omega, w)
    elif lemma is LemmaId.REL_3_DELTA_INPUT:
        # quoted input, not a derivation; restated directly
        computed = _expected_elem(lemma, g)
        narrative.append(("quoted divisor class", computed))
    elif lemma is LemmaId.REL_3_TT:
        report = tt_chain(g=g)
        computed = report.tt_class
        narrative.append(("tt chain result", computed))
    else:  # pragma: no cover
        raise ValueError(f"unhandled lemma {lemma}")

    expected = _expected_elem(lemma, g)
    return Verdict(lemma=lemma.value, computed=computed, expected=expected,
                   passed=(computed - expected).is_zero(),
                   narrative=tuple(narrative))


def verify_all(g=None):
    """Ordered dict of every lemma's Verdict."""
    return {lemma.value: verify_relation(lemma, g=g) for lemma in LemmaId}


def tt_chain(g=None):
    """Run the triple-total-ramification pushforward chain end to end.

    Stages: free cubic expansion of c3 of the second principal parts of W,
    reduction, gamma and pi pushforwards, the excess class alpha_Y on the
    diagonal, and the resulting divisor class.  Any mismatch raises
    StageFailure naming the stage.
    """
    ctx = build_space("X3", g=g)
    free = ctx.ring.free()
    zeta = free.gen("zeta_p")
    a_free = lift(ctx.cls("c1E"), _FreeCtx(free))
    w_free = lift(ctx.cls("c1W"), _FreeCtx(free))
    om_free = lift(ctx.cls("c1Omega_vert"), _FreeCtx(free))

    c3_free = principal_parts_chern(w_free, om_free, 2).top_chern()
    want_free = -3 * zeta ** 3 + 4 * a_free * zeta ** 2 \
        - a_free * a_free * zeta
    if c3_free != want_free:
        raise StageFailure("c3-free", f"got {c3_free}")

    c3_reduced = c3_free.reduce()
    b_cls = ctx.cls("c2E")
    want_reduced = 3 * b_cls * ctx.gen("zeta_p") - ctx.cls("c1E") * b_cls
    if c3_reduced != want_reduced:
        raise StageFailure("c3-reduced", f"got {c3_reduced}")

    p_ctx = build_space("P", g=g)
    push_gamma = pushforward(ctx, c3_reduced, "gamma")
    if push_gamma != 3 * p_ctx.cls("c2E"):
        raise StageFailure("push-gamma", f"got {push_gamma}")

    b_ctx = build_space("B", g=g)
    push_pi = pushforward(p_ctx, push_gamma, "pi")
    if push_pi != 3 * b_ctx.gen("a2p"):
        raise StageFailure("push-pi", f"got {push_pi}")

    # excess class on the diagonal: ambient normal bundle is the second
    # principal parts of W on the q factor, restricted by zeta_q -> zeta_p
    xt = build_space("Xtilde3", g=g)
    p2_q = principal_parts_chern(xt.cls("c1W_q"), xt.cls("c1Omega_vert_q"), 2)
    n_ambient = BundleClass(3, diagonal(xt, p2_q.total))
    # T_{PE/B} as the extension of the two relative tangent lines
    t_vert = BundleClass.line(2 * ctx.gen("zeta_p") - ctx.cls("c1E"))
    t_base = BundleClass.line(2 * ctx.gen("z"))
    n_component = t_vert.whitney(t_base)
    if n_component.c1 != ctx.cls("c1T_rel_B"):
        raise StageFailure("alpha-Y", "relative tangent c1 mismatch")
    alpha = excess_class(n_ambient, n_component)
    gp = ctx.const(G) if g is None else ctx.const(g)
    want_alpha = ctx.gen("zeta_p") + ctx.gen("a1") + gp * ctx.gen("z")
    if alpha != want_alpha:
        raise StageFailure("alpha-Y", f"got {alpha}")

    tt_class = lift(push_pi, ctx) - alpha
    want_tt = _expected_elem(LemmaId.REL_3_TT, g)
    if tt_class != want_tt:
        raise StageFailure("tt-class", f"got {tt_class}")

    return ChainReport(c3_free=c3_free, c3_reduced=c3_reduced,
                       push_gamma=push_gamma, push_pi=push_pi,
                       alpha_Y=alpha, tt_class=tt_class)


class _FreeCtx:
    """Minimal context wrapper so lift() can target a free presentation."""

    def __init__(self, ring):
        self.ring = ring


# -- triviality --

_MU_NORMAL = {
    (3,): (3,),
    (2, 1): (2, 1),
    (1, 1, 1): (1, 1, 1),
}

_BASE_GENS_DEG1 = ("a1", "a2p")
_BASE_GENS_DEG2 = ("a2", "c2")

#: row order of the homogeneous mu=(3) system
_MU3_ROWS = (LemmaId.REL_3_DELTA_INPUT, LemmaId.REL_3_CONTACT4,
             LemmaId.REL_3_NODE, LemmaId.REL_3_TT)
_MU3_BASIS = ("zeta_p", "z", "a1", "a2p")


def normalize_mu(mu):
    key = tuple(sorted(mu, reverse=True))
    if key not in _MU_NORMAL:
        raise ValueError(f"mu must be (3), (2,1) or (1,1,1), got {tuple(mu)}")
    return key


def _linear_row(element, basis):
    """Coefficients of a degree-1 class in the named generators.

    Raises when the class has terms outside the span of the basis.
    """
    row = []
    seen = set()
    for name in basis:
        coeff = element.coefficient(**{name: 1})
        row.append(coeff)
        if not coeff.is_zero():
            exps = [0] * len(element.ring.generators)
            exps[element.ring.index_of(name)] = 1
            seen.add(tuple(exps))
    extra = set(element.terms) - seen
    if extra:
        raise ValueError(f"class has terms outside basis {basis}")
    return row


def relation_matrix(mu, g=None):
    """(basis, rows, labels) of the degree-1 relation system for mu.

    Rows come straight from the verified relation classes, in documented
    order; base generators are not included here.
    """
    mu = normalize_mu(mu)
    if mu == (3,):
        lemmas = _MU3_ROWS
        basis = _MU3_BASIS
    elif mu == (2, 1):
        lemmas = (LemmaId.REL_21_TRIPLE, LemmaId.REL_21_NODE)
        basis = ("zeta_p", "z", "a1")
    else:
        lemmas = (LemmaId.REL_111_DELTA, LemmaId.REL_111_RAM_P,
                  LemmaId.REL_111_RAM_Q)
        basis = ("zeta_p", "zeta_q", "z", "a1")
    rows = []
    for lemma in lemmas:
        verdict = verify_relation(lemma, g=g)
        if not verdict.passed:
            raise StageFailure("relation-matrix",
                               f"{lemma.value} failed verification")
        rows.append(_linear_row(verdict.computed, basis))
    return basis, rows, tuple(lemma.value for lemma in lemmas)


def relation_determinant():
    """Determinant of the 4x4 mu=(3) system in basis (zeta_p, z, a1, a2p)."""
    _, rows, _ = relation_matrix((3,))
    return bareiss_det(rows)


def triviality_check(mu, g=None):
    """Certify that every positive-degree generator dies for this mu.

    Base-ring generators (a1, a2, a2p, c2) vanish as a trusted input; the
    certificate shows the relation set then kills the remaining degree-1
    generators, with denominators that provably never vanish at integers
    g >= 0.  Substituted solutions are re-checked against every relation
    exactly.
    """
    mu = normalize_mu(mu)
    if mu == (2, 1):
        return _triviality_21(g)
    if mu == (1, 1, 1):
        return _triviality_111(g)
    return _triviality_3(g)


def _gpoly(g):
    return G if g is None else ParamPoly.const(g)


def _triviality_21(g):
    basis, rows, labels = relation_matrix((2, 1), g=g)
    ctx = build_space("PE", g=g)
    # move the a1 column to the right-hand side and solve for (zeta_p, z)
    a_mat = [row[:2] for row in rows]
    rhs = [-row[2] for row in rows]
    nums, den = solve_cramer(a_mat, rhs)
    # normalize: den * gen = num * a1
    a1 = ctx.gen("a1")
    solved = {}
    narrative = []
    ok = True
    for name, num in zip(basis[:2], nums):
        solved[name] = (ctx.const(num) * a1, den)
        narrative.append(f"({den}) * {name} = ({num}) * a1")
    if not den.nonvanishing_for_nonneg_g():
        ok = False
        narrative.append(f"denominator {den} vanishes at an admissible g")
    else:
        narrative.append(f"denominator {den} never vanishes for integer "
                         "g >= 0")
    # substitute back: den * relation at (zeta_p, z) = (num_z, num_zz) * a1
    for row, label in zip(rows, labels):
        residual = ctx.const(row[0] * nums[0] + row[1] * nums[1]
                             + row[2] * den) * a1
        if not residual.is_zero():
            ok = False
            narrative.append(f"substitution residual in {label}: {residual}")
    narrative.append("a1 = 0 and a2p = 0 as trusted base inputs, so "
                     "zeta_p = z = 0")
    narrative.append("degree 2: a2 = c2 = 0 trusted; all other degree-2 "
                     "monomials are products of vanishing degree-1 classes")
    return TrivialityReport(mu=(2, 1), passed=ok, narrative=tuple(narrative),
                            solved=solved, basis=basis)


def _triviality_111(g):
    basis, rows, labels = relation_matrix((1, 1, 1), g=g)
    ctx = build_space("X111", g=g)
    narrative = []
    ok = True
    # full degree-1 system: lemma relations plus trusted base generators
    full_basis = ("zeta_p", "zeta_q", "z", "a1", "a2p")
    full_rows = [row + [ParamPoly()] for row in rows]
    for name in _BASE_GENS_DEG1:
        full_rows.append([ParamPoly.const(1) if b == name else ParamPoly()
                          for b in full_basis])
    rank = param_rank(full_rows)
    if rank != len(full_basis):
        ok = False
        narrative.append(f"rank {rank} < {len(full_basis)}: degree-1 "
                         "generators not all killed")
    else:
        narrative.append("relation matrix has certified full rank "
                         f"{rank} on {', '.join(full_basis)}")
    # the explicit solve the narrative quotes: (g+2) z = zeta_p+zeta_q-a1
    zp, zq = ctx.gen("zeta_p"), ctx.gen("zeta_q")
    z, a1 = ctx.gen("z"), ctx.gen("a1")
    den = _gpoly(g) + 2
    num = zp + zq - a1
    delta = verify_relation(LemmaId.REL_111_DELTA, g=g).computed
    if ctx.const(den) * z - num != -delta:
        ok = False
        narrative.append("cleared-denominator identity for z failed")
    solved = {"zeta_p": (ctx.zero(), ParamPoly.const(1)),
              "zeta_q": (ctx.zero(), ParamPoly.const(1)),
              "z": (num, den)}
    narrative.append(f"({den}) * z = zeta_p + zeta_q - a1, and the right "
                     "side is a sum of vanishing classes")
    if not den.nonvanishing_for_nonneg_g():
        ok = False
        narrative.append(f"denominator {den} vanishes at an admissible g")
    narrative.append("degree 2: a2 = c2 = 0 trusted; products of vanishing "
                     "degree-1 classes cover the rest")
    return TrivialityReport(mu=(1, 1, 1), passed=ok,
                            narrative=tuple(narrative), solved=solved,
                            basis=full_basis, rank=rank)


def _triviality_3(g):
    basis, rows, labels = relation_matrix((3,), g=g)
    det = bareiss_det(rows)
    narrative = [f"relation rows {', '.join(labels)}",
                 f"determinant in basis ({', '.join(basis)}): {det}"]
    ok = True
    if det.is_zero():
        ok = False
        roots = ()
        narrative.append("determinant vanishes identically")
    else:
        roots = tuple(det.nonneg_integer_roots())
        if roots:
            ok = False
            narrative.append(f"determinant vanishes at g = {roots}")
        else:
            narrative.append("determinant has no nonnegative integer roots")
    rank = param_rank(rows)
    if rank != len(basis):
        ok = False
        narrative.append(f"certified rank {rank} < {len(basis)}")
    else:
        narrative.append(f"certified rank {rank}: the homogeneous system "
                         "kills every degree-1 generator")
    narrative.append("degree 2: a2 = c2 = 0 trusted; products of vanishing "
                     "degree-1 classes cover the rest")
    return TrivialityReport(mu=(3,), passed=ok, narrative=tuple(narrative),
                            determinant=det, det_roots=roots, rank=rank,
                            basis=basis)
