"""Finiteness conditions, the verdict rule table, structure bounds and the exceptional set.

Two input shapes feed the verdict engine:

* a :class:`PairSpec` (k, pi) for torsion over the iterate extension K~, judged by
  the weight condition (W) and the root-of-unity condition (mu);
* a :class:`CharacterSpec` for a crystalline character chi, judged by the primed
  conditions (W)' and (mu)' and the Hodge-Tate sum h.

Verdicts quantify over a whole class of groups.  ``exists_infinite`` is only
emitted in the K~ context when (mu) holds, where the multiplicative group is
an explicit witness.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import sympy

from . import poly as P
from .algebraic import (
    AlgebraicNumber,
    enumerate_weil_polys,
    is_root_of_unity,
    is_weil,
    power_roots_poly,
    product_power_conjugates,
)
from .errors import (
    CapExceeded,
    ContextMismatch,
    HodgeTateSumZero,
    InputError,
    MissingConductorBound,
    MissingH1Flag,
    NotBaseQp,
    NotUniformizer,
)
from .padic import LocalFieldModel, PadicNumber, galois_closure_degree, multiplication_matrix, norm_to_Qp

MAX_EXCEPTIONAL = 2
EXPAND_LIMIT = 4
FACTOR_DEGREE_LIMIT = 24


class Verdict(str, enum.Enum):
    ALL_FINITE = "all_finite"
    EXISTS_INFINITE = "exists_infinite"
    UNKNOWN = "unknown"

    @property
    def exit_code(self) -> int:
        return {"all_finite": 0, "exists_infinite": 10, "unknown": 20}[self.value]


class GroupClass(str, enum.Enum):
    TORUS = "torus"
    AV = "av_potential_good"
    GENERAL = "commutative_general"

    @classmethod
    def parse(cls, text) -> "GroupClass":
        if isinstance(text, GroupClass):
            return text
        aliases = {"av": cls.AV, "abelian": cls.AV, "general": cls.GENERAL}
        if text in aliases:
            return aliases[text]
        try:
            return cls(text)
        except ValueError:
            raise InputError(f"unknown group class {text!r}") from None


class Context(str, enum.Enum):
    KTILDE = "Ktilde"
    CHARACTER = "character_field"


# -- inputs ---------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PairSpec:
    """A base field k with a uniformizer pi from its global model."""

    field: LocalFieldModel
    pi: PadicNumber
    d_G: int
    nr: Fraction

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def d(self) -> int:
        return self.field.d

    @property
    def nr_algebraic(self) -> AlgebraicNumber:
        return AlgebraicNumber.rational(self.nr)

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "pi": self.pi.to_json(),
            "d_G": self.d_G,
            "nr": P.rational_to_json(self.nr),
            "q": self.q,
        }


def make_pair(field: LocalFieldModel, pi=None, d_G: int | None = None) -> PairSpec:
    pi = field.uniformizer if pi is None else (
        PadicNumber.from_json(field, pi) if not isinstance(pi, PadicNumber) else pi)
    if not pi.is_exact:
        raise NotUniformizer("the uniformizer must be an exact global-model element")
    v = pi.valuation()
    if v.value != Fraction(1, field.e):
        raise NotUniformizer(f"v(pi) = {v}, expected 1/{field.e}")
    return PairSpec(field, pi, galois_closure_degree(field, d_G), norm_to_Qp(field, pi))


@dataclass(frozen=True)
class CharacterSpec:
    """Invariants of a crystalline character chi: G_k -> E^x.

    ``delta_norm`` is Nr_{E/Q_p}(delta_chi).  It is derived from ``delta``
    when omitted, assuming the minimal polynomial of delta over Q stays
    irreducible over Q_p.
    """

    e_degree: int
    ht_weights: tuple
    d_tilde: int
    q_k: int
    delta_norm: AlgebraicNumber
    delta: AlgebraicNumber | None = None
    h1: bool = False
    e_galois_degree: int | None = None

    def __post_init__(self):
        if len(self.ht_weights) != self.e_degree:
            raise InputError("need one Hodge-Tate weight per embedding of E")
        if self.d_tilde < 1 or self.q_k < 2:
            raise InputError("d_tilde must be positive and q_k a prime power")

    @property
    def h(self) -> int:
        return sum(self.ht_weights)

    def inverse(self) -> "CharacterSpec":
        """The invariants of chi^{-1}: weights negate and delta inverts."""
        return CharacterSpec(
            self.e_degree,
            tuple(-w for w in self.ht_weights),
            self.d_tilde,
            self.q_k,
            self.delta_norm.inverse(),
            None if self.delta is None else self.delta.inverse(),
            self.h1,
            self.e_galois_degree,
        )

    def to_json(self) -> dict:
        return {
            "e_degree": self.e_degree,
            "ht_weights": list(self.ht_weights),
            "h": self.h,
            "d_tilde": self.d_tilde,
            "q_k": self.q_k,
            "delta_norm": self.delta_norm.to_json(),
            "delta": None if self.delta is None else self.delta.to_json(),
            "h1": self.h1,
        }


def character_spec(e_degree: int, ht_weights, d_tilde: int, q_k: int, delta=None,
                   delta_norm=None, h1: bool = False, e_galois_degree=None) -> CharacterSpec:
    """Build a spec, deriving Nr_{E/Q_p}(delta) from delta when not supplied."""
    if delta is not None and not isinstance(delta, AlgebraicNumber):
        from .algebraic import algebraic_from_poly
        delta = algebraic_from_poly(delta)
    if delta_norm is None:
        if delta is None:
            raise InputError("supply delta or delta_norm")
        m = delta.degree
        if e_degree % m:
            raise InputError("deg(delta) must divide [E:Q_p]; supply delta_norm")
        delta_norm = AlgebraicNumber.rational(delta.norm() ** (e_degree // m))
    elif not isinstance(delta_norm, AlgebraicNumber):
        delta_norm = AlgebraicNumber.rational(delta_norm)
    return CharacterSpec(e_degree, tuple(int(w) for w in ht_weights), d_tilde, q_k,
                         delta_norm, delta, h1, e_galois_degree)


def _min_poly_of(x: PadicNumber) -> AlgebraicNumber:
    mat = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in row]
                        for row in multiplication_matrix(x)])
    cp = P.from_sympy(mat.charpoly(sympy.Symbol("x")))
    return AlgebraicNumber(P.squarefree_part(cp))


def lubin_tate_character_spec(pair: PairSpec) -> CharacterSpec:
    """Invariants of the Lubin-Tate character of pi: delta = pi, weights (1, 0, ..., 0)."""
    d = pair.d
    return CharacterSpec(
        e_degree=d,
        ht_weights=(1,) + (0,) * (d - 1),
        d_tilde=pair.d_G,
        q_k=pair.q,
        delta_norm=pair.nr_algebraic,
        delta=_min_poly_of(pair.pi),
        h1=True,
        e_galois_degree=pair.d_G,
    )


# -- conditions ----------------------------------------------------------------------


@dataclass(frozen=True)
class WeightCondition:
    holds: bool
    witnesses: tuple
    note: str = ""

    def to_json(self) -> dict:
        return {"holds": self.holds, "witnesses": list(self.witnesses), "note": self.note}


@dataclass(frozen=True)
class UnityCondition:
    holds: bool
    order: int | None

    def to_json(self) -> dict:
        return {"holds": self.holds, "order": self.order}


def _weight_scan(alpha: AlgebraicNumber, q: int, top: int, bound: int, integral: bool) -> WeightCondition:
    if integral and not alpha.integer_flag:
        return WeightCondition(False, (), "norm is not an algebraic integer")
    wits = tuple(c for c in range(1, bound + 1)
                 if is_weil(alpha, q, Fraction(top, c), require_integer=integral, margin=False).holds)
    return WeightCondition(bool(wits), wits)


def condition_W(pair: PairSpec) -> WeightCondition:
    """Nr(pi) is a q-Weil integer of weight d_G/c for some 1 <= c <= d_G."""
    return _weight_scan(pair.nr_algebraic, pair.q, pair.d_G, pair.d_G, True)


def condition_mu(pair: PairSpec) -> UnityCondition:
    """Nr(pi)/q is a root of unity."""
    order = is_root_of_unity(pair.nr_algebraic.scale(Fraction(1, pair.q)))
    return UnityCondition(order is not None, order)


def condition_W_prime(spec: CharacterSpec) -> WeightCondition:
    """Nr(delta) is a q_k-Weil number of weight h*d~/c, integral when h > 0."""
    h = spec.h
    if h == 0:
        raise HodgeTateSumZero("h = 0: use the Hodge-Tate-sum-zero rule instead")
    return _weight_scan(spec.delta_norm, spec.q_k, h * spec.d_tilde, spec.d_tilde, h > 0)


def condition_mu_prime(spec: CharacterSpec) -> UnityCondition:
    """q_k^(-h) Nr(delta) is a root of unity."""
    alpha = spec.delta_norm.scale(Fraction(spec.q_k) ** (-spec.h))
    order = is_root_of_unity(alpha)
    return UnityCondition(order is not None, order)


# -- verdicts -------------------------------------------------------------------------

CITE_AV = "finiteness for abelian varieties with potential good reduction when (W) fails"
CITE_GENERAL = "finiteness for commutative algebraic groups when neither (W) nor (mu) holds"
CITE_MU = ("(mu) puts all p-power roots of unity into the tower; "
           "the multiplicative group has infinite torsion")
CITE_TORUS = "tori: torsion is finite exactly when the tower has finitely many roots of unity, i.e. (mu) fails"
CITE_CHAR_AV = "character field: finiteness for abelian varieties with potential good reduction when (W)' fails"
CITE_CHAR_GENERAL = "character field: finiteness for commutative algebraic groups when neither (W)' nor (mu)' holds"
CITE_CHAR_H0 = "character field with Hodge-Tate sum zero: finiteness for commutative algebraic groups under (H1)"
CITE_NONE = "no rule decides this class under these conditions"


def decide(context: Context, group_class: GroupClass, W: bool | None, mu: bool,
           h: int | None = None) -> tuple[Verdict, str]:
    """The rule table.  ``W`` may be None only in the character context with h = 0."""
    if context is Context.KTILDE:
        if group_class is GroupClass.AV:
            return (Verdict.ALL_FINITE, CITE_AV) if not W else (Verdict.UNKNOWN, CITE_NONE)
        if group_class is GroupClass.TORUS:
            return (Verdict.EXISTS_INFINITE, CITE_MU) if mu else (Verdict.ALL_FINITE, CITE_TORUS)
        if mu:
            return Verdict.EXISTS_INFINITE, CITE_MU
        return (Verdict.ALL_FINITE, CITE_GENERAL) if not W else (Verdict.UNKNOWN, CITE_NONE)
    if h == 0:
        return Verdict.ALL_FINITE, CITE_CHAR_H0
    if group_class is GroupClass.AV:
        return (Verdict.ALL_FINITE, CITE_CHAR_AV) if not W else (Verdict.UNKNOWN, CITE_NONE)
    if not W and not mu:
        return Verdict.ALL_FINITE, CITE_CHAR_GENERAL
    return Verdict.UNKNOWN, CITE_NONE


@dataclass(frozen=True)
class VerdictReport:
    context: Context
    group_class: GroupClass
    conditions: dict
    verdict: Verdict
    citation: str
    notes: tuple = ()

    @property
    def exit_code(self) -> int:
        return self.verdict.exit_code

    def to_json(self) -> dict:
        return {
            "context": self.context.value,
            "class": self.group_class.value,
            "conditions": self.conditions,
            "verdict": self.verdict.value,
            "citation": self.citation,
            "notes": list(self.notes),
        }


def verdict(spec, group_class, context=None) -> VerdictReport:
    gc = GroupClass.parse(group_class)
    natural = Context.KTILDE if isinstance(spec, PairSpec) else Context.CHARACTER
    if not isinstance(spec, (PairSpec, CharacterSpec)):
        raise InputError("verdict expects a PairSpec or a CharacterSpec")
    if context is not None and Context(context) is not natural:
        raise ContextMismatch(f"{type(spec).__name__} belongs to the {natural.value} context")
    notes = []
    if natural is Context.KTILDE:
        W, mu = condition_W(spec), condition_mu(spec)
        conds = {"W": W.to_json(), "mu": mu.to_json()}
        v, cite = decide(natural, gc, W.holds, mu.holds)
        if W.note:
            notes.append(W.note)
        if v is Verdict.EXISTS_INFINITE:
            notes.append("witness: the multiplicative group")
        return VerdictReport(natural, gc, conds, v, cite, tuple(notes))
    if not spec.h1:
        raise MissingH1Flag("the character context needs the finite-residue-field flag (H1)")
    mu = condition_mu_prime(spec)
    if spec.h == 0:
        conds = {"h": 0, "mu_prime": mu.to_json()}
        v, cite = decide(natural, gc, None, mu.holds, 0)
    else:
        W = condition_W_prime(spec)
        conds = {"h": spec.h, "W_prime": W.to_json(), "mu_prime": mu.to_json()}
        v, cite = decide(natural, gc, W.holds, mu.holds, spec.h)
        if W.note:
            notes.append(W.note)
    return VerdictReport(natural, gc, conds, v, cite, tuple(notes))


# -- structure bounds -----------------------------------------------------------------------


@dataclass(frozen=True)
class KData:
    """An extension K/k: degree [K:Q_p], residue degree [F_pi:F], conductor bound m."""

    degree: int
    residue_degree: int = 1
    conductor_bound: int | None = None


def unipotence_exponent(p: int, c: int, n: int) -> int:
    """lcm of (1 + p^c)^r - 1 over 1 <= r <= n."""
    if n < 1:
        raise InputError("n must be positive")
    out = 1
    for r in range(1, n + 1):
        out = math.lcm(out, (1 + p ** c) ** r - 1)
    return out


@dataclass(frozen=True)
class StructureReport:
    c: int
    c_exact: bool
    residue_bound: int
    abelian_bound: int
    galois_rank: int
    n: int
    unipotence_exponent: int

    def to_json(self) -> dict:
        return {
            "c": self.c,
            "c_exact": self.c_exact,
            "residue_bound": self.residue_bound,
            "abelian_bound": self.abelian_bound,
            "galois_rank": self.galois_rank,
            "n": self.n,
            "unipotence_exponent": self.unipotence_exponent,
            "citations": {
                "c": "least t >= 0 with 1 + p^t in the image of the Lubin-Tate character on G_K",
                "residue_bound": "residue degree of the torsion field divides p^c [F_pi:F]",
                "abelian_bound": "abelian part has exponent dividing p^(c[K:Q_p])",
                "galois_rank": "Z_p-rank [K:Q_p] of the Galois group over K k_pi",
                "unipotence_exponent": "tau^m acts unipotently for m = lcm((1+p^c)^r - 1)",
            },
        }


def structure_report(pair: PairSpec, K_data: KData | dict | None = None, n: int = 1) -> StructureReport:
    """Bounds attached to c = c(K/k, pi).

    For K = k the Lubin-Tate character is onto O_k^x, so c is 0 for odd p
    and 1 for p = 2.  Otherwise c is bounded by ceil(m/e) from a conductor
    bound m (the image contains 1 + pi^m O_k); every bound stays valid.
    """
    p, e = pair.field.p, pair.field.e
    if K_data is None:
        K = KData(pair.d, 1, None)
        c, exact = (0 if p != 2 else 1), True
    else:
        K = K_data if isinstance(K_data, KData) else KData(**K_data)
        if K.conductor_bound is None:
            raise MissingConductorBound("K differs from k: supply a conductor bound m")
        c = max(-(-K.conductor_bound // e), 1 if p == 2 else 0)
        exact = False
    if K.degree < 1 or K.residue_degree < 1:
        raise InputError("degrees must be positive")
    return StructureReport(
        c=c,
        c_exact=exact,
        residue_bound=p ** c * K.residue_degree,
        abelian_bound=p ** (c * K.degree),
        galois_rank=K.degree,
        n=n,
        unipotence_exponent=unipotence_exponent(p, c, n),
    )


# -- exceptional set ------------------------------------------------------------------------------


@dataclass(frozen=True)
class NormEquation:
    """x^(f_K * M) = zeta * N^(M/m): zeta a root of unity in Q_p, N a product of m conjugates of beta.

    M runs over the multiples of m up to ``bound``.  ``expansions`` holds, for
    each M with f_K * M small, a polynomial R_M with every solution among its roots.
    """

    beta: tuple
    f_K: int
    m: int
    bound: int
    norm_poly: tuple
    expansions: tuple  # ((M, R_M, factors or None), ...)

    def to_json(self) -> dict:
        return {
            "beta": _ints(self.beta),
            "f_K": self.f_K,
            "local_degree": self.m,
            "M_bound": self.bound,
            "norm_poly": _ints(self.norm_poly),
            "expansions": [
                {"M": M, "poly": _ints(R),
                 "factors": None if fs is None else [_ints(f) for f in fs]}
                for M, R, fs in self.expansions
            ],
        }


def _ints(a):
    return [int(c) if c.denominator == 1 else P.rational_to_json(c) for c in a]


@dataclass(frozen=True)
class ExceptionalSet:
    p: int
    f: int
    g: int
    explicit: tuple  # AlgebraicNumber, q times the roots of unity of Q_p
    t1: tuple  # integer polynomials
    bound: int
    equations: tuple

    def contains(self, x) -> bool | None:
        """Membership of an algebraic number; None when only unexpanded families could hold it."""
        alpha = x if isinstance(x, AlgebraicNumber) else AlgebraicNumber.rational(x)
        m = alpha.min_poly
        for a in self.explicit:
            if a.min_poly == m:
                return True
        for eq in self.equations:
            for _, R, _ in eq.expansions:
                if not P.divmod_poly(R, m)[1]:
                    return True
        if alpha.is_rational:
            return any(self._rational_in_family(alpha.value, eq) for eq in self.equations)
        return None

    def _rational_in_family(self, x: Fraction, eq: NormEquation) -> bool:
        # a rational solution forces zeta = +-1 and a rational N with |x|^(f_K m) = |N|
        if x == 0:
            return False
        roots = [-f[0] for f, _ in P.factor_rational(eq.norm_poly) if P.degree(f) == 1]
        signs = (1, -1)
        for N in roots:
            if N == 0 or abs(x) ** (eq.f_K * eq.m) != abs(N):
                continue
            for j in range(1, eq.bound // eq.m + 1):
                M = eq.m * j
                if any(x ** (eq.f_K * M) == s * N ** j for s in signs):
                    return True
                if j >= 2:
                    break
        return False

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "f": self.f,
            "g": self.g,
            "explicit": [_ints(a.min_poly) for a in self.explicit],
            "T1": [list(t) for t in self.t1],
            "degree_bound": self.bound,
            "equations": [e.to_json() for e in self.equations],
        }


def unity_order(p: int) -> int:
    """Order of the group of roots of unity in Q_p: p - 1, or 2 when p = 2."""
    return 2 if p == 2 else p - 1


def exceptional_set(f: int, g: int, field: LocalFieldModel) -> ExceptionalSet:
    """A finite superset of the norms Nr(pi) that can allow infinite torsion, for k = Q_p.

    The explicit part is q times all roots of unity of Q_p.  This contains
    q * mu_(p-1), and for p = 2 it also holds -2, whose pair satisfies (mu).
    """
    if field.d != 1:
        raise NotBaseQp("the exceptional set is only built for k = Q_p")
    if not (1 <= f <= MAX_EXCEPTIONAL and 1 <= g <= MAX_EXCEPTIONAL):
        raise CapExceeded(f"f and g must lie in 1..{MAX_EXCEPTIONAL}")
    p = field.p
    q = p
    w = unity_order(p)
    mu_poly = P.normalize([-(q ** w)] + [0] * (w - 1) + [1])
    explicit = tuple(AlgebraicNumber(fac) for fac, _ in P.factor_rational(mu_poly))
    t1 = sorted({c for w in range(0, f + 1) for c in enumerate_weil_polys(p, w, 2 * g)})
    bound = 1
    for beta in t1:
        bound *= math.factorial(len(beta) - 1)
    equations = []
    for beta in t1:
        n = len(beta) - 1
        bpoly = P.normalize(beta)
        for m in range(1, n + 1):
            Pm = product_power_conjugates(bpoly, [1] * m + [0] * (n - m)).poly
            for fK in range(1, f + 1):
                exps = []
                M = m
                while M <= bound and fK * M <= EXPAND_LIMIT:
                    S = P.squarefree_part(power_roots_poly(Pm, (M // m) * w))
                    step = fK * M * w
                    R = P.normalize(
                        c for i in range(len(S) * step - step + 1)
                        for c in ([S[i // step]] if i % step == 0 else [0]))
                    fs = None
                    if P.degree(R) <= FACTOR_DEGREE_LIMIT:
                        fs = tuple(fac for fac, _ in P.factor_rational(R))
                    exps.append((M, R, fs))
                    M += m
                equations.append(NormEquation(bpoly, fK, m, bound, Pm, tuple(exps)))
    return ExceptionalSet(p, f, g, explicit, tuple(t1), bound, tuple(equations))
