"""Mackey-functor-valued Bredon homology and cohomology.

The engine evaluates a coefficient Mackey functor M on products of orbits.
For a chain complex C of orbit cells and a subgroup H, the level-H chain
group in degree n is the direct sum of M(A n B n H) over the orbits of
(dual cell) x (primal cell) x G/H; boundaries act covariantly (conjugation
then transfer) in the primal slot and contravariantly (restriction then
conjugation) in the dual slot.  Restriction, transfer, and the Weyl action
between levels are the contravariant/covariant images of the projections
and translations of the G/H factor, so every structure map comes from one
mechanism and base change makes them commute with the differentials.

Homology in a fixed degree is then an honest Mackey functor; the engine
computes it levelwise with the exact integer homology machinery, induces
the structure maps on homology classes, and finally tries to recognize the
answer inside the named catalog (including sums with powers of ``g``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .catalog import catalog
from .exactalg import (
    AbHom,
    FgAbelian,
    ReducedComplex,
    direct_sum,
    induced_on_homology,
    mat,
)
from .functors import MackeyFunctor, covering_pairs, is_isomorphic
from .grouplat import Group, group
from .repcw import BurnsideComplex, VirtualRep, parse_rep, point_complex, sphere_complex


class AxiomFailure(Exception):
    pass


class GroupMismatch(Exception):
    pass


_VALIDATED_COEFFS: set[int] = set()


def _require_valid_coefficients(coeff: MackeyFunctor) -> None:
    """Coefficient systems must satisfy the Mackey axioms; checked once."""
    from .functors import check_axioms

    if id(coeff) in _VALIDATED_COEFFS:
        return
    report = check_axioms(coeff)
    if not report.ok:
        raise AxiomFailure(str(report))
    _VALIDATED_COEFFS.add(id(coeff))


# ---------------------------------------------------------------------------
# orbits of triple products, concretely


@lru_cache(maxsize=None)
def _orbit_table(group_name: str, stabs: tuple[str, str, str]):
    """Orbits of G/A x G/B x G/C: returns (reps, point->index, stab name)."""
    g = group(group_name)
    subs = [g.subgroup(s) for s in stabs]
    stab = g.subgroup(stabs[0])
    for s in subs[1:]:
        stab = g.intersect(stab, s)

    def act(x, pt):
        return tuple(g.coset(g.mul(x, p), subs[i]) for i, p in enumerate(pt))

    def key(pt):
        return tuple(g.elem_sort_key(p) for p in pt)

    points = list(itertools.product(*[g.cosets(s) for s in subs]))
    index: dict[tuple[str, str, str], int] = {}
    reps: list[tuple[str, str, str]] = []
    for pt in sorted(points, key=key):
        if pt in index:
            continue
        orbit = {act(x, pt) for x in g.elements}
        idx = len(reps)
        reps.append(pt)
        for q in orbit:
            index[q] = idx
    return tuple(reps), index, stab.name


@lru_cache(maxsize=None)
def _locate(group_name: str, stabs: tuple[str, str, str], pt):
    """Orbit index of pt and a translation u with u . rep = pt."""
    g = group(group_name)
    reps, index, _ = _orbit_table(group_name, stabs)
    idx = index[pt]
    rep = reps[idx]
    subs = [g.subgroup(s) for s in stabs]
    for u in g.elements:
        if all(
            g.coset(g.mul(u, rep[i]), subs[i]) == pt[i] for i in range(3)
        ):
            return idx, u
    raise RuntimeError("translation not found")


# ---------------------------------------------------------------------------
# the engine


@dataclass(frozen=True)
class _Summand:
    p: int  # dual degree
    di: int  # dual cell index
    q: int  # primal degree
    pi: int  # primal cell index
    orbit: int  # orbit index in the triple product
    stab: str  # stabilizer subgroup name


class MackeyHomology:
    """A two-sided Bredon complex with coefficients, evaluated at all levels.

    ``primal`` contributes homologically (degree +q), ``dual``
    cohomologically (degree -p); either may be a point.  ``offset`` shifts
    reported degrees, implementing formal suspensions by trivial summands.
    """

    def __init__(
        self,
        coeff: MackeyFunctor,
        primal: BurnsideComplex | None = None,
        dual: BurnsideComplex | None = None,
        offset: int = 0,
    ):
        self.group_name = coeff.group_name
        self.g: Group = group(self.group_name)
        if primal is None:
            primal = point_complex(self.group_name)
        if dual is None:
            dual = point_complex(self.group_name)
        if primal.group_name != self.group_name or dual.group_name != self.group_name:
            raise GroupMismatch("complexes and coefficients over different groups")
        _require_valid_coefficients(coeff)
        self.coeff = coeff
        self.primal = primal
        self.dual = dual
        self.offset = offset
        self.levels = [s.name for s in self.g.subgroups()]
        self._summands: dict[str, dict[int, list[_Summand]]] = {}
        self._groups: dict[str, dict[int, FgAbelian]] = {}
        self._slices: dict[str, dict[int, list[tuple[int, int]]]] = {}
        self._complex: dict[str, ReducedComplex] = {}
        self._homology_cache: dict[tuple[str, int], object] = {}
        self._functor_cache: dict[int, MackeyFunctor] = {}
        self._hom_cache: dict[tuple, AbHom] = {}
        self._level_map_cache: dict[tuple, dict[int, AbHom]] = {}
        for h in self.levels:
            self._build_level(h)

    # -- chain-level assembly ------------------------------------------------

    def _build_level(self, h: str) -> None:
        g = self.g
        summands: dict[int, list[_Summand]] = {}
        for p in sorted(self.dual.cells):
            for q in sorted(self.primal.cells):
                t = q - p
                for di, ka in enumerate(self.dual.cells[p]):
                    for pi, kb in enumerate(self.primal.cells[q]):
                        reps, _, stab = _orbit_table(g.name, (ka, kb, h))
                        for oi in range(len(reps)):
                            summands.setdefault(t, []).append(
                                _Summand(p, di, q, pi, oi, stab)
                            )
        groups: dict[int, FgAbelian] = {}
        slices: dict[int, list[tuple[int, int]]] = {}
        for t, lst in summands.items():
            offs = []
            pos = 0
            for s in lst:
                n = self.coeff.levels[s.stab].ngens
                offs.append((pos, n))
                pos += n
            slices[t] = offs
            groups[t] = direct_sum([self.coeff.levels[s.stab] for s in lst])
        diffs: dict[int, AbHom] = {}
        degrees = sorted(summands)
        for t in degrees:
            if t - 1 not in summands:
                continue
            diffs[t] = self._boundary(h, summands, slices, groups, t)
        self._summands[h] = summands
        self._groups[h] = groups
        self._slices[h] = slices
        self._complex[h] = ReducedComplex(groups, diffs)

    def _boundary(self, h, summands, slices, groups, t) -> AbHom:
        g = self.g
        src = summands[t]
        tgt = summands[t - 1]
        tgt_pos = {
            (s.p, s.di, s.q, s.pi, s.orbit): k for k, s in enumerate(tgt)
        }
        dom = groups[t]
        cod = groups[t - 1]
        m = [[0] * dom.ngens for _ in range(cod.ngens)]

        def add_block(ti, si, hom: AbHom, coeff: int):
            r0, _ = slices[t - 1][ti]
            c0, _ = slices[t][si]
            for a, row in enumerate(hom.matrix):
                for b, x in enumerate(row):
                    m[r0 + a][c0 + b] += coeff * x

        for si, s in enumerate(src):
            ka = self.dual.cells[s.p][s.di]
            kb = self.primal.cells[s.q][s.pi]
            reps, _, _ = _orbit_table(g.name, (ka, kb, h))
            base = reps[s.orbit]
            # primal direction: covariant, degree q -> q-1
            for (ti_c, sj_c), entry in self.primal.diff.get(s.q, {}).items():
                if sj_c != s.pi:
                    continue
                kb2 = self.primal.cells[s.q - 1][ti_c]
                for coeff, u in entry:
                    pt = (
                        base[0],
                        g.coset(g.mul(base[1], u), g.subgroup(kb2)),
                        base[2],
                    )
                    oi, w = _locate(g.name, (ka, kb2, h), pt)
                    ti = tgt_pos[(s.p, s.di, s.q - 1, ti_c, oi)]
                    add_block(ti, si, self._covariant(s.stab, tgt[ti].stab, w), coeff)
        # dual direction: contravariant, dual degree p -> p+1, Koszul sign.
        # Components are indexed by target orbits: for a cell map
        # phi_u: (cell in degree p+1) -> (cell in degree p), apply M^* to
        # phi_u x id x id, whose components go from the orbit containing
        # the image of each (p+1)-side orbit to that orbit.
        src_pos = {
            (s.p, s.di, s.q, s.pi, s.orbit): k for k, s in enumerate(src)
        }
        for ti, s2 in enumerate(tgt):
            kb = self.primal.cells[s2.q][s2.pi]
            ka2 = self.dual.cells[s2.p][s2.di]
            reps2, _, _ = _orbit_table(g.name, (ka2, kb, h))
            base2 = reps2[s2.orbit]
            sign = -1 if s2.q % 2 else 1
            for (i_tgt, j_src), entry in self.dual.diff.get(s2.p, {}).items():
                if j_src != s2.di:
                    continue
                ka = self.dual.cells[s2.p - 1][i_tgt]
                for coeff, u in entry:
                    pt = (
                        g.coset(g.mul(base2[0], u), g.subgroup(ka)),
                        base2[1],
                        base2[2],
                    )
                    oi, w = _locate(g.name, (ka, kb, h), pt)
                    si = src_pos[(s2.p - 1, i_tgt, s2.q, s2.pi, oi)]
                    add_block(
                        ti,
                        si,
                        self._contravariant(s2.stab, src[si].stab, w),
                        sign * coeff,
                    )
        return AbHom(dom, cod, mat(m))

    def _covariant(self, a: str, b: str, u: str) -> AbHom:
        """M_* of the orbit map x -> x.u from G/a into G/b."""
        key = ("cov", a, b, u)
        if key not in self._hom_cache:
            self._hom_cache[key] = self.coeff.tr_map(a, b).compose(
                self.coeff.weyl_action(a, u)
            )
        return self._hom_cache[key]

    def _contravariant(self, a: str, b: str, u: str) -> AbHom:
        """M^* of the orbit map x -> x.u from G/a into G/b."""
        key = ("con", a, b, u)
        if key not in self._hom_cache:
            self._hom_cache[key] = self.coeff.weyl_action(
                a, self.g.inv(u)
            ).compose(self.coeff.res_map(a, b))
        return self._hom_cache[key]

    # -- structure chain maps -----------------------------------------------

    def _level_map(self, h_from: str, h_to: str, kind: str, elem: str | None = None):
        """Chain map between level complexes induced on the G/H factor.

        kind "res": contravariant along G/h_to -> G/h_from (h_to <= h_from);
        kind "tr": covariant along G/h_from -> G/h_to (h_from <= h_to);
        kind "weyl": covariant along right translation of G/h by elem.
        """
        cache_key = (h_from, h_to, kind, elem)
        if cache_key in self._level_map_cache:
            return self._level_map_cache[cache_key]
        g = self.g
        out: dict[int, AbHom] = {}
        src_summands = self._summands[h_from]
        tgt_summands = self._summands[h_to]
        for t, src in src_summands.items():
            tgt = tgt_summands.get(t, [])
            tgt_pos = {
                (s.p, s.di, s.q, s.pi, s.orbit): k for k, s in enumerate(tgt)
            }
            dom = self._groups[h_from][t]
            cod = self._groups[h_to].get(t, FgAbelian(()))
            m = [[0] * dom.ngens for _ in range(cod.ngens)]

            def add(ti, si, hom):
                r0, _ = self._slices[h_to][t][ti]
                c0, _ = self._slices[h_from][t][si]
                for a, row in enumerate(hom.matrix):
                    for b, x in enumerate(row):
                        m[r0 + a][c0 + b] += x

            if kind in ("tr", "weyl"):
                # covariant along the projection or translation of G/h
                for si, s in enumerate(src):
                    ka = self.dual.cells[s.p][s.di]
                    kb = self.primal.cells[s.q][s.pi]
                    reps, _, _ = _orbit_table(g.name, (ka, kb, h_from))
                    base = reps[s.orbit]
                    if kind == "tr":
                        p3 = g.coset(base[2], g.subgroup(h_to))
                    else:
                        p3 = g.coset(g.mul(base[2], g.inv(elem)), g.subgroup(h_to))
                    oi, w = _locate(g.name, (ka, kb, h_to), (base[0], base[1], p3))
                    ti = tgt_pos[(s.p, s.di, s.q, s.pi, oi)]
                    add(ti, si, self._covariant(s.stab, tgt[ti].stab, w))
            else:
                # restriction is contravariant along G/h_to -> G/h_from, so
                # components are indexed by the h_to-side orbits
                src_pos = {
                    (x.p, x.di, x.q, x.pi, x.orbit): k for k, x in enumerate(src)
                }
                for ti, s2 in enumerate(tgt):
                    ka = self.dual.cells[s2.p][s2.di]
                    kb = self.primal.cells[s2.q][s2.pi]
                    reps2, _, _ = _orbit_table(g.name, (ka, kb, h_to))
                    base2 = reps2[s2.orbit]
                    pt = (base2[0], base2[1], g.coset(base2[2], g.subgroup(h_from)))
                    oi, w = _locate(g.name, (ka, kb, h_from), pt)
                    si = src_pos[(s2.p, s2.di, s2.q, s2.pi, oi)]
                    add(ti, si, self._contravariant(s2.stab, src[si].stab, w))
            out[t] = AbHom(dom, cod, mat(m))
        self._level_map_cache[cache_key] = out
        return out

    # -- homology -------------------------------------------------------------

    def homology_raw(self, h: str, n: int):
        key = (h, n - self.offset)
        if key not in self._homology_cache:
            self._homology_cache[key] = self._complex[h].homology(n - self.offset)
        return self._homology_cache[key]

    def functor(self, n: int) -> MackeyFunctor:
        """The degree-n homology as a Mackey functor (raw, unnamed)."""
        if n in self._functor_cache:
            return self._functor_cache[n]
        t = n - self.offset
        g = self.g
        data = {h: self.homology_raw(h, n) for h in self.levels}
        levels = {h: data[h].group for h in self.levels}
        res = {}
        tr = {}
        for low, high in covering_pairs(g):
            rmaps = self._level_map(high, low, "res")
            tmaps = self._level_map(low, high, "tr")
            rhom = rmaps.get(t)
            thom = tmaps.get(t)
            res[(low, high)] = (
                induced_on_homology(rhom, data[high], data[low])
                if rhom is not None
                else AbHom.zero(levels[high], levels[low])
            )
            tr[(low, high)] = (
                induced_on_homology(thom, data[low], data[high])
                if thom is not None
                else AbHom.zero(levels[low], levels[high])
            )
        weyl = {}
        for h in self.levels:
            sub = g.subgroup(h)
            if levels[h].is_trivial:
                continue
            # induce the generators only; other elements are their products
            gen_maps = {}
            for e in g.generators:
                wmaps = self._level_map(h, h, "weyl", e)
                whom = wmaps.get(t)
                gen_maps[e] = (
                    induced_on_homology(whom, data[h], data[h])
                    if whom is not None
                    else AbHom.identity(levels[h])
                )
            ident = AbHom.identity(levels[h])
            for e in g.elements:
                acc = ident
                for letter in g.word(e):
                    acc = acc.compose(gen_maps[letter])
                if e not in sub.elements and not acc.equals(ident):
                    weyl[(h, e)] = acc
        out = MackeyFunctor(
            self.group_name, levels, res, tr, weyl, self.coeff.is_zmodule
        )
        self._functor_cache[n] = out
        return out

    def nonzero_degrees(self) -> list[int]:
        lo = min(
            (t for h in self.levels for t in self._groups[h]), default=0
        )
        hi = max(
            (t for h in self.levels for t in self._groups[h]), default=0
        )
        return list(range(lo + self.offset, hi + self.offset + 1))


# ---------------------------------------------------------------------------
# recognition against the catalog


def _g_power(group_name: str, k: int) -> MackeyFunctor:
    from .functors import expression_functor

    return expression_functor(group_name, f"g^{k}" if k else "")


def identify(m: MackeyFunctor) -> str | None:
    """Best catalog name (possibly a sum with a power of g) for m."""
    if m.is_trivial():
        return "0"
    from .functors import strip_g_summands

    k, red = strip_g_summands(m)
    gpart = "" if k == 0 else ("g" if k == 1 else f"g^{k}")
    if red.is_trivial():
        return gpart or None
    table = catalog(m.group_name)
    names = sorted(table, key=lambda nm: (len(nm), nm))
    g = m.group()
    for nm in names:
        f = table[nm]
        if any(
            red.levels[s.name] != f.levels[s.name] for s in g.subgroups()
        ):
            continue
        if is_isomorphic(red, f):
            return f"{nm}+{gpart}" if gpart else nm
    return None


# ---------------------------------------------------------------------------
# public operations


def homology_mackey(
    c: BurnsideComplex, coeff: MackeyFunctor, n: int
) -> tuple[MackeyFunctor, str | None]:
    """Degree-n Mackey-functor-valued homology of a Burnside complex."""
    eng = MackeyHomology(coeff, primal=c)
    f = eng.functor(n)
    nm = identify(f)
    return (f.with_name(nm) if nm else f, nm)


def cohomology_mackey(
    c: BurnsideComplex, coeff: MackeyFunctor, n: int
) -> tuple[MackeyFunctor, str | None]:
    """Degree-n cohomology; equals pi_{-n} of the function object."""
    eng = MackeyHomology(coeff, dual=c)
    f = eng.functor(-n)
    nm = identify(f)
    return (f.with_name(nm) if nm else f, nm)


def homology_table(
    c: BurnsideComplex, coeff: MackeyFunctor, degrees
) -> dict[int, tuple[MackeyFunctor, str | None]]:
    eng = MackeyHomology(coeff, primal=c)
    return {n: _named(eng.functor(n)) for n in degrees}


def _named(f: MackeyFunctor) -> tuple[MackeyFunctor, str | None]:
    nm = identify(f)
    return (f.with_name(nm) if nm else f, nm)


_ENGINE_CACHE: dict[tuple, MackeyHomology] = {}


def suspension_engine(
    group_name: str, rep: VirtualRep | str, coeff: MackeyFunctor
) -> MackeyHomology:
    """Engine computing the homotopy of the rep-sphere suspension of coeff.

    Negative summands of the virtual representation become a dual complex;
    the integer part of the suspension is a degree offset.
    """
    if isinstance(rep, str):
        rep = parse_rep(group_name, rep)
    pos, neg, offset = rep.split()
    key = (group_name, rep.mults, rep.shift, coeff.name, id(coeff))
    if key in _ENGINE_CACHE:
        return _ENGINE_CACHE[key]
    primal = sphere_complex(pos) if pos.mults else None
    dual = sphere_complex(neg) if neg.mults else None
    eng = MackeyHomology(coeff, primal=primal, dual=dual, offset=offset)
    _ENGINE_CACHE[key] = eng
    return eng


def suspension_homotopy(
    group_name: str, rep: VirtualRep | str, coeff: MackeyFunctor, degrees
) -> dict[int, tuple[MackeyFunctor, str | None]]:
    eng = suspension_engine(group_name, rep, coeff)
    return {n: _named(eng.functor(n)) for n in degrees}
