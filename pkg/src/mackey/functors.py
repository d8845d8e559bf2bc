"""Mackey functors over the five supported groups, as finite data.

A Mackey functor assigns an abelian group to each subgroup together with
restriction and transfer along covering pairs of the subgroup lattice and a
Weyl action of the ambient group on each level.  Because every subgroup of
our groups is normal, conjugation is exactly the Weyl action and double
cosets are cosets of products, which keeps the axiom checks elementary.

Only covering-pair maps are stored; maps along longer chains are composites
(path independence is one of the checked axioms).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from math import gcd

from .exactalg import AbHom, FgAbelian, identity
from .grouplat import Group, Subgroup, group


class Mismatch(Exception):
    pass


class MixedTorsion(Exception):
    pass


class UnknownName(Exception):
    pass


@dataclass
class MackeyFunctor:
    group_name: str
    levels: dict[str, FgAbelian]
    res: dict[tuple[str, str], AbHom]  # (sub, cover) -> level(cover) -> level(sub)
    tr: dict[tuple[str, str], AbHom]  # (sub, cover) -> level(sub) -> level(cover)
    weyl: dict[tuple[str, str], AbHom] = field(default_factory=dict)
    is_zmodule: bool = True
    name: str | None = None

    def __post_init__(self):
        g = self.group()
        for s in g.subgroups():
            if s.name not in self.levels:
                raise ValueError(f"missing level {s.name}")

    def group(self) -> Group:
        return group(self.group_name)

    def level(self, sub: str) -> FgAbelian:
        return self.levels[sub]

    def _memo(self) -> dict:
        memo = self.__dict__.get("_map_memo")
        if memo is None:
            memo = {}
            self.__dict__["_map_memo"] = memo
        return memo

    def _chain(self, low: str, high: str) -> list[str]:
        g = self.group()
        lo, hi = g.subgroup(low), g.subgroup(high)
        if not lo.elements <= hi.elements:
            raise ValueError(f"{low} is not contained in {high}")
        chain = [low]
        cur = lo
        while cur.name != high:
            nxt = next(c for c in g.covers(cur) if c.elements <= hi.elements)
            chain.append(nxt.name)
            cur = nxt
        return chain

    def res_map(self, low: str, high: str) -> AbHom:
        """Restriction level(high) -> level(low), composed along the lattice."""
        memo = self._memo()
        key = ("res", low, high)
        if key not in memo:
            chain = self._chain(low, high)
            h = AbHom.identity(self.levels[high])
            for a, b in reversed(list(zip(chain, chain[1:]))):
                h = self.res[(a, b)].compose(h)
            memo[key] = h
        return memo[key]

    def tr_map(self, low: str, high: str) -> AbHom:
        memo = self._memo()
        key = ("tr", low, high)
        if key not in memo:
            chain = self._chain(low, high)
            h = AbHom.identity(self.levels[low])
            for a, b in zip(chain, chain[1:]):
                h = self.tr[(a, b)].compose(h)
            memo[key] = h
        return memo[key]

    def weyl_action(self, sub: str, elem: str) -> AbHom:
        h = self.weyl.get((sub, elem))
        if h is None:
            return AbHom.identity(self.levels[sub])
        return h

    def with_name(self, name: str) -> "MackeyFunctor":
        return replace(self, name=name)

    def is_trivial(self) -> bool:
        return all(v.is_trivial for v in self.levels.values())

    def direct_sum(self, other: "MackeyFunctor") -> "MackeyFunctor":
        if other.group_name != self.group_name:
            raise Mismatch("different groups")
        g = self.group()
        levels = {
            s.name: self.levels[s.name].direct_sum(other.levels[s.name])
            for s in g.subgroups()
        }
        res = {}
        tr = {}
        for key in self.res:
            res[key] = self.res[key].direct_sum(other.res[key])
            tr[key] = self.tr[key].direct_sum(other.tr[key])
        weyl = {}
        for s in g.subgroups():
            for e in g.elements:
                a = self.weyl_action(s.name, e)
                b = other.weyl_action(s.name, e)
                if not (a.matrix == identity(a.dom.ngens) and
                        b.matrix == identity(b.dom.ngens)):
                    weyl[(s.name, e)] = a.direct_sum(b)
        return MackeyFunctor(
            self.group_name, levels, res, tr, weyl,
            self.is_zmodule and other.is_zmodule,
        )

    def __str__(self) -> str:
        g = self.group()
        parts = [f"{s.name}: {self.levels[s.name]}" for s in reversed(g.subgroups())]
        label = self.name or "MackeyFunctor"
        return f"{label}({self.group_name}; " + ", ".join(parts) + ")"


def zero_functor(group_name: str) -> MackeyFunctor:
    g = group(group_name)
    z = FgAbelian(())
    levels = {s.name: z for s in g.subgroups()}
    res = {}
    tr = {}
    for s in g.subgroups():
        for c in g.covers(s):
            res[(s.name, c.name)] = AbHom.zero(z, z)
            tr[(s.name, c.name)] = AbHom.zero(z, z)
    return MackeyFunctor(group_name, levels, res, tr, {}, True, "0")


def covering_pairs(g: Group) -> list[tuple[str, str]]:
    out = []
    for s in g.subgroups():
        for c in g.covers(s):
            out.append((s.name, c.name))
    return out


def data_equal(a: MackeyFunctor, b: MackeyFunctor) -> bool:
    """Exact equality of the stored data (not just isomorphism)."""
    if a.group_name != b.group_name:
        return False
    g = a.group()
    for s in g.subgroups():
        if a.levels[s.name].orders != b.levels[s.name].orders:
            return False
    for key in covering_pairs(g):
        if not a.res[key].equals(b.res[key]) or not a.tr[key].equals(b.tr[key]):
            return False
    for s in g.subgroups():
        for e in g.elements:
            if not a.weyl_action(s.name, e).equals(b.weyl_action(s.name, e)):
                return False
    return True


# ---------------------------------------------------------------------------
# axiom checking


def _double_cosets_within(g: Group, h: Subgroup, k1: Subgroup, k2: Subgroup):
    """Representatives of K1 \\ H / K2 inside the subgroup h."""
    remaining = sorted(h.elements, key=g.elem_sort_key)
    reps = []
    while remaining:
        x = remaining[0]
        coset = {
            g.mul(g.mul(u, x), v) for u in k1.elements for v in k2.elements
        }
        reps.append(x)
        remaining = [y for y in remaining if y not in coset]
    return reps


@dataclass
class AxiomReport:
    failures: list[str]
    checked: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self) -> str:
        if self.ok:
            return f"all axioms pass ({len(self.checked)} checks)"
        return "FAIL:\n  " + "\n  ".join(self.failures)


def check_axioms(m: MackeyFunctor) -> AxiomReport:
    g = m.group()
    failures = []
    checked = []

    def expect(cond: bool, label: str):
        checked.append(label)
        if not cond:
            failures.append(label)

    pairs = covering_pairs(g)
    for low, high in pairs:
        r = m.res.get((low, high))
        t = m.tr.get((low, high))
        expect(r is not None and t is not None, f"maps present {low}<{high}")
        if r is None or t is None:
            continue
        expect(
            r.dom.orders == m.levels[high].orders
            and r.cod.orders == m.levels[low].orders,
            f"res shape {low}<{high}",
        )
        expect(
            t.dom.orders == m.levels[low].orders
            and t.cod.orders == m.levels[high].orders,
            f"tr shape {low}<{high}",
        )
    if failures:
        return AxiomReport(failures, checked)

    # path independence of composite res / tr
    for s in g.subgroups():
        for t in g.subgroups():
            if not (s.elements < t.elements):
                continue
            paths = _all_chains(g, s, t)
            if len(paths) < 2:
                continue
            res_maps = [_compose_res(m, p) for p in paths]
            tr_maps = [_compose_tr(m, p) for p in paths]
            expect(
                all(h.equals(res_maps[0]) for h in res_maps[1:]),
                f"res path independence {s.name}<{t.name}",
            )
            expect(
                all(h.equals(tr_maps[0]) for h in tr_maps[1:]),
                f"tr path independence {s.name}<{t.name}",
            )

    # Weyl actions are actions, trivial on the subgroup itself
    for s in g.subgroups():
        lvl = m.levels[s.name]
        for e in g.elements:
            w = m.weyl_action(s.name, e)
            expect(
                w.dom.orders == lvl.orders and w.cod.orders == lvl.orders,
                f"weyl shape {s.name},{e}",
            )
        for x in s.elements:
            expect(
                m.weyl_action(s.name, x).equals(AbHom.identity(lvl)),
                f"weyl trivial on own subgroup {s.name},{x}",
            )
        for x in g.elements:
            for y in g.elements:
                wxy = m.weyl_action(s.name, g.mul(x, y))
                comp = m.weyl_action(s.name, x).compose(m.weyl_action(s.name, y))
                expect(wxy.equals(comp), f"weyl action {s.name}: {x}*{y}")

    # equivariance of res and tr
    for low, high in pairs:
        for e in g.elements:
            wl = m.weyl_action(low, e)
            wh = m.weyl_action(high, e)
            r = m.res[(low, high)]
            t = m.tr[(low, high)]
            expect(
                r.compose(wh).equals(wl.compose(r)),
                f"res equivariance {low}<{high},{e}",
            )
            expect(
                t.compose(wl).equals(wh.compose(t)),
                f"tr equivariance {low}<{high},{e}",
            )

    # double coset formula inside every subgroup
    for h in g.subgroups():
        inside = [s for s in g.subgroups() if s.elements <= h.elements]
        for k1 in inside:
            for k2 in inside:
                if k1.name == h.name and k2.name == h.name:
                    continue
                meet = g.intersect(k1, k2)
                lhs = m.res_map(k1.name, h.name).compose(m.tr_map(k2.name, h.name))
                rhs = AbHom.zero(m.levels[k2.name], m.levels[k1.name])
                for rep in _double_cosets_within(g, h, k1, k2):
                    term = m.tr_map(meet.name, k1.name).compose(
                        m.weyl_action(meet.name, rep).compose(
                            m.res_map(meet.name, k2.name)
                        )
                    )
                    rhs = rhs + term
                expect(
                    lhs.equals(rhs),
                    f"double coset {k1.name}\\{h.name}/{k2.name}",
                )

    # cohomological condition
    if m.is_zmodule:
        for low, high in pairs:
            index = g.subgroup(high).order // g.subgroup(low).order
            lhs = m.tr[(low, high)].compose(m.res[(low, high)])
            expect(
                lhs.equals(AbHom.scalar(m.levels[high], index)),
                f"cohomological {low}<{high}",
            )

    return AxiomReport(failures, checked)


def _all_chains(g: Group, s: Subgroup, t: Subgroup) -> list[list[str]]:
    if s.name == t.name:
        return [[s.name]]
    out = []
    for c in g.covers(s):
        if c.elements <= t.elements:
            for rest in _all_chains(g, c, t):
                out.append([s.name] + rest)
    return out


def _compose_res(m: MackeyFunctor, chain: list[str]) -> AbHom:
    h = AbHom.identity(m.levels[chain[-1]])
    for a, b in reversed(list(zip(chain, chain[1:]))):
        h = m.res[(a, b)].compose(h)
    return h


def _compose_tr(m: MackeyFunctor, chain: list[str]) -> AbHom:
    h = AbHom.identity(m.levels[chain[0]])
    for a, b in zip(chain, chain[1:]):
        h = m.tr[(a, b)].compose(h)
    return h


# ---------------------------------------------------------------------------
# duality


def _dual_group(gp: FgAbelian) -> FgAbelian:
    return FgAbelian(gp.orders)


def _dual_hom(h: AbHom) -> AbHom:
    """Adjoint with respect to the standard pairings.

    Free groups dualize by transposing; finite ones are Pontryagin-dual,
    where the (j, i) entry picks up the factor dom_order_j / cod_order_i.
    """
    a, b = h.dom, h.cod
    rows = []
    for j in range(a.ngens):
        row = []
        for i in range(b.ngens):
            x = h.matrix[i][j]
            if a.orders[j] == 0 and b.orders[i] == 0:
                row.append(x)
            else:
                num = x * a.orders[j]
                if num % b.orders[i]:
                    raise MixedTorsion("hom has no integral dual")
                row.append(num // b.orders[i])
        rows.append(tuple(row))
    return AbHom(_dual_group(b), _dual_group(a), tuple(rows))


def box_dual(m: MackeyFunctor) -> MackeyFunctor:
    """Linear dual (all levels free) or Pontryagin dual (all levels finite).

    Restrictions and transfers trade places; the Weyl action dualizes with
    an inverse so it stays a left action.
    """
    kinds = set()
    for lvl in m.levels.values():
        if lvl.is_trivial:
            continue
        kinds.add("free" if lvl.is_free else ("finite" if lvl.is_finite else "mixed"))
    if "mixed" in kinds or len(kinds) > 1:
        raise MixedTorsion("levels must be all free or all finite")
    g = m.group()
    levels = {s.name: _dual_group(m.levels[s.name]) for s in g.subgroups()}
    res = {}
    tr = {}
    for key in covering_pairs(g):
        res[key] = _dual_hom(m.tr[key])
        tr[key] = _dual_hom(m.res[key])
    weyl = {}
    for s in g.subgroups():
        for e in g.elements:
            w = m.weyl_action(s.name, e)
            if w.matrix != identity(w.dom.ngens):
                weyl[(s.name, e)] = _dual_hom(m.weyl_action(s.name, g.inv(e)))
    out = MackeyFunctor(m.group_name, levels, res, tr, weyl, m.is_zmodule)
    if m.name:
        out.name = m.name[:-1] if m.name.endswith("*") else m.name + "*"
    return out


# ---------------------------------------------------------------------------
# morphisms and exact sequences


@dataclass
class MackeyMorphism:
    source: MackeyFunctor
    target: MackeyFunctor
    components: dict[str, AbHom]

    def __post_init__(self):
        if self.source.group_name != self.target.group_name:
            raise Mismatch("source and target over different groups")
        g = self.source.group()
        for s in g.subgroups():
            c = self.components.get(s.name)
            if c is None:
                raise Mismatch(f"missing component at {s.name}")
            if (
                c.dom.orders != self.source.levels[s.name].orders
                or c.cod.orders != self.target.levels[s.name].orders
            ):
                raise Mismatch(f"component at {s.name} has wrong shape")
        for low, high in covering_pairs(g):
            f_low, f_high = self.components[low], self.components[high]
            if not f_low.compose(self.source.res[(low, high)]).equals(
                self.target.res[(low, high)].compose(f_high)
            ):
                raise Mismatch(f"does not commute with res at {low}<{high}")
            if not f_high.compose(self.source.tr[(low, high)]).equals(
                self.target.tr[(low, high)].compose(f_low)
            ):
                raise Mismatch(f"does not commute with tr at {low}<{high}")
        for s in g.subgroups():
            for e in g.elements:
                ws = self.source.weyl_action(s.name, e)
                wt = self.target.weyl_action(s.name, e)
                if not self.components[s.name].compose(ws).equals(
                    wt.compose(self.components[s.name])
                ):
                    raise Mismatch(f"does not commute with Weyl at {s.name}")


def ses_check(i: MackeyMorphism, p: MackeyMorphism) -> bool:
    """Levelwise short-exactness of 0 -> A -i-> B -p-> C -> 0."""
    from .exactalg import homology_at

    if i.target is not p.source and not data_equal(i.target, p.source):
        raise Mismatch("middle objects differ")
    g = i.source.group()
    for s in g.subgroups():
        fi = i.components[s.name]
        fp = p.components[s.name]
        if not fp.compose(fi).is_zero():
            return False
        if not homology_at(None, fi).group.is_trivial:
            return False  # i not injective
        if not homology_at(fi, fp).group.is_trivial:
            return False  # not exact in the middle
        if not homology_at(fp, None).group.is_trivial:
            return False  # p not surjective
    return True


# ---------------------------------------------------------------------------
# isomorphism testing


def _hom_columns(order: int, cod: FgAbelian) -> list[tuple[int, ...]]:
    """All possible images in cod of a generator of the given order."""
    choices = []
    for o in cod.orders:
        if order == 0:
            if o == 0:
                choices.append(range(-1, 2))  # -1, 0, 1 suffice for rank <= 1
            else:
                choices.append(range(o))
        else:
            if o == 0:
                choices.append((0,))
            else:
                step = o // gcd(o, order)
                choices.append(range(0, o, step))
    return [tuple(c) for c in itertools.product(*choices)]


def _isos_between(a: FgAbelian, b: FgAbelian) -> list[AbHom]:
    """All isomorphisms a -> b.  Free rank at most 1 is supported."""
    if a != b:
        return []
    if a.is_trivial:
        return [AbHom.zero(a, b)]
    if a.rank > 1:
        raise NotImplementedError("iso search needs free rank <= 1")
    cols = [_hom_columns(o, b) for o in a.orders]
    size = 1
    for c in cols:
        size *= len(c)
    if size > 300_000:
        raise NotImplementedError(
            "level too large for exhaustive isomorphism search; "
            "split off g summands first"
        )
    out = []
    torsion_elems = _torsion_elements(a)
    target_torsion = {_torsion_reduce(b, v) for v in _torsion_elements(b)}
    for combo in itertools.product(*cols):
        matrix = tuple(zip(*combo))
        h = AbHom(a, b, matrix)
        # the free generator must hit a free generator with coefficient +-1
        ok = True
        for j, ao in enumerate(a.orders):
            if ao == 0:
                fc = [h.matrix[i][j] for i, bo in enumerate(b.orders) if bo == 0]
                if sum(abs(x) for x in fc) != 1:
                    ok = False
                break
        if not ok:
            continue
        # bijective on torsion makes the whole map an isomorphism
        image = {h(v) for v in torsion_elems}
        if image == target_torsion and len(image) == len(torsion_elems):
            out.append(h)
    return out


def _torsion_elements(g: FgAbelian) -> list[tuple[int, ...]]:
    coords: list[tuple[int, ...]] = [()]
    for o in g.orders:
        vals = (0,) if o == 0 else tuple(range(o))
        coords = [c + (x,) for c in coords for x in vals]
    return coords


def _torsion_reduce(g: FgAbelian, v) -> tuple[int, ...]:
    return tuple(0 if o == 0 else x % o for x, o in zip(v, g.orders))


def is_isomorphic(a: MackeyFunctor, b: MackeyFunctor) -> bool:
    return find_isomorphism(a, b) is not None


def find_isomorphism(a: MackeyFunctor, b: MackeyFunctor) -> dict[str, AbHom] | None:
    """Search for a family of levelwise isomorphisms commuting with all
    structure maps.  Levels are tiny, so backtracking over levelwise
    automorphism candidates is cheap."""
    if a.group_name != b.group_name:
        return None
    g = a.group()
    subs = [s.name for s in reversed(g.subgroups())]  # top down
    for s in subs:
        if a.levels[s] != b.levels[s]:
            return None

    cand: dict[str, list[AbHom]] = {}
    for s in subs:
        isos = _isos_between(a.levels[s], b.levels[s])
        isos = [
            h for h in isos
            if all(
                h.compose(a.weyl_action(s, e)).equals(
                    b.weyl_action(s, e).compose(h)
                )
                for e in g.elements
            )
        ]
        if not isos:
            return None
        cand[s] = isos

    pairs = covering_pairs(g)
    assignment: dict[str, AbHom] = {}

    def consistent(s: str, h: AbHom) -> bool:
        for low, high in pairs:
            if low == s and high in assignment:
                if not h.compose(a.res[(low, high)]).equals(
                    b.res[(low, high)].compose(assignment[high])
                ):
                    return False
                if not assignment[high].compose(a.tr[(low, high)]).equals(
                    b.tr[(low, high)].compose(h)
                ):
                    return False
            if high == s and low in assignment:
                if not assignment[low].compose(a.res[(low, high)]).equals(
                    b.res[(low, high)].compose(h)
                ):
                    return False
                if not h.compose(a.tr[(low, high)]).equals(
                    b.tr[(low, high)].compose(assignment[low])
                ):
                    return False
        return True

    def backtrack(idx: int) -> bool:
        if idx == len(subs):
            return True
        s = subs[idx]
        for h in cand[s]:
            if consistent(s, h):
                assignment[s] = h
                if backtrack(idx + 1):
                    return True
                del assignment[s]
        return False

    if backtrack(0):
        return dict(assignment)
    return None


def restrict_functor(m: MackeyFunctor, sub_name: str) -> MackeyFunctor:
    """View a Mackey functor through a subgroup, as a functor over the
    abstract copy of that subgroup."""
    from .grouplat import subgroup_iso

    g = m.group()
    sub = g.subgroup(sub_name)
    target, iso = subgroup_iso(g.name, sub_name)
    inv = {v: k for k, v in iso.items()}
    tgt = group(target)
    pre: dict[str, str] = {}
    for s in tgt.subgroups():
        elems = frozenset(inv[x] for x in s.elements)
        match = next(t for t in g.subgroups() if t.elements == elems)
        pre[s.name] = match.name
    levels = {nm: m.levels[pre[nm]] for nm in pre}
    res = {}
    tr = {}
    for low, high in covering_pairs(tgt):
        res[(low, high)] = m.res_map(pre[low], pre[high])
        tr[(low, high)] = m.tr_map(pre[low], pre[high])
    weyl = {}
    for s in tgt.subgroups():
        for e in tgt.elements:
            w = m.weyl_action(pre[s.name], inv[e])
            if not w.equals(AbHom.identity(levels[s.name])):
                weyl[(s.name, e)] = w
    return MackeyFunctor(target, levels, res, tr, weyl, m.is_zmodule)


# ---------------------------------------------------------------------------
# splitting off powers of g

# Summands isomorphic to g live in the top level: 2-torsion elements killed
# by every restriction, fixed by the Weyl action, and independent of the
# transfer images modulo twice the top.  Those split off canonically, which
# keeps isomorphism testing away from automorphism groups of large F_2
# vector spaces.


def strip_g_summands(m: MackeyFunctor) -> tuple[int, MackeyFunctor]:
    """Return (k, complement) with m isomorphic to complement + g^k and k
    maximal."""
    from .exactalg import homology_at

    g = m.group()
    top = g.top().name
    T = m.levels[top]
    if T.is_trivial or T.ngens > 12:
        return 0, m
    maximals = [
        s.name for s in g.subgroups()
        if any(c.name == top for c in g.covers(s))
    ]
    torsion = [v for v in _torsion_elements(T) if any(v)]
    res_maps = [m.res[(s, top)] for s in maximals]
    weyl_maps = [m.weyl_action(top, e) for e in g.elements]
    W = [
        v
        for v in torsion
        if not any(T.reduce_vec(tuple(2 * c for c in v)))
        and all(not any(r(v)) for r in res_maps)
        and all(w(v) == T.reduce_vec(v) for w in weyl_maps)
    ]
    if not W:
        return 0, m
    # transfers into the top plus twice the top
    cols = []
    for s in maximals:
        t = m.tr[(s, top)]
        for j in range(t.dom.ngens):
            cols.append(tuple(t.matrix[i][j] for i in range(T.ngens)))
    for j in range(T.ngens):
        cols.append(tuple(2 if i == j else 0 for i in range(T.ngens)))
    dom = FgAbelian((0,) * len(cols))
    span_hom = AbHom(dom, T, tuple(zip(*cols)) if cols else ())
    quot = homology_at(span_hom, AbHom.zero(T, FgAbelian(())))
    # greedily pick elements of W independent in the quotient
    reps: list[tuple[int, ...]] = []
    seen = {(0,) * quot.group.ngens}
    for v in W:
        p = quot.project(v)
        if p in seen:
            continue
        reps.append(v)
        closure = set(seen)
        for old in seen:
            closure.add(quot.group.reduce_vec(tuple(a + b for a, b in zip(old, p))))
        seen = closure
    k = len(reps)
    if k == 0:
        return 0, m
    incl = AbHom(FgAbelian((2,) * k), T, tuple(zip(*reps)))
    top_quot = homology_at(incl, AbHom.zero(T, FgAbelian(())))
    new_top = top_quot.group
    levels = dict(m.levels)
    levels[top] = new_top
    res = dict(m.res)
    tr = dict(m.tr)
    for s in maximals:
        lifted = [
            m.res[(s, top)](top_quot.lift(_unit(new_top.ngens, j)))
            for j in range(new_top.ngens)
        ]
        res[(s, top)] = AbHom(
            new_top, m.levels[s], tuple(zip(*lifted)) if lifted else
            tuple(() for _ in range(m.levels[s].ngens))
        )
        projected = [
            top_quot.project(m.tr[(s, top)](_unit(m.levels[s].ngens, j)))
            for j in range(m.levels[s].ngens)
        ]
        tr[(s, top)] = AbHom(
            m.levels[s], new_top, tuple(zip(*projected)) if projected else
            tuple(() for _ in range(new_top.ngens))
        )
    weyl = {
        key: h for key, h in m.weyl.items() if key[0] != top
    }
    for e in g.elements:
        w = m.weyl_action(top, e)
        if w.matrix == identity(T.ngens):
            continue
        cols2 = [
            top_quot.project(w(top_quot.lift(_unit(new_top.ngens, j))))
            for j in range(new_top.ngens)
        ]
        h = AbHom(new_top, new_top, tuple(zip(*cols2)) if cols2 else ())
        if not h.equals(AbHom.identity(new_top)):
            weyl[(top, e)] = h
    reduced = MackeyFunctor(
        m.group_name, levels, res, tr, weyl, m.is_zmodule
    )
    return k, reduced


def _unit(n: int, j: int) -> tuple[int, ...]:
    return tuple(1 if i == j else 0 for i in range(n))


# ---------------------------------------------------------------------------
# formal sums of named functors


def parse_expression(expr: str) -> list[tuple[str, int]]:
    """Parse "mg + g^2" style sums into (name, multiplicity) terms."""
    expr = expr.replace("⊕", "+").strip()
    if expr in ("", "0"):
        return []
    terms = []
    for raw in expr.split("+"):
        t = raw.strip()
        if not t:
            continue
        if "^" in t:
            base, _, p = t.partition("^")
            terms.append((base.strip(), int(p)))
        else:
            terms.append((t, 1))
    return terms


def expression_functor(group_name: str, expr: str) -> MackeyFunctor:
    from .catalog import named

    total = zero_functor(group_name)
    for nm, mult in parse_expression(expr):
        f = named(group_name, nm)
        for _ in range(mult):
            total = total.direct_sum(f)
    return total


def match_expression(m: MackeyFunctor, expr: str) -> bool:
    """True iff m is isomorphic to the direct sum named by expr.

    Powers of g are compared through the canonical g-splitting, so large
    elementary top levels never reach the exhaustive search.
    """
    from .catalog import named

    terms = parse_expression(expr)
    g_count = sum(mult for nm, mult in terms if nm == "g")
    base = zero_functor(m.group_name)
    for nm, mult in terms:
        if nm == "g":
            continue
        f = named(m.group_name, nm)
        for _ in range(mult):
            base = base.direct_sum(f)
    k_m, red_m = strip_g_summands(m)
    k_b, red_b = strip_g_summands(base)
    if k_m != g_count + k_b:
        return False
    return is_isomorphic(red_m, red_b)
