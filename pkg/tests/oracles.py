"""Independent reference computations used to cross-check the package.

Everything here works on dense lists of Fractions, with its own permutation
signs, multilinear expansion and Gaussian elimination.  Package objects are
only read for their structure constants on sorted basis tuples.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple


# -- elementary helpers -------------------------------------------------------

def perm_sign(seq: Sequence[int]) -> int:
    """Sign of sorting ``seq``; 0 when an entry repeats."""
    if len(set(seq)) != len(seq):
        return 0
    s = 1
    a = list(seq)
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            if a[i] > a[j]:
                s = -s
    return s


def dense_rank(rows: List[List[Fraction]]) -> int:
    """Rank by plain Gaussian elimination over the rationals."""
    m = [[Fraction(x) for x in r] for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rk = 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        p = m[rk][c]
        for i in range(len(m)):
            if i != rk and m[i][c] != 0:
                t = m[i][c] / p
                m[i] = [a - t * b for a, b in zip(m[i], m[rk])]
        rk += 1
        if rk == len(m):
            break
    return rk


def dense_matmul(a: List[List[Fraction]], b: List[List[Fraction]]) -> List[List[Fraction]]:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def vadd(u, v, c=1):
    return [x + c * y for x, y in zip(u, v)]


def mat_vec(m: List[List[Fraction]], v: Sequence) -> List[Fraction]:
    return [sum(x * y for x, y in zip(row, v)) for row in m]


# -- raw structure data -------------------------------------------------------

class RawNLie:
    """Dense structure constants of an n-Lie algebra, skew-extended by hand."""

    def __init__(self, n: int, dim: int, sorted_brackets: Dict[tuple, List[Fraction]]):
        self.n = n
        self.dim = dim
        self.table = sorted_brackets

    @classmethod
    def of(cls, a) -> "RawNLie":
        table = {}
        for idx in itertools.combinations(range(a.dim), a.n):
            sp = a.bracket_basis(idx)
            table[idx] = [Fraction(sp.get(k, 0)) for k in range(a.dim)]
        return cls(a.n, a.dim, table)

    def bracket_basis(self, idx: Sequence[int]) -> List[Fraction]:
        s = perm_sign(idx)
        if s == 0:
            return [Fraction(0)] * self.dim
        return [s * x for x in self.table[tuple(sorted(idx))]]

    def bracket(self, vecs: Sequence[Sequence]) -> List[Fraction]:
        out = [Fraction(0)] * self.dim
        for idx, c in expand_dense(vecs):
            out = vadd(out, self.bracket_basis(idx), c)
        return out


def expand_dense(vecs: Sequence[Sequence]):
    """Multilinear expansion of dense vectors into basis index tuples."""
    supports = [[(i, x) for i, x in enumerate(v) if x != 0] for v in vecs]
    for combo in itertools.product(*supports):
        c = Fraction(1)
        for _, x in combo:
            c *= x
        yield tuple(i for i, _ in combo), c


class RawAction:
    """Dense action ``rho(x_1..x_k) in End(V)`` read on sorted basis tuples."""

    def __init__(self, k: int, gdim: int, vdim: int, sorted_mats: Dict[tuple, List[List[Fraction]]]):
        self.k = k
        self.gdim = gdim
        self.vdim = vdim
        self.mats = sorted_mats

    @classmethod
    def of(cls, r) -> "RawAction":
        a = r.algebra
        mats = {}
        for idx in itertools.combinations(range(a.dim), a.n - 1):
            mats[idx] = [[Fraction(x) for x in row] for row in r.of(idx).to_lists()]
        return cls(a.n - 1, a.dim, r.module_dim, mats)

    def basis(self, idx: Sequence[int]) -> List[List[Fraction]]:
        s = perm_sign(idx)
        if s == 0:
            return [[Fraction(0)] * self.vdim for _ in range(self.vdim)]
        return [[s * x for x in row] for row in self.mats[tuple(sorted(idx))]]

    def apply(self, xs: Sequence[Sequence], v: Sequence) -> List[Fraction]:
        out = [Fraction(0)] * self.vdim
        for idx, c in expand_dense(xs):
            out = vadd(out, mat_vec(self.basis(idx), v), c)
        return out


def unit(n: int, i: int) -> List[Fraction]:
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return v


def fundamental_identity_holds(g: RawNLie) -> bool:
    """Exhaustive check of the fundamental identity over all ordered basis tuples."""
    n, d = g.n, g.dim
    for xs in itertools.product(range(d), repeat=n - 1):
        xv = [unit(d, k) for k in xs]
        for ys in itertools.product(range(d), repeat=n):
            yv = [unit(d, k) for k in ys]
            lhs = g.bracket(xv + [g.bracket_basis(ys)])
            rhs = [Fraction(0)] * d
            for i in range(n):
                args = list(yv)
                args[i] = g.bracket(xv + [yv[i]])
                rhs = vadd(rhs, g.bracket(args))
            if lhs != rhs:
                return False
    return True



# -- n-Lie coboundary from the explicit four-term formula ---------------------

def _circle(g: RawNLie, X: Sequence[int], Y: Sequence[int]) -> Dict[tuple, Fraction]:
    """``X ∘ Y = sum_k (y_1, .., [X, y_k], .., y_{n-1})`` as sorted wedges."""
    out: Dict[tuple, Fraction] = {}
    for k in range(len(Y)):
        val = g.bracket_basis(tuple(X) + (Y[k],))
        for t, c in enumerate(val):
            if c == 0:
                continue
            w = list(Y)
            w[k] = t
            s = perm_sign(w)
            if s:
                key = tuple(sorted(w))
                out[key] = out.get(key, 0) + s * c
    return out


def nlie_coboundary_oracle(g: RawNLie, rho: RawAction, p: int) -> List[List[Fraction]]:
    """Dense matrix of ``delta_p`` assembled row by row from the four sums.

    Degree ``p`` cochains take ``p-1`` wedge blocks and one trailing vector.
    Rows and columns follow the package layout: blocks row-major, trailing
    index, target coordinate.
    """
    n, dim, vd = g.n, g.dim, rho.vdim
    wb = list(itertools.combinations(range(dim), n - 1))
    wpos = {w: i for i, w in enumerate(wb)}

    def src_index(blocks: Sequence[tuple], z: int) -> int:
        k = 0
        for b in blocks:
            k = k * len(wb) + wpos[b]
        return (k * dim + z) * vd

    def omega_form(blocks: Sequence, zvec: Sequence) -> List[Dict[int, Fraction]]:
        """``omega(blocks, z)`` as one linear form in the unknowns per target coordinate."""
        out: List[Dict[int, Fraction]] = [{} for _ in range(vd)]
        block_terms = [list(b.items()) for b in blocks]
        for choice in itertools.product(*block_terms):
            c = Fraction(1)
            for _, x in choice:
                c *= x
            ws = [w for w, _ in choice]
            for z, zc in enumerate(zvec):
                if zc == 0:
                    continue
                base = src_index(ws, z)
                for t in range(vd):
                    out[t][base + t] = out[t].get(base + t, 0) + c * zc
        return out

    def add_form(acc, form, c=1, mat=None):
        """``acc += c * mat @ form`` on per-target linear forms (``mat`` defaults to id)."""
        for t in range(vd):
            for s in range(vd):
                x = (1 if s == t else 0) if mat is None else mat[t][s]
                if x:
                    for k, y in form[s].items():
                        acc[t][k] = acc[t].get(k, 0) + c * x * y

    def as_combo(w: Sequence[int]) -> Dict[tuple, Fraction]:
        s = perm_sign(w)
        return {tuple(sorted(w)): Fraction(s)} if s else {}

    ncols = len(wb) ** (p - 1) * dim * vd
    nrows = len(wb) ** p * dim * vd
    mat = [[Fraction(0)] * ncols for _ in range(nrows)]
    row = 0
    for Xs in itertools.product(wb, repeat=p):
        for z in range(dim):
            val: List[Dict[int, Fraction]] = [{} for _ in range(vd)]
            for i in range(p):  # 0-based i, sign (-1)^{i+1}
                rest = [as_combo(X) for j, X in enumerate(Xs) if j != i]
                sgn = -1 if (i + 1) % 2 else 1
                add_form(val, omega_form(rest, g.bracket_basis(tuple(Xs[i]) + (z,))), sgn)
                add_form(val, omega_form(rest, unit(dim, z)), -sgn, rho.basis(Xs[i]))
            Xp = Xs[-1]
            for i in range(n - 1):  # 0-based i, sign (-1)^{n+p-(i+1)+1}
                args = list(Xp[:i]) + list(Xp[i + 1:]) + [z]
                inner = omega_form([as_combo(X) for X in Xs[:-1]], unit(dim, Xp[i]))
                sgn = -1 if (n + p - i) % 2 else 1
                add_form(val, inner, sgn, rho.basis(args))
            for i in range(p):
                for j in range(i + 1, p):
                    blocks = [as_combo(X) for X in Xs]
                    blocks[j] = _circle(g, Xs[i], Xs[j])
                    del blocks[i]
                    sgn = -1 if (i + 1) % 2 else 1
                    add_form(val, omega_form(blocks, unit(dim, z)), sgn)
            for t in range(vd):
                for k, x in val[t].items():
                    mat[row + t][k] = x
            row += vd
    return mat


# -- LM complex in low degrees from the explicit component formulas ----------

class RawLM:
    """Dense data of an LM algebra with coefficients, for the explicit displays."""

    def __init__(self, a, r):
        self.n = a.n
        self.g = RawNLie.of(a.g)
        self.dg = a.g.dim
        self.dm = a.M_dim
        self.dv = r.V_dim
        self.dw = r.W_dim
        self.rho = RawAction.of(a.rho)
        self.rho1 = RawAction.of(r.rho1)
        self.rho2 = RawAction.of(r.rho2)
        self.f = [[Fraction(x) for x in row] for row in a.f.to_lists()]
        self.phi = [[Fraction(x) for x in row] for row in r.phi.to_lists()]
        self._rho3 = {}
        for idx in itertools.combinations(range(self.dg), self.n - 2):
            for m in range(self.dm):
                self._rho3[idx, m] = [[Fraction(x) for x in row] for row in r.rho3(idx, m).to_lists()]

    def rho3(self, xs: Sequence[int], m: int) -> List[List[Fraction]]:
        s = perm_sign(xs)
        if s == 0:
            return [[Fraction(0)] * self.dw for _ in range(self.dv)]
        return [[s * x for x in row] for row in self._rho3[tuple(sorted(xs)), m]]

    def w_in_slot(self, ys: Sequence[int], i: int, w: Sequence, m: int) -> List[Fraction]:
        """``[y_1, .., w, .., y_{n-1}, m]`` with ``w`` in W placed at slot ``i``.

        Moving ``w`` to the last algebra slot and using
        ``rho3(x, m)(w) = -[x, w, m]`` gives the value in V.
        """
        rest = list(ys[:i]) + list(ys[i + 1:])
        moves = len(ys) - 1 - i
        sgn = -1 if moves % 2 else 1
        return [-sgn * x for x in mat_vec(self.rho3(rest, m), w)]


def lm_d1_oracle(L: RawLM, N0: List[List[Fraction]], N1: List[List[Fraction]]):
    """``D_1(N0, N1)`` from the explicit formulas.

    Returns ``(omega, nu, theta)`` as dicts keyed by sorted basis tuples:
    ``omega[x_1..x_n]``, ``nu[(x_1..x_{n-1}), m]``, ``theta[m]``.
    """
    n, dg = L.n, L.dg
    omega = {}
    for xs in itertools.combinations(range(dg), n):
        val = [Fraction(0)] * L.dw
        for i in range(n):
            w = [row[xs[i]] for row in N0]
            rest = xs[:i] + xs[i + 1:]
            sgn = -1 if (n - 1 - i) % 2 else 1
            val = vadd(val, L.rho2.apply([unit(dg, k) for k in rest], w), sgn)
        val = vadd(val, mat_vec(N0, L.g.bracket_basis(xs)), -1)
        omega[xs] = val
    nu = {}
    for xs in itertools.combinations(range(dg), n - 1):
        for m in range(L.dm):
            val = [Fraction(0)] * L.dv
            for i in range(n - 1):
                w = [row[xs[i]] for row in N0]
                val = vadd(val, L.w_in_slot(xs, i, w, m))
            n1m = [row[m] for row in N1]
            val = vadd(val, L.rho1.apply([unit(dg, k) for k in xs], n1m))
            am = L.rho.apply([unit(dg, k) for k in xs], unit(L.dm, m))
            val = vadd(val, mat_vec(N1, am), -1)
            nu[xs, m] = val
    theta = {}
    for m in range(L.dm):
        fm = [row[m] for row in L.f]
        theta[m] = vadd(mat_vec(L.phi, [row[m] for row in N1]), mat_vec(N0, fm), -1)
    return omega, nu, theta


def lm_two_cochain_coords(L: RawLM) -> List[Tuple[str, tuple]]:
    """Coordinates of a degree-2 cochain: skew omega, nu and theta in order."""
    out: List[Tuple[str, tuple]] = []
    for xs in itertools.combinations(range(L.dg), L.n):
        out += [("omega", (xs, t)) for t in range(L.dw)]
    for xs in itertools.combinations(range(L.dg), L.n - 1):
        for m in range(L.dm):
            out += [("nu", (xs, m, t)) for t in range(L.dv)]
    for m in range(L.dm):
        out += [("theta", (m, t)) for t in range(L.dw)]
    return out


def lm_two_cocycle_equations_oracle(L: RawLM) -> List[Dict[int, Fraction]]:
    """Sparse linear equations whose kernel is the space of displayed 2-cocycles.

    One row per basis instance and coordinate of the three displayed
    conditions: the theta compatibility, the omega identity and the nu
    identity (with the W-valued term read as ``omega(x, y_i)``).
    """
    n, dg, dm = L.n, L.dg, L.dm
    coords = lm_two_cochain_coords(L)
    pos = {c: i for i, c in enumerate(coords)}
    Form = List[Dict[int, Fraction]]

    def zero(d: int) -> Form:
        return [{} for _ in range(d)]

    def add(acc: Form, form: Form, c=1, mat=None) -> Form:
        """``acc += c * mat @ form``; ``mat`` defaults to the identity."""
        for t in range(len(acc)):
            for s in range(len(form)):
                x = (1 if s == t else 0) if mat is None else mat[t][s]
                if x:
                    for k, y in form[s].items():
                        acc[t][k] = acc[t].get(k, 0) + c * x * y
        return acc

    def om(xs: Sequence[int]) -> Form:
        s = perm_sign(xs)
        out = zero(L.dw)
        if s:
            key = tuple(sorted(xs))
            for t in range(L.dw):
                out[t][pos["omega", (key, t)]] = Fraction(s)
        return out

    def om_vec(xs: Sequence[int], last: Sequence) -> Form:
        out = zero(L.dw)
        for k, c in enumerate(last):
            if c:
                add(out, om(list(xs) + [k]), c)
        return out

    def nu(xs: Sequence[int], mvec: Sequence) -> Form:
        out = zero(L.dv)
        s = perm_sign(xs)
        if s:
            key = tuple(sorted(xs))
            for m, c in enumerate(mvec):
                if c:
                    for t in range(L.dv):
                        k = pos["nu", (key, m, t)]
                        out[t][k] = out[t].get(k, 0) + s * c
        return out

    def nu_g(xs_vecs: Sequence[Sequence], mvec: Sequence) -> Form:
        out = zero(L.dv)
        for idx, c in expand_dense(xs_vecs):
            add(out, nu(idx, mvec), c)
        return out

    def th(mvec: Sequence) -> Form:
        out = zero(L.dw)
        for m, c in enumerate(mvec):
            if c:
                for t in range(L.dw):
                    k = pos["theta", (m, t)]
                    out[t][k] = out[t].get(k, 0) + c
        return out

    eqs: List[Dict[int, Fraction]] = []
    tuples_n1 = list(itertools.product(range(dg), repeat=n - 1))
    # theta compatibility, valued in W
    for xs in tuples_n1:
        xv = [unit(dg, k) for k in xs]
        for m in range(dm):
            em = unit(dm, m)
            fm = [row[m] for row in L.f]
            e = add(th(L.rho.apply(xv, em)), nu(xs, em), 1, L.phi)
            add(e, om_vec(xs, fm), -1)
            add(e, th(em), -1, L.rho2.basis(xs))
            eqs += e
    # omega identity, valued in W
    for xs in tuples_n1:
        xv = [unit(dg, k) for k in xs]
        for ys in itertools.product(range(dg), repeat=n):
            e = om_vec(xs, L.g.bracket_basis(ys))
            add(e, om(ys), 1, L.rho2.basis(xs))
            for i in range(n):
                inner = L.g.bracket(xv + [unit(dg, ys[i])])
                for k, c in enumerate(inner):
                    if c:
                        args = list(ys)
                        args[i] = k
                        add(e, om(args), -c)
                rest = ys[:i] + ys[i + 1:]
                sgn = -1 if (n - 1 - i) % 2 else 1
                add(e, om(list(xs) + [ys[i]]), -sgn, L.rho2.basis(rest))
            eqs += e
    # nu identity, valued in V
    for xs in tuples_n1:
        xv = [unit(dg, k) for k in xs]
        for ys in tuples_n1:
            yv = [unit(dg, k) for k in ys]
            for m in range(dm):
                em = unit(dm, m)
                e = nu(xs, L.rho.apply(yv, em))
                add(e, nu(ys, em), 1, L.rho1.basis(xs))
                add(e, nu(ys, L.rho.apply(xv, em)), -1)
                for i in range(n - 1):
                    args = list(yv)
                    args[i] = L.g.bracket(xv + [yv[i]])
                    add(e, nu_g(args, em), -1)
                    # [y_1, .., omega(x, y_i), .., y_{n-1}, m]
                    rest = list(ys[:i]) + list(ys[i + 1:])
                    sgn = -1 if (n - 2 - i) % 2 else 1
                    add(e, om(list(xs) + [ys[i]]), sgn, L.rho3(rest, m))
                add(e, nu(xs, em), -1, L.rho1.basis(ys))
                eqs += e
    return [row for row in eqs if any(row.values())]


def sparse_rank(rows: List[Dict[int, Fraction]]) -> int:
    """Rank of sparse rows by elimination on pivot columns."""
    pivots: Dict[int, Dict[int, Fraction]] = {}
    for row in rows:
        r = {k: Fraction(v) for k, v in row.items() if v}
        while r:
            c = min(r)
            if c not in pivots:
                pivots[c] = r
                break
            p = pivots[c]
            t = r[c] / p[c]
            for k, v in p.items():
                x = r.get(k, 0) - t * v
                if x:
                    r[k] = x
                else:
                    r.pop(k, None)
    return len(pivots)


def sparse_times_dense(rows: List[Dict[int, Fraction]], m: List[List[Fraction]]) -> List[List[Fraction]]:
    return [[sum(v * m[k][j] for k, v in row.items()) for j in range(len(m[0]))] for row in rows]


def lm_d1_matrix_oracle(L: RawLM) -> List[List[Fraction]]:
    """Dense matrix of ``D_1`` from the explicit formulas, in the coordinates above."""
    coords = lm_two_cochain_coords(L)
    cols = []
    for k in range(L.dw * L.dg + L.dv * L.dm):
        N0 = [[Fraction(0)] * L.dg for _ in range(L.dw)]
        N1 = [[Fraction(0)] * L.dm for _ in range(L.dv)]
        if k < L.dw * L.dg:  # argument index first, then target coordinate
            N0[k % L.dw][k // L.dw] = Fraction(1)
        else:
            k -= L.dw * L.dg
            N1[k % L.dv][k // L.dv] = Fraction(1)
        o, v, t = lm_d1_oracle(L, N0, N1)
        col = []
        for kind, key in coords:
            if kind == "omega":
                col.append(o[key[0]][key[1]])
            elif kind == "nu":
                col.append(v[key[0], key[1]][key[2]])
            else:
                col.append(t[key[0]][key[1]])
        cols.append(col)
    return [list(r) for r in zip(*cols)]
