"""Perfectness, algebraic Poincare duality, and the structure transforms.

The transforms implement the invariance statements for biunital
coFrobenius bialgebras:

- dualize:     (A^v, lam^v, mu^v, eps^v, eta^v) with copairing p^v and
               pairing c^v (duals routed through iota);
- shift:       (A[1], s mu (w(x)w), (s(x)s) lam w, (-1)^m s eta,
               (-1)^l eps w) with c-bar = (-1)^l (s(x)s)c and
               p-bar = (-1)^{l+1} p (w(x)w);
- rescale:     ((-1)^m mu, (-1)^l lam, (-1)^m eta, (-1)^l eps), scaling
               c and p by (-1)^{m+l};
- transpose:   (mu tau, tau lam, (-1)^m eta, (-1)^l eps) with pairing
               (-1)^l p tau and copairing (-1)^m tau c;
- Poincare duality: vec p : A -> A^v and its inverse vec c realize an
  isomorphism onto (A^v, (-1)^l lam^v tau, (-1)^{ml+l} tau mu^v, eps^v,
  (-1)^{ml+l+m} eta^v).

A pairing p induces vec p(a) = p(a (x) .), a copairing c induces
vec c(f) = (-1)^{|f||c|} (f (x) 1)c; both are bijective exactly when the
structure is perfect, which is decided by exact per-degree rank.
"""

from dataclasses import dataclass

from .core import (TensorSpace, Element, GradedMap, compose, element_as_map,
                   scalar_space)
from .tensor import (twist, dual_module, dual_map, ShiftMaps, shift_map,
                     DUAL_SUFFIX)
from .reports import (CheckReport, check_relation, check_elements_equal,
                      PASS, FAIL)
from .structures import BialgebraData, check_cofrobenius, sgn
from .windows import merge_windows
from .fields import invert_matrix


@dataclass
class PairingHandle:
    p: GradedMap          # A (x) A -> R
    vec_p: GradedMap      # A -> A^v with <vec_p(a), b> = p(a (x) b)


@dataclass
class CopairingHandle:
    c: Element            # element of A (x) A
    vec_c: GradedMap      # A^v -> A with vec_c(f) = (-1)^{|f||c|}(f (x) 1)c


def vec_p_map(p):
    """vec p : A -> A^v, the unique map with p = ev(vec p (x) 1)."""
    a = p.source.modules[0]
    target = TensorSpace((dual_module(a),))
    entries = {}
    for (i, j), row in p.entries.items():
        val = row.get((), None)
        if val is None:
            continue
        entries.setdefault((i,), {})[(j,)] = val
    return GradedMap(TensorSpace((a,)), target, p.degree, entries)


def vec_c_map(c, c_degree=None):
    """vec c : A^v -> A with vec_c(b^v) = (-1)^{|b||c|} sum_y c_{b,y} y."""
    a = c.space.modules[0]
    if c_degree is None:
        c_degree = 0 if c.is_zero else c.degree()
    source = TensorSpace((dual_module(a),))
    target = TensorSpace((a,))
    field = a.field
    entries = {}
    for (i, j), v in c.coeffs.items():
        s = sgn((a.degree(i) % 2) * (c_degree % 2))
        row = entries.setdefault((i,), {})
        row[(j,)] = field.add(row.get((j,), field.zero), field.mul(field.coerce(s), v))
    return GradedMap(source, target, c_degree, entries)


def pairing_handle(data):
    p = data.pairing()
    return PairingHandle(p, vec_p_map(p))


def copairing_handle(data):
    c = data.copairing()
    return CopairingHandle(c, vec_c_map(c, data.lam.degree - data.mu.degree))


def check_perfect(pair, copair, window=None):
    """(1(x)p)(c(x)1) = 1 = (-1)^{|p||c|}(p(x)1)(1(x)c), and the induced
    maps vec_c, vec_p are mutually inverse."""
    p, vec_p = pair.p, pair.vec_p
    c, vec_c = copair.c, copair.vec_c
    if p.degree != -vec_c.degree:
        raise ValueError(f"degree mismatch: |p| = {p.degree}, |c| = {vec_c.degree}")
    a_space = vec_p.source
    c_map = element_as_map(c, degree=vec_c.degree)
    idm = GradedMap.identity(a_space)
    out = [
        check_relation("perfect-left", a_space,
                       [(1, [[c_map, idm], [idm, p]])], [(1, [])], window),
        check_relation("perfect-right", a_space,
                       [(sgn(p.degree * vec_c.degree), [[idm, c_map], [p, idm]])],
                       [(1, [])], window),
        check_relation("vec-c-after-vec-p", a_space,
                       [(1, [[vec_p], [vec_c]])], [(1, [])], window),
        check_relation("vec-p-after-vec-c", vec_c.source,
                       [(1, [[vec_c], [vec_p]])], [(1, [])],
                       window.dualized(DUAL_SUFFIX).merged(window) if window else None),
    ]
    return out


def dual_eta(eps):
    """eps^v in A^v: the functional eps viewed as an element of the dual module."""
    a = eps.source.modules[0]
    dspace = TensorSpace((dual_module(a),))
    coeffs = {}
    for (i,), row in eps.entries.items():
        v = row.get((), None)
        if v is not None:
            coeffs[(i,)] = v
    return Element(dspace, coeffs)


def dual_eps(eta, eta_degree):
    """eta^v : A^v -> R, f |-> (-1)^{|f||eta|} f(eta); degree |eta|."""
    a = eta.space.modules[0]
    dspace = TensorSpace((dual_module(a),))
    field = a.field
    entries = {}
    for (i,), v in eta.coeffs.items():
        s = sgn((a.degree(i) % 2) * (eta_degree % 2))
        entries[(i,)] = {(): field.mul(field.coerce(s), v)}
    return GradedMap(dspace, scalar_space(field), eta_degree, entries)


def dualize(data):
    """(A^v, lam^v, mu^v, eps^v, eta^v): flavor-preserving duality."""
    dmod = dual_module(data.module)
    mu_d = dual_map(data.lam)
    lam_d = dual_map(data.mu)
    eta_d = dual_eta(data.eps) if data.eps is not None else None
    eps_d = dual_eps(data.eta, -data.mu.degree) if data.eta is not None else None
    window = data.window.dualized(DUAL_SUFFIX) if data.window is not None else None
    return BialgebraData(dmod, mu_d, lam_d, eta_d, eps_d, window)


def shift_structure(data):
    """The shifted structure on A[1] with the sign table of the invariance lemma."""
    sh = ShiftMaps(data.module)
    m, l = data.mu.degree, data.lam.degree
    mu_s = shift_map(data.mu, sh)
    lam_s = shift_map(data.lam, sh)
    eta_s = sh.s(data.eta).scale(sgn(m)) if data.eta is not None else None
    eps_s = compose(data.eps, sh.omega).scale(sgn(l)) if data.eps is not None else None
    window = data.window.shifted() if data.window is not None else None
    return BialgebraData(sh.shifted, mu_s, lam_s, eta_s, eps_s, window)


def rescale_signs(data, m, l):
    """((-1)^m mu, (-1)^l lam, (-1)^m eta, (-1)^l eps); c, p scale by (-1)^{m+l}."""
    return data.replace(
        mu=data.mu.scale(sgn(m)),
        lam=data.lam.scale(sgn(l)),
        eta=data.eta.scale(sgn(m)) if data.eta is not None else None,
        eps=data.eps.scale(sgn(l)) if data.eps is not None else None)


def transpose_structure(data):
    """(A, mu tau, tau lam, (-1)^m eta, (-1)^l eps); requires a genuine
    biunital coFrobenius input and refuses otherwise, naming the failing
    relation."""
    if data.eta is None or data.eps is None:
        raise ValueError("transpose refused: input is not biunital coFrobenius "
                         "(missing unit or counit)")
    pre = check_cofrobenius(data, "biunital")
    bad = next((r for r in pre if r.verdict == FAIL), None)
    if bad is not None:
        raise ValueError(f"transpose refused: input fails {bad.name}")
    tau = twist(data.module, data.module)
    return data.replace(
        mu=compose(data.mu, tau),
        lam=compose(tau, data.lam),
        eta=data.eta.scale(sgn(data.mu.degree)),
        eps=data.eps.scale(sgn(data.lam.degree)))


def check_intertwines_product(phi, data_a, data_b, window=None):
    """phi mu_A = (-1)^{|phi||mu_A|} mu_B phi^{(x)2}; with bijective phi and
    units on both sides, also the unit transport eta_B = (-1)^{|phi|} phi(eta_A)."""
    if window is None:
        window = merge_windows(data_a.window, data_b.window)
    out = [check_relation(
        "intertwines-product", data_a.space2,
        [(1, [[data_a.mu], [phi]])],
        [(sgn(phi.degree * data_a.mu.degree), [[phi, phi], [data_b.mu]])],
        window)]
    if data_a.eta is not None and data_b.eta is not None:
        out.append(check_elements_equal(
            "unit-transport",
            data_b.eta,
            phi(data_a.eta).scale(sgn(phi.degree)),
            window))
    return out


def check_intertwines_coproduct(phi, data_a, data_b, window=None):
    """phi^{(x)2} lam_A = (-1)^{|phi||lam_A|} lam_B phi; with counits on both
    sides also the counit transport eps_A = eps_B phi."""
    if window is None:
        window = merge_windows(data_a.window, data_b.window)
    out = [check_relation(
        "intertwines-coproduct", data_a.space,
        [(1, [[data_a.lam], [phi, phi]])],
        [(sgn(phi.degree * data_a.lam.degree), [[phi], [data_b.lam]])],
        window)]
    if data_a.eps is not None and data_b.eps is not None:
        out.append(check_relation(
            "counit-transport", data_a.space,
            [(1, [[data_a.eps]])],
            [(1, [[phi], [data_b.eps]])],
            window))
    return out


def poincare_dual_structure(data):
    """The sign-twisted dual structure of the algebraic Poincare duality
    theorem: (A^v, (-1)^l lam^v tau, (-1)^{ml+l} tau mu^v, eps^v,
    (-1)^{ml+l+m} eta^v)."""
    m, l = data.mu.degree, data.lam.degree
    dmod = dual_module(data.module)
    tau_d = twist(dmod, dmod)
    mu_b = compose(dual_map(data.lam), tau_d).scale(sgn(l))
    lam_b = compose(tau_d, dual_map(data.mu)).scale(sgn(m * l + l))
    eta_b = dual_eta(data.eps)
    eps_b = dual_eps(data.eta, -m).scale(sgn(m * l + l + m))
    window = data.window.dualized(DUAL_SUFFIX) if data.window is not None else None
    return BialgebraData(dmod, mu_b, lam_b, eta_b, eps_b, window)


def check_poincare_duality(data):
    """vec p realizes an isomorphism of biunital coFrobenius bialgebras onto
    the sign-twisted dual, with vec c as the inverse intertwiner."""
    if data.eta is None or data.eps is None:
        raise ValueError("poincare duality needs a biunital coFrobenius input "
                         "(missing unit or counit)")
    pre = check_cofrobenius(data, "biunital")
    bad = next((r for r in pre if r.verdict == FAIL), None)
    if bad is not None:
        raise ValueError(f"poincare duality needs a biunital coFrobenius input; "
                         f"fails {bad.name}")
    target = poincare_dual_structure(data)
    out = []
    out.extend(CheckReport("dual-" + r.name, r.verdict, r.witness, r.checked,
                           r.inconclusive, r.masked_coords, r.note)
               for r in check_cofrobenius(target, "biunital"))
    handle_p = pairing_handle(data)
    handle_c = copairing_handle(data)
    window = merge_windows(data.window, target.window)
    out.extend(check_intertwines_product(handle_p.vec_p, data, target, window))
    out.extend(check_intertwines_coproduct(handle_p.vec_p, data, target, window))
    out.extend(CheckReport("inverse-" + r.name, r.verdict, r.witness, r.checked,
                           r.inconclusive, r.masked_coords, r.note)
               for r in check_intertwines_product(handle_c.vec_c, target, data, window))
    out.extend(CheckReport("inverse-" + r.name, r.verdict, r.witness, r.checked,
                           r.inconclusive, r.masked_coords, r.note)
               for r in check_intertwines_coproduct(handle_c.vec_c, target, data, window))
    out.extend(check_perfect(handle_p, handle_c, data.window))
    return out


def _invert_vec_p(vec_p, window=None):
    """Exact per-degree inversion of vec_p : A -> A^v.

    A singular or non-square block aborts with the offending degree.  With
    a window, rows and columns outside the window-valid region are
    excluded first (mutually: only basis elements that actually pair with a
    kept partner survive), and the inverse is computed on the remaining
    block.
    """
    a = vec_p.source.modules[0]
    dual = vec_p.target.modules[0]
    field = a.field
    win_all = None
    if window is not None:
        win_all = window.merged(window.dualized(DUAL_SUFFIX))
    entries = {}
    for deg in sorted(set(a.degrees)):
        rows_idx = list(a.basis_at(deg))
        cols_idx = list(dual.basis_at(deg + vec_p.degree))
        if win_all is not None:
            rows_idx = [i for i in rows_idx if win_all.input_valid((a.labels[i],))]
            cols_idx = [j for j in cols_idx if win_all.input_valid((dual.labels[j],))]
            rows_idx = [i for i in rows_idx
                        if any((j,) in vec_p.entries.get((i,), {}) for j in cols_idx)]
            cols_idx = [j for j in cols_idx
                        if any((j,) in vec_p.entries.get((i,), {}) for i in rows_idx)]
        if not rows_idx and not cols_idx:
            continue
        if len(rows_idx) != len(cols_idx):
            raise ValueError(f"pairing not perfect at degree {deg}: "
                             f"{len(rows_idx)} x {len(cols_idx)} block")
        mat = [[vec_p.entries.get((i,), {}).get((j,), field.zero) for j in cols_idx]
               for i in rows_idx]
        inv = invert_matrix(mat, field)
        if inv is None:
            raise ValueError(f"pairing not perfect at degree {deg}: singular block")
        for r, j in enumerate(cols_idx):
            row = {}
            for c_, i in enumerate(rows_idx):
                if not field.is_zero(inv[r][c_]):
                    row[(i,)] = inv[r][c_]
            if row:
                entries[(j,)] = row
    return GradedMap(vec_p.target, vec_p.source, -vec_p.degree, entries)


def copairing_from_vec_c(vec_c):
    """Reconstruct c from vec_c via c = sum_b (-1)^{|b||c|} b (x) vec_c(b^v)."""
    a = vec_c.target.modules[0]
    field = a.field
    space2 = TensorSpace((a, a))
    c_deg = vec_c.degree
    coeffs = {}
    for (i,), row in vec_c.entries.items():
        s = sgn((a.degree(i) % 2) * (c_deg % 2))
        for (j,), v in row.items():
            coeffs[(i, j)] = field.mul(field.coerce(s), v)
    return Element(space2, coeffs)


def complete_from_pairing(module, mu, eta, eps, window=None):
    """Build the coproduct from (mu, eta, eps) via the perfect pairing.

    Requires |mu| = 0 (the degree of lam is fixed as -|eps| before p
    exists).  Computes p = (-1)^{|lam|} eps mu, inverts vec_p per degree,
    sets lam = (1 (x) mu)(c (x) 1), and runs the full biunital coFrobenius
    suite, which must pass.
    """
    if mu.degree != 0:
        raise ValueError("complete_from_pairing requires |mu| = 0; shift first")
    lam_degree = -eps.degree
    p = compose(eps, mu).scale(sgn(lam_degree))
    vec_p = vec_p_map(p)
    vec_c = _invert_vec_p(vec_p, window)
    c = copairing_from_vec_c(vec_c)
    space = TensorSpace((module,))
    idm = GradedMap.identity(space)
    c_map = element_as_map(c, degree=lam_degree)
    # lam = (1 (x) mu)(c (x) 1), materialized row by row
    entries = {}
    from .tensor import apply_pipeline
    for idx in space.basis():
        img = apply_pipeline([[c_map, idm], [idm, mu]], Element.basis(space, idx))
        if img.coeffs:
            entries[idx] = dict(img.coeffs)
    lam = GradedMap(space, TensorSpace((module, module)), lam_degree, entries)
    data = BialgebraData(module, mu, lam, eta, eps, window)
    suite = check_cofrobenius(data, "biunital")
    bad = next((r for r in suite if r.verdict == FAIL), None)
    if bad is not None:
        raise ValueError(f"input (mu, eta, eps) is not Frobenius-compatible: "
                         f"fails {bad.name}")
    return data


def cyclic_triple_checks(data):
    """beta = (1(x)mu(x)1)(c(x)c) is cyclically symmetric; B = (p(x)p)(1(x)lam(x)1)
    satisfies B sigma = B; plus the (co)commutative tau_12 refinements."""
    from .tensor import permute, Permutation
    from .structures import check_product_laws, check_coproduct_laws
    o_m, o_l = data.mu.degree, data.lam.degree
    w = data.window
    a = data.module
    space3 = data.space3
    idm = GradedMap.identity(data.space)
    out = []
    sigma = permute(Permutation.cycle(3, [1, 2, 3]), space3)
    tau12 = permute(Permutation.transposition(3, 1, 2), space3)
    if data.eta is not None:
        c_map = data.copairing_map()
        scal = scalar_space(data.field)
        out.append(check_relation(
            "beta-cyclic", scal,
            [(1, [[c_map, c_map], [idm, data.mu, idm], [sigma]])],
            [(1, [[c_map, c_map], [idm, data.mu, idm]])], w))
        cocomm = check_coproduct_laws(data)[1]  # cocommutativity
        if cocomm.verdict == PASS:
            out.append(check_relation(
                "beta-tau12", scal,
                [(1, [[c_map, c_map], [idm, data.mu, idm], [tau12]])],
                [(sgn(o_l), [[c_map, c_map], [idm, data.mu, idm]])], w))
    if data.eps is not None:
        p_map = data.pairing()
        out.append(check_relation(
            "B-cyclic", space3,
            [(1, [[sigma], [idm, data.lam, idm], [p_map, p_map]])],
            [(1, [[idm, data.lam, idm], [p_map, p_map]])], w))
        comm = check_product_laws(data)[1]
        if comm.verdict == PASS:
            out.append(check_relation(
                "B-tau12", space3,
                [(1, [[tau12], [idm, data.lam, idm], [p_map, p_map]])],
                [(sgn(o_m), [[idm, data.lam, idm], [p_map, p_map]])], w))
    return out
