"""Pure-Python kernels; the reference the compiled ones are tested against."""

from __future__ import annotations


def _dominant(x: list[int], roots, n: int) -> int:
    """Reflect ``x`` in place into the dominant chamber; return the reflection count parity."""
    parity = 0
    i = 0
    while i < n:
        c = x[i]
        if c < 0:
            col = roots[i]
            for j in range(n):
                x[j] -= c * col[j]
            parity ^= 1
            i = 0
        else:
            i += 1
    return parity


def freudenthal(lam, order, roots, forms, norms, G, simple_roots):
    """Freudenthal multiplicities of the dominant weights in ``order``.

    ``order`` must list the dominant weights of V(lam) by increasing depth,
    starting with ``lam``.  ``forms[k]`` is ``G alpha_k`` and ``norms[k]`` is
    ``(alpha_k, alpha_k)``, both scaled by the integer form.
    """
    n = len(lam)

    def sq(v):
        return sum(v[i] * sum(G[i][j] * v[j] for j in range(n)) for i in range(n))

    top = sq([a + 1 for a in lam])
    mult = {}
    out = []
    for mu in order:
        if not mult:
            mult[mu] = 1
            out.append(1)
            continue
        lhs = top - sq([a + 1 for a in mu])
        rhs = 0
        for alpha, f, nrm in zip(roots, forms, norms):
            base = sum(a * b for a, b in zip(mu, f))
            nu = list(mu)
            i = 0
            while True:
                i += 1
                for j in range(n):
                    nu[j] += alpha[j]
                x = list(nu)
                _dominant(x, simple_roots, n)
                m = mult.get(tuple(x))
                if m is None:
                    break
                rhs += m * (base + i * nrm)
        rhs *= 2
        q, r = divmod(rhs, lhs)
        if r:
            raise ArithmeticError(f"Freudenthal quotient not integral at {mu}")
        mult[mu] = q
        out.append(q)
    return out


def klimyk(lam, weights, mults, simple_roots):
    """Klimyk rule: sum over weights nu of V(mu) of sign * V(dom(lam + nu + delta) - delta)."""
    n = len(lam)
    shift = [a + 1 for a in lam]
    acc = {}
    for nu, m in zip(weights, mults):
        x = [a + b for a, b in zip(shift, nu)]
        parity = _dominant(x, simple_roots, n)
        if 0 in x:
            continue
        key = tuple(a - 1 for a in x)
        acc[key] = acc.get(key, 0) + (-m if parity else m)
    return {k: v for k, v in acc.items() if v}


def convolve_dominant(targets, lw, lm, full_mu):
    """For each dominant target nu, sum_{pi} m_lam(pi) m_mu(nu - pi)."""
    out = {}
    get = full_mu.get
    for nu in targets:
        s = 0
        for pi, m in zip(lw, lm):
            c = get(tuple(a - b for a, b in zip(nu, pi)))
            if c:
                s += m * c
        if s:
            out[nu] = s
    return out
