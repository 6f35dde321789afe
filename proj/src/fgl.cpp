#include "eqc/fgl.hpp"

namespace eqc {

Ring extend_ring(const Ring& base, const std::vector<Generator>& extra, long cap) {
    std::vector<Generator> gens = base->gens;
    int group = static_cast<int>(base->group_caps.size());
    for (Generator g : extra) {
        g.trunc_group = group;
        gens.push_back(std::move(g));
    }
    std::vector<long> caps = base->group_caps;
    caps.push_back(cap);
    Ring ext = make_ring(base->p, std::move(gens), std::move(caps));
    for (const auto& rel : base->relations)
        add_relation(ext, transport(*rel.element, ext), rel.tag, rel.name);
    return ext;
}

GradedElement transport(const GradedElement& a, const Ring& dst) {
    if (a.ring() == dst) return a;
    const Ring& src = a.ring();
    std::vector<int> where(src->gens.size(), -1);
    GradedElement out(dst);
    Monomial t;
    t.exps.resize(dst->gens.size());
    for (const auto& [m, c] : a.terms()) {
        std::fill(t.exps.begin(), t.exps.end(), 0);
        for (size_t i = 0; i < m.exps.size(); ++i) {
            if (m.exps[i] == 0) continue;
            if (where[i] < 0) where[i] = dst->require(src->gens[i].name);
            t.exps[where[i]] = m.exps[i];
        }
        out.add_term(t, c);
    }
    out.finish();
    return out;
}

std::map<int, GradedElement> coefficients_by_var(const GradedElement& a, const std::string& var) {
    const Ring& R = a.ring();
    int idx = R->require(var);
    std::map<int, GradedElement> out;
    for (const auto& [m, c] : a.terms()) {
        Monomial stripped = m;
        int k = stripped.exps[idx];
        stripped.exps[idx] = 0;
        auto [it, fresh] = out.try_emplace(k, GradedElement::zero(R));
        it->second.add_term(stripped, c);
    }
    for (auto& [k, e] : out) e.finish();
    return out;
}

namespace {

// Horner evaluation of a polynomial in `var` at `at`, transporting the
// var-free coefficients into at's ring by name.
GradedElement eval_poly_at(const GradedElement& poly, const std::string& var,
                           const GradedElement& at) {
    const Ring& R = at.ring();
    auto cs = coefficients_by_var(poly, var);
    GradedElement res = GradedElement::zero(R);
    int prev = -1;
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
        if (it->first < 0) throw err::precondition_violated("negative exponent in evaluation");
        if (prev >= 0) res = res * at.pow(prev - it->first);
        res += transport(it->second, R);
        prev = it->first;
    }
    if (prev > 0) res = res * at.pow(prev);
    return res;
}

} // namespace

GradedElement FGL::formal_sum(const GradedElement& a, const GradedElement& b) const {
    // Horner in y, then in x per y-coefficient
    const Ring& R = a.ring();
    auto by_y = coefficients_by_var(F, "y");
    GradedElement res = GradedElement::zero(R);
    int prev = -1;
    for (auto it = by_y.rbegin(); it != by_y.rend(); ++it) {
        if (prev >= 0) res = res * b.pow(prev - it->first);
        res += eval_poly_at(it->second, "x", a);
        prev = it->first;
    }
    if (prev > 0) res = res * b.pow(prev);
    return res;
}

GradedElement FGL::n_series(long n) const { return n_series_at(n, x()); }

GradedElement FGL::n_series_at(long n, const GradedElement& t) const {
    const Ring& R = t.ring();
    if (n == 0) return GradedElement::zero(R);
    if (log && exp) {
        // [n](t) = exp(n * log(t)), exact to truncation
        GradedElement w = log->eval(t).scaled(n);
        return exp->eval(w);
    }
    if (n < 0) {
        // formal inverse i(t) with F(t, i(t)) = 0, then [-n] = i([n](t))
        GradedElement pos = n_series_at(-n, t);
        GradedElement inv = -pos;
        for (int guard = 0; guard <= order + 2; ++guard) {
            GradedElement r = formal_sum(pos, inv);
            if (r.is_zero()) return inv;
            inv -= r;
        }
        throw err::precision_too_low("formal inverse did not stabilize");
    }
    GradedElement acc = t;
    for (long k = 1; k < n; ++k) acc = formal_sum(t, acc);
    return acc;
}

FGLAxiomReport FGL::verify_axioms() const {
    FGLAxiomReport rep;
    GradedElement xe = x();
    rep.unit_ok = formal_sum(xe, GradedElement::zero(ring1)) == xe;
    {
        RingMap swap(ring2, ring2);
        swap.set("x", GradedElement::gen(ring2, "y"));
        swap.set("y", GradedElement::gen(ring2, "x"));
        rep.comm_ok = swap(F) == F;
    }
    {
        Ring ring3 = extend_ring(base, {{"x", 2, GenKind::SeriesVar}, {"y", 2, GenKind::SeriesVar},
                                        {"z", 2, GenKind::SeriesVar}},
                                 order);
        GradedElement X = GradedElement::gen(ring3, "x");
        GradedElement Y = GradedElement::gen(ring3, "y");
        GradedElement Z = GradedElement::gen(ring3, "z");
        rep.assoc_ok = formal_sum(formal_sum(X, Y), Z) == formal_sum(X, formal_sum(Y, Z));
    }
    return rep;
}

Rat FGL::a_coeff(int i, int j) const { return F.coeff({{"x", i}, {"y", j}}); }

namespace {

Ring ring_with_vars(const Ring& base, int order, bool two) {
    std::vector<Generator> extra{{"x", 2, GenKind::SeriesVar}};
    if (two) extra.push_back({"y", 2, GenKind::SeriesVar});
    return extend_ring(base, extra, order);
}

} // namespace

FGL fgl_from_log(const Ring& base, const PowerSeries1& log, int order) {
    if (!log.coeff(0).is_zero() || log.coeff(1) != GradedElement::one(base))
        throw err::bad_log_linear_term("log must be x + O(x^2)");
    FGL f;
    f.base = base;
    f.order = order;
    f.log = log.truncated(order);
    f.exp = reverse(*f.log);
    f.ring1 = ring_with_vars(base, order, false);
    f.ring2 = ring_with_vars(base, order, true);
    GradedElement w =
        f.log->eval(GradedElement::gen(f.ring2, "x")) + f.log->eval(GradedElement::gen(f.ring2, "y"));
    f.F = f.exp->eval(w);
    return f;
}

FGL fgl_from_F(const Ring& base, const GradedElement& F_expr, int order) {
    FGL f;
    f.base = base;
    f.order = order;
    f.ring1 = ring_with_vars(base, order, false);
    f.ring2 = ring_with_vars(base, order, true);
    f.F = transport(F_expr, f.ring2);
    FGLAxiomReport rep = f.verify_axioms();
    if (!rep.all()) throw err::precondition_violated("F does not satisfy the FGL axioms");
    return f;
}

FGL specialize_to_prime_field(const FGL& f, const std::map<std::string, Rat>& values) {
    Ring base0 = make_ring(f.p(), {}, {});
    Ring r2 = extend_ring(base0, {{"x", 2, GenKind::SeriesVar}, {"y", 2, GenKind::SeriesVar}},
                          f.order);
    RingMap phi(f.ring2, r2);
    phi.set("x", GradedElement::gen(r2, "x"));
    phi.set("y", GradedElement::gen(r2, "y"));
    for (const auto& g : f.base->gens) {
        auto it = values.find(g.name);
        Rat v = it == values.end() ? Rat(0) : it->second;
        phi.set(g.name, GradedElement::scalar(r2, v));
    }
    return fgl_from_F(base0, phi(f.F), f.order);
}

FGL p_typical(long p, PTypicalConvention convention, int V, int order) {
    if (V < 1) throw err::precondition_violated("p_typical needs V >= 1");
    long pV = 1;
    for (int i = 0; i < V; ++i) pV *= p;
    if (order <= pV) throw err::precision_too_low("p_typical needs order > p^V");

    std::vector<Generator> gens;
    for (int i = 1; i <= V; ++i) {
        long deg = 2;
        long pi = 1;
        for (int k = 0; k < i; ++k) pi *= p;
        deg = 2 * (pi - 1);
        gens.push_back({"v" + std::to_string(i), deg, GenKind::Polynomial});
    }
    Ring base = make_ring(p, std::move(gens), {});

    auto vgen = [&](int idx) {
        if (idx <= V) return GradedElement::gen(base, "v" + std::to_string(idx));
        return GradedElement::zero(base); // indices beyond V are truncated away
    };

    // log = sum m_n x^{p^n}
    int nmax = 0;
    {
        long q = p;
        while (q < order) {
            ++nmax;
            q *= p;
        }
    }
    std::vector<GradedElement> m(static_cast<size_t>(nmax) + 1, GradedElement::zero(base));
    m[0] = GradedElement::one(base);
    for (int n = 1; n <= nmax; ++n) {
        long pn = 1;
        for (int k = 0; k < n; ++k) pn *= p;
        GradedElement acc = vgen(n); // i = 0 term of the sum below is m_0 v_n
        long pi = 1;
        for (int i = 1; i <= n - 1; ++i) {
            pi *= p;
            acc += m[i] * vgen(n - i).pow(pi);
        }
        if (convention == PTypicalConvention::Araki) {
            // m_n (p - p^{p^n}) = v_n + sum_{i=1}^{n-1} m_i v_{n-i}^{p^i}
            Int ppn;
            mpz_ui_pow_ui(ppn.get_mpz_t(), static_cast<unsigned long>(p),
                          static_cast<unsigned long>(pn));
            Rat denom = Rat(p) - Rat(ppn);
            m[n] = acc.scaled(Rat(1) / denom);
        } else {
            // p m_n = sum_{i=0}^{n-1} m_i v_{n-i}^{p^i}
            m[n] = acc.scaled(Rat(1, p));
        }
    }
    PowerSeries1 log(base, "x", order);
    log.set_coeff(1, m[0]);
    {
        long q = p;
        for (int n = 1; n <= nmax; ++n) {
            if (q < order) log.set_coeff(static_cast<int>(q), m[n]);
            q *= p;
        }
    }

    FGL f = fgl_from_log(base, log, order);
    if (!f.F.coefficients_p_local())
        throw err::convention_self_test_failed("F is not p-locally integral");
    {
        // log denominators: val_p(m_n) >= -n (exactly -n for Hazewinkel)
        long q = 1;
        for (int n = 0; n <= nmax; ++n) {
            for (const auto& [mono, c] : m[n].terms())
                if (val_p(c, p) < -n)
                    throw err::convention_self_test_failed("log coefficient denominator too deep");
            q *= p;
        }
    }

    if (convention == PTypicalConvention::Araki) {
        // [p](x) = px +_F v_1 x^p +_F v_2 x^{p^2} +_F ...
        GradedElement xe = f.x();
        GradedElement acc = xe.scaled(p);
        long q = p;
        for (int i = 1; i <= V && q < order; ++i) {
            GradedElement term = transport(vgen(i), f.ring1) * xe.pow(q);
            acc = f.formal_sum(acc, term);
            q *= p;
        }
        if (acc != f.n_series(p))
            throw err::convention_self_test_failed("Araki p-series identity failed");
    }
    return f;
}

namespace {

// r == lambda * v_idx^{use_v} * (inverted monomial), with the stated val_p(lambda)
bool unit_multiple_of_v(const GradedElement& r, int idx, long expect_val, GradedElement* unit_out) {
    if (r.size() != 1) return false;
    const Ring& R = r.ring();
    const auto& [m, c] = *r.terms().begin();
    int vpos = idx >= 1 ? R->find("v" + std::to_string(idx)) : -1;
    if (idx >= 1 && vpos < 0) return false;
    Monomial rest = m;
    if (idx >= 1) {
        if (m.exps[vpos] != 1) return false;
        rest.exps[vpos] = 0;
    }
    for (size_t i = 0; i < rest.exps.size(); ++i)
        if (rest.exps[i] != 0 && !R->gens[i].inverted) return false;
    if (!is_p_local(c, R->p) || val_p(c, R->p) != expect_val) return false;
    if (unit_out) {
        GradedElement u(R);
        Rat cu = expect_val == 0 ? c : c / Rat(R->p); // report the unit factor of v_0 = p
        u.add_term(rest, cu);
        u.finish();
        *unit_out = u;
    }
    return true;
}

} // namespace

CongruenceReport two_series_congruence(const FGL& fgl, int n) {
    if (n < 1) throw err::precondition_violated("two_series_congruence needs n >= 1");
    long p = fgl.p();
    long pn = 1, pn1 = 1;
    for (int k = 0; k < n; ++k) pn *= p;
    pn1 = pn / p;
    if (fgl.order <= pn) throw err::precision_too_low("order too small for x^{p^n}");

    CongruenceReport rep;
    rep.n = n;
    GradedElement s = reduce_mod_In(fgl.n_series(p), n - 1);
    auto coeffs = coefficients_by_var(s, "x");

    rep.low_zero = true;
    for (const auto& [k, c] : coeffs)
        if (k < pn1 && !c.is_zero()) rep.low_zero = false;

    auto lead_it = coeffs.find(static_cast<int>(pn1));
    GradedElement lead = lead_it == coeffs.end() ? GradedElement::zero(s.ring()) : lead_it->second;
    GradedElement lead_unit(s.ring());
    rep.lead_ok = unit_multiple_of_v(lead, n - 1, n == 1 ? 1 : 0, &lead_unit);
    rep.lead_text = lead_unit.text();

    auto next_it = coeffs.find(static_cast<int>(pn));
    GradedElement next = next_it == coeffs.end() ? GradedElement::zero(s.ring()) : next_it->second;
    if (n == 1) next = reduce_mod_In(next, 1);
    else if (n >= 2) next = next.kill_generator("v" + std::to_string(n - 1));
    GradedElement next_unit(s.ring());
    rep.next_ok = unit_multiple_of_v(next, n, 0, &next_unit);
    rep.next_text = next_unit.text();

    if (!rep.all()) throw err::congruence_fails("p-series congruence failed at n=" + std::to_string(n));
    return rep;
}

HeightResult height_over_field(const FGL& fgl, int bound) {
    for (const auto& g : fgl.base->gens)
        if (g.kind == GenKind::Polynomial || g.kind == GenKind::SeriesVar)
            throw err::not_over_prime_field("base ring still has generators");
    long p = fgl.p();
    long pb = 1;
    for (int k = 0; k < bound; ++k) pb *= p;
    if (fgl.order <= pb) throw err::precision_too_low("order too small for x^{p^bound}");

    GradedElement s = reduce_mod_In(fgl.n_series(p), 1);
    auto coeffs = coefficients_by_var(s, "x");
    long low = -1;
    for (const auto& [k, c] : coeffs)
        if (!c.is_zero() && (low < 0 || k < low)) low = k;
    if (low < 0 || low > pb) return {true, bound};
    long q = 1;
    for (int n = 0; n <= bound; ++n) {
        if (low == q) return {false, n};
        q *= p;
    }
    throw err::precondition_violated("[p]-series valuation is not a power of p");
}

VnCheck vn_generator_check(const GradedElement& x, long long n) {
    VnCheck out;
    out.unit = GradedElement::zero(x.ring());
    if (n == HV_NEG) {
        if (x.is_zero()) {
            out.ok = true;
            return out;
        }
        CertResult c = relation_member(x);
        out.ok = c.kind == CertResult::Zero;
        return out;
    }
    if (n >= HV_INF) {
        out.ok = is_unit(x);
        return out;
    }
    GradedElement r = reduce_mod_In(x, static_cast<int>(n));
    out.ok = unit_multiple_of_v(r, static_cast<int>(n), n == 0 ? 1 : 0, &out.unit);
    return out;
}

} // namespace eqc
