#include <algorithm>

#include "eqc/ring.hpp"

namespace eqc {
namespace {

// (p, v1, v2, ...)-adic filtration of a term: val_p of the coefficient plus the
// total exponent of v-generators. Every relation we ever install has all of its
// terms in filtration >= 1, so a filtration-0 term obstructs ideal membership.
long term_filtration(const Ring& R, const Monomial& m, const Rat& c) {
    long f = val_p(c, R->p);
    for (size_t i = 0; i < m.exps.size(); ++i) {
        const auto& name = R->gens[i].name;
        if (m.exps[i] > 0 && name.size() >= 2 && name[0] == 'v' &&
            name.find_first_not_of("0123456789", 1) == std::string::npos)
            f += m.exps[i];
    }
    return f;
}

bool all_terms_filtration_positive(const Ring& R, const GradedElement& e) {
    for (const auto& [m, c] : e.terms())
        if (!is_p_local(c, R->p) || term_filtration(R, m, c) < 1) return false;
    return true;
}

// all monomials of the given degree within per-generator exponent caps
void enumerate_monomials(const Ring& R, long degree, const CertOptions& opts,
                         std::vector<Monomial>& out) {
    size_t n = R->gens.size();
    std::vector<long> lo(n), hi(n);
    for (size_t i = 0; i < n; ++i) {
        lo[i] = R->gens[i].inverted ? opts.inverted_low : 0;
        hi[i] = opts.max_exp;
        if (R->gens[i].kind == GenKind::SeriesVar) {
            long cap = R->group_caps[R->gens[i].trunc_group] - 1;
            hi[i] = std::min(hi[i], cap);
        }
    }
    // bounds on the degree attainable by generators i..n-1
    std::vector<long> min_tail(n + 1, 0), max_tail(n + 1, 0);
    for (size_t i = n; i-- > 0;) {
        long d = R->gens[i].degree;
        long a = d * lo[i], b = d * hi[i];
        min_tail[i] = min_tail[i + 1] + std::min(a, b);
        max_tail[i] = max_tail[i + 1] + std::max(a, b);
    }
    Monomial cur;
    cur.exps.assign(n, 0);
    std::vector<std::pair<size_t, long>> stack;
    auto rec = [&](auto&& self, size_t i, long rem) -> void {
        if (out.size() > opts.max_candidates) return;
        if (i == n) {
            if (rem == 0 && !R->truncated_away(cur)) out.push_back(cur);
            return;
        }
        for (long e = lo[i]; e <= hi[i]; ++e) {
            long rest = rem - R->gens[i].degree * e;
            if (rest < min_tail[i + 1] || rest > max_tail[i + 1]) continue;
            cur.exps[i] = static_cast<int>(e);
            self(self, i + 1, rest);
        }
        cur.exps[i] = 0;
    };
    rec(rec, 0, degree);
}

// exact Gaussian elimination; returns a solution of A x = b or nullopt
std::optional<std::vector<Rat>> solve(std::vector<std::vector<Rat>> A, std::vector<Rat> b) {
    size_t rows = A.size();
    size_t cols = rows ? A[0].size() : 0;
    std::vector<long> pivot_col_of_row;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && A[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(A[sel], A[r]);
        std::swap(b[sel], b[r]);
        Rat inv = Rat(1) / A[r][c];
        for (size_t j = c; j < cols; ++j) A[r][j] *= inv;
        b[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0) continue;
            Rat f = A[i][c];
            for (size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
            b[i] -= f * b[r];
        }
        pivot_col_of_row.push_back(static_cast<long>(c));
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (b[i] != 0) return std::nullopt;
    std::vector<Rat> x(cols, Rat(0));
    for (size_t i = 0; i < r; ++i) x[pivot_col_of_row[i]] = b[i];
    return x;
}

} // namespace

CertResult relation_member(const GradedElement& a, CertOptions opts) {
    const Ring& R = a.ring();
    std::vector<const Relation*> rels;
    for (const auto& rel : R->relations)
        if (rel.tag == RelationTag::CertificateOnly) rels.push_back(&rel);

    CertResult res;
    res.multipliers.assign(rels.size(), GradedElement::zero(R));
    if (a.is_zero()) {
        res.kind = CertResult::Zero;
        res.detail = "zero element";
        return res;
    }
    if (rels.empty()) {
        res.kind = CertResult::Nonzero;
        res.detail = "ring has no certificate relations";
        return res;
    }

    bool filtered_relations = true;
    for (const auto* rel : rels)
        if (!all_terms_filtration_positive(R, *rel->element)) filtered_relations = false;
    if (filtered_relations) {
        // any p-local-multiplier combination of the relations has every term in
        // (p,v)-filtration >= 1, so a filtration <= 0 term rules membership out
        for (const auto& [m, c] : a.terms()) {
            if (term_filtration(R, m, c) <= 0) {
                res.kind = CertResult::Nonzero;
                res.detail = "(p,v)-filtration obstruction at " + a.text();
                return res;
            }
        }
    }

    if (!a.is_homogeneous()) {
        // split into graded pieces and certify each
        std::map<long, GradedElement> parts;
        for (const auto& [m, c] : a.terms()) {
            auto [it, fresh] = parts.try_emplace(R->degree_of(m), GradedElement::zero(R));
            it->second.add_term(m, c);
        }
        for (auto& [d, part] : parts) {
            part.finish();
            CertResult sub = relation_member(part, opts);
            if (sub.kind != CertResult::Zero) return sub;
            for (size_t j = 0; j < rels.size(); ++j)
                res.multipliers[j] += sub.multipliers[j];
        }
        res.kind = CertResult::Zero;
        return res;
    }

    long deg = *a.degree();
    std::vector<std::pair<size_t, Monomial>> columns; // (relation index, multiplier monomial)
    std::vector<GradedElement> products;
    for (size_t j = 0; j < rels.size(); ++j) {
        auto rd = rels[j]->element->degree();
        if (!rd) continue;
        std::vector<Monomial> cands;
        enumerate_monomials(R, deg - *rd, opts, cands);
        if (cands.size() > opts.max_candidates) {
            res.kind = CertResult::Unknown;
            res.detail = "candidate cap exceeded";
            return res;
        }
        for (auto& m : cands) {
            GradedElement mult(R);
            mult.add_term(m, 1);
            mult.finish();
            GradedElement prod = mult * (*rels[j]->element);
            if (prod.is_zero()) continue;
            columns.emplace_back(j, m);
            products.push_back(std::move(prod));
        }
    }
    if (columns.empty()) {
        res.kind = CertResult::Unknown;
        res.detail = "no candidate multipliers in degree";
        return res;
    }

    std::map<Monomial, size_t> row_of;
    auto row_index = [&](const Monomial& m) {
        auto [it, fresh] = row_of.try_emplace(m, row_of.size());
        return it->second;
    };
    for (const auto& prod : products)
        for (const auto& [m, c] : prod.terms()) row_index(m);
    for (const auto& [m, c] : a.terms()) row_index(m);

    std::vector<std::vector<Rat>> A(row_of.size(), std::vector<Rat>(columns.size(), Rat(0)));
    std::vector<Rat> b(row_of.size(), Rat(0));
    for (size_t col = 0; col < products.size(); ++col)
        for (const auto& [m, c] : products[col].terms()) A[row_of[m]][col] = c;
    for (const auto& [m, c] : a.terms()) b[row_of[m]] = c;

    auto x = solve(std::move(A), std::move(b));
    if (!x) {
        res.kind = CertResult::Unknown;
        res.detail = "no certificate within caps";
        return res;
    }
    for (size_t col = 0; col < columns.size(); ++col) {
        if ((*x)[col] == 0) continue;
        res.multipliers[columns[col].first].add_term(columns[col].second, (*x)[col]);
    }
    for (auto& m : res.multipliers) m.finish();
    for (const auto& m : res.multipliers) {
        if (!m.coefficients_p_local()) {
            res.kind = CertResult::Unknown;
            res.detail = "solver produced non-p-local multipliers";
            res.multipliers.assign(rels.size(), GradedElement::zero(R));
            return res;
        }
    }
    if (opts.verify) {
        GradedElement recon = GradedElement::zero(R);
        for (size_t j = 0; j < rels.size(); ++j)
            recon += res.multipliers[j] * (*rels[j]->element);
        if (recon != a) {
            res.kind = CertResult::Unknown;
            res.detail = "certificate verification failed";
            res.multipliers.assign(rels.size(), GradedElement::zero(R));
            return res;
        }
    }
    res.kind = CertResult::Zero;
    return res;
}

} // namespace eqc
