#include "eqc/ring.hpp"

#include <algorithm>
#include <sstream>

namespace eqc {

bool RingSpec::has_series_vars() const {
    for (const auto& g : gens)
        if (g.kind == GenKind::SeriesVar) return true;
    return false;
}

bool RingSpec::has_inverted_series_var() const {
    for (const auto& g : gens)
        if (g.kind == GenKind::SeriesVar && g.inverted) return true;
    return false;
}

long RingSpec::degree_of(const Monomial& m) const {
    long d = 0;
    for (size_t i = 0; i < gens.size(); ++i)
        d += gens[i].degree * m.exps[i];
    return d;
}

long RingSpec::group_weight(const Monomial& m, int group) const {
    long w = 0;
    for (size_t i = 0; i < gens.size(); ++i)
        if (gens[i].kind == GenKind::SeriesVar && gens[i].trunc_group == group)
            w += m.exps[i];
    return w;
}

bool RingSpec::truncated_away(const Monomial& m) const {
    for (size_t g = 0; g < group_caps.size(); ++g)
        if (group_weight(m, static_cast<int>(g)) >= group_caps[g]) return true;
    return false;
}

Ring make_ring(long p, std::vector<Generator> gens, std::vector<long> group_caps) {
    if (!is_prime_small(p)) throw err::bad_ring("p must be prime");
    auto r = std::make_shared<RingSpec>();
    r->p = p;
    r->gens = std::move(gens);
    r->group_caps = std::move(group_caps);
    int max_group = -1;
    for (size_t i = 0; i < r->gens.size(); ++i) {
        const auto& g = r->gens[i];
        if (g.name.empty()) throw err::bad_ring("generator with empty name");
        if (!r->index.emplace(g.name, static_cast<int>(i)).second)
            throw err::bad_ring("duplicate generator name '" + g.name + "'");
        if (g.kind == GenKind::SeriesVar) max_group = std::max(max_group, g.trunc_group);
    }
    if (max_group >= 0 && static_cast<size_t>(max_group) >= r->group_caps.size())
        throw err::bad_ring("missing truncation cap for a series-variable group");
    return r;
}

void add_relation(const Ring& ring, const GradedElement& rel, RelationTag tag,
                  const std::string& name) {
    if (rel.ring() != ring) throw err::bad_ring("relation element from another ring");
    if (rel.is_zero()) throw err::bad_ring("zero relation");
    Relation r;
    r.element = std::make_shared<GradedElement>(rel);
    r.tag = tag;
    r.name = name;
    if (tag == RelationTag::Rewrite) {
        // leading = max total exponent, lex tie-break
        auto total = [](const Monomial& m) {
            long t = 0;
            for (int e : m.exps) t += e;
            return t;
        };
        const Monomial* lead = nullptr;
        long best = 0;
        for (const auto& [m, c] : rel.terms()) {
            for (int e : m.exps)
                if (e < 0) throw err::bad_ring("rewrite relation with negative exponent");
            long t = total(m);
            if (!lead || t > best || (t == best && lead->exps < m.exps)) {
                lead = &m;
                best = t;
            }
        }
        for (const auto& [m, c] : rel.terms()) {
            if (&m != lead && total(m) >= best)
                throw err::bad_ring("rewrite relation without a dominant leading term");
        }
        const Rat& lc = rel.terms().at(*lead);
        if (!is_p_local(lc, ring->p) || val_p(lc, ring->p) != 0)
            throw err::bad_ring("rewrite leading coefficient is not a p-unit");
        r.leading = *lead;
        r.leading_coeff = lc;
    }
    ring->relations.push_back(std::move(r));
}

// ---- GradedElement ------------------------------------------------------

GradedElement GradedElement::scalar(const Ring& r, const Rat& c) {
    GradedElement e(r);
    Rat cc = canon(c);
    if (cc != 0) {
        Monomial m;
        m.exps.assign(r->gens.size(), 0);
        e.terms_.emplace(std::move(m), std::move(cc));
    }
    return e;
}

GradedElement GradedElement::gen(const Ring& r, const std::string& name, int exp) {
    return term(r, 1, {{name, exp}});
}

GradedElement GradedElement::term(const Ring& r, const Rat& c,
                                  const std::vector<std::pair<std::string, int>>& exps) {
    GradedElement e(r);
    if (c == 0) return e;
    Monomial m;
    m.exps.assign(r->gens.size(), 0);
    for (const auto& [name, k] : exps) {
        int i = r->require(name);
        m.exps[i] += k;
    }
    for (size_t i = 0; i < m.exps.size(); ++i)
        if (m.exps[i] < 0 && !r->gens[i].inverted)
            throw err::negative_power_of_nonunit("negative exponent on '" + r->gens[i].name + "'");
    e.terms_.emplace(std::move(m), canon(c));
    e.finish();
    return e;
}

void GradedElement::add_term(const Monomial& m, const Rat& c) {
    Rat cc = canon(c);
    if (cc == 0) return;
    auto [it, fresh] = terms_.emplace(m, cc);
    if (!fresh) {
        it->second += cc;
        if (it->second == 0) terms_.erase(it);
    }
}

void GradedElement::finish() {
    // truncate, then rewrite to a fixpoint (rewriting can only lower exponents)
    for (;;) {
        bool changed = false;
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (ring_->truncated_away(it->first))
                it = terms_.erase(it), changed = true;
            else
                ++it;
        }
        const Relation* hit = nullptr;
        const Monomial* victim = nullptr;
        for (const auto& rel : ring_->relations) {
            if (rel.tag != RelationTag::Rewrite) continue;
            for (const auto& [m, c] : terms_) {
                bool divisible = true;
                for (size_t i = 0; i < m.exps.size(); ++i)
                    if (rel.leading.exps[i] > 0 && m.exps[i] < rel.leading.exps[i]) {
                        divisible = false;
                        break;
                    }
                if (divisible) {
                    hit = &rel;
                    victim = &m;
                    break;
                }
            }
            if (hit) break;
        }
        if (!hit) {
            if (!changed) break;
            continue;
        }
        // victim = leading * q; replace with -(rest/lc) * q
        Monomial vic = *victim;
        Monomial q = vic;
        for (size_t i = 0; i < q.exps.size(); ++i) q.exps[i] -= hit->leading.exps[i];
        Rat cv = terms_.at(vic);
        terms_.erase(vic);
        for (const auto& [m, c] : hit->element->terms()) {
            if (m == hit->leading) continue;
            Monomial prod = m;
            for (size_t i = 0; i < prod.exps.size(); ++i) prod.exps[i] += q.exps[i];
            if (ring_->truncated_away(prod)) continue;
            add_term(prod, -(c / hit->leading_coeff) * cv);
        }
    }
}

GradedElement GradedElement::operator+(const GradedElement& o) const {
    if (ring_ != o.ring_) throw err::bad_ring("mixed-ring arithmetic");
    GradedElement r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    r.finish();
    return r;
}

GradedElement GradedElement::operator-(const GradedElement& o) const { return *this + (-o); }

GradedElement GradedElement::operator-() const {
    GradedElement r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

GradedElement GradedElement::operator*(const GradedElement& o) const {
    if (ring_ != o.ring_) throw err::bad_ring("mixed-ring arithmetic");
    GradedElement r(ring_);
    Monomial prod;
    prod.exps.resize(ring_->gens.size());
    for (const auto& [m1, c1] : terms_) {
        for (const auto& [m2, c2] : o.terms_) {
            for (size_t i = 0; i < prod.exps.size(); ++i) prod.exps[i] = m1.exps[i] + m2.exps[i];
            if (ring_->truncated_away(prod)) continue;
            r.add_term(prod, c1 * c2);
        }
    }
    r.finish();
    return r;
}

bool GradedElement::operator==(const GradedElement& o) const {
    return ring_ == o.ring_ && terms_ == o.terms_;
}

GradedElement GradedElement::scaled(const Rat& c) const {
    GradedElement r(ring_);
    Rat cc = canon(c);
    if (cc == 0) return r;
    r.terms_ = terms_;
    for (auto& [m, x] : r.terms_) x *= cc;
    return r;
}

GradedElement GradedElement::pow(long exp) const {
    if (exp == 0) return one(ring_);
    if (exp < 0) {
        if (terms_.size() != 1)
            throw err::negative_power_of_nonunit("negative power of a non-monomial");
        try {
            return invert(*this).pow(-exp);
        } catch (const Error&) {
            throw err::negative_power_of_nonunit("negative power of a non-unit");
        }
    }
    GradedElement base = *this, acc = one(ring_);
    long e = exp;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

std::optional<long> GradedElement::degree() const {
    if (terms_.empty()) return std::nullopt;
    long d = ring_->degree_of(terms_.begin()->first);
    for (const auto& [m, c] : terms_)
        if (ring_->degree_of(m) != d)
            throw err::degree_mismatch("element is not homogeneous");
    return d;
}

bool GradedElement::is_homogeneous() const {
    if (terms_.empty()) return true;
    long d = ring_->degree_of(terms_.begin()->first);
    for (const auto& [m, c] : terms_)
        if (ring_->degree_of(m) != d) return false;
    return true;
}

bool GradedElement::coefficients_p_local() const {
    for (const auto& [m, c] : terms_)
        if (!is_p_local(c, ring_->p)) return false;
    return true;
}

Rat GradedElement::coeff(const std::vector<std::pair<std::string, int>>& exps) const {
    Monomial m;
    m.exps.assign(ring_->gens.size(), 0);
    for (const auto& [name, k] : exps) m.exps[ring_->require(name)] += k;
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
}

GradedElement GradedElement::series_constant_term() const {
    GradedElement r(ring_);
    for (const auto& [m, c] : terms_) {
        bool keep = true;
        for (size_t i = 0; i < m.exps.size(); ++i)
            if (ring_->gens[i].kind == GenKind::SeriesVar && m.exps[i] != 0) {
                keep = false;
                break;
            }
        if (keep) r.terms_.emplace(m, c);
    }
    return r;
}

GradedElement GradedElement::kill_generator(const std::string& name) const {
    int i = ring_->require(name);
    GradedElement r(ring_);
    for (const auto& [m, c] : terms_) {
        if (m.exps[i] < 0)
            throw err::not_invertible("cannot send inverted '" + name + "' to 0");
        if (m.exps[i] == 0) r.terms_.emplace(m, c);
    }
    return r;
}

std::string GradedElement::text() const {
    if (terms_.empty()) return "0";
    // display order: compare exponent vectors from the last generator backwards,
    // so series variables (declared last) print in ascending order
    std::vector<const std::pair<const Monomial, Rat>*> ts;
    for (const auto& t : terms_) ts.push_back(&t);
    std::sort(ts.begin(), ts.end(), [](auto* a, auto* b) {
        const auto& x = a->first.exps;
        const auto& y = b->first.exps;
        for (size_t i = x.size(); i-- > 0;)
            if (x[i] != y[i]) return x[i] < y[i];
        return false;
    });
    std::ostringstream out;
    bool first = true;
    for (auto* t : ts) {
        Rat c = t->second;
        bool neg = c < 0;
        if (first) {
            if (neg) out << "-";
            first = false;
        } else {
            out << (neg ? " - " : " + ");
        }
        if (neg) c = -c;
        std::string mono;
        for (size_t i = 0; i < t->first.exps.size(); ++i) {
            int e = t->first.exps[i];
            if (e == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += ring_->gens[i].name;
            if (e != 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty()) {
            out << rat_to_string(c);
        } else {
            if (c != 1) out << rat_to_string(c) << "*";
            out << mono;
        }
    }
    return out.str();
}

GradedElement invert(const GradedElement& a) {
    const Ring& R = a.ring();
    if (a.is_zero()) throw err::not_invertible("zero is not invertible");
    if (a.size() == 1) {
        const auto& [m, c] = *a.terms().begin();
        for (size_t i = 0; i < m.exps.size(); ++i)
            if (m.exps[i] != 0 && !R->gens[i].inverted)
                throw err::not_invertible("monomial involves a non-inverted generator");
        if (val_p(c, R->p) != 0)
            throw err::not_invertible("coefficient is not a p-local unit");
        GradedElement r(R);
        Monomial inv = m;
        for (auto& e : inv.exps) e = -e;
        r.add_term(inv, Rat(1) / c);
        r.finish();
        return r;
    }
    // constant-term unit + topologically nilpotent rest
    GradedElement c0 = a.series_constant_term();
    if (c0.is_zero() || c0.size() != 1)
        throw err::not_invertible("constant term is not a unit monomial");
    GradedElement c0inv = invert(c0);
    GradedElement t = GradedElement::one(R) - a * c0inv; // positive series weight
    GradedElement acc = GradedElement::one(R), powt = GradedElement::one(R);
    for (int guard = 0; !powt.is_zero(); ++guard) {
        if (guard > 4096) throw err::not_invertible("Neumann series did not terminate");
        powt = powt * t;
        acc += powt;
    }
    return acc * c0inv;
}

void RingMap::set(const std::string& gen, GradedElement image) {
    src_->require(gen);
    if (image.ring() != dst_) throw err::bad_ring("image element from the wrong ring");
    images_.insert_or_assign(gen, std::move(image));
}

GradedElement RingMap::image_of(const std::string& gen) const {
    auto it = images_.find(gen);
    if (it != images_.end()) return it->second;
    return GradedElement::gen(dst_, gen); // throws MissingGenerator if absent
}

GradedElement RingMap::operator()(const GradedElement& a) const {
    if (a.ring() != src_) throw err::bad_ring("element from the wrong ring");
    GradedElement out = GradedElement::zero(dst_);
    std::map<std::pair<int, long>, GradedElement> power_cache;
    for (const auto& [m, c] : a.terms()) {
        GradedElement prod = GradedElement::scalar(dst_, c);
        for (size_t i = 0; i < m.exps.size(); ++i) {
            if (m.exps[i] == 0) continue;
            auto key = std::make_pair(static_cast<int>(i), static_cast<long>(m.exps[i]));
            auto it = power_cache.find(key);
            if (it == power_cache.end()) {
                GradedElement img = image_of(src_->gens[i].name);
                it = power_cache.emplace(key, img.pow(m.exps[i])).first;
            }
            prod = prod * it->second;
        }
        out += prod;
    }
    return out;
}

// ---- spec operations ----------------------------------------------------

GradedElement arith(const GradedElement& a, const GradedElement& b, ArithOp op) {
    switch (op) {
        case ArithOp::Add: return a + b;
        case ArithOp::Mul: return a * b;
        case ArithOp::Pow: {
            auto d = b.degree();
            if (b.size() != 1 || (d && *d != 0) || b.terms().begin()->second.get_den() != 1)
                throw err::precondition_violated("pow exponent must be an integer scalar");
            return a.pow(b.terms().begin()->second.get_num().get_si());
        }
    }
    throw err::precondition_violated("unknown op");
}

GradedElement arith_pow(const GradedElement& a, long exp) { return a.pow(exp); }

GradedElement reduce_mod_In(const GradedElement& a, int n) {
    if (n < 0) throw err::precondition_violated("reduce_mod_In with n < 0");
    if (n == 0) return a;
    const Ring& R = a.ring();
    std::vector<int> kill;
    for (int i = 1; i <= n - 1; ++i)
        kill.push_back(R->require("v" + std::to_string(i)));
    GradedElement r(R);
    for (const auto& [m, c] : a.terms()) {
        bool dead = false;
        for (int i : kill)
            if (m.exps[i] > 0) {
                dead = true;
                break;
            }
        if (dead) continue;
        long residue = mod_p(c, R->p);
        if (residue != 0) r.add_term(m, Rat(residue));
    }
    r.finish();
    return r;
}

bool is_unit(const GradedElement& a) {
    const Ring& R = a.ring();
    if (R->has_inverted_series_var())
        throw err::unsupported_ring_kind("no unit test in a Tate-style ring");
    if (a.is_zero()) return false;
    GradedElement c = R->has_series_vars() ? a.series_constant_term() : a;
    if (c.size() != 1) return false;
    const auto& [m, coef] = *c.terms().begin();
    for (size_t i = 0; i < m.exps.size(); ++i)
        if (m.exps[i] != 0 && !R->gens[i].inverted) return false;
    return is_p_local(coef, R->p) && val_p(coef, R->p) == 0;
}

} // namespace eqc
