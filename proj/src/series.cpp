#include "eqc/series.hpp"

#include <sstream>

namespace eqc {

PowerSeries1 PowerSeries1::identity(const Ring& base, const std::string& var, int order) {
    PowerSeries1 s(base, var, order);
    if (order > 1) s.c_[1] = GradedElement::one(base);
    return s;
}

void PowerSeries1::set_coeff(int i, GradedElement v) {
    if (v.ring() != base_) throw err::bad_ring("coefficient from the wrong ring");
    c_.at(static_cast<size_t>(i)) = std::move(v);
}

bool PowerSeries1::is_zero() const {
    for (const auto& x : c_)
        if (!x.is_zero()) return false;
    return true;
}

PowerSeries1 PowerSeries1::truncated(int order) const {
    PowerSeries1 s(base_, var_, order);
    for (int i = 0; i < std::min(order, order_); ++i) s.c_[i] = c_[i];
    return s;
}

PowerSeries1 PowerSeries1::operator+(const PowerSeries1& o) const {
    int ord = std::min(order_, o.order_);
    PowerSeries1 s(base_, var_, ord);
    for (int i = 0; i < ord; ++i) s.c_[i] = c_[i] + o.c_[i];
    return s;
}

PowerSeries1 PowerSeries1::operator-(const PowerSeries1& o) const {
    int ord = std::min(order_, o.order_);
    PowerSeries1 s(base_, var_, ord);
    for (int i = 0; i < ord; ++i) s.c_[i] = c_[i] - o.c_[i];
    return s;
}

PowerSeries1 PowerSeries1::operator*(const PowerSeries1& o) const {
    int ord = std::min(order_, o.order_);
    PowerSeries1 s(base_, var_, ord);
    for (int i = 0; i < ord; ++i) {
        if (c_[i].is_zero()) continue;
        for (int j = 0; i + j < ord; ++j) {
            if (o.c_[j].is_zero()) continue;
            s.c_[i + j] += c_[i] * o.c_[j];
        }
    }
    return s;
}

bool PowerSeries1::operator==(const PowerSeries1& o) const {
    int ord = std::min(order_, o.order_);
    for (int i = 0; i < ord; ++i)
        if (c_[i] != o.c_[i]) return false;
    return true;
}

GradedElement PowerSeries1::eval(const GradedElement& arg) const {
    return eval(arg, [&](const GradedElement& c) {
        GradedElement out = GradedElement::zero(arg.ring());
        for (const auto& [m, coef] : c.terms()) {
            std::vector<std::pair<std::string, int>> exps;
            for (size_t i = 0; i < m.exps.size(); ++i)
                if (m.exps[i] != 0) exps.emplace_back(base_->gens[i].name, m.exps[i]);
            out += GradedElement::term(arg.ring(), coef, exps);
        }
        return out;
    });
}

GradedElement PowerSeries1::eval(
    const GradedElement& arg,
    const std::function<GradedElement(const GradedElement&)>& phi) const {
    const Ring& R = arg.ring();
    GradedElement acc = GradedElement::zero(R);
    GradedElement power = GradedElement::one(R);
    for (int i = 0; i < order_; ++i) {
        if (i > 0) {
            power = power * arg;
            if (power.is_zero()) break;
        }
        if (!c_[i].is_zero()) acc += phi(c_[i]) * power;
    }
    return acc;
}

std::string PowerSeries1::text() const {
    std::ostringstream out;
    bool first = true;
    for (int i = 0; i < order_; ++i) {
        if (c_[i].is_zero()) continue;
        std::string cs = c_[i].text();
        bool bare_negative = cs.size() > 1 && cs[0] == '-' && cs.find(' ') == std::string::npos;
        if (first) {
            first = false;
        } else if (bare_negative) {
            out << " - ";
            cs = cs.substr(1);
        } else {
            out << " + ";
        }
        bool needs_parens = cs.find(' ') != std::string::npos;
        if (i == 0) {
            out << cs;
        } else {
            if (cs == "1") {
            } else if (needs_parens) {
                out << "(" << cs << ")*";
            } else {
                out << cs << "*";
            }
            out << var_;
            if (i > 1) out << "^" << i;
        }
    }
    if (first) out << "0";
    out << " + O(" << var_ << "^" << order_ << ")";
    return out.str();
}

PowerSeries1 compose(const PowerSeries1& f, const PowerSeries1& g) {
    if (!g.coeff(0).is_zero())
        throw err::nonzero_constant_term("compose requires g(0) = 0");
    int ord = std::min(f.order(), g.order());
    PowerSeries1 acc(f.base(), g.var(), ord);
    for (int i = ord - 1; i >= 0; --i) {
        acc = acc * g;
        GradedElement c0 = acc.coeff(0) + f.coeff(i);
        acc.set_coeff(0, c0);
    }
    return acc;
}

PowerSeries1 reverse(const PowerSeries1& f) {
    if (f.order() < 2) throw err::precision_too_low("reverse needs order >= 2");
    if (!f.coeff(0).is_zero())
        throw err::nonunit_linear_term("reverse requires f(0) = 0");
    const GradedElement& c1 = f.coeff(1);
    if (c1.size() != 1)
        throw err::nonunit_linear_term("linear term is not a unit monomial");
    const auto& [m1, l1] = *c1.terms().begin();
    for (size_t i = 0; i < m1.exps.size(); ++i)
        if (m1.exps[i] != 0 && !f.base()->gens[i].inverted)
            throw err::nonunit_linear_term("linear term is not invertible");
    GradedElement c1inv(f.base());
    {
        Monomial inv = m1;
        for (auto& e : inv.exps) e = -e;
        c1inv.add_term(inv, Rat(1) / l1);
        c1inv.finish();
    }
    int ord = f.order();
    PowerSeries1 g(f.base(), f.var(), ord);
    g.set_coeff(1, c1inv);
    for (int n = 2; n < ord; ++n) {
        PowerSeries1 h = compose(f.truncated(n + 1), g.truncated(n + 1));
        // h = x + eps*x^n + O(x^{n+1}); fix g_n so the x^n term cancels
        g.set_coeff(n, -(c1inv * h.coeff(n)));
    }
    return g;
}

PowerSeries1 reduce_mod_In(const PowerSeries1& f, int n) {
    PowerSeries1 s(f.base(), f.var(), f.order());
    for (int i = 0; i < f.order(); ++i) s.set_coeff(i, reduce_mod_In(f.coeff(i), n));
    return s;
}

} // namespace eqc
