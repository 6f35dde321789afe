#pragma once
#include <functional>
#include <string>
#include <vector>

#include "eqc/ring.hpp"

namespace eqc {

// Truncated power series in one formal variable with GradedElement coefficients.
// `order` is exclusive: coefficients are exact for exponents < order.
class PowerSeries1 {
public:
    PowerSeries1() = default;
    PowerSeries1(Ring base, std::string var, int order)
        : base_(std::move(base)), var_(std::move(var)), order_(order),
          c_(static_cast<size_t>(order), GradedElement::zero(base_)) {}

    static PowerSeries1 identity(const Ring& base, const std::string& var, int order);

    const Ring& base() const { return base_; }
    const std::string& var() const { return var_; }
    int order() const { return order_; }

    const GradedElement& coeff(int i) const { return c_.at(static_cast<size_t>(i)); }
    void set_coeff(int i, GradedElement v);
    bool is_zero() const;
    PowerSeries1 truncated(int order) const;

    PowerSeries1 operator+(const PowerSeries1& o) const;
    PowerSeries1 operator-(const PowerSeries1& o) const;
    PowerSeries1 operator*(const PowerSeries1& o) const;
    bool operator==(const PowerSeries1& o) const;
    bool operator!=(const PowerSeries1& o) const { return !(*this == o); }

    // sum_i phi(c_i) * arg^i in arg's ring; phi transports base coefficients by name
    GradedElement eval(const GradedElement& arg) const;
    GradedElement eval(const GradedElement& arg,
                       const std::function<GradedElement(const GradedElement&)>& phi) const;

    std::string text() const;

private:
    Ring base_;
    std::string var_;
    int order_ = 0;
    std::vector<GradedElement> c_;
};

// f(g), requires g(0) = 0 (NonzeroConstantTerm); exact to min(order f, order g)
PowerSeries1 compose(const PowerSeries1& f, const PowerSeries1& g);

// compositional inverse: f = x*unit + O(x^2) (NonunitLinearTerm);
// f(reverse(f)) = x + O(x^order)
PowerSeries1 reverse(const PowerSeries1& f);

PowerSeries1 reduce_mod_In(const PowerSeries1& f, int n);

} // namespace eqc
