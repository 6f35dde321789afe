#pragma once
#include <optional>
#include <string>

#include "eqc/series.hpp"

namespace eqc {

// Append generators to a ring under a fresh truncation cap, carrying relations over.
Ring extend_ring(const Ring& base, const std::vector<Generator>& extra, long cap);
// Move an element to another ring by matching generator names.
GradedElement transport(const GradedElement& a, const Ring& dst);
// Split by the exponent of one generator, stripping it from the monomials.
std::map<int, GradedElement> coefficients_by_var(const GradedElement& a, const std::string& var);

enum class PTypicalConvention { Araki, Hazewinkel };

struct FGLAxiomReport {
    bool unit_ok = false;
    bool comm_ok = false;
    bool assoc_ok = false;
    bool all() const { return unit_ok && comm_ok && assoc_ok; }
};

// One-dimensional formal group law F(x, y) truncated at total degree < order.
class FGL {
public:
    Ring base;   // coefficient ring
    Ring ring1;  // base + x
    Ring ring2;  // base + x, y
    GradedElement F;
    std::optional<PowerSeries1> log;    // over base, possibly non-p-local
    std::optional<PowerSeries1> exp;    // reverse of log
    int order = 0;                      // exclusive cap on formal-variable weight

    long p() const { return base->p; }
    GradedElement x() const { return GradedElement::gen(ring1, "x"); }
    // F(a, b) evaluated in a's ring (which must contain the base generators)
    GradedElement formal_sum(const GradedElement& a, const GradedElement& b) const;
    // [n](x) in ring1; negatives via the formal inverse
    GradedElement n_series(long n) const;
    // [n](t) for t in an arbitrary base-compatible ring
    GradedElement n_series_at(long n, const GradedElement& t) const;
    FGLAxiomReport verify_axioms() const;
    // coefficient of x^i y^j
    Rat a_coeff(int i, int j) const;
};

// F(x,y) = exp(log(x) + log(y)); log must be x + O(x^2) (BadLogLinearTerm).
FGL fgl_from_log(const Ring& base, const PowerSeries1& log, int order);

// Explicit F (in any ring holding the base generators plus x, y);
// verifies the FGL axioms on construction.
FGL fgl_from_F(const Ring& base, const GradedElement& F_expr, int order);

// Send every base generator to a scalar (F_p point); the result has an empty
// base ring, as height_over_field requires.
FGL specialize_to_prime_field(const FGL& f, const std::map<std::string, Rat>& values);

// Universal p-typical law over Z_(p)[v1..vV], Araki or Hazewinkel generators.
// Araki output is checked against [p](x) = sum^F v_i x^{p^i} (v_0 = p);
// both conventions are checked for p-local exp and F (ConventionSelfTestFailed).
FGL p_typical(long p, PTypicalConvention convention, int V, int order);

struct CongruenceReport {
    int n = 0;
    bool low_zero = false;        // coefficients below x^{p^{n-1}} vanish mod I_{n-1}
    bool lead_ok = false;         // x^{p^{n-1}} coefficient is v_{n-1} * unit
    bool next_ok = false;         // x^{p^n} coefficient is v_n * unit mod (v_{n-1})
    std::string lead_text, next_text;
    bool all() const { return low_zero && lead_ok && next_ok; }
};

// [p](x) = v_{n-1} x^{p^{n-1}} + v_n x^{p^n} + ... mod I_{n-1}; throws
// CongruenceFails when the pattern does not hold.
CongruenceReport two_series_congruence(const FGL& fgl, int n);

struct HeightResult {
    bool at_least = false;
    int n = 0;
    bool operator==(const HeightResult& o) const { return at_least == o.at_least && n == o.n; }
};

// Least n with [p](x) = unit * x^{p^n} + higher over F_p; AtLeast(bound) if the
// p-series vanishes up to x^{p^bound}.
HeightResult height_over_field(const FGL& fgl, int bound);

constexpr long long HV_INF = (1LL << 60);
constexpr long long HV_NEG = -1;

struct VnCheck {
    bool ok = false;
    GradedElement unit;  // witnessing unit (n >= 0 case), reduced mod I_n
};

// x is a v_n-generator: n = -1 means x = 0; n = inf means x is a unit;
// 0 <= n < inf means x = unit * v_n mod I_n (v_0 = p).
VnCheck vn_generator_check(const GradedElement& x, long long n);

} // namespace eqc
