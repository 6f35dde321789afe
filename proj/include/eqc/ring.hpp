#pragma once
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eqc/rational.hpp"

namespace eqc {

enum class GenKind { Polynomial, SeriesVar };
enum class RelationTag { Rewrite, CertificateOnly };

struct Generator {
    std::string name;
    long degree = 0;
    GenKind kind = GenKind::Polynomial;
    bool inverted = false;
    int trunc_group = 0; // series variables sharing a group share a total-weight cap
};

class GradedElement;
struct RingSpec;
using Ring = std::shared_ptr<RingSpec>;

// Exponent vector aligned with RingSpec::gens. Kept dense; rings stay small.
struct Monomial {
    std::vector<int> exps;
    bool operator<(const Monomial& o) const { return exps < o.exps; }
    bool operator==(const Monomial& o) const { return exps == o.exps; }
};

struct Relation {
    // rel = 0 in the ring. Rewrite relations carry a leading monomial with unit
    // coefficient; certificate-only relations are never used to normalize.
    std::shared_ptr<GradedElement> element;
    RelationTag tag = RelationTag::CertificateOnly;
    Monomial leading;        // rewrite only
    Rat leading_coeff = 0;   // rewrite only
    std::string name;
};

struct RingSpec {
    long p = 2;
    std::vector<Generator> gens;
    std::vector<long> group_caps; // exclusive: monomials with group weight >= cap are dropped
    std::vector<Relation> relations;
    std::map<std::string, int> index; // generator name -> position

    int find(const std::string& name) const {
        auto it = index.find(name);
        return it == index.end() ? -1 : it->second;
    }
    int require(const std::string& name) const {
        int i = find(name);
        if (i < 0) throw err::missing_generator("ring has no generator '" + name + "'");
        return i;
    }
    bool has_series_vars() const;
    bool has_inverted_series_var() const;
    long degree_of(const Monomial& m) const;
    // total series weight of m within a truncation group (negative exponents count)
    long group_weight(const Monomial& m, int group) const;
    bool truncated_away(const Monomial& m) const;
};

Ring make_ring(long p, std::vector<Generator> gens, std::vector<long> group_caps);
// Register a relation; for Rewrite the leading term (max total exponent, lex
// tie-break) must have a p-unit coefficient and strictly dominate the rest.
void add_relation(const Ring& ring, const GradedElement& rel, RelationTag tag,
                  const std::string& name = "");

class GradedElement {
public:
    GradedElement() = default;
    explicit GradedElement(Ring r) : ring_(std::move(r)) {}

    static GradedElement zero(const Ring& r) { return GradedElement(r); }
    static GradedElement scalar(const Ring& r, const Rat& c);
    static GradedElement one(const Ring& r) { return scalar(r, 1); }
    static GradedElement gen(const Ring& r, const std::string& name, int exp = 1);
    static GradedElement term(const Ring& r, const Rat& c,
                              const std::vector<std::pair<std::string, int>>& exps);

    const Ring& ring() const { return ring_; }
    const std::map<Monomial, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    GradedElement operator+(const GradedElement& o) const;
    GradedElement operator-(const GradedElement& o) const;
    GradedElement operator*(const GradedElement& o) const;
    GradedElement operator-() const;
    GradedElement& operator+=(const GradedElement& o) { return *this = *this + o; }
    GradedElement& operator-=(const GradedElement& o) { return *this = *this - o; }
    GradedElement& operator*=(const GradedElement& o) { return *this = *this * o; }
    bool operator==(const GradedElement& o) const;
    bool operator!=(const GradedElement& o) const { return !(*this == o); }

    GradedElement scaled(const Rat& c) const;
    // exp >= 0 always allowed; exp < 0 only for unit monomials
    GradedElement pow(long exp) const;

    // nullopt for 0; throws DegreeMismatch if inhomogeneous
    std::optional<long> degree() const;
    bool is_homogeneous() const;
    bool coefficients_p_local() const;

    // coefficient of a monomial given by generator exponents (absent gens = 0)
    Rat coeff(const std::vector<std::pair<std::string, int>>& exps) const;
    Rat constant_coeff() const { return coeff({}); }
    // keep only monomials with exponent 0 at every series variable
    GradedElement series_constant_term() const;
    // substitute gen -> 0 (drop monomials with positive exponent; negative throws)
    GradedElement kill_generator(const std::string& name) const;

    std::string text() const;

    // raw access used by module code; keeps normal form if touched carefully
    void add_term(const Monomial& m, const Rat& c);
    void finish(); // rewrite + truncate + drop zeros

private:
    friend void add_relation(const Ring&, const GradedElement&, RelationTag, const std::string&);
    Ring ring_;
    std::map<Monomial, Rat> terms_;
};

// Sum c * prod gens^exps without intermediate normalization; finish() at the end.
GradedElement invert(const GradedElement& a); // unit monomial or const-term unit; NotInvertible otherwise

// Ring map determined by generator images (by name); generators absent from the
// map are sent to their namesake in the target (MissingGenerator if none).
class RingMap {
public:
    RingMap(Ring src, Ring dst) : src_(std::move(src)), dst_(std::move(dst)) {}
    void set(const std::string& gen, GradedElement image);
    GradedElement operator()(const GradedElement& a) const;
    const Ring& src() const { return src_; }
    const Ring& dst() const { return dst_; }
    GradedElement image_of(const std::string& gen) const;

private:
    Ring src_, dst_;
    std::map<std::string, GradedElement> images_;
};

// ---- spec surface -------------------------------------------------------

enum class ArithOp { Add, Mul, Pow };
GradedElement arith(const GradedElement& a, const GradedElement& b, ArithOp op);
GradedElement arith_pow(const GradedElement& a, long exp);

// v_i -> 0 for 1 <= i <= n-1, coefficients reduced mod p (n >= 1); n = 0 is the identity.
GradedElement reduce_mod_In(const GradedElement& a, int n);

bool is_unit(const GradedElement& a);

struct CertResult {
    enum Kind { Zero, Nonzero, Unknown } kind = Unknown;
    // one multiplier per ring relation, same order: a = sum multipliers[i] * rel_i
    std::vector<GradedElement> multipliers;
    std::string detail;
};

struct CertOptions {
    long max_exp = 16;           // cap on each candidate exponent
    long inverted_low = -16;     // lower cap for inverted generators
    size_t max_candidates = 20000;
    bool verify = true;          // re-multiply certificates before reporting Zero
};

CertResult relation_member(const GradedElement& a, CertOptions opts = {});

} // namespace eqc
