#pragma once
#include <stdexcept>
#include <string>

namespace eqc {

// Domain error with a stable machine-readable code, surfaced as JSON by the CLI.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

namespace err {
inline Error group_too_large(const std::string& m) { return Error("GroupTooLarge", m); }
inline Error not_a_subgroup(const std::string& m) { return Error("NotASubgroup", m); }
inline Error not_downward_closed(const std::string& m) { return Error("NotDownwardClosed", m); }
inline Error too_large(const std::string& m) { return Error("TooLarge", m); }
inline Error s_not_in_finite_domain(const std::string& m) { return Error("SNotInFiniteDomain", m); }
inline Error precondition_violated(const std::string& m) { return Error("PreconditionViolated", m); }
inline Error not_admissible(const std::string& m) { return Error("NotAdmissible", m); }
inline Error negative_power_of_nonunit(const std::string& m) { return Error("NegativePowerOfNonUnit", m); }
inline Error nonzero_constant_term(const std::string& m) { return Error("NonzeroConstantTerm", m); }
inline Error nonunit_linear_term(const std::string& m) { return Error("NonunitLinearTerm", m); }
inline Error missing_generator(const std::string& m) { return Error("MissingGenerator", m); }
inline Error unsupported_ring_kind(const std::string& m) { return Error("UnsupportedRingKind", m); }
inline Error bad_log_linear_term(const std::string& m) { return Error("BadLogLinearTerm", m); }
inline Error convention_self_test_failed(const std::string& m) { return Error("ConventionSelfTestFailed", m); }
inline Error congruence_fails(const std::string& m) { return Error("CongruenceFails", m); }
inline Error not_over_prime_field(const std::string& m) { return Error("NotOverPrimeField", m); }
inline Error precision_too_low(const std::string& m) { return Error("PrecisionTooLow", m); }
inline Error certificate_not_found(const std::string& m) { return Error("CertificateNotFound", m); }
inline Error schema_violation(const std::string& m) { return Error("SchemaViolation", m); }
inline Error not_invertible(const std::string& m) { return Error("NotInvertible", m); }
inline Error degree_mismatch(const std::string& m) { return Error("DegreeMismatch", m); }
inline Error bad_ring(const std::string& m) { return Error("BadRing", m); }
} // namespace err

} // namespace eqc
