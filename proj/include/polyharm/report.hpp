// Check results and machine-readable reports (JSON / CSV / text).
// Serialization is deterministic: fixed key order, fixed float formatting,
// no timestamps. Two identical runs produce identical bytes.
#pragma once

#include <string>
#include <vector>

namespace polyharm::verify {

inline constexpr const char* kToolkitVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

enum class CheckStatus { Pass, Fail, Skipped };

const char* check_status_name(CheckStatus s);

struct CheckResult {
    std::string id;
    std::string paper_ref;  // stable anchor id of the verified statement
    CheckStatus status = CheckStatus::Skipped;
    std::string measured;   // numeric or exact rendering
    std::string expected;
    double tolerance = 0;
    std::string notes;
};

// Wire form of an exact constant: the value is
// (coeff_num/coeff_den) * pi^(half_pi_exp/2), plus a decimal rendering.
struct ExactRendering {
    std::string coeff_num;
    std::string coeff_den;
    long half_pi_exp = 0;
    std::string decimal;
    std::string compact;  // "(p/q) pi^(e/2)" one-liner for text output
};

struct VerificationReport {
    int N = 0;
    std::vector<std::string> suites_run;
    std::string constant_mode;      // chain actually used by the integral suites
    ExactRendering flux_paper;      // flux_check outcomes, both modes
    ExactRendering flux_corrected;
    std::vector<ExactRendering> constants_used;  // c_0..c_{N-1} of the mode in force
    std::string K_rendering;        // exact K_N
    bool has_gamma = false;
    double gamma_estimate = 0;
    bool has_alpha = false;
    double alpha_from_mass = 0;
    // config echo
    double tol = 0;
    double rmax = 0;
    long precision = 0;
    std::string constants_flag;
    std::string version = kToolkitVersion;
    std::vector<CheckResult> checks;
    std::vector<std::string> coverage;  // sorted unique anchors exercised

    bool all_passed() const;
};

std::string emit_json(const VerificationReport& r);
std::string emit_csv(const VerificationReport& r);
std::string emit_text(const VerificationReport& r);

// Inverse of emit_json (round-trip identity is tested).
VerificationReport parse_json(const std::string& text);

// %.12e rendering used for measured/expected fields.
std::string fmt_real(double v);

} // namespace polyharm::verify

namespace polyharm::exact {
struct ExactScalar;
}

namespace polyharm::verify {

// decimal_digits controls the rendering precision of the decimal field.
ExactRendering render_exact(const exact::ExactScalar& v, int decimal_digits = 30);

} // namespace polyharm::verify
