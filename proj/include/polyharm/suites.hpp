// Verification suites: each one turns a family of identities into
// CheckResults against exact or independently computed expectations,
// aggregated into a VerificationReport.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyharm/quadrature.hpp"
#include "polyharm/report.hpp"

namespace polyharm::verify {

enum class Suite {
    Symbolic,
    Constants,
    Representation,
    Decay,
    MeanValue,
    Jensen,
    OdeReproduction,
    NonexistenceScan,
    All,
};

std::optional<Suite> parse_suite(const std::string& name);
const char* suite_name(Suite s);

struct SuiteConfig {
    int N = 2;
    double tol = 1e-6;          // check tolerance (relative for numeric checks)
    double rmax = 200.0;        // truncation radius for the potentials
    long precision = 128;       // working mantissa bits
    std::string constants_flag = "auto";  // auto | paper | corrected
    riesz::Execution exec = riesz::Execution::OpenMP;
};

// Runs the suite(s) deterministically. The Representation/Decay/MeanValue
// suites use the constant chain selected by constants_flag: "auto" picks the
// mode whose flux normalization is exactly 1.
VerificationReport run_suite(Suite suite, const SuiteConfig& cfg);

// Anchor ids that a full run (All at N = 2 and N = 3) must cover.
const std::vector<std::string>& required_anchors();

} // namespace polyharm::verify
