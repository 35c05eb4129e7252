#include "polyharm/report.hpp"

#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "polyharm/exact_constants.hpp"

namespace polyharm::verify {

using nlohmann::ordered_json;

const char* check_status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Skipped: return "skipped";
    }
    return "?";
}

static CheckStatus status_from_name(const std::string& s) {
    if (s == "pass") return CheckStatus::Pass;
    if (s == "fail") return CheckStatus::Fail;
    if (s == "skipped") return CheckStatus::Skipped;
    throw std::invalid_argument("unknown check status: " + s);
}

std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

ExactRendering render_exact(const exact::ExactScalar& v, int decimal_digits) {
    ExactRendering r;
    r.coeff_num = rat_num(v.coeff).str();
    r.coeff_den = rat_den(v.coeff).str();
    r.half_pi_exp = v.half_pi_exp;
    r.decimal = v.decimal(decimal_digits);
    r.compact = v.str();
    return r;
}

namespace {

nlohmann::ordered_json exact_to_json(const ExactRendering& r) {
    nlohmann::ordered_json j;
    j["coeff_num"] = r.coeff_num;
    j["coeff_den"] = r.coeff_den;
    j["half_pi_exp"] = r.half_pi_exp;
    j["decimal"] = r.decimal;
    j["compact"] = r.compact;
    return j;
}

ExactRendering exact_from_json(const nlohmann::ordered_json& j) {
    ExactRendering r;
    r.coeff_num = j.at("coeff_num").get<std::string>();
    r.coeff_den = j.at("coeff_den").get<std::string>();
    r.half_pi_exp = j.at("half_pi_exp").get<long>();
    r.decimal = j.at("decimal").get<std::string>();
    r.compact = j.at("compact").get<std::string>();
    return r;
}

} // namespace

bool VerificationReport::all_passed() const {
    for (const auto& c : checks)
        if (c.status == CheckStatus::Fail) return false;
    return true;
}

std::string emit_json(const VerificationReport& r) {
    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["toolkit_version"] = r.version;
    j["n"] = r.N;
    j["suites_run"] = r.suites_run;
    j["constant_mode"] = r.constant_mode;
    j["flux_check"] = {{"paper", exact_to_json(r.flux_paper)},
                       {"corrected", exact_to_json(r.flux_corrected)}};
    j["constants_used"] = ordered_json::array();
    for (const auto& c : r.constants_used) j["constants_used"].push_back(exact_to_json(c));
    j["k_n"] = r.K_rendering;
    if (r.has_gamma) j["gamma_estimate"] = fmt_real(r.gamma_estimate);
    if (r.has_alpha) j["alpha_from_mass"] = fmt_real(r.alpha_from_mass);
    j["config"] = {{"tol", fmt_real(r.tol)},
                   {"rmax", fmt_real(r.rmax)},
                   {"precision", r.precision},
                   {"constants", r.constants_flag}};
    j["pass"] = r.all_passed();
    j["checks"] = ordered_json::array();
    for (const auto& c : r.checks) {
        ordered_json jc;
        jc["id"] = c.id;
        jc["paper_ref"] = c.paper_ref;
        jc["status"] = check_status_name(c.status);
        jc["measured"] = c.measured;
        jc["expected"] = c.expected;
        jc["tolerance"] = fmt_real(c.tolerance);
        jc["notes"] = c.notes;
        j["checks"].push_back(jc);
    }
    j["coverage"] = r.coverage;
    return j.dump(2) + "\n";
}

VerificationReport parse_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    VerificationReport r;
    r.version = j.at("toolkit_version").get<std::string>();
    r.N = j.at("n").get<int>();
    r.suites_run = j.at("suites_run").get<std::vector<std::string>>();
    r.constant_mode = j.at("constant_mode").get<std::string>();
    r.flux_paper = exact_from_json(j.at("flux_check").at("paper"));
    r.flux_corrected = exact_from_json(j.at("flux_check").at("corrected"));
    for (const auto& jc : j.at("constants_used"))
        r.constants_used.push_back(exact_from_json(jc));
    r.K_rendering = j.at("k_n").get<std::string>();
    if (j.contains("gamma_estimate")) {
        r.has_gamma = true;
        r.gamma_estimate = std::stod(j.at("gamma_estimate").get<std::string>());
    }
    if (j.contains("alpha_from_mass")) {
        r.has_alpha = true;
        r.alpha_from_mass = std::stod(j.at("alpha_from_mass").get<std::string>());
    }
    r.tol = std::stod(j.at("config").at("tol").get<std::string>());
    r.rmax = std::stod(j.at("config").at("rmax").get<std::string>());
    r.precision = j.at("config").at("precision").get<long>();
    r.constants_flag = j.at("config").at("constants").get<std::string>();
    for (const auto& jc : j.at("checks")) {
        CheckResult c;
        c.id = jc.at("id").get<std::string>();
        c.paper_ref = jc.at("paper_ref").get<std::string>();
        c.status = status_from_name(jc.at("status").get<std::string>());
        c.measured = jc.at("measured").get<std::string>();
        c.expected = jc.at("expected").get<std::string>();
        c.tolerance = std::stod(jc.at("tolerance").get<std::string>());
        c.notes = jc.at("notes").get<std::string>();
        r.checks.push_back(std::move(c));
    }
    r.coverage = j.at("coverage").get<std::vector<std::string>>();
    return r;
}

std::string emit_csv(const VerificationReport& r) {
    std::ostringstream os;
    os << "id,paper_ref,status,measured,expected,tolerance\n";
    for (const auto& c : r.checks) {
        os << c.id << ',' << c.paper_ref << ',' << check_status_name(c.status) << ','
           << c.measured << ',' << c.expected << ',' << fmt_real(c.tolerance) << '\n';
    }
    return os.str();
}

std::string emit_text(const VerificationReport& r) {
    std::ostringstream os;
    os << "verification report (toolkit " << r.version << ")\n";
    os << "N = " << r.N << ", constant mode = " << r.constant_mode << "\n";
    os << "flux check: paper = " << r.flux_paper.compact << ", corrected = "
       << r.flux_corrected.compact << "\n";
    if (!r.constants_used.empty()) {
        os << "constants in force:";
        for (const auto& c : r.constants_used) os << ' ' << c.compact;
        os << "\n";
    }
    if (!r.K_rendering.empty()) os << "K_N = " << r.K_rendering << "\n";
    if (r.has_gamma) os << "gamma estimate = " << fmt_real(r.gamma_estimate) << "\n";
    if (r.has_alpha) os << "alpha from mass = " << fmt_real(r.alpha_from_mass) << "\n";
    os << "suites:";
    for (const auto& s : r.suites_run) os << ' ' << s;
    os << "\n\n";
    int passed = 0, failed = 0, skipped = 0;
    for (const auto& c : r.checks) {
        os << "[" << check_status_name(c.status) << "] " << c.id;
        if (!c.measured.empty()) os << "  measured=" << c.measured;
        if (!c.expected.empty()) os << " expected=" << c.expected;
        if (c.tolerance > 0) os << " tol=" << fmt_real(c.tolerance);
        if (!c.notes.empty()) os << "  (" << c.notes << ")";
        os << "\n";
        switch (c.status) {
            case CheckStatus::Pass: ++passed; break;
            case CheckStatus::Fail: ++failed; break;
            case CheckStatus::Skipped: ++skipped; break;
        }
    }
    os << "\n" << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
    os << "overall: " << (r.all_passed() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

} // namespace polyharm::verify
