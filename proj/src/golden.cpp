#include "polyharm/golden.hpp"

#include <cstdio>
#include <json.hpp>
#include <memory>
#include <mutex>

#include "polyharm/ode.hpp"
#include "polyharm/radial_expr.hpp"

namespace polyharm::golden {

using nlohmann::ordered_json;

GoldenTable compute_golden_table() {
    GoldenTable table;
    for (int N = 2; N <= 6; ++N) {
        GoldenEntry e;
        e.N = N;
        Rational K = radial::curvature_constant(N);
        e.K = rat_str(K);
        radial::PowerScale a{K, Rational(-1, 4L * N)};
        e.a256 = a.value(256).str(60);
        e.a512 = a.value(512).str(120);
        Real a256 = a.value(256);
        for (const Rational& s : radial::initial_data_factors(N)) {
            e.init_factors.push_back(rat_str(s));
            e.init256.push_back((a256 * Real(s, 256)).str(60));
        }
        table.entries.push_back(std::move(e));
    }
    table.fates = compute_golden_fates();
    return table;
}

namespace {

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

FateGrid run_grid(const std::string& id, const ode::OdeSystem& sys,
                  const std::vector<std::vector<double>>& grid, double r_max, double window,
                  double tol_coarse, double tol_fine) {
    FateGrid out;
    out.id = id;
    out.N = sys.N;
    out.sign = sys.sign == ode::EquationSign::PlusNegativePower ? "plus" : "minus";
    out.r_max = r_max;
    out.tol_coarse = tol_coarse;
    out.tol_fine = tol_fine;
    auto coarse = ode::shoot_grid(sys, grid, r_max, tol_coarse, window);
    auto fine = ode::shoot_grid(sys, grid, r_max, tol_fine, window);
    for (size_t i = 0; i < grid.size(); ++i) {
        FatePoint p;
        p.init = grid[i];
        const bool agree = !coarse[i].failed && !fine[i].failed &&
                           coarse[i].fate.kind == fine[i].fate.kind;
        p.tolerances_agree = agree;
        // a fate is frozen only when both tolerances agree on the kind
        if (!agree) {
            p.kind = ode::fate_kind_name(ode::FateKind::Inconclusive);
            p.value = "-";
            p.sign_event_k = -1;
            p.signs_constant = coarse[i].fate.signs_constant && fine[i].fate.signs_constant;
        } else {
            const ode::Fate& f = fine[i].fate;
            p.kind = ode::fate_kind_name(f.kind);
            p.value = (f.kind == ode::FateKind::LinearGrowth ||
                       f.kind == ode::FateKind::HitsZero ||
                       f.kind == ode::FateKind::SignEvent ||
                       f.kind == ode::FateKind::Superlinear)
                          ? fmt6(f.value)
                          : "-";
            p.sign_event_k = f.component;
            p.signs_constant = f.signs_constant;
        }
        out.points.push_back(std::move(p));
    }
    return out;
}

} // namespace

std::vector<FateGrid> compute_golden_fates() {
    std::vector<FateGrid> grids;
    grids.push_back(run_grid("n2-minus-documented",
                             {2, ode::EquationSign::MinusNegativePower},
                             ode::documented_minus_grid(2), 50.0, 10.0, 1e-8, 1e-10));
    grids.push_back(run_grid("n2-plus-perturbation",
                             {2, ode::EquationSign::PlusNegativePower},
                             ode::documented_plus_perturbation_grid(2), 50.0, 10.0, 1e-8, 1e-10));
    return grids;
}

std::string to_json(const GoldenTable& table) {
    ordered_json j;
    j["schema_version"] = 1;
    j["entries"] = ordered_json::array();
    for (const auto& e : table.entries) {
        ordered_json je;
        je["N"] = e.N;
        je["K"] = e.K;
        je["a_256"] = e.a256;
        je["a_512"] = e.a512;
        je["init_factors"] = e.init_factors;
        je["init_256"] = e.init256;
        j["entries"].push_back(je);
    }
    j["fates"] = ordered_json::array();
    for (const auto& g : table.fates) {
        ordered_json jg;
        jg["id"] = g.id;
        jg["N"] = g.N;
        jg["sign"] = g.sign;
        jg["r_max"] = g.r_max;
        jg["tol_coarse"] = g.tol_coarse;
        jg["tol_fine"] = g.tol_fine;
        jg["points"] = ordered_json::array();
        for (const auto& p : g.points) {
            ordered_json jp;
            jp["init"] = p.init;
            jp["kind"] = p.kind;
            jp["value"] = p.value;
            jp["sign_event_k"] = p.sign_event_k;
            jp["signs_constant"] = p.signs_constant;
            jp["tolerances_agree"] = p.tolerances_agree;
            jg["points"].push_back(jp);
        }
        j["fates"].push_back(jg);
    }
    return j.dump(2) + "\n";
}

// Frozen copy, reproduced verbatim from `polyharm table` output at the two
// working tolerances/precisions. Regenerate and diff before updating.
namespace {

GoldenTable build_frozen() {
    GoldenTable t;
    t.entries.push_back(GoldenEntry{
        2,
        "15",
        "7.128343062413696263812715172823366953284234594421357072639748e-01",
        "7.128343062413696263812715172823366953284234594421357072639748392513974133942190674095344758991379081713854781064420432819e-01",
        {"1", "-3"},
        {"7.128343062413696263812715172823366953284234594421357072639748e-01",
         "-2.138502918724108879143814551847010085985270378326407121791925e+00"}});
    t.entries.push_back(GoldenEntry{
        3,
        "945",
        "5.649985708594787212512955133927683385718847983824753644507109e-01",
        "5.649985708594787212512955133927683385718847983824753644507108721961388033630712669220744200172105584523818003958469039784e-01",
        {"1", "-5", "-35"},
        {"5.649985708594787212512955133927683385718847983824753644507109e-01",
         "-2.824992854297393606256477566963841692859423991912376822253554e+00",
         "-1.977494998008175524379534296874689185001596794338663775577488e+01"}});
    t.entries.push_back(GoldenEntry{
        4,
        "135135",
        "4.778889730809794257352671680749868863720469781197565024453885e-01",
        "4.778889730809794257352671680749868863720469781197565024453884803262983804131591951995290582201477587651990658703563008423e-01",
        {"1", "-7", "-63", "-2079"},
        {"4.778889730809794257352671680749868863720469781197565024453885e-01",
         "-3.345222811566855980146870176524908204604328846838295517117719e+00",
         "-3.010700530410170382132183158872417384143895962154465965405947e+01",
         "-9.935311750353562261036204424278977367674856675109737685839627e+02"}});
    t.entries.push_back(GoldenEntry{
        5,
        "34459425",
        "4.198890979193979596144749408861114734267813432200341024390794e-01",
        "4.198890979193979596144749408861114734267813432200341024390794445055072046679483079887209466879993811121490051445364783268e-01",
        {"1", "-9", "-99", "-3861", "-289575"},
        {"4.198890979193979596144749408861114734267813432200341024390794e-01",
         "-3.779001881274581636530274467975003260841032088980306921951715e+00",
         "-4.156902069402039800183301914772503586925135297878337614146887e+01",
         "-1.621191807066795522071487746761276398900802766172551669517286e+03",
         "-1.215893855300096641553615810070957299175602074629413752137964e+05"}});
    t.entries.push_back(GoldenEntry{
        6,
        "13749310575",
        "3.780694872102487302357660895269769165752515867990402489995571e-01",
        "3.780694872102487302357660895269769165752515867990402489995571099436720474801752387278098309482985011656610017143517238659e-01",
        {"1", "-11", "-143", "-6435", "-546975", "-72747675"},
        {"3.780694872102487302357660895269769165752515867990402489995571e-01",
         "-4.158764359312736032593426984796746082327767454789442738995128e+00",
         "-5.406393667106556842371455080235769907026097691226275560693667e+01",
         "-2.432877150197950579067154786106096458161743961051824002312150e+03",
         "-2.067945577668257992207081568190181989437482366894050401965328e+05",
         "-2.750367618298783129635418485692942045951851547969087034613886e+07"}});
    {
        FateGrid g;
        g.id = "n2-minus-documented";
        g.N = 2;
        g.sign = "minus";
        g.r_max = 50.0;
        g.tol_coarse = 1e-08;
        g.tol_fine = 1e-10;
        auto grid = ode::documented_minus_grid(2);
        g.points.push_back(FatePoint{grid[0], "Superlinear", "1.24965", -1, true, true});
        g.points.push_back(FatePoint{grid[1], "Superlinear", "1.2483", -1, true, true});
        g.points.push_back(FatePoint{grid[2], "Superlinear", "1.24932", -1, true, true});
        g.points.push_back(FatePoint{grid[3], "Superlinear", "1.24863", -1, true, true});
        g.points.push_back(FatePoint{grid[4], "Superlinear", "1.24871", -1, true, true});
        g.points.push_back(FatePoint{grid[5], "Superlinear", "1.25002", -1, true, true});
        g.points.push_back(FatePoint{grid[6], "Superlinear", "1.25042", -1, true, true});
        g.points.push_back(FatePoint{grid[7], "Superlinear", "1.25132", -1, true, true});
        g.points.push_back(FatePoint{grid[8], "Superlinear", "1.25331", -1, true, true});
        g.points.push_back(FatePoint{grid[9], "Superlinear", "1.2615", -1, true, true});
        t.fates.push_back(std::move(g));
    }
    {
        FateGrid g;
        g.id = "n2-plus-perturbation";
        g.N = 2;
        g.sign = "plus";
        g.r_max = 50.0;
        g.tol_coarse = 1e-08;
        g.tol_fine = 1e-10;
        auto grid = ode::documented_plus_perturbation_grid(2);
        g.points.push_back(FatePoint{grid[0], "Inconclusive", "-", -1, false, true});
        g.points.push_back(FatePoint{grid[1], "Inconclusive", "-", -1, false, true});
        g.points.push_back(FatePoint{grid[2], "LinearGrowth", "0.713012", -1, true, true});
        g.points.push_back(FatePoint{grid[3], "Superlinear", "1.18305", -1, true, true});
        g.points.push_back(FatePoint{grid[4], "Superlinear", "1.21214", -1, true, true});
        t.fates.push_back(std::move(g));
    }
    return t;
}

} // namespace

const GoldenTable& golden_table() {
    static std::once_flag flag;
    static std::unique_ptr<GoldenTable> frozen;
    std::call_once(flag, [] { frozen = std::make_unique<GoldenTable>(build_frozen()); });
    return *frozen;
}

} // namespace polyharm::golden
