// Frozen reference values: exact K_N, dual-precision decimal renderings of
// the normalization constant a_N = K_N^(-1/(4N)), the exact initial-data
// factors, and regression-locked shooting fates. The table is recomputable
// (the CLI `table` subcommand prints it) and the frozen copy guards against
// regressions in the engines that produced it.
#pragma once

#include <string>
#include <vector>

namespace polyharm::golden {

struct GoldenEntry {
    int N;
    std::string K;                          // exact rational
    std::string a256;                       // a_N at 256 bits, 60 digits
    std::string a512;                       // a_N at 512 bits, 120 digits
    std::vector<std::string> init_factors;  // exact rationals S_k, v_k(0) = a S_k
    std::vector<std::string> init256;       // decimal v_k(0) at 256 bits
};

struct FatePoint {
    std::vector<double> init;  // (v_0(0), v_0'(0), ..., v_{N-1}(0), v_{N-1}'(0))
    std::string kind;          // fate kind name, agreed across both tolerances
    std::string value;         // "%.6g" rendering of alpha or r*, "-" if none
    int sign_event_k;          // component for SignEvent fates, -1 otherwise
    bool signs_constant;       // no v_k sign change anywhere on the trajectory
    bool tolerances_agree;     // both tolerances produced the same fate kind
};

struct FateGrid {
    std::string id;          // e.g. "n2-minus-documented"
    int N;
    std::string sign;        // "plus" | "minus"
    double r_max;
    double tol_coarse, tol_fine;
    std::vector<FatePoint> points;
};

struct GoldenTable {
    std::vector<GoldenEntry> entries;  // N = 2..6
    std::vector<FateGrid> fates;
};

// The frozen table shipped with the toolkit.
const GoldenTable& golden_table();

// Recompute the symbolic part (K, a, initial data) from the engine.
GoldenTable compute_golden_table();

// Recompute the shooting-fate grids (two tolerances; a point whose fate kind
// differs between them is recorded as Inconclusive).
std::vector<FateGrid> compute_golden_fates();

// Deterministic JSON rendering of a table (used by `table` and the tests).
std::string to_json(const GoldenTable& table);

} // namespace polyharm::golden
