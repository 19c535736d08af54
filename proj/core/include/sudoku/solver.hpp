#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sudoku/puzzle.hpp"
#include "sudoku/spectral.hpp"

namespace sudoku {

enum class SolveStatus {
    completed,
    infeasible,            // an edge of G_S has zero available tiles
    contraction_failed,    // Neumann requested but bound >= 1
    negative_solution,     // a tile weight is below -weight_tol
    residual_failed,       // M_S x' = 1 or a marginal misses tolerance
    extension_failed,      // thin-box extension could not be built
};

std::string to_string(SolveStatus s);

struct SolveOptions {
    enum class Method { neumann, direct };
    enum class Arith { floating, rational };

    Method method = Method::direct;
    Arith arith = Arith::floating;
    double tol = 1e-8;         // residual / marginal tolerance (float mode)
    double weight_tol = 1e-10; // nonnegativity slack for tile weights
    int neumann_cap = 10000;
    bool use_K_double_prime = false;  // K'' (thin-box pipeline)
};

struct SolveDiagnostics {
    double delta_m_norm = 0;
    double k_prime_norm = 0;
    double ainv_norm = 0;
    double bound = 0;  // ainv_norm * delta_m_norm + k_prime_norm
    int neumann_terms = 0;
    double residual = 0;
    double min_tile_weight = 0;
    bool has_zero_edge = false;
    EdgeId zero_edge{RC, 0, 0};
};

struct SolveOutcome {
    SolveStatus status = SolveStatus::infeasible;
    std::vector<int> edges;            // global ids of E(G_S)
    std::vector<double> edge_weights;  // x' over those edges
    std::vector<Tile> tiles;           // T(G_S)
    std::vector<double> tile_weights;  // W_S^T x'
    FractionalAssignment assignment;   // filled cells at 1 plus tile weights
    SolveDiagnostics diag;
};

// DeltaM = M - Mtilde per the case split: rows outside E(G_S) are zero,
// on E(G_S) the entries are M - M_S against E(G_S) columns and M itself
// against deleted columns.
Eigen::MatrixXd build_delta_M(const PartialSudoku& S, const Eigen::MatrixXd& M);

// K' zeroes the columns of K indexed by E(G_S); K'' additionally zeroes
// the rows outside E(G_S).
Eigen::MatrixXd build_K_prime(const PartialSudoku& S, const Eigen::MatrixXd& K,
                              bool double_prime = false);

// Rigorous bound ||Ainv||_inf * ||DeltaM||_inf + ||K'||_inf, all three
// factors exact rationals (DeltaM row sums are 4u(e); K' row sums come
// from the exact projector coefficients).
Rat contraction_bound(const PartialSudoku& S, const ShapeWorkspace& ws,
                      bool double_prime = false);

SolveOutcome solve(const PartialSudoku& S, const ShapeWorkspace& ws,
                   const SolveOptions& opts = {});

// Re-verifies an outcome independently of the solve path: nonnegative
// tile weights and a valid fractional completion.
bool certify(const PartialSudoku& S, const SolveOutcome& out, double tol,
             std::vector<Violation>* violations = nullptr);

// --- solution record text format ---
// Header of "key: value" lines (status, shape, diagnostics), then a
// "records: N" line followed by N lines "i j k weight" with the weight
// printed to 12 significant digits.
std::string serialize_solution(const PartialSudoku& S, const SolveOutcome& out,
                               const SolveOptions& opts, const Rat& eta);

struct ParsedSolution {
    std::map<std::string, std::string> header;
    std::vector<std::tuple<int, int, int, double>> records;
};

ParsedSolution parse_solution(const std::string& text);

}  // namespace sudoku
