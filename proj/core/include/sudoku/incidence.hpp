#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "sudoku/puzzle.hpp"
#include "sudoku/rational.hpp"
#include "sudoku/shape.hpp"

namespace sudoku {

// Sparse inclusion matrix of E(G_{hw}) versus T(G_{hw}): 4 ones per
// column (tile), n ones per row (edge).  Stored as the per-tile edge
// quadruples; tiles in lexicographic (i,j,k) order.
struct IncidenceW {
    Shape shape;
    std::vector<TileEdges> columns;  // size n^3
};

IncidenceW build_W(const Shape& sh);

enum class MBuildMethod { product, kronecker_blocks };

// Dense M = W W^T (integer-valued, returned as double for Eigen use).
Eigen::MatrixXd build_M(const Shape& sh,
                        MBuildMethod method = MBuildMethod::kronecker_blocks);

// Matrix-free y = M x using the block formulas; never materializes M.
Eigen::VectorXd apply_M(const Shape& sh, const Eigen::VectorXd& x);

struct RestrictedSystem {
    PartialSudoku S;
    std::vector<int> edges;        // global indices of E(G_S), ascending
    std::vector<Tile> tiles;       // T(G_S)
    Eigen::MatrixXd MS;            // |E(G_S)| x |E(G_S)|, = W_S W_S^T
    std::vector<int> edge_pos;     // global index -> row of MS, or -1
};

RestrictedSystem build_restricted(const PartialSudoku& S);

struct RankResult {
    long long rank = 0;
    long long nullity = 0;
    bool certified_exact = false;  // true for exact modes
};

enum class RankMode { exact_rational, numeric };

// Rank of an integer-valued matrix.  exact_rational runs fraction-free
// Gaussian elimination over rationals; numeric thresholds singular
// values at tol * sigma_max (default tol 1e-9).
RankResult rank_and_nullity(const Eigen::MatrixXd& m, RankMode mode,
                            double tol = 1e-9);

// Rank of an integer matrix modulo a word-size prime; this is always a
// lower bound on the true rank.
long long rank_mod_p(const Eigen::MatrixXd& m);

// Closed forms from the paper.
inline long long rank_formula(const Shape& sh) {
    long long n = sh.n;
    return n * n * n - (n - 1) * (n - 1) * (n - 1) +
           (n - 1) * (sh.h - 1) * (sh.w - 1);
}
inline long long nullity_formula(const Shape& sh) {
    return 3LL * sh.n + (sh.h + sh.w) * (sh.n - 1LL);
}

// Coordinate-triplet export (row col value), 0-based indices.
std::string export_matrix_triplets(const Eigen::MatrixXd& m);

}  // namespace sudoku
