#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sudoku/solver.hpp"

namespace sudoku {

// Generalized box pattern: an n x n grid of labels 1..n, each used
// exactly n times.  Connectivity of the cells of a label is NOT required
// (it does not affect M'); disconnected_boxes flags them for warnings.
struct BoxMap {
    int n = 0;
    std::vector<std::vector<int>> label;  // [i-1][j-1], values 1..n

    int box_at(int i, int j) const { return label[i - 1][j - 1]; }
};

// Rectangular pattern for (h,w) — M'(boxmap) == M in this case.
BoxMap rectangular_boxmap(const Shape& sh);

// Throws std::invalid_argument unless the map is a valid n-to-1 labeling.
void validate_boxmap(const BoxMap& bm);

// Labels whose cells are not edge-connected.
std::vector<int> disconnected_boxes(const BoxMap& bm);

// Tiling file format: line 1 = "n", then n lines of n labels.
BoxMap parse_boxmap(const std::string& text);
std::string serialize_boxmap(const BoxMap& bm);

// Several tilings in one file, separated by blank lines.
std::vector<BoxMap> parse_boxmap_file(const std::string& text);

// M' over the same 4n^2 edge index space: RC/RS/CS sections as in M, BS
// section driven by the boxmap.
Eigen::MatrixXd build_M_prime(const BoxMap& bm);

// Smallest alpha such that, for every box, the symmetric difference
// between the rectangular box and the boxmap box is covered by alpha*h
// rows and alpha*w columns.  Exhaustive minimal cover; exact.
Rat alpha_of(const BoxMap& bm, const Shape& sh);

struct NullityRecord {
    long long nullity = 0;
    bool has_I = false;  // contains a straight 1xn or nx1 box
};

NullityRecord nullity_of(const BoxMap& bm);
std::vector<NullityRecord> nullity_study(const std::vector<BoxMap>& tilings);

// Section 5 pipeline against the boxmap: DeltaM is measured against the
// M'-based Mtilde while A^{-1} and K stay rectangular.  The restriction
// identity is not guaranteed here (K M' != 0 in general), so the residual
// check is what certifies the output.
SolveOutcome approx_solve(const PartialSudoku& S, const BoxMap& bm,
                          const ShapeWorkspace& ws,
                          const SolveOptions& opts = {});

}  // namespace sudoku
