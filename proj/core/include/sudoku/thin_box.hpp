#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "sudoku/solver.hpp"

namespace sudoku {

// Barrier instance with no fractional completion: a = ceil((h+w)/3)
// entries are placed so the pigeonhole count in box 1 fails.
PartialSudoku barrier_construct(int h, int w);  // requires h >= w >= 2

// m x n partial latin rectangle (no repeats in rows or columns).
struct LatinRectangle {
    int m = 0, n = 0;
    std::map<std::pair<int, int>, int> fill;  // (row, col) 1-based -> symbol
};

// epsilon for which the rectangle is epsilon-dense: max over row fill/n,
// column fill/m, symbol use/m.
double rectangle_density(const LatinRectangle& P);

struct SymbolDemands {
    std::vector<std::set<int>> A;  // A[j-1] = symbols demanded in column j
};

// Hall-matching extension: returns a rectangle containing P in which
// column j contains all of A[j].  Candidate rows B_j are the least-filled
// max(ceil((eps+2*delta)*m), 2|A_j|) rows, ties broken by row index.
// Throws std::runtime_error if some matching cannot be completed.
LatinRectangle extend_rectangle(const LatinRectangle& P,
                                const SymbolDemands& demands, double eps,
                                double delta);

struct ThinResult {
    SolveOutcome outcome;
    PartialSudoku extended;  // S' (equals S when no extension was needed)
    std::string detail;      // failure note for extension_failed
};

// Thin-box pipeline: per row bundle, mirror the symbols each box misses
// from its column bundle (property (2)), then run the solver with K''.
ThinResult thin_complete(const PartialSudoku& S, const ShapeWorkspace& ws,
                         const SolveOptions& base_opts = {},
                         double eps = 0.4, double delta = 0.4);

}  // namespace sudoku
