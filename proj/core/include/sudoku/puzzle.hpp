#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sudoku/shape.hpp"

namespace sudoku {

// A valid partial Sudoku: no symbol repeats in any row, column, or box.
class PartialSudoku {
public:
    explicit PartialSudoku(Shape sh) : shape_(sh) {}

    const Shape& shape() const { return shape_; }
    const std::map<std::pair<int, int>, int>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    std::optional<int> at(int i, int j) const {
        auto it = entries_.find({i, j});
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }

    // Insert an entry; throws on cell reuse or row/column/box conflict.
    void set(int i, int j, int k);

    // Non-throwing variant used by search code; returns false and leaves
    // the puzzle unchanged if the entry would conflict.
    bool try_set(int i, int j, int k);

    void unset(int i, int j) { entries_.erase({i, j}); }

private:
    Shape shape_;
    std::map<std::pair<int, int>, int> entries_;
};

// Indices of the 4|S| edges removed from G_{hw} by the filled cells.
std::vector<int> deleted_edges(const PartialSudoku& S);

// Characteristic vector over the 4n^2 global edge indices: true iff the
// edge survives in G_S.
std::vector<char> edge_mask(const PartialSudoku& S);

// Edges of G_S as explicit ids.
std::vector<EdgeId> graph_edges(const PartialSudoku& S);

// Tiles of T(G_S): all four edges present in G_S.
std::vector<Tile> tiles_available(const PartialSudoku& S);

// u(e): number of tiles through e that use at least one deleted edge.
// Indexed by global edge index; entries for deleted edges are 0.
std::vector<int> availability_counts(const PartialSudoku& S);

struct DensityReport {
    int max_row_fill = 0;
    int max_col_fill = 0;
    int max_box_fill = 0;
    int max_symbol_per_row_bundle = 0;
    int max_symbol_per_col_bundle = 0;
    int u_max = 0;
    double eps_effective = 0.0;    // smallest eps with the puzzle eps-dense
    double delta_effective = 0.0;  // u_max / n
};

DensityReport density_report(const PartialSudoku& S);

struct FractionalAssignment {
    Shape shape;
    // weight per (i,j,k); absent triples are 0
    std::map<std::tuple<int, int, int>, double> weights;
};

struct Violation {
    std::string kind;  // "filled", "row", "column", "symbol", "box", "range"
    int a = 0, b = 0;
    double value = 0.0;
};

// Checks (a) f = 1 on the filled triples of S, (b) all 4n^2 marginals are
// within tol of 1, (c) weights within [-tol, 1+tol].
bool verify_fractional_completion(const PartialSudoku& S,
                                  const FractionalAssignment& f, double tol,
                                  std::vector<Violation>* violations = nullptr);

// Text format: line 1 "h w", then n lines of n fields, "." or 1..n.
PartialSudoku parse_puzzle(const std::string& text);
std::string serialize_puzzle(const PartialSudoku& S);

}  // namespace sudoku
