#include "sudoku/puzzle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace sudoku {

namespace {

std::optional<std::string> conflict_reason(const PartialSudoku& S, int i, int j,
                                           int k) {
    const Shape& sh = S.shape();
    if (i < 1 || i > sh.n || j < 1 || j > sh.n)
        return "cell index out of range";
    if (k < 1 || k > sh.n) return "symbol out of range";
    if (S.at(i, j)) return "cell already filled";
    int box = box_of(sh, i, j);
    for (const auto& [cell, sym] : S.entries()) {
        if (sym != k) continue;
        if (cell.first == i) return "row conflict";
        if (cell.second == j) return "column conflict";
        if (box_of(sh, cell.first, cell.second) == box) return "box conflict";
    }
    return std::nullopt;
}

}  // namespace

void PartialSudoku::set(int i, int j, int k) {
    if (auto why = conflict_reason(*this, i, j, k)) {
        std::ostringstream os;
        os << "invalid entry (" << i << "," << j << ")=" << k << ": " << *why;
        throw std::invalid_argument(os.str());
    }
    entries_[{i, j}] = k;
}

bool PartialSudoku::try_set(int i, int j, int k) {
    if (conflict_reason(*this, i, j, k)) return false;
    entries_[{i, j}] = k;
    return true;
}

std::vector<int> deleted_edges(const PartialSudoku& S) {
    const Shape& sh = S.shape();
    std::set<int> out;
    for (const auto& [cell, k] : S.entries()) {
        TileEdges te = tile_edges(sh, cell.first, cell.second, k);
        out.insert({te.rc, te.rs, te.cs, te.bs});
    }
    return {out.begin(), out.end()};
}

std::vector<char> edge_mask(const PartialSudoku& S) {
    std::vector<char> mask(S.shape().edge_count(), 1);
    for (int e : deleted_edges(S)) mask[e] = 0;
    return mask;
}

std::vector<EdgeId> graph_edges(const PartialSudoku& S) {
    const Shape& sh = S.shape();
    std::vector<char> mask = edge_mask(S);
    std::vector<EdgeId> out;
    out.reserve(mask.size());
    for (int e = 0; e < (int)mask.size(); ++e)
        if (mask[e]) out.push_back(edge_decode(sh, e));
    return out;
}

std::vector<Tile> tiles_available(const PartialSudoku& S) {
    const Shape& sh = S.shape();
    std::vector<char> mask = edge_mask(S);
    std::vector<Tile> out;
    for (int i = 1; i <= sh.n; ++i)
        for (int j = 1; j <= sh.n; ++j)
            for (int k = 1; k <= sh.n; ++k) {
                TileEdges te = tile_edges(sh, i, j, k);
                if (mask[te.rc] && mask[te.rs] && mask[te.cs] && mask[te.bs])
                    out.push_back({i, j, k, box_of(sh, i, j)});
            }
    return out;
}

std::vector<int> availability_counts(const PartialSudoku& S) {
    const Shape& sh = S.shape();
    std::vector<char> mask = edge_mask(S);
    std::vector<int> u(sh.edge_count(), 0);
    for (int i = 1; i <= sh.n; ++i)
        for (int j = 1; j <= sh.n; ++j)
            for (int k = 1; k <= sh.n; ++k) {
                TileEdges te = tile_edges(sh, i, j, k);
                bool avail =
                    mask[te.rc] && mask[te.rs] && mask[te.cs] && mask[te.bs];
                if (avail) continue;
                for (int e : {te.rc, te.rs, te.cs, te.bs})
                    if (mask[e]) ++u[e];
            }
    return u;
}

DensityReport density_report(const PartialSudoku& S) {
    const Shape& sh = S.shape();
    int n = sh.n, h = sh.h, w = sh.w;
    DensityReport r;
    std::map<int, int> row_fill, col_fill, box_fill;
    // symbol occurrences per (bundle, symbol)
    std::map<std::pair<int, int>, int> row_bundle_sym, col_bundle_sym;
    for (const auto& [cell, k] : S.entries()) {
        auto [i, j] = cell;
        r.max_row_fill = std::max(r.max_row_fill, ++row_fill[i]);
        r.max_col_fill = std::max(r.max_col_fill, ++col_fill[j]);
        r.max_box_fill = std::max(r.max_box_fill, ++box_fill[box_of(sh, i, j)]);
        r.max_symbol_per_row_bundle = std::max(
            r.max_symbol_per_row_bundle, ++row_bundle_sym[{(i - 1) / h, k}]);
        r.max_symbol_per_col_bundle = std::max(
            r.max_symbol_per_col_bundle, ++col_bundle_sym[{(j - 1) / w, k}]);
    }
    // symbol totals (each symbol at most eps*n times overall)
    std::map<int, int> sym_count;
    int max_sym = 0;
    for (const auto& [cell, k] : S.entries())
        max_sym = std::max(max_sym, ++sym_count[k]);

    std::vector<int> u = availability_counts(S);
    r.u_max = u.empty() ? 0 : *std::max_element(u.begin(), u.end());
    r.delta_effective = double(r.u_max) / n;

    // eps-dense: every row/column/symbol at most eps*n; bundle symbol
    // counts at most eps*h (rows) / eps*w (columns)
    double eps = 0.0;
    eps = std::max(eps, double(r.max_row_fill) / n);
    eps = std::max(eps, double(r.max_col_fill) / n);
    eps = std::max(eps, double(max_sym) / n);
    eps = std::max(eps, double(r.max_symbol_per_row_bundle) / h);
    eps = std::max(eps, double(r.max_symbol_per_col_bundle) / w);
    r.eps_effective = eps;
    return r;
}

bool verify_fractional_completion(const PartialSudoku& S,
                                  const FractionalAssignment& f, double tol,
                                  std::vector<Violation>* violations) {
    const Shape& sh = S.shape();
    if (!(f.shape == sh)) throw std::invalid_argument("shape mismatch");
    int n = sh.n;
    bool ok = true;
    auto flag = [&](Violation v) {
        ok = false;
        if (violations) violations->push_back(std::move(v));
    };
    auto wt = [&](int i, int j, int k) {
        auto it = f.weights.find({i, j, k});
        return it == f.weights.end() ? 0.0 : it->second;
    };
    for (const auto& [key, v] : f.weights)
        if (v < -tol || v > 1 + tol)
            flag({"range", std::get<0>(key), std::get<1>(key), v});
    for (const auto& [cell, k] : S.entries())
        if (std::abs(wt(cell.first, cell.second, k) - 1.0) > tol)
            flag({"filled", cell.first, cell.second,
                  wt(cell.first, cell.second, k)});
    // 4n^2 marginals, with compensated summation
    auto ksum = [](const std::vector<double>& xs) {
        double s = 0, c = 0;
        for (double x : xs) {
            double y = x - c, t = s + y;
            c = (t - s) - y;
            s = t;
        }
        return s;
    };
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) {
            std::vector<double> cell_s, row_s, col_s, box_s;
            for (int k = 1; k <= n; ++k) {
                cell_s.push_back(wt(a, b, k));
                row_s.push_back(wt(a, k, b));
                col_s.push_back(wt(k, a, b));
            }
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j)
                    if (box_of(sh, i, j) == a) box_s.push_back(wt(i, j, b));
            struct {
                const char* kind;
                std::vector<double>* v;
            } checks[] = {{"cell", &cell_s},
                          {"row", &row_s},
                          {"column", &col_s},
                          {"box", &box_s}};
            for (auto& c : checks) {
                double s = ksum(*c.v);
                if (std::abs(s - 1.0) > tol) flag({c.kind, a, b, s});
            }
        }
    return ok;
}

PartialSudoku parse_puzzle(const std::string& text) {
    std::istringstream in(text);
    int h, w;
    if (!(in >> h >> w)) throw std::invalid_argument("malformed header");
    Shape sh(h, w);
    PartialSudoku S(sh);
    for (int i = 1; i <= sh.n; ++i)
        for (int j = 1; j <= sh.n; ++j) {
            std::string tok;
            if (!(in >> tok))
                throw std::invalid_argument("truncated grid at row " +
                                            std::to_string(i));
            if (tok == ".") continue;
            int k;
            try {
                std::size_t pos = 0;
                k = std::stoi(tok, &pos);
                if (pos != tok.size()) throw std::invalid_argument(tok);
            } catch (...) {
                throw std::invalid_argument("bad field '" + tok + "' at (" +
                                            std::to_string(i) + "," +
                                            std::to_string(j) + ")");
            }
            if (k < 1 || k > sh.n)
                throw std::invalid_argument("symbol out of range at (" +
                                            std::to_string(i) + "," +
                                            std::to_string(j) + ")");
            S.set(i, j, k);  // throws with a precise conflict location
        }
    return S;
}

std::string serialize_puzzle(const PartialSudoku& S) {
    const Shape& sh = S.shape();
    std::ostringstream os;
    os << sh.h << " " << sh.w << "\n";
    for (int i = 1; i <= sh.n; ++i) {
        for (int j = 1; j <= sh.n; ++j) {
            if (j > 1) os << " ";
            if (auto k = S.at(i, j))
                os << *k;
            else
                os << ".";
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace sudoku
