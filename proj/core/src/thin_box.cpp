#include "sudoku/thin_box.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace sudoku {

PartialSudoku barrier_construct(int h, int w) {
    if (w < 2 || h < w)
        throw std::invalid_argument("barrier_construct requires h >= w >= 2");
    int a = (h + w + 2) / 3;  // ceil((h+w)/3)
    PartialSudoku S{Shape(h, w)};
    // (a) A' = {a+1..2a} down column 1
    for (int idx = 0; idx < a; ++idx) S.set(idx + 1, 1, a + 1 + idx);
    // (b) A = {1..a} in column j of box h(j-1)+1, j = 2..w
    for (int j = 2; j <= w; ++j) {
        int base = (j - 1) * h;
        for (int idx = 0; idx < a; ++idx) S.set(base + idx + 1, j, idx + 1);
    }
    // (c) A again in rows a+1..2a-w+1, shifted right one bundle per row;
    // rows are clamped at h (only (2,2) is affected for small shapes)
    for (int r = 0; r <= a - w; ++r) {
        int row = a + 1 + r;
        if (row > h) break;
        for (int t = 0; t < a; ++t) S.set(row, w + r * w + t + 1, t + 1);
    }
    return S;
}

double rectangle_density(const LatinRectangle& P) {
    std::map<int, int> row_fill, col_fill, sym_use;
    for (const auto& [rc, k] : P.fill) {
        ++row_fill[rc.first];
        ++col_fill[rc.second];
        ++sym_use[k];
    }
    double eps = 0;
    for (const auto& [r, c] : row_fill) eps = std::max(eps, (double)c / P.n);
    for (const auto& [r, c] : col_fill) eps = std::max(eps, (double)c / P.m);
    for (const auto& [r, c] : sym_use) eps = std::max(eps, (double)c / P.m);
    return eps;
}

LatinRectangle extend_rectangle(const LatinRectangle& P,
                                const SymbolDemands& demands, double eps,
                                double delta) {
    if ((int)demands.A.size() != P.n)
        throw std::invalid_argument("demands must cover all n columns");
    LatinRectangle out = P;
    int m = P.m, n = P.n;
    std::vector<int> row_count(m + 1, 0);
    std::vector<std::set<int>> row_syms(m + 1), col_syms(n + 1);
    for (const auto& [rc, k] : out.fill) {
        ++row_count[rc.first];
        row_syms[rc.first].insert(k);
        col_syms[rc.second].insert(k);
    }
    int bsz = std::min(m, (int)std::ceil((eps + 2 * delta) * m));
    for (int j = 1; j <= n; ++j) {
        std::vector<int> Aj;
        for (int k : demands.A[j - 1])
            if (!col_syms[j].count(k)) Aj.push_back(k);
        if (Aj.empty()) continue;
        // least-filled candidate rows, ties by row index
        std::vector<int> rows(m);
        for (int r = 0; r < m; ++r) rows[r] = r + 1;
        std::stable_sort(rows.begin(), rows.end(), [&](int a, int b) {
            return row_count[a] < row_count[b];
        });
        int take = std::max(bsz, 2 * (int)Aj.size());
        std::vector<int> Bj(rows.begin(),
                            rows.begin() + std::min((int)rows.size(), take));
        // augmenting-path matching of demanded symbols into rows of Bj
        std::map<int, int> match_row;  // row -> symbol
        auto usable = [&](int r, int k) {
            return !out.fill.count({r, j}) && !row_syms[r].count(k);
        };
        std::function<bool(int, std::set<int>&)> aug = [&](int k,
                                                           std::set<int>& vis) {
            for (int r : Bj) {
                if (!usable(r, k) || vis.count(r)) continue;
                vis.insert(r);
                auto it = match_row.find(r);
                if (it == match_row.end() || aug(it->second, vis)) {
                    match_row[r] = k;
                    return true;
                }
            }
            return false;
        };
        for (int k : Aj) {
            std::set<int> vis;
            if (!aug(k, vis)) {
                std::ostringstream os;
                os << "extend_rectangle: no matching for symbol " << k
                   << " in column " << j;
                throw std::runtime_error(os.str());
            }
        }
        for (const auto& [r, k] : match_row) {
            out.fill[{r, j}] = k;
            ++row_count[r];
            row_syms[r].insert(k);
            col_syms[j].insert(k);
        }
    }
    return out;
}

ThinResult thin_complete(const PartialSudoku& S, const ShapeWorkspace& ws,
                         const SolveOptions& base_opts, double eps,
                         double delta) {
    const Shape& sh = S.shape();
    int n = sh.n, h = sh.h, w = sh.w;
    ThinResult res{{}, S, ""};
    PartialSudoku& Sp = res.extended;
    auto fail = [&](const std::string& why) {
        res.outcome.status = SolveStatus::extension_failed;
        res.detail = why;
        return res;
    };
    // iterate: extending one row bundle can add symbols to another
    // bundle's column-bundle footprint
    for (int pass = 0; pass < 4; ++pass) {
        bool changed = false;
        for (int p = 0; p < w; ++p) {  // row bundle p: rows h*p+1 .. h*(p+1)
            SymbolDemands demands;
            demands.A.assign(n, {});
            std::vector<int> col_fill(n + 1, 0);
            for (const auto& [cell, k] : Sp.entries()) ++col_fill[cell.second];
            for (int ci = 0; ci < h; ++ci) {  // column bundle ci
                int c_lo = w * ci + 1, c_hi = w * (ci + 1);
                std::set<int> box_syms, bundle_syms;
                for (const auto& [cell, k] : Sp.entries()) {
                    if (cell.second < c_lo || cell.second > c_hi) continue;
                    bundle_syms.insert(k);
                    if (cell.first > h * p && cell.first <= h * (p + 1))
                        box_syms.insert(k);
                }
                for (int k : bundle_syms) {
                    if (box_syms.count(k)) continue;
                    // place k in a bundle column where it occurs nowhere
                    int best = -1;
                    for (int j = c_lo; j <= c_hi; ++j) {
                        bool used = demands.A[j - 1].count(k) > 0;
                        for (const auto& [cell, k2] : Sp.entries())
                            if (cell.second == j && k2 == k) used = true;
                        if (used) continue;
                        if (best < 0 || col_fill[j] < col_fill[best]) best = j;
                    }
                    if (best < 0) {
                        std::ostringstream os;
                        os << "no free column for symbol " << k
                           << " in column bundle " << ci + 1;
                        return fail(os.str());
                    }
                    demands.A[best - 1].insert(k);
                }
            }
            bool any = false;
            for (const auto& a : demands.A) any = any || !a.empty();
            if (!any) continue;
            LatinRectangle P{h, n, {}};
            for (const auto& [cell, k] : Sp.entries())
                if (cell.first > h * p && cell.first <= h * (p + 1))
                    P.fill[{cell.first - h * p, cell.second}] = k;
            LatinRectangle Pp;
            try {
                Pp = extend_rectangle(P, demands, eps, delta);
            } catch (const std::runtime_error& ex) {
                return fail(ex.what());
            }
            for (const auto& [rc, k] : Pp.fill) {
                int i = rc.first + h * p, j = rc.second;
                if (Sp.at(i, j)) continue;
                if (!Sp.try_set(i, j, k)) {
                    std::ostringstream os;
                    os << "extension conflicts at (" << i << "," << j << ")="
                       << k;
                    return fail(os.str());
                }
                changed = true;
            }
        }
        if (!changed) break;
    }
    // property (2): every symbol in a box's column bundle occurs in the box
    for (int l = 1; l <= n; ++l) {
        int ci = (l - 1) % h;
        int c_lo = w * ci + 1, c_hi = w * (ci + 1);
        std::set<int> box_syms, bundle_syms;
        for (const auto& [cell, k] : Sp.entries()) {
            if (box_of(sh, cell.first, cell.second) == l) box_syms.insert(k);
            if (cell.second >= c_lo && cell.second <= c_hi)
                bundle_syms.insert(k);
        }
        for (int k : bundle_syms)
            if (!box_syms.count(k)) {
                std::ostringstream os;
                os << "property (2) fails: symbol " << k << " missing from box "
                   << l;
                return fail(os.str());
            }
    }
    SolveOptions opts = base_opts;
    opts.use_K_double_prime = true;
    res.outcome = solve(Sp, ws, opts);
    return res;
}

}  // namespace sudoku
