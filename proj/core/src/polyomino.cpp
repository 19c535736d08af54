#include "sudoku/polyomino.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sudoku {

namespace {

int eidx(int n, int t, int a, int b) {
    return t * n * n + (a - 1) * n + (b - 1);
}

std::array<int, 4> bm_tile_edges(const BoxMap& bm, int i, int j, int k) {
    int n = bm.n, l = bm.box_at(i, j);
    return {eidx(n, RC, i, j), eidx(n, RS, i, k), eidx(n, CS, j, k),
            eidx(n, BS, l, k)};
}

}  // namespace

BoxMap rectangular_boxmap(const Shape& sh) {
    BoxMap bm;
    bm.n = sh.n;
    bm.label.assign(sh.n, std::vector<int>(sh.n));
    for (int i = 1; i <= sh.n; ++i)
        for (int j = 1; j <= sh.n; ++j) bm.label[i - 1][j - 1] = box_of(sh, i, j);
    return bm;
}

void validate_boxmap(const BoxMap& bm) {
    int n = bm.n;
    if (n < 2 || (int)bm.label.size() != n)
        throw std::invalid_argument("boxmap: bad dimensions");
    std::vector<int> count(n + 1, 0);
    for (const auto& row : bm.label) {
        if ((int)row.size() != n)
            throw std::invalid_argument("boxmap: ragged rows");
        for (int l : row) {
            if (l < 1 || l > n)
                throw std::invalid_argument("boxmap: label out of range");
            ++count[l];
        }
    }
    for (int l = 1; l <= n; ++l)
        if (count[l] != n)
            throw std::invalid_argument("boxmap: labels must be n-to-1");
}

std::vector<int> disconnected_boxes(const BoxMap& bm) {
    int n = bm.n;
    std::vector<int> out;
    for (int l = 1; l <= n; ++l) {
        std::vector<std::pair<int, int>> cells;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (bm.label[i][j] == l) cells.emplace_back(i, j);
        if (cells.empty()) continue;
        // flood fill from the first cell
        std::set<std::pair<int, int>> left(cells.begin(), cells.end());
        std::vector<std::pair<int, int>> stack{cells[0]};
        left.erase(cells[0]);
        while (!stack.empty()) {
            auto [i, j] = stack.back();
            stack.pop_back();
            const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
            for (int d = 0; d < 4; ++d) {
                std::pair<int, int> nb{i + di[d], j + dj[d]};
                if (left.erase(nb)) stack.push_back(nb);
            }
        }
        if (!left.empty()) out.push_back(l);
    }
    return out;
}

BoxMap parse_boxmap(const std::string& text) {
    std::istringstream is(text);
    BoxMap bm;
    if (!(is >> bm.n) || bm.n < 2)
        throw std::invalid_argument("boxmap parse: bad size line");
    bm.label.assign(bm.n, std::vector<int>(bm.n));
    for (int i = 0; i < bm.n; ++i)
        for (int j = 0; j < bm.n; ++j)
            if (!(is >> bm.label[i][j]))
                throw std::invalid_argument("boxmap parse: truncated grid");
    validate_boxmap(bm);
    return bm;
}

std::string serialize_boxmap(const BoxMap& bm) {
    std::ostringstream os;
    os << bm.n << "\n";
    for (const auto& row : bm.label) {
        for (int j = 0; j < bm.n; ++j) os << (j ? " " : "") << row[j];
        os << "\n";
    }
    return os.str();
}

std::vector<BoxMap> parse_boxmap_file(const std::string& text) {
    std::vector<BoxMap> out;
    std::istringstream is(text);
    std::string line, block;
    auto flush = [&] {
        if (block.find_first_not_of(" \t\n") == std::string::npos) {
            block.clear();
            return;
        }
        out.push_back(parse_boxmap(block));
        block.clear();
    };
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t") == std::string::npos)
            flush();
        else
            block += line + "\n";
    }
    flush();
    return out;
}

Eigen::MatrixXd build_M_prime(const BoxMap& bm) {
    int n = bm.n, E = 4 * n * n;
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(E, E);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                auto es = bm_tile_edges(bm, i, j, k);
                for (int a : es)
                    for (int b : es) M(a, b) += 1;
            }
    return M;
}

Rat alpha_of(const BoxMap& bm, const Shape& sh) {
    if (bm.n != sh.n)
        throw std::invalid_argument("alpha_of: boxmap/shape size mismatch");
    int n = sh.n;
    Rat alpha = 0;
    for (int l = 1; l <= n; ++l) {
        std::vector<std::pair<int, int>> diff;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                bool in_rect = box_of(sh, i, j) == l;
                bool in_map = bm.box_at(i, j) == l;
                if (in_rect != in_map) diff.emplace_back(i, j);
            }
        if (diff.empty()) continue;
        std::vector<int> rows;
        for (auto& [i, j] : diff)
            if (std::find(rows.begin(), rows.end(), i) == rows.end())
                rows.push_back(i);
        if (rows.size() > 20)
            throw std::runtime_error("alpha_of: symmetric difference too large");
        Rat best = -1;
        for (unsigned mask = 0; mask < (1u << rows.size()); ++mask) {
            std::set<int> covered_rows;
            for (size_t r = 0; r < rows.size(); ++r)
                if (mask & (1u << r)) covered_rows.insert(rows[r]);
            std::set<int> cols;
            for (auto& [i, j] : diff)
                if (!covered_rows.count(i)) cols.insert(j);
            Rat cand = std::max(Rat((long long)covered_rows.size(), sh.h),
                                Rat((long long)cols.size(), sh.w));
            if (best < 0 || cand < best) best = cand;
        }
        if (best > alpha) alpha = best;
    }
    return alpha;
}

NullityRecord nullity_of(const BoxMap& bm) {
    validate_boxmap(bm);
    NullityRecord rec;
    int n = bm.n;
    for (int l = 1; l <= n; ++l) {
        std::set<int> is, js;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (bm.label[i][j] == l) {
                    is.insert(i);
                    js.insert(j);
                }
        if (is.size() == 1 || js.size() == 1) rec.has_I = true;
    }
    Eigen::MatrixXd Mp = build_M_prime(bm);
    RankResult rr = rank_and_nullity(Mp, RankMode::exact_rational);
    rec.nullity = rr.nullity;
    return rec;
}

std::vector<NullityRecord> nullity_study(const std::vector<BoxMap>& tilings) {
    std::vector<NullityRecord> out;
    out.reserve(tilings.size());
    for (const auto& bm : tilings) out.push_back(nullity_of(bm));
    return out;
}

SolveOutcome approx_solve(const PartialSudoku& S, const BoxMap& bm,
                          const ShapeWorkspace& ws, const SolveOptions& opts) {
    const Shape& sh = ws.shape();
    if (S.shape() != sh || bm.n != sh.n)
        throw std::invalid_argument("approx_solve: size mismatch");
    validate_boxmap(bm);
    int n = sh.n, E = sh.edge_count();

    // edge mask and availability w.r.t. the boxmap tiles
    std::vector<char> mask(E, 1);
    for (const auto& [cell, k] : S.entries())
        for (int e : bm_tile_edges(bm, cell.first, cell.second, k)) mask[e] = 0;
    std::vector<int> u(E, 0);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                auto es = bm_tile_edges(bm, i, j, k);
                bool blocked = false;
                for (int e : es) blocked = blocked || !mask[e];
                if (!blocked) continue;
                for (int e : es)
                    if (mask[e]) ++u[e];
            }
    SolveDiagnostics diag;
    diag.ainv_norm = to_double(ws.ainv_norm());
    for (int e = 0; e < E; ++e)
        if (mask[e] && u[e] >= n) {
            SolveOutcome out;
            out.status = SolveStatus::infeasible;
            out.diag = diag;
            out.diag.has_zero_edge = true;
            out.diag.zero_edge = edge_decode(sh, e);
            return out;
        }

    // M_S from boxmap tiles, Mtilde case split against M', DeltaM vs M
    Eigen::MatrixXd Mp = build_M_prime(bm);
    Eigen::MatrixXd MS = Eigen::MatrixXd::Zero(E, E);
    std::vector<std::array<int, 4>> live_tiles_edges;
    std::vector<Tile> live_tiles;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                auto es = bm_tile_edges(bm, i, j, k);
                if (!(mask[es[0]] && mask[es[1]] && mask[es[2]] && mask[es[3]]))
                    continue;
                for (int a : es)
                    for (int b : es) MS(a, b) += 1;
                live_tiles_edges.push_back(es);
                live_tiles.push_back({i, j, k, bm.box_at(i, j)});
            }
    Eigen::MatrixXd dM = Eigen::MatrixXd::Zero(E, E);
    for (int e = 0; e < E; ++e)
        for (int f = 0; f < E; ++f) {
            double mt = mask[e] ? (mask[f] ? MS(e, f) : 0.0) : Mp(e, f);
            dM(e, f) = ws.M()(e, f) - mt;
        }
    Eigen::MatrixXd Kp = Eigen::MatrixXd::Zero(E, E);
    for (int e = 0; e < E; ++e)
        for (int f = 0; f < E; ++f)
            if (!mask[f]) Kp(e, f) = ws.K()(e, f);

    diag.delta_m_norm = dM.cwiseAbs().rowwise().sum().maxCoeff();
    diag.k_prime_norm = Kp.cwiseAbs().rowwise().sum().maxCoeff();
    diag.bound = diag.ainv_norm * diag.delta_m_norm + diag.k_prime_norm;

    double eta = to_double(ws.eta());
    Eigen::MatrixXd A = ws.M() + eta * ws.K();
    Eigen::MatrixXd dA = dM + eta * Kp;
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(E);
    Eigen::VectorXd x;
    bool need_direct = opts.method == SolveOptions::Method::direct;
    if (opts.method == SolveOptions::Method::neumann) {
        if (diag.bound >= 1) {
            SolveOutcome out;
            out.status = SolveStatus::contraction_failed;
            out.diag = diag;
            return out;
        }
        x = ws.Ainv() * ones;
        Eigen::VectorXd term = x;
        bool converged = false;
        int it = 0;
        for (; it < opts.neumann_cap; ++it) {
            term = ws.Ainv() * (dA * term);
            x += term;
            if (term.cwiseAbs().maxCoeff() < 1e-13 * x.cwiseAbs().maxCoeff()) {
                converged = true;
                break;
            }
        }
        diag.neumann_terms = it + 1;
        need_direct = !converged;
    }
    if (need_direct) x = (A - dA).partialPivLu().solve(ones);

    SolveOutcome out;
    out.diag = diag;
    for (int e = 0; e < E; ++e)
        if (mask[e]) {
            out.edges.push_back(e);
            out.edge_weights.push_back(x[e]);
        }
    double res = 0;
    for (int e = 0; e < E; ++e) {
        if (!mask[e]) continue;
        double s = 0;
        for (int f = 0; f < E; ++f)
            if (mask[f]) s += MS(e, f) * x[f];
        res = std::max(res, std::fabs(s - 1.0));
    }
    out.diag.residual = res;
    double minw = 0;
    out.assignment.shape = sh;
    for (const auto& [cell, k] : S.entries())
        out.assignment.weights[{cell.first, cell.second, k}] = 1.0;
    for (size_t t = 0; t < live_tiles.size(); ++t) {
        const auto& es = live_tiles_edges[t];
        double v = x[es[0]] + x[es[1]] + x[es[2]] + x[es[3]];
        out.tiles.push_back(live_tiles[t]);
        out.tile_weights.push_back(v);
        out.assignment.weights[{live_tiles[t].i, live_tiles[t].j,
                                live_tiles[t].k}] += v;
        minw = std::min(minw, v);
    }
    out.diag.min_tile_weight = minw;
    if (res > opts.tol) {
        out.status = SolveStatus::residual_failed;
        return out;
    }
    if (minw < -opts.weight_tol) {
        out.status = SolveStatus::negative_solution;
        return out;
    }
    // marginals, with box marginals taken w.r.t. the boxmap
    auto wgt = [&](int i, int j, int k) {
        auto it = out.assignment.weights.find({i, j, k});
        return it == out.assignment.weights.end() ? 0.0 : it->second;
    };
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) {
            double cell = 0, row = 0, col = 0, box = 0;
            for (int k = 1; k <= n; ++k) {
                cell += wgt(a, b, k);
                row += wgt(a, k, b);
                col += wgt(k, a, b);
            }
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j)
                    if (bm.box_at(i, j) == a) box += wgt(i, j, b);
            for (double s : {cell, row, col, box})
                if (std::fabs(s - 1.0) > opts.tol) {
                    out.status = SolveStatus::residual_failed;
                    return out;
                }
        }
    out.status = SolveStatus::completed;
    return out;
}

}  // namespace sudoku
