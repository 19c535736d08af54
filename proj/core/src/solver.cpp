#include "sudoku/solver.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace sudoku {

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::completed: return "completed";
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::contraction_failed: return "contraction_failed";
        case SolveStatus::negative_solution: return "negative_solution";
        case SolveStatus::residual_failed: return "residual_failed";
        case SolveStatus::extension_failed: return "extension_failed";
    }
    return "unknown";
}

namespace {

// full-size M_S: tiles of G_S only, zero elsewhere
Eigen::MatrixXd build_MS_full(const PartialSudoku& S) {
    const Shape& sh = S.shape();
    int E = sh.edge_count();
    std::vector<char> mask = edge_mask(S);
    Eigen::MatrixXd MS = Eigen::MatrixXd::Zero(E, E);
    for (int i = 1; i <= sh.n; ++i)
        for (int j = 1; j <= sh.n; ++j)
            for (int k = 1; k <= sh.n; ++k) {
                TileEdges t = tile_edges(sh, i, j, k);
                int es[4] = {t.rc, t.rs, t.cs, t.bs};
                bool in = mask[es[0]] && mask[es[1]] && mask[es[2]] && mask[es[3]];
                if (!in) continue;
                for (int a : es)
                    for (int b : es) MS(a, b) += 1;
            }
    return MS;
}

}  // namespace

Eigen::MatrixXd build_delta_M(const PartialSudoku& S,
                              const Eigen::MatrixXd& M) {
    const Shape& sh = S.shape();
    int E = sh.edge_count();
    std::vector<char> mask = edge_mask(S);
    Eigen::MatrixXd MS = build_MS_full(S);
    Eigen::MatrixXd dM = Eigen::MatrixXd::Zero(E, E);
    for (int e = 0; e < E; ++e) {
        if (!mask[e]) continue;  // Mtilde rows outside E(G_S) copy M
        for (int f = 0; f < E; ++f)
            dM(e, f) = mask[f] ? M(e, f) - MS(e, f) : M(e, f);
    }
    return dM;
}

Eigen::MatrixXd build_K_prime(const PartialSudoku& S, const Eigen::MatrixXd& K,
                              bool double_prime) {
    const Shape& sh = S.shape();
    int E = sh.edge_count();
    std::vector<char> mask = edge_mask(S);
    Eigen::MatrixXd Kp = Eigen::MatrixXd::Zero(E, E);
    for (int e = 0; e < E; ++e) {
        if (double_prime && !mask[e]) continue;
        for (int f = 0; f < E; ++f)
            if (!mask[f]) Kp(e, f) = K(e, f);
    }
    return Kp;
}

Rat contraction_bound(const PartialSudoku& S, const ShapeWorkspace& ws,
                      bool double_prime) {
    const Shape& sh = S.shape();
    int E = sh.edge_count();
    std::vector<char> mask = edge_mask(S);
    std::vector<int> u = availability_counts(S);
    // ||DeltaM||_inf = 4 * max availability deficit over E(G_S)
    long long umax = 0;
    for (int e = 0; e < E; ++e)
        if (mask[e] && u[e] > umax) umax = u[e];
    // ||K'||_inf from the exact projector coefficients
    const AlgebraElement& Kc = ws.projector_set().E[0];
    using boost::multiprecision::abs;
    std::array<Rat, 70> absc;
    for (int r = 0; r < 70; ++r) absc[r] = abs(Kc[r]);
    const auto& R = ws.relations();
    Rat kp_norm = 0;
    std::array<long long, 70> cnt;
    for (int e = 0; e < E; ++e) {
        if (double_prime && !mask[e]) continue;
        cnt.fill(0);
        for (int f = 0; f < E; ++f)
            if (!mask[f]) ++cnt[R[e][f]];
        Rat s = 0;
        for (int r = 1; r <= 69; ++r)
            if (cnt[r] && absc[r] != 0) s += absc[r] * cnt[r];
        if (s > kp_norm) kp_norm = s;
    }
    return ws.ainv_norm() * (4 * umax) + kp_norm;
}

namespace {

SolveOutcome finish(const PartialSudoku& S, const std::vector<char>& mask,
                    const Eigen::MatrixXd& MS, const Eigen::VectorXd& x,
                    const SolveOptions& opts, SolveDiagnostics diag) {
    const Shape& sh = S.shape();
    int E = sh.edge_count();
    SolveOutcome out;
    out.diag = diag;
    for (int e = 0; e < E; ++e)
        if (mask[e]) {
            out.edges.push_back(e);
            out.edge_weights.push_back(x[e]);
        }
    // residual of M_S x' = 1 on the restricted rows
    double res = 0;
    for (int e = 0; e < E; ++e) {
        if (!mask[e]) continue;
        double s = 0;
        for (int f = 0; f < E; ++f)
            if (mask[f]) s += MS(e, f) * x[f];
        res = std::max(res, std::fabs(s - 1.0));
    }
    out.diag.residual = res;
    // tile weights
    double minw = 0;
    for (int i = 1; i <= sh.n; ++i)
        for (int j = 1; j <= sh.n; ++j)
            for (int k = 1; k <= sh.n; ++k) {
                TileEdges t = tile_edges(sh, i, j, k);
                if (!(mask[t.rc] && mask[t.rs] && mask[t.cs] && mask[t.bs]))
                    continue;
                double v = x[t.rc] + x[t.rs] + x[t.cs] + x[t.bs];
                out.tiles.push_back({i, j, k, box_of(sh, i, j)});
                out.tile_weights.push_back(v);
                minw = std::min(minw, v);
            }
    out.diag.min_tile_weight = minw;
    out.assignment.shape = sh;
    for (const auto& [cell, k] : S.entries())
        out.assignment.weights[{cell.first, cell.second, k}] = 1.0;
    for (size_t t = 0; t < out.tiles.size(); ++t)
        out.assignment.weights[{out.tiles[t].i, out.tiles[t].j,
                                out.tiles[t].k}] += out.tile_weights[t];
    if (res > opts.tol) {
        out.status = SolveStatus::residual_failed;
        return out;
    }
    if (minw < -opts.weight_tol) {
        out.status = SolveStatus::negative_solution;
        return out;
    }
    if (!verify_fractional_completion(S, out.assignment, opts.tol)) {
        out.status = SolveStatus::residual_failed;
        return out;
    }
    out.status = SolveStatus::completed;
    return out;
}

// exact rational elimination solve of B x = 1
std::vector<Rat> solve_rational(std::vector<std::vector<Rat>>& B) {
    int E = (int)B.size();
    std::vector<Rat> rhs(E, Rat(1));
    for (int col = 0; col < E; ++col) {
        int piv = -1;
        for (int r = col; r < E; ++r)
            if (B[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::runtime_error("rational solve: singular system");
        std::swap(B[piv], B[col]);
        std::swap(rhs[piv], rhs[col]);
        Rat d = B[col][col];
        for (int c = col; c < E; ++c) B[col][c] /= d;
        rhs[col] /= d;
        for (int r = 0; r < E; ++r) {
            if (r == col || B[r][col] == 0) continue;
            Rat f = B[r][col];
            for (int c = col; c < E; ++c) B[r][c] -= f * B[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    return rhs;
}

}  // namespace

SolveOutcome solve(const PartialSudoku& S, const ShapeWorkspace& ws,
                   const SolveOptions& opts) {
    const Shape& sh = S.shape();
    if (sh != ws.shape())
        throw std::invalid_argument("solve: workspace shape mismatch");
    int E = sh.edge_count();
    std::vector<char> mask = edge_mask(S);
    SolveDiagnostics diag;
    diag.ainv_norm = to_double(ws.ainv_norm());

    // zero-availability certificate: u(e) = n means no tile through e
    std::vector<int> u = availability_counts(S);
    for (int e = 0; e < E; ++e)
        if (mask[e] && u[e] >= sh.n) {
            SolveOutcome out;
            out.status = SolveStatus::infeasible;
            out.diag = diag;
            out.diag.has_zero_edge = true;
            out.diag.zero_edge = edge_decode(sh, e);
            return out;
        }

    // the exact bound needs no dense matrices; with the neumann method a
    // failed gate exits before anything quadratic in E is materialized
    Rat exact_bound = contraction_bound(S, ws, opts.use_K_double_prime);
    diag.bound = to_double(exact_bound);
    if (opts.method == SolveOptions::Method::neumann &&
        opts.arith == SolveOptions::Arith::floating && exact_bound >= 1) {
        long long umax = 0;
        for (int e = 0; e < E; ++e)
            if (mask[e] && u[e] > umax) umax = u[e];
        diag.delta_m_norm = 4.0 * (double)umax;
        SolveOutcome out;
        out.status = SolveStatus::contraction_failed;
        out.diag = diag;
        return out;
    }

    Eigen::MatrixXd dM = build_delta_M(S, ws.M());
    Eigen::MatrixXd Kp = build_K_prime(S, ws.K(), opts.use_K_double_prime);
    double eta = to_double(ws.eta());
    Eigen::MatrixXd MS = build_MS_full(S);

    diag.delta_m_norm = dM.cwiseAbs().rowwise().sum().maxCoeff();
    diag.k_prime_norm = Kp.cwiseAbs().rowwise().sum().maxCoeff();

    Eigen::VectorXd x;
    if (opts.arith == SolveOptions::Arith::rational) {
        if (sh.n > 12)
            throw std::invalid_argument("rational mode is limited to n <= 12");
        // B = A - DeltaA = Mtilde + eta (K - K'); exact entries
        const AlgebraElement& Kc = ws.projector_set().E[0];
        const auto& R = ws.relations();
        Rat eta_r = ws.eta();
        std::vector<std::vector<Rat>> B(E, std::vector<Rat>(E));
        for (int e = 0; e < E; ++e)
            for (int f = 0; f < E; ++f) {
                Rat m = mask[e] ? (mask[f] ? Rat((long long)MS(e, f)) : Rat(0))
                                : Rat((long long)ws.M()(e, f));
                Rat k = Kc[R[e][f]];
                bool keep_k = opts.use_K_double_prime
                                  ? (mask[f] || !mask[e])
                                  : mask[f];
                B[e][f] = m + (keep_k ? eta_r * k : Rat(0));
            }
        std::vector<Rat> xr = solve_rational(B);
        x = Eigen::VectorXd(E);
        for (int e = 0; e < E; ++e) x[e] = to_double(xr[e]);
        return finish(S, mask, MS, x, opts, diag);
    }

    Eigen::MatrixXd A = ws.M() + eta * ws.K();
    Eigen::MatrixXd dA = dM + eta * Kp;
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(E);
    bool need_direct = opts.method == SolveOptions::Method::direct;
    if (opts.method == SolveOptions::Method::neumann) {
        x = ws.Ainv() * ones;
        Eigen::VectorXd term = x;
        bool converged = false;
        int it = 0;
        for (; it < opts.neumann_cap; ++it) {
            term = ws.Ainv() * (dA * term);
            x += term;
            if (term.cwiseAbs().maxCoeff() <
                1e-13 * x.cwiseAbs().maxCoeff()) {
                converged = true;
                break;
            }
        }
        diag.neumann_terms = it + 1;
        need_direct = !converged;  // cap hit: fall back to elimination
    }
    if (need_direct) x = (A - dA).partialPivLu().solve(ones);
    return finish(S, mask, MS, x, opts, diag);
}

bool certify(const PartialSudoku& S, const SolveOutcome& out, double tol,
             std::vector<Violation>* violations) {
    bool ok = true;
    for (size_t t = 0; t < out.tile_weights.size(); ++t)
        if (out.tile_weights[t] < -tol) {
            ok = false;
            if (violations)
                violations->push_back({"range", out.tiles[t].i, out.tiles[t].j,
                                       out.tile_weights[t]});
        }
    if (!verify_fractional_completion(S, out.assignment, tol, violations))
        ok = false;
    return ok;
}

std::string serialize_solution(const PartialSudoku& S, const SolveOutcome& out,
                               const SolveOptions& opts, const Rat& eta) {
    std::ostringstream os;
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return std::string(buf);
    };
    os << "status: " << to_string(out.status) << "\n";
    os << "shape: " << S.shape().h << " " << S.shape().w << "\n";
    os << "eta: " << eta.str() << "\n";
    os << "method: "
       << (opts.method == SolveOptions::Method::neumann ? "neumann" : "direct")
       << "\n";
    os << "arith: "
       << (opts.arith == SolveOptions::Arith::rational ? "rational" : "float")
       << "\n";
    os << "delta_m_norm: " << num(out.diag.delta_m_norm) << "\n";
    os << "k_prime_norm: " << num(out.diag.k_prime_norm) << "\n";
    os << "ainv_norm: " << num(out.diag.ainv_norm) << "\n";
    os << "bound: " << num(out.diag.bound) << "\n";
    os << "neumann_terms: " << out.diag.neumann_terms << "\n";
    os << "residual: " << num(out.diag.residual) << "\n";
    os << "min_tile_weight: " << num(out.diag.min_tile_weight) << "\n";
    if (out.diag.has_zero_edge) {
        static const char* names[4] = {"RC", "RS", "CS", "BS"};
        os << "zero_edge: " << names[out.diag.zero_edge.type] << "("
           << out.diag.zero_edge.a << "," << out.diag.zero_edge.b << ")\n";
    }
    os << "records: " << out.tiles.size() << "\n";
    for (size_t t = 0; t < out.tiles.size(); ++t)
        os << out.tiles[t].i << " " << out.tiles[t].j << " " << out.tiles[t].k
           << " " << num(out.tile_weights[t]) << "\n";
    return os.str();
}

ParsedSolution parse_solution(const std::string& text) {
    ParsedSolution out;
    std::istringstream is(text);
    std::string line;
    long long nrec = -1;
    while (std::getline(is, line)) {
        auto colon = line.find(": ");
        if (colon == std::string::npos)
            throw std::runtime_error("solution parse: bad header line: " + line);
        std::string key = line.substr(0, colon);
        std::string val = line.substr(colon + 2);
        out.header[key] = val;
        if (key == "records") {
            nrec = std::stoll(val);
            break;
        }
    }
    if (nrec < 0) throw std::runtime_error("solution parse: missing records");
    for (long long r = 0; r < nrec; ++r) {
        if (!std::getline(is, line))
            throw std::runtime_error("solution parse: truncated records");
        int i, j, k;
        double wgt;
        if (std::sscanf(line.c_str(), "%d %d %d %lf", &i, &j, &k, &wgt) != 4)
            throw std::runtime_error("solution parse: bad record: " + line);
        out.records.emplace_back(i, j, k, wgt);
    }
    return out;
}

}  // namespace sudoku
