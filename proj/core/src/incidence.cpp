#include "sudoku/incidence.hpp"

#include <sstream>

namespace sudoku {

IncidenceW build_W(const Shape& sh) {
    IncidenceW W{sh, {}};
    W.columns.reserve(sh.tile_count());
    for (int i = 1; i <= sh.n; ++i)
        for (int j = 1; j <= sh.n; ++j)
            for (int k = 1; k <= sh.n; ++k)
                W.columns.push_back(tile_edges(sh, i, j, k));
    return W;
}

namespace {

// entry of M for a pair of decoded edges, via the block closed forms
double m_entry(const Shape& sh, const EdgeId& e, const EdgeId& f) {
    if (e.type == f.type)
        return (e.a == f.a && e.b == f.b) ? sh.n : 0;
    // order the pair so that e.type < f.type, symmetric anyway
    const EdgeId& x = e.type < f.type ? e : f;
    const EdgeId& y = e.type < f.type ? f : e;
    switch (x.type * 4 + y.type) {
        case RC * 4 + RS:  // same row
            return x.a == y.a ? 1 : 0;
        case RC * 4 + CS:  // same column
            return x.b == y.a ? 1 : 0;
        case RC * 4 + BS:  // cell lies in the box
            return box_of(sh, x.a, x.b) == y.a ? 1 : 0;
        case RS * 4 + CS:  // same symbol
            return x.b == y.b ? 1 : 0;
        case RS * 4 + BS:  // same symbol, row meets box: w shared cells
            return (x.b == y.b && rb_smile(sh, x.a, y.a)) ? sh.w : 0;
        case CS * 4 + BS:  // same symbol, column meets box: h shared cells
            return (x.b == y.b && cb_frown(sh, x.a, y.a)) ? sh.h : 0;
    }
    return 0;
}

}  // namespace

Eigen::MatrixXd build_M(const Shape& sh, MBuildMethod method) {
    int E = sh.edge_count();
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(E, E);
    if (method == MBuildMethod::product) {
        for (int i = 1; i <= sh.n; ++i)
            for (int j = 1; j <= sh.n; ++j)
                for (int k = 1; k <= sh.n; ++k) {
                    TileEdges t = tile_edges(sh, i, j, k);
                    int es[4] = {t.rc, t.rs, t.cs, t.bs};
                    for (int a : es)
                        for (int b : es) M(a, b) += 1;
                }
    } else {
        std::vector<EdgeId> dec(E);
        for (int e = 0; e < E; ++e) dec[e] = edge_decode(sh, e);
        for (int e = 0; e < E; ++e)
            for (int f = 0; f < E; ++f) M(e, f) = m_entry(sh, dec[e], dec[f]);
    }
    return M;
}

Eigen::VectorXd apply_M(const Shape& sh, const Eigen::VectorXd& x) {
    int n = sh.n, nn = n * n, h = sh.h, w = sh.w;
    auto idx = [&](EdgeType t, int a, int b) {
        return (int)t * nn + (a - 1) * n + (b - 1);
    };
    // marginal sums used by the block formulas
    std::vector<double> rc_row(n + 1, 0), rc_col(n + 1, 0), rc_box(n + 1, 0);
    std::vector<double> rs_row(n + 1, 0), cs_col(n + 1, 0), bs_box(n + 1, 0);
    std::vector<double> rs_sym(n + 1, 0), cs_sym(n + 1, 0);
    // per (bundle, symbol) sums; row bundles indexed 0..w-1, column 0..h-1
    std::vector<std::vector<double>> rs_rb(w, std::vector<double>(n + 1, 0));
    std::vector<std::vector<double>> cs_cb(h, std::vector<double>(n + 1, 0));
    std::vector<std::vector<double>> bs_rb(w, std::vector<double>(n + 1, 0));
    std::vector<std::vector<double>> bs_cb(h, std::vector<double>(n + 1, 0));
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) {
            double rc = x[idx(RC, a, b)];
            rc_row[a] += rc;
            rc_col[b] += rc;
            rc_box[box_of(sh, a, b)] += rc;
            double rs = x[idx(RS, a, b)];
            rs_row[a] += rs;
            rs_sym[b] += rs;
            rs_rb[(a - 1) / h][b] += rs;
            double cs = x[idx(CS, a, b)];
            cs_col[a] += cs;
            cs_sym[b] += cs;
            cs_cb[(a - 1) / w][b] += cs;
            double bs = x[idx(BS, a, b)];
            bs_box[a] += bs;
            bs_rb[(a - 1) / h][b] += bs;
            bs_cb[(a - 1) % h][b] += bs;
        }
    Eigen::VectorXd y(4 * nn);
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) {
            y[idx(RC, a, b)] = n * x[idx(RC, a, b)] + rs_row[a] + cs_col[b] +
                               bs_box[box_of(sh, a, b)];
            y[idx(RS, a, b)] = n * x[idx(RS, a, b)] + rc_row[a] + cs_sym[b] +
                               w * bs_rb[(a - 1) / h][b];
            y[idx(CS, a, b)] = n * x[idx(CS, a, b)] + rc_col[a] + rs_sym[b] +
                               h * bs_cb[(a - 1) / w][b];
            y[idx(BS, a, b)] = n * x[idx(BS, a, b)] + rc_box[a] +
                               w * rs_rb[(a - 1) / h][b] +
                               h * cs_cb[(a - 1) % h][b];
        }
    return y;
}

RestrictedSystem build_restricted(const PartialSudoku& S) {
    const Shape& sh = S.shape();
    RestrictedSystem R{S, {}, {}, {}, {}};
    std::vector<char> mask = edge_mask(S);
    R.edge_pos.assign(sh.edge_count(), -1);
    for (int e = 0; e < sh.edge_count(); ++e)
        if (mask[e]) {
            R.edge_pos[e] = (int)R.edges.size();
            R.edges.push_back(e);
        }
    R.tiles = tiles_available(S);
    int m = (int)R.edges.size();
    R.MS = Eigen::MatrixXd::Zero(m, m);
    for (const Tile& t : R.tiles) {
        TileEdges te = tile_edges(sh, t.i, t.j, t.k);
        int es[4] = {R.edge_pos[te.rc], R.edge_pos[te.rs], R.edge_pos[te.cs],
                     R.edge_pos[te.bs]};
        for (int a : es)
            for (int b : es) R.MS(a, b) += 1;
    }
    return R;
}

long long rank_mod_p(const Eigen::MatrixXd& m) {
    constexpr uint64_t P = 2147483647ULL;  // 2^31 - 1
    int rows = (int)m.rows(), cols = (int)m.cols();
    std::vector<std::vector<uint64_t>> a(rows, std::vector<uint64_t>(cols));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            long long v = llround(m(r, c));
            a[r][c] = (uint64_t)(((v % (long long)P) + (long long)P) % (long long)P);
        }
    auto powmod = [&](uint64_t b, uint64_t e) {
        uint64_t r = 1;
        b %= P;
        while (e) {
            if (e & 1) r = r * b % P;
            b = b * b % P;
            e >>= 1;
        }
        return r;
    };
    long long rank = 0;
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int piv = -1;
        for (int r = row; r < rows; ++r)
            if (a[r][col]) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[piv], a[row]);
        uint64_t inv = powmod(a[row][col], P - 2);
        for (int c = col; c < cols; ++c) a[row][c] = a[row][c] * inv % P;
        for (int r = row + 1; r < rows; ++r) {
            if (!a[r][col]) continue;
            uint64_t f = P - a[r][col];
            for (int c = col; c < cols; ++c)
                a[r][c] = (a[r][c] + f * a[row][c]) % P;
        }
        ++row;
        ++rank;
    }
    return rank;
}

RankResult rank_and_nullity(const Eigen::MatrixXd& m, RankMode mode,
                            double tol) {
    RankResult out;
    int rows = (int)m.rows(), cols = (int)m.cols();
    if (mode == RankMode::numeric) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
        const auto& sv = svd.singularValues();
        double thresh = sv.size() ? sv(0) * tol : 0.0;
        long long rank = 0;
        for (int i = 0; i < sv.size(); ++i)
            if (sv(i) > thresh) ++rank;
        out.rank = rank;
        out.certified_exact = false;
    } else {
        // exact rational Gaussian elimination
        std::vector<std::vector<Rat>> a(rows, std::vector<Rat>(cols));
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) a[r][c] = Rat(llround(m(r, c)));
        long long rank = 0;
        int row = 0;
        for (int col = 0; col < cols && row < rows; ++col) {
            int piv = -1;
            for (int r = row; r < rows; ++r)
                if (a[r][col] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) continue;
            std::swap(a[piv], a[row]);
            Rat d = a[row][col];
            for (int c = col; c < cols; ++c) a[row][c] /= d;
            for (int r = row + 1; r < rows; ++r) {
                if (a[r][col] == 0) continue;
                Rat f = a[r][col];
                for (int c = col; c < cols; ++c) a[r][c] -= f * a[row][c];
            }
            ++row;
            ++rank;
        }
        out.rank = rank;
        out.certified_exact = true;
    }
    out.nullity = std::min(rows, cols) - out.rank;
    if (rows == cols) out.nullity = cols - out.rank;
    return out;
}

std::string export_matrix_triplets(const Eigen::MatrixXd& m) {
    std::ostringstream os;
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (m(r, c) != 0) os << r << " " << c << " " << m(r, c) << "\n";
    return os.str();
}

}  // namespace sudoku
