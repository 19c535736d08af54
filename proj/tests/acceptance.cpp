// Acceptance gate: one pass/fail line per shipped criterion.
// Usage: acceptance [data_dir]

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "sudoku/polyomino.hpp"
#include "sudoku/thin_box.hpp"

using namespace sudoku;
using clk = std::chrono::steady_clock;

namespace {

std::string g_data = "data";
bool g_all_ok = true;

void report(int num, const char* what, bool ok, double secs) {
    std::printf("criterion %2d %-4s %-34s (%.1fs)\n", num,
                ok ? "pass" : "FAIL", what, secs);
    std::fflush(stdout);
    g_all_ok = g_all_ok && ok;
}

template <typename F>
void criterion(int num, const char* what, F body) {
    auto t0 = clk::now();
    bool ok = false;
    try {
        ok = body();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "criterion %d threw: %s\n", num, e.what());
    }
    report(num, what, ok, std::chrono::duration<double>(clk::now() - t0).count());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

PartialSudoku random_puzzle(const Shape& sh, int entries, std::mt19937& rng) {
    PartialSudoku S(sh);
    std::uniform_int_distribution<int> d(1, sh.n);
    int guard = 0;
    while ((int)S.size() < entries && ++guard < 1000)
        S.try_set(d(rng), d(rng), d(rng));
    return S;
}

// (6,2) instances concentrated in the top-left bundle corner
PartialSudoku concentrated62(int entries, std::mt19937& rng) {
    Shape sh(6, 2);
    PartialSudoku S(sh);
    std::uniform_int_distribution<int> di(1, 6), dj(1, 2), dk(1, sh.n);
    int guard = 0;
    while ((int)S.size() < entries && ++guard < 500)
        S.try_set(di(rng), dj(rng), dk(rng));
    return S;
}

bool rank_criterion() {
    for (int h = 2; h <= 4; ++h)
        for (int w = 2; w <= 4; ++w) {
            auto t0 = clk::now();
            Shape sh(h, w);
            RankCertificate rc = certified_rank(sh);
            double secs =
                std::chrono::duration<double>(clk::now() - t0).count();
            if (!rc.certified || rc.rank != rank_formula(sh) ||
                rc.nullity != nullity_formula(sh) || secs >= 60.0)
                return false;
        }
    return true;
}

bool spectrum_criterion() {
    for (Shape sh : {Shape(2, 3), Shape(3, 3)}) {
        int E = sh.edge_count();
        // exact multiplicities from integer eigenvectors
        KernelBasis kb = kernel_basis(sh);
        Eigen::MatrixXd gen((int)kb.vectors.size(), E);
        for (int r = 0; r < (int)kb.vectors.size(); ++r)
            for (int c = 0; c < E; ++c) gen(r, c) = (double)kb.vectors[r][c];
        if (rank_mod_p(gen) != eigenspace_dimension(sh, 0)) return false;
        for (int j = 1; j <= 3; ++j)
            if ((long long)eigenvectors(sh, j).size() !=
                eigenspace_dimension(sh, j))
                return false;
        // numeric check: every eigenvalue within 1e-8 of {0,n,...,4n}
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(build_M(sh));
        std::array<long long, 5> mult{};
        for (int e = 0; e < E; ++e) {
            double ev = es.eigenvalues()[e];
            long long j = std::llround(ev / sh.n);
            if (j < 0 || j > 4 || std::fabs(ev - (double)(j * sh.n)) > 1e-8)
                return false;
            ++mult[j];
        }
        for (int j = 0; j <= 4; ++j)
            if (mult[j] != eigenspace_dimension(sh, j)) return false;
    }
    return true;
}

bool inverse_criterion() {
    for (Shape sh : {Shape(2, 3), Shape(2, 4), Shape(3, 3)}) {
        StructureTable st(sh);
        ProjectorSet ps = projectors(st);
        AlgebraElement ainv = generalized_inverse(st, ps);
        AlgebraElement A = express_M(sh);
        for (int r = 0; r < 70; ++r) A[r] += Rat(2 * sh.n, 3) * ps.E[0][r];
        if (!(st.multiply(A, ainv) == identity_element())) return false;
        if (!(ainv == published_inverse_table(sh))) return false;
    }
    return true;
}

bool norm_criterion() {
    for (Shape sh : {Shape(2, 3), Shape(3, 3), Shape(3, 4)}) {
        StructureTable st(sh);
        ProjectorSet ps = projectors(st);
        InverseNorm nrm = a_inverse_norm(st, ps);
        if (nrm.closed_form != nrm.computed) return false;
    }
    NormFunctions f = norm_functions(Rat(3, 2));
    return f.f3 == Rat(15, 4) && f.f1 <= f.f3 && f.f2 <= f.f3;
}

bool degree_criterion() {
    const auto& mine = degree_table();
    const auto& published = published_degree_table();
    for (int r = 1; r <= 69; ++r)
        if (!(mine[r] == published[r])) return false;
    Shape sh(2, 3);
    StructureTable st(sh);
    auto R = relation_table(sh);
    int E = sh.edge_count();
    std::mt19937 rng(101);
    std::uniform_int_distribution<int> rel(1, 69);
    for (int trial = 0; trial < 50; ++trial) {
        int i = rel(rng), j = rel(rng);
        AlgebraElement a = zero_element(), b = zero_element();
        a[i] = 1;
        b[j] = 1;
        AlgebraElement prod = st.multiply(a, b);
        // dense product, compared entrywise
        for (int e = 0; e < E; ++e)
            for (int f = 0; f < E; ++f) {
                long long s = 0;
                for (int g = 0; g < E; ++g)
                    if (R[e][g] == i && R[g][f] == j) ++s;
                if (!(prod[R[e][f]] == Rat(s))) return false;
            }
    }
    return true;
}

bool orthogonality_criterion() {
    ShapeWorkspace ws(Shape(3, 3));
    const AlgebraElement& Kc = ws.projector_set().E[0];
    Int den = 1;
    for (int r = 1; r <= 69; ++r)
        den = boost::multiprecision::lcm(den, denominator(Kc[r]));
    std::vector<long long> kint(70, 0);
    for (int r = 1; r <= 69; ++r)
        kint[r] = (long long)numerator(Rat(Kc[r] * den));
    const auto& R = ws.relations();
    std::mt19937 rng(103);
    std::uniform_int_distribution<int> cnt(0, 8);
    for (int trial = 0; trial < 20; ++trial) {
        PartialSudoku S = random_puzzle(ws.shape(), cnt(rng), rng);
        RestrictedSystem rs = build_restricted(S);
        int m = (int)rs.edges.size();
        for (int a = 0; a < m; ++a) {
            long long s = 0;
            for (int b = 0; b < m; ++b) s += kint[R[rs.edges[a]][rs.edges[b]]];
            if (s != 0) return false;
        }
        for (int a = 0; a < m; ++a)
            for (int c = 0; c < m; ++c) {
                long long s = 0;
                for (int b = 0; b < m; ++b)
                    s += kint[R[rs.edges[a]][rs.edges[b]]] *
                         (long long)rs.MS(b, c);
                if (s != 0) return false;
            }
    }
    return true;
}

bool completion_criterion() {
    std::mt19937 rng(107);
    for (Shape sh : {Shape(3, 3), Shape(3, 4)}) {
        ShapeWorkspace ws(sh);
        std::uniform_int_distribution<int> cnt(1, 4);
        for (int trial = 0; trial < 50; ++trial) {
            PartialSudoku S = random_puzzle(sh, cnt(rng), rng);
            auto t0 = clk::now();
            SolveOutcome out = solve(S, ws);
            double secs =
                std::chrono::duration<double>(clk::now() - t0).count();
            if (out.status != SolveStatus::completed || secs >= 10.0)
                return false;
            if (out.diag.residual > 1e-8 ||
                out.diag.min_tile_weight < -1e-10 || !certify(S, out, 1e-8))
                return false;
        }
    }
    return true;
}

bool obstruction_criterion() {
    {
        PartialSudoku left =
            parse_puzzle(slurp(g_data + "/obstruction_left.txt"));
        ShapeWorkspace ws(left.shape());
        SolveOutcome out = solve(left, ws);
        if (out.status != SolveStatus::infeasible || !out.diag.has_zero_edge)
            return false;
        PartialSudoku right =
            parse_puzzle(slurp(g_data + "/obstruction_right.txt"));
        SolveOutcome out2 = solve(right, ws);
        bool certified = (out2.status == SolveStatus::infeasible &&
                          out2.diag.has_zero_edge) ||
                         (out2.status == SolveStatus::negative_solution &&
                          out2.diag.min_tile_weight < 0);
        if (!certified) return false;
    }
    for (int w = 2; w <= 3; ++w)
        for (int h = w; h <= 12; ++h) {
            PartialSudoku B = barrier_construct(h, w);
            ShapeWorkspace ws(B.shape());
            SolveOptions opts;
            opts.method = SolveOptions::Method::neumann;
            if (solve(B, ws, opts).status == SolveStatus::completed)
                return false;
            // small shapes: confirm non-completion with elimination too
            if (B.shape().n <= 16 &&
                solve(B, ws).status == SolveStatus::completed)
                return false;
        }
    return true;
}

bool thin_criterion() {
    // density/demand half (Hall extension on 12 x 24 rectangles)
    std::mt19937 rng(109);
    int m = 12, n = 24;
    for (int trial = 0; trial < 50; ++trial) {
        LatinRectangle P;
        P.m = m;
        P.n = n;
        std::uniform_int_distribution<int> dc(1, n), ds(1, n);
        for (int i = 1; i <= m; ++i)
            for (int t = 0; t < 2; ++t) {
                int j = dc(rng), k = ds(rng);
                bool clash = P.fill.count({i, j}) != 0;
                for (const auto& [pos, s] : P.fill)
                    if (s == k && (pos.first == i || pos.second == j))
                        clash = true;
                if (!clash) P.fill[{i, j}] = k;
            }
        double eps = rectangle_density(P), delta = 0.15;
        SymbolDemands dem;
        dem.A.resize(n);
        std::uniform_int_distribution<int> dj(0, n - 1);
        for (int t = 0; t < 6; ++t) {
            int j = dj(rng), k = ds(rng);
            bool used = false;
            for (const auto& [pos, s] : P.fill)
                if (pos.second == j + 1 && s == k) used = true;
            if (!used && (int)dem.A[j].size() < 2) dem.A[j].insert(k);
        }
        LatinRectangle Q = extend_rectangle(P, dem, eps, delta);
        for (int j = 0; j < n; ++j)
            for (int k : dem.A[j]) {
                bool found = false;
                for (const auto& [pos, s] : Q.fill)
                    if (pos.second == j + 1 && s == k) found = true;
                if (!found) return false;
            }
        if (rectangle_density(Q) > 3 * (eps + delta) + 1e-12) return false;
    }
    // completion half: on bundle-concentrated (6,2) instances the plain
    // perturbation solve rejects (the rigorous bound exceeds 1) while the
    // thin pipeline extends and completes with a certified output
    ShapeWorkspace ws(Shape(6, 2));
    std::mt19937 rng2(5);
    int rejected = 0, rescued = 0;
    std::uniform_int_distribution<int> cnt(2, 4);
    for (int trial = 0; trial < 20; ++trial) {
        PartialSudoku S = concentrated62(cnt(rng2), rng2);
        SolveOptions plain;
        plain.method = SolveOptions::Method::neumann;
        if (solve(S, ws, plain).status != SolveStatus::contraction_failed)
            continue;
        ++rejected;
        ThinResult tr = thin_complete(S, ws, SolveOptions{});
        if (tr.outcome.status == SolveStatus::completed &&
            certify(tr.extended, tr.outcome, 1e-8))
            ++rescued;
    }
    return rejected > 0 && rescued == rejected;
}

bool pentadoku_criterion() {
    std::vector<BoxMap> tilings =
        parse_boxmap_file(slurp(g_data + "/pentomino_tilings.txt"));
    if (tilings.empty()) return false;
    bool saw_i = false, saw_no_i = false;
    for (const BoxMap& bm : tilings) {
        auto t0 = clk::now();
        NullityRecord rec = nullity_of(bm);
        double secs = std::chrono::duration<double>(clk::now() - t0).count();
        if (secs >= 1.0) return false;
        if (rec.nullity != (rec.has_I ? 27 : 23)) return false;
        (rec.has_I ? saw_i : saw_no_i) = true;
    }
    return saw_i && saw_no_i;
}

bool alpha_criterion() {
    std::mt19937 rng(113);
    for (Shape sh : {Shape(2, 3), Shape(3, 3)}) {
        Eigen::MatrixXd M = build_M(sh);
        std::uniform_int_distribution<int> d(1, sh.n), nswaps(1, 3);
        for (int trial = 0; trial < 20; ++trial) {
            BoxMap bm = rectangular_boxmap(sh);
            for (int s = nswaps(rng); s > 0; --s) {
                int i = d(rng), j = d(rng);
                int j2 = j % sh.n + 1;
                std::swap(bm.label[i - 1][j - 1], bm.label[i - 1][j2 - 1]);
            }
            Rat alpha = alpha_of(bm, sh);
            // integral matrices, so the row sums are exact; the 4 alpha n
            // count covers the rows indexed by box-symbol edges
            int nn = sh.n * sh.n;
            long long norm = (long long)(M - build_M_prime(bm))
                                 .middleRows(3 * nn, nn)
                                 .cwiseAbs()
                                 .rowwise()
                                 .sum()
                                 .maxCoeff();
            if (!(Rat(norm) <= alpha * 4 * sh.n)) return false;
        }
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_data = argv[1];
    criterion(1, "rank and nullity closed forms", rank_criterion);
    criterion(2, "spectrum multiplicities", spectrum_criterion);
    criterion(3, "exact generalized inverse", inverse_criterion);
    criterion(4, "inverse norm closed form", norm_criterion);
    criterion(5, "degree table and products", degree_criterion);
    criterion(6, "K[S] orthogonality", orthogonality_criterion);
    criterion(7, "end-to-end completion", completion_criterion);
    criterion(8, "obstructions and barriers", obstruction_criterion);
    criterion(9, "thin-box extension", thin_criterion);
    criterion(10, "pentadoku nullity dichotomy", pentadoku_criterion);
    criterion(11, "alpha-approximate norm bound", alpha_criterion);
    return g_all_ok ? 0 : 1;
}
