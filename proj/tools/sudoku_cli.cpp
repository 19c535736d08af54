// Command-line front end: solve and verify fractional Sudoku completions,
// inspect the spectral data, and generate adversarial instances.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "sudoku/polyomino.hpp"
#include "sudoku/solver.hpp"
#include "sudoku/spectral.hpp"
#include "sudoku/thin_box.hpp"

using namespace sudoku;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct CommonOpts {
    std::string eta;  // rational text; empty = 2n/3
    std::string method = "direct";
    double tol = 1e-8;
    std::string arith = "float";
    std::string cache;
    long seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_seed = false) {
    cmd->add_option("--eta", o.eta, "shift parameter (rational, default 2n/3)");
    cmd->add_option("--method", o.method, "neumann|direct")
        ->check(CLI::IsMember({"neumann", "direct"}));
    cmd->add_option("--tol", o.tol, "residual tolerance (float mode)");
    cmd->add_option("--arith", o.arith, "rational|float")
        ->check(CLI::IsMember({"rational", "float"}));
    cmd->add_option("--cache", o.cache, "spectral cache directory");
    if (with_seed) cmd->add_option("--seed", o.seed, "RNG seed");
}

std::string cache_dir(const CommonOpts& o) {
    if (!o.cache.empty()) return o.cache;
    if (const char* env = std::getenv("SUDOKU_CACHE_DIR")) return env;
    return "";
}

Rat x_param(const Shape& sh, const CommonOpts& o) {
    if (o.eta.empty()) return Rat(3, 2);       // eta = 2n/3
    return Rat(sh.n) / Rat(o.eta);             // x = n / eta
}

SolveOptions solve_options(const CommonOpts& o) {
    SolveOptions s;
    s.method = o.method == "neumann" ? SolveOptions::Method::neumann
                                     : SolveOptions::Method::direct;
    s.arith = o.arith == "rational" ? SolveOptions::Arith::rational
                                    : SolveOptions::Arith::floating;
    s.tol = o.tol;
    return s;
}

void print_density(const PartialSudoku& S) {
    DensityReport d = density_report(S);
    std::cout << "entries: " << S.size() << "\n"
              << "eps_effective: " << d.eps_effective << "\n"
              << "delta_effective: " << d.delta_effective << "\n"
              << "u_max: " << d.u_max << "\n";
}

int finish_solve(const PartialSudoku& S, const SolveOutcome& out,
                 const SolveOptions& opts, const Rat& eta) {
    std::cout << serialize_solution(S, out, opts, eta);
    return out.status == SolveStatus::completed ? 0 : 1;
}

PartialSudoku random_puzzle(const Shape& sh, int entries, std::mt19937& rng) {
    PartialSudoku S(sh);
    std::uniform_int_distribution<int> d(1, sh.n);
    int guard = 0;
    while ((int)S.size() < entries && ++guard < 1000)
        S.try_set(d(rng), d(rng), d(rng));
    return S;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractional Sudoku completion toolkit"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string puzzle_path, solution_path, tilings_path;
    int arg_h = 0, arg_w = 0;

    auto* c_solve = app.add_subcommand("solve", "solve a partial Sudoku file");
    c_solve->add_option("file", puzzle_path)->required();
    add_common(c_solve, o);

    auto* c_thin = app.add_subcommand(
        "thin-solve", "thin-box pipeline: extend per row bundle, solve with K''");
    c_thin->add_option("file", puzzle_path)->required();
    add_common(c_thin, o);

    auto* c_verify =
        app.add_subcommand("verify", "re-certify a solution independently");
    c_verify->add_option("file", puzzle_path)->required();
    c_verify->add_option("solution", solution_path)->required();
    c_verify->add_option("--tol", o.tol, "verification tolerance");

    auto* c_spec = app.add_subcommand("spectrum", "eigenvalue data for (h,w)");
    c_spec->add_option("box_h", arg_h)->required();
    c_spec->add_option("box_w", arg_w)->required();
    add_common(c_spec, o);

    auto* c_alg = app.add_subcommand(
        "algebra-check", "verify the relation algebra and inverse tables");
    c_alg->add_option("box_h", arg_h)->required();
    c_alg->add_option("box_w", arg_w)->required();
    add_common(c_alg, o);

    auto* c_bar = app.add_subcommand("gen-barrier",
                                     "emit the barrier puzzle for (h,w)");
    c_bar->add_option("box_h", arg_h)->required();
    c_bar->add_option("box_w", arg_w)->required();

    auto* c_pent = app.add_subcommand("pentadoku-nullity",
                                      "nullity of M' per 5x5 tiling");
    c_pent->add_option("--tilings", tilings_path, "tiling file")->required();

    auto* c_bench =
        app.add_subcommand("bench", "sweep shapes and densities, emit a table");
    add_common(c_bench, o, /*with_seed=*/true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*c_solve || *c_thin) {
            PartialSudoku S = parse_puzzle(slurp(puzzle_path));
            ShapeWorkspace ws(S.shape(), x_param(S.shape(), o), cache_dir(o));
            SolveOptions opts = solve_options(o);
            print_density(S);
            if (*c_thin) {
                ThinResult tr = thin_complete(S, ws, opts);
                std::cout << "extended_entries: "
                          << tr.extended.size() - S.size() << "\n";
                for (const auto& [cell, k] : tr.extended.entries())
                    if (!S.at(cell.first, cell.second))
                        std::cout << "added: " << cell.first << " "
                                  << cell.second << " " << k << "\n";
                if (tr.outcome.status == SolveStatus::extension_failed) {
                    std::cout << "status: extension_failed\n"
                              << "detail: " << tr.detail << "\n";
                    return 1;
                }
                return finish_solve(tr.extended, tr.outcome, opts, ws.eta());
            }
            SolveOutcome out = solve(S, ws, opts);
            return finish_solve(S, out, opts, ws.eta());
        }

        if (*c_verify) {
            PartialSudoku S = parse_puzzle(slurp(puzzle_path));
            ParsedSolution sol = parse_solution(slurp(solution_path));
            FractionalAssignment f;
            f.shape = S.shape();
            for (const auto& [cell, k] : S.entries())
                f.weights[{cell.first, cell.second, k}] = 1.0;
            double minw = 0;
            for (auto& [i, j, k, wgt] : sol.records) {
                f.weights[{i, j, k}] += wgt;
                minw = std::min(minw, wgt);
            }
            std::vector<Violation> viols;
            bool ok = minw >= -o.tol &&
                      verify_fractional_completion(S, f, o.tol, &viols);
            std::cout << "verified: " << (ok ? "yes" : "no") << "\n";
            for (const auto& v : viols)
                std::cout << "violation: " << v.kind << " " << v.a << " " << v.b
                          << " " << v.value << "\n";
            if (minw < -o.tol)
                std::cout << "violation: negative weight " << minw << "\n";
            return ok ? 0 : 1;
        }

        if (*c_spec) {
            Shape sh(arg_h, arg_w);
            ShapeWorkspace ws(sh, x_param(sh, o), cache_dir(o));
            for (int j = 0; j <= 4; ++j)
                std::cout << "eigenvalue: " << j * sh.n
                          << " multiplicity: " << eigenspace_dimension(sh, j)
                          << "\n";
            InverseNorm nrm = a_inverse_norm(ws.structure(), ws.projector_set());
            std::cout << "ainv_norm_closed: " << nrm.closed_form.str() << "\n"
                      << "ainv_norm_computed: " << nrm.computed.str() << "\n"
                      << "norms_equal: "
                      << (nrm.closed_form == nrm.computed ? "yes" : "no") << "\n"
                      << "k_norm: " << ws.knorm().str() << "\n";
            return nrm.closed_form == nrm.computed ? 0 : 1;
        }

        if (*c_alg) {
            Shape sh(arg_h, arg_w);
            bool ok = true;
            auto report = [&](const char* what, bool good) {
                std::cout << what << ": " << (good ? "ok" : "FAIL") << "\n";
                ok = ok && good;
            };
            const auto& mine = degree_table();
            const auto& published = published_degree_table();
            bool deg = true;
            for (int r = 1; r <= 69; ++r)
                deg = deg && mine[r].eval(sh.h, sh.w) ==
                                 published[r].eval(sh.h, sh.w);
            report("degree_table", deg);
            StructureTable st(sh);
            ProjectorSet ps = projectors(st);
            AlgebraElement I = identity_element();
            bool idem = true;
            for (int a = 0; a < 5; ++a)
                for (int b = 0; b < 5; ++b) {
                    AlgebraElement prod = st.multiply(ps.E[a], ps.E[b]);
                    AlgebraElement want = a == b ? ps.E[a] : zero_element();
                    idem = idem && prod == want;
                }
            report("projector_orthogonality", idem);
            AlgebraElement ainv = generalized_inverse(st, ps);
            AlgebraElement A = express_M(sh);
            for (int r = 0; r < 70; ++r) A[r] += Rat(2 * sh.n, 3) * ps.E[0][r];
            report("inverse_identity", st.multiply(A, ainv) == I);
            report("published_inverse_table",
                   ainv == published_inverse_table(sh));
            InverseNorm nrm = a_inverse_norm(st, ps);
            report("norm_closed_form", nrm.closed_form == nrm.computed);
            return ok ? 0 : 1;
        }

        if (*c_bar) {
            std::cout << serialize_puzzle(barrier_construct(arg_h, arg_w));
            return 0;
        }

        if (*c_pent) {
            std::vector<BoxMap> tilings = parse_boxmap_file(slurp(tilings_path));
            bool ok = true;
            for (size_t t = 0; t < tilings.size(); ++t) {
                for (int l : disconnected_boxes(tilings[t]))
                    std::cerr << "warning: tiling " << t + 1 << " box " << l
                              << " is disconnected\n";
                NullityRecord rec = nullity_of(tilings[t]);
                std::cout << "tiling: " << t + 1 << " nullity: " << rec.nullity
                          << " I_pentomino: " << (rec.has_I ? "yes" : "no")
                          << "\n";
                if (tilings[t].n == 5)
                    ok = ok && rec.nullity == (rec.has_I ? 27 : 23);
            }
            return ok ? 0 : 1;
        }

        if (*c_bench) {
            std::mt19937 rng((unsigned)o.seed);
            std::cout << "shape entries status bound residual ms\n";
            for (auto [h, w] : {std::pair{2, 2}, {2, 3}, {3, 3}, {3, 4}}) {
                Shape sh(h, w);
                ShapeWorkspace ws(sh, x_param(sh, o), cache_dir(o));
                SolveOptions opts = solve_options(o);
                for (int entries : {0, 2, 4}) {
                    PartialSudoku S = random_puzzle(sh, entries, rng);
                    auto t0 = std::chrono::steady_clock::now();
                    SolveOutcome out = solve(S, ws, opts);
                    auto ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - t0)
                                  .count();
                    std::cout << h << "x" << w << " " << S.size() << " "
                              << to_string(out.status) << " " << out.diag.bound
                              << " " << out.diag.residual << " " << ms << "\n";
                }
            }
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
