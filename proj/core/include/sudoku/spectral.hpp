#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sudoku/algebra.hpp"
#include "sudoku/incidence.hpp"

namespace sudoku {

// ---- kernel and eigenvector families (entries in {0, +-1}) ----

struct KernelBasis {
    // generators of type (A) row/column/symbol (3n), (B) box (n),
    // (C) bundle-times-symbol ((h+w)n); spans ker(M) with the documented
    // dependencies, independent count = 3n + (h+w)(n-1)
    std::vector<Eigen::VectorXi> vectors;
};

KernelBasis kernel_basis(const Shape& sh);

// Linearly independent eigenvectors of M for theta_j = j*n, j in 1..3,
// generated from the variety recipes and pruned greedily with exact
// rank tracking.  Every returned v satisfies M v = j*n*v exactly.
std::vector<Eigen::VectorXi> eigenvectors(const Shape& sh, int j);

// Dimension formulas for the eigenspace of theta_j, j in 0..4.
long long eigenspace_dimension(const Shape& sh, int j);

// Exact integer y = M x, matrix-free (companion of apply_M for
// certificate paths that must avoid floating point).
std::vector<long long> apply_M_int(const Shape& sh,
                                   const std::vector<long long>& x);

// ---- projectors and the generalized inverse ----

struct ProjectorSet {
    std::array<AlgebraElement, 5> E;  // E[0] = K, ..., E[4] = J/(4n^2)
};

// Exact Lagrange interpolation in the algebra:
// E_j = prod_{i != j} (M - theta_i I) / (theta_j - theta_i).
ProjectorSet projectors(const StructureTable& st);

// A^{-1} = (1/n)(x E_0 + E_1 + E_2/2 + E_3/3 + E_4/4), the inverse of
// A = M + (n/x) K.  Default x = 3/2, i.e. eta = 2n/3.
AlgebraElement generalized_inverse(const StructureTable& st,
                                   const ProjectorSet& ps,
                                   const Rat& x = Rat(3, 2));

// Reconstruction of A^{-1} (eta = 2n/3) from the published coefficient
// table of 9n^3 A^{-1} + (5/16) J; labels there are 0-based relation ids.
AlgebraElement published_inverse_table(const Shape& sh);

// ---- norm functions and closed forms ----

struct NormFunctions {
    Rat f1, f2, f3;
};

// The three piecewise-linear section norms of n * A^{-1}(x) in the
// large-n limit; max{f1,f2,f3} is minimized at x = 3/2 with value 15/4.
NormFunctions norm_functions(const Rat& x);

struct InverseNorm {
    Rat closed_form;  // 15/4n - 7(h+w)/8n^2 - 4/9n^2 + (31(h+w)-21)/72n^3
    Rat computed;     // element_infinity_norm of the explicit inverse
};

InverseNorm a_inverse_norm(const StructureTable& st, const ProjectorSet& ps);

// ||K||_inf = element_infinity_norm(E_0), exact.
Rat k_norm(const Shape& sh, const ProjectorSet& ps);

// ---- certified rank of M ----

struct RankCertificate {
    long long rank = 0;
    long long nullity = 0;
    bool certified = false;  // true when the mod-p bounds meet exactly
};

// rank via mod-p elimination (lower bound) plus integer-verified kernel
// generators (nullity lower bound); when the bounds sum to 4n^2 both are
// exact.  Fast enough for (4,4) well under a minute.
RankCertificate certified_rank(const Shape& sh);

// ---- per-shape workspace ----

// One-time spectral data for a shape: relation table, projector and
// inverse coefficients, and the dense M / K / A^{-1} matrices used by the
// solver.  Immutable after construction; optionally persisted to a cache
// directory (plain text with a checksum line, rebuilt on mismatch).
class ShapeWorkspace {
public:
    explicit ShapeWorkspace(const Shape& sh, const Rat& x = Rat(3, 2),
                            const std::string& cache_dir = "");

    const Shape& shape() const { return shape_; }
    const Rat& x() const { return x_; }
    Rat eta() const { return Rat(shape_.n) / x_; }

    const std::vector<std::vector<int16_t>>& relations() const { return rel_; }
    const ProjectorSet& projector_set() const { return ps_; }
    const AlgebraElement& inverse_element() const { return ainv_el_; }

    // dense matrices are built on first use (large shapes often only need
    // the coefficient tables, e.g. for contraction-bound certificates)
    const Eigen::MatrixXd& M() const;
    const Eigen::MatrixXd& K() const;
    const Eigen::MatrixXd& Ainv() const;

    const Rat& ainv_norm() const { return ainv_norm_; }  // exact, at this x
    const Rat& knorm() const { return k_norm_; }

    // lazily built; only needed by algebra diagnostics
    const StructureTable& structure() const;

    bool loaded_from_cache() const { return from_cache_; }

private:
    Shape shape_;
    Rat x_;
    std::vector<std::vector<int16_t>> rel_;
    ProjectorSet ps_;
    AlgebraElement ainv_el_;
    mutable std::unique_ptr<Eigen::MatrixXd> M_, K_, Ainv_;
    Rat ainv_norm_, k_norm_;
    mutable std::unique_ptr<StructureTable> st_;
    bool from_cache_ = false;
};

}  // namespace sudoku
