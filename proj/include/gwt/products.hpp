#ifndef GWT_PRODUCTS_HPP
#define GWT_PRODUCTS_HPP

#include <optional>
#include <vector>

#include "gwt/filterbank.hpp"
#include "gwt/multiscale.hpp"

namespace gwt {

enum class ProductKind { Kronecker, Cartesian, Strong, Lexicographic };

const char* product_kind_name(ProductKind k);

/// Product of two circulant factors. Signals live on the N1*N2 nodes in
/// row-stacked order: flat index i1*N2 + i2.
struct ProductGraph {
    ProductKind kind = ProductKind::Cartesian;
    CirculantGraph g1, g2;

    int nodes() const { return g1.n * g2.n; }
};

/// Regular degree of the product graph.
double product_degree(const ProductGraph& pg);

/// Dense adjacency / Laplacian. A_kron = A1(x)A2; A_cart = A1(x)I + I(x)A2;
/// A_strong = A_kron + A_cart; A_lex = A1(x)J + I(x)A2.
Eigen::MatrixXd product_adjacency(const ProductGraph& pg);
Eigen::MatrixXd product_laplacian(const ProductGraph& pg);

/// Matrix-vector products without materializing the operator: per-factor
/// circulant FFT filtering on the unstacked N1 x N2 signal.
Eigen::VectorXcd product_adjacency_apply(const ProductGraph& pg, const Eigen::VectorXcd& x);
Eigen::VectorXcd product_laplacian_apply(const ProductGraph& pg, const Eigen::VectorXcd& x);

/// Adjacency eigenvalues on the 2D DFT grid, flat index i1*N2 + i2.
Eigen::VectorXd product_spectrum(const ProductGraph& pg);

/// Row-stacked rank-1 tensor signal: out(i1*N2 + i2) = x1(i1) * x2(i2).
Eigen::VectorXcd kron_vec(const Eigen::VectorXcd& x1, const Eigen::VectorXcd& x2);

/// The lexicographic product of circulants is itself circulant after node
/// relabelling. Returns the circulant on N1*N2 nodes plus the permutation
/// perm[flat product index] = circulant label g1 + N1*g2; construction is
/// verified entrywise against the permuted dense adjacency.
/// Requires 1 in S1 (connectivity) and unit weights.
struct LexicographicIso {
    CirculantGraph graph;
    std::vector<int> perm;
};
LexicographicIso lexicographic_circulant(const CirculantGraph& g1, const CirculantGraph& g2);

/// Two-dimensional wavelet bank acting on the product graph directly:
/// H_lp/hp = prod_n (beta_n I +/- A/d)^k / 2^k with beta_n derived from the
/// per-factor e-degrees through the product rule of the chosen kind.
/// Plain-spline factors (empty alpha lists) give the single beta = 1.
struct ProductBank {
    ProductGraph pg;
    int k = 1;
    std::vector<double> betas;
    Eigen::MatrixXd lp, hp;
};

ProductBank nonseparable_gwt(const ProductGraph& pg, const std::vector<ExponentParam>& a1,
                             const std::vector<ExponentParam>& a2, int k);

/// Row i of the combined operator taken from lp or hp per keep_lp.
Eigen::MatrixXd nonseparable_analysis(const ProductBank& b, const std::vector<bool>& keep_lp);

/// Invertibility cascade over the product spectrum with 2D DFT eigenvectors.
InvertibilityReport product_invertibility(const ProductBank& b, const std::vector<bool>& keep_lp);

/// Dense multilevel per-factor wavelet operator (stored-coefficient rows:
/// finest high-pass first, coarsest low-pass last).
Eigen::MatrixXd factor_transform(const CirculantGraph& g, const BankBuilder& builder,
                                 CoarseningStrategy strategy, int levels);

/// w = vec_r(W1 X W2^T) for X the N1 x N2 unstacking of x.
Eigen::VectorXcd separable_analyze(const Eigen::MatrixXd& w1, const Eigen::MatrixXd& w2,
                                   const Eigen::VectorXcd& x);
/// Inverse of separable_analyze (two dense solves).
Eigen::VectorXcd separable_synthesize(const Eigen::MatrixXd& w1, const Eigen::MatrixXd& w2,
                                      const Eigen::VectorXcd& w);

/// Laplacian quadratic form of x1 (x) x2 on the product, computed directly
/// and through the factor-wise identity (S1, S2, energies, degrees).
struct SmoothnessReport {
    double direct = 0.0;
    double predicted = 0.0;
    double residual = 0.0;  // |direct - predicted| / max(1, |direct|)
};
SmoothnessReport smoothness_identity(ProductKind kind, const CirculantGraph& g1,
                                     const CirculantGraph& g2, const Eigen::VectorXd& x1,
                                     const Eigen::VectorXd& x2);

/// Relative residual of the factored form of L_prod (x1 (x) x2), e.g.
/// L_cart x = (L1 x1)(x)x2 + x1(x)(L2 x2). Optional per-factor exponential
/// parameters swap in the e-degree variants.
double laplacian_action_residual(ProductKind kind, const CirculantGraph& g1,
                                 const CirculantGraph& g2, const Eigen::VectorXcd& x1,
                                 const Eigen::VectorXcd& x2,
                                 const std::optional<ExponentParam>& a1 = {},
                                 const std::optional<ExponentParam>& a2 = {});

/// Zero counts of first-order wavelet representations of a linear ramp
/// tensor signal on banded factors (hops 1..m_i, unit weights): closed-form
/// predictions and empirical counts (|.| <= 1e-9) for the separable
/// one-level-per-factor transform and the two levels of the Kronecker
/// product transform (downsampling factor 2 first, then factor 1, with
/// preserve-set coarsening).
struct RampSparsity {
    double sep_formula = 0, level1_formula = 0, level2_formula = 0;
    int sep_count = 0, level1_count = 0, level2_count = 0;
};
RampSparsity ramp_sparsity_counts(int n1, int n2, int m1, int m2);

}  // namespace gwt

#endif  // GWT_PRODUCTS_HPP
