#ifndef GWT_APPROXIMATION_HPP
#define GWT_APPROXIMATION_HPP

#include <vector>

#include "gwt/circulant.hpp"

namespace gwt {

/// Symmetric nonnegative adjacency with zero diagonal.
struct DenseGraph {
    Eigen::MatrixXd adjacency;

    int n() const { return static_cast<int>(adjacency.rows()); }
};

/// Validates symmetry (1e-12) and a zero diagonal.
DenseGraph make_dense_graph(Eigen::MatrixXd a);

/// Node relabelling: perm[new position] = original node.
struct Relabelling {
    enum class Method { Identity, Rcm, Sort };
    std::vector<int> perm;
    Method method = Method::Identity;
};

Relabelling identity_relabel(int n);

/// Reverse Cuthill-McKee ordering. Start node per component: minimum degree;
/// neighbor ties broken by ascending degree, then index. Never increases the
/// bandwidth of an already banded matrix.
Relabelling rcm_relabel(const DenseGraph& a);

/// Ascending sort of a real signal (ties by index); minimizes the total
/// variation sum |x(i+1)-x(i)| over relabellings.
Relabelling sort_relabel(const GraphSignal& x);

/// A_perm(i, j) = A(perm[i], perm[j]).
Eigen::MatrixXd apply_relabelling(const Eigen::MatrixXd& a, const Relabelling& r);

/// Half bandwidth: max |i-j| over nonzero entries (cyclic distance not used).
int bandwidth(const Eigen::MatrixXd& a);

/// Orthogonal projection onto symmetric circulants with zero diagonal: entry
/// k of the returned first row is the mean of the k-th wrapped diagonal.
/// May contain negative means; row[0] = 0.
Eigen::VectorXd circulant_projection_row(const Eigen::MatrixXd& a);

/// Frobenius-nearest circulant graph to the relabelled adjacency. Negative
/// mean weights are clamped to zero with a warning; zero generators dropped.
CirculantGraph nearest_circulant(const DenseGraph& a, const Relabelling& r);

/// Alternating least squares for min |A - A1 (x) A2|_F over circulant
/// factors of sizes n1, n2. Initialized from the dominant singular pair of
/// the Van Loan rearrangement projected onto circulants; stops when the
/// residual decrease drops below 1e-10 or after 100 iterations. Scale fixed
/// by |A1|_F = |A2|_F with a nonnegative leading weight.
struct KronFactors {
    CirculantGraph g1, g2;
    Eigen::VectorXd row1, row2;  // unclamped factor first rows
    double residual = 0.0;
    std::vector<double> history;  // residual per iteration, nonincreasing
};
KronFactors nearest_kron_circulant(const DenseGraph& a, int n1, int n2);

/// Sign split of the Fiedler vector of the symmetric normalized Laplacian;
/// zero entries go to the smaller side. Degenerate flags a repeated second
/// eigenvalue (the split is then one of many equivalent ones).
struct Bipartition {
    std::vector<int> first, second;
    bool degenerate = false;
};
Bipartition fiedler_bipartition(const DenseGraph& a);

enum class ImageGraphMode { Bilateral, IntensityOnly };

/// Pixel-affinity graph on an h x w grid.
/// Bilateral: w_ij = exp(-|p_i-p_j|^2/sigma_p^2) exp(-|I_i-I_j|^2/sigma_I^2)
/// over the 8-neighborhood (|p_i-p_j| <= sqrt(2)). Intensity-only connects
/// every pair with |I_i-I_j| <= threshold by exp(-|I_i-I_j|^2/sigma_I^2).
DenseGraph image_graph(const Eigen::VectorXd& intensities, int h, int w, double sigma_p,
                       double sigma_i, ImageGraphMode mode, double threshold = 0.0);

}  // namespace gwt

#endif  // GWT_APPROXIMATION_HPP
