#ifndef GWT_MULTISCALE_HPP
#define GWT_MULTISCALE_HPP

#include <functional>
#include <vector>

#include "gwt/filterbank.hpp"

namespace gwt {

/// Reconnection rule applied after dropping the odd-numbered nodes.
enum class CoarseningStrategy {
    KeepExisting,  // keep only edges that survive: {s/2 : s even} plus 1
    PreserveSet,   // reuse the same generating set on half the nodes
};

/// Coarse circulant on n/2 nodes. Requires even n and 1 in the generating
/// set (downsampling is with respect to hop 1).
CirculantGraph coarsen(const CirculantGraph& g, CoarseningStrategy strategy);

/// Schur complement of the Laplacian onto the retained nodes.
Eigen::MatrixXd kron_reduce(const Eigen::MatrixXd& laplacian, const std::vector<int>& keep);
/// Kron reduction of a circulant graph onto its even nodes.
Eigen::MatrixXd kron_reduce(const CirculantGraph& g);

/// Produces the filter bank for the graph at a given level (0 = finest).
using BankBuilder = std::function<FilterBank(const CirculantGraph&, int level)>;

BankBuilder spline_builder(int k);
/// E-spline banks with the alpha list doubled at each level (dyadic
/// rescaling of the exponential moments).
BankBuilder espline_builder(std::vector<ExponentParam> alphas, int k);
BankBuilder complementary_spline_builder(int k, bool dual_moments = true);
BankBuilder complementary_espline_builder(std::vector<ExponentParam> alphas, int k,
                                          bool dual_moments = true);

struct PyramidLevel {
    CirculantGraph graph;
    SamplingPattern pattern;
    FilterBank bank;
    std::vector<int> hp_nodes;    // node indices holding stored coefficients
    Eigen::VectorXcd hp_coeffs;   // one value per hp node
};

struct Pyramid {
    std::vector<PyramidLevel> levels;
    CirculantGraph root_graph;
    GraphSignal root_lp;

    int stored_count() const;
};

Pyramid pyramid_analyze(const CirculantGraph& g, const BankBuilder& builder,
                        CoarseningStrategy strategy, const GraphSignal& x, int levels);
GraphSignal pyramid_synthesize(const Pyramid& p);

/// Pyramid plus its dense multilevel analysis operator (row i produces the
/// i-th stored coefficient: level-0 high-pass nodes first, coarsest low-pass
/// last); used for atom-normalized coefficient selection.
struct Decomposition {
    Pyramid pyramid;
    Eigen::MatrixXd analysis;
    Eigen::VectorXd atom_norms;
    Eigen::VectorXcd coeffs;  // analysis * x
    GraphSignal input;
};

Decomposition decompose(const CirculantGraph& g, const BankBuilder& builder,
                        CoarseningStrategy strategy, const GraphSignal& x, int levels);

struct NlaResult {
    std::vector<std::pair<int, double>> curve;  // (kept count, snr in dB)
};

/// Keeps the K largest coefficients after unit-norm atom rescaling (ties to
/// the lower index), reconstructs, and reports
/// SNR = 10 log10(|x|^2 / |x_rec - x|^2) for each K.
NlaResult nla(const Decomposition& d, const std::vector<int>& k_list);

}  // namespace gwt

#endif  // GWT_MULTISCALE_HPP
