#ifndef GWT_FILTERBANK_HPP
#define GWT_FILTERBANK_HPP

#include <optional>
#include <string>
#include <vector>

#include "gwt/circulant.hpp"

namespace gwt {

/// Per-node low-pass/high-pass retention flags (the diagonal matrix K).
struct SamplingPattern {
    std::vector<bool> keep_lp;

    int size() const { return static_cast<int>(keep_lp.size()); }
    int lowpass_count() const;
    std::vector<int> lowpass_indices() const;
    std::vector<int> highpass_indices() const;
};

/// keep_lp true at even indices; n must be even.
SamplingPattern default_pattern(int n);

/// Analysis (and optionally synthesis) low/high-pass circulant filter pair.
/// Plain spline banks have an empty alpha list and betas = {1,...} with a
/// single factor; e-spline banks carry one beta per alpha.
struct FilterBank {
    CirculantGraph graph;
    int k = 1;
    std::vector<ExponentParam> alphas;  // empty = plain spline
    std::vector<int> powers;            // per-factor power, same length as betas
    std::vector<double> betas;          // e-degree / degree per factor
    SymLaurentPoly lp_row, hp_row;
    std::optional<SymLaurentPoly> syn_lp_row, syn_hp_row;
    // First row of lp_an (spline lp)^-1 when the spline low-pass is
    // invertible on its own; dense because the quotient is rational.
    std::optional<Eigen::VectorXd> conversion_row;
    bool degenerate_beta = false;  // some beta == 0 (flagged, not fatal)
    std::string family = "hgswt";
};

FilterBank hgswt(const CirculantGraph& g, int k);
FilterBank hgeswt(const CirculantGraph& g, const std::vector<ExponentParam>& alphas, int k);
/// Mixed per-factor powers: powers[n] applies to alphas[n].
FilterBank hgeswt(const CirculantGraph& g, const std::vector<ExponentParam>& alphas,
                  const std::vector<int>& powers);

struct InvertibilityReport {
    enum class Condition { KEven, SameSignF, EigenRank, NumericFallback };
    bool invertible = false;
    Condition condition_used = Condition::NumericFallback;
    struct Collision {
        double beta;
        double gamma;
        int multiplicity;
    };
    std::vector<Collision> colliding_betas;
    std::string detail;
};

const char* condition_name(InvertibilityReport::Condition c);

/// Decision cascade of the invertibility analysis: sign test over the
/// spectrum when no |beta| matches an eigenvalue magnitude, sampled
/// eigenvector rank test on collisions, dense rank fallback otherwise.
InvertibilityReport check_invertibility(const FilterBank& fb, const SamplingPattern& sp);

/// w = (I+K)/2 H_LP x + (I-K)/2 H_HP x via two FFT filterings.
GraphSignal analyze(const FilterBank& fb, const SamplingPattern& sp, const GraphSignal& x);

/// Dense N x N analysis matrix (row i taken from H_LP or H_HP per pattern).
Eigen::MatrixXd analysis_matrix(const FilterBank& fb, const SamplingPattern& sp);

/// Thrown by invert() when the interleaved system is (near) singular.
struct SingularSystemError : std::runtime_error {
    double rcond;
    explicit SingularSystemError(double rc)
        : std::runtime_error("singular analysis system (rcond=" + std::to_string(rc) + ")"),
          rcond(rc) {}
};

/// Cached dense factorization of the interleaved analysis system.
class Inverter {
  public:
    Inverter(const FilterBank& fb, const SamplingPattern& sp);
    GraphSignal apply(const GraphSignal& w) const;
    double rcond() const { return rcond_; }

  private:
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
    double rcond_ = 0.0;
};

GraphSignal invert(const FilterBank& fb, const SamplingPattern& sp, const GraphSignal& w);

/// Strang-Fix root multiplicities of the low-pass row: at z = -1 for plain
/// spline banks, at -e^{+-i alpha_n} for e-spline banks.
std::vector<std::pair<Complex, int>> strang_fix_multiplicity(const FilterBank& fb);

/// Invertibility of the low-pass filter alone (no sampling).
bool lowpass_invertible(const FilterBank& fb);

/// Eigenvalues of A/d in DFT order (real by symmetry).
Eigen::VectorXd normalized_adjacency_spectrum(const CirculantGraph& g);

}  // namespace gwt

#endif  // GWT_FILTERBANK_HPP
