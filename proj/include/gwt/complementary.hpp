#ifndef GWT_COMPLEMENTARY_HPP
#define GWT_COMPLEMENTARY_HPP

#include <utility>
#include <vector>

#include "gwt/filterbank.hpp"

namespace gwt {

/// Feasibility of the half-band Bezout system: the known factor must have
/// neither a zero root nor a pair of opposite roots.
struct BezoutFeasibility {
    bool has_zero_root = false;
    std::vector<std::pair<Complex, Complex>> opposite_root_pairs;
    bool feasible = false;
};

BezoutFeasibility bezout_feasible(const SymLaurentPoly& c);

/// Thrown when the half-band factorization cannot exist (zero root or
/// opposite root pair in the fixed factor).
struct InfeasibleFactorizationError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Analysis low-pass complement to the (e-)spline high-pass of (g, alphas, k):
/// the unique shortest symmetric row R(z) F(z) whose product with H_HP(-z)
/// is half-band (constant term 1, even coefficients 0). With dual_moments,
/// F(z) = prod_n (z + 2 cos(alpha_n) + z^-1)^k imposes the mirrored
/// vanishing-moment factor; otherwise F = 1.
SymLaurentPoly complement_lowpass(const CirculantGraph& g, int k,
                                  const std::vector<ExponentParam>& alphas,
                                  bool dual_moments);

/// Biorthogonal banks with FIR synthesis: analysis pair (complement low-pass,
/// spline high-pass), synthesis by modulation, scale factors fixed by the
/// perfect-reconstruction identity under the alternating pattern.
FilterBank hcgswt(const CirculantGraph& g, int k, bool dual_moments = true);
FilterBank hcgeswt(const CirculantGraph& g, const std::vector<ExponentParam>& alphas, int k,
                   bool dual_moments = true);

/// Expanded first row of H(-z): entrywise (-1)^position sign flip. n even.
Eigen::VectorXd modulate(const SymLaurentPoly& row, int n);

/// FIR reconstruction from the synthesis pair; requires an alternating
/// pattern and populated syn rows.
GraphSignal synthesize(const FilterBank& fb, const SamplingPattern& sp, const GraphSignal& w);

/// max |P(w) + P(-w) - 2| over the n-th roots of unity for
/// P = lp_an(z) hp_an(-z).
double half_band_residual(const FilterBank& fb, int n);

}  // namespace gwt

#endif  // GWT_COMPLEMENTARY_HPP
