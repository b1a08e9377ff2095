#include "gwt/complementary.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "gwt/fft.hpp"

namespace gwt {

namespace {

// Ordinary-polynomial lift z^T p(z), low degree first, trimmed.
std::vector<double> lift(const SymLaurentPoly& p) {
    int t = p.half_support();
    std::vector<double> a(2 * t + 1);
    for (int j = 0; j <= 2 * t; ++j) a[j] = p.coeff(j - t);
    while (a.size() > 1 && std::abs(a.back()) < 1e-14) a.pop_back();
    return a;
}

std::vector<Complex> poly_roots(std::vector<double> a) {
    int low = 0;
    while (low < static_cast<int>(a.size()) - 1 && std::abs(a[low]) < 1e-14) ++low;
    std::vector<Complex> roots(low, Complex(0.0));  // stripped zero roots
    int deg = static_cast<int>(a.size()) - 1 - low;
    if (deg <= 0) return roots;
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -a[low + i] / a[low + deg];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    for (int i = 0; i < deg; ++i) roots.push_back(es.eigenvalues()(i));
    return roots;
}

SymLaurentPoly moment_factor(const std::vector<ExponentParam>& alphas, int k) {
    // prod_n (z + 2 cos(alpha_n) + z^-1)^k; plain spline banks use alpha = 0.
    SymLaurentPoly f(std::vector<double>{1.0});
    if (alphas.empty()) {
        f = sym_pow(SymLaurentPoly({2.0, 1.0}), k);
    } else {
        for (const auto& a : alphas) {
            double c = a.mode == ExponentParam::Mode::Trigonometric ? 2.0 * std::cos(a.alpha)
                                                                    : 2.0 * std::cosh(a.alpha);
            f = sym_mul(f, sym_pow(SymLaurentPoly({c, 1.0}), k));
        }
    }
    return f;
}

// Solve for symmetric R with half-support tr: half-band constraints on
// P = R * fc, plus `extra` root conditions at z = -1 on R when the square
// count leaves free parameters.
bool solve_half_band(const SymLaurentPoly& fc, int tr, int extra, SymLaurentPoly& out) {
    int tp = tr + fc.half_support();
    std::vector<Eigen::RowVectorXd> rows;
    std::vector<double> rhs;
    auto p_row = [&](int m) {
        Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(tr + 1);
        r(0) = fc.coeff(m);
        for (int i = 1; i <= tr; ++i) r(i) = fc.coeff(m - i) + fc.coeff(m + i);
        return r;
    };
    rows.push_back(p_row(0));
    rhs.push_back(1.0);
    for (int m = 2; m <= tp; m += 2) {
        rows.push_back(p_row(m));
        rhs.push_back(0.0);
    }
    // Root conditions: successive derivatives of the lift z^tr R(z) at -1.
    for (int t = 0; t < extra; ++t) {
        Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(tr + 1);
        for (int j = 0; j <= 2 * tr; ++j) {
            double fall = 1.0;
            for (int q = 0; q < t; ++q) fall *= (j - q);
            if (j < t) fall = 0.0;
            double val = fall * ((j - t) % 2 == 0 ? 1.0 : -1.0);
            r(std::abs(j - tr)) += val;
        }
        rows.push_back(r);
        rhs.push_back(0.0);
    }
    if (static_cast<int>(rows.size()) != tr + 1) return false;
    Eigen::MatrixXd m(rows.size(), tr + 1);
    Eigen::VectorXd b(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        m.row(i) = rows[i];
        b(i) = rhs[i];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(1e-10);
    if (!lu.isInvertible()) return false;
    Eigen::VectorXd r = lu.solve(b);
    std::vector<double> c(r.data(), r.data() + r.size());
    out = SymLaurentPoly(std::move(c));
    return true;
}

FilterBank spline_bank(const CirculantGraph& g, const std::vector<ExponentParam>& alphas, int k) {
    return alphas.empty() ? hgswt(g, k) : hgeswt(g, alphas, k);
}

bool alternating(const SamplingPattern& sp) {
    int n = sp.size();
    if (n % 2 != 0) return false;
    for (int i = 0; i < n; i += 2)
        if (sp.keep_lp[i] != sp.keep_lp[0] || sp.keep_lp[i + 1] == sp.keep_lp[0]) return false;
    return true;
}

FilterBank build_complementary(const CirculantGraph& g, const std::vector<ExponentParam>& alphas,
                               int k, bool dual_moments, const char* family) {
    FilterBank base = spline_bank(g, alphas, k);
    FilterBank fb = base;
    fb.family = family;
    fb.lp_row = complement_lowpass(g, k, alphas, dual_moments);
    fb.syn_lp_row = sym_modulate(fb.hp_row);
    fb.syn_hp_row = sym_modulate(fb.lp_row);

    // Scale factors from the reconstruction identity
    // c1 P(w) + c2 P(-w) = 2 over the n-th roots of unity.
    const int n = g.n;
    SymLaurentPoly p = sym_mul(fb.lp_row, sym_modulate(fb.hp_row));
    Eigen::VectorXcd pw = dft_spectrum(p, n);
    Eigen::MatrixXd m(n, 2);
    Eigen::VectorXd b = Eigen::VectorXd::Constant(n, 2.0);
    for (int j = 0; j < n; ++j) {
        m(j, 0) = pw(j).real();
        m(j, 1) = pw((j + n / 2) % n).real();
    }
    Eigen::Vector2d c = m.colPivHouseholderQr().solve(b);
    fb.syn_lp_row = sym_scale(*fb.syn_lp_row, c(0));
    fb.syn_hp_row = sym_scale(*fb.syn_hp_row, c(1));

    // Verify perfect reconstruction under the alternating pattern.
    auto sp = default_pattern(n);
    Eigen::MatrixXd t = analysis_matrix(fb, sp);
    Eigen::VectorXd g0 = expand_row(*fb.syn_lp_row, n);
    Eigen::VectorXd g1 = expand_row(*fb.syn_hp_row, n);
    Eigen::MatrixXd s(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            s(i, j) = (sp.keep_lp[j] ? g0 : g1)((j - i + n) % n);
    double pr = (s * t - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (pr > 1e-8) {
        std::ostringstream os;
        os << "perfect reconstruction failed (residual " << pr << ")";
        throw std::runtime_error(os.str());
    }

    // Conversion row lp_an (spline lp)^-1 when the spline low-pass alone is
    // invertible.
    if (lowpass_invertible(base)) {
        Eigen::VectorXcd num = dft_spectrum(fb.lp_row, n);
        Eigen::VectorXcd den = dft_spectrum(base.lp_row, n);
        Eigen::VectorXcd q = num.cwiseQuotient(den);
        fb.conversion_row = ifft(q).real();
    }
    return fb;
}

}  // namespace

BezoutFeasibility bezout_feasible(const SymLaurentPoly& c) {
    BezoutFeasibility out;
    auto roots = poly_roots(lift(c));
    for (const auto& r : roots)
        if (std::abs(r) < 1e-8) out.has_zero_root = true;
    for (size_t i = 0; i < roots.size(); ++i)
        for (size_t j = i + 1; j < roots.size(); ++j)
            if (std::abs(roots[i] + roots[j]) <
                1e-8 * std::max(1.0, std::abs(roots[i])))
                out.opposite_root_pairs.emplace_back(roots[i], roots[j]);
    out.feasible = !out.has_zero_root && out.opposite_root_pairs.empty();
    return out;
}

SymLaurentPoly complement_lowpass(const CirculantGraph& g, int k,
                                  const std::vector<ExponentParam>& alphas, bool dual_moments) {
    FilterBank base = spline_bank(g, alphas, k);
    SymLaurentPoly c = sym_modulate(base.hp_row).trimmed();
    auto feas = bezout_feasible(c);
    if (!feas.feasible) {
        std::ostringstream os;
        os << "half-band factorization infeasible: ";
        if (feas.has_zero_root) os << "zero root; ";
        for (auto& [a, b] : feas.opposite_root_pairs)
            os << "opposite roots (" << a << ", " << b << "); ";
        throw InfeasibleFactorizationError(os.str());
    }
    SymLaurentPoly f = dual_moments ? moment_factor(alphas, k) : SymLaurentPoly({1.0});
    SymLaurentPoly fc = sym_mul(f, c).trimmed();
    int tr0 = std::max(fc.half_support() - 1, 0);
    for (int t = 0; t <= 3; ++t) {
        int tr = tr0 + t;
        int tp = tr + fc.half_support();
        int eqs = 1 + tp / 2;
        int extra = (tr + 1) - eqs;
        if (extra < 0) continue;
        SymLaurentPoly r;
        if (!solve_half_band(fc, tr, extra, r)) continue;
        return sym_mul(r, f).trimmed();
    }
    throw std::runtime_error("half-band system singular after support adjustment");
}

FilterBank hcgswt(const CirculantGraph& g, int k, bool dual_moments) {
    return build_complementary(g, {}, k, dual_moments, "hcgswt");
}

FilterBank hcgeswt(const CirculantGraph& g, const std::vector<ExponentParam>& alphas, int k,
                   bool dual_moments) {
    if (alphas.empty()) throw std::invalid_argument("hcgeswt needs at least one alpha");
    return build_complementary(g, alphas, k, dual_moments, "hcgeswt");
}

Eigen::VectorXd modulate(const SymLaurentPoly& row, int n) {
    if (n % 2 != 0) throw std::invalid_argument("modulation needs even n");
    Eigen::VectorXd r = expand_row(row, n);
    for (int i = 1; i < n; i += 2) r(i) = -r(i);
    return r;
}

GraphSignal synthesize(const FilterBank& fb, const SamplingPattern& sp, const GraphSignal& w) {
    const int n = fb.graph.n;
    if (!fb.syn_lp_row || !fb.syn_hp_row)
        throw std::invalid_argument("bank carries no synthesis filters");
    if (sp.size() != n || w.size() != n)
        throw std::invalid_argument("signal/pattern size mismatch");
    if (!alternating(sp))
        throw std::invalid_argument("FIR synthesis requires the alternating pattern");
    Eigen::VectorXcd lp = Eigen::VectorXcd::Zero(n), hp = Eigen::VectorXcd::Zero(n);
    for (int i = 0; i < n; ++i) (sp.keep_lp[i] ? lp : hp)(i) = w.values(i);
    GraphSignal a = apply_circulant(*fb.syn_lp_row, GraphSignal(std::move(lp)));
    GraphSignal b = apply_circulant(*fb.syn_hp_row, GraphSignal(std::move(hp)));
    return GraphSignal(a.values + b.values, w.label);
}

double half_band_residual(const FilterBank& fb, int n) {
    SymLaurentPoly p = sym_mul(fb.lp_row, sym_modulate(fb.hp_row));
    Eigen::VectorXcd pw = dft_spectrum(p, n);
    double worst = 0.0;
    for (int j = 0; j < n; ++j)
        worst = std::max(worst, std::abs(pw(j) + pw((j + n / 2) % n) - 2.0));
    return worst;
}

}  // namespace gwt
