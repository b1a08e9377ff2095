#include "gwt/filterbank.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gwt {

namespace {

constexpr double kCollisionTol = 1e-9;

// Eigenvector of A/d at DFT position j: u_j(t) = e^{2 pi i j t / n} / sqrt(n).
Eigen::VectorXcd dft_column(int n, int j) {
    Eigen::VectorXcd v(n);
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (int t = 0; t < n; ++t) {
        double th = 2.0 * M_PI * j * t / n;
        v[t] = Complex(std::cos(th) * s, std::sin(th) * s);
    }
    return v;
}

bool sampled_rank_full(int n, const std::vector<int>& cols, const std::vector<int>& rows) {
    if (cols.empty()) return true;
    if (static_cast<int>(rows.size()) < static_cast<int>(cols.size())) return false;
    Eigen::MatrixXcd m(rows.size(), cols.size());
    for (size_t c = 0; c < cols.size(); ++c) {
        Eigen::VectorXcd full = dft_column(n, cols[c]);
        for (size_t r = 0; r < rows.size(); ++r) m(r, c) = full[rows[r]];
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    double thresh = 1e-10 * std::sqrt(static_cast<double>(n));
    return svd.singularValues().minCoeff() > thresh;
}

FilterBank build_bank(const CirculantGraph& g, const std::vector<ExponentParam>& alphas,
                      const std::vector<int>& powers) {
    FilterBank fb;
    fb.graph = g;
    fb.alphas = alphas;
    fb.powers = powers;
    fb.k = powers.empty() ? 1 : powers.front();

    SymLaurentPoly a = adjacency_row(g);
    SymLaurentPoly a_over_d = sym_scale(a, 1.0 / g.degree);

    SymLaurentPoly lp(std::vector<double>{1.0});
    SymLaurentPoly hp(std::vector<double>{1.0});
    const size_t factors = alphas.empty() ? 1 : alphas.size();
    for (size_t i = 0; i < factors; ++i) {
        double beta = 1.0;
        if (!alphas.empty()) beta = e_degree(g, alphas[i]) / g.degree;
        fb.betas.push_back(beta);
        if (std::abs(beta) < kCollisionTol) fb.degenerate_beta = true;
        SymLaurentPoly beta_id(std::vector<double>{beta});
        SymLaurentPoly plus = sym_scale(sym_add(beta_id, a_over_d), 0.5);
        SymLaurentPoly minus = sym_scale(sym_add(beta_id, sym_scale(a_over_d, -1.0)), 0.5);
        lp = sym_mul(lp, sym_pow(plus, powers[i]));
        hp = sym_mul(hp, sym_pow(minus, powers[i]));
    }
    fb.lp_row = lp.trimmed();
    fb.hp_row = hp.trimmed();
    return fb;
}

}  // namespace

int SamplingPattern::lowpass_count() const {
    return static_cast<int>(std::count(keep_lp.begin(), keep_lp.end(), true));
}

std::vector<int> SamplingPattern::lowpass_indices() const {
    std::vector<int> idx;
    for (int i = 0; i < size(); ++i)
        if (keep_lp[i]) idx.push_back(i);
    return idx;
}

std::vector<int> SamplingPattern::highpass_indices() const {
    std::vector<int> idx;
    for (int i = 0; i < size(); ++i)
        if (!keep_lp[i]) idx.push_back(i);
    return idx;
}

SamplingPattern default_pattern(int n) {
    if (n % 2 != 0) throw std::invalid_argument("default pattern needs even n");
    SamplingPattern sp;
    sp.keep_lp.resize(n);
    for (int i = 0; i < n; ++i) sp.keep_lp[i] = (i % 2 == 0);
    return sp;
}

FilterBank hgswt(const CirculantGraph& g, int k) {
    if (!g.connected) throw std::invalid_argument("hgswt requires a connected graph");
    if (k < 1) throw std::invalid_argument("power k must be positive");
    FilterBank fb = build_bank(g, {}, {k});
    fb.family = "hgswt";
    return fb;
}

FilterBank hgeswt(const CirculantGraph& g, const std::vector<ExponentParam>& alphas, int k) {
    return hgeswt(g, alphas, std::vector<int>(alphas.size(), k));
}

FilterBank hgeswt(const CirculantGraph& g, const std::vector<ExponentParam>& alphas,
                  const std::vector<int>& powers) {
    if (!g.connected) throw std::invalid_argument("hgeswt requires a connected graph");
    if (alphas.empty()) throw std::invalid_argument("hgeswt needs at least one alpha");
    if (powers.size() != alphas.size())
        throw std::invalid_argument("one power per alpha required");
    for (int k : powers)
        if (k < 1) throw std::invalid_argument("power k must be positive");
    FilterBank fb = build_bank(g, alphas, powers);
    fb.family = "hgeswt";
    return fb;
}

const char* condition_name(InvertibilityReport::Condition c) {
    switch (c) {
        case InvertibilityReport::Condition::KEven: return "k-even";
        case InvertibilityReport::Condition::SameSignF: return "same-sign-f";
        case InvertibilityReport::Condition::EigenRank: return "eigen-rank";
        case InvertibilityReport::Condition::NumericFallback: return "numeric-fallback";
    }
    return "unknown";
}

Eigen::VectorXd normalized_adjacency_spectrum(const CirculantGraph& g) {
    return dft_spectrum(adjacency_row(g), g.n).real() / g.degree;
}

InvertibilityReport check_invertibility(const FilterBank& fb, const SamplingPattern& sp) {
    const int n = fb.graph.n;
    InvertibilityReport rep;
    if (sp.size() != n) throw std::invalid_argument("pattern size mismatch");

    Eigen::VectorXd gamma = normalized_adjacency_spectrum(fb.graph);

    // Per eigenvalue: which of the two filter eigenvalues a beta collision
    // kills. A factor with beta = gamma_i zeroes the high-pass eigenvalue
    // prod (beta_n - gamma_i); beta = -gamma_i zeroes the low-pass one.
    std::vector<bool> colliding(n, false);
    std::vector<int> keep_cols, nonkeep_cols;
    bool dead_eigenvalue = false;
    for (int i = 0; i < n; ++i) {
        bool kills_hp = false, kills_lp = false;
        for (size_t m = 0; m < fb.betas.size(); ++m) {
            if (std::abs(fb.betas[m] - gamma[i]) <= kCollisionTol) kills_hp = true;
            if (std::abs(fb.betas[m] + gamma[i]) <= kCollisionTol) kills_lp = true;
        }
        if (!kills_hp && !kills_lp) continue;
        colliding[i] = true;
        if (kills_hp && kills_lp) {
            dead_eigenvalue = true;
        } else if (kills_hp) {
            keep_cols.push_back(i);
        } else {
            nonkeep_cols.push_back(i);
        }
    }
    for (int i = 0; i < n; ++i) {
        if (!colliding[i]) continue;
        int mult = 0;
        for (int j = 0; j < n; ++j)
            if (std::abs(std::abs(gamma[j]) - std::abs(gamma[i])) <= kCollisionTol) ++mult;
        double b = 0.0;
        for (double bb : fb.betas)
            if (std::abs(std::abs(bb) - std::abs(gamma[i])) <= kCollisionTol) b = bb;
        rep.colliding_betas.push_back({b, gamma[i], mult});
    }
    const bool have_collision = dead_eigenvalue || !keep_cols.empty() || !nonkeep_cols.empty();

    // Sign of f(gamma_i) = prod_n (beta_n^2 - gamma_i^2)^{k_n} over the
    // non-colliding spectrum.
    bool all_pos = true, all_neg = true, have_noncolliding = false;
    for (int i = 0; i < n; ++i) {
        if (colliding[i]) continue;
        have_noncolliding = true;
        double f = 1.0;
        for (size_t m = 0; m < fb.betas.size(); ++m)
            f *= std::pow(fb.betas[m] * fb.betas[m] - gamma[i] * gamma[i], fb.powers[m]);
        all_pos = all_pos && f > 0.0;
        all_neg = all_neg && f < 0.0;
    }
    const bool k_even = std::all_of(fb.powers.begin(), fb.powers.end(),
                                    [](int k) { return k % 2 == 0; });
    const bool sign_ok = !have_noncolliding || all_pos || all_neg;

    std::ostringstream detail;
    if (!have_collision) {
        if (k_even) {
            rep.invertible = true;
            rep.condition_used = InvertibilityReport::Condition::KEven;
            detail << "no |beta| = |gamma| collision; all powers even";
        } else if (sign_ok) {
            rep.invertible = true;
            rep.condition_used = InvertibilityReport::Condition::SameSignF;
            detail << "no collision; f(gamma) has constant sign over the spectrum";
        }
        if (k_even || sign_ok) {
            rep.detail = detail.str();
            return rep;
        }
    } else {
        auto lp_rows = sp.lowpass_indices();
        auto hp_rows = sp.highpass_indices();
        if (dead_eigenvalue) {
            // Some eigenvector is annihilated by both filters (e.g. beta = 0
            // with singular A/d): no pattern can recover it.
            rep.condition_used = InvertibilityReport::Condition::EigenRank;
            rep.invertible = false;
            rep.detail = "an eigenvector is annihilated by both filters; "
                         "not invertible for any pattern";
            return rep;
        }
        // Joint rank tests: eigenvectors surviving only in the low-pass
        // branch must stay independent on the retained low-pass rows, and
        // dually for the high-pass side. Failure is decisive for any sign
        // configuration; success certifies invertibility once the remaining
        // spectrum is sign-clean, or for the alternating pattern (DFT
        // half-grid column argument).
        bool lp_full = sampled_rank_full(n, keep_cols, lp_rows);
        bool hp_full = sampled_rank_full(n, nonkeep_cols, hp_rows);
        detail << keep_cols.size() << " low-pass-only and " << nonkeep_cols.size()
               << " high-pass-only colliding eigenvector(s); rank tests "
               << (lp_full ? "passed" : "FAILED") << "/" << (hp_full ? "passed" : "FAILED");
        if (!lp_full || !hp_full) {
            rep.condition_used = InvertibilityReport::Condition::EigenRank;
            rep.invertible = false;
            rep.detail = detail.str();
            return rep;
        }
        bool alternating = n % 2 == 0;
        for (int i = 0; i < n && alternating; i += 2)
            alternating = sp.keep_lp[i] == sp.keep_lp[0] && sp.keep_lp[i + 1] == !sp.keep_lp[0];
        if (k_even || sign_ok || alternating) {
            rep.condition_used = InvertibilityReport::Condition::EigenRank;
            rep.invertible = true;
            rep.detail = detail.str();
            return rep;
        }
    }

    // Inconclusive analytically (mixed-sign f with odd power): numeric rank.
    rep.condition_used = InvertibilityReport::Condition::NumericFallback;
    Eigen::MatrixXd m = analysis_matrix(fb, sp);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    double smin = svd.singularValues().minCoeff();
    double smax = svd.singularValues().maxCoeff();
    rep.invertible = smin > 1e-10 * std::max(1.0, smax);
    detail << "dense rank test: sigma_min=" << smin << ", sigma_max=" << smax;
    rep.detail = detail.str();
    return rep;
}

GraphSignal analyze(const FilterBank& fb, const SamplingPattern& sp, const GraphSignal& x) {
    const int n = fb.graph.n;
    if (x.size() != n || sp.size() != n)
        throw std::invalid_argument("signal/pattern size mismatch");
    GraphSignal lp = apply_circulant(fb.lp_row, x);
    GraphSignal hp = apply_circulant(fb.hp_row, x);
    Eigen::VectorXcd w(n);
    for (int i = 0; i < n; ++i) w[i] = sp.keep_lp[i] ? lp.values[i] : hp.values[i];
    return GraphSignal(std::move(w), x.label);
}

Eigen::MatrixXd analysis_matrix(const FilterBank& fb, const SamplingPattern& sp) {
    const int n = fb.graph.n;
    Eigen::VectorXd lp = expand_row(fb.lp_row, n);
    Eigen::VectorXd hp = expand_row(fb.hp_row, n);
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd& row = sp.keep_lp[i] ? lp : hp;
        for (int j = 0; j < n; ++j) m(i, j) = row[(j - i + n) % n];
    }
    return m;
}

Inverter::Inverter(const FilterBank& fb, const SamplingPattern& sp) {
    Eigen::MatrixXd m = analysis_matrix(fb, sp);
    lu_.compute(m);
    rcond_ = lu_.rcond();
    if (!(rcond_ > 1e-13)) throw SingularSystemError(rcond_);
}

GraphSignal Inverter::apply(const GraphSignal& w) const {
    Eigen::VectorXd re = lu_.solve(w.values.real().eval());
    Eigen::VectorXd im = lu_.solve(w.values.imag().eval());
    Eigen::VectorXcd x(re.size());
    x.real() = re;
    x.imag() = im;
    return GraphSignal(std::move(x), w.label);
}

GraphSignal invert(const FilterBank& fb, const SamplingPattern& sp, const GraphSignal& w) {
    return Inverter(fb, sp).apply(w);
}

std::vector<std::pair<Complex, int>> strang_fix_multiplicity(const FilterBank& fb) {
    std::vector<std::pair<Complex, int>> out;
    if (fb.alphas.empty()) {
        Complex z0(-1.0, 0.0);
        out.emplace_back(z0, root_multiplicity(fb.lp_row, z0));
        return out;
    }
    for (const auto& a : fb.alphas) {
        Complex e = a.mode == ExponentParam::Mode::Trigonometric
                        ? std::exp(Complex(0.0, a.alpha))
                        : Complex(std::exp(a.alpha), 0.0);
        for (Complex z0 : {-e, -std::conj(e) / std::norm(e)}) {
            bool dup = false;
            for (const auto& p : out) dup = dup || std::abs(p.first - z0) < 1e-12;
            if (!dup) out.emplace_back(z0, root_multiplicity(fb.lp_row, z0));
        }
    }
    return out;
}

bool lowpass_invertible(const FilterBank& fb) {
    Eigen::VectorXd gamma = normalized_adjacency_spectrum(fb.graph);
    const bool bip = fb.graph.bipartite();
    for (double b : fb.betas)
        for (int i = 0; i < gamma.size(); ++i) {
            if (std::abs(b + gamma[i]) <= kCollisionTol) return false;
            if (bip && std::abs(std::abs(b) - std::abs(gamma[i])) <= kCollisionTol) return false;
        }
    return true;
}

}  // namespace gwt
