#include "gwt/multiscale.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>

#include "gwt/complementary.hpp"

namespace gwt {

namespace {

void require_halvable(const CirculantGraph& g) {
    if (g.n % 2 != 0) throw std::invalid_argument("coarsening needs an even node count");
    bool has_one = false;
    for (const auto& gen : g.gens) has_one = has_one || gen.s == 1;
    if (!has_one) throw std::invalid_argument("downsampling requires hop 1 in the generating set");
}

}  // namespace

CirculantGraph coarsen(const CirculantGraph& g, CoarseningStrategy strategy) {
    require_halvable(g);
    const int half = g.n / 2;
    if (half == 1) {
        CirculantGraph trivial;
        trivial.n = 1;
        trivial.connected = true;
        return trivial;
    }
    std::map<int, double> w;
    if (strategy == CoarseningStrategy::KeepExisting) {
        for (const auto& gen : g.gens)
            if (gen.s % 2 == 0) w[gen.s / 2] += gen.w;
        if (!w.count(1)) w[1] += 1.0;
    } else {
        for (const auto& gen : g.gens) {
            int r = gen.s % half;
            int s = std::min(r, half - r);
            if (s == 0) {
                std::cerr << "warning: generator " << gen.s
                          << " folds to 0 on the coarse graph; dropped\n";
                continue;
            }
            w[s] += gen.w;
        }
    }
    std::vector<Generator> gens;
    for (auto& [s, weight] : w) gens.push_back({s, weight});
    return make_circulant(half, gens);
}

Eigen::MatrixXd kron_reduce(const Eigen::MatrixXd& laplacian, const std::vector<int>& keep) {
    const int n = static_cast<int>(laplacian.rows());
    std::vector<bool> kept(n, false);
    for (int i : keep) kept[i] = true;
    std::vector<int> rest;
    for (int i = 0; i < n; ++i)
        if (!kept[i]) rest.push_back(i);
    auto sub = [&](const std::vector<int>& r, const std::vector<int>& c) {
        Eigen::MatrixXd m(r.size(), c.size());
        for (size_t i = 0; i < r.size(); ++i)
            for (size_t j = 0; j < c.size(); ++j) m(i, j) = laplacian(r[i], c[j]);
        return m;
    };
    Eigen::MatrixXd a = sub(keep, keep);
    if (rest.empty()) return a;
    Eigen::MatrixXd b = sub(keep, rest);
    Eigen::MatrixXd d = sub(rest, rest);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(d);
    if (!lu.isInvertible())
        throw std::runtime_error("singular interior block in Kron reduction");
    return a - b * lu.solve(b.transpose());
}

Eigen::MatrixXd kron_reduce(const CirculantGraph& g) {
    Eigen::MatrixXd lap = circulant_from_row(expand_row(laplacian_row(g), g.n));
    std::vector<int> keep;
    for (int i = 0; i < g.n; i += 2) keep.push_back(i);
    return kron_reduce(lap, keep);
}

BankBuilder spline_builder(int k) {
    return [k](const CirculantGraph& g, int) { return hgswt(g, k); };
}

namespace {
std::vector<ExponentParam> scaled(std::vector<ExponentParam> alphas, int level) {
    for (auto& a : alphas) a.alpha *= std::pow(2.0, level);
    return alphas;
}
}  // namespace

BankBuilder espline_builder(std::vector<ExponentParam> alphas, int k) {
    return [alphas = std::move(alphas), k](const CirculantGraph& g, int level) {
        return hgeswt(g, scaled(alphas, level), k);
    };
}

BankBuilder complementary_spline_builder(int k, bool dual_moments) {
    return [k, dual_moments](const CirculantGraph& g, int) {
        return hcgswt(g, k, dual_moments);
    };
}

BankBuilder complementary_espline_builder(std::vector<ExponentParam> alphas, int k,
                                          bool dual_moments) {
    return [alphas = std::move(alphas), k, dual_moments](const CirculantGraph& g, int level) {
        return hcgeswt(g, scaled(alphas, level), k, dual_moments);
    };
}

int Pyramid::stored_count() const {
    int total = static_cast<int>(root_lp.size());
    for (const auto& l : levels) total += static_cast<int>(l.hp_coeffs.size());
    return total;
}

Pyramid pyramid_analyze(const CirculantGraph& g, const BankBuilder& builder,
                        CoarseningStrategy strategy, const GraphSignal& x, int levels) {
    if (levels < 1) throw std::invalid_argument("need at least one level");
    if (x.size() != g.n) throw std::invalid_argument("signal size mismatch");
    Pyramid p;
    CirculantGraph cur = g;
    GraphSignal sig = x;
    for (int lvl = 0; lvl < levels; ++lvl) {
        if (cur.n % 2 != 0)
            throw std::invalid_argument("odd intermediate graph size at level " +
                                        std::to_string(lvl));
        PyramidLevel pl;
        pl.graph = cur;
        pl.pattern = default_pattern(cur.n);
        pl.bank = builder(cur, lvl);
        auto rep = check_invertibility(pl.bank, pl.pattern);
        if (!rep.invertible)
            throw std::runtime_error("non-invertible bank at level " + std::to_string(lvl) +
                                     ": " + rep.detail);
        GraphSignal w = analyze(pl.bank, pl.pattern, sig);
        pl.hp_nodes = pl.pattern.highpass_indices();
        pl.hp_coeffs.resize(pl.hp_nodes.size());
        for (size_t i = 0; i < pl.hp_nodes.size(); ++i) pl.hp_coeffs[i] = w.values[pl.hp_nodes[i]];
        Eigen::VectorXcd lp(cur.n / 2);
        for (int i = 0; i < cur.n / 2; ++i) lp[i] = w.values[2 * i];
        p.levels.push_back(std::move(pl));
        sig = GraphSignal(std::move(lp), x.label);
        cur = coarsen(cur, strategy);
    }
    p.root_graph = cur;
    p.root_lp = std::move(sig);
    return p;
}

GraphSignal pyramid_synthesize(const Pyramid& p) {
    GraphSignal sig = p.root_lp;
    for (auto it = p.levels.rbegin(); it != p.levels.rend(); ++it) {
        const PyramidLevel& pl = *it;
        Eigen::VectorXcd w(pl.graph.n);
        for (int i = 0; i < pl.graph.n / 2; ++i) w[2 * i] = sig.values[i];
        for (size_t i = 0; i < pl.hp_nodes.size(); ++i) w[pl.hp_nodes[i]] = pl.hp_coeffs[i];
        GraphSignal ws(std::move(w), sig.label);
        sig = (pl.bank.syn_lp_row && pl.bank.syn_hp_row) ? synthesize(pl.bank, pl.pattern, ws)
                                                         : invert(pl.bank, pl.pattern, ws);
    }
    return sig;
}

Decomposition decompose(const CirculantGraph& g, const BankBuilder& builder,
                        CoarseningStrategy strategy, const GraphSignal& x, int levels) {
    Decomposition d;
    d.pyramid = pyramid_analyze(g, builder, strategy, x, levels);
    d.input = x;
    const int n = g.n;
    d.analysis.resize(n, n);
    int row_at = 0;
    // carry maps original-signal coordinates to the current low-pass band
    Eigen::MatrixXd carry = Eigen::MatrixXd::Identity(n, n);
    for (const auto& pl : d.pyramid.levels) {
        Eigen::MatrixXd t = analysis_matrix(pl.bank, pl.pattern) * carry;
        for (int i : pl.hp_nodes) d.analysis.row(row_at++) = t.row(i);
        Eigen::MatrixXd next(pl.graph.n / 2, n);
        for (int i = 0; i < pl.graph.n / 2; ++i) next.row(i) = t.row(2 * i);
        carry = std::move(next);
    }
    for (int i = 0; i < carry.rows(); ++i) d.analysis.row(row_at++) = carry.row(i);
    d.atom_norms = d.analysis.rowwise().norm();
    d.coeffs = d.analysis * x.values;
    return d;
}

NlaResult nla(const Decomposition& d, const std::vector<int>& k_list) {
    const int n = static_cast<int>(d.coeffs.size());
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    Eigen::VectorXd score(n);
    for (int i = 0; i < n; ++i) score[i] = std::abs(d.coeffs[i]) / d.atom_norms[i];
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return score[a] > score[b]; });

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(d.analysis);
    const double nx = d.input.values.squaredNorm();
    NlaResult out;
    for (int k : k_list) {
        if (k < 0 || k > n) throw std::invalid_argument("coefficient count out of range");
        Eigen::VectorXcd w = Eigen::VectorXcd::Zero(n);
        for (int i = 0; i < k; ++i) w[order[i]] = d.coeffs[order[i]];
        Eigen::VectorXcd rec(n);
        rec.real() = lu.solve(w.real().eval());
        rec.imag() = lu.solve(w.imag().eval());
        double err = (rec - d.input.values).squaredNorm();
        double snr = 10.0 * std::log10(nx / std::max(err, nx * 1e-30));
        out.curve.emplace_back(k, snr);
    }
    return out;
}

}  // namespace gwt
