#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gwt/complementary.hpp"
#include "gwt/multiscale.hpp"

using namespace gwt;

namespace {

std::mt19937 rng(4242);

GraphSignal random_signal(int n) {
    std::normal_distribution<double> d;
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v(i) = Complex(d(rng), d(rng));
    return GraphSignal(std::move(v));
}

}  // namespace

TEST_CASE("coarsen keep-existing") {
    auto g = make_circulant(16, {{1, 1.0}, {3, 1.0}});
    auto c = coarsen(g, CoarseningStrategy::KeepExisting);
    CHECK(c.n == 8);
    REQUIRE(c.gens.size() == 1);
    CHECK(c.gens[0].s == 1);

    auto g2 = make_circulant(16, {{1, 1.0}, {2, 0.5}, {4, 0.25}});
    auto c2 = coarsen(g2, CoarseningStrategy::KeepExisting);
    CHECK(c2.n == 8);
    REQUIRE(c2.gens.size() == 2);
    CHECK(c2.gens[0].s == 1);
    CHECK(c2.gens[0].w == doctest::Approx(0.5));  // carried from s=2, no unit insertion
    CHECK(c2.gens[1].s == 2);
    CHECK(c2.gens[1].w == doctest::Approx(0.25));
}

TEST_CASE("coarsen preserve-set") {
    auto g = make_circulant(16, {{1, 1.0}, {2, 1.0}});
    auto c = coarsen(g, CoarseningStrategy::PreserveSet);
    CHECK(c.n == 8);
    REQUIRE(c.gens.size() == 2);
    CHECK(c.gens[0].s == 1);
    CHECK(c.gens[1].s == 2);

    // hop 3 on 8 nodes folds to min(3, 1) = 1 on the 4-node coarse graph
    auto g2 = make_circulant(8, {{1, 1.0}, {3, 0.5}});
    auto c2 = coarsen(g2, CoarseningStrategy::PreserveSet);
    CHECK(c2.n == 4);
    REQUIRE(c2.gens.size() == 1);
    CHECK(c2.gens[0].s == 1);
    CHECK(c2.gens[0].w == doctest::Approx(1.5));
}

TEST_CASE("coarsen preconditions") {
    CHECK_THROWS(coarsen(make_circulant(7, {{1, 1.0}}), CoarseningStrategy::PreserveSet));
    CHECK_THROWS(coarsen(make_circulant(8, {{2, 1.0}}), CoarseningStrategy::PreserveSet));
}

TEST_CASE("kron reduction of the 4-cycle") {
    auto g = make_circulant(4, {{1, 1.0}});
    Eigen::MatrixXd r = kron_reduce(g);
    REQUIRE(r.rows() == 2);
    CHECK(r(0, 0) == doctest::Approx(1.0));
    CHECK(r(0, 1) == doctest::Approx(-1.0));
    CHECK(r(1, 0) == doctest::Approx(-1.0));
    CHECK(r(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("kron reduction keeps Laplacian structure") {
    auto g = make_circulant(12, {{1, 1.0}, {3, 0.5}});
    Eigen::MatrixXd r = kron_reduce(g);
    CHECK(r.rowwise().sum().cwiseAbs().maxCoeff() < 1e-10);
    for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < r.cols(); ++j)
            if (i != j) CHECK(r(i, j) <= 1e-10);
}

TEST_CASE("constant signal pyramid") {
    auto g = make_circulant(32, {{1, 1.0}});
    GraphSignal ones(Eigen::VectorXcd::Ones(32));
    auto p = pyramid_analyze(g, spline_builder(1), CoarseningStrategy::PreserveSet, ones, 3);
    CHECK(p.stored_count() == 32);
    for (const auto& l : p.levels) CHECK(l.hp_coeffs.cwiseAbs().maxCoeff() < 1e-12);
    Eigen::VectorXcd root = p.root_lp.values;
    CHECK((root.array() - root[0]).abs().maxCoeff() < 1e-12);
}

TEST_CASE("ramp signal high-pass sparsity") {
    int n = 64;
    auto g = make_circulant(n, {{1, 1.0}});
    auto x = poly_signal(n, {{0, {0.0, 1.0}}});
    auto p = pyramid_analyze(g, spline_builder(1), CoarseningStrategy::PreserveSet, x, 2);
    for (const auto& l : p.levels) {
        int nz = 0;
        for (int i = 0; i < l.hp_coeffs.size(); ++i)
            if (std::abs(l.hp_coeffs[i]) > 1e-9) ++nz;
        CHECK(nz <= 2);  // wrap boundary only
    }
}

TEST_CASE("pyramid round trips") {
    for (auto strat : {CoarseningStrategy::KeepExisting, CoarseningStrategy::PreserveSet}) {
        for (int k : {1, 2}) {
            auto g = make_circulant(32, {{1, 1.0}, {2, 1.0}});
            auto x = random_signal(32);
            auto p = pyramid_analyze(g, spline_builder(k), strat, x, 3);
            auto back = pyramid_synthesize(p);
            CHECK((back.values - x.values).cwiseAbs().maxCoeff() /
                      x.values.cwiseAbs().maxCoeff() <
                  1e-7);
        }
    }
}

TEST_CASE("complementary pyramid round trip uses FIR synthesis") {
    auto g = make_circulant(32, {{1, 1.0}});
    auto x = random_signal(32);
    auto p = pyramid_analyze(g, complementary_spline_builder(1), CoarseningStrategy::PreserveSet,
                             x, 2);
    for (const auto& l : p.levels) CHECK(l.bank.syn_lp_row.has_value());
    auto back = pyramid_synthesize(p);
    CHECK((back.values - x.values).cwiseAbs().maxCoeff() / x.values.cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("decompose matches pyramid coefficients") {
    auto g = make_circulant(16, {{1, 1.0}, {2, 1.0}});
    auto x = random_signal(16);
    auto d = decompose(g, spline_builder(2), CoarseningStrategy::PreserveSet, x, 2);
    int at = 0;
    for (const auto& l : d.pyramid.levels)
        for (int i = 0; i < l.hp_coeffs.size(); ++i)
            CHECK(std::abs(d.coeffs[at++] - l.hp_coeffs[i]) < 1e-10);
    for (int i = 0; i < d.pyramid.root_lp.size(); ++i)
        CHECK(std::abs(d.coeffs[at++] - d.pyramid.root_lp.values[i]) < 1e-10);
    CHECK(at == 16);
}

TEST_CASE("matched e-spline pyramid kills level-1 high-pass") {
    int n = 32;
    auto g = make_circulant(n, {{1, 1.0}, {2, 1.0}});
    double alpha = 2 * std::numbers::pi / n;
    ExponentParam p{ExponentParam::Mode::Trigonometric, alpha};
    auto x = exp_poly_signal(n, p, {1.0});
    auto pyr = pyramid_analyze(g, espline_builder({p}, 1), CoarseningStrategy::PreserveSet, x, 2);
    CHECK(pyr.levels[0].hp_coeffs.cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("nla") {
    int n = 64;
    auto g = make_circulant(n, {{1, 1.0}, {2, 1.0}});
    auto x = random_signal(n);
    auto d = decompose(g, spline_builder(1), CoarseningStrategy::PreserveSet, x, 2);

    auto res = nla(d, {0, 8, 16, 32, 64});
    REQUIRE(res.curve.size() == 5);
    CHECK(res.curve[0].second == doctest::Approx(0.0).epsilon(1e-6));
    for (size_t i = 1; i < res.curve.size(); ++i)
        CHECK(res.curve[i].second >= res.curve[i - 1].second - 1e-9);
    CHECK(res.curve.back().second >= 150.0);
}

TEST_CASE("nla on a matched pair of sinusoids") {
    int n = 64;
    auto g = make_circulant(n, {{1, 1.0}, {2, 1.0}});
    double a1 = 2 * std::numbers::pi / n, a2 = 2 * std::numbers::pi * 5 / n;
    Eigen::VectorXcd v(n);
    for (int j = 0; j < n; ++j)
        v[j] = std::exp(Complex(0, a1 * j)) + std::exp(Complex(0, a2 * j));
    std::vector<ExponentParam> as = {{ExponentParam::Mode::Trigonometric, a1},
                                     {ExponentParam::Mode::Trigonometric, a2}};
    auto d = decompose(g, espline_builder(as, 1), CoarseningStrategy::PreserveSet,
                       GraphSignal(v), 2);
    int nonzero = 0;
    for (int i = 0; i < d.coeffs.size(); ++i)
        if (std::abs(d.coeffs[i]) / d.atom_norms[i] > 1e-9) ++nonzero;
    auto res = nla(d, {nonzero});
    CHECK(res.curve[0].second >= 100.0);
    CHECK(nonzero < n / 2);
}
