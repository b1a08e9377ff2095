#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "gwt/circulant.hpp"

using namespace gwt;

namespace {

Eigen::MatrixXd dense_laplacian(const CirculantGraph& g) {
    Eigen::MatrixXd a = circulant_from_row(expand_row(adjacency_row(g), g.n));
    Eigen::MatrixXd l = -a;
    for (int i = 0; i < g.n; ++i) l(i, i) = a.row(i).sum();
    return l;
}

}  // namespace

TEST_CASE("make_circulant basic graphs") {
    auto c8 = make_circulant(8, {{1, 1.0}});
    CHECK(c8.degree == doctest::Approx(2.0));
    CHECK(c8.connected);

    auto ring = make_circulant(16, {{1, 1.0}, {2, 1.0}});
    CHECK(ring.degree == doctest::Approx(4.0));
    CHECK(ring.connected);

    auto dis = make_circulant(6, {{2, 1.0}});
    CHECK_FALSE(dis.connected);

    auto k4 = make_circulant(4, {{1, 1.0}, {2, 1.0}});
    CHECK(k4.degree == doctest::Approx(3.0));
}

TEST_CASE("make_circulant validation") {
    CHECK_THROWS(make_circulant(1, {{1, 1.0}}));
    CHECK_THROWS(make_circulant(8, {{0, 1.0}}));
    CHECK_THROWS(make_circulant(8, {{5, 1.0}}));
    CHECK_THROWS(make_circulant(8, {{1, 1.0}, {1, 2.0}}));
    CHECK_THROWS(make_circulant(8, {{1, -1.0}}));
    CHECK_THROWS(make_circulant(8, {{1, 0.0}}));
}

TEST_CASE("bipartite detection") {
    CHECK(make_circulant(8, {{1, 1.0}}).bipartite());
    CHECK(make_circulant(16, {{1, 1.0}, {3, 1.0}}).bipartite());
    CHECK_FALSE(make_circulant(16, {{1, 1.0}, {2, 1.0}}).bipartite());
    CHECK_FALSE(make_circulant(7, {{1, 1.0}}).bipartite());
}

TEST_CASE("laplacian_row values") {
    auto c8 = make_circulant(8, {{1, 1.0}});
    auto l = laplacian_row(c8);
    REQUIRE(l.half_support() == 1);
    CHECK(l.c[0] == doctest::Approx(2.0));
    CHECK(l.c[1] == doctest::Approx(-1.0));

    auto g = make_circulant(16, {{1, 1.0}, {2, 1.0}});
    auto l2 = laplacian_row(g);
    REQUIRE(l2.half_support() == 2);
    CHECK(l2.c[0] == doctest::Approx(4.0));
    CHECK(l2.c[1] == doctest::Approx(-1.0));
    CHECK(l2.c[2] == doctest::Approx(-1.0));
}

TEST_CASE("laplacian spectrum of the 4-cycle") {
    SymLaurentPoly l({2.0, -1.0});
    auto spec = dft_spectrum(l, 4);
    CHECK(spec(0).real() == doctest::Approx(0.0));
    CHECK(spec(1).real() == doctest::Approx(2.0));
    CHECK(spec(2).real() == doctest::Approx(4.0));
    CHECK(spec(3).real() == doctest::Approx(2.0));
}

TEST_CASE("spectrum matches dense eigenvalues as a multiset") {
    for (auto gens : {std::vector<Generator>{{1, 1.0}},
                      std::vector<Generator>{{1, 1.0}, {2, 0.5}},
                      std::vector<Generator>{{1, 2.0}, {3, 1.0}, {6, 0.25}}}) {
        auto g = make_circulant(12, gens);
        auto l = laplacian_row(g);
        Eigen::VectorXcd spec = dft_spectrum(l, g.n);
        Eigen::VectorXd ours = spec.real();
        std::sort(ours.begin(), ours.end());

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_laplacian(g));
        Eigen::VectorXd ref = es.eigenvalues();
        CHECK((ours - ref).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(spec.imag().cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("half generator n/2 counted once") {
    auto k4 = make_circulant(4, {{1, 1.0}, {2, 1.0}});
    auto row = expand_row(adjacency_row(k4), 4);
    CHECK(row(0) == doctest::Approx(0.0));
    CHECK(row(1) == doctest::Approx(1.0));
    CHECK(row(2) == doctest::Approx(1.0));
    CHECK(row(3) == doctest::Approx(1.0));
    auto l = laplacian_row(k4);
    CHECK(std::abs(l.eval(1.0)) < 1e-12);
}

TEST_CASE("e_laplacian_row") {
    auto c8 = make_circulant(8, {{1, 1.0}});
    ExponentParam zero{ExponentParam::Mode::Trigonometric, 0.0};
    auto l0 = e_laplacian_row(c8, zero);
    CHECK(l0.c[0] == doctest::Approx(2.0));
    CHECK(l0.c[1] == doctest::Approx(-1.0));

    ExponentParam a{ExponentParam::Mode::Trigonometric, 2 * std::numbers::pi / 16};
    auto la = e_laplacian_row(c8, a);
    CHECK(la.c[0] == doctest::Approx(2 * std::cos(2 * std::numbers::pi / 16)));
    CHECK(la.c[1] == doctest::Approx(-1.0));

    ExponentParam h{ExponentParam::Mode::Hyperbolic, 0.5};
    CHECK(e_degree(c8, h) == doctest::Approx(2 * std::cosh(0.5)));

    ExponentParam deg{ExponentParam::Mode::Trigonometric, std::numbers::pi / 2};
    CHECK(std::abs(e_degree(c8, deg)) < 1e-12);
}

TEST_CASE("apply_circulant against dense multiplication") {
    auto g = make_circulant(16, {{1, 1.0}, {2, 0.5}});
    auto l = laplacian_row(g);
    Eigen::MatrixXd dense = circulant_from_row(expand_row(l, g.n));

    Eigen::VectorXcd x = Eigen::VectorXcd::Random(16);
    GraphSignal y = apply_circulant(l, GraphSignal(x));
    Eigen::VectorXcd ref = dense * x;
    CHECK((y.values - ref).cwiseAbs().maxCoeff() / ref.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("laplacian annihilates constants and ramp interiors") {
    auto c8 = make_circulant(8, {{1, 1.0}});
    auto l = laplacian_row(c8);

    GraphSignal ones(Eigen::VectorXcd::Ones(8));
    CHECK(apply_circulant(l, ones).values.cwiseAbs().maxCoeff() < 1e-12);

    GraphSignal ramp = poly_signal(8, {{0, {0.0, 1.0}}});
    auto y = apply_circulant(l, ramp).values;
    for (int i = 1; i <= 6; ++i) CHECK(std::abs(y(i)) < 1e-12);
    CHECK(std::abs(y(0)) > 0.5);
    CHECK(std::abs(y(7)) > 0.5);
}

TEST_CASE("identity row is a no-op") {
    SymLaurentPoly id({1.0});
    Eigen::VectorXcd x = Eigen::VectorXcd::Random(10);
    auto y = apply_circulant(id, GraphSignal(x));
    CHECK((y.values - x).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("poly_signal pieces") {
    auto ramp = poly_signal(8, {{0, {0.0, 1.0}}});
    for (int j = 0; j < 8; ++j) CHECK(ramp.values(j).real() == doctest::Approx(double(j)));

    auto split = poly_signal(8, {{0, {0.0, 1.0}}, {4, {10.0}}});
    std::vector<double> want = {0, 1, 2, 3, 10, 10, 10, 10};
    for (int j = 0; j < 8; ++j) CHECK(split.values(j).real() == doctest::Approx(want[j]));

    CHECK_THROWS(poly_signal(8, {{2, {1.0}}}));
    CHECK_THROWS(poly_signal(8, {{0, {1.0}}, {6, {1.0}}, {4, {1.0}}}));
}

TEST_CASE("exp_poly_signal") {
    double alpha = 2 * std::numbers::pi / 16;
    auto e = exp_poly_signal(16, {ExponentParam::Mode::Trigonometric, alpha}, {1.0});
    for (int j = 0; j < 16; ++j) {
        CHECK(std::abs(e.values(j) - std::exp(Complex(0, alpha * j))) < 1e-13);
    }
    auto r = exp_poly_signal(16, {ExponentParam::Mode::Trigonometric, 0.0}, {0.0, 1.0});
    for (int j = 0; j < 16; ++j) CHECK(r.values(j).real() == doctest::Approx(double(j)));

    auto jp = exp_poly_signal(8, {ExponentParam::Mode::Trigonometric, std::numbers::pi / 4}, {0.0, 1.0});
    for (int j = 0; j < 8; ++j) {
        CHECK(std::abs(jp.values(j) - double(j) * std::exp(Complex(0, std::numbers::pi / 4 * j))) < 1e-12);
    }
}

TEST_CASE("exponential on the DFT grid is annihilated globally") {
    auto c16 = make_circulant(16, {{1, 1.0}});
    double alpha = 2 * std::numbers::pi * 3 / 16;
    ExponentParam p{ExponentParam::Mode::Trigonometric, alpha};
    auto row = e_laplacian_row(c16, p);
    auto x = exp_poly_signal(16, p, {1.0});
    CHECK(apply_circulant(row, x).values.cwiseAbs().maxCoeff() < 1e-12);

    ExponentParam off{ExponentParam::Mode::Trigonometric, 0.713};
    auto row2 = e_laplacian_row(c16, off);
    auto x2 = exp_poly_signal(16, off, {1.0});
    auto y2 = apply_circulant(row2, x2).values;
    for (int i = 1; i <= 14; ++i) CHECK(std::abs(y2(i)) < 1e-12);
    CHECK(y2.cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("root_multiplicity") {
    CHECK(root_multiplicity(SymLaurentPoly({2.0, -1.0}), 1.0) == 2);
    CHECK(root_multiplicity(SymLaurentPoly({2.0, 1.0}), -1.0) == 2);
    CHECK(root_multiplicity(SymLaurentPoly({4.0, -1.0, -1.0}), -1.0) == 0);
    CHECK(root_multiplicity(SymLaurentPoly({4.0, -1.0, -1.0}), 1.0) == 2);

    auto sq = sym_pow(SymLaurentPoly({2.0, -1.0}), 3);
    CHECK(root_multiplicity(sq, 1.0) == 6);
}

TEST_CASE("sym arithmetic") {
    SymLaurentPoly a({1.0, 2.0});
    SymLaurentPoly b({0.0, 0.0, 3.0});
    auto s = sym_add(a, b);
    CHECK(s.c == std::vector<double>{1.0, 2.0, 3.0});

    auto m = sym_mul(a, a);
    // (1 + 2z + 2z^-1)^2 = 9 + 4(z+z^-1) + 4(z^2+z^-2)
    CHECK(m.c[0] == doctest::Approx(9.0));
    CHECK(m.c[1] == doctest::Approx(4.0));
    CHECK(m.c[2] == doctest::Approx(4.0));

    auto mod = sym_modulate(b);
    CHECK(mod.c[2] == doctest::Approx(3.0));
    auto mod2 = sym_modulate(a);
    CHECK(mod2.c[1] == doctest::Approx(-2.0));
}

TEST_CASE("expand_row folds long supports modulo n") {
    SymLaurentPoly p({0.0, 0.0, 0.0, 0.0, 0.0, 1.0});  // z^5 + z^-5 on n=8
    auto row = expand_row(p, 8);
    CHECK(row(3) == doctest::Approx(1.0));
    CHECK(row(5) == doctest::Approx(1.0));
    auto spec = dft_spectrum(p, 8);
    auto dense = circulant_from_row(row);
    Eigen::VectorXcd x = Eigen::VectorXcd::Random(8);
    auto y = apply_circulant(p, GraphSignal(x));
    CHECK((y.values - dense * x).cwiseAbs().maxCoeff() < 1e-12);
    (void)spec;
}
