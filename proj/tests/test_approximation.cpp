#include <doctest.h>

#include <cmath>
#include <random>

#include "gwt/approximation.hpp"
#include "gwt/products.hpp"

using namespace gwt;

namespace {

std::mt19937 rng(5151);

Eigen::MatrixXd random_adjacency(int n, double density) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (u(rng) < density) a(i, j) = a(j, i) = u(rng) + 0.1;
    return a;
}

Eigen::MatrixXd dense_circulant(const CirculantGraph& g) {
    return circulant_from_row(expand_row(adjacency_row(g), g.n));
}

Eigen::MatrixXd random_circulant_matrix(int n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Eigen::VectorXd row = Eigen::VectorXd::Zero(n);
    for (int s = 1; s <= n / 2; ++s) {
        double w = u(rng);
        row[s] = w;
        row[n - s] = w;
    }
    return circulant_from_row(row);
}

}  // namespace

TEST_CASE("dense graph validation") {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
    a(0, 1) = 1.0;
    CHECK_THROWS_AS(make_dense_graph(a), std::invalid_argument);  // asymmetric
    a(1, 0) = 1.0;
    CHECK_NOTHROW(make_dense_graph(a));
    a(2, 2) = 0.5;
    CHECK_THROWS_AS(make_dense_graph(a), std::invalid_argument);  // self-loop
}

TEST_CASE("nearest circulant is a fixed point on circulant input") {
    auto g = make_circulant(10, {{1, 1.0}, {3, 0.5}});
    DenseGraph d = make_dense_graph(dense_circulant(g));
    CirculantGraph back = nearest_circulant(d, identity_relabel(10));
    REQUIRE(back.gens.size() == 2);
    CHECK(back.gens[0].s == 1);
    CHECK(back.gens[0].w == doctest::Approx(1.0));
    CHECK(back.gens[1].s == 3);
    CHECK(back.gens[1].w == doctest::Approx(0.5));
}

TEST_CASE("wrapped diagonal averaging") {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
    a(0, 1) = a(1, 0) = 2.0;
    a(1, 2) = a(2, 1) = 4.0;
    a(2, 0) = a(0, 2) = 0.0;
    CirculantGraph g = nearest_circulant(make_dense_graph(a), identity_relabel(3));
    REQUIRE(g.gens.size() == 1);
    CHECK(g.gens[0].s == 1);
    CHECK(g.gens[0].w == doctest::Approx(2.0));
}

TEST_CASE("projection optimality and orthogonality") {
    int n = 12;
    DenseGraph d = make_dense_graph(random_adjacency(n, 0.4));
    Eigen::VectorXd row = circulant_projection_row(d.adjacency);
    Eigen::MatrixXd proj = circulant_from_row(row);
    double base = (d.adjacency - proj).norm();
    for (int t = 0; t < 200; ++t) {
        Eigen::MatrixXd c = random_circulant_matrix(n);
        CHECK(base <= (d.adjacency - c).norm() + 1e-12);
        // orthogonality of the residual to the circulant subspace
        CHECK(std::abs(((d.adjacency - proj).array() * c.array()).sum()) < 1e-8);
    }
    // idempotence
    Eigen::VectorXd again = circulant_projection_row(proj);
    CHECK((again - row).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("negative diagonal means are clamped") {
    // force a negative mean on hop 2 in the unclamped projection
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4);
    a(0, 1) = a(1, 0) = 1.0;
    a(1, 2) = a(2, 1) = 1.0;
    a(2, 3) = a(3, 2) = 1.0;
    a(3, 0) = a(0, 3) = 1.0;
    a(0, 2) = a(2, 0) = -0.5;
    Eigen::VectorXd row = circulant_projection_row(a);
    CHECK(row[2] < 0.0);
    CirculantGraph g = nearest_circulant(DenseGraph{a}, identity_relabel(4));
    REQUIRE(g.gens.size() == 1);  // hop 2 clamped away
    CHECK(g.gens[0].s == 1);
}

TEST_CASE("rcm recovers a path ordering") {
    int n = 12;
    Eigen::MatrixXd path = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) path(i, i + 1) = path(i + 1, i) = 1.0;
    std::vector<int> shuffle(n);
    std::iota(shuffle.begin(), shuffle.end(), 0);
    std::shuffle(shuffle.begin(), shuffle.end(), rng);
    Eigen::MatrixXd scrambled(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scrambled(shuffle[i], shuffle[j]) = path(i, j);
    DenseGraph d = make_dense_graph(scrambled);
    Relabelling r = rcm_relabel(d);
    CHECK(bandwidth(apply_relabelling(d.adjacency, r)) == 1);
}

TEST_CASE("rcm does not worsen a banded matrix") {
    auto g = make_circulant(16, {{1, 1.0}, {2, 0.5}});
    Eigen::MatrixXd a = dense_circulant(g);
    DenseGraph d = make_dense_graph(a);
    Relabelling r = rcm_relabel(d);
    CHECK(bandwidth(apply_relabelling(a, r)) <= bandwidth(a));
}

TEST_CASE("rcm usually shrinks random sparse bandwidth") {
    int improved = 0, trials = 20;
    for (int t = 0; t < trials; ++t) {
        DenseGraph d = make_dense_graph(random_adjacency(64, 0.1));
        Relabelling r = rcm_relabel(d);
        if (bandwidth(apply_relabelling(d.adjacency, r)) < bandwidth(d.adjacency)) ++improved;
    }
    CHECK(improved >= trials * 9 / 10);
}

TEST_CASE("signal sorting") {
    GraphSignal x(Eigen::Vector3cd(3.0, 1.0, 2.0));
    Relabelling r = sort_relabel(x);
    CHECK(r.perm == std::vector<int>{1, 2, 0});

    GraphSignal sorted(Eigen::Vector3cd(1.0, 2.0, 3.0));
    CHECK(sort_relabel(sorted).perm == std::vector<int>{0, 1, 2});

    GraphSignal complex_in(Eigen::Vector2cd(Complex(1, 1), Complex(0, 0)));
    CHECK_THROWS_AS(sort_relabel(complex_in), std::invalid_argument);

    auto tv = [](const Eigen::VectorXd& v) {
        double s = 0;
        for (int i = 0; i + 1 < v.size(); ++i) s += std::abs(v[i + 1] - v[i]);
        return s;
    };
    std::normal_distribution<double> nd;
    for (int t = 0; t < 100; ++t) {
        Eigen::VectorXd v(20);
        for (int i = 0; i < 20; ++i) v[i] = nd(rng);
        Relabelling r2 = sort_relabel(GraphSignal(v.cast<Complex>()));
        Eigen::VectorXd p(20);
        for (int i = 0; i < 20; ++i) p[i] = v[r2.perm[i]];
        CHECK(tv(p) <= tv(v) + 1e-12);
    }
}

TEST_CASE("kronecker factorization recovers an exact product") {
    auto g1 = make_circulant(4, {{1, 1.0}});
    auto g2 = make_circulant(8, {{1, 1.0}, {3, 0.5}});
    ProductGraph pg{ProductKind::Kronecker, g1, g2};
    DenseGraph d = make_dense_graph(product_adjacency(pg));
    KronFactors kf = nearest_kron_circulant(d, 4, 8);
    CHECK(kf.residual <= 1e-9);
    // recovery up to scale
    Eigen::MatrixXd f1 = circulant_from_row(kf.row1), f2 = circulant_from_row(kf.row2);
    Eigen::MatrixXd rebuilt(32, 32);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rebuilt.block(i * 8, j * 8, 8, 8) = f1(i, j) * f2;
    CHECK((rebuilt - d.adjacency).cwiseAbs().maxCoeff() < 1e-9);
    for (size_t i = 1; i < kf.history.size(); ++i)
        CHECK(kf.history[i] <= kf.history[i - 1] + 1e-12);
}

TEST_CASE("cartesian product is not a kronecker product") {
    auto g1 = make_circulant(4, {{1, 1.0}});
    auto g2 = make_circulant(6, {{1, 1.0}});
    ProductGraph pg{ProductKind::Cartesian, g1, g2};
    DenseGraph d = make_dense_graph(product_adjacency(pg));
    KronFactors kf = nearest_kron_circulant(d, 4, 6);
    CHECK(kf.residual > 0.1);
    CHECK_THROWS_AS(nearest_kron_circulant(d, 4, 8), std::invalid_argument);
}

TEST_CASE("fiedler bipartition") {
    SUBCASE("two cliques with a bridge") {
        int n = 10;
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j) a(i, j) = a(j, i) = 1.0;
        for (int i = 5; i < 10; ++i)
            for (int j = i + 1; j < 10; ++j) a(i, j) = a(j, i) = 1.0;
        a(4, 5) = a(5, 4) = 1.0;
        Bipartition bp = fiedler_bipartition(make_dense_graph(a));
        std::vector<int> small = bp.first, large = bp.second;
        if (small[0] > 4) std::swap(small, large);
        CHECK(small == std::vector<int>{0, 1, 2, 3, 4});
        CHECK(large == std::vector<int>{5, 6, 7, 8, 9});
    }

    SUBCASE("cycle splits into two contiguous arcs") {
        auto g = make_circulant(8, {{1, 1.0}});
        Bipartition bp = fiedler_bipartition(make_dense_graph(dense_circulant(g)));
        CHECK(bp.first.size() == 4);
        CHECK(bp.second.size() == 4);
        auto contiguous = [](std::vector<int> side) {
            std::sort(side.begin(), side.end());
            int breaks = 0;
            for (size_t i = 0; i < side.size(); ++i)
                if ((side[(i + 1) % side.size()] - side[i] + 8) % 8 != 1) ++breaks;
            return breaks <= 1;
        };
        CHECK(contiguous(bp.first));
        CHECK(contiguous(bp.second));
    }

    SUBCASE("complete graph is degenerate") {
        int n = 6;
        Eigen::MatrixXd a = Eigen::MatrixXd::Ones(n, n);
        a.diagonal().setZero();
        Bipartition bp = fiedler_bipartition(make_dense_graph(a));
        CHECK(bp.degenerate);
        CHECK(bp.first.size() + bp.second.size() == 6);
    }

    SUBCASE("disconnected input rejected") {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4);
        a(0, 1) = a(1, 0) = 1.0;
        a(2, 3) = a(3, 2) = 1.0;
        CHECK_THROWS_AS(fiedler_bipartition(make_dense_graph(a)), std::invalid_argument);
    }
}

TEST_CASE("image graph") {
    SUBCASE("2x2 bilateral has 6 edges") {
        Eigen::VectorXd img = Eigen::VectorXd::Zero(4);
        DenseGraph d = image_graph(img, 2, 2, 1.0, 1.0, ImageGraphMode::Bilateral);
        int edges = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (d.adjacency(i, j) > 0) ++edges;
        CHECK(edges == 6);
    }

    SUBCASE("constant image weights depend only on distance") {
        Eigen::VectorXd img = Eigen::VectorXd::Constant(9, 5.0);
        DenseGraph d = image_graph(img, 3, 3, 2.0, 1.0, ImageGraphMode::Bilateral);
        double rook = std::exp(-1.0 / 4.0), diag = std::exp(-2.0 / 4.0);
        CHECK(d.adjacency(0, 1) == doctest::Approx(rook));
        CHECK(d.adjacency(0, 3) == doctest::Approx(rook));
        CHECK(d.adjacency(0, 4) == doctest::Approx(diag));
        CHECK(d.adjacency(0, 2) == 0.0);
    }

    SUBCASE("two-level image splits under an intensity threshold") {
        Eigen::VectorXd img(6);
        img << 0, 0, 0, 10, 10, 10;
        DenseGraph d = image_graph(img, 2, 3, 1.0, 1.0, ImageGraphMode::IntensityOnly, 5.0);
        for (int i = 0; i < 3; ++i)
            for (int j = 3; j < 6; ++j) CHECK(d.adjacency(i, j) == 0.0);
        CHECK(d.adjacency(0, 1) > 0.0);
        CHECK(d.adjacency(3, 4) > 0.0);
        CHECK_THROWS(image_graph(img, 2, 2, 1.0, 1.0, ImageGraphMode::Bilateral));
    }
}
