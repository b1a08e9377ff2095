#include "gwt/approximation.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <queue>

namespace gwt {

namespace {

CirculantGraph graph_from_projection(const Eigen::VectorXd& row, int n) {
    std::vector<Generator> gens;
    for (int s = 1; s <= n / 2; ++s) {
        double w = row[s];
        if (w < 0.0) {
            std::cerr << "warning: negative mean weight " << w << " at hop " << s
                      << " clamped to 0\n";
            continue;
        }
        if (w > 0.0) gens.push_back({s, w});
    }
    if (gens.empty()) throw std::runtime_error("projection produced an empty generating set");
    return make_circulant(n, std::move(gens));
}

Eigen::MatrixXd circulant_sym(const Eigen::VectorXd& row) {
    // expand the half row to a full symmetric circulant matrix
    const int n = static_cast<int>(row.size());
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int k = std::abs(i - j);
            m(i, j) = row[std::min(k, n - k)];
        }
    return m;
}

// Projection of an n x n block onto symmetric zero-diagonal circulants,
// returned as the half row [0, c_1, ..., c_{n/2}].
Eigen::VectorXd project_half_row(const Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    Eigen::VectorXd full = Eigen::VectorXd::Zero(n);
    for (int k = 1; k < n; ++k) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) sum += a(i, (i + k) % n);
        full[k] = sum / n;
    }
    Eigen::VectorXd half = Eigen::VectorXd::Zero(n / 2 + 1);
    for (int s = 1; s <= n / 2; ++s) half[s] = 0.5 * (full[s] + full[n - s]);
    return half;
}

}  // namespace

DenseGraph make_dense_graph(Eigen::MatrixXd a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("adjacency must be square");
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("adjacency must be symmetric");
    if (a.diagonal().cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("adjacency must have a zero diagonal (no self-loops)");
    a = 0.5 * (a + a.transpose().eval());
    a.diagonal().setZero();
    return DenseGraph{std::move(a)};
}

Relabelling identity_relabel(int n) {
    Relabelling r;
    r.perm.resize(n);
    std::iota(r.perm.begin(), r.perm.end(), 0);
    return r;
}

Relabelling rcm_relabel(const DenseGraph& a) {
    const int n = a.n();
    std::vector<int> degree(n, 0);
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && a.adjacency(i, j) != 0.0) adj[i].push_back(j);
    for (int i = 0; i < n; ++i) degree[i] = static_cast<int>(adj[i].size());

    auto by_degree = [&](int x, int y) {
        return degree[x] != degree[y] ? degree[x] < degree[y] : x < y;
    };

    std::vector<bool> visited(n, false);
    std::vector<int> order;
    order.reserve(n);
    for (;;) {
        int start = -1;
        for (int i = 0; i < n; ++i)
            if (!visited[i] && (start == -1 || by_degree(i, start))) start = i;
        if (start == -1) break;
        std::queue<int> q;
        q.push(start);
        visited[start] = true;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            order.push_back(u);
            std::vector<int> next;
            for (int v : adj[u])
                if (!visited[v]) next.push_back(v);
            std::sort(next.begin(), next.end(), by_degree);
            for (int v : next) {
                visited[v] = true;
                q.push(v);
            }
        }
    }
    std::reverse(order.begin(), order.end());
    Relabelling r;
    r.perm = std::move(order);
    r.method = Relabelling::Method::Rcm;
    return r;
}

Relabelling sort_relabel(const GraphSignal& x) {
    const int n = static_cast<int>(x.size());
    for (int i = 0; i < n; ++i)
        if (x.values[i].imag() != 0.0)
            throw std::invalid_argument("signal sorting requires a real signal");
    Relabelling r;
    r.perm.resize(n);
    std::iota(r.perm.begin(), r.perm.end(), 0);
    std::stable_sort(r.perm.begin(), r.perm.end(), [&](int i, int j) {
        return x.values[i].real() < x.values[j].real();
    });
    r.method = Relabelling::Method::Sort;
    return r;
}

Eigen::MatrixXd apply_relabelling(const Eigen::MatrixXd& a, const Relabelling& r) {
    const int n = static_cast<int>(a.rows());
    if (static_cast<int>(r.perm.size()) != n)
        throw std::invalid_argument("relabelling size mismatch");
    Eigen::MatrixXd out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = a(r.perm[i], r.perm[j]);
    return out;
}

int bandwidth(const Eigen::MatrixXd& a) {
    int b = 0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0.0) b = std::max(b, std::abs(i - j));
    return b;
}

Eigen::VectorXd circulant_projection_row(const Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    Eigen::VectorXd half = project_half_row(a);
    Eigen::VectorXd row = Eigen::VectorXd::Zero(n);
    for (int s = 1; s <= n / 2; ++s) {
        row[s] = half[s];
        row[n - s] = half[s];
    }
    return row;
}

CirculantGraph nearest_circulant(const DenseGraph& a, const Relabelling& r) {
    Eigen::MatrixXd ap = apply_relabelling(a.adjacency, r);
    return graph_from_projection(project_half_row(ap), a.n());
}

KronFactors nearest_kron_circulant(const DenseGraph& a, int n1, int n2) {
    const int n = a.n();
    if (n1 < 2 || n2 < 2 || n1 * n2 != n)
        throw std::invalid_argument("factor sizes must multiply to the graph size");

    // Van Loan rearrangement: R((i1,j1),(i2,j2)) = A(i1*n2+i2, j1*n2+j2),
    // so A = A1 (x) A2 becomes R = vec(A1) vec(A2)^T.
    Eigen::MatrixXd rearr(n1 * n1, n2 * n2);
    for (int i1 = 0; i1 < n1; ++i1)
        for (int j1 = 0; j1 < n1; ++j1)
            for (int i2 = 0; i2 < n2; ++i2)
                for (int j2 = 0; j2 < n2; ++j2)
                    rearr(i1 * n1 + j1, i2 * n2 + j2) = a.adjacency(i1 * n2 + i2, j1 * n2 + j2);

    auto unvec = [](const Eigen::VectorXd& v, int m) {
        Eigen::MatrixXd out(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) out(i, j) = v[i * m + j];
        return out;
    };
    auto vec = [](const Eigen::MatrixXd& m) {
        Eigen::VectorXd out(m.rows() * m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) out[i * m.cols() + j] = m(i, j);
        return out;
    };
    auto project = [&](const Eigen::VectorXd& v, int m) {
        Eigen::VectorXd half = project_half_row(unvec(v, m));
        Eigen::VectorXd row = Eigen::VectorXd::Zero(m);
        for (int s = 1; s <= m / 2; ++s) {
            row[s] = half[s];
            row[m - s] = half[s];
        }
        return row;
    };

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rearr, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double s0 = std::sqrt(svd.singularValues()[0]);
    Eigen::VectorXd row1 = project(s0 * svd.matrixU().col(0), n1);
    Eigen::VectorXd row2 = project(s0 * svd.matrixV().col(0), n2);

    KronFactors kf;
    Eigen::VectorXd v1 = vec(circulant_sym(row1));
    Eigen::VectorXd v2 = vec(circulant_sym(row2));
    double prev = (rearr - v1 * v2.transpose()).norm();
    kf.history.push_back(prev);
    for (int it = 0; it < 100; ++it) {
        if (v2.squaredNorm() > 0) {
            row1 = project(rearr * v2 / v2.squaredNorm(), n1);
            v1 = vec(circulant_sym(row1));
        }
        if (v1.squaredNorm() > 0) {
            row2 = project(rearr.transpose() * v1 / v1.squaredNorm(), n2);
            v2 = vec(circulant_sym(row2));
        }
        double res = (rearr - v1 * v2.transpose()).norm();
        kf.history.push_back(res);
        if (prev - res < 1e-10) break;
        prev = res;
    }
    kf.residual = kf.history.back();

    // fix the scale: equal Frobenius norms, nonnegative leading weight
    double f1 = v1.norm(), f2 = v2.norm();
    if (f1 > 0 && f2 > 0) {
        double c = std::sqrt(f2 / f1);
        row1 *= c;
        row2 /= c;
    }
    auto leading = [](const Eigen::VectorXd& row) {
        for (int i = 0; i < row.size(); ++i)
            if (row[i] != 0.0) return row[i];
        return 0.0;
    };
    if (leading(row1) < 0) {
        row1 = -row1;
        row2 = -row2;
    }
    kf.row1 = row1;
    kf.row2 = row2;
    // a factor can degenerate to an empty generating set (all weights
    // clamped) when the input is far from a Kronecker product; the rows and
    // residual still carry the answer
    try {
        kf.g1 = graph_from_projection(row1, n1);
        kf.g2 = graph_from_projection(row2, n2);
    } catch (const std::runtime_error&) {
        kf.g1 = CirculantGraph{};
        kf.g2 = CirculantGraph{};
    }
    return kf;
}

Bipartition fiedler_bipartition(const DenseGraph& a) {
    const int n = a.n();
    Eigen::VectorXd deg = a.adjacency.rowwise().sum();
    if (deg.minCoeff() <= 0.0)
        throw std::invalid_argument("bipartition requires a connected graph (isolated node)");
    Eigen::VectorXd dinv = deg.cwiseSqrt().cwiseInverse();
    Eigen::MatrixXd lsym = Eigen::MatrixXd::Identity(n, n) -
                           dinv.asDiagonal() * a.adjacency * dinv.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lsym);
    if (es.eigenvalues()[1] < 1e-10)
        throw std::invalid_argument("bipartition requires a connected graph");

    Bipartition bp;
    bp.degenerate = n > 2 && es.eigenvalues()[2] - es.eigenvalues()[1] < 1e-10;
    Eigen::VectorXd v = es.eigenvectors().col(1);
    const double tol = 1e-12 * v.cwiseAbs().maxCoeff();
    std::vector<int> zeros;
    for (int i = 0; i < n; ++i) {
        if (v[i] > tol)
            bp.first.push_back(i);
        else if (v[i] < -tol)
            bp.second.push_back(i);
        else
            zeros.push_back(i);
    }
    for (int i : zeros)
        (bp.first.size() <= bp.second.size() ? bp.first : bp.second).push_back(i);
    return bp;
}

DenseGraph image_graph(const Eigen::VectorXd& intensities, int h, int w, double sigma_p,
                       double sigma_i, ImageGraphMode mode, double threshold) {
    const int n = h * w;
    if (intensities.size() != n) throw std::invalid_argument("grid size mismatch");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        int ri = i / w, ci = i % w;
        for (int j = i + 1; j < n; ++j) {
            int rj = j / w, cj = j % w;
            double di = intensities[i] - intensities[j];
            double weight = 0.0;
            if (mode == ImageGraphMode::Bilateral) {
                double dp2 = double(ri - rj) * (ri - rj) + double(ci - cj) * (ci - cj);
                if (dp2 > 2.0) continue;
                weight = std::exp(-dp2 / (sigma_p * sigma_p)) *
                         std::exp(-di * di / (sigma_i * sigma_i));
            } else {
                if (std::abs(di) > threshold) continue;
                weight = std::exp(-di * di / (sigma_i * sigma_i));
            }
            a(i, j) = weight;
            a(j, i) = weight;
        }
    }
    return DenseGraph{std::move(a)};
}

}  // namespace gwt
