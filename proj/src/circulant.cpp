#include "gwt/circulant.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gwt/fft.hpp"

namespace gwt {

bool CirculantGraph::bipartite() const {
    if (n % 2 != 0 || gens.empty()) return false;
    return std::all_of(gens.begin(), gens.end(),
                       [](const Generator& g) { return g.s % 2 == 1; });
}

CirculantGraph make_circulant(int n, std::vector<Generator> gens) {
    if (n < 2) throw std::invalid_argument("circulant graph needs n >= 2");
    std::sort(gens.begin(), gens.end(),
              [](const Generator& a, const Generator& b) { return a.s < b.s; });
    CirculantGraph g;
    g.n = n;
    int gcd = n;
    int prev = 0;
    for (const auto& gen : gens) {
        if (gen.s < 1 || 2 * gen.s > n)
            throw std::invalid_argument("generator s=" + std::to_string(gen.s) +
                                        " out of range [1, n/2] for n=" + std::to_string(n));
        if (gen.s == prev)
            throw std::invalid_argument("duplicate generator s=" + std::to_string(gen.s));
        if (!(gen.w > 0.0))
            throw std::invalid_argument("generator weight must be positive");
        prev = gen.s;
        gcd = std::gcd(gcd, gen.s);
        g.degree += (2 * gen.s == n) ? gen.w : 2.0 * gen.w;
    }
    g.gens = std::move(gens);
    g.connected = (gcd == 1);
    return g;
}

Complex SymLaurentPoly::eval(Complex z) const {
    Complex acc(c[0], 0.0);
    Complex zp(1.0, 0.0);
    Complex zi = 1.0 / z;
    Complex zn(1.0, 0.0);
    for (int i = 1; i <= half_support(); ++i) {
        zp *= z;
        zn *= zi;
        acc += c[i] * (zp + zn);
    }
    return acc;
}

SymLaurentPoly SymLaurentPoly::trimmed(double tol) const {
    int t = half_support();
    while (t > 0 && std::abs(c[t]) < tol) --t;
    return SymLaurentPoly(std::vector<double>(c.begin(), c.begin() + t + 1));
}

SymLaurentPoly sym_add(const SymLaurentPoly& a, const SymLaurentPoly& b) {
    std::vector<double> c(std::max(a.c.size(), b.c.size()), 0.0);
    for (size_t i = 0; i < c.size(); ++i)
        c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return SymLaurentPoly(std::move(c));
}

SymLaurentPoly sym_scale(const SymLaurentPoly& a, double s) {
    std::vector<double> c = a.c;
    for (double& v : c) v *= s;
    return SymLaurentPoly(std::move(c));
}

SymLaurentPoly sym_mul(const SymLaurentPoly& a, const SymLaurentPoly& b) {
    // Convolve the full (two-sided) coefficient sequences; the product of
    // symmetric Laurent polynomials is symmetric, so the nonnegative half
    // determines it.
    const int ta = a.half_support(), tb = b.half_support();
    std::vector<double> c(ta + tb + 1, 0.0);
    for (int i = -ta; i <= ta; ++i)
        for (int j = -tb; j <= tb; ++j) {
            int k = i + j;
            if (k >= 0) c[k] += a.coeff(i) * b.coeff(j);
        }
    return SymLaurentPoly(std::move(c));
}

SymLaurentPoly sym_pow(const SymLaurentPoly& a, int k) {
    SymLaurentPoly r(std::vector<double>{1.0});
    for (int i = 0; i < k; ++i) r = sym_mul(r, a);
    return r;
}

SymLaurentPoly sym_modulate(const SymLaurentPoly& a) {
    std::vector<double> c = a.c;
    for (size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
    return SymLaurentPoly(std::move(c));
}

Eigen::VectorXd expand_row(const SymLaurentPoly& p, int n) {
    // Supports wider than n/2 fold modulo n, matching evaluation at the
    // n-th roots of unity.
    Eigen::VectorXd row = Eigen::VectorXd::Zero(n);
    row[0] = p.c[0];
    for (int i = 1; i <= p.half_support(); ++i) {
        row[i % n] += p.c[i];
        row[(n - i % n) % n] += p.c[i];
    }
    return row;
}

Eigen::MatrixXd circulant_from_row(const Eigen::VectorXd& row) {
    const int n = static_cast<int>(row.size());
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = row[(j - i + n) % n];
    return m;
}

Eigen::VectorXcd dft_spectrum(const SymLaurentPoly& p, int n) {
    Eigen::VectorXcd lam(n);
    for (int k = 0; k < n; ++k) {
        double th = 2.0 * M_PI * k / n;
        lam[k] = p.eval(Complex(std::cos(th), std::sin(th)));
    }
    return lam;
}

SymLaurentPoly adjacency_row(const CirculantGraph& g) {
    std::vector<double> c(g.max_hop() + 1, 0.0);
    for (const auto& gen : g.gens)
        c[gen.s] = (2 * gen.s == g.n) ? gen.w / 2.0 : gen.w;
    return SymLaurentPoly(std::move(c));
}

SymLaurentPoly laplacian_row(const CirculantGraph& g) {
    SymLaurentPoly a = adjacency_row(g);
    std::vector<double> c = a.c;
    for (double& v : c) v = -v;
    c[0] = g.degree;
    return SymLaurentPoly(std::move(c));
}

double e_degree(const CirculantGraph& g, const ExponentParam& p) {
    double d = 0.0;
    for (const auto& gen : g.gens) {
        double f = p.mode == ExponentParam::Mode::Trigonometric
                       ? std::cos(p.alpha * gen.s)
                       : std::cosh(p.alpha * gen.s);
        d += ((2 * gen.s == g.n) ? 1.0 : 2.0) * gen.w * f;
    }
    return d;
}

SymLaurentPoly e_laplacian_row(const CirculantGraph& g, const ExponentParam& p) {
    SymLaurentPoly row = laplacian_row(g);
    row.c[0] = e_degree(g, p);
    return row;
}

GraphSignal apply_circulant(const SymLaurentPoly& row, const GraphSignal& x) {
    const int n = static_cast<int>(x.size());
    Eigen::VectorXcd lam = dft_spectrum(row, n);
    Eigen::VectorXcd xf = fft(x.values);
    xf.array() *= lam.array();
    return GraphSignal(ifft(xf), x.label);
}

GraphSignal poly_signal(int n, const std::vector<PolyPiece>& pieces) {
    if (pieces.empty() || pieces.front().start != 0)
        throw std::invalid_argument("first piece must start at 0");
    for (size_t j = 1; j < pieces.size(); ++j)
        if (pieces[j].start <= pieces[j - 1].start || pieces[j].start >= n)
            throw std::invalid_argument("breakpoints must be strictly increasing within [0, n)");
    Eigen::VectorXcd v(n);
    size_t piece = 0;
    for (int t = 0; t < n; ++t) {
        while (piece + 1 < pieces.size() && t >= pieces[piece + 1].start) ++piece;
        double acc = 0.0, tp = 1.0;
        for (double a : pieces[piece].coeffs) {
            acc += a * tp;
            tp *= t;
        }
        v[t] = acc;
    }
    return GraphSignal(std::move(v));
}

GraphSignal exp_poly_signal(int n, const ExponentParam& p,
                            const std::vector<double>& poly_coeffs) {
    Eigen::VectorXcd v(n);
    for (int j = 0; j < n; ++j) {
        double acc = 0.0, tp = 1.0;
        for (double a : poly_coeffs) {
            acc += a * tp;
            tp *= j;
        }
        Complex e = p.mode == ExponentParam::Mode::Trigonometric
                        ? std::exp(Complex(0.0, p.alpha * j))
                        : Complex(std::exp(p.alpha * j), 0.0);
        v[j] = acc * e;
    }
    return GraphSignal(std::move(v));
}

int root_multiplicity(const SymLaurentPoly& p, Complex z0) {
    // Ordinary-polynomial lift z^T p(z), coefficients a[j] of z^j.
    const int t = p.half_support();
    std::vector<double> a(2 * t + 1);
    for (int j = 0; j <= 2 * t; ++j) a[j] = p.coeff(j - t);
    int mult = 0;
    while (static_cast<int>(a.size()) > 1 || mult == 0) {
        double maxc = 0.0;
        for (double v : a) maxc = std::max(maxc, std::abs(v));
        if (maxc == 0.0) break;  // zero polynomial: treat as fully vanishing
        Complex val(0.0, 0.0);
        for (int j = static_cast<int>(a.size()) - 1; j >= 0; --j) val = val * z0 + a[j];
        if (std::abs(val) >= 1e-8 * maxc) break;
        ++mult;
        if (a.size() == 1) break;
        std::vector<double> d(a.size() - 1);
        for (size_t j = 1; j < a.size(); ++j) d[j - 1] = a[j] * static_cast<double>(j);
        a = std::move(d);
    }
    return mult;
}

}  // namespace gwt
