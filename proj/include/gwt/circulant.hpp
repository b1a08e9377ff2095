#ifndef GWT_CIRCULANT_HPP
#define GWT_CIRCULANT_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gwt {

using Complex = std::complex<double>;

/// One weighted hop distance of a circulant generating set.
struct Generator {
    int s = 0;       // hop distance, 1 <= s <= n/2
    double w = 0.0;  // edge weight, > 0
};

/// Circulant graph on n nodes: node i is adjacent to (i +/- s) mod n for
/// every generator s. A generator s = n/2 (n even) contributes a single
/// edge per node and is counted once in the degree.
struct CirculantGraph {
    int n = 0;
    std::vector<Generator> gens;  // sorted by hop distance, distinct
    double degree = 0.0;
    bool connected = false;

    int max_hop() const { return gens.empty() ? 0 : gens.back().s; }
    bool bipartite() const;
};

CirculantGraph make_circulant(int n, std::vector<Generator> gens);

/// Symmetric Laurent polynomial c0 + sum_i ci (z^i + z^-i).
///
/// When bound to a circulant of size n, evaluation at z = e^{2*pi*i*k/n}
/// gives the eigenvalue at DFT position k. A half generator (s = n/2)
/// stores half its row weight at index n/2 so that both the first-row
/// expansion (which adds c_i at positions i and n-i, coinciding for
/// i = n/2) and evaluation at roots of unity come out right.
struct SymLaurentPoly {
    std::vector<double> c;  // c[0..T]

    SymLaurentPoly() : c{0.0} {}
    explicit SymLaurentPoly(std::vector<double> coeffs) : c(std::move(coeffs)) {
        if (c.empty()) c.push_back(0.0);
    }

    int half_support() const { return static_cast<int>(c.size()) - 1; }
    double coeff(int i) const {
        int a = i < 0 ? -i : i;
        return a <= half_support() ? c[a] : 0.0;
    }

    Complex eval(Complex z) const;

    /// Drops trailing coefficients below tol (keeps at least c0).
    SymLaurentPoly trimmed(double tol = 1e-14) const;
};

SymLaurentPoly sym_add(const SymLaurentPoly& a, const SymLaurentPoly& b);
SymLaurentPoly sym_scale(const SymLaurentPoly& a, double s);
SymLaurentPoly sym_mul(const SymLaurentPoly& a, const SymLaurentPoly& b);
SymLaurentPoly sym_pow(const SymLaurentPoly& a, int k);

/// H(z) -> H(-z): flips the sign of odd-index coefficients.
SymLaurentPoly sym_modulate(const SymLaurentPoly& a);

/// First row of the n x n circulant bound to this polynomial.
Eigen::VectorXd expand_row(const SymLaurentPoly& p, int n);

/// Dense circulant matrix with the given first row.
Eigen::MatrixXd circulant_from_row(const Eigen::VectorXd& row);

/// Eigenvalues in DFT order: p(e^{2*pi*i*k/n}), k = 0..n-1.
Eigen::VectorXcd dft_spectrum(const SymLaurentPoly& p, int n);

/// Complex signal on the nodes of a graph.
struct GraphSignal {
    Eigen::VectorXcd values;
    std::string label;

    GraphSignal() = default;
    explicit GraphSignal(Eigen::VectorXcd v, std::string l = {})
        : values(std::move(v)), label(std::move(l)) {}
    Eigen::Index size() const { return values.size(); }
};

/// Exponential parameterization of the e-graph Laplacian degree.
struct ExponentParam {
    enum class Mode { Trigonometric, Hyperbolic };
    Mode mode = Mode::Trigonometric;
    double alpha = 0.0;
};

/// Representer polynomial of the adjacency matrix: c_s = w_s (c0 = 0).
SymLaurentPoly adjacency_row(const CirculantGraph& g);

/// First row of L = D - A as a symmetric Laurent polynomial.
SymLaurentPoly laplacian_row(const CirculantGraph& g);

/// E-degree: sum_j 2 w_j cos(alpha s_j) (or cosh for hyperbolic mode).
/// Half generators contribute once.
double e_degree(const CirculantGraph& g, const ExponentParam& p);

/// First row of the e-graph Laplacian: e-degree on the diagonal, -A off it.
SymLaurentPoly e_laplacian_row(const CirculantGraph& g, const ExponentParam& p);

/// y = C x for the circulant C with symmetric first row `row`, computed in
/// O(n log n) via DFT diagonalization.
GraphSignal apply_circulant(const SymLaurentPoly& row, const GraphSignal& x);

/// Piecewise polynomial signal; pieces are (breakpoint, coefficients) with
/// x(t) = sum_d a_d t^d on [t_j, t_{j+1}). Breakpoints must start at 0 and
/// increase; the final piece runs to n.
struct PolyPiece {
    int start = 0;
    std::vector<double> coeffs;
};
GraphSignal poly_signal(int n, const std::vector<PolyPiece>& pieces);

/// y(j) = p(j) e^{i alpha j} (trigonometric) or p(j) e^{alpha j} (hyperbolic).
GraphSignal exp_poly_signal(int n, const ExponentParam& p,
                            const std::vector<double>& poly_coeffs);

/// Multiplicity of the root z0 (|z0| = 1) of the ordinary-polynomial lift
/// z^T p(z), decided by successive derivative evaluation: a derivative is
/// declared zero when below 1e-8 times its largest coefficient magnitude.
int root_multiplicity(const SymLaurentPoly& p, Complex z0);

}  // namespace gwt

#endif  // GWT_CIRCULANT_HPP
