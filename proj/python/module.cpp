#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "gwt/approximation.hpp"
#include "gwt/complementary.hpp"
#include "gwt/products.hpp"

namespace py = pybind11;
using namespace gwt;

namespace {

ExponentParam::Mode parse_mode(const std::string& s) {
    if (s == "trig") return ExponentParam::Mode::Trigonometric;
    if (s == "hyper") return ExponentParam::Mode::Hyperbolic;
    throw std::invalid_argument("mode must be 'trig' or 'hyper'");
}

std::vector<ExponentParam> parse_alpha_list(
    const std::vector<std::pair<std::string, double>>& alphas) {
    std::vector<ExponentParam> out;
    for (const auto& [mode, a] : alphas) out.push_back({parse_mode(mode), a});
    return out;
}

SamplingPattern to_pattern(const std::vector<bool>& keep_lp) {
    SamplingPattern sp;
    sp.keep_lp = keep_lp;
    return sp;
}

CoarseningStrategy parse_strategy(const std::string& s) {
    if (s == "keep-existing") return CoarseningStrategy::KeepExisting;
    if (s == "preserve-set") return CoarseningStrategy::PreserveSet;
    throw std::invalid_argument("strategy must be 'keep-existing' or 'preserve-set'");
}

BankBuilder make_builder(const std::string& family, int k,
                         const std::vector<std::pair<std::string, double>>& alphas) {
    if (family == "hgswt") return spline_builder(k);
    if (family == "hgeswt") return espline_builder(parse_alpha_list(alphas), k);
    if (family == "hcgswt") return complementary_spline_builder(k);
    if (family == "hcgeswt") return complementary_espline_builder(parse_alpha_list(alphas), k);
    throw std::invalid_argument("unknown bank family '" + family + "'");
}

ProductKind parse_kind(const std::string& s) {
    if (s == "kronecker") return ProductKind::Kronecker;
    if (s == "cartesian") return ProductKind::Cartesian;
    if (s == "strong") return ProductKind::Strong;
    if (s == "lexicographic") return ProductKind::Lexicographic;
    throw std::invalid_argument("unknown product kind '" + s + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "spline and e-spline wavelet filterbanks on circulant graphs";

    py::class_<Generator>(m, "Generator")
        .def(py::init<int, double>(), py::arg("s"), py::arg("w") = 1.0)
        .def_readwrite("s", &Generator::s)
        .def_readwrite("w", &Generator::w)
        .def("__repr__", [](const Generator& g) {
            std::ostringstream os;
            os << "Generator(s=" << g.s << ", w=" << g.w << ")";
            return os.str();
        });

    py::class_<CirculantGraph>(m, "CirculantGraph")
        .def_readonly("n", &CirculantGraph::n)
        .def_readonly("gens", &CirculantGraph::gens)
        .def_readonly("degree", &CirculantGraph::degree)
        .def_readonly("connected", &CirculantGraph::connected)
        .def("bipartite", &CirculantGraph::bipartite)
        .def("max_hop", &CirculantGraph::max_hop)
        .def("__repr__", [](const CirculantGraph& g) {
            std::ostringstream os;
            os << "CirculantGraph(n=" << g.n << ", " << g.gens.size() << " generators)";
            return os.str();
        });

    m.def(
        "make_circulant",
        [](int n, const std::vector<std::pair<int, double>>& gens) {
            std::vector<Generator> gg;
            for (const auto& [s, w] : gens) gg.push_back({s, w});
            return make_circulant(n, gg);
        },
        py::arg("n"), py::arg("gens"), "circulant graph from (hop, weight) pairs");

    m.def(
        "adjacency",
        [](const CirculantGraph& g) {
            return Eigen::MatrixXd(circulant_from_row(expand_row(adjacency_row(g), g.n)));
        },
        py::arg("graph"), "dense adjacency matrix");
    m.def(
        "laplacian",
        [](const CirculantGraph& g) {
            return Eigen::MatrixXd(circulant_from_row(expand_row(laplacian_row(g), g.n)));
        },
        py::arg("graph"), "dense combinatorial Laplacian");

    py::class_<FilterBank>(m, "FilterBank")
        .def_readonly("k", &FilterBank::k)
        .def_readonly("betas", &FilterBank::betas)
        .def_readonly("family", &FilterBank::family)
        .def_property_readonly("lp_taps", [](const FilterBank& fb) { return fb.lp_row.c; })
        .def_property_readonly("hp_taps", [](const FilterBank& fb) { return fb.hp_row.c; })
        .def_property_readonly("has_fir_synthesis",
                               [](const FilterBank& fb) { return fb.syn_lp_row.has_value(); });

    m.def(
        "make_bank",
        [](const CirculantGraph& g, const std::string& family, int k,
           const std::vector<std::pair<std::string, double>>& alphas) {
            return make_builder(family, k, alphas)(g, 0);
        },
        py::arg("graph"), py::arg("family") = "hgswt", py::arg("k") = 1,
        py::arg("alphas") = std::vector<std::pair<std::string, double>>{},
        "filterbank of the given family: hgswt, hgeswt, hcgswt or hcgeswt;\n"
        "alphas are (mode, value) pairs with mode 'trig' or 'hyper'");

    m.def(
        "default_pattern",
        [](int n) { return default_pattern(n).keep_lp; }, py::arg("n"),
        "alternating low/high-pass sampling pattern");

    m.def(
        "check_invertibility",
        [](const FilterBank& fb, const std::vector<bool>& keep_lp) {
            auto rep = check_invertibility(fb, to_pattern(keep_lp));
            py::dict d;
            d["invertible"] = rep.invertible;
            d["condition"] = condition_name(rep.condition_used);
            d["detail"] = rep.detail;
            py::list collisions;
            for (const auto& c : rep.colliding_betas)
                collisions.append(py::make_tuple(c.beta, c.gamma, c.multiplicity));
            d["collisions"] = collisions;
            return d;
        },
        py::arg("bank"), py::arg("keep_lp"));

    m.def(
        "analyze",
        [](const FilterBank& fb, const std::vector<bool>& keep_lp, const Eigen::VectorXcd& x) {
            return analyze(fb, to_pattern(keep_lp), GraphSignal(x)).values;
        },
        py::arg("bank"), py::arg("keep_lp"), py::arg("x"));
    m.def(
        "invert",
        [](const FilterBank& fb, const std::vector<bool>& keep_lp, const Eigen::VectorXcd& w) {
            return invert(fb, to_pattern(keep_lp), GraphSignal(w)).values;
        },
        py::arg("bank"), py::arg("keep_lp"), py::arg("w"));
    m.def(
        "synthesize",
        [](const FilterBank& fb, const std::vector<bool>& keep_lp, const Eigen::VectorXcd& w) {
            return synthesize(fb, to_pattern(keep_lp), GraphSignal(w)).values;
        },
        py::arg("bank"), py::arg("keep_lp"), py::arg("w"),
        "FIR synthesis (complementary banks only)");
    m.def(
        "analysis_matrix",
        [](const FilterBank& fb, const std::vector<bool>& keep_lp) {
            return analysis_matrix(fb, to_pattern(keep_lp));
        },
        py::arg("bank"), py::arg("keep_lp"));

    m.def(
        "coarsen",
        [](const CirculantGraph& g, const std::string& strategy) {
            return coarsen(g, parse_strategy(strategy));
        },
        py::arg("graph"), py::arg("strategy") = "preserve-set");

    py::class_<Decomposition>(m, "Decomposition")
        .def_property_readonly("coeffs", [](const Decomposition& d) { return d.coeffs; })
        .def_property_readonly("atom_norms",
                               [](const Decomposition& d) { return d.atom_norms; })
        .def_property_readonly("levels",
                               [](const Decomposition& d) { return d.pyramid.levels.size(); });

    m.def(
        "decompose",
        [](const CirculantGraph& g, const Eigen::VectorXcd& x, const std::string& family, int k,
           const std::vector<std::pair<std::string, double>>& alphas, int levels,
           const std::string& strategy) {
            return decompose(g, make_builder(family, k, alphas), parse_strategy(strategy),
                             GraphSignal(x), levels);
        },
        py::arg("graph"), py::arg("x"), py::arg("family") = "hgswt", py::arg("k") = 1,
        py::arg("alphas") = std::vector<std::pair<std::string, double>>{},
        py::arg("levels") = 1, py::arg("strategy") = "preserve-set",
        "multilevel wavelet decomposition");

    m.def(
        "nla_curve",
        [](const Decomposition& d, const std::vector<int>& ks) {
            return nla(d, ks).curve;
        },
        py::arg("decomposition"), py::arg("ks"),
        "(kept coefficients, reconstruction SNR in dB) pairs");

    py::class_<ProductGraph>(m, "ProductGraph")
        .def_readonly("g1", &ProductGraph::g1)
        .def_readonly("g2", &ProductGraph::g2)
        .def("nodes", &ProductGraph::nodes)
        .def_property_readonly(
            "kind", [](const ProductGraph& pg) { return product_kind_name(pg.kind); });

    m.def(
        "make_product",
        [](const std::string& kind, const CirculantGraph& g1, const CirculantGraph& g2) {
            return ProductGraph{parse_kind(kind), g1, g2};
        },
        py::arg("kind"), py::arg("g1"), py::arg("g2"),
        "kronecker, cartesian, strong or lexicographic product");
    m.def("product_adjacency", &product_adjacency, py::arg("product"));
    m.def("product_laplacian", &product_laplacian, py::arg("product"));
    m.def("product_spectrum", &product_spectrum, py::arg("product"),
          "adjacency eigenvalues on the 2D DFT grid, flat index i1*n2 + i2");
    m.def(
        "lexicographic_circulant",
        [](const CirculantGraph& g1, const CirculantGraph& g2) {
            auto iso = lexicographic_circulant(g1, g2);
            return py::make_tuple(iso.graph, iso.perm);
        },
        py::arg("g1"), py::arg("g2"),
        "(circulant graph, permutation) with perm[i1*n2+i2] = relabelled node");

    m.def(
        "nearest_circulant",
        [](const Eigen::MatrixXd& a, const std::string& relabel) {
            DenseGraph d = make_dense_graph(a);
            Relabelling r = relabel == "rcm" ? rcm_relabel(d) : identity_relabel(d.n());
            if (relabel != "rcm" && relabel != "identity")
                throw std::invalid_argument("relabel must be 'identity' or 'rcm'");
            return py::make_tuple(nearest_circulant(d, r), r.perm);
        },
        py::arg("adjacency"), py::arg("relabel") = "identity",
        "(Frobenius-nearest circulant graph, node permutation)");
    m.def(
        "circulant_projection_row",
        [](const Eigen::MatrixXd& a) { return circulant_projection_row(a); },
        py::arg("adjacency"), "first row of the orthogonal circulant projection");
    m.def(
        "bandwidth", [](const Eigen::MatrixXd& a) { return bandwidth(a); },
        py::arg("matrix"));
    m.def(
        "nearest_kron_circulant",
        [](const Eigen::MatrixXd& a, int n1, int n2) {
            auto kf = nearest_kron_circulant(make_dense_graph(a), n1, n2);
            return py::make_tuple(kf.row1, kf.row2, kf.residual);
        },
        py::arg("adjacency"), py::arg("n1"), py::arg("n2"),
        "(factor row 1, factor row 2, Frobenius residual)");
    m.def(
        "fiedler_bipartition",
        [](const Eigen::MatrixXd& a) {
            auto b = fiedler_bipartition(make_dense_graph(a));
            return py::make_tuple(b.first, b.second, b.degenerate);
        },
        py::arg("adjacency"));

    py::register_exception<SingularSystemError>(m, "SingularSystemError");
    py::register_exception<InfeasibleFactorizationError>(m, "InfeasibleFactorizationError");
}
