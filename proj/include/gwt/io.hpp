#ifndef GWT_IO_HPP
#define GWT_IO_HPP

#include <string>

#include <json.hpp>

#include "gwt/approximation.hpp"
#include "gwt/filterbank.hpp"
#include "gwt/multiscale.hpp"
#include "gwt/products.hpp"

namespace gwt {

/// All readers/writers throw IoError on filesystem or parse failure.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// 17 significant digits (round-trip exact for doubles).
std::string format_double(double v);

nlohmann::json read_json(const std::string& path);
void write_json(const std::string& path, const nlohmann::json& j);

// graph JSON: {"n": 16, "gens": [{"s": 1, "w": 1.0}, ...]}
nlohmann::json graph_to_json(const CirculantGraph& g);
CirculantGraph graph_from_json(const nlohmann::json& j);

// product JSON: {"kind": "cartesian", "g1": {...}, "g2": {...}}
nlohmann::json product_to_json(const ProductGraph& pg);
ProductGraph product_from_json(const nlohmann::json& j);

// bank JSON: k, alphas, betas, lp/hp rows, family tag, syn rows if present
nlohmann::json bank_to_json(const FilterBank& fb);

nlohmann::json invertibility_to_json(const InvertibilityReport& rep);

// signal CSV: header "index,re,im", one row per node
void write_signal_csv(const std::string& path, const GraphSignal& x);
GraphSignal read_signal_csv(const std::string& path);

// dense matrix CSV: one row per line, comma separated
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_csv(const std::string& path);

// NLA CSV: header "k,snr_db"
void write_nla_csv(const std::string& path, const NlaResult& r);

/// Writes manifest.json plus level_<i>.csv (stored high-pass values keyed by
/// node index) and root.csv into the directory.
void write_pyramid(const std::string& dir, const Pyramid& p);

/// 8-bit grayscale PGM (P2 ascii or P5 binary); values as doubles 0..maxval.
Eigen::MatrixXd read_pgm(const std::string& path);

}  // namespace gwt

#endif  // GWT_IO_HPP
