#include "gwt/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace gwt {

namespace {

std::ifstream open_in(const std::string& path, std::ios::openmode mode = std::ios::in) {
    std::ifstream in(path, mode);
    if (!in) throw IoError("cannot open " + path);
    return in;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream out(path, mode);
    if (!out) throw IoError("cannot write " + path);
    return out;
}

}  // namespace

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

nlohmann::json read_json(const std::string& path) {
    auto in = open_in(path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
    return j;
}

void write_json(const std::string& path, const nlohmann::json& j) {
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

nlohmann::json graph_to_json(const CirculantGraph& g) {
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& gen : g.gens) gens.push_back({{"s", gen.s}, {"w", gen.w}});
    return {{"n", g.n}, {"gens", gens}};
}

CirculantGraph graph_from_json(const nlohmann::json& j) {
    try {
        std::vector<Generator> gens;
        for (const auto& g : j.at("gens"))
            gens.push_back({g.at("s").get<int>(), g.at("w").get<double>()});
        return make_circulant(j.at("n").get<int>(), std::move(gens));
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("bad graph JSON: ") + e.what());
    }
}

nlohmann::json product_to_json(const ProductGraph& pg) {
    return {{"kind", product_kind_name(pg.kind)},
            {"g1", graph_to_json(pg.g1)},
            {"g2", graph_to_json(pg.g2)}};
}

ProductGraph product_from_json(const nlohmann::json& j) {
    try {
        std::string kind = j.at("kind").get<std::string>();
        ProductGraph pg;
        if (kind == "kronecker")
            pg.kind = ProductKind::Kronecker;
        else if (kind == "cartesian")
            pg.kind = ProductKind::Cartesian;
        else if (kind == "strong")
            pg.kind = ProductKind::Strong;
        else if (kind == "lexicographic")
            pg.kind = ProductKind::Lexicographic;
        else
            throw IoError("unknown product kind: " + kind);
        pg.g1 = graph_from_json(j.at("g1"));
        pg.g2 = graph_from_json(j.at("g2"));
        return pg;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("bad product JSON: ") + e.what());
    }
}

nlohmann::json bank_to_json(const FilterBank& fb) {
    nlohmann::json alphas = nlohmann::json::array();
    for (const auto& a : fb.alphas)
        alphas.push_back(
            {{"mode", a.mode == ExponentParam::Mode::Trigonometric ? "trig" : "hyper"},
             {"alpha", a.alpha}});
    nlohmann::json j = {{"family", fb.family},
                        {"k", fb.k},
                        {"alphas", alphas},
                        {"betas", fb.betas},
                        {"lp_row", fb.lp_row.c},
                        {"hp_row", fb.hp_row.c},
                        {"graph", graph_to_json(fb.graph)}};
    if (fb.syn_lp_row) j["syn_lp_row"] = fb.syn_lp_row->c;
    if (fb.syn_hp_row) j["syn_hp_row"] = fb.syn_hp_row->c;
    return j;
}

nlohmann::json invertibility_to_json(const InvertibilityReport& rep) {
    nlohmann::json collisions = nlohmann::json::array();
    for (const auto& c : rep.colliding_betas)
        collisions.push_back(
            {{"beta", c.beta}, {"gamma", c.gamma}, {"multiplicity", c.multiplicity}});
    return {{"invertible", rep.invertible},
            {"condition", condition_name(rep.condition_used)},
            {"collisions", collisions},
            {"detail", rep.detail}};
}

void write_signal_csv(const std::string& path, const GraphSignal& x) {
    auto out = open_out(path);
    out << "index,re,im\n";
    for (Eigen::Index i = 0; i < x.size(); ++i)
        out << i << "," << format_double(x.values[i].real()) << ","
            << format_double(x.values[i].imag()) << "\n";
}

GraphSignal read_signal_csv(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("index", 0) != 0)
        throw IoError(path + ": missing signal CSV header");
    std::vector<Complex> vals;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string idx, re, im;
        if (!std::getline(ls, idx, ',') || !std::getline(ls, re, ',') || !std::getline(ls, im))
            throw IoError(path + ": malformed row '" + line + "'");
        try {
            vals.emplace_back(std::stod(re), std::stod(im));
        } catch (const std::exception&) {
            throw IoError(path + ": malformed number in '" + line + "'");
        }
    }
    Eigen::VectorXcd v(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) v[i] = vals[i];
    return GraphSignal(std::move(v));
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
    auto out = open_out(path);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out << (j ? "," : "") << format_double(m(i, j));
        out << "\n";
    }
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
    auto in = open_in(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw IoError(path + ": malformed number '" + cell + "'");
            }
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw IoError(path + ": ragged rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw IoError(path + ": empty matrix");
    Eigen::MatrixXd m(rows.size(), rows.front().size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

void write_nla_csv(const std::string& path, const NlaResult& r) {
    auto out = open_out(path);
    out << "k,snr_db\n";
    for (const auto& [k, snr] : r.curve) out << k << "," << format_double(snr) << "\n";
}

void write_pyramid(const std::string& dir, const Pyramid& p) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir);
    nlohmann::json levels = nlohmann::json::array();
    for (size_t li = 0; li < p.levels.size(); ++li) {
        const auto& lvl = p.levels[li];
        std::string csv = "level_" + std::to_string(li) + ".csv";
        auto out = open_out(dir + "/" + csv);
        out << "index,re,im\n";
        for (size_t i = 0; i < lvl.hp_nodes.size(); ++i)
            out << lvl.hp_nodes[i] << ","
                << format_double(lvl.hp_coeffs[static_cast<Eigen::Index>(i)].real()) << ","
                << format_double(lvl.hp_coeffs[static_cast<Eigen::Index>(i)].imag()) << "\n";
        levels.push_back({{"graph", graph_to_json(lvl.graph)},
                          {"bank", bank_to_json(lvl.bank)},
                          {"coefficients", csv}});
    }
    write_signal_csv(dir + "/root.csv", p.root_lp);
    nlohmann::json manifest = {{"levels", levels},
                               {"root", {{"n", p.root_lp.size()}, {"coefficients", "root.csv"}}},
                               {"stored_count", p.stored_count()}};
    write_json(dir + "/manifest.json", manifest);
}

Eigen::MatrixXd read_pgm(const std::string& path) {
    auto in = open_in(path, std::ios::in | std::ios::binary);
    auto next_token = [&in, &path]() {
        std::string tok;
        for (;;) {
            if (!(in >> tok)) throw IoError(path + ": truncated PGM header");
            if (tok[0] == '#') {
                std::string rest;
                std::getline(in, rest);
                continue;
            }
            return tok;
        }
    };
    std::string magic = next_token();
    if (magic != "P2" && magic != "P5") throw IoError(path + ": not a PGM file");
    int w = std::stoi(next_token());
    int h = std::stoi(next_token());
    int maxval = std::stoi(next_token());
    if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 255)
        throw IoError(path + ": unsupported PGM geometry");
    Eigen::MatrixXd m(h, w);
    if (magic == "P2") {
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < w; ++j) {
                int v;
                if (!(in >> v)) throw IoError(path + ": truncated PGM data");
                m(i, j) = v;
            }
    } else {
        in.get();  // single whitespace after maxval
        std::vector<unsigned char> buf(static_cast<size_t>(w) * h);
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
        if (in.gcount() != static_cast<std::streamsize>(buf.size()))
            throw IoError(path + ": truncated PGM data");
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < w; ++j) m(i, j) = buf[static_cast<size_t>(i) * w + j];
    }
    return m;
}

}  // namespace gwt
