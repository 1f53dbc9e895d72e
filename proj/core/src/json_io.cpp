#include "todatt/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace todatt {

namespace {

// Turns nlohmann's type/key exceptions into SchemaError with the field name.
template <typename T>
T field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("field \"") + key + "\": " + e.what());
    }
}

template <typename T>
T field_or(const Json& j, const char* key, T fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    return field<T>(j, key);
}

Json complex_matrix(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back({{"re", m(i, k).real()}, {"im", m(i, k).imag()}});
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix complex_matrix_from(const Json& j, const char* key, std::size_t dim) {
    if (!j.contains(key) || !j.at(key).is_array()) throw SchemaError(std::string("field \"") + key + "\" must be a matrix");
    const Json& rows = j.at(key);
    if (rows.size() != dim) throw SchemaError(std::string("field \"") + key + "\" must have n + 1 rows");
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (!rows[i].is_array() || rows[i].size() != dim)
            throw SchemaError(std::string("field \"") + key + "\" must be square of size n + 1");
        for (std::size_t k = 0; k < dim; ++k) {
            const Json& e = rows[i][k];
            if (e.is_number()) m(i, k) = Complex(e.get<double>(), 0.0);
            else if (e.is_object()) m(i, k) = Complex(field_or<double>(e, "re", 0.0), field_or<double>(e, "im", 0.0));
            else throw SchemaError(std::string("field \"") + key + "\": entries must be {re, im} or numbers");
        }
    }
    return m;
}

std::string rational_text(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& e) {
    try {
        if (e.is_number_integer()) return Rational(e.get<long long>());
        if (e.is_string()) return parse_rational(e.get<std::string>());
        if (e.is_number()) return rational_from_double(e.get<double>());
    } catch (const std::invalid_argument& err) {
        throw SchemaError(std::string("m entry not representable as a rational: ") + err.what());
    }
    throw SchemaError("m entries must be integers, \"p/q\" strings or decimals");
}

std::string format17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Json to_json(const FrameStructure& s) {
    Json j;
    j["n"] = s.n;
    j["eta"] = complex_matrix(s.eta);
    j["g"] = complex_matrix(s.g);
    j["phi"] = complex_matrix(s.phi);
    return j;
}

FrameStructure frame_from_json(const Json& j) {
    const int n = field<int>(j, "n");
    if (n < 1) throw SchemaError("field \"n\" must be >= 1");
    const auto dim = static_cast<std::size_t>(n + 1);
    return FrameStructure{n, complex_matrix_from(j, "eta", dim), complex_matrix_from(j, "g", dim),
                          complex_matrix_from(j, "phi", dim)};
}

Json to_json(const ValidityReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"residual", c.residual}});
    return {{"all_passed", r.all_passed()}, {"checks", checks}};
}

Json to_json(const ClassificationReport& r) {
    return {{"n", r.n},
            {"l_input", r.l_input},
            {"l_normalized", r.l_normalized},
            {"shift", r.shift},
            {"class_representative", r.class_representative},
            {"epsilon", r.epsilon}};
}

Json to_json(int n, const NormalizationResult& r) {
    return {{"n", n}, {"l_input", r.l_input}, {"l_normalized", r.l_normalized}, {"shift", r.shift}, {"values", r.values}};
}

Json to_json(const ReducedSystem& r) {
    return {{"n", r.n}, {"l", r.l}, {"m", r.m}, {"a", r.a}, {"b", r.b}, {"index_map", r.index_map}};
}

Json to_json(const MinimalModelData& d) {
    Json b = Json::array();
    for (const auto& v : d.b) b.push_back(rational_text(v));
    Json label = Json::array();
    for (const auto& v : d.weight_label) label.push_back(rational_text(v));
    // Q, N and P are emitted as numbers when they fit, else as decimal strings.
    const auto integer = [](const BigInt& v) -> Json {
        if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
            return v.convert_to<long long>();
        return v.str();
    };
    Json pj = Json::array();
    for (const auto& v : d.P) pj.push_back(integer(v));
    return {{"n", d.n},
            {"Q", integer(d.Q)},
            {"N", integer(d.N)},
            {"P", pj},
            {"b", b},
            {"b_integral", d.b_integral},
            {"weight_label", label},
            {"c_eff", rational_text(d.c_eff)}};
}

Json to_json(const std::vector<IdentityResult>& results) {
    Json out = Json::array();
    for (const auto& r : results)
        out.push_back({{"identity", r.name}, {"n", r.n}, {"parameter", r.parameter}, {"passed", r.passed}});
    return out;
}

AsymmetryClass asymmetry_class_from_json(const Json& j) {
    AsymmetryClass c;
    c.n = field<int>(j, "n");
    c.l = field<int>(j, "l");
    c.values = field<std::vector<double>>(j, "values");
    if (c.n < 1) throw SchemaError("field \"n\" must be >= 1");
    if (c.values.size() != static_cast<std::size_t>(c.n + 1)) throw SchemaError("field \"values\" needs n + 1 entries");
    return c;
}

std::pair<int, int> reduce_request_from_json(const Json& j) { return {field<int>(j, "n"), field<int>(j, "l")}; }

SolveRequest solve_request_from_json(const Json& j) {
    SolveRequest r;
    r.data.n = field<int>(j, "n");
    r.data.l = field<int>(j, "l");
    r.data.m = field<std::vector<double>>(j, "m");
    if (j.contains("grid")) {
        const Json& g = j.at("grid");
        r.grid.x_min = field_or(g, "x_min", r.grid.x_min);
        r.grid.x_max = field_or(g, "x_max", r.grid.x_max);
        r.grid.points = field_or(g, "points", r.grid.points);
    }
    if (j.contains("opts")) {
        const Json& o = j.at("opts");
        r.opts.tol = field_or(o, "tol", r.opts.tol);
        r.opts.max_iter = field_or(o, "max_iter", r.opts.max_iter);
        r.opts.damping = field_or(o, "damping", r.opts.damping);
        r.opts.max_halvings = field_or(o, "max_halvings", r.opts.max_halvings);
        const std::string left = field_or<std::string>(o, "left", "dirichlet");
        if (left == "dirichlet") r.opts.left = LeftBoundary::dirichlet;
        else if (left == "slope") r.opts.left = LeftBoundary::slope;
        else throw SchemaError("opts.left must be \"dirichlet\" or \"slope\"");
    }
    return r;
}

Json to_json(const SolveRequest& r) {
    return {{"n", r.data.n},
            {"l", r.data.l},
            {"m", r.data.m},
            {"grid", {{"x_min", r.grid.x_min}, {"x_max", r.grid.x_max}, {"points", r.grid.points}}},
            {"opts",
             {{"tol", r.opts.tol},
              {"max_iter", r.opts.max_iter},
              {"damping", r.opts.damping},
              {"max_halvings", r.opts.max_halvings},
              {"left", r.opts.left == LeftBoundary::slope ? "slope" : "dirichlet"}}}};
}

std::vector<SolveRequest> solve_batch_from_json(const Json& j) {
    const Json* records = &j;
    if (j.is_object() && j.contains("records")) records = &j.at("records");
    std::vector<SolveRequest> out;
    if (records->is_array()) {
        if (records->empty()) throw SchemaError("solve batch is empty");
        for (const auto& r : *records) out.push_back(solve_request_from_json(r));
    } else {
        out.push_back(solve_request_from_json(*records));
    }
    return out;
}

Json solve_summary(const SolveRequest& request, const RadialSolution& sol, int window) {
    Json warnings = Json::array();
    for (const auto& w : sol.warnings) warnings.push_back(w);
    return {{"request", to_json(request)},
            {"converged", true},
            {"residual_sup", sol.residual_sup},
            {"toda_residual", toda_residual(sol)},
            {"newton_iterations", sol.newton_iterations},
            {"window", window},
            {"m_hat", extract_asymptotics(sol, window)},
            {"anti_symmetry_sup", anti_symmetry_sup(sol, sol.l)},
            {"sum_sup", sum_sup(sol)},
            {"warnings", warnings}};
}

CeffRequest ceff_request_from_json(const Json& j) {
    CeffRequest r;
    r.data.n = field<int>(j, "n");
    r.data.l = field_or(j, "l", 0);
    if (!j.contains("m") || !j.at("m").is_array()) throw SchemaError("field \"m\" must be an array");
    for (const auto& e : j.at("m")) r.data.m.push_back(rational_from_json(e));
    if (j.contains("Q")) {
        const Json& q = j.at("Q");
        if (q.is_number_integer()) r.q = BigInt(q.get<long long>());
        else if (q.is_string()) {
            try {
                r.q = BigInt(q.get<std::string>());
            } catch (const std::exception&) {
                throw SchemaError("field \"Q\" must be an integer");
            }
        } else throw SchemaError("field \"Q\" must be an integer");
    }
    return r;
}

void write_solution_csv(std::ostream& out, const RadialSolution& sol) {
    out << "x";
    for (std::size_t j = 0; j < sol.w.size(); ++j) out << ",w" << j;
    out << '\n';
    for (std::size_t k = 0; k < sol.grid_size(); ++k) {
        out << format17(sol.x[k]);
        for (const auto& wj : sol.w) out << ',' << format17(wj[k]);
        out << '\n';
    }
}

RadialSolution read_solution_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw SchemaError("csv: empty input");
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) header.push_back(cell);
    }
    if (header.size() < 3 || header[0] != "x") throw SchemaError("csv: header must be x,w0,...,wn");
    for (std::size_t j = 1; j < header.size(); ++j)
        if (header[j] != "w" + std::to_string(j - 1)) throw SchemaError("csv: header must be x,w0,...,wn");

    RadialSolution sol;
    sol.n = static_cast<int>(header.size()) - 2;
    sol.w.assign(header.size() - 1, {});
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t col = 0;
        while (std::getline(ss, cell, ',')) {
            if (col >= header.size()) throw SchemaError("csv: too many columns on row " + std::to_string(row));
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() || *end != '\0') throw SchemaError("csv: bad number on row " + std::to_string(row));
            if (col == 0) sol.x.push_back(v);
            else sol.w[col - 1].push_back(v);
            ++col;
        }
        if (col != header.size()) throw SchemaError("csv: too few columns on row " + std::to_string(row));
    }
    if (sol.x.size() < 3) throw SchemaError("csv: need at least 3 rows");
    return sol;
}

Json load_json_argument(const std::string& path_or_json) {
    const auto first = path_or_json.find_first_not_of(" \t\r\n");
    try {
        if (first != std::string::npos && (path_or_json[first] == '{' || path_or_json[first] == '['))
            return Json::parse(path_or_json);
        std::ifstream file(path_or_json);
        if (!file) throw SchemaError("cannot open input \"" + path_or_json + "\"");
        return Json::parse(file);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace todatt
