#include "mz/serialize.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace mz {

namespace {

double parse_double(std::string_view s, int line_no) {
    double v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    while (first < last && (*first == ' ' || *first == '\t')) ++first;
    while (last > first && (*(last - 1) == ' ' || *(last - 1) == '\t' || *(last - 1) == '\r'))
        --last;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last)
        throw std::invalid_argument("csv: bad number at line " + std::to_string(line_no));
    return v;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// Dense coefficient table as [[k_1..k_m, re, im], ...], zero entries omitted;
// indices decode row-major with the last axis fastest.
nlohmann::json coeff_table(int m, int side, const Eigen::VectorXcd& coeffs) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index flat = 0; flat < coeffs.size(); ++flat) {
        const std::complex<double> c = coeffs[flat];
        if (c == std::complex<double>(0.0, 0.0)) continue;
        nlohmann::json row = nlohmann::json::array();
        Eigen::Index rem = flat;
        std::vector<int> k(static_cast<size_t>(m));
        for (int j = m - 1; j >= 0; --j) {
            k[static_cast<size_t>(j)] = static_cast<int>(rem % side);
            rem /= side;
        }
        for (int j = 0; j < m; ++j) row.push_back(k[static_cast<size_t>(j)]);
        row.push_back(c.real());
        row.push_back(c.imag());
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::VectorXcd coeffs_from_table(const nlohmann::json& rows, int m, int side) {
    Eigen::Index total = 1;
    for (int j = 0; j < m; ++j) total *= side;
    Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(total);
    for (const auto& row : rows) {
        if (!row.is_array() || static_cast<int>(row.size()) != m + 2)
            throw std::invalid_argument("coefficient row must hold m indices plus re, im");
        Eigen::Index flat = 0;
        for (int j = 0; j < m; ++j) {
            const int kj = row[static_cast<size_t>(j)].get<int>();
            if (kj < 0 || kj >= side) throw std::invalid_argument("coefficient index out of range");
            flat = flat * side + kj;
        }
        coeffs[flat] = std::complex<double>(row[static_cast<size_t>(m)].get<double>(),
                                            row[static_cast<size_t>(m) + 1].get<double>());
    }
    return coeffs;
}

nlohmann::json vector_json(const Eigen::VectorXd& v) {
    nlohmann::json a = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& a) {
    if (!a.is_array()) throw std::invalid_argument("expected an array of coordinates");
    Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = a[static_cast<size_t>(i)].get<double>();
    return v;
}

}  // namespace

PointSet read_points_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("csv: cannot open " + path);
    PointSet ps;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        std::vector<double> coords;
        size_t start = 0;
        while (true) {
            const size_t comma = line.find(',', start);
            const size_t end = comma == std::string::npos ? line.size() : comma;
            coords.push_back(parse_double(std::string_view(line).substr(start, end - start),
                                          line_no));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (ps.points.empty()) {
            ps.dim = static_cast<int>(coords.size());
        } else if (static_cast<int>(coords.size()) != ps.dim) {
            throw std::invalid_argument("csv: inconsistent dimension at line " +
                                        std::to_string(line_no));
        }
        Eigen::VectorXd x(ps.dim);
        for (int j = 0; j < ps.dim; ++j) x[j] = coords[static_cast<size_t>(j)];
        ps.points.push_back(std::move(x));
    }
    if (ps.points.empty()) throw std::invalid_argument("csv: no points in " + path);
    return ps;
}

void write_points_csv(const PointSet& ps, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("csv: cannot open " + path + " for writing");
    for (const auto& p : ps.points) {
        for (int j = 0; j < ps.dim; ++j) {
            if (j) out << ',';
            out << format_double(p[j]);
        }
        out << '\n';
    }
    if (!out) throw std::invalid_argument("csv: write failed for " + path);
}

nlohmann::json to_json(const Window& w) {
    return {{"center", vector_json(w.center)}, {"half_side", w.half_side}};
}

Window window_from_json(const nlohmann::json& j) {
    Window w;
    w.center = vector_from_json(j.at("center"));
    w.half_side = j.at("half_side").get<double>();
    if (w.half_side <= 0) throw std::invalid_argument("half_side must be positive");
    return w;
}

nlohmann::json to_json(const Lq& q) {
    if (q.infinite) return "inf";
    return q.value;
}

Lq lq_from_json(const nlohmann::json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return Lq::inf();
        throw std::invalid_argument("q must be a number or \"inf\"");
    }
    return Lq::finite(j.get<double>());
}

nlohmann::json to_json(const CoverageReport& r) {
    nlohmann::json j;
    switch (r.state) {
        case CoverState::covered: j["state"] = "covered"; break;
        case CoverState::uncovered: j["state"] = "uncovered"; break;
        case CoverState::undecided: j["state"] = "undecided"; break;
    }
    if (r.witness) j["witness"] = vector_json(*r.witness);
    j["resolution_reached"] = r.resolution_reached;
    return j;
}

nlohmann::json to_json(const LqEstimate& e) {
    nlohmann::json j;
    j["q"] = to_json(e.q);
    j["value"] = e.value;
    j["window"] = to_json(e.window);
    j["points_per_axis"] = e.points_per_axis;
    if (e.tail_bound) j["tail_bound"] = *e.tail_bound;
    return j;
}

nlohmann::json to_json(const MZReport& r) {
    nlohmann::json j;
    j["measured_ratio_upper"] = r.measured_ratio_upper;
    j["measured_ratio_lower"] = r.measured_ratio_lower;
    if (r.theoretical_C1) j["theoretical_C1"] = *r.theoretical_C1;
    if (r.theoretical_C2) j["theoretical_C2"] = *r.theoretical_C2;
    if (r.theoretical_C3) j["theoretical_C3"] = *r.theoretical_C3;
    nlohmann::json p;
    p["delta"] = r.params.delta;
    p["delta1"] = r.params.delta1;
    p["sigma"] = r.params.sigma;
    p["m"] = r.params.m;
    p["q"] = to_json(r.params.q);
    p["n_mult"] = r.params.n_mult;
    p["c_mq"] = r.params.c_mq;
    j["params"] = std::move(p);
    return j;
}

nlohmann::json to_json(const CubeMZReport& r) {
    nlohmann::json j;
    j["degree"] = r.degree;
    j["m"] = r.m;
    j["b"] = r.b;
    j["grid_factor"] = r.grid_factor;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["positive_coeffs"] = r.positive_coeffs;
    j["gamma_slack"] = r.gamma_slack;
    j["max_factor"] = r.max_factor;
    j["within_gamma"] = r.within_gamma;
    j["d_n"] = r.d_n;
    j["tau0_b"] = r.tau0_b;
    return j;
}

nlohmann::json to_json(const TensorChebSeries& s) {
    nlohmann::json j;
    j["m"] = s.m;
    j["n"] = s.n;
    j["b"] = s.b;
    j["coeffs"] = coeff_table(s.m, s.n + 1, s.coeffs);
    return j;
}

TensorChebSeries series_from_json(const nlohmann::json& j) {
    TensorChebSeries s;
    s.m = j.at("m").get<int>();
    s.n = j.at("n").get<int>();
    s.b = j.at("b").get<double>();
    if (s.m < 1 || s.n < 0 || s.b <= 0) throw std::invalid_argument("bad series parameters");
    s.coeffs = coeffs_from_table(j.at("coeffs"), s.m, s.n + 1);
    return s;
}

nlohmann::json to_json(const EfetModel& model) {
    nlohmann::json j;
    if (const auto* sp = std::get_if<SincPower>(&model)) {
        j["kind"] = "sinc_power";
        j["sigma"] = sp->sigma;
        j["gamma"] = sp->gamma;
        j["m"] = sp->m;
    } else if (const auto* ss = std::get_if<ShiftedSinc>(&model)) {
        j["kind"] = "shifted_sinc";
        j["sigma"] = ss->sigma;
        j["shift"] = vector_json(ss->shift);
    } else if (const auto* ep = std::get_if<ExpPolynomial>(&model)) {
        j["kind"] = "exp_polynomial";
        j["m"] = ep->m;
        j["degree"] = ep->degree;
        j["coeffs"] = coeff_table(ep->m, ep->degree + 1, ep->coeffs);
    } else {
        const auto& ms = std::get<MollifiedSeries>(model);
        j["kind"] = "mollified_series";
        j["base"] = to_json(ms.base);
        j["n"] = ms.n;
        j["beta"] = ms.beta;
        j["sigma"] = ms.sigma;
        j["q"] = to_json(ms.q);
        j["m"] = ms.m;
    }
    return j;
}

EfetModel model_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "sinc_power") {
        SincPower sp;
        sp.sigma = j.at("sigma").get<double>();
        sp.gamma = j.at("gamma").get<int>();
        sp.m = j.at("m").get<int>();
        if (sp.sigma <= 0 || sp.gamma < 1 || sp.m < 1)
            throw std::invalid_argument("bad sinc_power parameters");
        return sp;
    }
    if (kind == "shifted_sinc") {
        ShiftedSinc ss;
        ss.sigma = j.at("sigma").get<double>();
        ss.shift = vector_from_json(j.at("shift"));
        if (ss.sigma <= 0 || ss.shift.size() < 1)
            throw std::invalid_argument("bad shifted_sinc parameters");
        return ss;
    }
    if (kind == "exp_polynomial") {
        ExpPolynomial ep;
        ep.m = j.at("m").get<int>();
        ep.degree = j.at("degree").get<int>();
        if (ep.m < 1 || ep.degree < 0)
            throw std::invalid_argument("bad exp_polynomial parameters");
        ep.coeffs = coeffs_from_table(j.at("coeffs"), ep.m, ep.degree + 1);
        return ep;
    }
    if (kind == "mollified_series") {
        MollifiedSeries ms;
        ms.base = series_from_json(j.at("base"));
        ms.n = j.at("n").get<int>();
        ms.beta = j.at("beta").get<double>();
        ms.sigma = j.at("sigma").get<double>();
        ms.q = lq_from_json(j.at("q"));
        ms.m = j.at("m").get<int>();
        if (ms.n < 1 || ms.beta <= 0 || ms.sigma <= 0 || ms.m < 1)
            throw std::invalid_argument("bad mollified_series parameters");
        return ms;
    }
    throw std::invalid_argument("unknown model kind: " + kind);
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void write_json(const nlohmann::json& j, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open " + path + " for writing");
    out << dump_json(j);
    if (!out) throw std::invalid_argument("write failed for " + path);
}

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("json parse error in " + path + ": " + e.what());
    }
    return j;
}

}  // namespace mz
