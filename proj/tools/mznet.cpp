// mznet: sampling-net certification, Chebyshev constants, and
// Marcinkiewicz-Zygmund verification experiments.
//
// Exit codes: 0 success (net-check: covered), 1 a certified mathematical
// violation or failed certification, 2 bad parameters or I/O.

#include <CLI11.hpp>

#include <charconv>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "mz/errors.hpp"
#include "mz/serialize.hpp"

namespace {

using namespace mz;

std::string fmt(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

Eigen::VectorXd parse_vector(const std::string& s) {
    std::vector<double> vals;
    size_t start = 0;
    while (true) {
        const size_t comma = s.find(',', start);
        const std::string tok = s.substr(start, comma == std::string::npos ? std::string::npos
                                                                           : comma - start);
        try {
            size_t used = 0;
            vals.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument("");
        } catch (...) {
            throw std::invalid_argument("bad coordinate list: " + s);
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    Eigen::VectorXd v(static_cast<Eigen::Index>(vals.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = vals[static_cast<size_t>(i)];
    return v;
}

Lq parse_q(const std::string& s) {
    if (s == "inf") return Lq::inf();
    try {
        return Lq::finite(std::stod(s));
    } catch (const std::invalid_argument&) {
        throw;
    } catch (...) {
        throw std::invalid_argument("q must be a number or inf");
    }
}

// "a,b,c" or "a:b:step" (inclusive)
std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    if (s.find(':') != std::string::npos) {
        int a = 0, b = 0, step = 0;
        if (std::sscanf(s.c_str(), "%d:%d:%d", &a, &b, &step) != 3 || step <= 0 || b < a)
            throw std::invalid_argument("bad range: " + s + " (want a:b:step)");
        for (int v = a; v <= b; v += step) out.push_back(v);
        return out;
    }
    size_t start = 0;
    while (true) {
        const size_t comma = s.find(',', start);
        const std::string tok = s.substr(start, comma == std::string::npos ? std::string::npos
                                                                           : comma - start);
        try {
            out.push_back(std::stoi(tok));
        } catch (...) {
            throw std::invalid_argument("bad integer list: " + s);
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

void emit(const nlohmann::json& j, const std::string& out_path) {
    std::cout << dump_json(j);
    if (!out_path.empty()) write_json(j, out_path);
}

struct ModelFlags {
    std::string file;
    std::string kind;
    double sigma = 1.0;
    int gamma = 1;
    std::string shift;

    void attach(CLI::App* cmd) {
        cmd->add_option("--model", file, "model JSON file");
        cmd->add_option("--kind", kind, "inline model: sinc_power or shifted_sinc");
        cmd->add_option("--sigma", sigma, "inline model type");
        cmd->add_option("--gamma", gamma, "sinc power exponent");
        cmd->add_option("--shift", shift, "shifted sinc center, comma separated");
    }

    EfetModel build(int m) const {
        if (!file.empty()) return model_from_json(load_json(file));
        if (kind == "sinc_power") return SincPower{sigma, gamma, m};
        if (kind == "shifted_sinc") {
            if (shift.empty()) return ShiftedSinc{sigma, Eigen::VectorXd::Zero(m)};
            return ShiftedSinc{sigma, parse_vector(shift)};
        }
        throw std::invalid_argument("need --model or --kind sinc_power|shifted_sinc");
    }
};

int run(int argc, char** argv) {
    CLI::App app{"Marcinkiewicz-Zygmund sampling nets for entire functions of exponential type"};
    app.require_subcommand(1);

    // net-check
    auto* check = app.add_subcommand("net-check", "certify that a net delta-covers a window");
    std::string ck_points, ck_center = "0", ck_out;
    double ck_delta = 0.1, ck_half = 1.0;
    int ck_depth = 40;
    check->add_option("--points", ck_points, "points CSV")->required();
    check->add_option("--delta", ck_delta, "covering radius")->required();
    check->add_option("--center", ck_center, "window center, comma separated");
    check->add_option("--half", ck_half, "window half side");
    check->add_option("--max-depth", ck_depth, "subdivision depth limit");
    check->add_option("--out", ck_out, "write the report here instead of stdout");
    int exit_code = 0;
    check->callback([&] {
        const PointSet ps = read_points_csv(ck_points);
        Window w;
        w.center = parse_vector(ck_center);
        w.half_side = ck_half;
        const CoverageReport r = covering_check(ps, ck_delta, w, ck_depth);
        nlohmann::json j;
        j["schema_version"] = 1;
        j["params"] = {{"delta", ck_delta}, {"max_depth", ck_depth}, {"window", to_json(w)},
                       {"points", ck_points}};
        j["report"] = to_json(r);
        emit(j, ck_out);
        if (r.state != CoverState::covered) exit_code = 1;
    });

    // net-thin
    auto* thin = app.add_subcommand("net-thin", "greedy delta-separated subset of a net");
    std::string th_points, th_out;
    double th_delta = 0.1;
    thin->add_option("--points", th_points, "points CSV")->required();
    thin->add_option("--delta", th_delta, "separation radius")->required();
    thin->add_option("--out", th_out, "output points CSV")->required();
    thin->callback([&] {
        const PointSet ps = read_points_csv(th_points);
        const PointSet kept = greedy_thin(ps, th_delta);
        write_points_csv(kept, th_out);
        nlohmann::json j;
        j["schema_version"] = 1;
        j["params"] = {{"delta", th_delta}, {"points", th_points}};
        j["input_points"] = ps.size();
        j["output_points"] = kept.size();
        write_json(j, th_out + ".meta.json");
        std::cout << dump_json(j);
    });

    // net-partition
    auto* part = app.add_subcommand("net-partition",
                                    "split cube centers into families with disjoint cubes");
    std::string pt_points, pt_out;
    double pt_h = 0.1;
    long long pt_bound = 0;
    part->add_option("--points", pt_points, "cube centers CSV")->required();
    part->add_option("--half", pt_h, "cube half side")->required();
    part->add_option("--n-bound", pt_bound, "intersection multiplicity bound")->required();
    part->add_option("--out", pt_out, "write the result here instead of stdout");
    part->callback([&] {
        const PointSet ps = read_points_csv(pt_points);
        const auto bins = disjoint_partition(ps, pt_h, pt_bound);
        nlohmann::json j;
        j["schema_version"] = 1;
        j["params"] = {{"h", pt_h}, {"n_bound", pt_bound}, {"points", pt_points}};
        j["bins"] = bins;
        emit(j, pt_out);
    });

    // constants
    auto* cons = app.add_subcommand("constants",
                                    "Marcinkiewicz-Zygmund frame constants for a configuration");
    double cn_delta = 0.1, cn_delta1 = 0.1, cn_sigma = 1.0, cn_cmq = 1.0;
    int cn_m = 1;
    long long cn_mult = 0;
    std::string cn_q = "2", cn_out;
    cons->add_option("--delta", cn_delta, "covering radius")->required();
    cons->add_option("--delta1", cn_delta1, "separation radius")->required();
    cons->add_option("--sigma", cn_sigma, "exponential type")->required();
    cons->add_option("--m", cn_m, "dimension")->required();
    cons->add_option("--q", cn_q, "integrability exponent or inf");
    cons->add_option("--n-mult", cn_mult, "packing multiplicity");
    cons->add_option("--c-mq", cn_cmq, "structural constant");
    cons->add_option("--out", cn_out, "write the result here instead of stdout");
    cons->callback([&] {
        const Lq q = parse_q(cn_q);
        const double c1 = c1_bound(cn_delta1, cn_sigma, cn_m, q, cn_mult, cn_cmq);
        const double c2 = c2_bound(cn_delta, cn_sigma, cn_m, q, cn_cmq);
        nlohmann::json j;
        j["schema_version"] = 1;
        j["params"] = {{"delta", cn_delta},   {"delta1", cn_delta1}, {"sigma", cn_sigma},
                       {"m", cn_m},           {"q", to_json(q)},     {"n_mult", cn_mult},
                       {"c_mq", cn_cmq}};
        j["C1"] = c1;
        j["C2"] = c2;
        j["d"] = d_exponent(cn_m, q);
        j["delta_star"] = delta_star(cn_delta1, cn_sigma, cn_m, q, cn_mult, c2, cn_cmq);
        emit(j, cn_out);
    });

    // gamma0
    auto* g0 = app.add_subcommand("gamma0", "zero of the Chebyshev rate function psi");
    double g0_alpha = 1.0, g0_param = 0.0;
    std::string g0_kind;
    g0->add_option("--alpha", g0_alpha, "alpha(K) directly");
    g0->add_option("--kind", g0_kind, "interval, ellipse, disk, or square");
    g0->add_option("--param", g0_param, "ellipse R or disk radius");
    g0->callback([&] {
        double alpha = g0_alpha;
        if (!g0_kind.empty()) {
            CompactKind kind;
            if (g0_kind == "interval") kind = CompactKind::interval;
            else if (g0_kind == "ellipse") kind = CompactKind::ellipse;
            else if (g0_kind == "disk") kind = CompactKind::disk;
            else if (g0_kind == "square") kind = CompactKind::square;
            else throw std::invalid_argument("unknown compact kind: " + g0_kind);
            alpha = alpha_of(kind, g0_param).alpha;
        }
        std::printf("%.4f\n", gamma0(alpha));
    });

    // tau0
    auto* t0 = app.add_subcommand("tau0", "matched rate parameter for the cube of half side b");
    double t0_b = 1.0;
    t0->add_option("--b", t0_b, "cube half side")->required();
    t0->callback([&] { std::printf("%.10f\n", tau0(t0_b)); });

    // cheb-fit
    auto* fit = app.add_subcommand("cheb-fit", "tensor Fourier-Chebyshev fit of a model");
    ModelFlags fit_model;
    fit_model.attach(fit);
    double ft_b = 1.0;
    int ft_n = 8, ft_m = 1, ft_K = 0;
    std::string ft_out;
    fit->add_option("--b", ft_b, "fit cube half side")->required();
    fit->add_option("--n", ft_n, "per-axis degree")->required();
    fit->add_option("--m", ft_m, "dimension");
    fit->add_option("--K", ft_K, "quadrature points per axis (default 2(n+1))");
    fit->add_option("--out", ft_out, "write the series here instead of stdout");
    fit->callback([&] {
        const EfetModel model = fit_model.build(ft_m);
        const int m = model_dim(model);
        const int K = ft_K > 0 ? ft_K : 2 * (ft_n + 1);
        const RealFn f = [&model](const Eigen::VectorXd& x) { return evaluate(model, x); };
        const TensorChebSeries s = fit_tensor_cheb(f, ft_b, ft_n, m, K);
        nlohmann::json j;
        j["schema_version"] = 1;
        j["params"] = {{"b", ft_b}, {"n", ft_n}, {"m", m}, {"K", K}, {"model", to_json(model)}};
        j["series"] = to_json(s);
        emit(j, ft_out);
    });

    // rate-experiment
    auto* rate = app.add_subcommand("rate-experiment",
                                    "measured Chebyshev convergence rate of e^(sigma x)");
    double rt_sigma = 1.0, rt_tau = 2.0;
    std::string rt_list = "24:40:4", rt_out;
    rate->add_option("--sigma", rt_sigma, "exponential type");
    rate->add_option("--tau", rt_tau, "cube scale parameter")->required();
    rate->add_option("--n-list", rt_list, "degrees, a,b,c or a:b:step");
    rate->add_option("--out", rt_out, "write the CSV here instead of stdout");
    rate->callback([&] {
        const auto pts = convergence_rate_experiment(rt_sigma, rt_tau, parse_int_list(rt_list));
        std::string csv;
        csv += "# schema_version 1\n";
        csv += "# sigma " + fmt(rt_sigma) + " tau " + fmt(rt_tau) + "\n";
        csv += "# predicted limit rate exp(psi(tau)) = " + fmt(std::exp(psi(rt_tau))) + "\n";
        csv += "n,error,rate\n";
        for (const auto& p : pts)
            csv += std::to_string(p.n) + "," + fmt(p.error) + "," + fmt(p.rate) + "\n";
        if (rt_out.empty()) {
            std::cout << csv;
        } else {
            std::ofstream out(rt_out, std::ios::binary);
            if (!out) throw std::invalid_argument("cannot open " + rt_out + " for writing");
            out << csv;
        }
    });

    // mz-verify
    auto* verify = app.add_subcommand("mz-verify",
                                      "certified sup-norm discretization check on a net");
    ModelFlags vf_model;
    vf_model.attach(verify);
    std::string vf_points, vf_center = "0", vf_out;
    double vf_delta = 0.1, vf_sigma = 1.0, vf_half = 1.0;
    int vf_m = 1, vf_ppa = 2001, vf_depth = 40;
    verify->add_option("--points", vf_points, "net CSV")->required();
    verify->add_option("--delta", vf_delta, "covering radius")->required();
    verify->add_option("--sigma-type", vf_sigma, "exponential type of the model")->required();
    verify->add_option("--m", vf_m, "dimension");
    verify->add_option("--center", vf_center, "window center, comma separated");
    verify->add_option("--half", vf_half, "window half side");
    verify->add_option("--grid-ppa", vf_ppa, "reference grid points per axis");
    verify->add_option("--max-depth", vf_depth, "covering subdivision depth limit");
    verify->add_option("--out", vf_out, "write the report here instead of stdout");
    verify->callback([&] {
        const PointSet net = read_points_csv(vf_points);
        const EfetModel model = vf_model.build(vf_m);
        Window w;
        w.center = parse_vector(vf_center);
        w.half_side = vf_half;
        const MZReport r = verify_sup_inequality(model, net, vf_delta, vf_sigma, vf_m, w,
                                                 vf_ppa, vf_depth);
        nlohmann::json j;
        j["schema_version"] = 1;
        j["params"] = {{"points", vf_points},   {"delta", vf_delta}, {"sigma", vf_sigma},
                       {"m", vf_m},             {"window", to_json(w)},
                       {"grid_ppa", vf_ppa},    {"max_depth", vf_depth},
                       {"model", to_json(model)}};
        j["report"] = to_json(r);
        emit(j, vf_out);
    });

    // cube-mz
    auto* cube = app.add_subcommand("cube-mz",
                                    "random exponential polynomials against Chebyshev knots");
    int cb_n = 2, cb_m = 1, cb_factor = 4, cb_trials = 50;
    double cb_b = 1.0, cb_slack = 0.5;
    std::uint64_t cb_seed = 1;
    bool cb_positive = false;
    std::string cb_out;
    cube->add_option("--degree", cb_n, "per-axis degree N")->required();
    cube->add_option("--b", cb_b, "cube half side")->required();
    cube->add_option("--m", cb_m, "dimension");
    cube->add_option("--gamma-slack", cb_slack, "accepted factor above one");
    cube->add_option("--grid-factor", cb_factor, "knots per axis = factor*N + 1");
    cube->add_option("--trials", cb_trials, "random trials");
    cube->add_option("--seed", cb_seed, "base seed");
    cube->add_flag("--positive", cb_positive, "nonnegative real coefficients");
    cube->add_option("--out", cb_out, "write the report here instead of stdout");
    cube->callback([&] {
        const CubeMZReport r = cube_mz_experiment(cb_n, cb_b, cb_m, cb_slack, cb_factor,
                                                  cb_trials, cb_seed, cb_positive);
        nlohmann::json j;
        j["schema_version"] = 1;
        j["report"] = to_json(r);
        emit(j, cb_out);
        if (!r.within_gamma) exit_code = 1;
    });

    // witness
    auto* wit = app.add_subcommand("witness",
                                   "extremal shifted sinc for a net that fails to cover");
    std::string wt_points, wt_center = "0", wt_out;
    double wt_delta = 1.0, wt_sigma = 1.0, wt_c3 = 1.0, wt_half = 1.0;
    int wt_depth = 40;
    wit->add_option("--points", wt_points, "net CSV")->required();
    wit->add_option("--delta", wt_delta, "covering radius")->required();
    wit->add_option("--sigma-type", wt_sigma, "witness type")->required();
    wit->add_option("--c3", wt_c3, "target lower frame constant in (0,1]");
    wit->add_option("--center", wt_center, "window center, comma separated");
    wit->add_option("--half", wt_half, "window half side");
    wit->add_option("--max-depth", wt_depth, "covering subdivision depth limit");
    wit->add_option("--out", wt_out, "write the result here instead of stdout");
    wit->callback([&] {
        const PointSet net = read_points_csv(wt_points);
        Window w;
        w.center = parse_vector(wt_center);
        w.half_side = wt_half;
        const auto res = necessity_witness(net, wt_delta, wt_sigma, wt_c3, w, wt_depth);
        nlohmann::json j;
        j["schema_version"] = 1;
        j["params"] = {{"points", wt_points}, {"delta", wt_delta}, {"sigma", wt_sigma},
                       {"c3", wt_c3},         {"window", to_json(w)}};
        j["found"] = res.has_value();
        if (res) {
            nlohmann::json wj = nlohmann::json::array();
            for (Eigen::Index i = 0; i < res->witness.size(); ++i) wj.push_back(res->witness[i]);
            j["witness"] = wj;
            j["ratio"] = res->ratio;
            j["model"] = to_json(EfetModel{res->model});
        }
        emit(j, wt_out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const mz::assertion_error& e) {
        std::cerr << "violation: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
