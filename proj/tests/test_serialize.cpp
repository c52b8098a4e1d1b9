#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "mz/serialize.hpp"
#include "support.hpp"

using namespace mz;
using test::point_set;
using test::vec;
using test::window;
using cplx = std::complex<double>;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/mz_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("points CSV round trip preserves every bit") {
    TempFile f("pts.csv");
    PointSet ps = point_set({{0.1, -2.5}, {1.0 / 3.0, 1e-300}, {1e17, -0.0}});
    write_points_csv(ps, f.path);
    const PointSet back = read_points_csv(f.path);
    REQUIRE(back.dim == 2);
    REQUIRE(back.size() == 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 2; ++j) CHECK(back.points[i][j] == ps.points[i][j]);

    // and the written form is stable
    write_points_csv(back, f.path + "2");
    std::ifstream a(f.path), b(f.path + "2");
    std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);
    std::remove((f.path + "2").c_str());
}

TEST_CASE("points CSV rejects malformed input") {
    TempFile f("bad.csv");
    {
        std::ofstream out(f.path);
        out << "1.0,2.0\n3.0\n";
    }
    CHECK_THROWS_WITH_AS(read_points_csv(f.path), "csv: inconsistent dimension at line 2",
                         std::invalid_argument);
    {
        std::ofstream out(f.path);
        out << "1.0,abc\n";
    }
    CHECK_THROWS_AS(read_points_csv(f.path), std::invalid_argument);
    {
        std::ofstream out(f.path);
        out << "\n";
    }
    CHECK_THROWS_AS(read_points_csv(f.path), std::invalid_argument);
    CHECK_THROWS_AS(read_points_csv("/nonexistent/dir/x.csv"), std::invalid_argument);
}

TEST_CASE("window and Lq JSON round trips") {
    const Window w = window({0.5, -1.25}, 2.0);
    const Window back = window_from_json(to_json(w));
    CHECK(back.half_side == w.half_side);
    CHECK(back.center == w.center);
    CHECK_THROWS_AS(window_from_json(nlohmann::json{{"center", {0.0}}, {"half_side", -1.0}}),
                    std::invalid_argument);

    CHECK(lq_from_json(to_json(Lq::inf())).infinite);
    CHECK(lq_from_json(to_json(Lq::finite(2.5))).value == 2.5);
    CHECK(lq_from_json(nlohmann::json(2)).value == 2.0);
    CHECK_THROWS_AS(lq_from_json(nlohmann::json("infinity")), std::invalid_argument);
    CHECK_THROWS_AS(lq_from_json(nlohmann::json(0.25)), std::invalid_argument);
}

TEST_CASE("series JSON round trip keeps sparse coefficients") {
    TensorChebSeries s;
    s.m = 2;
    s.n = 3;
    s.b = 1.5;
    s.coeffs = Eigen::VectorXcd::Zero(16);
    s.coeffs[s.index({1, 2})] = cplx(0.25, -1.0);
    s.coeffs[s.index({0, 0})] = cplx(3.0, 0.0);

    const nlohmann::json j = to_json(s);
    CHECK(j.at("coeffs").size() == 2);  // zeros dropped
    const TensorChebSeries back = series_from_json(j);
    CHECK(back.m == 2);
    CHECK(back.n == 3);
    CHECK(back.b == 1.5);
    REQUIRE(back.coeffs.size() == 16);
    CHECK(back.coeffs == s.coeffs);

    auto bad = j;
    bad["coeffs"][0][0] = 7;  // index out of range for n = 3
    CHECK_THROWS_AS(series_from_json(bad), std::invalid_argument);
}

TEST_CASE("model JSON round trips for all four kinds") {
    const EfetModel sp = SincPower{2.0, 3, 2};
    const EfetModel sp2 = model_from_json(to_json(sp));
    CHECK(std::get<SincPower>(sp2).gamma == 3);
    CHECK(to_json(sp).at("kind") == "sinc_power");

    const EfetModel ss = ShiftedSinc{M_PI, vec({0.5, -1.0})};
    const EfetModel ss2 = model_from_json(to_json(ss));
    CHECK(std::get<ShiftedSinc>(ss2).shift == vec({0.5, -1.0}));

    ExpPolynomial ep;
    ep.m = 1;
    ep.degree = 2;
    ep.coeffs.resize(3);
    ep.coeffs << cplx(1, 0), cplx(0, 0), cplx(0, -2);
    const EfetModel ep2 = model_from_json(to_json(EfetModel{ep}));
    CHECK(std::get<ExpPolynomial>(ep2).coeffs == ep.coeffs);

    MollifiedSeries ms;
    ms.base.m = 1;
    ms.base.n = 2;
    ms.base.b = 1.0;
    ms.base.coeffs = Eigen::VectorXcd::Zero(3);
    ms.base.coeffs[0] = cplx(1, 0);
    ms.n = 1;
    ms.beta = 4.0;
    ms.sigma = 2.0;
    ms.q = Lq::finite(2.0);
    ms.m = 1;
    const EfetModel ms2 = model_from_json(to_json(EfetModel{ms}));
    CHECK(std::get<MollifiedSeries>(ms2).beta == 4.0);
    CHECK(!std::get<MollifiedSeries>(ms2).q.infinite);

    // the two models evaluate identically after the round trip
    const auto x = vec({0.3});
    CHECK(std::abs(evaluate(EfetModel{ms}, x) - evaluate(ms2, x)) < 1e-15);

    CHECK_THROWS_WITH_AS(model_from_json(nlohmann::json{{"kind", "mystery"}}),
                         "unknown model kind: mystery", std::invalid_argument);
}

TEST_CASE("report serializations carry the optional fields") {
    CoverageReport cr;
    cr.state = CoverState::uncovered;
    cr.witness = vec({0.25});
    cr.resolution_reached = 0.125;
    const auto j = to_json(cr);
    CHECK(j.at("state") == "uncovered");
    CHECK(j.at("witness")[0] == 0.25);

    CoverageReport cov;
    cov.state = CoverState::covered;
    CHECK(!to_json(cov).contains("witness"));

    MZReport mr;
    mr.measured_ratio_upper = 1.5;
    mr.theoretical_C1 = 2.5;
    mr.params.q = Lq::inf();
    const auto mj = to_json(mr);
    CHECK(mj.at("theoretical_C1") == 2.5);
    CHECK(!mj.contains("theoretical_C2"));
    CHECK(mj.at("params").at("q") == "inf");

    LqEstimate est;
    est.q = Lq::finite(2.0);
    est.value = 3.14;
    est.window = window({0.0}, 1.0);
    est.points_per_axis = 64;
    CHECK(!to_json(est).contains("tail_bound"));
    est.tail_bound = 0.01;
    CHECK(to_json(est).at("tail_bound") == 0.01);
}

TEST_CASE("dump_json is deterministic and ends with a newline") {
    nlohmann::json j;
    j["b"] = 1;
    j["a"] = 2;
    const std::string s = dump_json(j);
    CHECK(s == "{\n  \"a\": 2,\n  \"b\": 1\n}\n");

    TempFile f("out.json");
    write_json(j, f.path);
    CHECK(load_json(f.path) == j);
    CHECK_THROWS_AS(load_json("/nonexistent/x.json"), std::invalid_argument);
    {
        std::ofstream bad(f.path);
        bad << "{ not json";
    }
    CHECK_THROWS_AS(load_json(f.path), std::invalid_argument);
}
