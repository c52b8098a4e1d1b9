#pragma once

#include <string>

#include <json.hpp>

#include "mz/discretize.hpp"

namespace mz {

// CSV: one point per line, coordinates separated by commas, no header.
PointSet read_points_csv(const std::string& path);
void write_points_csv(const PointSet& ps, const std::string& path);

nlohmann::json to_json(const Window& w);
Window window_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Lq& q);
Lq lq_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CoverageReport& r);
nlohmann::json to_json(const LqEstimate& e);
nlohmann::json to_json(const MZReport& r);
nlohmann::json to_json(const CubeMZReport& r);

// {m, n, b, coeffs: [[k_1..k_m, re, im], ...]}
nlohmann::json to_json(const TensorChebSeries& s);
TensorChebSeries series_from_json(const nlohmann::json& j);

// Tagged with a "kind" discriminator: sinc_power, shifted_sinc,
// exp_polynomial, mollified_series.
nlohmann::json to_json(const EfetModel& m);
EfetModel model_from_json(const nlohmann::json& j);

// Pretty, 2-space indent; nlohmann objects iterate in key order, so output is
// deterministic.
std::string dump_json(const nlohmann::json& j);
void write_json(const nlohmann::json& j, const std::string& path);
nlohmann::json load_json(const std::string& path);

}  // namespace mz
