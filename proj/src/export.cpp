#include "sturmkit/export.hpp"

namespace sturmkit {

namespace {

template <class T>
nlohmann::json or_null(const std::optional<T>& x) {
  return x ? nlohmann::json(*x) : nlohmann::json(nullptr);
}

}  // namespace

void to_json(nlohmann::json& j, const Interval& I) { j = nlohmann::json::array({I.a, I.b}); }

void to_json(nlohmann::json& j, const ZeroSet& zs) {
  j = {{"interval", zs.interval}, {"closed", zs.closed}, {"count", zs.size()}, {"zeros", zs.zeros}};
}

void to_json(nlohmann::json& j, const SctVerdict& v) {
  nlohmann::json u_zeros = nullptr;
  if (v.u_zeros) u_zeros = nlohmann::json::array({v.u_zeros->first, v.u_zeros->second});
  j = {
      {"outcome", to_string(v.outcome)},
      {"a", v.interval.a},
      {"b", v.interval.b},
      {"witness_theta", or_null(v.witness_theta)},
      {"disconjugate", v.disconjugate},
      {"diagnostics",
       {
           {"u_zeros", u_zeros},
           {"min_zero_count", or_null(v.min_zero_count)},
           {"sweep_directions", v.diagnostics.sweep_directions},
           {"zero_free_in_sweep", v.diagnostics.zero_free_in_sweep},
           {"sweep_consistent", v.diagnostics.sweep_consistent},
           {"zeros_interior", or_null(v.diagnostics.zeros_interior)},
       }},
  };
}

void to_json(nlohmann::json& j, const ConverseReport& r) {
  j = {
      {"epsilon", r.epsilon},
      {"J", r.J},
      {"delta", r.delta},
      {"q2_level", r.q2_level},
      {"cos_zeros", r.cos_zeros},
      {"expected_first", r.expected_first},
      {"expected_second", r.expected_second},
      {"zeros_in_J", r.zeros_in_J},
      {"q1_le_q2", r.q1_le_q2},
      {"verdict", r.verdict},
      {"min_open_zero_count", r.min_open_zero_count},
      {"M", r.M},
      {"large_M_verdict", r.large_M_verdict},
      {"large_M_min_zeros_in_J", r.large_M_min_zeros_in_J},
  };
}

void to_json(nlohmann::json& j, const Theorem1Report& r) {
  j = {
      {"epsilon", r.epsilon},
      {"lambda", r.lambda},
      {"c1", r.c1},
      {"c2", r.c2},
      {"f_lower_bound", r.f_lower_bound},
      {"g_sup_bound", r.g_sup_bound},
      {"min_v", r.min_v},
      {"zero_free", r.zero_free},
      {"sct_fails", r.sct_fails},
      {"argmin_v", r.argmin_v},
      {"zero_count", r.zero_count},
      {"coefficient_discrepancy", r.coefficient_discrepancy},
      {"bound_applicable", r.bound_applicable},
      {"f_tail_min", r.f_tail_min},
      {"f_bound_holds", r.f_bound_holds},
      {"g_tail_max", r.g_tail_max},
      {"g_bound_holds", r.g_bound_holds},
  };
}

void to_json(nlohmann::json& j, const ZeroTrack& track) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < track.lambda_grid.size(); ++i)
    rows.push_back({{"lambda", track.lambda_grid[i]}, {"t0", track.t0[i]}, {"dt0_dlambda", track.dt0_dlambda[i]}});
  j = {{"samples", rows}, {"exit_lambda", or_null(track.exit_lambda)}};
}

void to_json(nlohmann::json& j, const PropertyResult& r) {
  j = {{"suite", r.name}, {"passed", r.passed}, {"failed", r.failed}};
}

}  // namespace sturmkit
