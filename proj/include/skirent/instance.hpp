#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "skirent/rational.hpp"

namespace skirent {

/// One rental option: pay `cost` once, skis stay usable for `days` days.
/// `days == kForeverDays` means buying.
struct RentalOption {
  std::int64_t days = 1;
  Rational cost = 1;

  bool infinite() const { return is_forever(days); }
};

/// A menu of rental options plus the largest day count the harness evaluates.
struct Instance {
  std::vector<RentalOption> options;
  std::int64_t horizon = 1;

  void validate() const {
    if (options.empty()) throw std::invalid_argument("instance: needs at least one option");
    if (horizon < 1) throw std::invalid_argument("instance: horizon must be >= 1");
    for (const auto& opt : options) {
      if (opt.days < 1) throw std::invalid_argument("instance: option duration must be >= 1");
      if (opt.cost <= 0) throw std::invalid_argument("instance: option cost must be positive");
    }
  }

  bool has_buy_option() const {
    for (const auto& opt : options)
      if (opt.infinite()) return true;
    return false;
  }
};

/// Scales all costs uniformly so the cheapest option costs at least 1.
/// Returns the rescaled instance and the multiplier applied (1 if already fine).
inline std::pair<Instance, Rational> normalize_costs(const Instance& in) {
  in.validate();
  Rational min_cost = in.options.front().cost;
  for (const auto& opt : in.options) min_cost = std::min(min_cost, opt.cost);
  Rational scale = min_cost < 1 ? Rational(1) / min_cost : Rational(1);
  Instance out = in;
  for (auto& opt : out.options) opt.cost *= scale;
  return {std::move(out), scale};
}

// ---- JSON instance format ----------------------------------------------
// {"options": [{"days": <int or "inf">, "cost": "<p>/<q>" or <number>}, ...],
//  "horizon": <int>}
// String costs parse as exact rationals; bare numbers as exact decimals.

inline Rational cost_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  // Re-serialize floats to recover the shortest decimal literal, then parse
  // that exactly; "0.1" becomes 1/10, not the nearest binary double.
  if (j.is_number_float()) return parse_rational(j.dump());
  throw std::invalid_argument("instance json: cost must be a number or string");
}

inline Instance instance_from_json(const nlohmann::json& j) {
  Instance inst;
  if (!j.contains("options") || !j["options"].is_array())
    throw std::invalid_argument("instance json: missing options array");
  for (const auto& o : j["options"]) {
    RentalOption opt;
    const auto& d = o.at("days");
    if (d.is_string()) {
      if (d.get<std::string>() != "inf")
        throw std::invalid_argument("instance json: days must be an integer or \"inf\"");
      opt.days = kForeverDays;
    } else {
      opt.days = d.get<std::int64_t>();
    }
    opt.cost = cost_from_json(o.at("cost"));
    inst.options.push_back(std::move(opt));
  }
  inst.horizon = j.at("horizon").get<std::int64_t>();
  inst.validate();
  return inst;
}

inline nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json j;
  j["options"] = nlohmann::json::array();
  for (const auto& opt : inst.options) {
    nlohmann::json o;
    if (opt.infinite())
      o["days"] = "inf";
    else
      o["days"] = opt.days;
    if (denominator(opt.cost) == 1)
      o["cost"] = numerator(opt.cost).convert_to<std::int64_t>();
    else
      o["cost"] = format_rational(opt.cost);
    j["options"].push_back(std::move(o));
  }
  j["horizon"] = inst.horizon;
  return j;
}

}  // namespace skirent
