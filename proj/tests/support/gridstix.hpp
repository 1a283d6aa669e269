#pragma once

// GridStix case-study inputs: QA weights and the contribution / cost table.

#include <string>
#include <vector>

#include "dcbam/decision_model.hpp"

namespace dcbam::testing {

inline const std::vector<std::string>& qa_names() {
  static const std::vector<std::string> names{"Performance", "Reliability", "Availability",
                                              "Security",    "Scalability", "EnergyEfficiency"};
  return names;
}

inline QualityAttributeWeights gridstix_weights() {
  return {{{"Performance", 20}, {"Reliability", 30}, {"Availability", 20},
           {"Security", 10}, {"Scalability", 5}, {"EnergyEfficiency", 15}}};
}

inline DiversifiedDecision make_dad(std::string id, std::vector<std::string> strategies,
                                    const std::vector<double>& row, double raw_cost) {
  DiversifiedDecision d;
  d.id = std::move(id);
  d.strategies = std::move(strategies);
  for (std::size_t i = 0; i < row.size(); ++i) d.contrib[qa_names()[i]] = row[i];
  d.raw_cost = raw_cost;
  return d;
}

inline std::vector<DiversifiedDecision> gridstix_dads() {
  return {
      make_dad("DAD1", {"Wifi"}, {0.6, 1.0, 0.7, 0.3, 0.7, -0.2}, 30),
      make_dad("DAD2", {"BT"}, {0.1, 0.4, 0.9, 0.8, -0.4, 0.8}, 20),
      make_dad("DAD3", {"FH"}, {0.5, 0.8, 0.8, 0.0, 0.0, -0.4}, 15),
      make_dad("DAD4", {"SH"}, {0.2, -0.1, 0.5, 0.0, 0.0, 0.7}, 10),
      make_dad("DAD5", {"Wifi", "FH"}, {1.0, 1.0, 0.9, -0.1, 0.7, -0.6}, 45),
      make_dad("DAD6", {"Wifi", "SP"}, {0.7, 0.5, 0.5, -0.1, 0.7, 0.2}, 40),
      make_dad("DAD7", {"BT", "FH"}, {0.5, 0.2, 0.6, 0.8, -0.4, 0.7}, 35),
      make_dad("DAD8", {"BT", "SP"}, {0.2, 0.1, -0.2, 0.8, -0.4, 1.0}, 30),
  };
}

inline std::vector<ArchitecturalStrategy> gridstix_strategies() {
  return {{"Wifi", "Wi-Fi", 30.0},   {"BT", "Bluetooth", 20.0},
          {"GPRS", "GPRS", {}},      {"FH", "Fewest-hop routing", 15.0},
          {"SP", "Shortest-path", {}}, {"SH", "Single-hop routing", 10.0}};
}

inline DecisionCatalog gridstix_catalog() {
  return DecisionCatalog(gridstix_weights(), gridstix_strategies(), gridstix_dads());
}

inline std::string fixture_path(const std::string& name) {
  return std::string(DCBAM_FIXTURE_DIR) + "/" + name;
}

}  // namespace dcbam::testing
