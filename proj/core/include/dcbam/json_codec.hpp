#pragma once

// JSON shapes shared by the project file, the CLI --json output and the
// HTTP API. Decoders report the offending location as a JSON pointer.

#include <string>
#include <vector>

#include "dcbam/canonical_json.hpp"
#include "dcbam/elicitation.hpp"
#include "dcbam/lattice.hpp"
#include "dcbam/portfolio.hpp"

namespace dcbam {

Json lattice_spec_to_json(const LatticeSpec& spec);
LatticeSpec lattice_spec_from_json(const Json& node, const std::string& path);

Json request_to_json(const PortfolioValuationRequest& request);
PortfolioValuationRequest request_from_json(const Json& node, const std::string& path = "");

/// Request echo, per-horizon prices, total, recommendation, convention and
/// engine version. Grids are left out; see lattice_to_json.
Json valuation_report(const PortfolioValuationRequest& request, const OptionValuation& valuation);

Json whatif_report(const PortfolioValuationRequest& request, const SweepRange& range,
                   const std::vector<WhatIfRow>& rows);

SweepRange sweep_range_from_json(const Json& node, const std::string& path);

Json rating_matrix_to_json(const RatingMatrix& matrix);
RatingMatrix rating_matrix_from_json(const Json& node, const std::string& path);

Json consistency_to_json(const ConsistencyReport& report);

}  // namespace dcbam
