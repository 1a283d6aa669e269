#pragma once

// Versioned persistence of a decision workspace (.dcbam.json) and CSV
// import of contribution tables and rating matrices.

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dcbam/decision_model.hpp"
#include "dcbam/elicitation.hpp"
#include "dcbam/lattice.hpp"
#include "dcbam/portfolio.hpp"

namespace dcbam {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kProjectExtension = ".dcbam.json";

struct WhatIfConfig {
  std::string id;
  std::string portfolio_id;
  SweepRange range;

  friend bool operator==(const WhatIfConfig& a, const WhatIfConfig& b) {
    return a.id == b.id && a.portfolio_id == b.portfolio_id && a.range.lo == b.range.lo &&
           a.range.hi == b.range.hi && a.range.step == b.range.step;
  }
};

struct Project {
  int schema_version = kSchemaVersion;
  std::string name;
  double scale_factor = kDefaultScaleFactor;
  double budget = 0.0;  // total project budget; default for ad hoc portfolios
  QualityAttributeWeights weights;
  std::vector<Scenario> scenarios;
  std::vector<ArchitecturalStrategy> strategies;
  std::vector<DiversifiedDecision> dads;
  std::vector<Portfolio> portfolios;
  LatticeSpec lattice_defaults;
  std::vector<WhatIfConfig> whatif_configs;
  std::vector<RatingMatrix> rating_matrices;

  DecisionCatalog catalog() const;
  const Portfolio& portfolio(const std::string& id) const;  // ReferenceError
  const Scenario& scenario(const std::string& id) const;    // ReferenceError
  const RatingMatrix& rating_matrix(const std::string& id) const;
  const WhatIfConfig& whatif_config(const std::string& id) const;

  friend bool operator==(const Project&, const Project&) = default;
};

/// A stored portfolio by id, or the comma-separated DAD list `spec`. A list
/// matching a stored portfolio's members returns that portfolio; otherwise
/// an ad hoc portfolio under the project budget. Unknown members surface
/// later as ReferenceError.
Portfolio resolve_portfolio(const Project& project, const std::string& spec);

/// Valuation request for a stored portfolio under the project's lattice
/// defaults and the portfolio's own base values.
PortfolioValuationRequest default_request(const Project& project, const Portfolio& portfolio);

/// Enforces every module invariant plus referential integrity. Throws
/// ValidationError, ReferenceError, VersionError or a lattice error.
void validate_project(const Project& project);

Json project_to_json(const Project& project);
/// Shape errors carry the JSON pointer of the offending value.
Project project_from_json(const Json& doc);

/// Parses and fully validates. ParseError carries "line L, column C" for
/// syntax errors and a JSON pointer for shape errors.
Project load_project(std::string_view document);
/// Canonical text: sorted keys, shortest round-trip numbers, trailing newline.
std::string save_project(const Project& project);

Project load_project_file(const std::filesystem::path& path);
/// Writes to a sibling temp file, then renames over `path`.
void save_project_file(const std::filesystem::path& path, const Project& project);
/// Reads a whole file; ParseError when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file_atomic(const std::filesystem::path& path, std::string_view text);

// --- CSV import ------------------------------------------------------------

enum class TableKind { contrib_matrix, ratings };

struct ContribRow {
  std::string dad_id;
  std::map<std::string, double> contrib;
  double raw_cost = 0.0;
};

/// Header: dad_id,<qa 1>,...,<qa n>,cost
struct ContribTable {
  std::vector<std::string> qa_names;
  std::vector<ContribRow> rows;

  std::size_t row_count() const noexcept { return rows.size(); }
  std::size_t column_count() const noexcept { return qa_names.size() + 2; }
};

/// Header: rater,<item 1>,...,<item n>. Rank cells may be mid-ranks.
ContribTable import_contrib_table(std::string_view csv);
RatingMatrix import_ratings_table(std::string_view csv);

using ImportedTable = std::variant<ContribTable, RatingMatrix>;
ImportedTable import_table(std::string_view csv, TableKind kind);

}  // namespace dcbam
