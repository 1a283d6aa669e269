#pragma once

// Data model for goals, scenarios, strategies and diversified architectural
// decisions (DADs), plus the benefit / cost / ranking arithmetic applied to
// them before any option valuation happens.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dcbam {

inline constexpr double kWeightTotal = 100.0;
inline constexpr double kWeightSumTolerance = 1e-9;
inline constexpr double kDefaultScaleFactor = 25.0;

struct QaWeight {
  std::string name;
  double score = 0.0;

  friend bool operator==(const QaWeight&, const QaWeight&) = default;
};

/// Stakeholder importance points per quality attribute, in elicitation order.
/// Holds arbitrary candidate values; use validate_qa_scores() to check them.
struct QualityAttributeWeights {
  std::vector<QaWeight> entries;

  bool contains(const std::string& qa) const;
  double sum() const;

  friend bool operator==(const QualityAttributeWeights&,
                         const QualityAttributeWeights&) = default;
};

struct Violation {
  std::string code;  // machine-readable: "negative-score", "bad-sum", ...
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  /// All messages joined with "; ".
  std::string summary() const;
};

struct Scenario {
  std::string id;
  std::string description;
  std::string qa_concern;
  std::string response_measure;
  // DADs the stakeholders shortlisted for this scenario; empty means all.
  std::vector<std::string> candidate_dads;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct ArchitecturalStrategy {
  std::string id;
  std::string name;
  // Raw (unscaled) deployment cost when the strategy is known on its own.
  // Only needed when de-duplicating shared strategies across a portfolio.
  std::optional<double> raw_cost;

  friend bool operator==(const ArchitecturalStrategy&,
                         const ArchitecturalStrategy&) = default;
};

/// A bundle of strategies deployed together, scored per QA in [-1, 1],
/// with a raw cost in [1, 100].
struct DiversifiedDecision {
  std::string id;
  std::vector<std::string> strategies;
  std::map<std::string, double> contrib;
  double raw_cost = 1.0;
  double scale_factor = kDefaultScaleFactor;

  double effective_cost() const noexcept { return raw_cost * scale_factor; }

  friend bool operator==(const DiversifiedDecision&,
                         const DiversifiedDecision&) = default;
};

struct Portfolio {
  std::string id;
  std::vector<std::string> dad_ids;
  double budget = 0.0;
  // Initial DAD values seeding the lattice; empty means "use scaled benefit".
  std::map<std::string, double> base_values;

  friend bool operator==(const Portfolio&, const Portfolio&) = default;
};

/// Id derived from the member list, e.g. "DAD5+DAD7".
std::string portfolio_label(std::span<const std::string> dad_ids);

struct BenefitScore {
  double benefit = 0.0;         // importance points, within [-100, 100]
  double scaled_benefit = 0.0;  // benefit * scale_factor
};

struct RankedDad {
  std::string id;
  double benefit = 0.0;
  double effective_cost = 0.0;
};

struct BudgetReport {
  double total = 0.0;
  double budget = 0.0;

  bool ok() const noexcept { return total <= budget; }
  double excess() const noexcept { return total > budget ? total - budget : 0.0; }
};

/// Lookup of DADs and strategies by id, with the weights used to score them.
class DecisionCatalog {
 public:
  DecisionCatalog() = default;
  DecisionCatalog(QualityAttributeWeights weights,
                  std::vector<ArchitecturalStrategy> strategies,
                  std::vector<DiversifiedDecision> dads,
                  double scale_factor = kDefaultScaleFactor);

  const QualityAttributeWeights& weights() const noexcept { return weights_; }
  const std::vector<DiversifiedDecision>& dads() const noexcept { return dads_; }
  const std::vector<ArchitecturalStrategy>& strategies() const noexcept {
    return strategies_;
  }
  double scale_factor() const noexcept { return scale_factor_; }

  /// Throws ReferenceError when `id` is unknown.
  const DiversifiedDecision& dad(const std::string& id) const;
  const ArchitecturalStrategy& strategy(const std::string& id) const;
  bool has_dad(const std::string& id) const;

 private:
  QualityAttributeWeights weights_;
  std::vector<ArchitecturalStrategy> strategies_;
  std::vector<DiversifiedDecision> dads_;
  double scale_factor_ = kDefaultScaleFactor;
};

/// All scores >= 0, unique names, sum == 100 within 1e-9. Every problem is
/// listed; nothing throws.
ValidationResult validate_qa_scores(const QualityAttributeWeights& weights);

/// Contribution bounds, cost bounds, positive scale and exact key match
/// against `weights`.
ValidationResult validate_dad(const DiversifiedDecision& dad,
                              const QualityAttributeWeights& weights);

/// sum_j weight_j * contrib_j with no validity checks on the weights.
/// Throws ValidationError if a weighted QA is missing from `contrib`.
double weighted_contribution(const std::map<std::string, double>& contrib,
                             const QualityAttributeWeights& weights);

/// Benefit of one DAD. Throws ValidationError on invalid weights or on a
/// contribution row that does not cover every QA.
BenefitScore compute_benefit(const DiversifiedDecision& dad,
                             const QualityAttributeWeights& weights);

/// Descending benefit; ties go to the lower effective cost, then to the
/// lexicographically smaller id.
std::vector<RankedDad> rank_dads(std::span<const DiversifiedDecision> candidates,
                                 const QualityAttributeWeights& weights);

/// Sum of member effective costs against the budget.
/// Throws ReferenceError for an unknown member id.
BudgetReport check_budget(const Portfolio& portfolio, const DecisionCatalog& catalog);

}  // namespace dcbam
