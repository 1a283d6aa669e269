#include "dcbam/decision_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "dcbam/canonical_json.hpp"
#include "dcbam/errors.hpp"

namespace dcbam {

bool QualityAttributeWeights::contains(const std::string& qa) const {
  return std::any_of(entries.begin(), entries.end(),
                     [&](const QaWeight& w) { return w.name == qa; });
}

double QualityAttributeWeights::sum() const {
  double total = 0.0;
  for (const auto& w : entries) total += w.score;
  return total;
}

std::string ValidationResult::summary() const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.message;
  }
  return out;
}

std::string portfolio_label(std::span<const std::string> dad_ids) {
  std::string out;
  for (const auto& id : dad_ids) {
    if (!out.empty()) out += '+';
    out += id;
  }
  return out;
}

DecisionCatalog::DecisionCatalog(QualityAttributeWeights weights,
                                 std::vector<ArchitecturalStrategy> strategies,
                                 std::vector<DiversifiedDecision> dads,
                                 double scale_factor)
    : weights_(std::move(weights)),
      strategies_(std::move(strategies)),
      dads_(std::move(dads)),
      scale_factor_(scale_factor) {}

const DiversifiedDecision& DecisionCatalog::dad(const std::string& id) const {
  auto it = std::find_if(dads_.begin(), dads_.end(),
                         [&](const DiversifiedDecision& d) { return d.id == id; });
  if (it == dads_.end()) throw ReferenceError(id, "DAD lookup");
  return *it;
}

const ArchitecturalStrategy& DecisionCatalog::strategy(const std::string& id) const {
  auto it = std::find_if(strategies_.begin(), strategies_.end(),
                         [&](const ArchitecturalStrategy& s) { return s.id == id; });
  if (it == strategies_.end()) throw ReferenceError(id, "strategy lookup");
  return *it;
}

bool DecisionCatalog::has_dad(const std::string& id) const {
  return std::any_of(dads_.begin(), dads_.end(),
                     [&](const DiversifiedDecision& d) { return d.id == id; });
}

ValidationResult validate_qa_scores(const QualityAttributeWeights& weights) {
  ValidationResult result;
  std::set<std::string> seen;
  for (const auto& w : weights.entries) {
    if (!seen.insert(w.name).second) {
      result.violations.push_back(
          {"duplicate-qa", "quality attribute '" + w.name + "' listed twice"});
    }
    if (!std::isfinite(w.score) || w.score < 0.0) {
      result.violations.push_back(
          {"negative-score", "score of '" + w.name + "' is " +
                                 (std::isfinite(w.score) ? format_number(w.score)
                                                         : std::string("not finite")) +
                                 ", must be >= 0"});
    }
  }
  const double total = weights.sum();
  if (!std::isfinite(total) || std::abs(total - kWeightTotal) > kWeightSumTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "QA scores must sum to 100 (got " << total << ")";
    result.violations.push_back({"bad-sum", os.str()});
  }
  return result;
}

ValidationResult validate_dad(const DiversifiedDecision& dad,
                              const QualityAttributeWeights& weights) {
  ValidationResult result;
  auto add = [&](std::string code, std::string msg) {
    result.violations.push_back({std::move(code), dad.id + ": " + std::move(msg)});
  };
  if (dad.id.empty()) add("empty-id", "DAD id must not be empty");
  for (const auto& [qa, value] : dad.contrib) {
    if (!(value >= -1.0 && value <= 1.0)) {
      add("contrib-range", "contribution to '" + qa + "' is " +
                               (std::isfinite(value) ? format_number(value) : "not finite") +
                               ", outside [-1, 1]");
    }
    if (!weights.contains(qa)) {
      add("unknown-qa", "contribution names unknown quality attribute '" + qa + "'");
    }
  }
  for (const auto& w : weights.entries) {
    if (!dad.contrib.contains(w.name)) {
      add("missing-qa", "no contribution score for quality attribute '" + w.name + "'");
    }
  }
  if (!(dad.raw_cost >= 1.0 && dad.raw_cost <= 100.0)) {
    add("cost-range", "raw cost " +
                          (std::isfinite(dad.raw_cost) ? format_number(dad.raw_cost)
                                                       : std::string("not finite")) +
                          " outside [1, 100]");
  }
  if (!(dad.scale_factor > 0.0) || !std::isfinite(dad.scale_factor)) {
    add("scale-factor", "scale factor must be a positive number");
  }
  std::set<std::string> strategies;
  for (const auto& s : dad.strategies) {
    if (!strategies.insert(s).second) add("duplicate-strategy", "strategy '" + s + "' listed twice");
  }
  return result;
}

double weighted_contribution(const std::map<std::string, double>& contrib,
                             const QualityAttributeWeights& weights) {
  double total = 0.0;
  for (const auto& w : weights.entries) {
    auto it = contrib.find(w.name);
    if (it == contrib.end()) {
      throw ValidationError("contribution row has no score for quality attribute '" +
                            w.name + "'");
    }
    total += w.score * it->second;
  }
  return total;
}

BenefitScore compute_benefit(const DiversifiedDecision& dad,
                             const QualityAttributeWeights& weights) {
  if (auto check = validate_qa_scores(weights); !check.ok()) {
    throw ValidationError(check.summary());
  }
  const double benefit = weighted_contribution(dad.contrib, weights);
  return {benefit, benefit * dad.scale_factor};
}

std::vector<RankedDad> rank_dads(std::span<const DiversifiedDecision> candidates,
                                 const QualityAttributeWeights& weights) {
  std::vector<RankedDad> ranked;
  ranked.reserve(candidates.size());
  for (const auto& dad : candidates) {
    ranked.push_back({dad.id, compute_benefit(dad, weights).benefit, dad.effective_cost()});
  }
  std::sort(ranked.begin(), ranked.end(), [](const RankedDad& a, const RankedDad& b) {
    if (a.benefit != b.benefit) return a.benefit > b.benefit;
    if (a.effective_cost != b.effective_cost) return a.effective_cost < b.effective_cost;
    return a.id < b.id;
  });
  return ranked;
}

BudgetReport check_budget(const Portfolio& portfolio, const DecisionCatalog& catalog) {
  BudgetReport report;
  report.budget = portfolio.budget;
  for (const auto& id : portfolio.dad_ids) {
    if (!catalog.has_dad(id)) throw ReferenceError(id, "portfolio '" + portfolio.id + "'");
    report.total += catalog.dad(id).effective_cost();
  }
  return report;
}

}  // namespace dcbam
