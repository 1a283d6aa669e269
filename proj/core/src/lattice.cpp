#include "dcbam/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dcbam/canonical_json.hpp"
#include "dcbam/errors.hpp"

namespace dcbam {

const char* to_string(DiscountConvention c) noexcept {
  return c == DiscountConvention::paper_1minus ? "paper-1minus" : "standard-1plus";
}

const char* to_string(ExerciseStyle s) noexcept {
  return s == ExerciseStyle::european ? "european" : "american";
}

DiscountConvention parse_convention(const std::string& text) {
  if (text == "paper-1minus") return DiscountConvention::paper_1minus;
  if (text == "standard-1plus") return DiscountConvention::standard_1plus;
  throw ValidationError("unknown discount convention '" + text +
                        "' (expected paper-1minus or standard-1plus)");
}

ExerciseStyle parse_style(const std::string& text) {
  if (text == "european") return ExerciseStyle::european;
  if (text == "american") return ExerciseStyle::american;
  throw ValidationError("unknown exercise style '" + text + "' (expected european or american)");
}

namespace {

std::string describe(double u, double d, double r) {
  return "u=" + format_number(u) + ", d=" + format_number(d) + ", r=" + format_number(r);
}

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) throw DomainError(std::string(name) + " must be finite");
}

// Shared by risk_neutral_prob and LatticeParams so both reject exactly the
// same triples.
void check_factors(double u, double d, double r) {
  require_finite(u, "u");
  require_finite(d, "d");
  require_finite(r, "r");
  if (!(u > 0.0) || !(d > 0.0)) throw DomainError("u and d must be positive (" + describe(u, d, r) + ")");
  if (u == d) throw DegenerateLatticeError("u == d leaves no spread between branches (" + describe(u, d, r) + ")");
  if (!(d < 1.0 + r)) throw NoArbitrageError("d < 1+r", describe(u, d, r));
  if (!(1.0 + r < u)) throw NoArbitrageError("1+r < u", describe(u, d, r));
}

}  // namespace

double risk_neutral_prob(double u, double d, double r) {
  check_factors(u, d, r);
  return (1.0 + r - d) / (u - d);
}

LatticeParams::LatticeParams(const LatticeSpec& spec) : spec_(spec) {
  require_finite(spec.v_s, "v_s");
  require_finite(spec.s0_dad, "s0_dad");
  if (spec.v_s < 0.0) throw DomainError("base system value v_s must be >= 0");
  if (spec.s0_dad < 0.0) throw DomainError("DAD base value must be >= 0");
  if (spec.horizons < 1) throw DomainError("horizon count must be >= 1");
  if (!(spec.r >= 0.0)) throw DomainError("rate r must be >= 0");
  if (spec.convention == DiscountConvention::paper_1minus && !(spec.r < 1.0)) {
    throw DomainError("rate r must be < 1 under the paper-1minus convention");
  }
  p_ = risk_neutral_prob(spec.u, spec.d, spec.r);
}

double LatticeParams::step_denominator() const noexcept {
  return spec_.convention == DiscountConvention::paper_1minus ? 1.0 - spec_.r : 1.0 + spec_.r;
}

Lattice::Lattice(int horizons) : horizons_(horizons) {
  if (horizons < 0) throw DomainError("lattice horizon must be >= 0");
  nodes_.resize(offset(horizons + 1));
}

void Lattice::check(int t, int j) const {
  if (t < 0 || t > horizons_ || j < 0 || j > t) {
    throw IndexError("lattice node (" + std::to_string(t) + ", " + std::to_string(j) +
                     ") outside horizon " + std::to_string(horizons_));
  }
}

const LatticeNode& Lattice::at(int t, int j) const {
  check(t, j);
  return nodes_[offset(t) + static_cast<std::size_t>(j)];
}

LatticeNode& Lattice::at(int t, int j) {
  check(t, j);
  return nodes_[offset(t) + static_cast<std::size_t>(j)];
}

std::span<const LatticeNode> Lattice::level(int t) const {
  check(t, 0);
  return {nodes_.data() + offset(t), static_cast<std::size_t>(t) + 1};
}

double initial_system_value(double v_s, std::span<const double> dad_base_values) {
  double total = v_s;
  for (double v : dad_base_values) total += v;
  return total;
}

namespace {

Lattice fill_values(const LatticeParams& params, int horizon) {
  Lattice grid(horizon);
  const double s0 = params.initial_value();
  for (int t = 0; t <= horizon; ++t) {
    for (int j = 0; j <= t; ++j) {
      grid.at(t, j).s_value = s0 * std::pow(params.up(), j) * std::pow(params.down(), t - j);
    }
  }
  return grid;
}

}  // namespace

Lattice build_lattice(const LatticeParams& params) {
  return fill_values(params, params.horizons());
}

std::vector<double> terminal_payoffs(const Lattice& lattice, double exercise_cost, int t) {
  if (t < 1 || t > lattice.horizons()) {
    throw IndexError("horizon " + std::to_string(t) + " outside 1.." +
                     std::to_string(lattice.horizons()));
  }
  if (!(exercise_cost >= 0.0)) throw DomainError("exercise cost must be >= 0");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(t) + 1);
  for (const auto& node : lattice.level(t)) {
    out.push_back(std::max(0.0, node.s_value - exercise_cost));
  }
  return out;
}

HorizonValuation value_option_single_horizon(const LatticeParams& params,
                                             double exercise_cost, int horizon) {
  if (horizon < 1 || horizon > params.horizons()) {
    throw IndexError("horizon " + std::to_string(horizon) + " outside 1.." +
                     std::to_string(params.horizons()));
  }
  if (!(exercise_cost >= 0.0) || !std::isfinite(exercise_cost)) {
    throw DomainError("exercise cost must be a finite value >= 0");
  }
  HorizonValuation out{0.0, fill_values(params, horizon)};
  Lattice& grid = out.grid;

  for (int j = 0; j <= horizon; ++j) {
    auto& node = grid.at(horizon, j);
    node.payoff = std::max(0.0, node.s_value - exercise_cost);
  }

  const double p = params.risk_neutral_probability();
  const double denom = params.step_denominator();
  const bool american = params.style() == ExerciseStyle::american;
  for (int t = horizon - 1; t >= 0; --t) {
    for (int j = 0; j <= t; ++j) {
      const double f_up = grid.at(t + 1, j + 1).payoff;
      const double f_down = grid.at(t + 1, j).payoff;
      double value = (p * f_up + (1.0 - p) * f_down) / denom;
      auto& node = grid.at(t, j);
      if (american) value = std::max(value, std::max(0.0, node.s_value - exercise_cost));
      node.payoff = value;
    }
  }
  out.price = grid.at(0, 0).payoff;
  return out;
}

}  // namespace dcbam
