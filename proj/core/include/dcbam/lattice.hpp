#pragma once

// Recombining binomial lattice of system values and single-horizon call
// pricing by backward induction.

#include <span>
#include <string>
#include <vector>

#include "dcbam/canonical_json.hpp"

namespace dcbam {

/// Denominator applied per step during backward induction.
enum class DiscountConvention {
  paper_1minus,    // divide by (1 - r)
  standard_1plus,  // divide by (1 + r)
};

enum class ExerciseStyle { european, american };

const char* to_string(DiscountConvention c) noexcept;
const char* to_string(ExerciseStyle s) noexcept;
/// Accepts "paper-1minus" / "standard-1plus". Throws ValidationError.
DiscountConvention parse_convention(const std::string& text);
/// Accepts "european" / "american". Throws ValidationError.
ExerciseStyle parse_style(const std::string& text);

/// Raw lattice inputs. Nothing is checked until a LatticeParams is built.
struct LatticeSpec {
  double v_s = 0.0;     // base system value
  double s0_dad = 0.0;  // initial DAD value seed
  double u = 0.0;
  double d = 0.0;
  double r = 0.0;
  int horizons = 1;
  DiscountConvention convention = DiscountConvention::paper_1minus;
  ExerciseStyle style = ExerciseStyle::european;

  friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
};

/// Validated lattice inputs. Construction enforces d < 1 + r < u, u != d,
/// positive factors, T >= 1, r >= 0, non-negative values, and r < 1 under
/// the 1 - r convention.
class LatticeParams {
 public:
  explicit LatticeParams(const LatticeSpec& spec);

  const LatticeSpec& spec() const noexcept { return spec_; }
  double initial_value() const noexcept { return spec_.v_s + spec_.s0_dad; }
  double up() const noexcept { return spec_.u; }
  double down() const noexcept { return spec_.d; }
  double rate() const noexcept { return spec_.r; }
  int horizons() const noexcept { return spec_.horizons; }
  DiscountConvention convention() const noexcept { return spec_.convention; }
  ExerciseStyle style() const noexcept { return spec_.style; }
  double risk_neutral_probability() const noexcept { return p_; }
  /// 1 - r or 1 + r depending on the convention.
  double step_denominator() const noexcept;

  friend bool operator==(const LatticeParams& a, const LatticeParams& b) {
    return a.spec_ == b.spec_;
  }

 private:
  LatticeSpec spec_;
  double p_ = 0.0;
};

struct LatticeNode {
  double s_value = 0.0;
  double payoff = 0.0;

  friend bool operator==(const LatticeNode&, const LatticeNode&) = default;
};

/// Triangular grid: level t (0..T) holds t + 1 nodes, j = number of up moves.
class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(int horizons);

  int horizons() const noexcept { return horizons_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  const LatticeNode& at(int t, int j) const;
  LatticeNode& at(int t, int j);
  std::span<const LatticeNode> level(int t) const;

  friend bool operator==(const Lattice&, const Lattice&) = default;

 private:
  static std::size_t offset(int t) noexcept {
    return static_cast<std::size_t>(t) * static_cast<std::size_t>(t + 1) / 2;
  }
  void check(int t, int j) const;

  int horizons_ = 0;
  std::vector<LatticeNode> nodes_;
};

/// V_s plus every DAD base value.
double initial_system_value(double v_s, std::span<const double> dad_base_values);

/// p = (1 + r - d) / (u - d). Throws DegenerateLatticeError when u == d and
/// NoArbitrageError when d < 1 + r < u fails.
double risk_neutral_prob(double u, double d, double r);

/// s_value(t, j) = S_0 u^j d^(t-j) for the full horizon; payoffs left at 0.
Lattice build_lattice(const LatticeParams& params);

/// max(0, s_value(t, j) - exercise_cost) across level t, j ascending.
/// Throws IndexError unless 1 <= t <= T, DomainError for a negative cost.
std::vector<double> terminal_payoffs(const Lattice& lattice, double exercise_cost, int t);

struct HorizonValuation {
  double price = 0.0;
  Lattice grid;  // levels 0..horizon, payoff = option value at each node
};

/// Prices a call that pays max(0, S - cost) at `horizon`. American style
/// also allows exercise at every earlier node.
HorizonValuation value_option_single_horizon(const LatticeParams& params,
                                             double exercise_cost, int horizon);

/// Graphviz text, one node per lattice cell labelled "S=<value>\nf=<value>",
/// edges labelled u / d.
std::string lattice_to_dot(const Lattice& grid, const std::string& name = "lattice");

/// {"horizon": T, "levels": [[{"j", "s", "f"}, ...], ...]}
Json lattice_to_json(const Lattice& grid);

}  // namespace dcbam
