#include "dcbam/project_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include "dcbam/errors.hpp"
#include "dcbam/json_codec.hpp"
#include "json_reader.hpp"

namespace dcbam {

using detail::ObjectReader;
using detail::child_path;
using detail::where;

namespace {

template <typename T>
const T& find_by_id(const std::vector<T>& items, const std::string& id, const char* what) {
  auto it = std::find_if(items.begin(), items.end(), [&](const T& x) { return x.id == id; });
  if (it == items.end()) throw ReferenceError(id, std::string(what) + " lookup");
  return *it;
}

template <typename T>
void require_unique_ids(const std::vector<T>& items, const std::string& path) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].id.empty()) {
      throw ValidationError(child_path(path, i) + ": id must not be empty");
    }
    if (!seen.insert(items[i].id).second) {
      throw ValidationError(child_path(path, i) + ": duplicate id '" + items[i].id + "'");
    }
  }
}

template <typename T>
bool has_id(const std::vector<T>& items, const std::string& id) {
  return std::any_of(items.begin(), items.end(), [&](const T& x) { return x.id == id; });
}

void check_positive(double value, const std::string& what) {
  if (!std::isfinite(value) || !(value > 0.0)) {
    throw ValidationError(what + " must be a positive number");
  }
}

}  // namespace

DecisionCatalog Project::catalog() const {
  return DecisionCatalog(weights, strategies, dads, scale_factor);
}

const Portfolio& Project::portfolio(const std::string& id) const {
  return find_by_id(portfolios, id, "portfolio");
}

const Scenario& Project::scenario(const std::string& id) const {
  return find_by_id(scenarios, id, "scenario");
}

const RatingMatrix& Project::rating_matrix(const std::string& id) const {
  return find_by_id(rating_matrices, id, "rating matrix");
}

const WhatIfConfig& Project::whatif_config(const std::string& id) const {
  return find_by_id(whatif_configs, id, "what-if config");
}

Portfolio resolve_portfolio(const Project& project, const std::string& spec) {
  for (const auto& p : project.portfolios) {
    if (p.id == spec) return p;
  }
  std::vector<std::string> members;
  std::size_t start = 0;
  while (start <= spec.size()) {
    auto comma = spec.find(',', start);
    if (comma == std::string::npos) comma = spec.size();
    auto cell = spec.substr(start, comma - start);
    cell.erase(0, cell.find_first_not_of(" \t"));
    cell.erase(cell.find_last_not_of(" \t") + 1);
    if (!cell.empty()) members.push_back(cell);
    start = comma + 1;
  }
  if (members.empty()) throw ValidationError("empty portfolio specification");
  for (const auto& p : project.portfolios) {
    if (p.dad_ids == members) return p;
  }
  Portfolio adhoc;
  adhoc.id = portfolio_label(members);
  adhoc.dad_ids = std::move(members);
  adhoc.budget = project.budget;
  return adhoc;
}

PortfolioValuationRequest default_request(const Project& project, const Portfolio& portfolio) {
  const auto& l = project.lattice_defaults;
  PortfolioValuationRequest request;
  request.portfolio = portfolio;
  request.portfolio.base_values.clear();
  request.base_values = portfolio.base_values;
  request.settings = {l.v_s, l.u, l.d, l.r, l.horizons, l.convention, l.style};
  return request;
}

void validate_project(const Project& p) {
  if (p.schema_version != kSchemaVersion) {
    throw VersionError("unsupported schema_version " + std::to_string(p.schema_version) +
                       "; supported versions: " + std::to_string(kSchemaVersion));
  }
  check_positive(p.scale_factor, "/scale_factor");
  check_positive(p.budget, "/budget");

  if (auto check = validate_qa_scores(p.weights); !check.ok()) {
    throw ValidationError("/quality_attributes: " + check.summary());
  }

  require_unique_ids(p.strategies, "/strategies");
  for (std::size_t i = 0; i < p.strategies.size(); ++i) {
    const auto& cost = p.strategies[i].raw_cost;
    if (cost && !(*cost >= 1.0 && *cost <= 100.0)) {
      throw ValidationError(child_path("/strategies", i) + ": raw cost outside [1, 100]");
    }
  }

  require_unique_ids(p.dads, "/dads");
  for (std::size_t i = 0; i < p.dads.size(); ++i) {
    const auto& dad = p.dads[i];
    const auto path = child_path("/dads", i);
    if (auto check = validate_dad(dad, p.weights); !check.ok()) {
      throw ValidationError(path + ": " + check.summary());
    }
    if (dad.scale_factor != p.scale_factor) {
      throw ValidationError(path + ": scale factor differs from the project scale factor");
    }
    for (const auto& s : dad.strategies) {
      if (!has_id(p.strategies, s)) throw ReferenceError(s, path + "/strategies");
    }
  }

  require_unique_ids(p.scenarios, "/scenarios");
  for (std::size_t i = 0; i < p.scenarios.size(); ++i) {
    const auto& sc = p.scenarios[i];
    const auto path = child_path("/scenarios", i);
    if (!p.weights.contains(sc.qa_concern)) {
      throw ReferenceError(sc.qa_concern, path + "/qa_concern");
    }
    for (const auto& id : sc.candidate_dads) {
      if (!has_id(p.dads, id)) throw ReferenceError(id, path + "/candidate_dads");
    }
  }

  require_unique_ids(p.portfolios, "/portfolios");
  for (std::size_t i = 0; i < p.portfolios.size(); ++i) {
    const auto& pf = p.portfolios[i];
    const auto path = child_path("/portfolios", i);
    if (pf.dad_ids.empty()) throw ValidationError(path + ": portfolio has no DADs");
    std::set<std::string> members;
    for (const auto& id : pf.dad_ids) {
      if (!has_id(p.dads, id)) throw ReferenceError(id, path + "/dad_ids");
      if (!members.insert(id).second) {
        throw ValidationError(path + ": DAD '" + id + "' listed twice");
      }
    }
    check_positive(pf.budget, path + "/budget");
    for (const auto& [id, value] : pf.base_values) {
      if (!members.contains(id)) throw ReferenceError(id, path + "/base_values");
      if (!std::isfinite(value) || value < 0.0) {
        throw ValidationError(path + "/base_values: value of '" + id + "' must be >= 0");
      }
    }
    if (!pf.base_values.empty() && pf.base_values.size() != members.size()) {
      throw ValidationError(path + "/base_values: give a value for every member or none");
    }
  }

  // Throws the lattice's own errors (no-arbitrage, degenerate, domain).
  (void)LatticeParams{p.lattice_defaults};

  require_unique_ids(p.whatif_configs, "/whatif_configs");
  for (std::size_t i = 0; i < p.whatif_configs.size(); ++i) {
    const auto& w = p.whatif_configs[i];
    const auto path = child_path("/whatif_configs", i);
    if (!has_id(p.portfolios, w.portfolio_id)) {
      throw ReferenceError(w.portfolio_id, path + "/portfolio_id");
    }
    try {
      sweep_point_count(w.range);
    } catch (const DomainError& e) {
      throw ValidationError(path + ": " + e.what());
    }
  }

  require_unique_ids(p.rating_matrices, "/rating_matrices");
  for (std::size_t i = 0; i < p.rating_matrices.size(); ++i) {
    try {
      validate_rating_matrix(p.rating_matrices[i]);
    } catch (const Error& e) {
      throw ValidationError(child_path("/rating_matrices", i) + ": " + e.what());
    }
  }
}

Json project_to_json(const Project& p) {
  Json qas = Json::array();
  for (const auto& w : p.weights.entries) qas.push_back({{"name", w.name}, {"score", w.score}});

  Json scenarios = Json::array();
  for (const auto& s : p.scenarios) {
    scenarios.push_back({{"id", s.id},
                         {"description", s.description},
                         {"qa_concern", s.qa_concern},
                         {"response_measure", s.response_measure},
                         {"candidate_dads", s.candidate_dads}});
  }

  Json strategies = Json::array();
  for (const auto& s : p.strategies) {
    Json node = {{"id", s.id}, {"name", s.name}};
    if (s.raw_cost) node["raw_cost"] = *s.raw_cost;
    strategies.push_back(std::move(node));
  }

  Json dads = Json::array();
  for (const auto& d : p.dads) {
    Json contrib = Json::object();
    for (const auto& [qa, v] : d.contrib) contrib[qa] = v;
    dads.push_back({{"id", d.id},
                    {"strategies", d.strategies},
                    {"contrib", std::move(contrib)},
                    {"raw_cost", d.raw_cost}});
  }

  Json portfolios = Json::array();
  for (const auto& pf : p.portfolios) {
    Json base = Json::object();
    for (const auto& [id, v] : pf.base_values) base[id] = v;
    portfolios.push_back({{"id", pf.id},
                          {"dad_ids", pf.dad_ids},
                          {"budget", pf.budget},
                          {"base_values", std::move(base)}});
  }

  Json whatifs = Json::array();
  for (const auto& w : p.whatif_configs) {
    whatifs.push_back({{"id", w.id},
                       {"portfolio_id", w.portfolio_id},
                       {"lo", w.range.lo},
                       {"hi", w.range.hi},
                       {"step", w.range.step}});
  }

  Json matrices = Json::array();
  for (const auto& m : p.rating_matrices) matrices.push_back(rating_matrix_to_json(m));

  return {{"schema_version", p.schema_version},
          {"name", p.name},
          {"scale_factor", p.scale_factor},
          {"budget", p.budget},
          {"quality_attributes", std::move(qas)},
          {"scenarios", std::move(scenarios)},
          {"strategies", std::move(strategies)},
          {"dads", std::move(dads)},
          {"portfolios", std::move(portfolios)},
          {"lattice_defaults", lattice_spec_to_json(p.lattice_defaults)},
          {"whatif_configs", std::move(whatifs)},
          {"rating_matrices", std::move(matrices)}};
}

namespace {

template <typename Fn>
void for_each_element(const ObjectReader& in, const char* key, Fn&& fn) {
  if (!in.has(key)) return;
  const auto path = in.path(key);
  const auto& arr = detail::as_array(in.get(key), path);
  for (std::size_t i = 0; i < arr.size(); ++i) fn(arr[i], child_path(path, i));
}

std::map<std::string, double> number_map(const Json& node, const std::string& path) {
  if (!node.is_object()) throw ParseError(where(path), "expected an object");
  std::map<std::string, double> out;
  for (auto it = node.begin(); it != node.end(); ++it) {
    out[it.key()] = detail::as_number(it.value(), child_path(path, it.key()));
  }
  return out;
}

}  // namespace

Project project_from_json(const Json& doc) {
  ObjectReader in(doc, "",
                  {"schema_version", "name", "scale_factor", "budget", "quality_attributes",
                   "scenarios", "strategies", "dads", "portfolios", "lattice_defaults",
                   "whatif_configs", "rating_matrices"});
  Project p;
  // Checked before anything else so a future format fails with the version
  // message rather than a shape error.
  p.schema_version = in.integer("schema_version");
  if (p.schema_version != kSchemaVersion) {
    throw VersionError("unsupported schema_version " + std::to_string(p.schema_version) +
                       "; supported versions: " + std::to_string(kSchemaVersion));
  }
  p.name = in.string("name");
  p.scale_factor = in.number_or("scale_factor", kDefaultScaleFactor);
  p.budget = in.number("budget");

  for_each_element(in, "quality_attributes", [&](const Json& node, const std::string& path) {
    ObjectReader qa(node, path, {"name", "score"});
    p.weights.entries.push_back({qa.string("name"), qa.number("score")});
  });

  for_each_element(in, "scenarios", [&](const Json& node, const std::string& path) {
    ObjectReader s(node, path,
                   {"id", "description", "qa_concern", "response_measure", "candidate_dads"});
    Scenario sc;
    sc.id = s.string("id");
    sc.description = s.string_or("description", "");
    sc.qa_concern = s.string("qa_concern");
    sc.response_measure = s.string_or("response_measure", "");
    if (s.has("candidate_dads")) sc.candidate_dads = s.strings("candidate_dads");
    p.scenarios.push_back(std::move(sc));
  });

  for_each_element(in, "strategies", [&](const Json& node, const std::string& path) {
    ObjectReader s(node, path, {"id", "name", "raw_cost"});
    ArchitecturalStrategy st;
    st.id = s.string("id");
    st.name = s.string_or("name", st.id);
    if (s.has("raw_cost")) st.raw_cost = s.number("raw_cost");
    p.strategies.push_back(std::move(st));
  });

  for_each_element(in, "dads", [&](const Json& node, const std::string& path) {
    ObjectReader d(node, path, {"id", "strategies", "contrib", "raw_cost"});
    DiversifiedDecision dad;
    dad.id = d.string("id");
    if (d.has("strategies")) dad.strategies = d.strings("strategies");
    dad.contrib = number_map(d.get("contrib"), d.path("contrib"));
    dad.raw_cost = d.number("raw_cost");
    dad.scale_factor = p.scale_factor;
    p.dads.push_back(std::move(dad));
  });

  for_each_element(in, "portfolios", [&](const Json& node, const std::string& path) {
    ObjectReader pf(node, path, {"id", "dad_ids", "budget", "base_values"});
    Portfolio portfolio;
    portfolio.id = pf.string("id");
    portfolio.dad_ids = pf.strings("dad_ids");
    portfolio.budget = pf.number_or("budget", p.budget);
    if (pf.has("base_values")) {
      portfolio.base_values = number_map(pf.get("base_values"), pf.path("base_values"));
    }
    p.portfolios.push_back(std::move(portfolio));
  });

  p.lattice_defaults = lattice_spec_from_json(in.get("lattice_defaults"), "/lattice_defaults");

  for_each_element(in, "whatif_configs", [&](const Json& node, const std::string& path) {
    ObjectReader w(node, path, {"id", "portfolio_id", "lo", "hi", "step"});
    WhatIfConfig cfg;
    cfg.id = w.string("id");
    cfg.portfolio_id = w.string("portfolio_id");
    cfg.range.lo = w.number_or("lo", cfg.range.lo);
    cfg.range.hi = w.number_or("hi", cfg.range.hi);
    cfg.range.step = w.number_or("step", cfg.range.step);
    p.whatif_configs.push_back(std::move(cfg));
  });

  for_each_element(in, "rating_matrices", [&](const Json& node, const std::string& path) {
    p.rating_matrices.push_back(rating_matrix_from_json(node, path));
  });
  return p;
}

namespace {

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

Project load_project(std::string_view document) {
  Json doc;
  try {
    doc = Json::parse(document.begin(), document.end());
  } catch (const Json::parse_error& e) {
    // nlohmann reports the byte just past the failure point
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    throw ParseError(line_column(document, at), "malformed JSON document");
  }
  Project p = project_from_json(doc);
  validate_project(p);
  return p;
}

std::string save_project(const Project& project) {
  return canonical_dump(project_to_json(project)) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file_atomic(const std::filesystem::path& path, std::string_view text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw Error("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot replace " + path.string());
  }
}

Project load_project_file(const std::filesystem::path& path) {
  return load_project(read_text_file(path));
}

void save_project_file(const std::filesystem::path& path, const Project& project) {
  validate_project(project);
  write_text_file_atomic(path, save_project(project));
}

}  // namespace dcbam
