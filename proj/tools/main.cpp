#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lieth/group_maps.hpp"
#include "lieth/poisson.hpp"
#include "lieth/serialize.hpp"
#include "lieth/thompson.hpp"

namespace {

using namespace lieth;

constexpr const char* kArtifactVersion = "1.0.0";

/// Collects per-check rows and the free-form payload of one subcommand run.
/// The emitted document is schema-stable: fixed key order, wall time only in
/// the top-level wall_time_ms field so reruns differ nowhere else.
struct Report {
  Json config = Json::object();
  Json checks = Json::array();
  Json details = Json::object();
  int failures = 0;

  void add(const std::string& name, double residual, bool pass) {
    checks.push_back(
        {{"name", name}, {"residual", residual}, {"status", pass ? "pass" : "fail"}});
    if (!pass) ++failures;
  }
  void add_status(const std::string& name, double residual, const std::string& status) {
    checks.push_back({{"name", name}, {"residual", residual}, {"status", status}});
    if (status == "fail") ++failures;
  }
};

struct GlobalOpts {
  std::string json_path;
  uint64_t seed = 1;
  double tol = 1e-9;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

int emit(const std::string& command, const GlobalOpts& g, Report& rep) {
  Json doc = Json::object();
  doc["artifact_version"] = kArtifactVersion;
  doc["command"] = command;
  doc["config"] = rep.config;
  doc["checks"] = rep.checks;
  doc["details"] = rep.details;
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - g.start)
                  .count();
  doc["wall_time_ms"] = ms;
  std::string text = dump_json(doc);
  if (!g.json_path.empty()) {
    std::ofstream f(g.json_path);
    if (!f) throw UsageError("--json: cannot write " + g.json_path);
    f << text;
  }
  std::cout << text;
  return rep.failures > 0 ? 1 : 0;
}

std::pair<Series, int> parse_type(const std::string& type) {
  if (type.size() < 2)
    throw UsageError("--type: expected a series letter and a rank, like A3");
  char c = static_cast<char>(std::toupper(static_cast<unsigned char>(type[0])));
  if (c != 'A' && c != 'B' && c != 'C' && c != 'D')
    throw UsageError("--type: unknown series '" + type.substr(0, 1) + "'");
  int rank = 0;
  try {
    size_t used = 0;
    rank = std::stoi(type.substr(1), &used);
    if (used + 1 != type.size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw UsageError("--type: rank part of '" + type + "' is not a number");
  }
  return {series_from_char(c), rank};
}

Json coords_json(const RootCoords& c) {
  Json a = Json::array();
  for (int v : c) a.push_back(v);
  return a;
}

Json ints_json(const std::vector<int>& v) {
  Json a = Json::array();
  for (int x : v) a.push_back(x);
  return a;
}

AlgebraElement basis_slot(const WeylBasis& wb, int k) {
  return wb.is_cartan_slot(k) ? wb.h(k) : wb.e(wb.root_of_slot(k));
}

// ---------------------------------------------------------------------------
// roots: enumerate a root system and run the exact structure-constant checks.

int run_roots(const GlobalOpts& g, const std::string& type) {
  auto [series, rank] = parse_type(type);
  RootSystem rs = RootSystem::build(series, rank);
  WeylBasis wb = WeylBasis::build(rs);

  Report rep;
  rep.config = {{"type", type}, {"seed", g.seed}, {"tol", g.tol}};

  int diag_bad = 0;
  for (int i = 0; i < rank; ++i)
    if (rs.cartan(i, i) != 2) ++diag_bad;
  rep.add("cartan-diagonal", diag_bad, diag_bad == 0);

  int anti_bad = 0;
  const int nr = rs.num_roots();
  for (int a = 0; a < nr; ++a)
    for (int b = 0; b < nr; ++b) {
      if (a == b || b == rs.negative_of(a)) continue;
      long long mab = wb.m(a, b);
      if (wb.m(b, a) != -mab) ++anti_bad;
      if (wb.m(rs.negative_of(a), rs.negative_of(b)) != -mab) ++anti_bad;
    }
  rep.add("bracket-antisymmetry", anti_bad, anti_bad == 0);

  int jac_bad = 0;
  const int d = wb.dim();
  for (int i = 0; i < d; ++i) {
    AlgebraElement x = basis_slot(wb, i);
    for (int j = i + 1; j < d; ++j) {
      AlgebraElement y = basis_slot(wb, j);
      AlgebraElement xy = wb.bracket(x, y);
      for (int k = j + 1; k < d; ++k) {
        AlgebraElement z = basis_slot(wb, k);
        AlgebraElement s = wb.bracket(x, wb.bracket(y, z)) +
                           wb.bracket(y, wb.bracket(z, x)) + wb.bracket(z, xy);
        if (!s.is_zero()) ++jac_bad;
      }
    }
  }
  rep.add("jacobi-identity", jac_bad, jac_bad == 0);

  int kil_bad = 0;
  for (int i = 0; i < d; ++i) {
    AlgebraElement x = basis_slot(wb, i);
    for (int j = i + 1; j < d; ++j) {
      AlgebraElement y = basis_slot(wb, j);
      AlgebraElement xy = wb.bracket(x, y);
      for (int k = 0; k < d; ++k) {
        AlgebraElement z = basis_slot(wb, k);
        QC lhs = wb.killing(xy, z) + wb.killing(y, wb.bracket(x, z));
        if (!lhs.is_zero()) ++kil_bad;
      }
    }
  }
  rep.add("killing-invariance", kil_bad, kil_bad == 0);

  rep.details["series"] = std::string(1, series_to_char(series));
  rep.details["rank"] = rank;
  rep.details["num_positive"] = rs.num_positive();
  Json pos = Json::array();
  for (int t = 0; t < rs.num_positive(); ++t) pos.push_back(coords_json(rs.root(t)));
  rep.details["positive_roots"] = pos;
  return emit("roots", g, rep);
}

// ---------------------------------------------------------------------------
// cartan: Cartan matrix data and its symmetry checks.

int run_cartan(const GlobalOpts& g, const std::string& type) {
  auto [series, rank] = parse_type(type);
  RootSystem rs = RootSystem::build(series, rank);

  Report rep;
  rep.config = {{"type", type}, {"seed", g.seed}, {"tol", g.tol}};

  Json cm = Json::array();
  for (int i = 0; i < rank; ++i) {
    Json row = Json::array();
    for (int j = 0; j < rank; ++j) row.push_back(rs.cartan(i, j));
    cm.push_back(row);
  }
  rep.details["cartan_matrix"] = cm;
  Json norms = Json::array();
  for (int i = 0; i < rank; ++i)
    norms.push_back(rat_to_string(rs.norm2(rs.simple_root(i))));
  rep.details["simple_norm2"] = norms;
  rep.details["longest_word"] = ints_json(rs.longest_word());
  std::vector<int> mw0(rank);
  for (int i = 0; i < rank; ++i) mw0[i] = rs.minus_w0(i);
  rep.details["minus_w0"] = ints_json(mw0);
  rep.details["num_positive"] = rs.num_positive();

  int diag_bad = 0, sign_bad = 0, sym_bad = 0, perm_bad = 0;
  for (int i = 0; i < rank; ++i) {
    if (rs.cartan(i, i) != 2) ++diag_bad;
    for (int j = 0; j < rank; ++j) {
      if (i == j) continue;
      if (rs.cartan(i, j) > 0) ++sign_bad;
      if ((rs.cartan(i, j) == 0) != (rs.cartan(j, i) == 0)) ++sign_bad;
      // (alpha_i, alpha_j) computed through either column must agree
      Rat lhs = Rat(rs.cartan(i, j)) * rs.norm2(rs.simple_root(j));
      Rat rhs = Rat(rs.cartan(j, i)) * rs.norm2(rs.simple_root(i));
      if (!(lhs == rhs)) ++sym_bad;
      if (rs.cartan(mw0[i], mw0[j]) != rs.cartan(i, j)) ++perm_bad;
    }
    if (mw0[mw0[i]] != i) ++perm_bad;
  }
  rep.add("cartan-diagonal", diag_bad, diag_bad == 0);
  rep.add("cartan-signs", sign_bad, sign_bad == 0);
  rep.add("cartan-symmetrizable", sym_bad, sym_bad == 0);
  rep.add("minus-w0-diagram", perm_bad, perm_bad == 0);
  rep.add("longest-word-length",
          std::abs(static_cast<int>(rs.longest_word().size()) - rs.num_positive()),
          static_cast<int>(rs.longest_word().size()) == rs.num_positive());
  return emit("cartan", g, rep);
}

// ---------------------------------------------------------------------------
// realform: quasi-split conjugations for every involutive diagram symmetry.

int run_realform(const GlobalOpts& g, const std::string& type) {
  auto [series, rank] = parse_type(type);
  RootSystem rs = RootSystem::build(series, rank);
  WeylBasis wb = WeylBasis::build(rs);
  LinearEndo theta = compact_form_theta(wb);

  Report rep;
  rep.config = {{"type", type}, {"seed", g.seed}, {"tol", g.tol}};
  Json auts = Json::array();

  int idx = 0;
  for (const DiagramAutomorphism& aut : all_diagram_automorphisms(rs)) {
    if (!aut.involutive()) continue;
    std::string tag = "aut" + std::to_string(idx);
    LinearEndo tau = tau_d(wb, aut);

    rep.add(tag + "-involutive", tau.involutive() ? 0 : 1, tau.involutive());
    rep.add(tag + "-automorphism", tau.is_automorphism() ? 0 : 1, tau.is_automorphism());

    // positive root vectors must land on positive root vectors
    int pos_bad = 0;
    for (int t = 0; t < rs.num_positive(); ++t) {
      AlgebraElement img = tau.apply(wb.e(t));
      for (int k = 0; k < wb.dim(); ++k) {
        if (img.coords[k].is_zero()) continue;
        if (wb.is_cartan_slot(k) || !rs.is_positive(wb.root_of_slot(k))) ++pos_bad;
      }
    }
    rep.add(tag + "-positivity", pos_bad, pos_bad == 0);

    bool cls = inner_class(wb, tau, theta) == aut;
    rep.add(tag + "-inner-class", cls ? 0 : 1, cls);

    auts.push_back({{"perm", ints_json(aut.perm)}, {"label", tau.label}});
    ++idx;
  }
  rep.details["involutive_automorphisms"] = auts;
  return emit("realform", g, rep);
}

// ---------------------------------------------------------------------------
// satake / iwasawa: painted diagrams, their conjugations, and the alignment
// conditions.

std::string inner_class_name(const RootSystem& rs, const DiagramAutomorphism& d) {
  if (d == DiagramAutomorphism::identity(rs.rank())) return "identity";
  if (d == minus_w0_automorphism(rs)) return "minus-w0";
  return "other";
}

void iwasawa_checks(Report& rep, const IwasawaReport& ir) {
  rep.add("involution", ir.involution_ok ? 0 : 1, ir.involution_ok);
  rep.add("commutes-with-theta", ir.commutes_with_theta ? 0 : 1, ir.commutes_with_theta);
  rep.add("preserves-a", ir.preserves_a ? 0 : 1, ir.preserves_a);
  rep.add("a-fixed-maximal", ir.a_fixed_maximal ? 0 : 1, ir.a_fixed_maximal);
  rep.add("positivity", ir.positivity ? 0 : 1, ir.positivity);
}

SatakeDiagram resolve_diagram(const std::string& file, const std::string& group) {
  if (!file.empty() && !group.empty())
    throw UsageError("--file and --group are mutually exclusive");
  if (!file.empty()) {
    try {
      return load_satake_file(file);
    } catch (const ConfigError& e) {
      throw UsageError("--file: " + std::string(e.what()));
    }
  }
  if (!group.empty()) {
    try {
      return satake_catalog(group);
    } catch (const ConfigError& e) {
      throw UsageError("--group: " + std::string(e.what()));
    }
  }
  throw UsageError("one of --file or --group is required");
}

int run_satake(const GlobalOpts& g, const std::string& file, const std::string& group) {
  SatakeDiagram sd = resolve_diagram(file, group);
  RootSystem rs = RootSystem::build(sd.series, sd.rank);
  WeylBasis wb = WeylBasis::build(rs);

  Report rep;
  rep.config = {{"file", file}, {"group", group}, {"seed", g.seed}, {"tol", g.tol}};

  DiagramAutomorphism inner = satake_inner_class(rs, sd);
  SatakeRealization real = tau_from_satake(wb, sd);

  rep.add("round-trip", real.round_trip == sd ? 0 : 1, real.round_trip == sd);
  iwasawa_checks(rep, real.report);
  bool cls_ok = real.d == inner;
  rep.add("inner-class-consistent", cls_ok ? 0 : 1, cls_ok);

  rep.details["diagram"] = satake_json(sd);
  rep.details["inner_class"] = {{"name", inner_class_name(rs, inner)},
                                {"perm", ints_json(inner.perm)}};
  rep.details["sign_mask"] = real.sign_mask;
  rep.details["w0_word"] = ints_json(real.w0_word);
  rep.details["dim_a_fixed"] = real.report.dim_a_fixed;
  std::vector<int> sigma0 = real.report.sigma0;
  for (int& s : sigma0) ++s;  // file format is 1-based
  rep.details["sigma0"] = ints_json(sigma0);
  return emit("satake", g, rep);
}

int run_iwasawa(const GlobalOpts& g, const std::string& file, const std::string& group) {
  SatakeDiagram sd = resolve_diagram(file, group);
  RootSystem rs = RootSystem::build(sd.series, sd.rank);
  WeylBasis wb = WeylBasis::build(rs);
  SatakeRealization real = tau_from_satake(wb, sd);

  Report rep;
  rep.config = {{"file", file}, {"group", group}, {"seed", g.seed}, {"tol", g.tol}};
  iwasawa_checks(rep, real.report);
  rep.details["dim_a_fixed"] = real.report.dim_a_fixed;
  rep.details["tau_label"] = real.tau.label;
  std::vector<int> sigma0 = real.report.sigma0;
  for (int& s : sigma0) ++s;
  rep.details["sigma0"] = ints_json(sigma0);
  return emit("iwasawa", g, rep);
}

// ---------------------------------------------------------------------------
// sigma-check: sampled geometry of the real slice inside SL(n,C).

const GroupCatalog& resolve_group(const std::string& id) {
  try {
    return group_catalog(id);
  } catch (const ConfigError& e) {
    throw UsageError("--group: " + std::string(e.what()));
  }
}

int rank_of_dsigma_minus_id(const GroupCatalog& gc, double step) {
  int m = static_cast<int>(gc.an_frame.size());
  int n = gc.n;
  CMat id = CMat::Identity(n, n);
  Eigen::MatrixXd jac(2 * n * n, m);
  for (int c = 0; c < m; ++c) {
    CMat plus = sigma_an(gc, an_project(id + step * gc.an_frame[c]));
    CMat minus = sigma_an(gc, an_project(id - step * gc.an_frame[c]));
    CMat deriv = (plus - minus) / (2 * step) - gc.an_frame[c];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        jac(2 * (i * n + j), c) = deriv(i, j).real();
        jac(2 * (i * n + j) + 1, c) = deriv(i, j).imag();
      }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
  lu.setThreshold(1e-6);
  return static_cast<int>(lu.rank());
}

int run_sigma_check(const GlobalOpts& g, const std::string& group, int samples) {
  const GroupCatalog& gc = resolve_group(group);
  const int n = gc.n;
  Rng rng(g.seed);

  double rec = 0, round = 0, equiv = 0, e_tau = 0, invol = 0, agree = 0, fixed = 0,
         twist = 0;
  for (int s = 0; s < samples; ++s) {
    CMat gmat = random_sl(rng, n);
    rec = std::max(rec, (an_project(gmat) * k_project(gmat) - gmat).norm());

    CMat x = random_p_herm(rng, n);
    CMat k = random_unitary(rng, n);
    round = std::max(round, (E_inverse(E_map(x)) - x).norm());
    equiv = std::max(equiv,
                     (E_map(k * x * k.adjoint()) - dressing(k, E_map(x))).norm());

    e_tau = std::max(e_tau, (E_map(gc.tau_lie(x)) - sigma_an(gc, E_map(x))).norm());

    CMat b = random_an(rng, n, 0.6);
    CMat sb = sigma_an(gc, b);
    invol = std::max(invol, (sigma_an(gc, sb) - b).norm());
    agree = std::max(agree, (sb - sigma_an_dressing(gc, b)).norm());
    CMat b0 = random_a0n0(gc, rng);
    fixed = std::max(fixed, (sigma_an(gc, b0) - b0).norm());

    std::vector<CMat> bs = {random_an(rng, n, 0.5), random_an(rng, n, 0.5),
                            random_an(rng, n, 0.5)};
    auto ta = twisted_action(k, bs);
    auto tb = twisted_action_steps(k, bs);
    for (size_t j = 0; j < bs.size(); ++j)
      twist = std::max(twist, (ta[j] - tb[j]).norm());
  }

  Report rep;
  rep.config = {{"group", group}, {"samples", samples}, {"seed", g.seed}, {"tol", g.tol}};
  rep.add("iwasawa-reconstruction", rec, rec < g.tol);
  rep.add("exp-round-trip", round, round < g.tol);
  rep.add("exp-equivariance", equiv, equiv < g.tol);
  rep.add("exp-intertwines-involutions", e_tau, e_tau < g.tol);
  rep.add("sigma-involution", invol, invol < g.tol);
  rep.add("sigma-formulas-agree", agree, agree < g.tol);
  rep.add("fixed-slice", fixed, fixed < g.tol);
  int rank = rank_of_dsigma_minus_id(gc, 1e-5);
  int expect = gc.dim_an - gc.dim_a0n0;
  rep.add("fixed-set-rank", std::abs(rank - expect), rank == expect);
  rep.add("twisted-action-formulas", twist, twist < g.tol);

  rep.details["n"] = n;
  rep.details["p"] = gc.p;
  rep.details["q"] = gc.q;
  rep.details["restricted_rank"] = gc.restricted_rank;
  rep.details["dim_an"] = gc.dim_an;
  rep.details["dim_a0n0"] = gc.dim_a0n0;
  return emit("sigma-check", g, rep);
}

// ---------------------------------------------------------------------------
// thompson: feasibility decisions for one label or a CSV sweep.

std::vector<double> parse_numbers(const std::string& text, char sep,
                                  const std::string& field) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos)
        throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw UsageError(field + ": '" + item + "' is not a number");
    }
  }
  return out;
}

Eigen::VectorXd scalar_leg(const GroupCatalog& gc, double t) {
  if (gc.split() && gc.n == 2) {
    Eigen::VectorXd leg(2);
    leg << t, -t;
    return leg;
  }
  if (!gc.split() && gc.q == 1) {
    Eigen::VectorXd leg(1);
    leg << t;
    return leg;
  }
  throw UsageError(
      "--lambda: scalar legs need restricted rank one; separate full legs with ';'");
}

OrbitLabel parse_label(const GroupCatalog& gc, const std::string& text,
                       const std::string& field) {
  OrbitLabel label;
  if (text.find(';') != std::string::npos) {
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) {
      std::vector<double> coords = parse_numbers(part, ',', field);
      if (coords.empty()) throw UsageError(field + ": empty leg");
      label.legs.push_back(
          Eigen::Map<Eigen::VectorXd>(coords.data(), static_cast<int>(coords.size())));
    }
  } else {
    for (double t : parse_numbers(text, ',', field)) label.legs.push_back(scalar_leg(gc, t));
  }
  try {
    validate_label(gc, label);
  } catch (const UsageError& e) {
    throw UsageError(field + ": " + std::string(e.what()));
  }
  return label;
}

/// Sweep rows: one label per line, legs separated by commas, coordinates of a
/// multi-coordinate leg separated by spaces inside the cell.
std::vector<OrbitLabel> load_sweep(const GroupCatalog& gc, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("--sweep: cannot read " + path);
  std::vector<OrbitLabel> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    std::string trimmed = line.substr(first);
    if (trimmed[0] == '#') continue;
    std::string field = "--sweep line " + std::to_string(lineno);
    OrbitLabel label;
    std::stringstream ss(trimmed);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      std::vector<double> coords;
      std::stringstream cs(cell);
      std::string tok;
      while (cs >> tok) {
        try {
          coords.push_back(std::stod(tok));
        } catch (const std::exception&) {
          throw UsageError(field + ": '" + tok + "' is not a number");
        }
      }
      if (coords.empty()) throw UsageError(field + ": empty cell");
      if (coords.size() == 1) {
        label.legs.push_back(scalar_leg(gc, coords[0]));
      } else {
        label.legs.push_back(Eigen::Map<Eigen::VectorXd>(
            coords.data(), static_cast<int>(coords.size())));
      }
    }
    try {
      validate_label(gc, label);
    } catch (const UsageError& e) {
      throw UsageError(field + ": " + std::string(e.what()));
    }
    rows.push_back(std::move(label));
  }
  if (rows.empty()) throw UsageError("--sweep: no labels in " + path);
  return rows;
}

Json feasibility_json(const FeasibilityReport& fr) {
  int converged = 0;
  for (const RestartTrace& t : fr.trace) converged += t.converged ? 1 : 0;
  Json j = Json::object();
  j["decision"] = to_string(fr.decision);
  j["best_residual"] = fr.best_residual;
  j["best_restart"] = fr.best_restart;
  j["restarts_ran"] = static_cast<int>(fr.trace.size());
  j["converged"] = converged;
  j["divergence"] = fr.divergence;
  j["seed"] = fr.seed;
  return j;
}

Json label_json(const OrbitLabel& label) {
  Json legs = Json::array();
  for (const Eigen::VectorXd& leg : label.legs) {
    Json one = Json::array();
    for (int i = 0; i < leg.size(); ++i) one.push_back(leg[i]);
    legs.push_back(one);
  }
  return legs;
}

struct ThompsonOpts {
  std::string group = "sl2r";
  std::string lambda;
  std::string sweep;
  std::string picture = "both";
  std::string config_file;
  FeasibilityConfig cfg;
};

/// Optional JSON file with optimizer fields; command line flags override it.
void apply_config_file(const std::string& path, FeasibilityConfig& cfg) {
  std::ifstream f(path);
  if (!f) throw UsageError("--config: cannot read " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("--config: " + std::string(e.what()));
  }
  if (!j.is_object()) throw UsageError("--config: top level must be an object");
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "restarts") {
        cfg.restarts = value.get<int>();
      } else if (key == "max_iters") {
        cfg.max_iters = value.get<int>();
      } else if (key == "fd_step") {
        cfg.fd_step = value.get<double>();
      } else if (key == "eps_feas") {
        cfg.eps_feas = value.get<double>();
      } else if (key == "eps_infeas") {
        cfg.eps_infeas = value.get<double>();
      } else if (key == "grad_tol") {
        cfg.grad_tol = value.get<double>();
      } else if (key == "init_scale") {
        cfg.init_scale = value.get<double>();
      } else if (key == "seed") {
        cfg.seed = value.get<uint64_t>();
      } else {
        throw UsageError("--config: unknown field '" + key + "'");
      }
    } catch (const nlohmann::json::exception&) {
      throw UsageError("--config: field '" + key + "' has the wrong type");
    }
  }
}

int run_thompson(const GlobalOpts& g, const ThompsonOpts& opts) {
  const GroupCatalog& gc = resolve_group(opts.group);
  if (opts.picture != "additive" && opts.picture != "multiplicative" &&
      opts.picture != "both")
    throw UsageError("--picture: must be additive, multiplicative, or both");
  if (opts.lambda.empty() == opts.sweep.empty())
    throw UsageError("exactly one of --lambda or --sweep is required");

  FeasibilityConfig cfg = opts.cfg;
  std::vector<OrbitLabel> labels;
  if (!opts.lambda.empty())
    labels.push_back(parse_label(gc, opts.lambda, "--lambda"));
  else
    labels = load_sweep(gc, opts.sweep);

  Report rep;
  rep.config = {{"group", opts.group},   {"picture", opts.picture},
                {"lambda", opts.lambda}, {"sweep", opts.sweep},
                {"seed", cfg.seed},      {"restarts", cfg.restarts},
                {"max_iters", cfg.max_iters}, {"fd_step", cfg.fd_step},
                {"eps_feas", cfg.eps_feas},   {"eps_infeas", cfg.eps_infeas},
                {"grad_tol", cfg.grad_tol},   {"init_scale", cfg.init_scale}};

  Json results = Json::array();
  for (size_t i = 0; i < labels.size(); ++i) {
    const OrbitLabel& label = labels[i];
    std::string name = "label-" + std::to_string(i);
    Json entry = Json::object();
    entry["legs"] = label_json(label);

    double residual = 0;
    std::string status;
    if (opts.picture == "both") {
      CompareReport cr = thompson_compare(gc, label, cfg);
      entry["verdict"] = to_string(cr.verdict);
      entry["additive"] = feasibility_json(cr.additive);
      entry["multiplicative"] = feasibility_json(cr.multiplicative);
      residual = std::min(cr.additive.best_residual, cr.multiplicative.best_residual);
      status = cr.verdict == CompareVerdict::disagree      ? "fail"
               : cr.verdict == CompareVerdict::undecided   ? "undecided"
                                                           : "pass";
    } else {
      Picture pic = opts.picture == "additive" ? Picture::additive
                                               : Picture::multiplicative;
      FeasibilityReport fr = feasibility_search(gc, label, pic, cfg);
      entry[opts.picture] = feasibility_json(fr);
      residual = fr.best_residual;
      status = fr.decision == Decision::undecided ? "undecided" : "pass";
    }
    if (gc.restricted_rank == 1) {
      entry["oracle"] = {{"decision", to_string(rank1_oracle(gc, label))},
                         {"margin", rank1_margin(gc, label)}};
    }
    results.push_back(entry);
    rep.add_status(name, residual, status);
  }
  rep.details["results"] = results;
  return emit("thompson", g, rep);
}

// ---------------------------------------------------------------------------
// poisson-check: residual battery for the dressing bivector and its
// deformation family.  Tolerances here are contract bounds, not --tol.

int run_poisson_check(const GlobalOpts& g, const std::string& group, int samples) {
  const PoissonAmbient* ambp = nullptr;
  try {
    ambp = &poisson_ambient(group);
  } catch (const ConfigError& e) {
    throw UsageError("--group: " + std::string(e.what()));
  }
  const PoissonAmbient& amb = *ambp;
  const int n = amb.n;
  const int d = amb.dim();
  Rng rng(g.seed);

  double mult = 0, anti = 0, jac_res = 0, gauge_id = 0, twist0 = 0, addv = 0;
  double scale_res[3] = {0, 0, 0};
  const double svals[3] = {0.25, 0.5, 2.0};
  int rank_bad = 0;

  Eigen::MatrixXd conj_mat(d, d);
  for (int i = 0; i < d; ++i)
    conj_mat.col(i) = an_coords(amb, amb.an_basis[i].conjugate());

  for (int s = 0; s < samples; ++s) {
    CMat b1 = random_an(rng, n, 0.5);
    CMat b2 = random_an(rng, n, 0.5);
    Eigen::MatrixXd p1 = pi_AN_at(amb, b1);

    CMat b1inv = b1.inverse();
    Eigen::MatrixXd ad(d, d);
    for (int i = 0; i < d; ++i)
      ad.col(i) = an_coords(amb, b1 * amb.an_basis[i] * b1inv);
    mult = std::max(mult, (pi_AN_at(amb, b1 * b2) -
                           ad * pi_AN_at(amb, b2) * ad.transpose() - p1)
                              .norm());

    anti = std::max(anti, (conj_mat * p1 * conj_mat.transpose() +
                           pi_AN_at(amb, b1.conjugate()))
                              .norm());

    Eigen::MatrixXd w(d, d);
    for (int u = 0; u < d; ++u) w.col(u) = dressing_vector(amb, amb.k_basis[u], b1);
    Eigen::FullPivLU<Eigen::MatrixXd> lp(p1), lw(w);
    lp.setThreshold(1e-8);
    lw.setThreshold(1e-8);
    if (lp.rank() != lw.rank()) ++rank_bad;

    int f = static_cast<int>(rng.next_u64() % d);
    int gg = static_cast<int>(rng.next_u64() % d);
    int h = static_cast<int>(rng.next_u64() % d);
    if (f != gg && gg != h && f != h)
      jac_res = std::max(jac_res, std::abs(jacobi_residual(amb, f, gg, h, b1)));

    gauge_id = std::max(
        gauge_id, (gauge_transform(p1, Eigen::MatrixXd::Zero(d, d)) - p1).norm());

    for (int si = 0; si < 3; ++si) {
      double sv = svals[si];
      CMat c = I_s_map(b1, sv);
      CMat cinv = c.inverse();
      Eigen::MatrixXd jac(d, d);
      double hstep = 2e-5;
      for (int i = 0; i < d; ++i) {
        CMat step = an_span(amb, Eigen::VectorXd::Unit(d, i) * hstep);
        CMat fp = I_s_map(an_project((CMat::Identity(n, n) + step) * b1), sv);
        CMat fm = I_s_map(an_project((CMat::Identity(n, n) - step) * b1), sv);
        jac.col(i) = an_coords(amb, (fp - fm) / (2 * hstep) * cinv);
      }
      Eigen::MatrixXd lhs = jac * pi_AN_s_at(amb, b1, sv) * jac.transpose();
      Eigen::MatrixXd rhs = sv * pi_AN_at(amb, c);
      scale_res[si] = std::max(scale_res[si], (lhs - rhs).norm());
    }

    std::vector<CMat> bs = {b1, b2, random_an(rng, n, 0.5)};
    CMat k = random_unitary(rng, n);
    auto t0 = twisted_action_s(k, bs, 0.0);
    for (size_t j = 0; j < bs.size(); ++j)
      twist0 = std::max(twist0, (t0[j] - dressing(k, bs[j])).norm());

    CMat total = E_inverse(m_s(bs, 0.0));
    CMat summed = CMat::Zero(n, n);
    for (const CMat& bj : bs) summed += E_inverse(bj);
    addv = std::max(addv, (total - summed).norm());
  }

  Report rep;
  rep.config = {{"group", group}, {"samples", samples}, {"seed", g.seed}, {"tol", g.tol}};
  rep.add("multiplicativity", mult, mult < 1e-6);
  rep.add("conjugation-anti-poisson", anti, anti < 1e-6);
  rep.add("leaf-rank", rank_bad, rank_bad == 0);
  rep.add("jacobi", jac_res, jac_res < 1e-4);
  rep.add("gauge-identity", gauge_id, gauge_id == 0.0);
  rep.add("scaling-s-0.25", scale_res[0], scale_res[0] < 1e-6);
  rep.add("scaling-s-0.5", scale_res[1], scale_res[1] < 1e-6);
  rep.add("scaling-s-2", scale_res[2], scale_res[2] < 1e-6);
  rep.add("rigid-twist-is-dressing", twist0, twist0 < 1e-9);
  rep.add("rigid-product-additivity", addv, addv < 1e-9);
  rep.details["n"] = n;
  rep.details["dim"] = d;
  return emit("poisson-check", g, rep);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Real form and Poisson Lie toolkit for SL(n,C)"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--json", g.json_path, "Write the report JSON to this path");
  app.add_option("--seed", g.seed, "Random seed recorded in every report");
  app.add_option("--tol", g.tol, "Residual tolerance for sampled checks");

  std::string roots_type = "A2", cartan_type = "A2", realform_type = "A2";
  CLI::App* roots = app.add_subcommand("roots", "Root system data and exact checks");
  roots->fallthrough();
  roots->add_option("--type", roots_type, "Series and rank, like A3 or D4");

  CLI::App* cartan = app.add_subcommand("cartan", "Cartan matrix data and checks");
  cartan->fallthrough();
  cartan->add_option("--type", cartan_type, "Series and rank, like A3 or D4");

  CLI::App* realform =
      app.add_subcommand("realform", "Quasi-split conjugations per inner class");
  realform->fallthrough();
  realform->add_option("--type", realform_type, "Series and rank, like A3 or D4");

  std::string satake_file, satake_group;
  CLI::App* satake = app.add_subcommand("satake", "Painted diagram realization");
  satake->fallthrough();
  satake->add_option("--file", satake_file, "Painted diagram JSON file");
  satake->add_option("--group", satake_group, "Catalog id, like sl3r or su31");

  std::string iwasawa_file, iwasawa_group;
  CLI::App* iwasawa = app.add_subcommand("iwasawa", "Alignment condition report");
  iwasawa->fallthrough();
  iwasawa->add_option("--file", iwasawa_file, "Painted diagram JSON file");
  iwasawa->add_option("--group", iwasawa_group, "Catalog id, like sl3r or su31");

  std::string sigma_group = "sl2r";
  int sigma_samples = 25;
  CLI::App* sigma = app.add_subcommand("sigma-check", "Sampled real-slice geometry");
  sigma->fallthrough();
  sigma->add_option("--group", sigma_group, "Catalog id, like sl3r or su31");
  sigma->add_option("--samples", sigma_samples, "Sample count")
      ->check(CLI::PositiveNumber);

  ThompsonOpts topts;
  CLI::App* thompson =
      app.add_subcommand("thompson", "Feasibility of the closure problems");
  thompson->fallthrough();
  thompson->add_option("--group", topts.group, "Catalog id, like sl2r or su31");
  thompson->add_option("--lambda", topts.lambda,
                       "Leg values: scalars per leg, or legs separated by ';'");
  thompson->add_option("--sweep", topts.sweep, "CSV file with one label per line");
  thompson->add_option("--picture", topts.picture, "additive, multiplicative, or both");
  thompson->add_option("--config", topts.config_file, "Optimizer settings JSON file");
  auto* restarts_opt =
      thompson->add_option("--restarts", topts.cfg.restarts, "Multistart count");
  auto* iters_opt =
      thompson->add_option("--max-iters", topts.cfg.max_iters, "Iteration cap");
  auto* feas_opt =
      thompson->add_option("--eps-feas", topts.cfg.eps_feas, "Feasibility threshold");
  auto* infeas_opt = thompson->add_option("--eps-infeas", topts.cfg.eps_infeas,
                                          "Infeasibility threshold");

  std::string poisson_group = "sl2c";
  int poisson_samples = 20;
  CLI::App* poisson =
      app.add_subcommand("poisson-check", "Dressing bivector residual battery");
  poisson->fallthrough();
  poisson->add_option("--group", poisson_group, "Ambient id, sl2c or sl3c");
  poisson->add_option("--samples", poisson_samples, "Sample count")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    if (app.get_subcommands().empty() && argc <= 1) std::cerr << app.help();
    return 2;
  }

  try {
    if (*roots) return run_roots(g, roots_type);
    if (*cartan) return run_cartan(g, cartan_type);
    if (*realform) return run_realform(g, realform_type);
    if (*satake) return run_satake(g, satake_file, satake_group);
    if (*iwasawa) return run_iwasawa(g, iwasawa_file, iwasawa_group);
    if (*sigma) return run_sigma_check(g, sigma_group, sigma_samples);
    if (*thompson) {
      // file first, explicit flags second, so flags win
      FeasibilityConfig flag_values = topts.cfg;
      if (!topts.config_file.empty()) {
        apply_config_file(topts.config_file, topts.cfg);
        if (restarts_opt->count()) topts.cfg.restarts = flag_values.restarts;
        if (iters_opt->count()) topts.cfg.max_iters = flag_values.max_iters;
        if (feas_opt->count()) topts.cfg.eps_feas = flag_values.eps_feas;
        if (infeas_opt->count()) topts.cfg.eps_infeas = flag_values.eps_infeas;
      }
      topts.cfg.seed = g.seed;
      return run_thompson(g, topts);
    }
    if (*poisson) return run_poisson_check(g, poisson_group, poisson_samples);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << app.help();
  return 2;
}
