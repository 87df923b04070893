#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "heis/io.hpp"
#include "heis/verify.hpp"

using namespace heis;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// Inline JSON when the argument starts with '[' or '{', a file path otherwise.
Json load_json(const std::string& arg, const std::string& what) {
  std::string text = arg;
  const auto first = arg.find_first_not_of(" \t");
  if (first == std::string::npos || (arg[first] != '[' && arg[first] != '{')) text = slurp(arg);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("malformed JSON: ") + e.what(), what);
  }
}

SubshiftSystem load_system(const std::string& arg) {
  if (arg == "threedot" || arg == "three_dot") return three_dot();
  if (arg == "fullshift" || arg == "full_shift") return full_shift();
  if (arg == "fixedpoint" || arg == "fixed_point") return fixed_point();
  if (arg == "determined") return determined_direction();
  return system_from_json(load_json(arg, "sys"));
}

int dim_of_basis(const std::vector<RatVec>& basis, int fallback, Eigen::Index extra) {
  if (basis.empty()) return fallback;
  const Eigen::Index n = basis.front().size() - extra;
  if (n <= 0 || n % 2 != 0) throw Error(ErrorKind::DimensionMismatch, "basis vectors have the wrong length", "basis");
  return static_cast<int>(n / 2);
}

VerticalGroup vertical_from(const std::string& text, int dim) {
  const std::vector<RatVec> basis = parse_basis(text);
  return VerticalGroup(SubspaceSpec(Ambient::Plane, dim_of_basis(basis, dim, 0), basis));
}

struct Window2 {
  Window window;
  std::optional<Integer> half_width;
};

Window2 load_window(const std::string& arg, int dim) {
  if (auto h = parse_cube_spec(arg)) return {Window(WindowBox::cube(dim, *h)), h};
  const Json j = load_json(arg, "window");
  std::optional<Integer> h;
  if (j.is_object() && j.contains("cube") && j.at("cube").is_number_integer()) h = j.at("cube").get<Integer>();
  return {window_from_json(j, dim, "window"), h};
}

std::vector<Integer> parse_integers(const std::string& text) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) {
    const Rational r = parse_rational(part);
    if (r != Rational(floor_to_integer(r))) throw Error(ErrorKind::Parse, "expected integers, got '" + text + "'");
    out.push_back(floor_to_integer(r));
  }
  return out;
}

void emit(const Json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(out);
  f << j.dump(2) << '\n';
}

struct RunConfig {
  Caps caps;
  CertifyBudget certify;
  EvidenceBudget evidence;
  unsigned threads = 0;
  std::uint64_t seed = 7;
  std::size_t node_budget = 200000;
};

void apply_config(RunConfig& c, const Json& j) {
  auto positive = [](const Json& v, const std::string& path) {
    if (!v.is_number_integer() || v.get<long long>() <= 0) {
      throw Error(ErrorKind::InvalidArgument, "must be a positive integer", path);
    }
    return v.get<long long>();
  };
  if (!j.is_object()) throw Error(ErrorKind::Parse, "config must be a JSON object", "config");
  for (const auto& [key, v] : j.items()) {
    if (key == "generic_cells") c.caps.generic_cells = static_cast<std::size_t>(positive(v, key));
    else if (key == "linear_cells") c.caps.linear_cells = static_cast<std::size_t>(positive(v, key));
    else if (key == "t_max") c.certify.t_max = static_cast<int>(positive(v, key));
    else if (key == "N") c.evidence.n = static_cast<int>(positive(v, key));
    else if (key == "evidence_t") c.evidence.t = parse_rational(v.is_string() ? v.get<std::string>() : v.dump());
    else if (key == "epsilon") c.certify.epsilon = parse_rational(v.is_string() ? v.get<std::string>() : v.dump());
    else if (key == "max_candidates") c.evidence.max_candidates = static_cast<std::size_t>(positive(v, key));
    else if (key == "threads") c.threads = static_cast<unsigned>(positive(v, key));
    else if (key == "seed") c.seed = static_cast<std::uint64_t>(v.get<long long>());
    else if (key == "node_budget") c.node_budget = static_cast<std::size_t>(positive(v, key));
    else if (key == "half_widths") {
      if (!v.is_array() || v.empty()) throw Error(ErrorKind::InvalidArgument, "must be a non-empty array", key);
      c.certify.half_widths.clear();
      for (std::size_t i = 0; i < v.size(); ++i) {
        c.certify.half_widths.push_back(positive(v[i], key + "[" + std::to_string(i) + "]"));
      }
    } else {
      throw Error(ErrorKind::Parse, "unknown config key", key);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact tools for the discrete Heisenberg group and its subshifts"};
  app.require_subcommand(1);
  RunConfig config;
  std::string config_path;
  app.add_option("--config", config_path, "JSON file with caps, budgets, threads and seed");

  int dim = 1;
  std::string out_path;

  // classify
  auto* classify = app.add_subcommand("classify", "Classify span(basis) in R^{2D+1}");
  std::string classify_basis;
  classify->add_option("--basis", classify_basis, "rows separated by ';', entries by ','")->required();
  classify->add_option("--D", dim, "dimension when the basis is empty");

  // norm
  auto* norm = app.add_subcommand("norm", "Cygan-Koranyi norm of an element");
  std::string norm_elem;
  norm->add_option("element", norm_elem, "[p..,q..|2u]")->required();

  // dist
  auto* dist = app.add_subcommand("dist", "Distance between two elements, or from an element to V x R");
  std::string dist_g, dist_h, dist_v;
  bool dist_has_v = false;
  dist->add_option("g", dist_g, "[p..,q..|2u]")->required();
  dist->add_option("other", dist_h, "[p..,q..|2u]");
  auto* dist_v_opt = dist->add_option("--V", dist_v, "basis of V");

  // enum
  auto* enumerate = app.add_subcommand("enum", "Lattice points of a thickened slab");
  std::string enum_v, enum_t = "1", enum_r = "1", enum_ubox;
  enumerate->add_option("--V", enum_v, "basis of V (empty for the axis)")->required();
  enumerate->add_option("--t", enum_t, "width around V");
  enumerate->add_option("--r", enum_r, "extent along V");
  enumerate->add_option("--ubox", enum_ubox, "lo,hi bounds on u")->required();
  enumerate->add_option("--D", dim, "dimension when V is empty");

  // approx
  auto* approx = app.add_subcommand("approx", "Nearby lattice point, or nearby point of a generated subgroup");
  std::string approx_g, approx_gens;
  approx->add_option("g", approx_g, "[p..,q..|2u] with rational entries")->required();
  approx->add_option("--gens", approx_gens, "generators separated by ';'");

  // sys
  auto* sys = app.add_subcommand("sys", "Subshift system files");
  sys->require_subcommand(1);
  auto* sys_validate = sys->add_subcommand("validate", "Parse and validate a system");
  std::string sys_path, sys_window = "2";
  sys_validate->add_option("file", sys_path, "system JSON or builtin name")->required();
  auto* sys_patterns = sys->add_subcommand("patterns", "Locally admissible patterns on a window");
  sys_patterns->add_option("file", sys_path, "system JSON or builtin name")->required();
  sys_patterns->add_option("--window", sys_window, "cube half-width or cells JSON");

  // code
  auto* code = app.add_subcommand("code", "Does agreement on A force agreement on B?");
  std::string code_sys, code_a, code_b, code_window = "2", code_backend = "auto";
  code->add_option("--sys", code_sys, "system JSON or builtin name")->required();
  code->add_option("--A", code_a, "cells JSON (file or inline)")->required();
  code->add_option("--B", code_b, "cells JSON (file or inline)")->required();
  code->add_option("--window", code_window, "cube half-width or cells JSON");
  code->add_option("--backend", code_backend, "auto, generic or linear2");

  // expansive
  auto* expansive = app.add_subcommand("expansive", "Certificate or nonexpansiveness evidence for V x R");
  std::string exp_sys, exp_v, exp_mode = "both", exp_approx;
  int tmax = 0;
  expansive->add_option("--sys", exp_sys, "system JSON or builtin name")->required();
  expansive->add_option("--V", exp_v, "basis of V (empty or 0 for the axis)");
  expansive->add_option("--approx", exp_approx, "floating basis of V; evidence only");
  expansive->add_option("--tmax", tmax, "largest certificate width");
  expansive->add_option("--mode", exp_mode, "certify, evidence or both");
  std::string ev_t;
  int ev_n = 0;
  expansive->add_option("--evidence-t", ev_t, "slab width for evidence");
  expansive->add_option("--N", ev_n, "number of boxes in the evidence chain");
  expansive->add_option("--out", out_path, "write the verdict here");

  // recheck
  auto* recheck = app.add_subcommand("recheck", "Independently re-check a saved ExpansivenessVerdict");
  std::string recheck_path;
  recheck->add_option("verdict", recheck_path, "verdict JSON")->required();

  // scan
  auto* scan = app.add_subcommand("scan", "Verdicts for every rational direction of bounded height");
  std::string scan_sys, scan_k = "1", scan_summary;
  int height = 2;
  bool scan_no_time = false;
  scan->add_option("--sys", scan_sys, "system JSON or builtin name")->required();
  scan->add_option("--k", scan_k, "dimensions of V, comma separated (0 for the axis)");
  scan->add_option("--height", height, "largest entry of the integer basis");
  scan->add_option("--out", out_path, "CSV path (stdout when absent)");
  scan->add_option("--summary", scan_summary, "JSON summary path (stderr when absent)");
  scan->add_flag("--no-time", scan_no_time, "omit the millis column");

  // verify
  auto* verify = app.add_subcommand("verify", "Rerun the property suite");
  std::uint64_t seed = 7;
  bool verify_time = false;
  auto* seed_opt = verify->add_option("--seed", seed, "seed for sampled checks");
  verify->add_flag("--time", verify_time, "print wall time per check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code_ = app.exit(e);
    return code_ == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) apply_config(config, load_json(config_path, "config"));
    if (tmax > 0) config.certify.t_max = tmax;
    if (!ev_t.empty()) config.evidence.t = parse_rational(ev_t);
    if (ev_n > 0) config.evidence.n = ev_n;
    if (*seed_opt) config.seed = seed;
    dist_has_v = dist_v_opt->count() > 0;

    if (*classify) {
      const std::vector<RatVec> basis = parse_basis(classify_basis);
      const SubgroupClass c = classify_subspace(SubspaceSpec(Ambient::Group, dim_of_basis(basis, dim, 1), basis));
      emit(classification_json(c, basis), "");
      return 0;
    }
    if (*norm) {
      const GroupElement g = parse_group(norm_elem);
      std::cout << Json(ck_norm(g)).dump() << '\n';
      return 0;
    }
    if (*dist) {
      const GroupElement g = parse_group(dist_g);
      Json j;
      if (dist_has_v) {
        const VerticalDistance d = dist_to_vertical(g, vertical_from(dist_v, g.dim()));
        j = {{"distance", d.value()}, {"squared", to_string(d.squared)}};
      } else {
        if (dist_h.empty()) throw Error(ErrorKind::InvalidArgument, "give a second element or --V", "other");
        const GaugeFourth d4 = ck_dist4(g, parse_group(dist_h));
        j = {{"distance", d4.root()}, {"fourth_power", to_string(d4.value)}};
      }
      std::cout << j.dump() << '\n';
      return 0;
    }
    if (*enumerate) {
      const std::vector<Integer> ubox = parse_integers(enum_ubox);
      if (ubox.size() != 2 || ubox[0] > ubox[1]) throw Error(ErrorKind::InvalidArgument, "expected lo,hi", "ubox");
      const ThickenedSlab slab{vertical_from(enum_v, dim), parse_rational(enum_t), parse_rational(enum_r),
                               CenterInterval{Rational(ubox[0]), Rational(ubox[1])}};
      std::cout << cells_json(enumerate_slab(slab)).dump() << '\n';
      return 0;
    }
    if (*approx) {
      const GroupElement g = parse_group(approx_g);
      if (approx_gens.empty()) {
        const LatticeElement h = lattice_approximate(g);
        const GaugeFourth d4 = ck_dist4(g, h.to_group());
        std::cout << Json{{"element", format_lattice(h)}, {"distance", d4.root()}, {"fourth_power", to_string(d4.value)}}
                         .dump()
                  << '\n';
        return 0;
      }
      std::vector<GroupElement> gens;
      std::stringstream ss(approx_gens);
      for (std::string part; std::getline(ss, part, ';');) gens.push_back(parse_group(part));
      const SpanApproximation a = span_approximate(g, gens);
      Json j{{"element", format_group(a.element)},
             {"exponents", a.exponents},
             {"commutator_power", a.commutator_power},
             {"distance", a.distance4.root()},
             {"bound", a.bound4.root()}};
      std::cout << j.dump() << '\n';
      return 0;
    }
    if (*sys_validate) {
      const SubshiftSystem s = load_system(sys_path);
      emit(system_json(s), "");
      return 0;
    }
    if (*sys_patterns) {
      const SubshiftSystem s = load_system(sys_path);
      const Window2 w = load_window(sys_window, s.dim);
      const auto patterns = admissible_patterns(w.window, s, config.caps);
      Json values = Json::array();
      for (const auto& p : patterns) values.push_back(values_json(p, s.alphabet.size()));
      emit(Json{{"window", window_json(w.window, w.half_width)},
                {"cells", cells_json(w.window.cells())},
                {"count", patterns.size()},
                {"patterns", values}},
           "");
      return 0;
    }
    if (*code) {
      const SubshiftSystem s = load_system(code_sys);
      const Window2 w = load_window(code_window, s.dim);
      CodingQuery q{s, cells_from_json(load_json(code_a, "A"), "A"), cells_from_json(load_json(code_b, "B"), "B"),
                    w.window};
      Backend backend = Backend::Auto;
      if (code_backend == "generic") backend = Backend::Generic;
      else if (code_backend == "linear2") backend = Backend::Linear2;
      else if (code_backend != "auto") throw Error(ErrorKind::InvalidArgument, "unknown backend", "backend");
      const CodingVerdict v = weak_code_check(q, backend, config.caps);
      emit(coding_verdict_json(v, q, w.half_width), "");
      return v.tag == CodingTag::Forces ? 0 : 1;
    }
    if (*expansive) {
      const SubshiftSystem s = load_system(exp_sys);
      EngineCache cache(s, config.caps, config.node_budget);
      ExpansivenessVerdict v;
      std::vector<RatVec> basis;
      if (!exp_approx.empty()) {
        std::vector<Vec<double>> rows;
        for (const RatVec& r : parse_basis(exp_approx)) rows.push_back(to_double(r));
        v = nonexpansive_evidence(Direction::approximate(s.dim, rows), cache, config.evidence);
      } else {
        const VerticalGroup G = vertical_from(exp_v, s.dim);
        basis = parse_basis(exp_v);
        if (exp_mode == "certify") v = certify_expansive(G, cache, config.certify);
        else if (exp_mode == "evidence") v = nonexpansive_evidence(Direction::exact(G), cache, config.evidence);
        else if (exp_mode == "both") v = direction_verdict(G, cache, config.certify, config.evidence);
        else throw Error(ErrorKind::InvalidArgument, "mode is certify, evidence or both", "mode");
      }
      emit(expansiveness_json(v, s, basis), out_path);
      return v.tag == ExpansivenessTag::Unknown ? 1 : 0;
    }
    if (*recheck) {
      const Json j = load_json(recheck_path, "verdict");
      const ExpansivenessVerdict v = expansiveness_from_json(j);
      const SubshiftSystem s = system_from_json(j.at("system"));
      std::vector<RatVec> basis;
      for (const Json& row : j.at("V")) basis.push_back(parse_vector(row.get<std::string>()));
      const VerticalGroup G(SubspaceSpec(Ambient::Plane, s.dim, basis));
      bool ok = false;
      if (v.tag == ExpansivenessTag::Certified) ok = recheck_certificate(v, G, s, config.caps);
      else if (v.tag == ExpansivenessTag::EvidenceNonexpansive) ok = verify_evidence(v, Direction::exact(G), s);
      std::cout << Json{{"verdict", to_string(v.tag)}, {"recheck", ok ? "ok" : "failed"}}.dump() << '\n';
      return ok ? 0 : 1;
    }
    if (*scan) {
      const SubshiftSystem s = load_system(scan_sys);
      std::vector<int> ks;
      for (Integer k : parse_integers(scan_k)) ks.push_back(static_cast<int>(k));
      ScanBudget budget{config.certify, config.evidence, config.threads};
      const ScanReport r = scan_directions(s, ks, height, budget, config.caps);
      const std::string csv = scan_csv(r, !scan_no_time);
      if (out_path.empty()) {
        std::cout << csv;
      } else {
        std::ofstream(out_path) << csv;
      }
      const Json summary = scan_summary_json(r, ks, height);
      if (scan_summary.empty()) std::cerr << summary.dump(2) << '\n';
      else std::ofstream(scan_summary) << summary.dump(2) << '\n';
      return 0;
    }
    if (*verify) {
      const std::vector<CheckResult> results = run_property_suite(config.seed);
      std::cout << "seed " << config.seed << '\n' << format_results(results, verify_time);
      const bool all = std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
      return all ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::CapExceeded ? 1 : 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
