#include "heis/io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace heis {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

Integer parse_integer(std::string_view text) {
  const Rational r = parse_rational(text);
  if (r != Rational(floor_to_integer(r))) {
    throw Error(ErrorKind::Parse, "expected an integer, got '" + std::string(text) + "'");
  }
  return floor_to_integer(r);
}

/// Splits "[a,b,..|c]" into its two sides.
std::pair<std::vector<std::string>, std::string> element_fields(std::string_view text) {
  const std::string t = trim(text);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') {
    throw Error(ErrorKind::Parse, "element must look like [p..,q..|u2], got '" + t + "'");
  }
  const std::string body = t.substr(1, t.size() - 2);
  const std::size_t bar = body.find('|');
  if (bar == std::string::npos) throw Error(ErrorKind::Parse, "element needs '|' before u2: '" + t + "'");
  std::vector<std::string> left = split(std::string_view(body).substr(0, bar), ',');
  if (left.size() % 2 != 0 || left.empty() || left[0].empty()) {
    throw Error(ErrorKind::Parse, "element needs 2D horizontal coordinates: '" + t + "'");
  }
  return {left, trim(std::string_view(body).substr(bar + 1))};
}

std::string rat(const Rational& r) { return to_string(r); }

Rational rat_from(const Json& j, const std::string& path) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<Integer>());
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, e.what(), path);
  }
  throw Error(ErrorKind::Parse, "expected a rational (string or integer)", path);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::Parse, "missing field", path + key);
  return j.at(key);
}

}  // namespace

LatticeElement parse_lattice(std::string_view text) {
  auto [left, right] = element_fields(text);
  IntVec v(static_cast<Eigen::Index>(left.size()));
  for (std::size_t i = 0; i < left.size(); ++i) v[static_cast<Eigen::Index>(i)] = parse_integer(left[i]);
  return {std::move(v), parse_integer(right)};
}

std::string format_lattice(const LatticeElement& g) {
  std::ostringstream os;
  os << '[';
  for (Eigen::Index i = 0; i < g.v().size(); ++i) os << (i ? "," : "") << g.v()[i];
  os << '|' << g.u2() << ']';
  return os.str();
}

GroupElement parse_group(std::string_view text) {
  auto [left, right] = element_fields(text);
  RatVec v(static_cast<Eigen::Index>(left.size()));
  for (std::size_t i = 0; i < left.size(); ++i) v[static_cast<Eigen::Index>(i)] = parse_rational(left[i]);
  return {std::move(v), parse_rational(right) / 2};
}

std::string format_group(const GroupElement& g) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < g.v().size(); ++i) out += (i ? "," : "") + rat(g.v()[i]);
  return out + "|" + rat(g.u() * 2) + "]";
}

RatVec parse_vector(std::string_view text) {
  const std::vector<std::string> parts = split(text, ',');
  RatVec v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) v[static_cast<Eigen::Index>(i)] = parse_rational(parts[i]);
  return v;
}

std::vector<RatVec> parse_basis(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty() || t == "none" || t == "0") return {};
  std::vector<RatVec> out;
  for (const std::string& part : split(t, ';')) out.push_back(parse_vector(part));
  for (const RatVec& v : out) require_same_dim(v.size(), out[0].size());
  return out;
}

Json lattice_json(const LatticeElement& g) { return format_lattice(g); }

LatticeElement lattice_from_json(const Json& j, const std::string& path) {
  try {
    if (j.is_string()) return parse_lattice(j.get<std::string>());
    if (j.is_array() && j.size() >= 3 && j.size() % 2 == 1) {
      IntVec v(static_cast<Eigen::Index>(j.size() - 1));
      for (std::size_t i = 0; i + 1 < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<Integer>();
      return {std::move(v), j.back().get<Integer>()};
    }
  } catch (const Error& e) {
    throw Error(e.kind(), e.what(), path);
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorKind::Parse, "expected integer entries", path);
  }
  throw Error(ErrorKind::Parse, "expected \"[p..,q..|u2]\" or [p..,q..,u2]", path);
}

std::vector<LatticeElement> cells_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, "expected an array of cells", path);
  std::vector<LatticeElement> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(lattice_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Json cells_json(const std::vector<LatticeElement>& cells) {
  Json out = Json::array();
  for (const LatticeElement& g : cells) out.push_back(lattice_json(g));
  return out;
}

SubshiftSystem system_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, "system must be a JSON object");
  SubshiftSystem s;
  try {
    if (j.contains("D")) s.dim = j.at("D").get<int>();
    if (j.contains("name")) s.name = j.at("name").get<std::string>();
    if (j.contains("alphabet")) s.alphabet = j.at("alphabet").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("bad header field: ") + e.what());
  }
  if (j.contains("kind")) {
    if (!j.at("kind").is_string()) throw Error(ErrorKind::Parse, "expected a string", "kind");
    const std::string k = j.at("kind").get<std::string>();
    if (k == "linear2") s.kind = SystemKind::Linear2;
    else if (k == "generic") s.kind = SystemKind::Generic;
    else throw Error(ErrorKind::Parse, "kind must be \"generic\" or \"linear2\"", "kind");
  }
  if (j.contains("constraints")) {
    const Json& cs = j.at("constraints");
    if (!cs.is_array()) throw Error(ErrorKind::Parse, "expected an array", "constraints");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string path = "constraints[" + std::to_string(i) + "]";
      LocalConstraint c;
      c.support = cells_from_json(field(cs[i], "support", path + "."), path + ".support");
      if (cs[i].contains("allowed")) {
        const Json& allowed = cs[i].at("allowed");
        if (!allowed.is_array()) throw Error(ErrorKind::Parse, "expected an array of tuples", path + ".allowed");
        for (std::size_t t = 0; t < allowed.size(); ++t) {
          const std::string at = path + ".allowed[" + std::to_string(t) + "]";
          if (!allowed[t].is_array()) throw Error(ErrorKind::Parse, "expected a tuple", at);
          std::vector<Symbol> tuple;
          for (const Json& sym : allowed[t]) {
            if (sym.is_number_integer()) {
              tuple.push_back(sym.get<Symbol>());
            } else if (sym.is_string()) {
              auto it = std::find(s.alphabet.begin(), s.alphabet.end(), sym.get<std::string>());
              if (it == s.alphabet.end()) throw Error(ErrorKind::Parse, "symbol not in alphabet", at);
              tuple.push_back(static_cast<Symbol>(it - s.alphabet.begin()));
            } else {
              throw Error(ErrorKind::Parse, "symbols are strings or indices", at);
            }
          }
          c.allowed.push_back(std::move(tuple));
        }
      }
      s.constraints.push_back(std::move(c));
    }
  }
  s.validate();
  return s;
}

Json system_json(const SubshiftSystem& s) {
  Json out;
  out["D"] = s.dim;
  if (!s.name.empty()) out["name"] = s.name;
  out["alphabet"] = s.alphabet;
  out["kind"] = to_string(s.kind);
  Json cs = Json::array();
  for (const LocalConstraint& c : s.constraints) {
    Json jc;
    Json support = Json::array();
    for (const LatticeElement& g : c.support) {
      Json e = Json::array();
      for (Eigen::Index i = 0; i < g.v().size(); ++i) e.push_back(g.v()[i]);
      e.push_back(g.u2());
      support.push_back(e);
    }
    jc["support"] = support;
    if (s.kind == SystemKind::Generic) {
      Json allowed = Json::array();
      for (const auto& tuple : c.allowed) {
        Json t = Json::array();
        for (Symbol sym : tuple) t.push_back(s.alphabet[static_cast<std::size_t>(sym)]);
        allowed.push_back(t);
      }
      jc["allowed"] = allowed;
    }
    cs.push_back(jc);
  }
  out["constraints"] = cs;
  return out;
}

Json window_json(const Window& window, const std::optional<Integer>& half_width) {
  if (half_width) return Json{{"cube", *half_width}};
  return Json{{"cells", cells_json(window.cells())}};
}

Window window_from_json(const Json& j, int dim, const std::string& path) {
  if (j.is_object() && j.contains("cube")) {
    if (!j.at("cube").is_number_integer()) throw Error(ErrorKind::Parse, "expected an integer", path + ".cube");
    return Window(WindowBox::cube(dim, j.at("cube").get<Integer>()));
  }
  if (j.is_object() && j.contains("cells")) return Window(cells_from_json(j.at("cells"), path + ".cells"));
  return Window(cells_from_json(j, path));
}

std::optional<Integer> parse_cube_spec(std::string_view text) {
  std::string t = trim(text);
  if (t.rfind("cube:", 0) == 0) t = t.substr(5);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return std::nullopt;
  }
  return std::stoll(t);
}

Json values_json(const std::vector<Symbol>& values, std::size_t alphabet) {
  if (alphabet <= 10) {
    std::string s;
    for (Symbol v : values) s.push_back(static_cast<char>('0' + v));
    return s;
  }
  return Json(values);
}

std::vector<Symbol> values_from_json(const Json& j, const std::string& path) {
  std::vector<Symbol> out;
  if (j.is_string()) {
    for (char c : j.get<std::string>()) {
      if (c < '0' || c > '9') throw Error(ErrorKind::Parse, "expected digits", path);
      out.push_back(c - '0');
    }
    return out;
  }
  if (j.is_array()) {
    for (const Json& v : j) {
      if (!v.is_number_integer()) throw Error(ErrorKind::Parse, "expected symbol indices", path);
      out.push_back(v.get<Symbol>());
    }
    return out;
  }
  throw Error(ErrorKind::Parse, "expected a digit string or an index array", path);
}

Json coding_verdict_json(const CodingVerdict& v, const CodingQuery& q, const std::optional<Integer>& half_width) {
  Json out;
  out["kind"] = "CodingVerdict";
  out["verdict"] = to_string(v.tag);
  out["backend"] = v.backend;
  out["system"] = system_json(q.system);
  out["A"] = cells_json(q.A);
  out["B"] = cells_json(q.B);
  out["window"] = window_json(q.window, half_width);
  if (v.witness) {
    out["witness"] = {{"cell", lattice_json(v.witness->cell)},
                      {"x", values_json(v.witness->x, q.system.alphabet.size())},
                      {"y", values_json(v.witness->y, q.system.alphabet.size())}};
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

Json classification_json(const SubgroupClass& c, const std::vector<RatVec>& input) {
  auto rows = [](const SubspaceSpec& s) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < s.rank(); ++i) {
      std::string row;
      const RatVec v = s.basis_vector(i);
      for (Eigen::Index k = 0; k < v.size(); ++k) row += (k ? "," : "") + rat(v[k]);
      out.push_back(row);
    }
    return out;
  };
  Json out;
  out["kind"] = "Classification";
  out["class"] = to_string(c.tag);
  Json in = Json::array();
  for (const RatVec& v : input) {
    std::string row;
    for (Eigen::Index k = 0; k < v.size(); ++k) row += (k ? "," : "") + rat(v[k]);
    in.push_back(row);
  }
  out["basis"] = in;
  out["subspace_basis"] = rows(c.subspace);
  out["V_basis"] = rows(c.projection);
  if (c.tag != SubgroupTag::NotASubgroup) {
    out["normal"] = is_normal(c);
    out["homogeneous"] = is_homogeneous(c);
  }
  if (c.witness) {
    out["witnesses"] = Json::array({format_group(c.witness->first), format_group(c.witness->second),
                                    format_group(c.witness->first * c.witness->second)});
  } else {
    out["witnesses"] = Json::array();
  }
  return out;
}

Json expansiveness_json(const ExpansivenessVerdict& v, const SubshiftSystem& system,
                        const std::vector<RatVec>& basis) {
  Json out;
  out["kind"] = "ExpansivenessVerdict";
  out["verdict"] = to_string(v.tag);
  out["direction"] = v.direction;
  Json V = Json::array();
  for (const RatVec& b : basis) {
    std::string row;
    for (Eigen::Index k = 0; k < b.size(); ++k) row += (k ? "," : "") + rat(b[k]);
    V.push_back(row);
  }
  out["V"] = V;
  out["system"] = system_json(system);
  out["width"] = rat(v.width);
  out["epsilon"] = rat(v.epsilon);
  out["lambda"] = rat(v.lambda);
  out["t"] = v.t ? Json(rat(*v.t)) : Json(nullptr);
  out["r"] = v.r ? Json(rat(*v.r)) : Json(nullptr);
  out["window"] = v.half_width ? Json{{"cube", *v.half_width}} : Json(nullptr);
  Json cert = Json::array();
  for (const ForcingInstance& f : v.certificate) {
    Json comb = Json::array();
    for (const auto& [ci, anchor] : f.combination) comb.push_back({{"constraint", ci}, {"anchor", lattice_json(anchor)}});
    cert.push_back({{"target", lattice_json(f.target)}, {"combination", comb}});
  }
  out["certificate"] = cert;
  out["p0"] = v.p0 ? lattice_json(*v.p0) : Json(nullptr);
  out["evidence_n"] = v.evidence_n;
  Json chain = Json::array();
  for (const EvidenceStep& s : v.chain) {
    chain.push_back({{"n", s.n},
                     {"cube", s.half_width},
                     {"slab_cells", s.slab_cells},
                     {"cell", lattice_json(s.witness.cell)},
                     {"x", values_json(s.witness.x, system.alphabet.size())},
                     {"y", values_json(s.witness.y, system.alphabet.size())}});
  }
  out["chain"] = chain;
  Json attempts = Json::array();
  for (const CertifyAttempt& a : v.attempts) {
    attempts.push_back({{"width", rat(a.width)},
                        {"cube", a.half_width},
                        {"known", a.known},
                        {"targets", a.targets},
                        {"forced", a.forced},
                        {"status", a.status},
                        {"cell", a.first_open ? lattice_json(*a.first_open) : Json(nullptr)}});
  }
  out["attempts"] = attempts;
  out["note"] = v.note;
  return out;
}

ExpansivenessVerdict expansiveness_from_json(const Json& j) {
  if (!j.is_object() || j.value("kind", "") != "ExpansivenessVerdict") {
    throw Error(ErrorKind::Parse, "not an ExpansivenessVerdict record", "kind");
  }
  ExpansivenessVerdict v;
  const std::string tag = field(j, "verdict", "").get<std::string>();
  if (tag == "Certified") v.tag = ExpansivenessTag::Certified;
  else if (tag == "EvidenceNonexpansive") v.tag = ExpansivenessTag::EvidenceNonexpansive;
  else if (tag == "Unknown") v.tag = ExpansivenessTag::Unknown;
  else throw Error(ErrorKind::Parse, "unknown verdict", "verdict");
  v.direction = j.value("direction", "");
  v.width = rat_from(field(j, "width", ""), "width");
  v.epsilon = rat_from(field(j, "epsilon", ""), "epsilon");
  v.lambda = rat_from(field(j, "lambda", ""), "lambda");
  if (j.contains("t") && !j.at("t").is_null()) v.t = rat_from(j.at("t"), "t");
  if (j.contains("r") && !j.at("r").is_null()) v.r = rat_from(j.at("r"), "r");
  if (j.contains("window") && j.at("window").is_object()) v.half_width = j.at("window").at("cube").get<Integer>();
  if (j.contains("certificate")) {
    const Json& cert = j.at("certificate");
    for (std::size_t i = 0; i < cert.size(); ++i) {
      const std::string path = "certificate[" + std::to_string(i) + "]";
      ForcingInstance f{lattice_from_json(field(cert[i], "target", path + "."), path + ".target"), {}};
      const Json& comb = field(cert[i], "combination", path + ".");
      for (std::size_t k = 0; k < comb.size(); ++k) {
        const std::string at = path + ".combination[" + std::to_string(k) + "]";
        f.combination.emplace_back(field(comb[k], "constraint", at + ".").get<std::size_t>(),
                                   lattice_from_json(field(comb[k], "anchor", at + "."), at + ".anchor"));
      }
      v.certificate.push_back(std::move(f));
    }
  }
  if (j.contains("p0") && !j.at("p0").is_null()) v.p0 = lattice_from_json(j.at("p0"), "p0");
  v.evidence_n = j.value("evidence_n", 0);
  if (j.contains("chain")) {
    const Json& chain = j.at("chain");
    for (std::size_t i = 0; i < chain.size(); ++i) {
      const std::string path = "chain[" + std::to_string(i) + "]";
      EvidenceStep s;
      s.n = field(chain[i], "n", path + ".").get<int>();
      s.half_width = field(chain[i], "cube", path + ".").get<Integer>();
      s.slab_cells = chain[i].value("slab_cells", std::size_t{0});
      s.witness.cell = lattice_from_json(field(chain[i], "cell", path + "."), path + ".cell");
      s.witness.x = values_from_json(field(chain[i], "x", path + "."), path + ".x");
      s.witness.y = values_from_json(field(chain[i], "y", path + "."), path + ".y");
      v.chain.push_back(std::move(s));
    }
  }
  v.note = j.value("note", "");
  return v;
}

std::string scan_csv(const ScanReport& report, bool with_time) {
  std::ostringstream os;
  os << "V,verdict,t,r,window" << (with_time ? ",millis" : "") << '\n';
  for (const ScanRow& row : report.rows) {
    os << '"' << row.V << "\"," << to_string(row.verdict) << ',' << row.t << ',' << row.r << ',' << row.window;
    if (with_time) os << ',' << row.millis;
    os << '\n';
  }
  return os.str();
}

Json scan_summary_json(const ScanReport& report, const std::vector<int>& ks, int height) {
  Json out;
  out["kind"] = "ScanReport";
  out["system"] = report.system;
  out["k"] = ks;
  out["height"] = height;
  Json rows = Json::array();
  for (const ScanRow& row : report.rows) {
    rows.push_back({{"V", row.V}, {"k", row.k}, {"verdict", to_string(row.verdict)}, {"t", row.t}, {"r", row.r},
                    {"window", row.window}});
  }
  out["rows"] = rows;
  const ScanSummary& s = report.summary;
  out["summary"] = {{"certified", s.certified},
                    {"evidence", s.evidence},
                    {"unknown", s.unknown},
                    {"top_dimension_evidence", s.top_dimension_evidence},
                    {"evidence_lifts_to_top", s.evidence_lifts_to_top},
                    {"containment_consistent", s.containment_consistent}};
  return out;
}

}  // namespace heis
