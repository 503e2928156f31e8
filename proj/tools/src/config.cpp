#include "config.hpp"

#include <fstream>
#include <set>

#include "syspredict/error.hpp"

namespace syspredict::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::kConfig, msg); }

void allow_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  const std::set<std::string> known(keys.begin(), keys.end());
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) fail("unknown key '" + item.key() + "' in " + where);
  }
}

double number(const json& j, const std::string& what) {
  if (!j.is_number()) fail(what + " must be a number");
  return j.get<double>();
}

std::vector<double> numbers(const json& j, const std::string& what) {
  if (!j.is_array()) fail(what + " must be an array of numbers");
  std::vector<double> out;
  for (const json& v : j) out.push_back(number(v, what + " entry"));
  return out;
}

std::uint64_t unsigned_int(const json& j, const std::string& what) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(what + " must be a non-negative integer");
  return static_cast<std::uint64_t>(j.get<long long>());
}

int positive_int(const json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<long long>() < 1 || j.get<long long>() > 1'000'000'000) {
    fail(what + " must be a positive integer");
  }
  return j.get<int>();
}

}  // namespace

SystemStructure parse_structure(const json& j) {
  if (!j.is_object()) fail("structure must be an object {\"n\": int, \"paths\": [[int,...],...]}");
  allow_keys(j, "structure", {"n", "paths"});
  if (!j.contains("n") || !j.contains("paths")) fail("structure needs 'n' and 'paths'");
  const int n = positive_int(j["n"], "structure n");
  if (!j["paths"].is_array()) fail("structure paths must be an array of arrays");
  std::vector<std::vector<int>> paths;
  for (const json& p : j["paths"]) {
    if (!p.is_array()) fail("each path must be an array of component indices");
    std::vector<int> path;
    for (const json& i : p) {
      if (!i.is_number_integer()) fail("component indices must be integers");
      path.push_back(i.get<int>());
    }
    paths.push_back(std::move(path));
  }
  return SystemStructure::validate(n, paths);
}

SurvivalCopula parse_copula(const json& j, int n) {
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string()) {
    fail("copula needs a 'family' string");
  }
  const std::string family = j["family"].get<std::string>();
  if (family == "product") {
    allow_keys(j, "copula", {"family"});
    return SurvivalCopula::product(n);
  }
  if (family == "fgm") {
    allow_keys(j, "copula", {"family", "theta"});
    if (!j.contains("theta")) fail("fgm copula needs 'theta'");
    return SurvivalCopula::fgm(n, number(j["theta"], "copula theta"));
  }
  if (family == "clayton_pair") {
    allow_keys(j, "copula", {"family", "theta", "pair"});
    const double theta = j.contains("theta") ? number(j["theta"], "copula theta") : 1.0;
    if (!j.contains("pair") || !j["pair"].is_array() || j["pair"].size() != 2) {
      fail("clayton_pair copula needs 'pair': [j, k]");
    }
    return SurvivalCopula::clayton_pair(n, positive_int(j["pair"][0], "pair index"),
                                        positive_int(j["pair"][1], "pair index"), theta);
  }
  fail("unknown copula family '" + family + "' (product, fgm, clayton_pair)");
}

Marginal parse_marginal(const json& j) {
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string()) {
    fail("marginal needs a 'family' string");
  }
  const std::string family = j["family"].get<std::string>();
  if (family == "exponential") {
    allow_keys(j, "marginal", {"family", "mean"});
    return Marginal::exponential(j.contains("mean") ? number(j["mean"], "marginal mean") : 1.0);
  }
  if (family == "weibull") {
    allow_keys(j, "marginal", {"family", "shape", "scale"});
    if (!j.contains("shape")) fail("weibull marginal needs 'shape'");
    return Marginal::weibull(number(j["shape"], "marginal shape"),
                             j.contains("scale") ? number(j["scale"], "marginal scale") : 1.0);
  }
  fail("unknown marginal family '" + family + "' (exponential, weibull)");
}

PredictionCase parse_case(const std::string& tag) {
  if (tag == "I") return PredictionCase::kI;
  if (tag == "IIa") return PredictionCase::kIIa;
  if (tag == "IIb") return PredictionCase::kIIb;
  if (tag == "III") return PredictionCase::kIII;
  fail("case must be one of I, IIa, IIb, III; got '" + tag + "'");
}

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) fail("config must be a JSON object");
  allow_keys(doc, "config",
             {"structures", "copula", "marginal", "case", "grid", "t1", "t2", "w", "levels", "band",
              "seed", "size", "coverage", "taus", "ols", "input", "x_column", "y_column"});
  RunConfig c;
  c.raw = doc;

  if (doc.contains("structures")) {
    const json& s = doc["structures"];
    if (!s.is_object()) fail("structures must be an object {t1, [t2,] t}");
    allow_keys(s, "structures", {"t1", "t2", "t"});
    if (!s.contains("t1") || !s.contains("t")) fail("structures need 't1' and 't'");
    c.structures.push_back(parse_structure(s["t1"]));
    if (s.contains("t2")) c.structures.push_back(parse_structure(s["t2"]));
    c.structures.push_back(parse_structure(s["t"]));
    for (const SystemStructure& st : c.structures) {
      if (st.n() != c.structures.front().n()) fail("all structures must share the same n");
    }
  }
  const int n = c.structures.empty() ? 0 : c.structures.front().n();

  if (doc.contains("copula")) {
    if (c.structures.empty()) fail("copula needs structures to fix its dimension");
    c.copula = parse_copula(doc["copula"], n);
  } else if (!c.structures.empty()) {
    c.copula = SurvivalCopula::product(n);
  }
  c.marginal = doc.contains("marginal") ? parse_marginal(doc["marginal"]) : Marginal::exponential(1.0);

  if (doc.contains("case")) {
    if (!doc["case"].is_string()) fail("case must be a string");
    c.kind = parse_case(doc["case"].get<std::string>());
    const std::size_t want = *c.kind == PredictionCase::kIII ? 3 : 2;
    if (!c.structures.empty() && c.structures.size() != want) {
      fail(*c.kind == PredictionCase::kIII ? "case III requires structures t1, t2 and t"
                                           : "cases I/IIa/IIb require structures t1 and t only");
    }
  }

  if (doc.contains("grid")) c.grid = numbers(doc["grid"], "grid");
  if (doc.contains("t1")) c.t1 = number(doc["t1"], "t1");
  if (doc.contains("t2")) c.t2 = number(doc["t2"], "t2");
  if (doc.contains("w")) c.w = numbers(doc["w"], "w");
  if (doc.contains("levels")) c.levels = numbers(doc["levels"], "levels");
  if (doc.contains("band")) {
    const json& b = doc["band"];
    if (b == "centered") {
      c.band = BandKind::kCentered;
    } else if (b == "bottom") {
      c.band = BandKind::kBottom;
    } else {
      fail("band must be \"centered\" or \"bottom\"");
    }
  }
  if (doc.contains("seed")) c.seed = unsigned_int(doc["seed"], "seed");
  if (doc.contains("size")) c.size = unsigned_int(doc["size"], "size");

  if (doc.contains("coverage")) {
    const json& cv = doc["coverage"];
    if (!cv.is_object()) fail("coverage must be an object");
    allow_keys(cv, "coverage", {"k", "replications", "protocol", "eval_draws", "known_mean"});
    if (cv.contains("k")) {
      if (cv["k"].is_array()) {
        for (const json& k : cv["k"]) c.coverage_k.push_back(positive_int(k, "coverage k"));
      } else {
        c.coverage_k.push_back(positive_int(cv["k"], "coverage k"));
      }
    }
    if (cv.contains("replications")) c.coverage.replications = positive_int(cv["replications"], "replications");
    if (cv.contains("eval_draws")) c.coverage.eval_draws = positive_int(cv["eval_draws"], "eval_draws");
    if (cv.contains("known_mean")) {
      if (!cv["known_mean"].is_boolean()) fail("known_mean must be a boolean");
      c.coverage.known_mean = cv["known_mean"].get<bool>();
    }
    if (cv.contains("protocol")) {
      const json& p = cv["protocol"];
      if (p == "same") {
        c.coverage.protocol = CoverageProtocol::kSameSystems;
      } else if (p == "fresh") {
        c.coverage.protocol = CoverageProtocol::kFreshSystems;
      } else {
        fail("coverage protocol must be \"same\" or \"fresh\"");
      }
    }
  }
  if (c.coverage_k.empty()) c.coverage_k = {1, 5, 10, 25, 50, 100};

  if (doc.contains("taus")) c.taus = numbers(doc["taus"], "taus");
  if (doc.contains("ols")) {
    if (!doc["ols"].is_boolean()) fail("ols must be a boolean");
    c.ols = doc["ols"].get<bool>();
  }
  auto text = [&](const char* key, std::string& out) {
    if (!doc.contains(key)) return;
    if (!doc[key].is_string()) fail(std::string(key) + " must be a string");
    out = doc[key].get<std::string>();
  };
  text("input", c.input);
  text("x_column", c.x_column);
  text("y_column", c.y_column);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    fail("'" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

}  // namespace syspredict::cli
